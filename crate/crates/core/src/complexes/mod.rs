//! Weight-sliced chain complexes over `Z/p^n`, total complexes, homology and comparisons.

mod compare;
mod graded;
mod homology;
pub mod random;
mod total;

pub use compare::{compare_homology, induced_iso, ComparisonReport, ComparisonRow};
pub use graded::{GradedSliceComplex, Slice};
pub use homology::{boundaries, cycles, homology_report, image_length, slice_homology, HomologyEntry, HomologyReport};
pub use total::{total_complex, DoubleComplex, DoubleSlice};
