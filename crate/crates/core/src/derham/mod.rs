//! The Hodge-filtered derived de Rham complex of a quotient `A/(f)` over
//! `A = k[y]`, its graded pieces, the first-order thickening and the comparison
//! with divided-power envelopes.

mod compare;
mod complex;
mod thickening;

pub use compare::{
    exterior_of_conormal, frobenius_audit, graded_piece_report, pd_envelope_report, EnvelopeReport, EnvelopeRow,
    FrobeniusRow, GradedPieceReport, GradedPieceRow,
};
pub use complex::{
    build_derham, derham_homology, hodge_quotient_homology, DeRhamSlice, DeRhamSummary, FilteredDeRhamComplex, TotKey,
};
pub use thickening::{universal_thickening, ThickeningResult, ThickeningRow};
