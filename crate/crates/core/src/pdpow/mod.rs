//! Divided-power algebras, their filtrations, derived `Γⁿ` and `∧ⁿ` via the
//! Kan transform, the Koszul–Γ complex and PD envelopes of monomials.

mod algebra;
mod derived;
mod envelope;
mod filtration;
mod koszul;

pub use algebra::{composition_coefficient, GeneratorKind, PDAlgebra, PDElement, PDGenerator};
pub use derived::{
    apply_functor, derived_power, exterior_matrix, gamma_matrix, gamma_rank, multi_indices, subsets, DerivedPower, Functor,
};
pub use envelope::{pd_envelope_slices, PDEnvelope};
pub use filtration::{graded_ranks, pd_filtration, PDFiltrationLevel};
pub use koszul::{exterior_filtration, koszul_gamma_complex, random_split_exact, ExteriorFiltrationReport, FiltrationPiece, KoszulReport};
