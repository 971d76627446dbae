//! Weight-graded polynomial algebras over `Z/p^n`, their differential forms
//! and substitution maps.

mod algebra;
mod forms;
mod map;
mod parse;
mod poly;

pub use algebra::{AlgebraDescriptor, PolyAlgebra, Variable};
pub use forms::{
    derham_d, derham_d_relative, graded_slice_basis, graded_slice_basis_masked, monomials_of_weight,
    poly_differential, wedge, wedge_masks, wedge_sign, DifferentialForm, FormKey,
};
pub use map::{apply_map, pullback_form, AlgebraMap};
pub use parse::parse_poly;
pub use poly::{Monomial, Poly};
