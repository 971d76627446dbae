//! Exact arithmetic and canonical-form linear algebra over `Z`, `Z/p^n` and `F_p`.

mod canonical;
mod integer;
mod intpoly;
mod matrix;
mod module;
mod ring;
mod valuation;

pub use canonical::{
    cokernel_exponents, howell_form, kernel_columns, quotient_exponents, row_span_contains, row_span_length,
    smith_mod, smith_valuations, solve, unit_echelon, ModSmith,
};
pub use integer::{determinant, smith_int, IntMatrix, IntSmith};
pub use intpoly::{resultant, sylvester_matrix, IntPoly};
pub use matrix::ModMatrix;
pub use module::{module_invariants, normal_form, ExactMatrix, ModuleInvariants, ModulePresentation, NormalForm};
pub use ring::{int_valuation, is_prime, prime_power_decomposition, ModInt, ModRing, RingDescriptor, MAX_MODULUS};
pub use valuation::{int_padic_valuation, padic_valuation, PAdicValue};
