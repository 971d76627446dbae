//! Truncated Witt vectors over finite rings from ghost-solved structure
//! polynomials, lifting of homomorphisms, finite-depth tilts of cyclotomic
//! rings and the map `θ`.

mod lift;
mod polys;
mod ring;
mod tilt;
mod vector;

pub use lift::{
    frobenius_inverse, isomorphism_report, lift_homomorphism, lift_uniqueness, p_adic_filtration_sizes,
    presentation_by_generator, presented_homomorphisms, ring_isomorphisms, IsomorphismReport, LiftUniqueness,
    LiftedHomomorphism,
};
pub use polys::{structure_polynomials, IntMvPoly, StructurePolynomialTable};
pub use ring::{FiniteRing, QuotientRing, ENUMERATION_LIMIT};
pub use tilt::{ker_theta_report, CyclotomicModel, ThetaMap, ThetaReport, TiltRing};
pub use vector::{WittRing, WittVector};
