//! Exact desk-scale computations in derived de Rham theory: simplicial
//! resolutions, cotangent complexes, Hodge-filtered derived de Rham algebras,
//! divided powers, Witt vectors, tilts and ramification.
//!
//! Integer canonical forms are generic over the scalar (`i64` or `BigInt`);
//! residue-ring work runs over a runtime modulus `ModRing`.

pub mod error;
pub mod exactlin;
pub mod complexes;
pub mod derham;
pub mod cotangent;
pub mod padicfield;
pub mod pdpow;
pub mod polyalg;
pub mod simplex;
pub mod witt;

pub use error::{Error, Result};

/// Smith form over arbitrary-precision integers.
pub type BigSmith = exactlin::IntSmith<num_bigint::BigInt>;
/// Integer matrix over arbitrary-precision integers.
pub type BigIntMatrix = exactlin::IntMatrix<num_bigint::BigInt>;
