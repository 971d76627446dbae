//! Finitely presented modules over `Z/p^n` and the two-sided canonical form
//! dispatch for integer and modular matrices.

use num_bigint::BigInt;
use serde::Serialize;

use super::canonical::{cokernel_exponents, howell_form, solve};
use super::integer::{smith_int, IntMatrix};
use super::matrix::ModMatrix;
use super::ring::ModRing;
use crate::error::{Error, Result};

/// Cokernel of a relation matrix: rows are relations, columns generators.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ModulePresentation {
    generators: usize,
    relations: ModMatrix,
}

impl ModulePresentation {
    pub fn new(generators: usize, relations: ModMatrix) -> Result<Self> {
        if relations.rows() > 0 && relations.cols() != generators {
            return Err(Error::Dimension(format!(
                "{} relation columns for {} generators",
                relations.cols(),
                generators
            )));
        }
        Ok(ModulePresentation { generators, relations })
    }

    /// Free module of the given rank.
    pub fn free(ring: ModRing, rank: usize) -> Self {
        ModulePresentation { generators: rank, relations: ModMatrix::zeros(ring, 0, rank) }
    }

    pub fn ring(&self) -> ModRing {
        self.relations.ring()
    }

    pub fn generators(&self) -> usize {
        self.generators
    }

    pub fn relations(&self) -> &ModMatrix {
        &self.relations
    }
}

/// Cyclic decomposition `⊕ Z/p^{e_i}` of a finite `Z/p^n`-module.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct ModuleInvariants {
    pub p: u64,
    /// Exponents `e_i`, ascending, all positive.
    pub exponents: Vec<u32>,
}

impl ModuleInvariants {
    pub fn zero(p: u64) -> Self {
        ModuleInvariants { p, exponents: Vec::new() }
    }

    pub fn from_exponents(p: u64, mut exponents: Vec<u32>) -> Self {
        exponents.retain(|&e| e > 0);
        exponents.sort_unstable();
        ModuleInvariants { p, exponents }
    }

    /// Free module of rank `r` over `Z/p^n`.
    pub fn free(ring: ModRing, r: usize) -> Self {
        ModuleInvariants { p: ring.p(), exponents: vec![ring.n(); r] }
    }

    /// The invariant factors `p^{e_i}` themselves.
    pub fn factors(&self) -> Vec<u64> {
        self.exponents.iter().map(|&e| self.p.pow(e)).collect()
    }

    pub fn length(&self) -> u64 {
        self.exponents.iter().map(|&e| e as u64).sum()
    }

    pub fn is_zero(&self) -> bool {
        self.exponents.is_empty()
    }

    /// Number of cyclic summands.
    pub fn rank(&self) -> usize {
        self.exponents.len()
    }

    /// Direct sum.
    pub fn sum(&self, other: &Self) -> Self {
        let mut e = self.exponents.clone();
        e.extend_from_slice(&other.exponents);
        ModuleInvariants::from_exponents(self.p, e)
    }
}

impl std::fmt::Display for ModuleInvariants {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        if self.exponents.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self.factors().iter().map(|q| format!("Z/{q}")).collect();
        write!(f, "{}", parts.join(" + "))
    }
}

/// Invariant factors and total length of a presented module.
pub fn module_invariants(p: &ModulePresentation) -> ModuleInvariants {
    let ring = p.ring();
    ModuleInvariants::from_exponents(ring.p(), cokernel_exponents(&p.relations, p.generators))
}

/// A matrix over `Z` or over `Z/p^n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ExactMatrix {
    Integer(IntMatrix<BigInt>),
    Modular(ModMatrix),
}

impl ExactMatrix {
    pub fn integer(rows: &[Vec<i64>]) -> Result<Self> {
        let rows = rows.iter().map(|r| r.iter().map(|&v| BigInt::from(v)).collect()).collect();
        Ok(ExactMatrix::Integer(IntMatrix::from_rows(rows)?))
    }

    /// Matrix over `Z/modulus`; the modulus must be a prime power.
    pub fn modular(modulus: u64, rows: &[Vec<i64>]) -> Result<Self> {
        let ring = ModRing::from_modulus(modulus)?;
        Ok(ExactMatrix::Modular(ModMatrix::from_rows(ring, rows)?))
    }
}

/// Canonical form together with certificates relating it to the input.
#[derive(Clone, Debug)]
pub enum NormalForm {
    /// `left * m * right = diag` with unimodular `left`, `right`.
    Smith { diag: IntMatrix<BigInt>, left: IntMatrix<BigInt>, right: IntMatrix<BigInt> },
    /// `form = to_form * m` and `m = from_form * form`, so both row spans agree.
    Howell { form: ModMatrix, to_form: ModMatrix, from_form: ModMatrix },
}

/// Smith form over `Z`, Howell form over `Z/p^n`.
pub fn normal_form(m: &ExactMatrix) -> Result<NormalForm> {
    match m {
        ExactMatrix::Integer(a) => {
            let s = smith_int(a);
            Ok(NormalForm::Smith { diag: s.diag, left: s.left, right: s.right })
        }
        ExactMatrix::Modular(a) => {
            let form = howell_form(a);
            let to_form = row_coordinates(&form, a)?;
            let from_form = row_coordinates(a, &form)?;
            Ok(NormalForm::Howell { form, to_form, from_form })
        }
    }
}

/// Matrix `c` with `c * basis = target`, each target row solved in the row span of `basis`.
fn row_coordinates(target: &ModMatrix, basis: &ModMatrix) -> Result<ModMatrix> {
    let ring = basis.ring();
    let bt = basis.transpose();
    let mut out = ModMatrix::zeros(ring, target.rows(), basis.rows());
    for i in 0..target.rows() {
        let x = solve(&bt, target.row(i))?
            .ok_or_else(|| Error::Internal("row outside the span it was derived from".into()))?;
        for (j, v) in x.into_iter().enumerate() {
            out.set(i, j, v);
        }
    }
    Ok(out)
}
