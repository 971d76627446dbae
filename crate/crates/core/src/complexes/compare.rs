use std::collections::BTreeSet;

use serde::Serialize;

use super::graded::GradedSliceComplex;
use super::homology::{boundaries, cycles, slice_homology};
use crate::error::{Error, Result};
use crate::exactlin::{row_span_length, ModMatrix, ModuleInvariants};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonRow {
    pub degree: i64,
    pub weight: u32,
    pub left: ModuleInvariants,
    pub right: ModuleInvariants,
    pub equal: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ComparisonReport {
    pub rows: Vec<ComparisonRow>,
    pub all_equal: bool,
}

/// Compare homology invariants slice by slice on `[lo, hi]`. Degrees outside the
/// window of an untruncated complex count as zero.
pub fn compare_homology(a: &GradedSliceComplex, b: &GradedSliceComplex, lo: i64, hi: i64) -> Result<ComparisonReport> {
    if a.ring() != b.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", a.ring(), b.ring())));
    }
    for c in [a, b] {
        // A truncated complex says nothing above its trust window.
        let (tlo, thi) = c.trusted_window();
        if hi > thi && thi < c.window().1 {
            return Err(Error::OutOfWindow { degree: hi, lo: tlo, hi: thi });
        }
    }
    let weights: BTreeSet<u32> = a.weights().into_iter().chain(b.weights()).collect();
    let mut rows = Vec::new();
    for &w in &weights {
        for degree in lo..=hi {
            let left = homology_or_zero(a, degree, w)?;
            let right = homology_or_zero(b, degree, w)?;
            let equal = left == right;
            rows.push(ComparisonRow { degree, weight: w, left, right, equal });
        }
    }
    let all_equal = rows.iter().all(|r| r.equal);
    Ok(ComparisonReport { rows, all_equal })
}

fn homology_or_zero(c: &GradedSliceComplex, degree: i64, w: u32) -> Result<ModuleInvariants> {
    let (lo, hi) = c.window();
    if degree < lo || degree > hi || c.slice(w).is_none() {
        return Ok(ModuleInvariants::zero(c.ring().p()));
    }
    slice_homology(c, degree, w)
}

/// `f_n: a_n -> b_n` on one slice, checked to commute with the differentials
/// in degrees `n` and `n+1`; returns whether it induces an isomorphism on `H_n`.
/// Bijectivity is read off as: surjective on homology and equal lengths.
pub fn induced_iso(
    a: &GradedSliceComplex,
    b: &GradedSliceComplex,
    f_n: &ModMatrix,
    f_n_minus_1: &ModMatrix,
    degree: i64,
    w: u32,
) -> Result<bool> {
    let da = a.differential(degree, w);
    let db = b.differential(degree, w);
    if db.rows() > 0 && da.cols() > 0 && db.mul(f_n)? != f_n_minus_1.mul(&da)? {
        return Err(Error::InvalidInput(format!("not a chain map in degree {degree}, weight {w}")));
    }
    let ha = homology_or_zero(a, degree, w)?;
    let hb = homology_or_zero(b, degree, w)?;
    if ha.length() != hb.length() {
        return Ok(false);
    }
    let ring = b.ring();
    let dim = b.rank(degree, w);
    if dim == 0 {
        return Ok(true);
    }
    // im f(Z_a) + B_b must have the same length as Z_b (it is always inside).
    let za = cycles(a, degree, w);
    let image = if za.cols() == 0 { ModMatrix::zeros(ring, dim, 0) } else { f_n.mul(&za)? };
    let bb = boundaries(b, degree, w);
    let lhs = image.hstack(&bb)?;
    let zb = cycles(b, degree, w);
    let len = |m: &ModMatrix| if m.cols() == 0 { 0 } else { row_span_length(&m.transpose()) };
    Ok(len(&lhs) == len(&zb))
}
