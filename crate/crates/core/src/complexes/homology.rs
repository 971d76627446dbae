use serde::Serialize;

use super::graded::GradedSliceComplex;
use crate::error::{Error, Result};
use crate::exactlin::{kernel_columns, quotient_exponents, row_span_length, ModMatrix, ModuleInvariants};

/// Generators of the cycles `Z_n` as columns.
pub fn cycles(c: &GradedSliceComplex, degree: i64, w: u32) -> ModMatrix {
    let d = c.differential(degree, w);
    if d.rows() == 0 {
        return ModMatrix::identity(c.ring(), d.cols());
    }
    kernel_columns(&d)
}

/// Generators of the boundaries `B_n` as columns.
pub fn boundaries(c: &GradedSliceComplex, degree: i64, w: u32) -> ModMatrix {
    c.differential(degree + 1, w)
}

/// Invariant factors of `H_n` on the weight-`w` slice.
pub fn slice_homology(c: &GradedSliceComplex, degree: i64, w: u32) -> Result<ModuleInvariants> {
    let (lo, hi) = c.trusted_window();
    if degree < lo || degree > hi {
        return Err(Error::OutOfWindow { degree, lo, hi });
    }
    let ring = c.ring();
    let dim = c.rank(degree, w);
    if dim == 0 {
        return Ok(ModuleInvariants::zero(ring.p()));
    }
    let z = cycles(c, degree, w);
    let b = boundaries(c, degree, w);
    Ok(ModuleInvariants::from_exponents(ring.p(), quotient_exponents(ring, dim, &z, &b)))
}

/// Length of the image of `d_n` on a slice.
pub fn image_length(c: &GradedSliceComplex, degree: i64, w: u32) -> u64 {
    let d = c.differential(degree, w);
    if d.rows() == 0 || d.cols() == 0 {
        return 0;
    }
    row_span_length(&d.transpose())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyEntry {
    pub degree: i64,
    pub weight: u32,
    pub invariants: ModuleInvariants,
    pub trusted: bool,
}

/// Homology invariants per `(degree, weight)` with the trust window.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HomologyReport {
    pub p: u64,
    pub window: (i64, i64),
    pub trusted: (i64, i64),
    pub entries: Vec<HomologyEntry>,
}

impl HomologyReport {
    pub fn get(&self, degree: i64, w: u32) -> Option<&HomologyEntry> {
        self.entries.iter().find(|e| e.degree == degree && e.weight == w)
    }

    /// Invariants at `(degree, w)`, zero when the slice is absent.
    pub fn invariants(&self, degree: i64, w: u32) -> ModuleInvariants {
        self.get(degree, w).map_or_else(|| ModuleInvariants::zero(self.p), |e| e.invariants.clone())
    }

    /// Direct sum over all weights in one degree.
    pub fn total(&self, degree: i64) -> ModuleInvariants {
        self.entries
            .iter()
            .filter(|e| e.degree == degree)
            .fold(ModuleInvariants::zero(self.p), |acc, e| acc.sum(&e.invariants))
    }

    /// Every trusted entry outside `degree` vanishes.
    pub fn concentrated_in(&self, degree: i64) -> bool {
        self.entries.iter().filter(|e| e.trusted && e.degree != degree).all(|e| e.invariants.is_zero())
    }
}

/// Homology of every slice in every degree of the window. Degrees above the
/// trust window are computed (treating the top term as the last one) but flagged.
pub fn homology_report(c: &GradedSliceComplex) -> HomologyReport {
    let (lo, hi) = c.window();
    let (_, thi) = c.trusted_window();
    let ring = c.ring();
    let mut entries = Vec::new();
    for w in c.weights() {
        for degree in lo..=hi {
            let dim = c.rank(degree, w);
            let inv = if dim == 0 {
                ModuleInvariants::zero(ring.p())
            } else {
                let z = cycles(c, degree, w);
                let b = boundaries(c, degree, w);
                ModuleInvariants::from_exponents(ring.p(), quotient_exponents(ring, dim, &z, &b))
            };
            entries.push(HomologyEntry { degree, weight: w, invariants: inv, trusted: degree <= thi });
        }
    }
    HomologyReport { p: ring.p(), window: (lo, hi), trusted: (lo, thi), entries }
}
