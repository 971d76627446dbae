use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::exactlin::{ModMatrix, ModRing};

/// One weight slice: free modules `C_lo .. C_hi` and differentials between them.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Slice {
    ranks: Vec<usize>,
    /// `diffs[k]` is `d: C_{lo+k+1} -> C_{lo+k}`, shape `ranks[k] x ranks[k+1]`.
    diffs: Vec<ModMatrix>,
}

impl Slice {
    pub fn new(ring: ModRing, ranks: Vec<usize>, diffs: Vec<ModMatrix>) -> Result<Self> {
        if ranks.is_empty() {
            return Err(Error::Dimension("slice with no degrees".into()));
        }
        if diffs.len() + 1 != ranks.len() {
            return Err(Error::Dimension(format!("{} differentials for {} terms", diffs.len(), ranks.len())));
        }
        for (k, d) in diffs.iter().enumerate() {
            if d.shape() != (ranks[k], ranks[k + 1]) {
                return Err(Error::Dimension(format!(
                    "differential {} has shape {:?}, expected {:?}",
                    k + 1,
                    d.shape(),
                    (ranks[k], ranks[k + 1])
                )));
            }
            if d.ring() != ring {
                return Err(Error::RingMismatch(format!("{} vs {}", d.ring(), ring)));
            }
        }
        Ok(Slice { ranks, diffs })
    }

    pub fn zero(ring: ModRing, len: usize) -> Self {
        Slice { ranks: vec![0; len], diffs: (1..len).map(|_| ModMatrix::zeros(ring, 0, 0)).collect() }
    }

    pub fn ranks(&self) -> &[usize] {
        &self.ranks
    }

    pub fn diffs(&self) -> &[ModMatrix] {
        &self.diffs
    }
}

/// Chain complex over `Z/p^n` whose terms are weight-graded free modules,
/// stored as one finite complex per weight on the homological window `[lo, hi]`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct GradedSliceComplex {
    ring: ModRing,
    lo: i64,
    hi: i64,
    trusted_hi: i64,
    slices: BTreeMap<u32, Slice>,
}

impl GradedSliceComplex {
    /// Checks shapes and `d∘d = 0` on every slice.
    pub fn new(ring: ModRing, lo: i64, hi: i64, slices: BTreeMap<u32, Slice>) -> Result<Self> {
        if hi < lo {
            return Err(Error::InvalidInput(format!("empty window [{lo}, {hi}]")));
        }
        let len = (hi - lo + 1) as usize;
        for (w, s) in &slices {
            if s.ranks.len() != len {
                return Err(Error::Dimension(format!("weight {w} slice has {} terms, window needs {len}", s.ranks.len())));
            }
            for k in 1..s.diffs.len() {
                let dd = s.diffs[k - 1].mul(&s.diffs[k])?;
                if !dd.is_zero() {
                    return Err(Error::NotAComplex(format!("weight {w}, degree {}", lo + k as i64 + 1)));
                }
            }
        }
        Ok(GradedSliceComplex { ring, lo, hi, trusted_hi: hi, slices })
    }

    /// Single weight-0 slice.
    pub fn ungraded(ring: ModRing, lo: i64, ranks: Vec<usize>, diffs: Vec<ModMatrix>) -> Result<Self> {
        let hi = lo + ranks.len() as i64 - 1;
        let mut slices = BTreeMap::new();
        slices.insert(0, Slice::new(ring, ranks, diffs)?);
        GradedSliceComplex::new(ring, lo, hi, slices)
    }

    /// Marks the top of the window as a hard truncation: the terms above `hi`
    /// are unknown, so homology in degree `hi` is not trusted.
    pub fn truncated(mut self) -> Self {
        self.trusted_hi = self.hi - 1;
        self
    }

    pub fn with_trusted_top(mut self, top: i64) -> Self {
        self.trusted_hi = top.min(self.hi);
        self
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn window(&self) -> (i64, i64) {
        (self.lo, self.hi)
    }

    pub fn trusted_window(&self) -> (i64, i64) {
        (self.lo, self.trusted_hi)
    }

    pub fn weights(&self) -> Vec<u32> {
        self.slices.keys().copied().collect()
    }

    pub fn slice(&self, w: u32) -> Option<&Slice> {
        self.slices.get(&w)
    }

    pub fn slices(&self) -> &BTreeMap<u32, Slice> {
        &self.slices
    }

    pub fn rank(&self, degree: i64, w: u32) -> usize {
        if degree < self.lo || degree > self.hi {
            return 0;
        }
        self.slices.get(&w).map_or(0, |s| s.ranks[(degree - self.lo) as usize])
    }

    /// `d_n: C_n -> C_{n-1}` on the weight-`w` slice (zero outside the window).
    pub fn differential(&self, degree: i64, w: u32) -> ModMatrix {
        let (rows, cols) = (self.rank(degree - 1, w), self.rank(degree, w));
        if degree <= self.lo || degree > self.hi {
            return ModMatrix::zeros(self.ring, rows, cols);
        }
        match self.slices.get(&w) {
            Some(s) => s.diffs[(degree - self.lo - 1) as usize].clone(),
            None => ModMatrix::zeros(self.ring, rows, cols),
        }
    }

    /// Total length of the weight-`w` term in degree `n`.
    pub fn term_length(&self, degree: i64, w: u32) -> u64 {
        self.rank(degree, w) as u64 * self.ring.n() as u64
    }

    /// Reorder the basis of each term by a permutation; `perm(degree, w)` lists
    /// the old index that lands at each new position.
    pub fn permute_bases(&self, mut perm: impl FnMut(i64, u32) -> Vec<usize>) -> Result<Self> {
        let mut slices = BTreeMap::new();
        for (&w, s) in &self.slices {
            let perms: Vec<Vec<usize>> =
                (0..s.ranks.len()).map(|k| perm(self.lo + k as i64, w)).collect();
            let diffs = s
                .diffs
                .iter()
                .enumerate()
                .map(|(k, d)| d.select_rows(&perms[k]).select_cols(&perms[k + 1]))
                .collect();
            slices.insert(w, Slice::new(self.ring, s.ranks.clone(), diffs)?);
        }
        let mut out = GradedSliceComplex::new(self.ring, self.lo, self.hi, slices)?;
        out.trusted_hi = self.trusted_hi;
        Ok(out)
    }

    /// Restrict to the weights in `keep`.
    pub fn restrict_weights(&self, keep: impl Fn(u32) -> bool) -> Self {
        let mut out = self.clone();
        out.slices.retain(|&w, _| keep(w));
        out
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_non_complex() {
        let r = ModRing::new(2, 2).unwrap();
        let one = ModMatrix::identity(r, 1);
        let err = GradedSliceComplex::ungraded(r, 0, vec![1, 1, 1], vec![one.clone(), one]).unwrap_err();
        assert!(matches!(err, Error::NotAComplex(_)));
    }
}
