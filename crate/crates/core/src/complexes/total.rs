use std::collections::{BTreeMap, HashMap};

use super::graded::{GradedSliceComplex, Slice};
use crate::error::{Error, Result};
use crate::exactlin::{ModMatrix, ModRing};

/// One weight slice of a double complex with commuting differentials
/// `dh: D_{p,q} -> D_{p-1,q}` and `dv: D_{p,q} -> D_{p,q-1}`.
#[derive(Clone, Debug, Default)]
pub struct DoubleSlice {
    pub ranks: HashMap<(i64, i64), usize>,
    pub dh: HashMap<(i64, i64), ModMatrix>,
    pub dv: HashMap<(i64, i64), ModMatrix>,
}

impl DoubleSlice {
    pub fn rank(&self, p: i64, q: i64) -> usize {
        self.ranks.get(&(p, q)).copied().unwrap_or(0)
    }

    pub fn horizontal(&self, ring: ModRing, p: i64, q: i64) -> ModMatrix {
        self.dh.get(&(p, q)).cloned().unwrap_or_else(|| ModMatrix::zeros(ring, self.rank(p - 1, q), self.rank(p, q)))
    }

    pub fn vertical(&self, ring: ModRing, p: i64, q: i64) -> ModMatrix {
        self.dv.get(&(p, q)).cloned().unwrap_or_else(|| ModMatrix::zeros(ring, self.rank(p, q - 1), self.rank(p, q)))
    }
}

/// Finite double complex, `p` in `[p_lo, p_hi]`, `q` in `[q_lo, q_hi]`.
#[derive(Clone, Debug)]
pub struct DoubleComplex {
    pub ring: ModRing,
    pub p_range: (i64, i64),
    pub q_range: (i64, i64),
    pub slices: BTreeMap<u32, DoubleSlice>,
}

impl DoubleComplex {
    /// Checks shapes, `dh² = 0`, `dv² = 0` and `dh dv = dv dh`.
    pub fn validate(&self) -> Result<()> {
        let ring = self.ring;
        for (w, s) in &self.slices {
            for p in self.p_range.0..=self.p_range.1 {
                for q in self.q_range.0..=self.q_range.1 {
                    let h = s.horizontal(ring, p, q);
                    let v = s.vertical(ring, p, q);
                    if h.shape() != (s.rank(p - 1, q), s.rank(p, q)) || v.shape() != (s.rank(p, q - 1), s.rank(p, q)) {
                        return Err(Error::Dimension(format!("weight {w}, bidegree ({p},{q})")));
                    }
                    if !s.horizontal(ring, p - 1, q).mul(&h)?.is_zero() {
                        return Err(Error::NotAComplex(format!("horizontal, weight {w}, bidegree ({p},{q})")));
                    }
                    if !s.vertical(ring, p, q - 1).mul(&v)?.is_zero() {
                        return Err(Error::NotAComplex(format!("vertical, weight {w}, bidegree ({p},{q})")));
                    }
                    let hv = s.horizontal(ring, p, q - 1).mul(&v)?;
                    let vh = s.vertical(ring, p - 1, q).mul(&h)?;
                    if hv != vh {
                        return Err(Error::NotAComplex(format!(
                            "differentials do not commute at weight {w}, bidegree ({p},{q})"
                        )));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Direct-sum total complex with `D = dh + (-1)^p dv`. Each `Tot_n` lists its
/// summands `D_{p,n-p}` by increasing `p`.
pub fn total_complex(d: &DoubleComplex) -> Result<GradedSliceComplex> {
    d.validate()?;
    let ring = d.ring;
    let lo = d.p_range.0 + d.q_range.0;
    let hi = d.p_range.1 + d.q_range.1;
    let ps = |n: i64| (d.p_range.0.max(n - d.q_range.1))..=(d.p_range.1.min(n - d.q_range.0));
    let mut slices = BTreeMap::new();
    for (&w, s) in &d.slices {
        let offsets = |n: i64| {
            let mut off = HashMap::new();
            let mut acc = 0;
            for p in ps(n) {
                off.insert(p, acc);
                acc += s.rank(p, n - p);
            }
            (off, acc)
        };
        let ranks: Vec<usize> = (lo..=hi).map(|n| offsets(n).1).collect();
        let mut diffs = Vec::new();
        for n in lo + 1..=hi {
            let (src, cols) = offsets(n);
            let (tgt, rows) = offsets(n - 1);
            let mut m = ModMatrix::zeros(ring, rows, cols);
            for p in ps(n) {
                let q = n - p;
                if let Some(&r0) = tgt.get(&(p - 1)) {
                    m.set_block(r0, src[&p], &s.horizontal(ring, p, q));
                }
                if let Some(&r0) = tgt.get(&p) {
                    let v = s.vertical(ring, p, q);
                    let v = if p.rem_euclid(2) == 1 { v.neg() } else { v };
                    m.set_block(r0, src[&p], &v);
                }
            }
            diffs.push(m);
        }
        slices.insert(w, Slice::new(ring, ranks, diffs)?);
    }
    GradedSliceComplex::new(ring, lo, hi, slices)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z9() -> ModRing {
        ModRing::new(3, 2).unwrap()
    }

    #[test]
    fn one_column_is_that_column() {
        let r = z9();
        let mut s = DoubleSlice::default();
        s.ranks.insert((0, 0), 1);
        s.ranks.insert((0, 1), 1);
        s.dv.insert((0, 1), ModMatrix::from_rows(r, &[vec![3]]).unwrap());
        let mut slices = BTreeMap::new();
        slices.insert(0, s);
        let d = DoubleComplex { ring: r, p_range: (0, 0), q_range: (0, 1), slices };
        let t = total_complex(&d).unwrap();
        assert_eq!(t.differential(1, 0).to_rows(), vec![vec![3]]);
    }

    #[test]
    fn anticommuting_input_is_rejected() {
        // A square with dh dv = -dv dh (already signed) is not accepted.
        let r = z9();
        let one = ModMatrix::identity(r, 1);
        let mut s = DoubleSlice::default();
        for p in 0..2 {
            for q in 0..2 {
                s.ranks.insert((p, q), 1);
            }
        }
        s.dh.insert((1, 0), one.clone());
        s.dh.insert((1, 1), one.clone());
        s.dv.insert((0, 1), one.clone());
        s.dv.insert((1, 1), one.neg());
        let mut slices = BTreeMap::new();
        slices.insert(0, s);
        let d = DoubleComplex { ring: r, p_range: (0, 1), q_range: (0, 1), slices };
        assert!(matches!(total_complex(&d), Err(Error::NotAComplex(_))));
    }
}
