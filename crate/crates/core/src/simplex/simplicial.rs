use std::collections::BTreeMap;

use super::monotone::MonotoneMap;
use crate::complexes::{GradedSliceComplex, Slice};
use crate::error::{Error, Result};
use crate::exactlin::{kernel_columns, unit_echelon, ModMatrix, ModRing};

/// One weight slice of a simplicial module on degrees `0..=top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialSlice {
    pub ranks: Vec<usize>,
    /// `faces[n][i]` is `∂_i: X_n -> X_{n-1}`; `faces[0]` is empty.
    pub faces: Vec<Vec<ModMatrix>>,
    /// `degens[n][i]` is `σ_i: X_n -> X_{n+1}` for `n < top`.
    pub degens: Vec<Vec<ModMatrix>>,
}

impl SimplicialSlice {
    fn check_shapes(&self, ring: ModRing, top: usize) -> Result<()> {
        if self.ranks.len() != top + 1 || self.faces.len() != top + 1 || self.degens.len() != top {
            return Err(Error::Dimension("simplicial slice does not match its degree window".into()));
        }
        for n in 0..=top {
            let expected = if n == 0 { 0 } else { n + 1 };
            if self.faces[n].len() != expected {
                return Err(Error::Dimension(format!("degree {n} has {} faces", self.faces[n].len())));
            }
            for f in &self.faces[n] {
                if f.shape() != (self.ranks[n - 1], self.ranks[n]) || f.ring() != ring {
                    return Err(Error::Dimension(format!("face out of degree {n} has shape {:?}", f.shape())));
                }
            }
            if n < top {
                if self.degens[n].len() != n + 1 {
                    return Err(Error::Dimension(format!("degree {n} has {} degeneracies", self.degens[n].len())));
                }
                for s in &self.degens[n] {
                    if s.shape() != (self.ranks[n + 1], self.ranks[n]) || s.ring() != ring {
                        return Err(Error::Dimension(format!("degeneracy out of degree {n} has shape {:?}", s.shape())));
                    }
                }
            }
        }
        Ok(())
    }

    fn check_identities(&self, ring: ModRing, top: usize, w: u32) -> Result<()> {
        let fail = |what: String| Err(Error::SimplicialIdentity(format!("weight {w}: {what}")));
        // ∂_i ∂_j = ∂_{j-1} ∂_i for i < j, on X_n.
        for n in 2..=top {
            for j in 1..=n {
                for i in 0..j {
                    let lhs = self.faces[n - 1][i].mul(&self.faces[n][j])?;
                    let rhs = self.faces[n - 1][j - 1].mul(&self.faces[n][i])?;
                    if lhs != rhs {
                        return fail(format!("∂{i}∂{j} ≠ ∂{}∂{i} on X_{n}", j - 1));
                    }
                }
            }
        }
        // σ_i σ_j = σ_{j+1} σ_i for i <= j, on X_n.
        for n in 0..top.saturating_sub(1) {
            for j in 0..=n {
                for i in 0..=j {
                    let lhs = self.degens[n + 1][i].mul(&self.degens[n][j])?;
                    let rhs = self.degens[n + 1][j + 1].mul(&self.degens[n][i])?;
                    if lhs != rhs {
                        return fail(format!("σ{i}σ{j} ≠ σ{}σ{i} on X_{n}", j + 1));
                    }
                }
            }
        }
        // ∂_i σ_j on X_n.
        for n in 0..top {
            let id = ModMatrix::identity(ring, self.ranks[n]);
            for j in 0..=n {
                for i in 0..=n + 1 {
                    let lhs = self.faces[n + 1][i].mul(&self.degens[n][j])?;
                    let rhs = if i < j {
                        self.degens[n - 1][j - 1].mul(&self.faces[n][i])?
                    } else if i == j || i == j + 1 {
                        id.clone()
                    } else {
                        self.degens[n - 1][j].mul(&self.faces[n][i - 1])?
                    };
                    if lhs != rhs {
                        return fail(format!("∂{i}σ{j} identity fails on X_{n}"));
                    }
                }
            }
        }
        Ok(())
    }
}

/// Simplicial module over `Z/p^n`, degreewise free and weight graded, on `0..=top`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SimplicialModule {
    ring: ModRing,
    top: usize,
    slices: BTreeMap<u32, SimplicialSlice>,
}

impl SimplicialModule {
    /// Validates shapes and all simplicial identities.
    pub fn new(ring: ModRing, top: usize, slices: BTreeMap<u32, SimplicialSlice>) -> Result<Self> {
        let x = SimplicialModule::new_unchecked(ring, top, slices)?;
        x.check_identities()?;
        Ok(x)
    }

    /// Validates shapes only.
    pub fn new_unchecked(ring: ModRing, top: usize, slices: BTreeMap<u32, SimplicialSlice>) -> Result<Self> {
        for s in slices.values() {
            s.check_shapes(ring, top)?;
        }
        Ok(SimplicialModule { ring, top, slices })
    }

    /// Constant simplicial module: all faces and degeneracies the identity.
    pub fn constant(ring: ModRing, top: usize, ranks: &BTreeMap<u32, usize>) -> Self {
        let slices = ranks
            .iter()
            .map(|(&w, &r)| {
                let id = ModMatrix::identity(ring, r);
                let faces = (0..=top).map(|n| if n == 0 { Vec::new() } else { vec![id.clone(); n + 1] }).collect();
                let degens = (0..top).map(|n| vec![id.clone(); n + 1]).collect();
                (w, SimplicialSlice { ranks: vec![r; top + 1], faces, degens })
            })
            .collect();
        SimplicialModule { ring, top, slices }
    }

    pub fn check_identities(&self) -> Result<()> {
        for (&w, s) in &self.slices {
            s.check_identities(self.ring, self.top, w)?;
        }
        Ok(())
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn weights(&self) -> Vec<u32> {
        self.slices.keys().copied().collect()
    }

    pub fn slice(&self, w: u32) -> Option<&SimplicialSlice> {
        self.slices.get(&w)
    }

    pub fn slices(&self) -> &BTreeMap<u32, SimplicialSlice> {
        &self.slices
    }

    pub fn rank(&self, n: usize, w: u32) -> usize {
        self.slices.get(&w).map_or(0, |s| s.ranks[n])
    }

    pub fn face(&self, n: usize, i: usize, w: u32) -> &ModMatrix {
        &self.slices[&w].faces[n][i]
    }

    pub fn degeneracy(&self, n: usize, i: usize, w: u32) -> &ModMatrix {
        &self.slices[&w].degens[n][i]
    }

    /// `α^*: X_n -> X_m` for `α: [m] -> [n]`, through its epi-mono factorization.
    pub fn act(&self, alpha: &MonotoneMap, w: u32) -> Result<ModMatrix> {
        let (n, m) = (alpha.target_dim(), alpha.source_dim());
        if n > self.top || m > self.top {
            return Err(Error::OutOfWindow { degree: n.max(m) as i64, lo: 0, hi: self.top as i64 });
        }
        let (eta, eps) = alpha.epi_mono_factorize();
        let mut deg = n;
        let mut out = ModMatrix::identity(self.ring, self.rank(n, w));
        for &j in eps.skipped().iter().rev() {
            out = self.face(deg, j, w).mul(&out)?;
            deg -= 1;
        }
        for i in eta.repeats() {
            out = self.degeneracy(deg, i, w).mul(&out)?;
            deg += 1;
        }
        debug_assert_eq!(deg, m);
        Ok(out)
    }
}

/// `C_n = X_n` with `d_n = Σ (-1)^i ∂_i`; the top degree is a truncation.
pub fn unnormalized_complex(x: &SimplicialModule) -> Result<GradedSliceComplex> {
    let ring = x.ring;
    let mut slices = BTreeMap::new();
    for (&w, s) in &x.slices {
        let mut diffs = Vec::new();
        for n in 1..=x.top {
            let mut d = ModMatrix::zeros(ring, s.ranks[n - 1], s.ranks[n]);
            for (i, f) in s.faces[n].iter().enumerate() {
                d = if i % 2 == 0 { d.add(f)? } else { d.sub(f)? };
            }
            diffs.push(d);
        }
        slices.insert(w, Slice::new(ring, s.ranks.clone(), diffs)?);
    }
    Ok(GradedSliceComplex::new(ring, 0, x.top as i64, slices)?.truncated())
}

#[derive(Clone, Debug)]
pub struct Normalized {
    pub complex: GradedSliceComplex,
    /// Per weight and degree: basis rows of `N_n` inside `X_n` (identity on pivot columns) and the pivots.
    pub bases: BTreeMap<u32, Vec<(ModMatrix, Vec<usize>)>>,
}

impl Normalized {
    /// Coordinates in the `N_n` basis of a vector of `X_n` lying in `N_n`.
    pub fn coordinates(&self, n: usize, w: u32, v: &[u64]) -> Result<Vec<u64>> {
        let (basis, pivots) = &self.bases[&w][n];
        coordinates_in(basis, pivots, v)
    }
}

fn coordinates_in(basis: &ModMatrix, pivots: &[usize], v: &[u64]) -> Result<Vec<u64>> {
    let ring = basis.ring();
    let c: Vec<u64> = pivots.iter().map(|&p| v[p]).collect();
    for j in 0..basis.cols() {
        let mut acc = 0;
        for (k, &ck) in c.iter().enumerate() {
            acc = ring.mul_add(ck, basis.get(k, j), acc);
        }
        if acc != v[j] {
            return Err(Error::Internal("vector leaves the normalized subcomplex".into()));
        }
    }
    Ok(c)
}

/// Normalized complex `N_n = ∩_{i<n} ker ∂_i` with differential `(-1)^n ∂_n`.
pub fn normalized_complex(x: &SimplicialModule) -> Result<GradedSliceComplex> {
    Ok(normalize(x)?.complex)
}

/// As [`normalized_complex`], keeping the bases of each `N_n` inside `X_n`.
pub fn normalize(x: &SimplicialModule) -> Result<Normalized> {
    let ring = x.ring;
    let mut slices = BTreeMap::new();
    let mut all_bases = BTreeMap::new();
    for (&w, s) in &x.slices {
        let mut bases: Vec<(ModMatrix, Vec<usize>)> = Vec::new();
        for n in 0..=x.top {
            let r = s.ranks[n];
            if n == 0 || r == 0 {
                bases.push((ModMatrix::identity(ring, r), (0..r).collect()));
                continue;
            }
            let mut stacked = ModMatrix::zeros(ring, 0, r);
            for i in 0..n {
                stacked = stacked.vstack(&s.faces[n][i])?;
            }
            let gens = kernel_columns(&stacked);
            let gens_rows = if gens.cols() == 0 { ModMatrix::zeros(ring, 0, r) } else { gens.transpose() };
            bases.push(unit_echelon(&gens_rows)?);
        }
        let ranks: Vec<usize> = bases.iter().map(|(b, _)| b.rows()).collect();
        let mut diffs = Vec::new();
        for n in 1..=x.top {
            let (bn, _) = &bases[n];
            let (bm, pm) = &bases[n - 1];
            let mut d = ModMatrix::zeros(ring, bm.rows(), bn.rows());
            let face = &s.faces[n][n];
            for k in 0..bn.rows() {
                let mut v = face.mul_vec(bn.row(k))?;
                if n % 2 == 1 {
                    v.iter_mut().for_each(|e| *e = ring.neg(*e));
                }
                let c = coordinates_in(bm, pm, &v)?;
                for (i, ci) in c.into_iter().enumerate() {
                    d.set(i, k, ci);
                }
            }
            diffs.push(d);
        }
        slices.insert(w, Slice::new(ring, ranks, diffs)?);
        all_bases.insert(w, bases);
    }
    let complex = GradedSliceComplex::new(ring, 0, x.top as i64, slices)?.truncated();
    Ok(Normalized { complex, bases: all_bases })
}
