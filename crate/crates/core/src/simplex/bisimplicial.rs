use std::collections::{BTreeMap, HashMap};

use super::monotone::{surjections, MonotoneMap};
use super::simplicial::{SimplicialModule, SimplicialSlice};
use crate::complexes::{DoubleComplex, DoubleSlice};
use crate::error::{Error, Result};
use crate::exactlin::{ModMatrix, ModRing};

/// One weight slice of a bisimplicial module on bidegrees `[0, top]²`.
/// Horizontal operators change the first index, vertical ones the second.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisimplicialSlice {
    pub ranks: Vec<Vec<usize>>,
    pub h_faces: Vec<Vec<Vec<ModMatrix>>>,
    pub h_degens: Vec<Vec<Vec<ModMatrix>>>,
    pub v_faces: Vec<Vec<Vec<ModMatrix>>>,
    pub v_degens: Vec<Vec<Vec<ModMatrix>>>,
}

impl BisimplicialSlice {
    /// The simplicial module `m ↦ X_{m,n}`.
    fn row(&self, n: usize, top: usize) -> SimplicialSlice {
        SimplicialSlice {
            ranks: (0..=top).map(|m| self.ranks[m][n]).collect(),
            faces: (0..=top).map(|m| self.h_faces[m][n].clone()).collect(),
            degens: (0..top).map(|m| self.h_degens[m][n].clone()).collect(),
        }
    }

    /// The simplicial module `n ↦ X_{m,n}`.
    fn column(&self, m: usize, top: usize) -> SimplicialSlice {
        SimplicialSlice {
            ranks: self.ranks[m].clone(),
            faces: (0..=top).map(|n| self.v_faces[m][n].clone()).collect(),
            degens: (0..top).map(|n| self.v_degens[m][n].clone()).collect(),
        }
    }

    fn h_ops(&self, m: usize, n: usize) -> Vec<(&ModMatrix, usize)> {
        let mut ops: Vec<_> = self.h_faces[m][n].iter().map(|f| (f, m - 1)).collect();
        if let Some(ds) = self.h_degens.get(m).map(|r| &r[n]) {
            ops.extend(ds.iter().map(|s| (s, m + 1)));
        }
        ops
    }

    fn v_ops(&self, m: usize, n: usize) -> Vec<(&ModMatrix, usize)> {
        let mut ops: Vec<_> = self.v_faces[m][n].iter().map(|f| (f, n - 1)).collect();
        if let Some(ds) = self.v_degens[m].get(n) {
            ops.extend(ds.iter().map(|s| (s, n + 1)));
        }
        ops
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BisimplicialModule {
    ring: ModRing,
    top: usize,
    slices: BTreeMap<u32, BisimplicialSlice>,
}

impl BisimplicialModule {
    /// Checks horizontal and vertical identities and that every horizontal
    /// operator commutes with every vertical one.
    pub fn new(ring: ModRing, top: usize, slices: BTreeMap<u32, BisimplicialSlice>) -> Result<Self> {
        let x = BisimplicialModule { ring, top, slices };
        x.check_identities()?;
        Ok(x)
    }

    pub fn check_identities(&self) -> Result<()> {
        let top = self.top;
        for s in self.slices.values() {
            for n in 0..=top {
                SimplicialModule::new(self.ring, top, BTreeMap::from([(0, s.row(n, top))]))?;
            }
            for m in 0..=top {
                SimplicialModule::new(self.ring, top, BTreeMap::from([(0, s.column(m, top))]))?;
            }
            for m in 0..=top {
                for n in 0..=top {
                    // The operator lists depend only on the index they act on, so the
                    // k-th horizontal operator at (m, n) is the k-th one at (m, n').
                    for (a, (h, m2)) in s.h_ops(m, n).into_iter().enumerate() {
                        for (b, (v, n2)) in s.v_ops(m, n).into_iter().enumerate() {
                            let h2 = s.h_ops(m, n2)[a].0;
                            let v2 = s.v_ops(m2, n)[b].0;
                            if v2.mul(h)? != h2.mul(v)? {
                                return Err(Error::SimplicialIdentity(format!(
                                    "horizontal and vertical operators do not commute at ({m},{n})"
                                )));
                            }
                        }
                    }
                }
            }
        }
        Ok(())
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn top(&self) -> usize {
        self.top
    }

    pub fn slices(&self) -> &BTreeMap<u32, BisimplicialSlice> {
        &self.slices
    }

    pub fn rank(&self, m: usize, n: usize, w: u32) -> usize {
        self.slices.get(&w).map_or(0, |s| s.ranks[m][n])
    }
}

/// Diagonal `X_{n,n}` with `∂_i = ∂_i^h ∂_i^v` and `σ_i = σ_i^h σ_i^v`.
pub fn diagonal(b: &BisimplicialModule) -> Result<SimplicialModule> {
    let top = b.top;
    let mut slices = BTreeMap::new();
    for (&w, s) in &b.slices {
        let mut faces = vec![Vec::new()];
        for n in 1..=top {
            let fs = (0..=n)
                .map(|i| s.h_faces[n][n - 1][i].mul(&s.v_faces[n][n][i]))
                .collect::<Result<Vec<_>>>()?;
            faces.push(fs);
        }
        let mut degens = Vec::new();
        for n in 0..top {
            let ds = (0..=n)
                .map(|i| s.h_degens[n][n + 1][i].mul(&s.v_degens[n][n][i]))
                .collect::<Result<Vec<_>>>()?;
            degens.push(ds);
        }
        let ranks = (0..=top).map(|n| s.ranks[n][n]).collect();
        slices.insert(w, SimplicialSlice { ranks, faces, degens });
    }
    SimplicialModule::new_unchecked(b.ring, top, slices)
}

/// Summands of `X_{m,n}`: one copy of `D_{p,q}` per pair of surjections.
struct DoubleLayout {
    summands: Vec<(MonotoneMap, MonotoneMap, usize)>,
    offsets: HashMap<(MonotoneMap, MonotoneMap), usize>,
    rank: usize,
}

impl DoubleLayout {
    fn new(m: usize, n: usize, s: &DoubleSlice) -> Self {
        let mut summands = Vec::new();
        let mut offsets = HashMap::new();
        let mut acc = 0;
        for p in (0..=m).rev() {
            for q in (0..=n).rev() {
                let r = s.rank(p as i64, q as i64);
                for eta in surjections(m, p) {
                    for eta2 in surjections(n, q) {
                        offsets.insert((eta.clone(), eta2.clone()), acc);
                        summands.push((eta.clone(), eta2, acc));
                        acc += r;
                    }
                }
            }
        }
        DoubleLayout { summands, offsets, rank: acc }
    }
}

/// Which block `α^*` puts on a summand indexed by a surjection onto `[p]`:
/// `Some((η', false))` for the identity, `Some((η', true))` for `(-1)^p d`.
fn kan_case(eta: &MonotoneMap, alpha: &MonotoneMap) -> Result<Option<(MonotoneMap, bool)>> {
    let p = eta.target_dim();
    let (eta2, eps2) = eta.compose(alpha)?.epi_mono_factorize();
    Ok(if eps2.is_identity() {
        Some((eta2, false))
    } else if p >= 1 && eps2.source_dim() == p - 1 && eps2.skipped() == [p] {
        Some((eta2, true))
    } else {
        None
    })
}

fn signed(d: ModMatrix, p: usize) -> ModMatrix {
    if p % 2 == 1 {
        d.neg()
    } else {
        d
    }
}

/// Kan transform in both directions of a commuting double complex in bidegrees `>= 0`.
pub fn double_kan_transform(d: &DoubleComplex, top: usize) -> Result<BisimplicialModule> {
    d.validate()?;
    if d.p_range.0 < 0 || d.q_range.0 < 0 {
        return Err(Error::InvalidInput("double Kan transform needs bidegrees >= 0".into()));
    }
    let ring = d.ring;
    let mut slices = BTreeMap::new();
    for (&w, s) in &d.slices {
        let layouts: Vec<Vec<DoubleLayout>> =
            (0..=top).map(|m| (0..=top).map(|n| DoubleLayout::new(m, n, s)).collect()).collect();
        let horizontal = |alpha: &MonotoneMap, n: usize| -> Result<ModMatrix> {
            let (src, tgt) = (&layouts[alpha.target_dim()][n], &layouts[alpha.source_dim()][n]);
            let mut out = ModMatrix::zeros(ring, tgt.rank, src.rank);
            for (eta, eta2, off) in &src.summands {
                let (p, q) = (eta.target_dim() as i64, eta2.target_dim() as i64);
                if s.rank(p, q) == 0 {
                    continue;
                }
                if let Some((e, is_d)) = kan_case(eta, alpha)? {
                    let block = if is_d {
                        signed(s.horizontal(ring, p, q), p as usize)
                    } else {
                        ModMatrix::identity(ring, s.rank(p, q))
                    };
                    out.set_block(tgt.offsets[&(e, eta2.clone())], *off, &block);
                }
            }
            Ok(out)
        };
        let vertical = |alpha: &MonotoneMap, m: usize| -> Result<ModMatrix> {
            let (src, tgt) = (&layouts[m][alpha.target_dim()], &layouts[m][alpha.source_dim()]);
            let mut out = ModMatrix::zeros(ring, tgt.rank, src.rank);
            for (eta, eta2, off) in &src.summands {
                let (p, q) = (eta.target_dim() as i64, eta2.target_dim() as i64);
                if s.rank(p, q) == 0 {
                    continue;
                }
                if let Some((e, is_d)) = kan_case(eta2, alpha)? {
                    let block = if is_d {
                        signed(s.vertical(ring, p, q), q as usize)
                    } else {
                        ModMatrix::identity(ring, s.rank(p, q))
                    };
                    out.set_block(tgt.offsets[&(eta.clone(), e)], *off, &block);
                }
            }
            Ok(out)
        };
        let mut slice = BisimplicialSlice {
            ranks: layouts.iter().map(|row| row.iter().map(|l| l.rank).collect()).collect(),
            h_faces: Vec::new(),
            h_degens: Vec::new(),
            v_faces: Vec::new(),
            v_degens: Vec::new(),
        };
        for m in 0..=top {
            let mut hf = Vec::new();
            let mut hd = Vec::new();
            let mut vf = Vec::new();
            let mut vd = Vec::new();
            for n in 0..=top {
                hf.push(if m == 0 {
                    Vec::new()
                } else {
                    (0..=m).map(|i| horizontal(&MonotoneMap::coface(m, i), n)).collect::<Result<_>>()?
                });
                if m < top {
                    hd.push((0..=m).map(|i| horizontal(&MonotoneMap::codegeneracy(m, i), n)).collect::<Result<_>>()?);
                }
                vf.push(if n == 0 {
                    Vec::new()
                } else {
                    (0..=n).map(|j| vertical(&MonotoneMap::coface(n, j), m)).collect::<Result<_>>()?
                });
                if n < top {
                    vd.push((0..=n).map(|j| vertical(&MonotoneMap::codegeneracy(n, j), m)).collect::<Result<_>>()?);
                }
            }
            slice.h_faces.push(hf);
            if m < top {
                slice.h_degens.push(hd);
            }
            slice.v_faces.push(vf);
            slice.v_degens.push(vd);
        }
        slices.insert(w, slice);
    }
    Ok(BisimplicialModule { ring, top, slices })
}
