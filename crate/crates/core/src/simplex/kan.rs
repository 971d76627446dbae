use std::collections::{BTreeMap, HashMap};

use super::monotone::{surjections, MonotoneMap};
use super::simplicial::{SimplicialModule, SimplicialSlice};
use crate::complexes::GradedSliceComplex;
use crate::error::{Error, Result};
use crate::exactlin::{ModMatrix, ModRing};

/// Summands of `KC_n`: one copy of `C_p` per surjection `η: [n] -> [p]`,
/// listed with `p` descending (so the identity comes first), then `η` lexicographic.
#[derive(Clone, Debug)]
pub struct KanLayout {
    pub summands: Vec<(MonotoneMap, usize)>,
    offsets: HashMap<MonotoneMap, usize>,
    pub rank: usize,
}

impl KanLayout {
    pub fn new(n: usize, ranks: &dyn Fn(usize) -> usize) -> Self {
        let mut summands = Vec::new();
        let mut offsets = HashMap::new();
        let mut acc = 0;
        for p in (0..=n).rev() {
            let r = ranks(p);
            for eta in surjections(n, p) {
                offsets.insert(eta.clone(), acc);
                summands.push((eta, acc));
                acc += r;
            }
        }
        KanLayout { summands, offsets, rank: acc }
    }

    pub fn offset(&self, eta: &MonotoneMap) -> usize {
        self.offsets[eta]
    }
}

/// `α^*: KC_n -> KC_m` for `α: [m] -> [n]` on one weight slice. For a summand `η`,
/// factor `η ∘ α = ε' ∘ η'`: identity when `ε' = id`, `(-1)^p d` when `ε'` skips the
/// last vertex `p`, zero otherwise.
fn kan_action(
    ring: ModRing,
    alpha: &MonotoneMap,
    src: &KanLayout,
    tgt: &KanLayout,
    rank: &dyn Fn(usize) -> usize,
    diff: &dyn Fn(usize) -> ModMatrix,
) -> Result<ModMatrix> {
    let mut out = ModMatrix::zeros(ring, tgt.rank, src.rank);
    for (eta, off) in &src.summands {
        let p = eta.target_dim();
        if rank(p) == 0 {
            continue;
        }
        let (eta2, eps2) = eta.compose(alpha)?.epi_mono_factorize();
        if eps2.is_identity() {
            out.set_block(tgt.offset(&eta2), *off, &ModMatrix::identity(ring, rank(p)));
        } else if p >= 1 && eps2.source_dim() == p - 1 && eps2.skipped() == [p] {
            let d = diff(p);
            let d = if p % 2 == 1 { d.neg() } else { d };
            out.set_block(tgt.offset(&eta2), *off, &d);
        }
    }
    Ok(out)
}

/// Kan transform of a complex in degrees `>= 0`, built on degrees `0..=top`.
pub fn kan_transform(c: &GradedSliceComplex, top: usize) -> Result<SimplicialModule> {
    let (lo, _) = c.window();
    if lo < 0 && c.weights().iter().any(|&w| (lo..0).any(|d| c.rank(d, w) > 0)) {
        return Err(Error::InvalidInput("Kan transform needs a complex in degrees >= 0".into()));
    }
    let ring = c.ring();
    let mut slices = BTreeMap::new();
    for w in c.weights() {
        let rank = |p: usize| c.rank(p as i64, w);
        let diff = |p: usize| c.differential(p as i64, w);
        slices.insert(w, kan_slice(ring, top, &rank, &diff)?);
    }
    SimplicialModule::new_unchecked(ring, top, slices)
}

pub(crate) fn kan_slice(
    ring: ModRing,
    top: usize,
    rank: &dyn Fn(usize) -> usize,
    diff: &dyn Fn(usize) -> ModMatrix,
) -> Result<SimplicialSlice> {
    let layouts: Vec<KanLayout> = (0..=top).map(|n| KanLayout::new(n, rank)).collect();
    let mut faces = vec![Vec::new()];
    for n in 1..=top {
        let fs = (0..=n)
            .map(|i| kan_action(ring, &MonotoneMap::coface(n, i), &layouts[n], &layouts[n - 1], rank, diff))
            .collect::<Result<Vec<_>>>()?;
        faces.push(fs);
    }
    let mut degens = Vec::new();
    for n in 0..top {
        let ss = (0..=n)
            .map(|i| kan_action(ring, &MonotoneMap::codegeneracy(n, i), &layouts[n], &layouts[n + 1], rank, diff))
            .collect::<Result<Vec<_>>>()?;
        degens.push(ss);
    }
    Ok(SimplicialSlice { ranks: layouts.iter().map(|l| l.rank).collect(), faces, degens })
}

/// The comparison `K(N X) -> X` in degree `n` on one slice: the summand of `η`
/// maps through `η^*` restricted to `N_p`.
pub fn kan_counit(x: &SimplicialModule, bases: &[(ModMatrix, Vec<usize>)], n: usize, w: u32) -> Result<ModMatrix> {
    let ring = x.ring();
    let rank = |p: usize| bases[p].0.rows();
    let layout = KanLayout::new(n, &rank);
    let mut out = ModMatrix::zeros(ring, x.rank(n, w), layout.rank);
    for (eta, off) in &layout.summands {
        let p = eta.target_dim();
        if rank(p) == 0 {
            continue;
        }
        let act = x.act(eta, w)?;
        let block = act.mul(&bases[p].0.transpose())?;
        out.set_block(0, *off, &block);
    }
    Ok(out)
}
