use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::presentation::{AlgebraPresentation, Shape, TargetRing};
use super::resolution::{resolve, AcyclicityCertificate, FreeSimplicialResolution, ResolutionKind};
use crate::complexes::{compare_homology, homology_report, GradedSliceComplex, HomologyReport, Slice};
use crate::error::{Error, Result};
use crate::exactlin::{module_invariants, quotient_exponents, ModMatrix, ModuleInvariants, ModulePresentation};
use crate::polyalg::{apply_map, pullback_form, wedge_masks, AlgebraMap, DifferentialForm, FormKey, Monomial, Poly};
use crate::simplex::{unnormalized_complex, SimplicialModule, SimplicialSlice};

/// A basis element `b · dx_mask` of `T ⊗_{Q_n} Ω^i_{Q_n/A}`.
pub type FormBasisKey = (u64, Monomial);

/// `T ⊗_{Q_n} Ω^i_{Q_n/A}` as a simplicial module over the coefficients, for a
/// resolution `Q_•` and compatible maps `Q_n -> T`.
pub(crate) struct FormsOver<'a> {
    res: &'a FreeSimplicialResolution,
    target: &'a TargetRing,
    aug: Vec<AlgebraMap>,
    degree: u32,
}

impl<'a> FormsOver<'a> {
    pub(crate) fn new(res: &'a FreeSimplicialResolution, target: &'a TargetRing, aug: Vec<AlgebraMap>, degree: u32) -> Result<Self> {
        if res.is_graded() != target.is_graded() {
            return Err(Error::Unsupported("resolution and coefficient ring must both be graded or both ungraded".into()));
        }
        if aug.len() != res.depth() + 1 {
            return Err(Error::Dimension(format!("{} augmentations for depth {}", aug.len(), res.depth())));
        }
        Ok(FormsOver { res, target, aug, degree })
    }

    /// Over the resolution's own augmentation to `B`.
    pub(crate) fn over_b(res: &'a FreeSimplicialResolution, degree: u32) -> Result<Self> {
        let aug = (0..=res.depth()).map(|n| res.augmentation(n)).collect();
        FormsOver::new(res, res.target(), aug, degree)
    }

    pub(crate) fn weights(&self) -> Vec<u32> {
        self.res.slice_weights()
    }

    fn nvars(&self, n: usize) -> usize {
        self.res.algebra(n).nvars()
    }

    fn mask_weight(&self, n: usize, mask: u64) -> Option<u32> {
        if !self.res.is_graded() {
            return Some(0);
        }
        let w = self.res.algebra(n).weights();
        Some((0..w.len()).filter(|&j| mask >> j & 1 == 1).map(|j| w[j]).sum())
    }

    /// Basis in weight `w`, ordered by wedge mask then by `T`-monomial.
    pub(crate) fn basis(&self, n: usize, w: u32) -> Vec<FormBasisKey> {
        let mut out = Vec::new();
        for mask in wedge_masks(self.nvars(n), self.degree, self.res.frozen()) {
            let mw = self.mask_weight(n, mask).unwrap_or(u32::MAX);
            if mw > w {
                continue;
            }
            out.extend(self.target.basis(w - mw).into_iter().map(|b| (mask, b)));
        }
        out
    }

    /// Basis elements outside the degenerate part: for substitution resolutions
    /// these are the forms whose wedge contains every `dx_1, ..., dx_n`.
    pub(crate) fn nondegenerate(&self, n: usize, w: u32) -> Vec<FormBasisKey> {
        match self.res.kind() {
            ResolutionKind::Constant if n > 0 => Vec::new(),
            ResolutionKind::Constant => self.basis(0, w),
            ResolutionKind::Substitution { .. } => {
                let all: u64 = ((1u64 << n) - 1) << 1;
                self.basis(n, w).into_iter().filter(|(m, _)| m & all == all).collect()
            }
        }
    }

    /// Image of `b · dx_mask` under `φ: Q_src -> Q'_tgt`, with coefficients pushed to `T`.
    pub(crate) fn push(
        &self,
        phi: &AlgebraMap,
        tgt_frozen: u64,
        tgt_aug: &AlgebraMap,
        key: &FormBasisKey,
    ) -> Result<BTreeMap<u64, Poly>> {
        let ring = self.res.ring();
        let src_nv = phi.source().nvars();
        let form = DifferentialForm::basis(ring, FormKey { wedge: key.0, mono: Monomial::one(src_nv) }, 1);
        let pulled = pullback_form(phi, &form, tgt_frozen)?;
        let b = Poly::monomial(ring, key.1.clone(), 1);
        let mut out: BTreeMap<u64, Poly> = BTreeMap::new();
        for (k, &c) in pulled.terms() {
            let coeff = apply_map(tgt_aug, &Poly::monomial(ring, k.mono.clone(), c))?;
            let t = self.target.reduce(&coeff.mul(&b));
            if t.is_zero() {
                continue;
            }
            let e = out.entry(k.wedge).or_insert_with(|| Poly::zero(ring, t.nvars()));
            *e = self.target.reduce(&e.add(&t));
        }
        out.retain(|_, p| !p.is_zero());
        Ok(out)
    }

    /// Matrix of a pushed map between bases; terms outside `tgt_basis` are dropped
    /// when `project` is set and are an error otherwise.
    pub(crate) fn matrix(
        &self,
        images: &[BTreeMap<u64, Poly>],
        tgt_basis: &[FormBasisKey],
        project: bool,
    ) -> Result<ModMatrix> {
        let ring = self.res.ring();
        let index: HashMap<&FormBasisKey, usize> = tgt_basis.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut m = ModMatrix::zeros(ring, tgt_basis.len(), images.len());
        for (j, img) in images.iter().enumerate() {
            for (&mask, poly) in img {
                for (mono, &c) in poly.terms() {
                    match index.get(&(mask, mono.clone())) {
                        Some(&i) => m.set(i, j, ring.add(m.get(i, j), c)),
                        None if project => {}
                        None => return Err(Error::Internal("form leaves its weight slice".into())),
                    }
                }
            }
        }
        Ok(m)
    }

    fn self_matrix(&self, phi: &AlgebraMap, src_n: usize, tgt_n: usize, w: u32) -> Result<ModMatrix> {
        let images = self
            .basis(src_n, w)
            .iter()
            .map(|k| self.push(phi, self.res.frozen(), &self.aug[tgt_n], k))
            .collect::<Result<Vec<_>>>()?;
        self.matrix(&images, &self.basis(tgt_n, w), false)
    }

    /// The full simplicial module on degrees `0..=depth`.
    pub(crate) fn simplicial(&self) -> Result<SimplicialModule> {
        let depth = self.res.depth();
        let mut slices = BTreeMap::new();
        for w in self.weights() {
            let ranks = (0..=depth).map(|n| self.basis(n, w).len()).collect();
            let mut faces = vec![Vec::new()];
            for n in 1..=depth {
                faces.push((0..=n).map(|i| self.self_matrix(&self.res.face(n, i), n, n - 1, w)).collect::<Result<Vec<_>>>()?);
            }
            let mut degens = Vec::new();
            for n in 0..depth {
                degens.push((0..=n).map(|i| self.self_matrix(&self.res.degeneracy(n, i), n, n + 1, w)).collect::<Result<Vec<_>>>()?);
            }
            slices.insert(w, SimplicialSlice { ranks, faces, degens });
        }
        SimplicialModule::new(self.res.ring(), depth, slices)
    }

    /// Normalized complex as the quotient by the degenerate subcomplex, which is
    /// spanned by basis forms.
    pub(crate) fn normalized(&self) -> Result<GradedSliceComplex> {
        let depth = self.res.depth();
        let ring = self.res.ring();
        let mut slices = BTreeMap::new();
        for w in self.weights() {
            let bases: Vec<Vec<FormBasisKey>> = (0..=depth).map(|n| self.nondegenerate(n, w)).collect();
            let mut diffs = Vec::new();
            for n in 1..=depth {
                let mut images = Vec::new();
                for k in &bases[n] {
                    let mut acc: BTreeMap<u64, Poly> = BTreeMap::new();
                    for i in 0..=n {
                        for (mask, p) in self.push(&self.res.face(n, i), self.res.frozen(), &self.aug[n - 1], k)? {
                            let p = if i % 2 == 1 { p.neg() } else { p };
                            let e = acc.entry(mask).or_insert_with(|| Poly::zero(ring, p.nvars()));
                            *e = self.target.reduce(&e.add(&p));
                        }
                    }
                    images.push(acc);
                }
                diffs.push(self.matrix(&images, &bases[n - 1], true)?);
            }
            let ranks = bases.iter().map(|b| b.len()).collect();
            slices.insert(w, Slice::new(ring, ranks, diffs)?);
        }
        GradedSliceComplex::new(ring, 0, depth as i64, slices)
    }

    /// Normalized differential `d_n` as a matrix with entries in `T` (rows: wedge
    /// masks at `n - 1`, columns: masks at `n`), independent of weight.
    pub(crate) fn normalized_t_matrix(&self, n: usize) -> Result<(Vec<u64>, Vec<u64>, Vec<Vec<Poly>>)> {
        let ring = self.res.ring();
        let masks = |n: usize| -> Vec<u64> {
            let all: u64 = if matches!(self.res.kind(), ResolutionKind::Constant) { 0 } else { ((1u64 << n) - 1) << 1 };
            if matches!(self.res.kind(), ResolutionKind::Constant) && n > 0 {
                return Vec::new();
            }
            wedge_masks(self.nvars(n), self.degree, self.res.frozen()).into_iter().filter(|m| m & all == all).collect()
        };
        let (rows, cols) = (masks(n - 1), masks(n));
        let nt = self.target.ambient().nvars();
        let mut m = vec![vec![Poly::zero(ring, nt); cols.len()]; rows.len()];
        for (j, &mask) in cols.iter().enumerate() {
            for i in 0..=n {
                let key = (mask, Monomial::one(nt));
                for (tm, p) in self.push(&self.res.face(n, i), self.res.frozen(), &self.aug[n - 1], &key)? {
                    if let Some(r) = rows.iter().position(|&x| x == tm) {
                        let p = if i % 2 == 1 { p.neg() } else { p };
                        m[r][j] = self.target.reduce(&m[r][j].add(&p));
                    }
                }
            }
        }
        Ok((rows, cols, m))
    }
}

/// `B ⊗_{Q_n} Ω^i_{Q_n/A}` as a simplicial module.
pub fn forms_over_b(res: &FreeSimplicialResolution, degree: u32) -> Result<SimplicialModule> {
    FormsOver::over_b(res, degree)?.simplicial()
}

/// `L_{B/A}` computed from a resolution, with its homology on `0..=window_top`.
#[derive(Clone, Debug, Serialize)]
pub struct CotangentResult {
    /// `C(B ⊗_{Q_•} Ω¹)` on `0..=depth`, truncated at the top.
    #[serde(skip)]
    pub complex: GradedSliceComplex,
    /// Quotient of `complex` by its degenerate part.
    #[serde(skip)]
    pub normalized: GradedSliceComplex,
    pub homology: HomologyReport,
    pub window: (i64, i64),
    pub certificate: AcyclicityCertificate,
}

impl CotangentResult {
    pub fn invariants(&self, degree: i64, w: u32) -> ModuleInvariants {
        self.homology.invariants(degree, w)
    }
}

/// `L_{B/A}` in homological degrees `0..=window_top` and weights up to `weight_bound`.
pub fn cotangent_homology(pres: &AlgebraPresentation, window_top: usize, weight_bound: u32) -> Result<CotangentResult> {
    let res = resolve(pres, window_top + 2, weight_bound)?;
    cotangent_from_resolution(&res, window_top)
}

/// As [`cotangent_homology`] for a given certified resolution.
pub fn cotangent_from_resolution(res: &FreeSimplicialResolution, window_top: usize) -> Result<CotangentResult> {
    if res.depth() < window_top + 2 {
        return Err(Error::InsufficientDepth { needed: window_top + 2, available: res.depth() });
    }
    let forms = FormsOver::over_b(res, 1)?;
    let complex = unnormalized_complex(&forms.simplicial()?)?;
    let normalized = forms.normalized()?;
    let top = window_top as i64;
    let cmp = compare_homology(&normalized, &complex, 0, top)?;
    if !cmp.all_equal {
        return Err(Error::Internal("normalized and unnormalized cotangent complexes disagree".into()));
    }
    let mut homology = homology_report(&complex);
    homology.entries.retain(|e| e.degree <= top);
    homology.window = (0, top);
    homology.trusted = (0, top);
    let kaehler = kaehler_invariants(res.presentation(), res.weight_bound())?;
    for w in res.slice_weights() {
        let k = kaehler.get(&w).cloned().unwrap_or_else(|| ModuleInvariants::zero(res.ring().p()));
        if homology.invariants(0, w) != k {
            return Err(Error::Internal(format!("H_0 differs from the Kähler differentials in weight {w}")));
        }
    }
    Ok(CotangentResult { complex, normalized, homology, window: (0, top), certificate: res.certificate().clone() })
}

/// Variables of the ambient ring of `B` that carry differentials over `A`.
fn live_vars(pres: &AlgebraPresentation) -> Vec<usize> {
    let nv = pres.target().map(|t| t.ambient().nvars()).unwrap_or(0);
    match pres.shape() {
        Shape::Free { .. } => vec![nv - 1],
        Shape::Quotient { .. } => Vec::new(),
        Shape::Monogenic { .. } => vec![0],
    }
}

/// `Ω¹_{B/A}` per weight: generators `b · dv`, relations `b · dg`.
pub fn kaehler_presentation(pres: &AlgebraPresentation, weight_bound: u32) -> Result<BTreeMap<u32, ModulePresentation>> {
    let t = pres.target()?;
    let ring = pres.ring();
    let amb = t.ambient();
    let weights: Vec<u32> = if t.is_graded() { (0..=weight_bound).collect() } else { vec![0] };
    let vw = |v: usize| if t.is_graded() { amb.weight(v) } else { 0 };
    let live = live_vars(pres);
    let mut out = BTreeMap::new();
    for w in weights {
        let gens: Vec<(usize, Monomial)> = live
            .iter()
            .filter(|&&v| vw(v) <= w)
            .flat_map(|&v| t.basis(w - vw(v)).into_iter().map(move |b| (v, b)))
            .collect();
        let mut rels = Vec::new();
        if let Some(g) = pres.relation() {
            let gw = if t.is_graded() { g.homogeneous_weight(&amb.weights()).unwrap_or(0) } else { 0 };
            if gw <= w {
                for b in t.basis(w - gw) {
                    let bp = Poly::monomial(ring, b, 1);
                    let mut row = vec![0u64; gens.len()];
                    for &v in &live {
                        let c = t.reduce(&g.derivative(v).mul(&bp));
                        for (m, &x) in c.terms() {
                            if let Some(i) = gens.iter().position(|(u, gb)| *u == v && gb == m) {
                                row[i] = ring.add(row[i], x);
                            }
                        }
                    }
                    rels.push(row);
                }
            }
        }
        let rel = if rels.is_empty() { ModMatrix::zeros(ring, 0, gens.len()) } else { ModMatrix::from_data(ring, rels.len(), gens.len(), rels.concat()) };
        out.insert(w, ModulePresentation::new(gens.len(), rel)?);
    }
    Ok(out)
}

pub fn kaehler_invariants(pres: &AlgebraPresentation, weight_bound: u32) -> Result<BTreeMap<u32, ModuleInvariants>> {
    Ok(kaehler_presentation(pres, weight_bound)?.iter().map(|(&w, p)| (w, module_invariants(p))).collect())
}

/// The conormal module `I/I²` for `I = (f)` in the ambient polynomial ring, from
/// spans of `f·P` and `f²·P` inside slices of `P` (weight slices when graded,
/// the degree window `< 3 deg f` at weight 0 otherwise).
pub fn conormal_module(pres: &AlgebraPresentation, weight_bound: u32) -> Result<BTreeMap<u32, ModuleInvariants>> {
    let ring = pres.ring();
    let t = pres.target()?;
    let Some(f) = pres.relation() else {
        return Ok(t_weights(&t, weight_bound).into_iter().map(|w| (w, ModuleInvariants::zero(ring.p()))).collect());
    };
    let f2 = f.mul(f);
    let d = f.degree_in(0);
    let span = |g: &Poly, src: &[u32], dim: usize| -> ModMatrix {
        // Columns g·y^e for e in src, in coordinates y^0..y^{dim-1}.
        let mut m = ModMatrix::zeros(ring, dim, src.len());
        for (j, &e) in src.iter().enumerate() {
            for (mono, &c) in g.terms() {
                let k = (mono.0[0] + e) as usize;
                if k < dim {
                    m.set(k, j, c);
                }
            }
        }
        m
    };
    let mut out = BTreeMap::new();
    if t.is_graded() {
        // Monomial relation in one ambient variable of weight `a`.
        let a = t.ambient().weight(0);
        for w in 0..=weight_bound {
            if w % a != 0 {
                out.insert(w, ModuleInvariants::zero(ring.p()));
                continue;
            }
            let e = w / a;
            let dim = e as usize + 1;
            let z: Vec<u32> = if e >= d { vec![e - d] } else { Vec::new() };
            let b: Vec<u32> = if e >= 2 * d { vec![e - 2 * d] } else { Vec::new() };
            let ex = quotient_exponents(ring, dim, &span(f, &z, dim), &span(&f2, &b, dim));
            out.insert(w, ModuleInvariants::from_exponents(ring.p(), ex));
        }
    } else {
        let dim = 3 * d as usize;
        let z: Vec<u32> = (0..2 * d).collect();
        let b: Vec<u32> = (0..d).collect();
        let ex = quotient_exponents(ring, dim, &span(f, &z, dim), &span(&f2, &b, dim));
        out.insert(0, ModuleInvariants::from_exponents(ring.p(), ex));
    }
    Ok(out)
}

fn t_weights(t: &TargetRing, weight_bound: u32) -> Vec<u32> {
    if t.is_graded() {
        (0..=weight_bound).collect()
    } else {
        vec![0]
    }
}

/// Shortcut for `B = A/(f)` relative to `A`: `H_1 = I/I²`, every other homology zero.
pub fn quotient_shortcut(pres: &AlgebraPresentation, weight_bound: u32) -> Result<BTreeMap<u32, ModuleInvariants>> {
    if !matches!(pres.shape(), Shape::Quotient { .. }) {
        return Err(Error::Unsupported("the I/I² shortcut applies to quotients A/(f) over A".into()));
    }
    conormal_module(pres, weight_bound)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ModRing;
    use crate::polyalg::{parse_poly, PolyAlgebra, Variable};

    fn quotient(p: u64, n: u32, f: &str) -> AlgebraPresentation {
        let ring = ModRing::new(p, n).unwrap();
        let base = PolyAlgebra::new(ring, vec![Variable::new("x", 1)], None).unwrap();
        let f = parse_poly(&base, f).unwrap();
        AlgebraPresentation::quotient(base, f).unwrap()
    }

    fn monogenic(p: u64, g: &str) -> AlgebraPresentation {
        let ring = ModRing::new(p, 1).unwrap();
        let amb = PolyAlgebra::new(ring, vec![Variable::new("z", 1)], None).unwrap();
        AlgebraPresentation::monogenic(ring, "z", 1, parse_poly(&amb, g).unwrap()).unwrap()
    }

    #[test]
    fn residue_field_of_a_line() {
        let r = cotangent_homology(&quotient(3, 1, "x"), 2, 3).unwrap();
        assert!(r.invariants(0, 1).is_zero());
        assert_eq!(r.invariants(1, 1).factors(), vec![3]);
        assert!(r.homology.entries.iter().filter(|e| e.degree != 1).all(|e| e.invariants.is_zero()));
    }

    #[test]
    fn polynomial_algebra_is_acyclic() {
        let ring = ModRing::new(2, 2).unwrap();
        let base = PolyAlgebra::new(ring, vec![Variable::new("y", 1)], None).unwrap();
        let r = cotangent_homology(&AlgebraPresentation::free(base, "x").unwrap(), 2, 3).unwrap();
        assert_eq!(r.invariants(0, 1).factors(), vec![4]);
        assert_eq!(r.invariants(0, 3).factors(), vec![4, 4, 4]);
        assert!(r.homology.concentrated_in(0));
    }

    #[test]
    fn finite_field_extension_is_etale() {
        let r = cotangent_homology(&monogenic(2, "z^2 + z + 1"), 2, 2).unwrap();
        assert!(r.homology.entries.iter().all(|e| e.invariants.is_zero()));
        assert!(kaehler_invariants(&monogenic(2, "z^2 + z + 1"), 0).unwrap()[&0].is_zero());
    }

    #[test]
    fn kaehler_of_truncated_line_in_characteristic_three() {
        let k = kaehler_invariants(&monogenic(3, "z^3"), 4).unwrap();
        assert_eq!(k[&1].factors(), vec![3]);
        assert_eq!(k[&2].factors(), vec![3]);
        assert_eq!(k[&3].factors(), vec![3]);
        assert!(k[&4].is_zero());
    }

    #[test]
    fn shortcut_matches_resolution() {
        for (p, n, f) in [(3, 1, "x"), (2, 1, "x^2"), (2, 2, "x"), (2, 2, "x^2 + 2x")] {
            let pres = quotient(p, n, f);
            let r = cotangent_homology(&pres, 2, 4).unwrap();
            let s = quotient_shortcut(&pres, 4).unwrap();
            for (w, inv) in s {
                assert_eq!(r.invariants(1, w), inv, "{f} weight {w}");
                assert!(r.invariants(0, w).is_zero() && r.invariants(2, w).is_zero());
            }
        }
    }

    #[test]
    fn depth_is_checked() {
        let res = resolve(&quotient(3, 1, "x"), 2, 2).unwrap();
        assert_eq!(
            cotangent_from_resolution(&res, 1).unwrap_err(),
            Error::InsufficientDepth { needed: 3, available: 2 }
        );
    }

    #[test]
    fn normalized_matrix_is_the_derivative() {
        let pres = monogenic(3, "z^3 + 2z");
        let res = resolve(&pres, 3, 0).unwrap();
        let forms = FormsOver::over_b(&res, 1).unwrap();
        let (rows, cols, m) = forms.normalized_t_matrix(1).unwrap();
        assert_eq!((rows, cols), (vec![1], vec![2]));
        // g' = 3z^2 + 2 = 2 in characteristic 3.
        assert_eq!(m[0][0], Poly::constant(res.ring(), 1, 2));
    }
}
