use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use crate::complexes::{homology_report, GradedSliceComplex, HomologyReport, Slice};
use crate::cotangent::{resolve, AlgebraPresentation, FreeSimplicialResolution, ResolutionKind, Shape};
use crate::error::{Error, Result};
use crate::exactlin::{ModMatrix, ModRing};
use crate::polyalg::{derham_d_relative, monomials_of_weight, pullback_form, wedge, DifferentialForm, FormKey, Monomial};
use crate::simplex::shuffles;

/// A basis element of `Tot(Ω•_{Q_•/A})`: simplicial degree `n` and a monomial
/// form in `Q_n = k[y, x_1, ..., x_n]` (wedge bit `j` is `dx_j`).
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize)]
pub struct TotKey {
    pub n: usize,
    pub wedge: u64,
    pub mono: Vec<u32>,
}

impl TotKey {
    pub fn form_degree(&self) -> u32 {
        self.wedge.count_ones()
    }

    pub fn total_degree(&self) -> i64 {
        self.n as i64 - self.form_degree() as i64
    }

    fn form_key(&self) -> FormKey {
        FormKey { wedge: self.wedge, mono: Monomial(self.mono.clone()) }
    }

    /// Every `x_1..x_n` occurs in the monomial or the wedge.
    fn nondegenerate(n: usize, k: &FormKey) -> bool {
        (1..=n).all(|j| k.wedge >> j & 1 == 1 || k.mono.0[j] > 0)
    }
}

/// One weight slice: bases per total degree and `D_t: C_t → C_{t-1}`.
#[derive(Clone, Debug)]
pub struct DeRhamSlice {
    pub bases: Vec<Vec<TotKey>>,
    pub diffs: Vec<ModMatrix>,
}

/// `LΩ•_{B/A} / F^m` for `B = A/(f)`, `A = k[y]`, `f` a unit times a power of `y`,
/// as the total complex of the normalized `Ω^{<m}_{Q_•/A}` with
/// `D = Σ(-1)^j ∂_j + (-1)^n d`. Each weight slice is finite and complete.
#[derive(Clone, Debug)]
pub struct FilteredDeRhamComplex {
    res: FreeSimplicialResolution,
    hodge_cut: u32,
    weight_bound: u32,
    top: usize,
    slices: BTreeMap<u32, DeRhamSlice>,
}

pub fn build_derham(pres: &AlgebraPresentation, hodge_cut: u32, window_top: usize, weight_bound: u32) -> Result<FilteredDeRhamComplex> {
    if !matches!(pres.shape(), Shape::Quotient { .. }) {
        return Err(Error::Unsupported("derived de Rham complexes are built for quotients A/(f) only".into()));
    }
    let probe = resolve(pres, 1, weight_bound)?;
    if !probe.is_graded() {
        return Err(Error::Unsupported("f must be homogeneous (a unit times a power of y) for finite weight slices".into()));
    }
    let e = probe.x_weight();
    let top = (weight_bound / e) as usize;
    let res = resolve(pres, top + 1, weight_bound)?;
    let mut c = FilteredDeRhamComplex { res, hodge_cut, weight_bound, top: top.max(window_top), slices: BTreeMap::new() };
    for w in 0..=weight_bound {
        let s = c.build_slice(w)?;
        c.slices.insert(w, s);
    }
    Ok(c)
}

impl FilteredDeRhamComplex {
    pub fn ring(&self) -> ModRing {
        self.res.ring()
    }

    pub fn resolution(&self) -> &FreeSimplicialResolution {
        &self.res
    }

    pub fn hodge_cut(&self) -> u32 {
        self.hodge_cut
    }

    pub fn weight_bound(&self) -> u32 {
        self.weight_bound
    }

    pub fn slice(&self, w: u32) -> Option<&DeRhamSlice> {
        self.slices.get(&w)
    }

    pub fn relation_weight(&self) -> u32 {
        self.res.x_weight()
    }

    fn weights(&self, n: usize) -> Vec<u32> {
        self.res.algebra(n).weights()
    }

    fn keys(&self, w: u32, t: usize) -> Vec<TotKey> {
        let e = self.res.x_weight();
        let mut out = Vec::new();
        for n in t..=self.top {
            let i = n - t;
            if i as u32 >= self.hodge_cut || (n as u32) * e > w {
                continue;
            }
            let weights = self.weights(n);
            for mask in crate::polyalg::wedge_masks(n + 1, i as u32, self.res.frozen()) {
                let mw = i as u32 * e;
                if mw > w {
                    continue;
                }
                let mut monos = monomials_of_weight(&weights, w - mw);
                monos.sort();
                for m in monos {
                    let k = FormKey { wedge: mask, mono: m };
                    if TotKey::nondegenerate(n, &k) {
                        out.push(TotKey { n, wedge: k.wedge, mono: k.mono.0 });
                    }
                }
            }
        }
        out
    }

    /// `D` of one basis element, as a form per simplicial degree.
    fn differential_of(&self, key: &TotKey) -> Result<Vec<(usize, DifferentialForm)>> {
        let ring = self.ring();
        let frozen = self.res.frozen();
        let form = DifferentialForm::basis(ring, key.form_key(), 1);
        let mut out = Vec::new();
        if key.n > 0 {
            let mut acc = DifferentialForm::zero(ring, key.n, key.form_degree());
            for j in 0..=key.n {
                let img = pullback_form(&self.res.face(key.n, j), &form, frozen)?;
                acc = if j % 2 == 0 { acc.add(&img)? } else { acc.sub(&img)? };
            }
            out.push((key.n - 1, acc));
        }
        if key.form_degree() + 1 < self.hodge_cut {
            let d = derham_d_relative(&form, frozen);
            out.push((key.n, if key.n % 2 == 1 { d.neg() } else { d }));
        }
        Ok(out)
    }

    fn build_slice(&self, w: u32) -> Result<DeRhamSlice> {
        let ring = self.ring();
        let bases: Vec<Vec<TotKey>> = (0..=self.top).map(|t| self.keys(w, t)).collect();
        let mut diffs = Vec::new();
        for t in 1..=self.top {
            let index: HashMap<&TotKey, usize> = bases[t - 1].iter().enumerate().map(|(i, k)| (k, i)).collect();
            let mut d = ModMatrix::zeros(ring, bases[t - 1].len(), bases[t].len());
            for (c, key) in bases[t].iter().enumerate() {
                for (n, form) in self.differential_of(key)? {
                    for (fk, &v) in form.terms() {
                        let tk = TotKey { n, wedge: fk.wedge, mono: fk.mono.0.clone() };
                        // Degenerate terms vanish in the normalized quotient.
                        if let Some(&r) = index.get(&tk) {
                            d.add_to(r, c, v);
                        } else if TotKey::nondegenerate(n, fk) && fk.wedge.count_ones() < self.hodge_cut {
                            return Err(Error::Internal(format!("D leaves the weight-{w} slice")));
                        }
                    }
                }
            }
            diffs.push(d);
        }
        Ok(DeRhamSlice { bases, diffs })
    }

    /// Keys of degree `t` whose form degree passes `keep`, and the matching
    /// subquotient complex on all weights.
    fn restricted(&self, keep: impl Fn(u32) -> bool) -> Result<GradedSliceComplex> {
        let ring = self.ring();
        let mut slices = BTreeMap::new();
        for (&w, s) in &self.slices {
            let idx: Vec<Vec<usize>> =
                s.bases.iter().map(|b| (0..b.len()).filter(|&i| keep(b[i].form_degree())).collect()).collect();
            let diffs = s.diffs.iter().enumerate().map(|(k, d)| d.select_rows(&idx[k]).select_cols(&idx[k + 1])).collect();
            slices.insert(w, Slice::new(ring, idx.iter().map(Vec::len).collect(), diffs)?);
        }
        GradedSliceComplex::new(ring, 0, self.top as i64, slices)
    }

    /// Degree-0 keys of `LΩ/F^i` in weight `w` (as indices into the slice basis)
    /// and the boundary matrix `D_1` of `LΩ/F^i` restricted to them.
    pub fn degree_zero(&self, w: u32, i: u32) -> Result<(Vec<usize>, ModMatrix)> {
        let s = self.slice_or_err(w)?;
        let kept = |t: usize| -> Vec<usize> {
            s.bases.get(t).map(|b| (0..b.len()).filter(|&k| b[k].form_degree() < i).collect()).unwrap_or_default()
        };
        let (rows, cols) = (kept(0), kept(1));
        let d = match s.diffs.first() {
            Some(d) => d.select_rows(&rows).select_cols(&cols),
            None => ModMatrix::zeros(self.ring(), rows.len(), 0),
        };
        Ok((rows, d))
    }

    /// The complex itself.
    pub fn complex(&self) -> Result<GradedSliceComplex> {
        self.restricted(|_| true)
    }

    /// `LΩ/F^i` for `i ≤ m`.
    pub fn hodge_quotient(&self, i: u32) -> Result<GradedSliceComplex> {
        if i > self.hodge_cut {
            return Err(Error::InvalidInput(format!("Hodge level {i} above the cut {}", self.hodge_cut)));
        }
        self.restricted(|q| q < i)
    }

    /// `gr^i_F = Ω^i_{Q_•/A}` placed in total degrees `n - i`.
    pub fn graded_piece(&self, i: u32) -> Result<GradedSliceComplex> {
        if i >= self.hodge_cut {
            return Err(Error::InvalidInput(format!("graded piece {i} needs the cut above {i}")));
        }
        self.restricted(|q| q == i)
    }

    /// `Σ sign(μ,ν) σ_ν(ω) ∧ σ_μ(ω')` times `(-1)^{i n'}`, a form on `Q_{n+n'}`.
    pub fn shuffle_forms(&self, a: &TotKey, b: &TotKey) -> Result<DifferentialForm> {
        let ring = self.ring();
        let frozen = self.res.frozen();
        let (n, m) = (a.n, b.n);
        let fa = DifferentialForm::basis(ring, a.form_key(), 1);
        let fb = DifferentialForm::basis(ring, b.form_key(), 1);
        let mut acc = DifferentialForm::zero(ring, n + m + 1, a.form_degree() + b.form_degree());
        for sh in shuffles(n, m) {
            let mut x = fa.clone();
            for (step, &k) in sh.nu.iter().enumerate() {
                x = pullback_form(&self.res.degeneracy(n + step, k), &x, frozen)?;
            }
            let mut y = fb.clone();
            for (step, &k) in sh.mu.iter().enumerate() {
                y = pullback_form(&self.res.degeneracy(m + step, k), &y, frozen)?;
            }
            let term = wedge(&x, &y)?;
            acc = if sh.sign > 0 { acc.add(&term)? } else { acc.sub(&term)? };
        }
        if (a.form_degree() as usize * m) % 2 == 1 {
            acc = acc.neg();
        }
        Ok(acc)
    }

    /// Product of chains `u` (degree `t1`, weight `w1`) and `v` (degree `t2`,
    /// weight `w2`) in degree `t1 + t2`, weight `w1 + w2`, projected to the
    /// normalized quotient and the Hodge cut.
    pub fn product(&self, (t1, w1, u): (usize, u32, &[u64]), (t2, w2, v): (usize, u32, &[u64])) -> Result<Vec<u64>> {
        let ring = self.ring();
        let (sa, sb) = (self.slice_or_err(w1)?, self.slice_or_err(w2)?);
        let sc = self.slice_or_err(w1 + w2)?;
        let t = t1 + t2;
        let tgt = sc.bases.get(t).ok_or_else(|| Error::InvalidInput(format!("degree {t} above the window")))?;
        let index: HashMap<&TotKey, usize> = tgt.iter().enumerate().map(|(i, k)| (k, i)).collect();
        let mut out = vec![0u64; tgt.len()];
        for (i, &cu) in u.iter().enumerate() {
            if cu == 0 {
                continue;
            }
            for (j, &cv) in v.iter().enumerate() {
                if cv == 0 {
                    continue;
                }
                let (ka, kb) = (&sa.bases[t1][i], &sb.bases[t2][j]);
                if ka.form_degree() + kb.form_degree() >= self.hodge_cut {
                    continue;
                }
                let f = self.shuffle_forms(ka, kb)?;
                let c = ring.mul(cu, cv);
                for (fk, &val) in f.terms() {
                    let key = TotKey { n: ka.n + kb.n, wedge: fk.wedge, mono: fk.mono.0.clone() };
                    if let Some(&r) = index.get(&key) {
                        out[r] = ring.add(out[r], ring.mul(c, val));
                    }
                }
            }
        }
        Ok(out)
    }

    fn slice_or_err(&self, w: u32) -> Result<&DeRhamSlice> {
        self.slices.get(&w).ok_or_else(|| Error::InvalidInput(format!("weight {w} above the bound {}", self.weight_bound)))
    }

    /// `D` applied to a chain of degree `t` in weight `w`.
    pub fn apply_d(&self, t: usize, w: u32, u: &[u64]) -> Result<Vec<u64>> {
        let s = self.slice_or_err(w)?;
        if t == 0 {
            return Ok(Vec::new());
        }
        s.diffs[t - 1].mul_vec(u)
    }

    /// `d² = 0` on every slice.
    pub fn check_square_zero(&self) -> Result<()> {
        for (&w, s) in &self.slices {
            for k in 1..s.diffs.len() {
                if !s.diffs[k - 1].mul(&s.diffs[k])?.is_zero() {
                    return Err(Error::NotAComplex(format!("D² ≠ 0 in weight {w}, degree {}", k + 1)));
                }
            }
        }
        Ok(())
    }

    pub fn kind(&self) -> &ResolutionKind {
        self.res.kind()
    }
}

/// Homology of `LΩ/F^i`.
pub fn hodge_quotient_homology(c: &FilteredDeRhamComplex, i: u32) -> Result<HomologyReport> {
    Ok(homology_report(&c.hodge_quotient(i)?))
}

#[derive(Clone, Debug, Serialize)]
pub struct DeRhamSummary {
    pub hodge_cut: u32,
    pub weight_bound: u32,
    pub homology: HomologyReport,
}

pub fn derham_homology(pres: &AlgebraPresentation, hodge_cut: u32, window_top: usize, weight_bound: u32) -> Result<DeRhamSummary> {
    let c = build_derham(pres, hodge_cut, window_top, weight_bound)?;
    Ok(DeRhamSummary { hodge_cut, weight_bound, homology: hodge_quotient_homology(&c, hodge_cut)? })
}
