use std::collections::BTreeMap;

use super::algebra::PolyAlgebra;
use super::poly::{Monomial, Poly};
use crate::error::{Error, Result};
use crate::exactlin::ModRing;

/// A basis form `m · dx_{j_1} ∧ ... ∧ dx_{j_i}`; the wedge indices are the set bits of `wedge`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct FormKey {
    pub wedge: u64,
    pub mono: Monomial,
}

impl FormKey {
    pub fn degree(&self) -> u32 {
        self.wedge.count_ones()
    }

    pub fn weight(&self, weights: &[u32]) -> u32 {
        self.mono.weight(weights) + wedge_weight(self.wedge, weights)
    }
}

pub(crate) fn wedge_weight(mask: u64, weights: &[u32]) -> u32 {
    (0..weights.len()).filter(|&j| mask >> j & 1 == 1).map(|j| weights[j]).sum()
}

/// Sign of `dx_A ∧ dx_B` against the sorted wedge `dx_{A ∪ B}`; zero if they overlap.
pub fn wedge_sign(a: u64, b: u64) -> i32 {
    if a & b != 0 {
        return 0;
    }
    // Count pairs (i in a, j in b) with i > j.
    let mut inversions = 0u32;
    let mut rest = b;
    while rest != 0 {
        let j = rest.trailing_zeros();
        rest &= rest - 1;
        inversions += (a >> (j + 1)).count_ones();
    }
    if inversions.is_multiple_of(2) {
        1
    } else {
        -1
    }
}

/// Homogeneous differential form of a fixed degree over `Z/p^n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct DifferentialForm {
    ring: ModRing,
    nvars: usize,
    degree: u32,
    terms: BTreeMap<FormKey, u64>,
}

impl DifferentialForm {
    pub fn zero(ring: ModRing, nvars: usize, degree: u32) -> Self {
        DifferentialForm { ring, nvars, degree, terms: BTreeMap::new() }
    }

    pub fn from_poly(p: &Poly) -> Self {
        let mut f = DifferentialForm::zero(p.ring(), p.nvars(), 0);
        for (m, &c) in p.terms() {
            f.add_term(FormKey { wedge: 0, mono: m.clone() }, c);
        }
        f
    }

    /// `c · m · dx_J`.
    pub fn basis(ring: ModRing, key: FormKey, c: u64) -> Self {
        let mut f = DifferentialForm::zero(ring, key.mono.0.len(), key.degree());
        f.add_term(key, c);
        f
    }

    /// `dx_i`.
    pub fn dvar(ring: ModRing, nvars: usize, i: usize) -> Self {
        DifferentialForm::basis(ring, FormKey { wedge: 1 << i, mono: Monomial::one(nvars) }, 1)
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn degree(&self) -> u32 {
        self.degree
    }

    pub fn terms(&self) -> &BTreeMap<FormKey, u64> {
        &self.terms
    }

    pub fn coeff(&self, key: &FormKey) -> u64 {
        self.terms.get(key).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn add_term(&mut self, key: FormKey, c: u64) {
        debug_assert_eq!(key.degree(), self.degree);
        let c = self.ring.reduce_u64(c);
        if c == 0 {
            return;
        }
        let ring = self.ring;
        match self.terms.entry(key) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                let s = ring.add(*o.get(), c);
                if s == 0 {
                    o.remove();
                } else {
                    *o.get_mut() = s;
                }
            }
        }
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check_parent(other)?;
        if self.degree != other.degree && !self.is_zero() && !other.is_zero() {
            return Err(Error::InvalidInput("adding forms of different degrees".into()));
        }
        let mut out = if self.is_zero() { other.clone() } else { self.clone() };
        let rest = if self.is_zero() { &DifferentialForm::zero(self.ring, self.nvars, 0) } else { other };
        for (k, &c) in &rest.terms {
            out.add_term(k.clone(), c);
        }
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let mut out = DifferentialForm::zero(self.ring, self.nvars, self.degree);
        for (k, &a) in &self.terms {
            out.add_term(k.clone(), self.ring.mul(a, c));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.ring.neg(1))
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul_poly(&self, p: &Poly) -> Self {
        let mut out = DifferentialForm::zero(self.ring, self.nvars, self.degree);
        for (k, &a) in &self.terms {
            for (m, &b) in p.terms() {
                out.add_term(FormKey { wedge: k.wedge, mono: k.mono.mul(m) }, self.ring.mul(a, b));
            }
        }
        out
    }

    fn check_parent(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring || self.nvars != other.nvars {
            return Err(Error::RingMismatch("forms over different algebras".into()));
        }
        Ok(())
    }

    /// Weight if homogeneous.
    pub fn homogeneous_weight(&self, weights: &[u32]) -> Option<u32> {
        let mut it = self.terms.keys().map(|k| k.weight(weights));
        let w = it.next()?;
        it.all(|v| v == w).then_some(w)
    }
}

/// `ω ∧ η`, normalized to increasing wedge indices.
pub fn wedge(a: &DifferentialForm, b: &DifferentialForm) -> Result<DifferentialForm> {
    a.check_parent(b)?;
    let ring = a.ring;
    let mut out = DifferentialForm::zero(ring, a.nvars, a.degree + b.degree);
    for (ka, &ca) in &a.terms {
        for (kb, &cb) in &b.terms {
            let s = wedge_sign(ka.wedge, kb.wedge);
            if s == 0 {
                continue;
            }
            let c = ring.mul(ca, cb);
            let c = if s < 0 { ring.neg(c) } else { c };
            out.add_term(FormKey { wedge: ka.wedge | kb.wedge, mono: ka.mono.mul(&kb.mono) }, c);
        }
    }
    Ok(out)
}

/// de Rham differential over the coefficient ring.
pub fn derham_d(w: &DifferentialForm) -> DifferentialForm {
    derham_d_relative(w, 0)
}

/// de Rham differential relative to the variables in `frozen` (their `d` vanishes).
pub fn derham_d_relative(w: &DifferentialForm, frozen: u64) -> DifferentialForm {
    let ring = w.ring;
    let mut out = DifferentialForm::zero(ring, w.nvars, w.degree + 1);
    for (k, &c) in &w.terms {
        for j in 0..w.nvars {
            let e = k.mono.0[j];
            if e == 0 || frozen >> j & 1 == 1 {
                continue;
            }
            // d(m) ∧ ω-part: dx_j comes first.
            let s = wedge_sign(1 << j, k.wedge);
            if s == 0 {
                continue;
            }
            let mut m = k.mono.clone();
            m.0[j] -= 1;
            let coef = ring.mul(c, ring.reduce_u64(e as u64));
            let coef = if s < 0 { ring.neg(coef) } else { coef };
            out.add_term(FormKey { wedge: k.wedge | 1 << j, mono: m }, coef);
        }
    }
    out
}

/// `d p` for a polynomial.
pub fn poly_differential(p: &Poly, frozen: u64) -> DifferentialForm {
    derham_d_relative(&DifferentialForm::from_poly(p), frozen)
}

/// Ordered basis of weight-`w` forms of degree `i`: wedge sets ascending, then
/// monomials from largest to smallest in graded-lex order.
pub fn graded_slice_basis(alg: &PolyAlgebra, i: u32, w: u32) -> Result<Vec<FormKey>> {
    graded_slice_basis_masked(alg, i, w, 0)
}

/// As [`graded_slice_basis`], with `dx_j` excluded for `j` in `frozen`.
pub fn graded_slice_basis_masked(alg: &PolyAlgebra, i: u32, w: u32, frozen: u64) -> Result<Vec<FormKey>> {
    let weights = alg.weights();
    if weights.contains(&0) {
        return Err(Error::InvalidInput("weight-0 variable makes slices infinite".into()));
    }
    let nv = alg.nvars();
    let mut out = Vec::new();
    for mask in wedge_masks(nv, i, frozen) {
        let ww = wedge_weight(mask, &weights);
        if ww > w {
            continue;
        }
        let mut monos = monomials_of_weight(&weights, w - ww);
        monos.sort();
        monos.reverse();
        out.extend(monos.into_iter().map(|mono| FormKey { wedge: mask, mono }));
    }
    Ok(out)
}

/// All subsets of `{0..nv}` of size `i` avoiding `frozen`, ascending as integers.
pub fn wedge_masks(nv: usize, i: u32, frozen: u64) -> Vec<u64> {
    let mut out = Vec::new();
    fn rec(start: usize, nv: usize, left: u32, acc: u64, frozen: u64, out: &mut Vec<u64>) {
        if left == 0 {
            out.push(acc);
            return;
        }
        for j in start..nv {
            if frozen >> j & 1 == 0 {
                rec(j + 1, nv, left - 1, acc | 1 << j, frozen, out);
            }
        }
    }
    rec(0, nv, i, 0, frozen, &mut out);
    out.sort_unstable();
    out
}

/// Monomials of exact weight `w`.
pub fn monomials_of_weight(weights: &[u32], w: u32) -> Vec<Monomial> {
    let mut out = Vec::new();
    let mut cur = vec![0u32; weights.len()];
    fn rec(k: usize, left: u32, weights: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Monomial>) {
        if k == weights.len() {
            if left == 0 {
                out.push(Monomial(cur.clone()));
            }
            return;
        }
        let wk = weights[k];
        for e in 0..=left / wk {
            cur[k] = e;
            rec(k + 1, left - e * wk, weights, cur, out);
        }
        cur[k] = 0;
    }
    rec(0, w, weights, &mut cur, &mut out);
    out
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::Variable;

    fn alg_xy(r: ModRing) -> PolyAlgebra {
        PolyAlgebra::new(r, vec![Variable::new("x", 1), Variable::new("y", 1)], None).unwrap()
    }

    #[test]
    fn differential_spot_values() {
        let r = ModRing::new(3, 2).unwrap();
        let x = Poly::var(r, 2, 0);
        let y = Poly::var(r, 2, 1);
        // d(x^2 y) = 2xy dx + x^2 dy
        let d = poly_differential(&x.mul(&x).mul(&y), 0);
        assert_eq!(d.coeff(&FormKey { wedge: 1, mono: Monomial(vec![1, 1]) }), 2);
        assert_eq!(d.coeff(&FormKey { wedge: 2, mono: Monomial(vec![2, 0]) }), 1);
        // d(dx) = 0
        assert!(derham_d(&DifferentialForm::dvar(r, 2, 0)).is_zero());
        // d(x dy) = dx ∧ dy
        let xdy = DifferentialForm::dvar(r, 2, 1).mul_poly(&x);
        let dd = derham_d(&xdy);
        assert_eq!(dd.terms().len(), 1);
        assert_eq!(dd.coeff(&FormKey { wedge: 3, mono: Monomial::one(2) }), 1);
    }

    #[test]
    fn wedge_antisymmetry() {
        let r = ModRing::new(5, 1).unwrap();
        let dx = DifferentialForm::dvar(r, 2, 0);
        let dy = DifferentialForm::dvar(r, 2, 1);
        let a = wedge(&dx, &dy).unwrap();
        let b = wedge(&dy, &dx).unwrap();
        assert_eq!(a, b.neg());
        assert!(wedge(&dx, &dx).unwrap().is_zero());
        let x = Poly::var(r, 2, 0);
        let y = Poly::var(r, 2, 1);
        let p = wedge(&dx.mul_poly(&x), &dy.mul_poly(&y)).unwrap();
        assert_eq!(p, a.mul_poly(&x.mul(&y)));
    }

    #[test]
    fn slice_basis_examples() {
        let r = ModRing::new(2, 1).unwrap();
        let a = PolyAlgebra::new(r, vec![Variable::new("x", 1)], None).unwrap();
        let b = graded_slice_basis(&a, 0, 2).unwrap();
        assert_eq!(b, vec![FormKey { wedge: 0, mono: Monomial(vec![2]) }]);
        let q1 = PolyAlgebra::relative(r, "x", 1, 1, 1).unwrap();
        let b = graded_slice_basis(&q1, 1, 2).unwrap();
        let shown: Vec<(u64, Vec<u32>)> = b.into_iter().map(|k| (k.wedge, k.mono.0)).collect();
        assert_eq!(shown, vec![(1, vec![1, 0]), (1, vec![0, 1]), (2, vec![1, 0]), (2, vec![0, 1])]);
        assert!(graded_slice_basis(&alg_xy(r), 1, 0).unwrap().is_empty());
    }
}
