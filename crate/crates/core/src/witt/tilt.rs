use std::collections::BTreeSet;

use num_bigint::BigInt;
use serde::Serialize;

use super::ring::{check_enumerable, FiniteRing, QuotientRing};
use super::vector::WittRing;
use crate::error::{Error, Result};
use crate::exactlin::{IntPoly, ModRing};

/// `O = Z[ζ_{p^m}]/(p^n)` with tilt sequences of depth `k` in `O/p`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CyclotomicModel {
    pub p: u64,
    pub m: u32,
    pub n: u32,
    pub k: u32,
}

impl CyclotomicModel {
    pub fn new(p: u64, m: u32, n: u32, k: u32) -> Result<Self> {
        ModRing::new(p, n.max(1))?;
        if m == 0 {
            return Err(Error::InvalidInput("cyclotomic level must be positive".into()));
        }
        if k + 1 > m {
            return Err(Error::InvalidInput(format!("depth {k} needs roots of unity of order p^{}, level is {m}", k + 1)));
        }
        if k < n {
            return Err(Error::InsufficientDepth { needed: n as usize, available: k as usize });
        }
        Ok(CyclotomicModel { p, m, n, k })
    }

    /// `Z[ζ_{p^m}]/(p^n)`.
    pub fn ring(&self) -> QuotientRing {
        let base = ModRing::new(self.p, self.n).expect("validated");
        QuotientRing::new(base, &IntPoly::cyclotomic_prime_power(self.p, self.m)).expect("monic")
    }

    /// `O/p`.
    pub fn residue(&self) -> QuotientRing {
        self.ring().with_exponent(1).expect("validated")
    }

    /// `ζ_{p^j} = ζ_{p^m}^{p^{m-j}}` in `O/p`.
    pub fn zeta_residue(&self, j: u32) -> Vec<u64> {
        let r = self.residue();
        r.pow(&r.generator(), self.p.pow(self.m - j))
    }

    pub fn tilt(&self) -> TiltRing {
        TiltRing { p: self.p, depth: self.k as usize, residue: self.residue() }
    }
}

/// Sequences `(x_0, …, x_k)` in `O/p` with `x_{i+1}^p = x_i`, added and
/// multiplied entrywise.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TiltRing {
    p: u64,
    depth: usize,
    residue: QuotientRing,
}

impl TiltRing {
    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn residue(&self) -> &QuotientRing {
        &self.residue
    }

    /// The sequence ending in `x`.
    pub fn from_last(&self, x: &[u64]) -> Vec<Vec<u64>> {
        let mut seq = vec![x.to_vec()];
        for _ in 0..self.depth {
            let prev = self.residue.pow(seq.last().expect("nonempty"), self.p);
            seq.push(prev);
        }
        seq.reverse();
        seq
    }

    pub fn is_valid(&self, seq: &[Vec<u64>]) -> bool {
        seq.len() == self.depth + 1 && seq.windows(2).all(|w| self.residue.pow(&w[1], self.p) == w[0])
    }

    /// `(x_i) ↦ (x_i^p)`.
    pub fn frobenius(&self, seq: &[Vec<u64>]) -> Vec<Vec<u64>> {
        seq.iter().map(|x| self.residue.pow(x, self.p)).collect()
    }

    /// Whether Frobenius permutes the depth-`k` sequences; fails at finite depth
    /// unless every element of `O/p` is a `p`-th power.
    pub fn is_perfect(&self) -> Result<bool> {
        let all = self.elements()?;
        let images: BTreeSet<Vec<Vec<u64>>> = all.iter().map(|s| self.frobenius(s)).collect();
        Ok(images.len() == all.len())
    }

    /// Dropping `x_0` maps depth-`k` sequences bijectively onto depth-`(k-1)` ones;
    /// this is the shift inverting Frobenius in the limit.
    pub fn shift_is_bijective(&self) -> Result<bool> {
        if self.depth == 0 {
            return Ok(true);
        }
        let lower = TiltRing { depth: self.depth - 1, ..self.clone() };
        let shifted: BTreeSet<Vec<Vec<u64>>> = self.elements()?.iter().map(|s| s[1..].to_vec()).collect();
        let target: BTreeSet<Vec<Vec<u64>>> = lower.elements()?.into_iter().collect();
        Ok(shifted == target)
    }
}

impl FiniteRing for TiltRing {
    type Elem = Vec<Vec<u64>>;

    fn zero(&self) -> Self::Elem {
        vec![self.residue.zero(); self.depth + 1]
    }

    fn one(&self) -> Self::Elem {
        vec![self.residue.one(); self.depth + 1]
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.residue.add(x, y)).collect()
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        a.iter().map(|x| self.residue.neg(x)).collect()
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        a.iter().zip(b).map(|(x, y)| self.residue.mul(x, y)).collect()
    }

    fn from_big(&self, c: &BigInt) -> Self::Elem {
        vec![self.residue.from_big(c); self.depth + 1]
    }

    fn size(&self) -> Option<u64> {
        self.residue.size()
    }

    /// Every sequence is determined by its last entry, which is arbitrary.
    fn elements(&self) -> Result<Vec<Self::Elem>> {
        check_enumerable(self.size(), "tilt ring")?;
        Ok(self.residue.elements()?.iter().map(|x| self.from_last(x)).collect())
    }
}

/// `θ` on `W_n` of the depth-`k` tilt of a cyclotomic model.
#[derive(Clone, Debug)]
pub struct ThetaMap {
    model: CyclotomicModel,
    ring: QuotientRing,
    tilt: TiltRing,
    witt: WittRing<TiltRing>,
}

impl ThetaMap {
    pub fn new(model: &CyclotomicModel) -> Result<Self> {
        let tilt = model.tilt();
        let witt = WittRing::new(tilt.clone(), model.p, model.n as usize)?;
        Ok(ThetaMap { model: model.clone(), ring: model.ring(), tilt, witt })
    }

    pub fn witt(&self) -> &WittRing<TiltRing> {
        &self.witt
    }

    pub fn tilt(&self) -> &TiltRing {
        &self.tilt
    }

    pub fn ring(&self) -> &QuotientRing {
        &self.ring
    }

    /// Canonical coefficient lift `O/p → O`.
    pub fn canonical_lift(&self, x: &[u64]) -> Vec<u64> {
        self.ring.from_coeffs(x)
    }

    /// `\hat{x_k}^{p^j}` for the depth-`j` sequence ending in `x_k`.
    fn sharp(&self, last: &[u64], j: usize, lift: &impl Fn(&[u64]) -> Vec<u64>) -> Vec<u64> {
        self.ring.pow(&lift(last), self.model.p.pow(j as u32))
    }

    /// `θ(a) = Σ_{i<n} p^i · sharp(Frob^{-i}(a_i))` with `lift` choosing preimages in `O`.
    pub fn apply_with(&self, a: &[Vec<Vec<u64>>], lift: impl Fn(&[u64]) -> Vec<u64>) -> Result<Vec<u64>> {
        self.witt.check(a)?;
        let k = self.model.k as usize;
        let mut acc = self.ring.zero();
        for (i, ai) in a.iter().enumerate() {
            if !self.tilt.is_valid(ai) {
                return Err(Error::InvalidInput(format!("coordinate {i} is not a tilt sequence")));
            }
            let pi = self.ring.from_big(&BigInt::from(self.model.p).pow(i as u32));
            acc = self.ring.add(&acc, &self.ring.mul(&pi, &self.sharp(&ai[k], k - i, &lift)));
        }
        Ok(acc)
    }

    pub fn apply(&self, a: &[Vec<Vec<u64>>]) -> Result<Vec<u64>> {
        self.apply_with(a, |x| self.canonical_lift(x))
    }

    /// `ε = (1, ζ_p, …, ζ_{p^k})`.
    pub fn epsilon(&self) -> Vec<Vec<u64>> {
        self.tilt.from_last(&self.model.zeta_residue(self.model.k))
    }

    /// `ε^{1/p} = (ζ_p, …, ζ_{p^{k+1}})`.
    pub fn epsilon_root(&self) -> Vec<Vec<u64>> {
        self.tilt.from_last(&self.model.zeta_residue(self.model.k + 1))
    }

    /// `ξ = Σ_{i<p} [ε^{1/p}]^i`.
    pub fn xi(&self) -> Vec<Vec<Vec<u64>>> {
        let w = &self.witt;
        let t = w.teichmuller(&self.epsilon_root());
        (0..self.model.p).fold(w.zero(), |acc, i| w.add(&acc, &w.pow(&t, i)))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThetaReport {
    pub model: CyclotomicModel,
    pub tilt_size: u64,
    pub witt_size: u64,
    pub tilt_is_perfect: bool,
    pub shift_bijective: bool,
    pub epsilon_valid: bool,
    /// `θ(a+b) = θ(a)+θ(b)`, `θ(ab) = θ(a)θ(b)` on all pairs, and `θ(1) = 1`.
    pub homomorphism: bool,
    /// `θ(a) mod p = a_0` read through `x_0`.
    pub reduces_to_projection: bool,
    /// A second lift `x ↦ x + p·ζ` gives the same values.
    pub lift_independent: bool,
    pub theta_epsilon_is_one: bool,
    pub theta_xi_is_zero: bool,
    pub epsilon_minus_one_in_kernel: bool,
    pub kernel_size: usize,
    pub multiples_of_xi: usize,
    /// Every element of `ker θ` is `ξ·w` for some `w`.
    pub kernel_generated_by_xi: bool,
}

impl ThetaReport {
    pub fn passes(&self) -> bool {
        self.epsilon_valid
            && self.homomorphism
            && self.reduces_to_projection
            && self.lift_independent
            && self.theta_epsilon_is_one
            && self.theta_xi_is_zero
            && self.epsilon_minus_one_in_kernel
            && self.kernel_generated_by_xi
    }
}

/// Exhaustive checks of `θ: W_n(tilt) → O` for one model.
pub fn ker_theta_report(model: &CyclotomicModel) -> Result<ThetaReport> {
    let th = ThetaMap::new(model)?;
    let (w, o, tilt) = (th.witt(), th.ring(), th.tilt());
    let elems = w.elements()?;
    let values: Vec<Vec<u64>> = elems.iter().map(|a| th.apply(a)).collect::<Result<_>>()?;
    let index: std::collections::BTreeMap<&Vec<Vec<Vec<u64>>>, usize> = elems.iter().enumerate().map(|(i, a)| (a, i)).collect();
    let mut homomorphism = th.apply(&w.one())? == o.one();
    'pairs: for (i, a) in elems.iter().enumerate() {
        for (j, b) in elems.iter().enumerate().skip(i) {
            let s = index[&w.add(a, b)];
            let m = index[&w.mul(a, b)];
            if values[s] != o.add(&values[i], &values[j]) || values[m] != o.mul(&values[i], &values[j]) {
                homomorphism = false;
                break 'pairs;
            }
        }
    }
    let residue = tilt.residue();
    let reduces_to_projection = elems.iter().zip(&values).all(|(a, v)| o.reduce_into(residue, v) == a[0][0]);
    let zeta = o.generator();
    let p = model.p;
    let shifted = |x: &[u64]| o.add(&th.canonical_lift(x), &o.mul(&o.from_big(&BigInt::from(p)), &zeta));
    let lift_independent = elems.iter().zip(&values).all(|(a, v)| th.apply_with(a, shifted).as_ref() == Ok(v));

    let eps = th.epsilon();
    let teps = w.teichmuller(&eps);
    let xi = th.xi();
    let kernel: Vec<&Vec<Vec<Vec<u64>>>> = elems.iter().zip(&values).filter(|(_, v)| **v == o.zero()).map(|(a, _)| a).collect();
    let multiples: BTreeSet<Vec<Vec<Vec<u64>>>> = elems.iter().map(|b| w.mul(&xi, b)).collect();
    Ok(ThetaReport {
        model: model.clone(),
        tilt_size: tilt.size().unwrap_or(0),
        witt_size: elems.len() as u64,
        tilt_is_perfect: tilt.is_perfect()?,
        shift_bijective: tilt.shift_is_bijective()?,
        epsilon_valid: tilt.is_valid(&eps) && eps[0] == residue.one(),
        homomorphism,
        reduces_to_projection,
        lift_independent,
        theta_epsilon_is_one: th.apply(&teps)? == o.one(),
        theta_xi_is_zero: th.apply(&xi)? == o.zero(),
        epsilon_minus_one_in_kernel: th.apply(&w.sub(&teps, &w.one()))? == o.zero(),
        kernel_size: kernel.len(),
        multiples_of_xi: multiples.len(),
        kernel_generated_by_xi: kernel.iter().all(|a| multiples.contains(*a)),
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn four_tilt_pairs_for_level_two() {
        let t = TiltRing { p: 2, depth: 1, residue: CyclotomicModel { p: 2, m: 2, n: 1, k: 1 }.residue() };
        let all = t.elements().unwrap();
        assert_eq!(all.len(), 4);
        assert!(all.iter().all(|s| t.is_valid(s)));
        assert!(t.is_valid(&t.zero()) && t.is_valid(&t.one()));
    }

    #[test]
    fn model_constraints() {
        assert!(matches!(CyclotomicModel::new(2, 3, 3, 2), Err(Error::InsufficientDepth { .. })));
        assert!(CyclotomicModel::new(2, 2, 2, 2).is_err());
        assert!(CyclotomicModel::new(2, 3, 2, 2).is_ok());
    }

    #[test]
    fn theta_of_epsilon_root_is_a_root_of_unity() {
        let th = ThetaMap::new(&CyclotomicModel::new(2, 3, 2, 2).unwrap()).unwrap();
        let o = th.ring();
        let w = th.witt();
        // θ([ε^{1/2}]) = ζ_8^4 = -1 = ζ_2
        assert_eq!(th.apply(&w.teichmuller(&th.epsilon_root())).unwrap(), o.neg(&o.one()));
        assert_eq!(th.apply(&w.from_i64(2)).unwrap(), o.from_i64(2));
    }
}
