use std::collections::{BTreeMap, HashMap};
use std::fmt;
use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use crate::error::{Error, Result};
use crate::exactlin::ModRing;

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * k)
}

pub(crate) fn binomial(n: u32, k: u32) -> BigInt {
    if k > n {
        return BigInt::zero();
    }
    factorial(n) / (factorial(k) * factorial(n - k))
}

/// `(ki)! / (k! (i!)^k)`, the coefficient in `γ_k(γ_i(t)) = c · γ_{ki}(t)`.
pub fn composition_coefficient(k: u32, i: u32) -> BigInt {
    let num = factorial(k * i);
    let den = factorial(k) * num_traits::pow(factorial(i), k as usize);
    let (q, r) = num.div_rem(&den);
    assert!(r.is_zero(), "({k}·{i})!/({k}!({i}!)^{k}) is not an integer");
    q
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub enum GeneratorKind {
    /// Carries divided powers `γ_j(t)`.
    Divided,
    /// Ordinary polynomial variable.
    Polynomial,
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct PDGenerator {
    pub name: String,
    pub weight: u32,
    pub kind: GeneratorKind,
}

/// `R[x_1..][t_1..]⟨divided⟩` truncated at total weight `bound`; basis monomials
/// `Π x^a · Π γ_i(t)` are exponent vectors.
#[derive(Debug, PartialEq, Eq)]
pub struct PDAlgebra {
    ring: ModRing,
    gens: Vec<PDGenerator>,
    bound: u32,
    basis: Vec<Vec<u32>>,
    index: HashMap<Vec<u32>, usize>,
}

impl PDAlgebra {
    pub fn new(ring: ModRing, gens: Vec<PDGenerator>, bound: u32) -> Result<Arc<Self>> {
        if gens.iter().any(|g| g.weight == 0) {
            return Err(Error::InvalidInput("generators need positive weight".into()));
        }
        let weights: Vec<u32> = gens.iter().map(|g| g.weight).collect();
        let mut basis = Vec::new();
        for w in 0..=bound {
            let mut slice = exponents_of_weight(&weights, w);
            slice.sort();
            basis.extend(slice);
        }
        let index = basis.iter().enumerate().map(|(i, m)| (m.clone(), i)).collect();
        Ok(Arc::new(PDAlgebra { ring, gens, bound, basis, index }))
    }

    /// `R⟨t_1, ..., t_r⟩` with all generators of weight 1.
    pub fn divided(ring: ModRing, r: usize, bound: u32) -> Result<Arc<Self>> {
        let gens = (1..=r)
            .map(|i| PDGenerator { name: format!("t{i}"), weight: 1, kind: GeneratorKind::Divided })
            .collect();
        PDAlgebra::new(ring, gens, bound)
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn generators(&self) -> &[PDGenerator] {
        &self.gens
    }

    pub fn bound(&self) -> u32 {
        self.bound
    }

    pub fn basis(&self) -> &[Vec<u32>] {
        &self.basis
    }

    pub fn index_of(&self, m: &[u32]) -> Option<usize> {
        self.index.get(m).copied()
    }

    pub fn weight_of(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.gens).map(|(&e, g)| e * g.weight).sum()
    }

    /// Basis monomials of weight exactly `w`.
    pub fn slice(&self, w: u32) -> Vec<Vec<u32>> {
        self.basis.iter().filter(|m| self.weight_of(m) == w).cloned().collect()
    }

    /// Sum of the divided-power indices of a monomial.
    pub fn divided_index(&self, m: &[u32]) -> u32 {
        m.iter().zip(&self.gens).filter(|(_, g)| g.kind == GeneratorKind::Divided).map(|(&e, _)| e).sum()
    }

    /// Exact coefficient of `m · n` on the monomial `m + n`.
    pub fn product_coefficient(&self, m: &[u32], n: &[u32]) -> BigInt {
        let mut c = BigInt::one();
        for ((&a, &b), g) in m.iter().zip(n).zip(&self.gens) {
            if g.kind == GeneratorKind::Divided {
                c *= binomial(a + b, a);
            }
        }
        c
    }
}

fn exponents_of_weight(weights: &[u32], w: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, left: u32, weights: &[u32], cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k == weights.len() {
            if left == 0 {
                out.push(cur.clone());
            }
            return;
        }
        for e in 0..=left / weights[k] {
            cur[k] = e;
            rec(k + 1, left - e * weights[k], weights, cur, out);
        }
        cur[k] = 0;
    }
    let mut out = Vec::new();
    rec(0, w, weights, &mut vec![0; weights.len()], &mut out);
    out
}

/// An element of a truncated PD algebra. `truncated` is sticky: it records that
/// some computation leading here discarded terms above the weight bound.
#[derive(Clone, Debug)]
pub struct PDElement {
    parent: Arc<PDAlgebra>,
    terms: BTreeMap<Vec<u32>, u64>,
    truncated: bool,
}

impl PartialEq for PDElement {
    fn eq(&self, other: &Self) -> bool {
        (Arc::ptr_eq(&self.parent, &other.parent) || self.parent == other.parent) && self.terms == other.terms
    }
}

impl Eq for PDElement {}

impl PDElement {
    pub fn zero(parent: &Arc<PDAlgebra>) -> Self {
        PDElement { parent: parent.clone(), terms: BTreeMap::new(), truncated: false }
    }

    pub fn one(parent: &Arc<PDAlgebra>) -> Self {
        PDElement::monomial(parent, vec![0; parent.gens.len()], 1)
    }

    /// `c · m`; overweight monomials give zero with the truncation flag set.
    pub fn monomial(parent: &Arc<PDAlgebra>, m: Vec<u32>, c: u64) -> Self {
        let mut e = PDElement::zero(parent);
        if parent.weight_of(&m) > parent.bound {
            e.truncated = !c.is_multiple_of(parent.ring.modulus());
            return e;
        }
        e.add_term(m, c);
        e
    }

    /// `γ_j(t_i)` (or `x_i^j` for a polynomial generator).
    pub fn gamma_gen(parent: &Arc<PDAlgebra>, i: usize, j: u32) -> Self {
        let mut m = vec![0; parent.gens.len()];
        m[i] = j;
        PDElement::monomial(parent, m, 1)
    }

    pub fn from_terms(parent: &Arc<PDAlgebra>, terms: impl IntoIterator<Item = (Vec<u32>, u64)>) -> Self {
        let mut e = PDElement::zero(parent);
        for (m, c) in terms {
            e = e.add(&PDElement::monomial(parent, m, c)).expect("same parent");
        }
        e
    }

    pub fn parent(&self) -> &Arc<PDAlgebra> {
        &self.parent
    }

    pub fn terms(&self) -> &BTreeMap<Vec<u32>, u64> {
        &self.terms
    }

    pub fn coeff(&self, m: &[u32]) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn is_truncated(&self) -> bool {
        self.truncated
    }

    /// Coordinates in the full basis of the parent.
    pub fn coordinates(&self) -> Vec<u64> {
        let mut v = vec![0; self.parent.basis.len()];
        for (m, &c) in &self.terms {
            v[self.parent.index[m]] = c;
        }
        v
    }

    fn add_term(&mut self, m: Vec<u32>, c: u64) {
        let ring = self.parent.ring;
        let v = ring.add(self.coeff(&m), ring.reduce_u64(c));
        if v == 0 {
            self.terms.remove(&m);
        } else {
            self.terms.insert(m, v);
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if !Arc::ptr_eq(&self.parent, &other.parent) && self.parent != other.parent {
            return Err(Error::RingMismatch("elements of different PD algebras".into()));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out.truncated |= other.truncated;
        Ok(out)
    }

    pub fn scale(&self, c: u64) -> Self {
        let ring = self.parent.ring;
        let mut out = PDElement::zero(&self.parent);
        out.truncated = self.truncated;
        for (m, &x) in &self.terms {
            out.add_term(m.clone(), ring.mul(x, ring.reduce_u64(c)));
        }
        out
    }

    pub fn neg(&self) -> Self {
        self.scale(self.parent.ring.modulus() - 1)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    /// Product with `γ_a(t)γ_b(t) = binom(a+b, a) γ_{a+b}(t)`.
    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        let ring = self.parent.ring;
        let mut out = PDElement::zero(&self.parent);
        out.truncated = self.truncated || other.truncated;
        for (m, &a) in &self.terms {
            for (n, &b) in &other.terms {
                let prod: Vec<u32> = m.iter().zip(n).map(|(x, y)| x + y).collect();
                let c = ring.mul(ring.mul(a, b), ring.reduce_big(&self.parent.product_coefficient(m, n)));
                if self.parent.weight_of(&prod) > self.parent.bound {
                    out.truncated |= c != 0;
                    continue;
                }
                out.add_term(prod, c);
            }
        }
        Ok(out)
    }

    pub fn pow(&self, k: u32) -> Result<Self> {
        let mut acc = PDElement::one(&self.parent);
        for _ in 0..k {
            acc = acc.mul(self)?;
        }
        Ok(acc)
    }

    /// Lies in the ideal generated by the divided generators.
    pub fn in_pd_ideal(&self) -> bool {
        self.terms.keys().all(|m| self.parent.divided_index(m) > 0)
    }

    /// `γ_k` of an element of the PD ideal, expanded over its terms:
    /// `γ_k(Σ c_j m_j) = Σ_{Σ k_j = k} Π c_j^{k_j} γ_{k_j}(m_j)` with
    /// `γ_k(P · Π_{l∈S} γ_{i_l}(t_l)) = P^k (k!)^{|S|-1} Π_l c(k, i_l) γ_{k i_l}(t_l)`.
    pub fn gamma(&self, k: u32) -> Result<Self> {
        if !self.in_pd_ideal() {
            return Err(Error::InvalidInput("γ_k is defined on the PD ideal only".into()));
        }
        let terms: Vec<(&Vec<u32>, u64)> = self.terms.iter().map(|(m, &c)| (m, c)).collect();
        let mut out = self.gamma_rec(&terms, k)?;
        out.truncated |= self.truncated;
        Ok(out)
    }

    fn gamma_rec(&self, terms: &[(&Vec<u32>, u64)], k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(PDElement::one(&self.parent));
        }
        let Some(((m, c), rest)) = terms.split_first() else {
            return Ok(PDElement::zero(&self.parent));
        };
        let mut out = PDElement::zero(&self.parent);
        for j in 0..=k {
            let head = self.gamma_monomial(m, j)?.scale(self.parent.ring.pow(*c, j as u64));
            if head.is_zero() && !head.truncated {
                continue;
            }
            out = out.add(&head.mul(&self.gamma_rec(rest, k - j)?)?)?;
        }
        Ok(out)
    }

    fn gamma_monomial(&self, m: &[u32], k: u32) -> Result<Self> {
        if k == 0 {
            return Ok(PDElement::one(&self.parent));
        }
        let ring = self.parent.ring;
        let mut c = BigInt::one();
        let mut out = vec![0; m.len()];
        let mut factors = 0;
        for (i, (&e, g)) in m.iter().zip(&self.parent.gens).enumerate() {
            match g.kind {
                GeneratorKind::Polynomial => out[i] = e * k,
                GeneratorKind::Divided if e > 0 => {
                    factors += 1;
                    c *= composition_coefficient(k, e);
                    out[i] = e * k;
                }
                GeneratorKind::Divided => {}
            }
        }
        c *= num_traits::pow(factorial(k), (factors - 1) as usize);
        Ok(PDElement::monomial(&self.parent, out, ring.reduce_big(&c)))
    }
}

impl fmt::Display for PDElement {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        let parts: Vec<String> = self
            .terms
            .iter()
            .map(|(m, c)| {
                let factors: Vec<String> = m
                    .iter()
                    .zip(&self.parent.gens)
                    .filter(|(&e, _)| e > 0)
                    .map(|(&e, g)| match g.kind {
                        GeneratorKind::Divided => format!("γ{e}({})", g.name),
                        GeneratorKind::Polynomial if e == 1 => g.name.clone(),
                        GeneratorKind::Polynomial => format!("{}^{e}", g.name),
                    })
                    .collect();
                if factors.is_empty() {
                    c.to_string()
                } else if *c == 1 {
                    factors.join("·")
                } else {
                    format!("{c}·{}", factors.join("·"))
                }
            })
            .collect();
        write!(f, "{}", parts.join(" + "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn divided_power_products() {
        let z = ModRing::new(3, 3).unwrap();
        let a = PDAlgebra::divided(z, 1, 6).unwrap();
        let p = PDElement::gamma_gen(&a, 0, 2).mul(&PDElement::gamma_gen(&a, 0, 3)).unwrap();
        assert_eq!(p, PDElement::gamma_gen(&a, 0, 5).scale(10));
        let f2 = PDAlgebra::divided(ModRing::new(2, 1).unwrap(), 1, 6).unwrap();
        assert!(PDElement::gamma_gen(&f2, 0, 2).mul(&PDElement::gamma_gen(&f2, 0, 3)).unwrap().is_zero());
        let x = PDElement::gamma_gen(&a, 0, 1).add(&PDElement::gamma_gen(&a, 0, 4)).unwrap();
        assert_eq!(PDElement::one(&a).mul(&x).unwrap(), x);
    }

    #[test]
    fn composition_of_divided_powers() {
        assert_eq!(composition_coefficient(2, 2), BigInt::from(3));
        let a = PDAlgebra::divided(ModRing::new(5, 2).unwrap(), 1, 8).unwrap();
        let g2 = PDElement::gamma_gen(&a, 0, 2);
        assert_eq!(g2.gamma(2).unwrap(), PDElement::gamma_gen(&a, 0, 4).scale(3));
    }

    #[test]
    fn truncation_is_sticky() {
        let a = PDAlgebra::divided(ModRing::new(5, 1).unwrap(), 1, 3).unwrap();
        let t2 = PDElement::gamma_gen(&a, 0, 2);
        let sq = t2.mul(&t2).unwrap();
        assert!(sq.is_zero() && sq.is_truncated());
        assert!(sq.add(&PDElement::one(&a)).unwrap().is_truncated());
    }

    #[test]
    fn gamma_needs_the_pd_ideal() {
        let a = PDAlgebra::divided(ModRing::new(2, 2).unwrap(), 2, 4).unwrap();
        assert!(PDElement::one(&a).gamma(2).is_err());
    }
}
