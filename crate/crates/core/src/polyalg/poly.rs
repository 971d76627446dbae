use std::cmp::Ordering;
use std::collections::BTreeMap;

use super::algebra::PolyAlgebra;
use crate::exactlin::ModRing;

/// Exponent vector. Ordered by total degree, then lexicographically.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Monomial(pub Vec<u32>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Monomial(vec![0; nvars])
    }

    pub fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        Monomial(e)
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().sum()
    }

    pub fn weight(&self, weights: &[u32]) -> u32 {
        self.0.iter().zip(weights).map(|(e, w)| e * w).sum()
    }

    pub fn mul(&self, other: &Monomial) -> Monomial {
        Monomial(self.0.iter().zip(&other.0).map(|(a, b)| a + b).collect())
    }

    pub fn is_one(&self) -> bool {
        self.0.iter().all(|&e| e == 0)
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Polynomial with coefficients in `Z/p^n`; zero coefficients are never stored.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Poly {
    ring: ModRing,
    nvars: usize,
    terms: BTreeMap<Monomial, u64>,
}

impl Poly {
    pub fn zero(ring: ModRing, nvars: usize) -> Self {
        Poly { ring, nvars, terms: BTreeMap::new() }
    }

    pub fn constant(ring: ModRing, nvars: usize, c: i64) -> Self {
        Poly::monomial(ring, Monomial::one(nvars), ring.reduce_i64(c))
    }

    pub fn one(ring: ModRing, nvars: usize) -> Self {
        Poly::constant(ring, nvars, 1)
    }

    pub fn var(ring: ModRing, nvars: usize, i: usize) -> Self {
        Poly::monomial(ring, Monomial::var(nvars, i), 1)
    }

    pub fn monomial(ring: ModRing, m: Monomial, c: u64) -> Self {
        let mut p = Poly::zero(ring, m.0.len());
        p.add_term(m, c);
        p
    }

    pub fn from_terms(ring: ModRing, nvars: usize, terms: impl IntoIterator<Item = (Monomial, u64)>) -> Self {
        let mut p = Poly::zero(ring, nvars);
        for (m, c) in terms {
            p.add_term(m, c);
        }
        p
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn terms(&self) -> &BTreeMap<Monomial, u64> {
        &self.terms
    }

    pub fn coeff(&self, m: &Monomial) -> u64 {
        self.terms.get(m).copied().unwrap_or(0)
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// `self += c * m`.
    pub fn add_term(&mut self, m: Monomial, c: u64) {
        debug_assert_eq!(m.0.len(), self.nvars);
        let c = self.ring.reduce_u64(c);
        if c == 0 {
            return;
        }
        let ring = self.ring;
        match self.terms.entry(m) {
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

    pub fn add(&self, other: &Poly) -> Poly {
        let mut out = self.clone();
        for (m, &c) in &other.terms {
            out.add_term(m.clone(), c);
        }
        out
    }

    pub fn sub(&self, other: &Poly) -> Poly {
        self.add(&other.neg())
    }

    pub fn neg(&self) -> Poly {
        self.scale(self.ring.neg(1))
    }

    pub fn scale(&self, c: u64) -> Poly {
        Poly::from_terms(self.ring, self.nvars, self.terms.iter().map(|(m, &a)| (m.clone(), self.ring.mul(a, c))))
    }

    pub fn mul(&self, other: &Poly) -> Poly {
        let mut out = Poly::zero(self.ring, self.nvars);
        for (m1, &c1) in &self.terms {
            for (m2, &c2) in &other.terms {
                out.add_term(m1.mul(m2), self.ring.mul(c1, c2));
            }
        }
        out
    }

    pub fn pow(&self, e: u32) -> Poly {
        let mut out = Poly::one(self.ring, self.nvars);
        for _ in 0..e {
            out = out.mul(self);
        }
        out
    }

    pub fn derivative(&self, var: usize) -> Poly {
        let mut out = Poly::zero(self.ring, self.nvars);
        for (m, &c) in &self.terms {
            let e = m.0[var];
            if e == 0 {
                continue;
            }
            let mut m2 = m.clone();
            m2.0[var] -= 1;
            out.add_term(m2, self.ring.mul(c, self.ring.reduce_u64(e as u64)));
        }
        out
    }

    /// Weight if every term has the same weight; `None` for zero or mixed polynomials.
    pub fn homogeneous_weight(&self, weights: &[u32]) -> Option<u32> {
        let mut it = self.terms.keys().map(|m| m.weight(weights));
        let w = it.next()?;
        it.all(|v| v == w).then_some(w)
    }

    /// Largest exponent of `var` appearing.
    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| m.0[var]).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> Option<u32> {
        self.terms.keys().map(|m| m.degree()).max()
    }

    /// Reinterpret in `new_nvars` variables, old variable `i` becoming `positions[i]`.
    pub fn embed(&self, new_nvars: usize, positions: &[usize]) -> Poly {
        Poly::from_terms(
            self.ring,
            new_nvars,
            self.terms.iter().map(|(m, &c)| {
                let mut e = vec![0; new_nvars];
                for (i, &x) in m.0.iter().enumerate() {
                    e[positions[i]] += x;
                }
                (Monomial(e), c)
            }),
        )
    }

    /// Same residues read in a coarser coefficient ring.
    pub fn reduce_to(&self, ring: ModRing) -> Poly {
        Poly::from_terms(ring, self.nvars, self.terms.iter().map(|(m, &c)| (m.clone(), c)))
    }

    pub fn to_string_in(&self, alg: &PolyAlgebra) -> String {
        if self.is_zero() {
            return "0".into();
        }
        let mut parts = Vec::new();
        for (m, &c) in self.terms.iter().rev() {
            let mut factors = Vec::new();
            if c != 1 || m.is_one() {
                factors.push(c.to_string());
            }
            for (i, &e) in m.0.iter().enumerate() {
                match e {
                    0 => {}
                    1 => factors.push(alg.vars()[i].name.clone()),
                    _ => factors.push(format!("{}^{}", alg.vars()[i].name, e)),
                }
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn arithmetic_mod_four() {
        let r = ModRing::new(2, 2).unwrap();
        let x = Poly::var(r, 2, 0);
        let y = Poly::var(r, 2, 1);
        let s = x.add(&y);
        let sq = s.mul(&s);
        assert_eq!(sq.coeff(&Monomial(vec![1, 1])), 2);
        assert_eq!(sq.pow(2).coeff(&Monomial(vec![2, 2])), 6 % 4);
        assert!(x.sub(&x).is_zero());
        assert_eq!(sq.derivative(0).coeff(&Monomial(vec![1, 0])), 2);
    }

    #[test]
    fn graded_order() {
        assert!(Monomial(vec![2, 0]) > Monomial(vec![0, 1]));
        assert!(Monomial(vec![1, 1]) < Monomial(vec![2, 0]));
    }
}
