use std::collections::{BTreeMap, HashMap};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use super::ring::FiniteRing;
use crate::error::{Error, Result};
use crate::exactlin::is_prime;

/// Multivariate polynomial with rational coefficients, exponent vectors as keys.
#[derive(Clone, Debug, PartialEq, Eq)]
struct RatPoly {
    nvars: usize,
    terms: BTreeMap<Vec<u32>, BigRational>,
}

impl RatPoly {
    fn zero(nvars: usize) -> Self {
        RatPoly { nvars, terms: BTreeMap::new() }
    }

    fn constant(nvars: usize, c: BigRational) -> Self {
        let mut p = RatPoly::zero(nvars);
        p.add_term(vec![0; nvars], c);
        p
    }

    fn var(nvars: usize, i: usize) -> Self {
        let mut e = vec![0; nvars];
        e[i] = 1;
        let mut p = RatPoly::zero(nvars);
        p.add_term(e, BigRational::one());
        p
    }

    fn add_term(&mut self, e: Vec<u32>, c: BigRational) {
        if c.is_zero() {
            return;
        }
        let slot = self.terms.entry(e).or_insert_with(BigRational::zero);
        *slot += c;
        if slot.is_zero() {
            self.terms.retain(|_, v| !v.is_zero());
        }
    }

    fn add(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for (e, c) in &other.terms {
            out.add_term(e.clone(), c.clone());
        }
        out
    }

    fn scale(&self, c: &BigRational) -> Self {
        let mut out = RatPoly::zero(self.nvars);
        for (e, v) in &self.terms {
            out.add_term(e.clone(), v * c);
        }
        out
    }

    fn mul(&self, other: &Self) -> Self {
        let mut acc: BTreeMap<Vec<u32>, BigRational> = BTreeMap::new();
        for (ea, ca) in &self.terms {
            for (eb, cb) in &other.terms {
                let e: Vec<u32> = ea.iter().zip(eb).map(|(a, b)| a + b).collect();
                *acc.entry(e).or_insert_with(BigRational::zero) += ca * cb;
            }
        }
        acc.retain(|_, v| !v.is_zero());
        RatPoly { nvars: self.nvars, terms: acc }
    }

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = RatPoly::constant(self.nvars, BigRational::one());
        while e > 0 {
            if e & 1 == 1 {
                acc = acc.mul(&base);
            }
            e >>= 1;
            if e > 0 {
                base = base.mul(&base);
            }
        }
        acc
    }
}

/// Polynomial with integer coefficients in `x_0..x_{n-1}, y_0..y_{n-1}`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMvPoly {
    pub nvars: usize,
    pub terms: Vec<(Vec<u32>, BigInt)>,
}

impl IntMvPoly {
    fn from_rational(p: &RatPoly) -> Result<Self> {
        let mut terms = Vec::with_capacity(p.terms.len());
        for (e, c) in &p.terms {
            if !c.is_integer() {
                return Err(Error::Internal(format!("non-integral Witt structure coefficient {c}")));
            }
            terms.push((e.clone(), c.to_integer()));
        }
        Ok(IntMvPoly { nvars: p.nvars, terms })
    }

    pub fn coeff(&self, e: &[u32]) -> BigInt {
        self.terms.iter().find(|(k, _)| k == e).map(|(_, c)| c.clone()).unwrap_or_default()
    }

    pub fn len(&self) -> usize {
        self.terms.len()
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Evaluates at `vals` (one value per variable) in `ring`.
    pub fn eval<R: FiniteRing>(&self, ring: &R, vals: &[R::Elem]) -> R::Elem {
        let mut acc = ring.zero();
        for (e, c) in &self.terms {
            let mut t = ring.from_big(c);
            for (v, &k) in vals.iter().zip(e) {
                if k > 0 {
                    t = ring.mul(&t, &ring.pow(v, k as u64));
                }
            }
            acc = ring.add(&acc, &t);
        }
        acc
    }
}

/// Addition, multiplication and negation polynomials of `W_n` for the prime `p`.
/// Variables are `x_0..x_{n-1}` then `y_0..y_{n-1}` (negation uses only the `x`).
#[derive(Clone, Debug)]
pub struct StructurePolynomialTable {
    pub p: u64,
    pub n: usize,
    pub sum: Vec<IntMvPoly>,
    pub product: Vec<IntMvPoly>,
    pub negation: Vec<IntMvPoly>,
}

fn ghost(p: u64, coords: &[RatPoly], i: usize) -> RatPoly {
    let nvars = coords[0].nvars;
    let mut w = RatPoly::zero(nvars);
    for (j, c) in coords.iter().enumerate().take(i + 1) {
        let pj = BigRational::from_integer(BigInt::from(p).pow(j as u32));
        w = w.add(&c.pow(p.pow((i - j) as u32)).scale(&pj));
    }
    w
}

/// Solves `w_i(F) = target_i` for `F_0..F_{n-1}` recursively over `Q`.
fn solve_ghost(p: u64, n: usize, target: impl Fn(usize) -> RatPoly) -> Result<Vec<IntMvPoly>> {
    let mut sol: Vec<RatPoly> = Vec::with_capacity(n);
    for i in 0..n {
        let mut rest = target(i);
        for (j, s) in sol.iter().enumerate() {
            let pj = BigRational::from_integer(-BigInt::from(p).pow(j as u32));
            rest = rest.add(&s.pow(p.pow((i - j) as u32)).scale(&pj));
        }
        let inv = BigRational::new(BigInt::one(), BigInt::from(p).pow(i as u32));
        sol.push(rest.scale(&inv));
    }
    sol.iter().map(IntMvPoly::from_rational).collect()
}

impl StructurePolynomialTable {
    fn compute(p: u64, n: usize) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 || n > 4 {
            return Err(Error::InvalidInput(format!("Witt length {n} outside 1..=4")));
        }
        let nv = 2 * n;
        let xs: Vec<RatPoly> = (0..n).map(|i| RatPoly::var(nv, i)).collect();
        let ys: Vec<RatPoly> = (0..n).map(|i| RatPoly::var(nv, n + i)).collect();
        let sum = solve_ghost(p, n, |i| ghost(p, &xs, i).add(&ghost(p, &ys, i)))?;
        let product = solve_ghost(p, n, |i| ghost(p, &xs, i).mul(&ghost(p, &ys, i)))?;
        let minus = BigRational::from_integer(BigInt::from(-1));
        let negation = solve_ghost(p, n, |i| ghost(p, &xs, i).scale(&minus))?;
        Ok(StructurePolynomialTable { p, n, sum, product, negation })
    }

    /// Checks `w_i(S) = w_i(x) + w_i(y)`, `w_i(P) = w_i(x) w_i(y)`, `w_i(N) = -w_i(x)` over `Q`.
    pub fn verify_ghost_identities(&self) -> bool {
        let (p, n) = (self.p, self.n);
        let nv = 2 * n;
        let lift = |f: &IntMvPoly| {
            let mut r = RatPoly::zero(nv);
            for (e, c) in &f.terms {
                r.add_term(e.clone(), BigRational::from_integer(c.clone()));
            }
            r
        };
        let xs: Vec<RatPoly> = (0..n).map(|i| RatPoly::var(nv, i)).collect();
        let ys: Vec<RatPoly> = (0..n).map(|i| RatPoly::var(nv, n + i)).collect();
        let s: Vec<RatPoly> = self.sum.iter().map(lift).collect();
        let m: Vec<RatPoly> = self.product.iter().map(lift).collect();
        let g: Vec<RatPoly> = self.negation.iter().map(lift).collect();
        let minus = BigRational::from_integer(BigInt::from(-1));
        (0..n).all(|i| {
            let (wx, wy) = (ghost(p, &xs, i), ghost(p, &ys, i));
            ghost(p, &s, i) == wx.add(&wy) && ghost(p, &m, i) == wx.mul(&wy) && ghost(p, &g, i) == wx.scale(&minus)
        })
    }
}

/// The table for `(p, n)`, computed once per process.
pub fn structure_polynomials(p: u64, n: usize) -> Result<Arc<StructurePolynomialTable>> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, usize), Arc<StructurePolynomialTable>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(|| Mutex::new(HashMap::new()));
    if let Some(t) = cache.lock().expect("cache lock").get(&(p, n)) {
        return Ok(t.clone());
    }
    let table = Arc::new(StructurePolynomialTable::compute(p, n)?);
    Ok(cache.lock().expect("cache lock").entry((p, n)).or_insert(table).clone())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn first_polynomials_for_two() {
        let t = structure_polynomials(2, 2).unwrap();
        // S_1 = x_1 + y_1 - x_0 y_0
        let s1 = &t.sum[1];
        assert_eq!(s1.len(), 3);
        assert_eq!(s1.coeff(&[0, 1, 0, 0]), BigInt::from(1));
        assert_eq!(s1.coeff(&[0, 0, 0, 1]), BigInt::from(1));
        assert_eq!(s1.coeff(&[1, 0, 1, 0]), BigInt::from(-1));
        // P_1 = x_0^2 y_1 + x_1 y_0^2 + 2 x_1 y_1
        let p1 = &t.product[1];
        assert_eq!(p1.len(), 3);
        assert_eq!(p1.coeff(&[2, 0, 0, 1]), BigInt::from(1));
        assert_eq!(p1.coeff(&[0, 1, 2, 0]), BigInt::from(1));
        assert_eq!(p1.coeff(&[0, 1, 0, 1]), BigInt::from(2));
        // S_0 = x_0 + y_0, P_0 = x_0 y_0
        assert_eq!(t.sum[0].len(), 2);
        assert_eq!(t.product[0].terms, vec![(vec![1, 0, 1, 0], BigInt::from(1))]);
    }

    #[test]
    fn ghost_identities_hold() {
        for (p, n) in [(2, 3), (3, 3), (5, 2)] {
            assert!(structure_polynomials(p, n).unwrap().verify_ghost_identities(), "p={p} n={n}");
        }
    }

    #[test]
    fn rejects_long_vectors() {
        assert!(structure_polynomials(2, 5).is_err());
        assert!(matches!(structure_polynomials(4, 2), Err(Error::NotPrime(4))));
    }
}
