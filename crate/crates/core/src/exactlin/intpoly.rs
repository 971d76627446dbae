//! Univariate integer polynomials and resultants.

use std::fmt;

use num_bigint::BigInt;
use num_traits::{One, Signed, Zero};

use super::integer::{determinant, IntMatrix};
use crate::error::{Error, Result};

/// Dense univariate polynomial with integer coefficients, lowest degree first.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct IntPoly {
    coeffs: Vec<BigInt>,
}

impl IntPoly {
    pub fn new(coeffs: Vec<BigInt>) -> Self {
        let mut p = IntPoly { coeffs };
        p.trim();
        p
    }

    pub fn from_i64(coeffs: &[i64]) -> Self {
        IntPoly::new(coeffs.iter().map(|&c| BigInt::from(c)).collect())
    }

    pub fn zero() -> Self {
        IntPoly { coeffs: Vec::new() }
    }

    pub fn constant(c: BigInt) -> Self {
        IntPoly::new(vec![c])
    }

    /// `x^k`.
    pub fn monomial(k: usize) -> Self {
        let mut c = vec![BigInt::zero(); k + 1];
        c[k] = BigInt::one();
        IntPoly { coeffs: c }
    }

    fn trim(&mut self) {
        while self.coeffs.last().is_some_and(|c| c.is_zero()) {
            self.coeffs.pop();
        }
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree; `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn coeffs(&self) -> &[BigInt] {
        &self.coeffs
    }

    pub fn coeff(&self, k: usize) -> BigInt {
        self.coeffs.get(k).cloned().unwrap_or_default()
    }

    pub fn leading(&self) -> Option<&BigInt> {
        self.coeffs.last()
    }

    pub fn is_monic(&self) -> bool {
        self.leading().is_some_and(|c| c.is_one())
    }

    pub fn derivative(&self) -> Self {
        IntPoly::new(self.coeffs.iter().enumerate().skip(1).map(|(k, c)| c * BigInt::from(k)).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let len = self.coeffs.len().max(other.coeffs.len());
        IntPoly::new((0..len).map(|k| self.coeff(k) + other.coeff(k)).collect())
    }

    pub fn neg(&self) -> Self {
        IntPoly::new(self.coeffs.iter().map(|c| -c).collect())
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return IntPoly::zero();
        }
        let mut out = vec![BigInt::zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            for (j, b) in other.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        IntPoly::new(out)
    }

    pub fn pow(&self, e: u32) -> Self {
        (0..e).fold(IntPoly::constant(BigInt::one()), |acc, _| acc.mul(self))
    }

    pub fn eval(&self, x: &BigInt) -> BigInt {
        self.coeffs.iter().rev().fold(BigInt::zero(), |acc, c| acc * x + c)
    }

    /// Exact division by a monic polynomial; `None` if the remainder is nonzero.
    pub fn div_exact_monic(&self, divisor: &Self) -> Option<Self> {
        let (q, r) = self.div_rem_monic(divisor)?;
        r.is_zero().then_some(q)
    }

    /// Division with remainder by a monic polynomial.
    pub fn div_rem_monic(&self, divisor: &Self) -> Option<(Self, Self)> {
        if !divisor.is_monic() {
            return None;
        }
        let d = divisor.degree()?;
        let mut rem = self.coeffs.clone();
        if rem.len() <= d {
            return Some((IntPoly::zero(), self.clone()));
        }
        let mut quot = vec![BigInt::zero(); rem.len() - d];
        for k in (0..quot.len()).rev() {
            let c = rem[k + d].clone();
            if c.is_zero() {
                continue;
            }
            for (j, dc) in divisor.coeffs.iter().enumerate() {
                rem[k + j] -= &c * dc;
            }
            quot[k] = c;
        }
        Some((IntPoly::new(quot), IntPoly::new(rem)))
    }

    /// The cyclotomic polynomial `Φ_{p^r}(x) = Σ_{i<p} x^{i p^{r-1}}`.
    pub fn cyclotomic_prime_power(p: u64, r: u32) -> Self {
        assert!(r >= 1);
        let step = p.pow(r - 1) as usize;
        let mut c = vec![BigInt::zero(); step * (p as usize - 1) + 1];
        for i in 0..p as usize {
            c[i * step] = BigInt::one();
        }
        IntPoly::new(c)
    }
}

impl fmt::Display for IntPoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let sign = if c.is_negative() { "-" } else { "+" };
            if first {
                if c.is_negative() {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            let a = c.abs();
            match (k, a.is_one()) {
                (0, _) => write!(f, "{a}")?,
                (1, true) => write!(f, "x")?,
                (1, false) => write!(f, "{a}x")?,
                (_, true) => write!(f, "x^{k}")?,
                (_, false) => write!(f, "{a}x^{k}")?,
            }
            first = false;
        }
        Ok(())
    }
}

/// Sylvester matrix of `f` (degree m) and `g` (degree n), size `(m+n) x (m+n)`.
pub fn sylvester_matrix(f: &IntPoly, g: &IntPoly) -> Result<IntMatrix<BigInt>> {
    let m = f.degree().ok_or(Error::ZeroPolynomial)?;
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    let size = m + n;
    let mut s = IntMatrix::zeros(size, size);
    for row in 0..n {
        for k in 0..=m {
            s.set(row, row + k, f.coeff(m - k));
        }
    }
    for row in 0..m {
        for k in 0..=n {
            s.set(n + row, row + k, g.coeff(n - k));
        }
    }
    Ok(s)
}

/// Resultant `Res(f, g)` as the Sylvester determinant.
pub fn resultant(f: &IntPoly, g: &IntPoly) -> Result<BigInt> {
    let m = f.degree().ok_or(Error::ZeroPolynomial)?;
    let n = g.degree().ok_or(Error::ZeroPolynomial)?;
    if m == 0 && n == 0 {
        return Ok(BigInt::one());
    }
    if n == 0 {
        return Ok(num_traits::pow(g.coeff(0), m));
    }
    if m == 0 {
        return Ok(num_traits::pow(f.coeff(0), n));
    }
    determinant(&sylvester_matrix(f, g)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn cyclotomic_shapes() {
        assert_eq!(IntPoly::cyclotomic_prime_power(3, 1), IntPoly::from_i64(&[1, 1, 1]));
        assert_eq!(IntPoly::cyclotomic_prime_power(2, 2), IntPoly::from_i64(&[1, 0, 1]));
        assert_eq!(IntPoly::cyclotomic_prime_power(3, 2).degree(), Some(6));
    }

    #[test]
    fn resultant_with_constant() {
        let f = IntPoly::from_i64(&[1, 1, 1]);
        let c = IntPoly::from_i64(&[5]);
        assert_eq!(resultant(&f, &c).unwrap(), BigInt::from(25));
        assert!(matches!(resultant(&f, &IntPoly::zero()), Err(Error::ZeroPolynomial)));
    }

    #[test]
    fn monic_division() {
        let f = IntPoly::from_i64(&[-1, 0, 0, 1]);
        let g = IntPoly::from_i64(&[-1, 1]);
        assert_eq!(f.div_exact_monic(&g), Some(IntPoly::from_i64(&[1, 1, 1])));
        assert_eq!(format!("{}", IntPoly::from_i64(&[1, -2, 1])), "x^2 - 2x + 1");
    }
}
