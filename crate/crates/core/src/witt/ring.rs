use std::fmt::Debug;
use std::hash::Hash;

use num_bigint::BigInt;

use crate::error::{Error, Result};
use crate::exactlin::{IntPoly, ModRing};

/// Largest ring the exhaustive searches will enumerate.
pub const ENUMERATION_LIMIT: u64 = 1 << 16;

/// A commutative ring with finitely many elements.
pub trait FiniteRing {
    type Elem: Clone + Eq + Ord + Hash + Debug;

    fn zero(&self) -> Self::Elem;
    fn one(&self) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    /// Image of an integer under `Z → R`.
    fn from_big(&self, c: &BigInt) -> Self::Elem;
    /// Number of elements, if it fits in a `u64`.
    fn size(&self) -> Option<u64>;
    /// Every element, in a fixed order.
    fn elements(&self) -> Result<Vec<Self::Elem>>;

    fn sub(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.add(a, &self.neg(b))
    }

    fn pow(&self, a: &Self::Elem, mut e: u64) -> Self::Elem {
        let mut base = a.clone();
        let mut acc = self.one();
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(&acc, &base);
            }
            base = self.mul(&base, &base);
            e >>= 1;
        }
        acc
    }

    fn from_i64(&self, c: i64) -> Self::Elem {
        self.from_big(&BigInt::from(c))
    }

    /// Evaluates an integer polynomial at `x`.
    fn eval(&self, f: &IntPoly, x: &Self::Elem) -> Self::Elem {
        f.coeffs().iter().rev().fold(self.zero(), |acc, c| self.add(&self.mul(&acc, x), &self.from_big(c)))
    }
}

pub(crate) fn check_enumerable(size: Option<u64>, what: &str) -> Result<u64> {
    match size {
        Some(s) if s <= ENUMERATION_LIMIT => Ok(s),
        _ => Err(Error::EnumerationBound(format!("{what} has more than {ENUMERATION_LIMIT} elements"))),
    }
}

impl FiniteRing for ModRing {
    type Elem = u64;

    fn zero(&self) -> u64 {
        0
    }

    fn one(&self) -> u64 {
        self.reduce_u64(1)
    }

    fn add(&self, a: &u64, b: &u64) -> u64 {
        ModRing::add(self, *a, *b)
    }

    fn neg(&self, a: &u64) -> u64 {
        ModRing::neg(self, *a)
    }

    fn mul(&self, a: &u64, b: &u64) -> u64 {
        ModRing::mul(self, *a, *b)
    }

    fn from_big(&self, c: &BigInt) -> u64 {
        self.reduce_big(c)
    }

    fn size(&self) -> Option<u64> {
        Some(self.modulus())
    }

    fn elements(&self) -> Result<Vec<u64>> {
        check_enumerable(self.size(), "Z/p^n")?;
        Ok((0..self.modulus()).collect())
    }
}

/// `(Z/p^n)[x]/(g)` for a monic `g`; elements are coefficient vectors of length `deg g`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct QuotientRing {
    base: ModRing,
    /// `g` reduced mod `p^n`, lowest degree first, monic.
    modulus: Vec<u64>,
}

impl QuotientRing {
    pub fn new(base: ModRing, g: &IntPoly) -> Result<Self> {
        if !g.is_monic() || g.degree() == Some(0) {
            return Err(Error::InvalidInput(format!("modulus {g} must be monic of positive degree")));
        }
        Ok(QuotientRing { base, modulus: g.coeffs().iter().map(|c| base.reduce_big(c)).collect() })
    }

    pub fn base(&self) -> ModRing {
        self.base
    }

    pub fn degree(&self) -> usize {
        self.modulus.len() - 1
    }

    pub fn modulus_poly(&self) -> IntPoly {
        IntPoly::new(self.modulus.iter().map(|&c| BigInt::from(c)).collect())
    }

    /// The same presentation with the base reduced to `Z/p^m`.
    pub fn with_exponent(&self, m: u32) -> Result<Self> {
        QuotientRing::new(self.base.with_exponent(m)?, &self.modulus_poly())
    }

    /// Reduction of coefficients into another base of the same prime.
    pub fn reduce_into(&self, other: &QuotientRing, a: &[u64]) -> Vec<u64> {
        a.iter().map(|&c| other.base.reduce_u64(c)).collect()
    }

    /// The class of `x`.
    pub fn generator(&self) -> Vec<u64> {
        let d = self.degree();
        let mut v = vec![0; d];
        if d == 1 {
            return vec![self.base.neg(self.modulus[0])];
        }
        v[1] = 1;
        v
    }

    /// Element from low-to-high coefficients of any length, reduced mod `g`.
    pub fn from_coeffs(&self, coeffs: &[u64]) -> Vec<u64> {
        let mut c: Vec<u64> = coeffs.iter().map(|&a| self.base.reduce_u64(a)).collect();
        self.reduce(&mut c);
        c
    }

    fn reduce(&self, c: &mut Vec<u64>) {
        let d = self.degree();
        let r = self.base;
        while c.len() > d {
            let top = c.pop().expect("nonempty");
            if top == 0 {
                continue;
            }
            let shift = c.len() - d;
            for (j, &g) in self.modulus[..d].iter().enumerate() {
                c[shift + j] = r.sub(c[shift + j], r.mul(top, g));
            }
        }
        c.resize(d, 0);
    }
}

impl FiniteRing for QuotientRing {
    type Elem = Vec<u64>;

    fn zero(&self) -> Vec<u64> {
        vec![0; self.degree()]
    }

    fn one(&self) -> Vec<u64> {
        self.from_coeffs(&[1])
    }

    fn add(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        a.iter().zip(b).map(|(&x, &y)| self.base.add(x, y)).collect()
    }

    fn neg(&self, a: &Vec<u64>) -> Vec<u64> {
        a.iter().map(|&x| self.base.neg(x)).collect()
    }

    fn mul(&self, a: &Vec<u64>, b: &Vec<u64>) -> Vec<u64> {
        let d = self.degree();
        let mut c = vec![0u64; 2 * d - 1];
        for (i, &x) in a.iter().enumerate() {
            if x == 0 {
                continue;
            }
            for (j, &y) in b.iter().enumerate() {
                c[i + j] = self.base.mul_add(x, y, c[i + j]);
            }
        }
        self.reduce(&mut c);
        c
    }

    fn from_big(&self, c: &BigInt) -> Vec<u64> {
        self.from_coeffs(&[self.base.reduce_big(c)])
    }

    fn size(&self) -> Option<u64> {
        self.base.modulus().checked_pow(self.degree() as u32)
    }

    fn elements(&self) -> Result<Vec<Vec<u64>>> {
        let size = check_enumerable(self.size(), "quotient ring")?;
        let m = self.base.modulus();
        Ok((0..size)
            .map(|mut k| {
                (0..self.degree())
                    .map(|_| {
                        let c = k % m;
                        k /= m;
                        c
                    })
                    .collect()
            })
            .collect())
    }
}
