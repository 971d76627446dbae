//! Residue rings `Z/p^n` with `p` prime.

use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, ToPrimitive};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Largest modulus accepted; keeps every product inside `u128` and every
/// sum of two residues inside `u64`.
pub const MAX_MODULUS: u64 = 1 << 62;

/// Deterministic primality test for the small primes used as residue characteristics.
pub fn is_prime(p: u64) -> bool {
    if p < 2 {
        return false;
    }
    if p < 4 {
        return true;
    }
    if p.is_multiple_of(2) {
        return false;
    }
    let mut d = 3;
    while d * d <= p {
        if p.is_multiple_of(d) {
            return false;
        }
        d += 2;
    }
    true
}

/// If `m` is a prime power `p^n` with `n >= 1`, return `(p, n)`.
pub fn prime_power_decomposition(m: u64) -> Option<(u64, u32)> {
    if m < 2 {
        return None;
    }
    let mut p = 2;
    while p * p <= m {
        if m.is_multiple_of(p) {
            break;
        }
        p += 1;
    }
    if p * p > m {
        p = m;
    }
    let mut rest = m;
    let mut n = 0;
    while rest.is_multiple_of(p) {
        rest /= p;
        n += 1;
    }
    (rest == 1).then_some((p, n))
}

/// The coefficient ring `Z/p^n`. `n = 1` is the prime field `F_p`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "RingDescriptor", into = "RingDescriptor")]
pub struct ModRing {
    p: u64,
    n: u32,
    modulus: u64,
}

/// JSON shape of a coefficient ring: `{"p":2,"n":2}`.
#[derive(Clone, Copy, Debug, Serialize, Deserialize)]
pub struct RingDescriptor {
    pub p: u64,
    pub n: u32,
}

impl TryFrom<RingDescriptor> for ModRing {
    type Error = Error;
    fn try_from(d: RingDescriptor) -> Result<Self> {
        ModRing::new(d.p, d.n)
    }
}

impl From<ModRing> for RingDescriptor {
    fn from(r: ModRing) -> Self {
        RingDescriptor { p: r.p, n: r.n }
    }
}

impl ModRing {
    pub fn new(p: u64, n: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if n == 0 {
            return Err(Error::InvalidInput("exponent n must be at least 1".into()));
        }
        let mut modulus: u64 = 1;
        for _ in 0..n {
            modulus = modulus
                .checked_mul(p)
                .filter(|m| *m <= MAX_MODULUS)
                .ok_or_else(|| Error::InvalidInput(format!("{p}^{n} exceeds the supported modulus")))?;
        }
        Ok(ModRing { p, n, modulus })
    }

    /// Ring from an arbitrary modulus; composite non-prime-power moduli are rejected.
    pub fn from_modulus(m: u64) -> Result<Self> {
        match prime_power_decomposition(m) {
            Some((p, n)) => ModRing::new(p, n),
            None => Err(Error::NotPrimePower(m)),
        }
    }

    pub fn prime_field(p: u64) -> Result<Self> {
        ModRing::new(p, 1)
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn n(&self) -> u32 {
        self.n
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    pub fn is_field(&self) -> bool {
        self.n == 1
    }

    /// Same prime, exponent reduced to 1.
    pub fn residue_field(&self) -> ModRing {
        ModRing::new(self.p, 1).expect("prime already validated")
    }

    /// Same prime, different exponent.
    pub fn with_exponent(&self, n: u32) -> Result<ModRing> {
        ModRing::new(self.p, n)
    }

    pub fn elem(&self, v: i64) -> ModInt {
        ModInt { value: self.reduce_i64(v), ring: *self }
    }

    #[inline]
    pub fn reduce_u64(&self, v: u64) -> u64 {
        v % self.modulus
    }

    #[inline]
    pub fn reduce_i64(&self, v: i64) -> u64 {
        let m = self.modulus as i128;
        (((v as i128) % m + m) % m) as u64
    }

    pub fn reduce_big(&self, v: &BigInt) -> u64 {
        let m = BigInt::from(self.modulus);
        v.mod_floor(&m).to_u64().expect("residue fits")
    }

    #[inline]
    pub fn add(&self, a: u64, b: u64) -> u64 {
        let s = a + b;
        if s >= self.modulus {
            s - self.modulus
        } else {
            s
        }
    }

    #[inline]
    pub fn sub(&self, a: u64, b: u64) -> u64 {
        if a >= b {
            a - b
        } else {
            a + self.modulus - b
        }
    }

    #[inline]
    pub fn neg(&self, a: u64) -> u64 {
        if a == 0 {
            0
        } else {
            self.modulus - a
        }
    }

    #[inline]
    pub fn mul(&self, a: u64, b: u64) -> u64 {
        if self.modulus <= u32::MAX as u64 {
            (a * b) % self.modulus
        } else {
            ((a as u128 * b as u128) % self.modulus as u128) as u64
        }
    }

    /// `a*b + c`.
    #[inline]
    pub fn mul_add(&self, a: u64, b: u64, c: u64) -> u64 {
        self.add(self.mul(a, b), c)
    }

    pub fn pow(&self, mut a: u64, mut e: u64) -> u64 {
        let mut r = 1 % self.modulus;
        while e > 0 {
            if e & 1 == 1 {
                r = self.mul(r, a);
            }
            a = self.mul(a, a);
            e >>= 1;
        }
        r
    }

    /// `p^k` reduced; zero once `k >= n`.
    pub fn p_power(&self, k: u32) -> u64 {
        if k >= self.n {
            0
        } else {
            self.p.pow(k)
        }
    }

    /// p-adic valuation of a residue, with `v(0) = n`.
    pub fn valuation(&self, mut a: u64) -> u32 {
        if a == 0 {
            return self.n;
        }
        let mut v = 0;
        while a.is_multiple_of(self.p) {
            a /= self.p;
            v += 1;
        }
        v
    }

    pub fn is_unit(&self, a: u64) -> bool {
        !a.is_multiple_of(self.p)
    }

    pub fn inv(&self, a: u64) -> Option<u64> {
        if !self.is_unit(a) {
            return None;
        }
        let (g, x, _) = ext_gcd(a as i128, self.modulus as i128);
        debug_assert_eq!(g, 1);
        let m = self.modulus as i128;
        Some(((x % m + m) % m) as u64)
    }

    /// Write a nonzero residue as `p^v * u` with `u` a unit.
    pub fn split_unit(&self, a: u64) -> (u32, u64) {
        let v = self.valuation(a);
        if v == self.n {
            return (v, 0);
        }
        let pv = self.p.pow(v);
        (v, a / pv)
    }

    /// Some `c` with `b*c = a`, when one exists.
    pub fn div(&self, a: u64, b: u64) -> Option<u64> {
        if a == 0 {
            return Some(0);
        }
        let vb = self.valuation(b);
        let va = self.valuation(a);
        if vb > va {
            return None;
        }
        let (_, ub) = self.split_unit(b);
        let pvb = self.p.pow(vb);
        let quotient = a / pvb;
        Some(self.mul(quotient, self.inv(ub)?))
    }

    /// Symmetric lift into `(-m/2, m/2]`.
    pub fn lift_signed(&self, a: u64) -> i64 {
        if a > self.modulus / 2 {
            a as i64 - self.modulus as i64
        } else {
            a as i64
        }
    }
}

impl fmt::Display for ModRing {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.n == 1 {
            write!(f, "F_{}", self.p)
        } else {
            write!(f, "Z/{}", self.modulus)
        }
    }
}

fn ext_gcd(a: i128, b: i128) -> (i128, i128, i128) {
    if b == 0 {
        (a, 1, 0)
    } else {
        let (g, x, y) = ext_gcd(b, a % b);
        (g, y, x - (a / b) * y)
    }
}

/// A single residue together with its ring.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct ModInt {
    value: u64,
    ring: ModRing,
}

impl ModInt {
    pub fn new(value: u64, ring: ModRing) -> Self {
        ModInt { value: ring.reduce_u64(value), ring }
    }

    pub fn from_big(v: &BigInt, ring: ModRing) -> Self {
        ModInt { value: ring.reduce_big(v), ring }
    }

    pub fn value(&self) -> u64 {
        self.value
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn is_zero(&self) -> bool {
        self.value == 0
    }

    pub fn valuation(&self) -> u32 {
        self.ring.valuation(self.value)
    }

    pub fn inv(&self) -> Option<ModInt> {
        self.ring.inv(self.value).map(|value| ModInt { value, ring: self.ring })
    }

    pub fn pow(&self, e: u64) -> ModInt {
        ModInt { value: self.ring.pow(self.value, e), ring: self.ring }
    }

    fn check(&self, other: &ModInt) {
        assert_eq!(self.ring, other.ring, "residues from different rings");
    }
}

impl Add for ModInt {
    type Output = ModInt;
    fn add(self, rhs: ModInt) -> ModInt {
        self.check(&rhs);
        ModInt { value: self.ring.add(self.value, rhs.value), ring: self.ring }
    }
}

impl Sub for ModInt {
    type Output = ModInt;
    fn sub(self, rhs: ModInt) -> ModInt {
        self.check(&rhs);
        ModInt { value: self.ring.sub(self.value, rhs.value), ring: self.ring }
    }
}

impl Mul for ModInt {
    type Output = ModInt;
    fn mul(self, rhs: ModInt) -> ModInt {
        self.check(&rhs);
        ModInt { value: self.ring.mul(self.value, rhs.value), ring: self.ring }
    }
}

impl Neg for ModInt {
    type Output = ModInt;
    fn neg(self) -> ModInt {
        ModInt { value: self.ring.neg(self.value), ring: self.ring }
    }
}

impl fmt::Display for ModInt {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} mod {}", self.value, self.ring.modulus)
    }
}

/// Exact `v_p` of a nonzero integer.
pub fn int_valuation<T>(a: &T, p: u64) -> Option<u32>
where
    T: Integer + Signed + Clone + From<u64>,
{
    if a.is_zero() {
        return None;
    }
    let p = T::from(p);
    let mut a = a.abs();
    let mut v = 0;
    loop {
        let (q, r) = a.div_rem(&p);
        if !r.is_zero() {
            return Some(v);
        }
        a = q;
        v += 1;
    }
}
