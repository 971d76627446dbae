use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Ratio;
use num_traits::Zero;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::exactlin::{int_valuation, is_prime, resultant, smith_valuations, IntPoly, ModMatrix, ModRing, PAdicValue};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Flavor {
    /// `Q_p(ζ_{p^r})`, generator `ζ_{p^r}`.
    Cyclotomic { r: u32 },
    Eisenstein,
    Unramified,
}

/// `O_L = Z_p[b]` with `b` a root of the monic `f`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MonogenicExtension {
    p: u64,
    f: IntPoly,
    ramification: u64,
    flavor: Flavor,
}

/// `f(x + 1)`.
fn shift_by_one(f: &IntPoly) -> IntPoly {
    let x1 = IntPoly::from_i64(&[1, 1]);
    f.coeffs().iter().rev().fold(IntPoly::zero(), |acc, c| acc.mul(&x1).add(&IntPoly::constant(c.clone())))
}

fn is_eisenstein(f: &IntPoly, p: u64) -> bool {
    let p = BigInt::from(p);
    let c = f.coeffs();
    let d = c.len() - 1;
    d >= 1
        && f.is_monic()
        && c[..d].iter().all(|a| a.is_multiple_of(&p))
        && !c[0].is_multiple_of(&(&p * &p))
}

fn reduce_mod(f: &IntPoly, p: u64) -> Vec<u64> {
    let r = ModRing::new(p, 1).expect("prime");
    let mut v: Vec<u64> = f.coeffs().iter().map(|c| r.reduce_big(c)).collect();
    while v.last() == Some(&0) {
        v.pop();
    }
    v
}

/// Whether the monic `g` divides `f` over `F_p` (coefficients low to high).
fn divides_mod_p(g: &[u64], f: &[u64], p: u64) -> bool {
    let r = ModRing::new(p, 1).expect("prime");
    let mut rem = f.to_vec();
    let d = g.len() - 1;
    while rem.len() > d {
        let top = rem.pop().expect("nonempty");
        let shift = rem.len() - d;
        for (j, &gj) in g[..d].iter().enumerate() {
            rem[shift + j] = r.sub(rem[shift + j], r.mul(top, gj));
        }
    }
    rem.iter().all(|&c| c == 0)
}

/// Irreducibility of a monic polynomial over `F_p` by trial division with every
/// monic polynomial of degree `≤ deg/2`.
fn irreducible_mod_p(f: &[u64], p: u64) -> Result<bool> {
    let d = f.len() - 1;
    for k in 1..=d / 2 {
        let count = p.checked_pow(k as u32).filter(|c| *c <= 1 << 20).ok_or_else(|| {
            Error::EnumerationBound(format!("trial division by degree-{k} polynomials over F_{p}"))
        })?;
        for mut idx in 0..count {
            let mut g: Vec<u64> = (0..k)
                .map(|_| {
                    let c = idx % p;
                    idx /= p;
                    c
                })
                .collect();
            g.push(1);
            if divides_mod_p(&g, f, p) {
                return Ok(false);
            }
        }
    }
    Ok(true)
}

impl MonogenicExtension {
    /// `Q_p(ζ_{p^r})` with minimal polynomial `Φ_{p^r}`, certified by Eisenstein at `x + 1`.
    pub fn cyclotomic(p: u64, r: u32) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if r == 0 {
            return Err(Error::InvalidInput("cyclotomic level r must be at least 1".into()));
        }
        let f = IntPoly::cyclotomic_prime_power(p, r);
        if !is_eisenstein(&shift_by_one(&f), p) {
            return Err(Error::Internal(format!("Φ_{{{p}^{r}}}(x+1) failed the Eisenstein test")));
        }
        let d = f.degree().expect("nonzero") as u64;
        Ok(MonogenicExtension { p, f, ramification: d, flavor: Flavor::Cyclotomic { r } })
    }

    pub fn eisenstein(p: u64, f: IntPoly) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !is_eisenstein(&f, p) {
            return Err(Error::Hypothesis(format!("{f} is not Eisenstein at {p}")));
        }
        let d = f.degree().expect("nonzero") as u64;
        Ok(MonogenicExtension { p, f, ramification: d, flavor: Flavor::Eisenstein })
    }

    /// `f` monic and irreducible mod `p` (hence separable mod `p`, as `F_p` is perfect).
    pub fn unramified(p: u64, f: IntPoly) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if !f.is_monic() || f.degree().unwrap_or(0) == 0 {
            return Err(Error::InvalidInput(format!("{f} must be monic of positive degree")));
        }
        if !irreducible_mod_p(&reduce_mod(&f, p), p)? {
            return Err(Error::Hypothesis(format!("{f} is reducible mod {p}")));
        }
        Ok(MonogenicExtension { p, f, ramification: 1, flavor: Flavor::Unramified })
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn minimal_polynomial(&self) -> &IntPoly {
        &self.f
    }

    pub fn degree(&self) -> usize {
        self.f.degree().expect("nonzero")
    }

    pub fn ramification(&self) -> u64 {
        self.ramification
    }

    pub fn flavor(&self) -> &Flavor {
        &self.flavor
    }

    /// Coordinates of `g(b)` in the power basis `1, b, …, b^{d-1}`.
    pub fn element(&self, g: &IntPoly) -> Vec<BigInt> {
        let (_, r) = g.div_rem_monic(&self.f).expect("monic");
        (0..self.degree()).map(|k| r.coeff(k)).collect()
    }

    /// Matrix of multiplication by `g(b)` on the power basis, reduced into `ring`.
    pub fn multiplication_matrix(&self, g: &IntPoly, ring: ModRing) -> ModMatrix {
        let d = self.degree();
        let cols: Vec<Vec<BigInt>> = (0..d).map(|j| self.element(&g.mul(&IntPoly::monomial(j)))).collect();
        ModMatrix::from_fn(ring, d, d, |i, j| ring.reduce_big(&cols[j][i]))
    }

    /// Exact integer determinant of multiplication by `g(b)`, i.e. `N_{L/Q_p}(g(b))`.
    pub fn norm(&self, g: &IntPoly) -> Result<BigInt> {
        let d = self.degree();
        let cols: Vec<Vec<BigInt>> = (0..d).map(|j| self.element(&g.mul(&IntPoly::monomial(j)))).collect();
        let rows: Vec<Vec<BigInt>> = (0..d).map(|i| (0..d).map(|j| cols[j][i].clone()).collect()).collect();
        crate::exactlin::determinant(&crate::exactlin::IntMatrix::from_rows(rows)?)
    }

    /// `v(g(b)) = v_p(N(g(b)))/d`, normalized with `v(p) = 1`.
    pub fn valuation_of(&self, g: &IntPoly) -> Result<PAdicValue> {
        let n = self.norm(g)?;
        self.rational_valuation(&n)
    }

    fn rational_valuation(&self, n: &BigInt) -> Result<PAdicValue> {
        match int_valuation(n, self.p) {
            None => Ok(PAdicValue::infinity(self.p)),
            Some(v) => PAdicValue::finite(self.p, Ratio::new(v as i64, self.degree() as i64), self.ramification),
        }
    }
}

/// `v(f'(b)) = v_p(Res(f, f'))/d`, the valuation of the different.
pub fn different_valuation(e: &MonogenicExtension) -> Result<PAdicValue> {
    let f = e.minimal_polynomial();
    let res = resultant(f, &f.derivative())?;
    if res.is_zero() {
        return Err(Error::Hypothesis(format!("{f} is inseparable")));
    }
    e.rational_valuation(&res)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct OmegaInvariants {
    pub precision: u32,
    /// Exponents of the cyclic factors `Z/p^{v_i}` of `O_L/(f'(b))`.
    pub exponents: Vec<u32>,
    pub length: u64,
}

/// Length over `Z_p` of `Ω¹_{O_L/Z_p} ≅ O_L/(f'(b))`, from the Smith form of
/// multiplication by `f'(b)` on `O_L/p^N`.
pub fn omega_invariants(e: &MonogenicExtension, precision: u32) -> Result<OmegaInvariants> {
    let ring = ModRing::new(e.p(), precision)?;
    let m = e.multiplication_matrix(&e.minimal_polynomial().derivative(), ring);
    let exponents: Vec<u32> = smith_valuations(&m).into_iter().filter(|&v| v > 0).collect();
    if exponents.iter().any(|&v| v >= precision) {
        return Err(Error::InsufficientDepth { needed: precision as usize + 1, available: precision as usize });
    }
    let length = exponents.iter().map(|&v| v as u64).sum();
    Ok(OmegaInvariants { precision, exponents, length })
}

/// `r - 1/(p-1)`.
pub fn expected_cyclotomic_different(p: u64, r: u32) -> Ratio<i64> {
    Ratio::from_integer(r as i64) - Ratio::new(1, p as i64 - 1)
}
