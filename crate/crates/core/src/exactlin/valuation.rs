//! Exact p-adic valuations on `Q` and on ramified extensions.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};
use num_traits::{Signed, Zero};
use serde::{Serialize, Serializer};

use super::ring::{int_valuation, is_prime};
use crate::error::{Error, Result};

/// A valuation in `(1/e) Z ∪ {+∞}` normalized so that `v(p) = 1`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PAdicValue {
    p: u64,
    ramification: u64,
    value: Option<Ratio<i64>>,
}

impl PAdicValue {
    pub fn finite(p: u64, value: Ratio<i64>, ramification: u64) -> Result<Self> {
        if ramification == 0 || !ramification.is_multiple_of(*value.denom() as u64) {
            return Err(Error::InvalidInput(format!(
                "valuation {value} not in (1/{ramification})Z"
            )));
        }
        Ok(PAdicValue { p, ramification, value: Some(value) })
    }

    pub fn infinity(p: u64) -> Self {
        PAdicValue { p, ramification: 1, value: None }
    }

    pub fn integer(p: u64, v: i64) -> Self {
        PAdicValue { p, ramification: 1, value: Some(Ratio::from_integer(v)) }
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn ramification(&self) -> u64 {
        self.ramification
    }

    pub fn value(&self) -> Option<Ratio<i64>> {
        self.value
    }

    pub fn is_infinite(&self) -> bool {
        self.value.is_none()
    }
}

impl PartialOrd for PAdicValue {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        if self.p != other.p {
            return None;
        }
        Some(match (self.value, other.value) {
            (None, None) => Ordering::Equal,
            (None, Some(_)) => Ordering::Greater,
            (Some(_), None) => Ordering::Less,
            (Some(a), Some(b)) => a.cmp(&b),
        })
    }
}

impl fmt::Display for PAdicValue {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self.value {
            None => write!(f, "∞"),
            Some(v) if *v.denom() == 1 => write!(f, "{}", v.numer()),
            Some(v) => write!(f, "{}/{}", v.numer(), v.denom()),
        }
    }
}

impl Serialize for PAdicValue {
    fn serialize<S: Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_string())
    }
}

/// `v_p(q)` for a rational `q`; `+∞` for zero.
pub fn padic_valuation(q: &BigRational, p: u64) -> Result<PAdicValue> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if q.is_zero() {
        return Ok(PAdicValue::infinity(p));
    }
    let num = int_valuation(&q.numer().abs(), p).expect("nonzero") as i64;
    let den = int_valuation(&q.denom().abs(), p).expect("nonzero") as i64;
    Ok(PAdicValue::integer(p, num - den))
}

/// `v_p(a)` for a nonzero integer.
pub fn int_padic_valuation(a: &BigInt, p: u64) -> Result<PAdicValue> {
    padic_valuation(&BigRational::from_integer(a.clone()), p)
}
