use std::sync::Arc;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{Signed, Zero};

use super::polys::{structure_polynomials, StructurePolynomialTable};
use super::ring::{check_enumerable, FiniteRing};
use crate::error::{Error, Result};

/// `W_n(R)` for a prime `p`; elements are coordinate vectors `(a_0, …, a_{n-1})`.
#[derive(Clone, Debug)]
pub struct WittRing<R: FiniteRing> {
    base: R,
    p: u64,
    n: usize,
    table: Arc<StructurePolynomialTable>,
}

/// A Witt vector is its coordinate list.
pub type WittVector<E> = Vec<E>;

impl<R: FiniteRing> WittRing<R> {
    pub fn new(base: R, p: u64, n: usize) -> Result<Self> {
        let table = structure_polynomials(p, n)?;
        Ok(WittRing { base, p, n, table })
    }

    pub fn base(&self) -> &R {
        &self.base
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn len(&self) -> usize {
        self.n
    }

    pub fn is_empty(&self) -> bool {
        self.n == 0
    }

    pub fn table(&self) -> &StructurePolynomialTable {
        &self.table
    }

    pub fn check(&self, a: &[R::Elem]) -> Result<()> {
        if a.len() != self.n {
            return Err(Error::Dimension(format!("Witt vector of length {} in W_{}", a.len(), self.n)));
        }
        Ok(())
    }

    /// Teichmüller representative `[x] = (x, 0, …, 0)`.
    pub fn teichmuller(&self, x: &R::Elem) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero(); self.n];
        v[0] = x.clone();
        v
    }

    /// `V(a_0, …, a_{n-2}, a_{n-1}) = (0, a_0, …, a_{n-2})`.
    pub fn verschiebung(&self, a: &[R::Elem]) -> Vec<R::Elem> {
        let mut v = vec![self.base.zero()];
        v.extend(a[..self.n - 1].iter().cloned());
        v
    }

    /// Coordinatewise `p`-th power; the Witt Frobenius when `R` has characteristic `p`.
    pub fn frobenius(&self, a: &[R::Elem]) -> Vec<R::Elem> {
        a.iter().map(|x| self.base.pow(x, self.p)).collect()
    }

    /// Ghost components `w_i = Σ_{j≤i} p^j a_j^{p^{i-j}}` in `R`.
    pub fn ghost(&self, a: &[R::Elem]) -> Vec<R::Elem> {
        let r = &self.base;
        (0..self.n)
            .map(|i| {
                (0..=i).fold(r.zero(), |acc, j| {
                    let pj = r.from_big(&BigInt::from(self.p).pow(j as u32));
                    r.add(&acc, &r.mul(&pj, &r.pow(&a[j], self.p.pow((i - j) as u32))))
                })
            })
            .collect()
    }

    fn apply2(&self, polys: &[super::polys::IntMvPoly], a: &[R::Elem], b: &[R::Elem]) -> Vec<R::Elem> {
        let vals: Vec<R::Elem> = a.iter().chain(b).cloned().collect();
        polys.iter().map(|f| f.eval(&self.base, &vals)).collect()
    }

    fn double(&self, a: &[R::Elem]) -> Vec<R::Elem> {
        self.add(&a.to_vec(), &a.to_vec())
    }
}

impl<R: FiniteRing> FiniteRing for WittRing<R> {
    type Elem = Vec<R::Elem>;

    fn zero(&self) -> Self::Elem {
        vec![self.base.zero(); self.n]
    }

    fn one(&self) -> Self::Elem {
        self.teichmuller(&self.base.one())
    }

    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.apply2(&self.table.sum, a, b)
    }

    fn neg(&self, a: &Self::Elem) -> Self::Elem {
        let pad: Vec<R::Elem> = vec![self.base.zero(); self.n];
        self.apply2(&self.table.negation, a, &pad)
    }

    fn mul(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem {
        self.apply2(&self.table.product, a, b)
    }

    /// `c·1` by double-and-add.
    fn from_big(&self, c: &BigInt) -> Self::Elem {
        let mut acc = self.zero();
        let mut base = self.one();
        let mut k = c.abs();
        let two = BigInt::from(2);
        while !k.is_zero() {
            if k.is_odd() {
                acc = self.add(&acc, &base);
            }
            k = k.div_floor(&two);
            if !k.is_zero() {
                base = self.double(&base);
            }
        }
        if c.is_negative() {
            self.neg(&acc)
        } else {
            acc
        }
    }

    fn size(&self) -> Option<u64> {
        self.base.size()?.checked_pow(self.n as u32)
    }

    fn elements(&self) -> Result<Vec<Self::Elem>> {
        check_enumerable(self.size(), "Witt ring")?;
        let base = self.base.elements()?;
        let mut out: Vec<Vec<R::Elem>> = vec![Vec::new()];
        for _ in 0..self.n {
            out = out.into_iter().flat_map(|v| base.iter().map(move |x| [v.clone(), vec![x.clone()]].concat())).collect();
        }
        Ok(out)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ModRing;

    #[test]
    fn one_plus_one_in_w2_f2() {
        let w = WittRing::new(ModRing::new(2, 1).unwrap(), 2, 2).unwrap();
        assert_eq!(w.add(&vec![1, 0], &vec![1, 0]), vec![0, 1]);
        assert_eq!(w.from_i64(2), vec![0, 1]);
        assert_eq!(w.from_i64(4), vec![0, 0]);
        assert_eq!(w.from_i64(-1), w.from_i64(3));
    }

    #[test]
    fn teichmuller_is_multiplicative() {
        let base = ModRing::new(3, 2).unwrap();
        let w = WittRing::new(base, 3, 2).unwrap();
        for x in 0..9 {
            for y in 0..9 {
                assert_eq!(w.mul(&w.teichmuller(&x), &w.teichmuller(&y)), w.teichmuller(&base.mul(x, y)));
            }
        }
        assert_eq!(w.mul(&w.one(), &vec![4, 7]), vec![4, 7]);
    }

    #[test]
    fn verschiebung_of_one_is_p_over_f_p() {
        let w = WittRing::new(ModRing::new(3, 1).unwrap(), 3, 3).unwrap();
        assert_eq!(w.verschiebung(&w.one()), w.from_i64(3));
        assert_eq!(w.frobenius(&w.verschiebung(&w.one())), w.from_i64(3));
    }
}
