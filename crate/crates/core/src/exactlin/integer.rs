//! Integer matrices: Smith normal form with unimodular certificates and
//! fraction-free determinants. Generic over the integer scalar so the same
//! code runs on `i64` for quick checks and on `BigInt` where sizes grow.

use std::fmt::Debug;

use num_integer::Integer;
use num_traits::Signed;

use crate::error::{Error, Result};

/// Dense integer matrix.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct IntMatrix<T> {
    rows: usize,
    cols: usize,
    data: Vec<T>,
}

impl<T> IntMatrix<T>
where
    T: Integer + Signed + Clone + Debug,
{
    pub fn zeros(rows: usize, cols: usize) -> Self {
        IntMatrix { rows, cols, data: vec![T::zero(); rows * cols] }
    }

    pub fn identity(n: usize) -> Self {
        let mut m = Self::zeros(n, n);
        for i in 0..n {
            m.data[i * n + i] = T::one();
        }
        m
    }

    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let nrows = rows.len();
        Ok(IntMatrix { rows: nrows, cols, data: rows.into_iter().flatten().collect() })
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, i: usize, j: usize) -> &T {
        &self.data[i * self.cols + j]
    }

    pub fn set(&mut self, i: usize, j: usize, v: T) {
        self.data[i * self.cols + j] = v;
    }

    pub fn to_rows(&self) -> Vec<Vec<T>> {
        (0..self.rows).map(|i| self.data[i * self.cols..(i + 1) * self.cols].to_vec()).collect()
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.cols != other.rows {
            return Err(Error::Dimension("integer matrix product".into()));
        }
        let mut out = Self::zeros(self.rows, other.cols);
        for i in 0..self.rows {
            for k in 0..self.cols {
                let a = self.get(i, k);
                if a.is_zero() {
                    continue;
                }
                for j in 0..other.cols {
                    let v = out.get(i, j).clone() + a.clone() * other.get(k, j).clone();
                    out.set(i, j, v);
                }
            }
        }
        Ok(out)
    }

    fn swap_rows(&mut self, a: usize, b: usize) {
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    fn swap_cols(&mut self, a: usize, b: usize) {
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    fn add_row_multiple(&mut self, target: usize, source: usize, c: &T) {
        for j in 0..self.cols {
            let v = self.get(target, j).clone() + c.clone() * self.get(source, j).clone();
            self.set(target, j, v);
        }
    }

    fn add_col_multiple(&mut self, target: usize, source: usize, c: &T) {
        for i in 0..self.rows {
            let v = self.get(i, target).clone() + c.clone() * self.get(i, source).clone();
            self.set(i, target, v);
        }
    }

    fn negate_row(&mut self, i: usize) {
        for j in 0..self.cols {
            let v = -self.get(i, j).clone();
            self.set(i, j, v);
        }
    }
}

/// `left * m * right = diag`, `diag` nonnegative with `d_1 | d_2 | ...`.
#[derive(Clone, Debug)]
pub struct IntSmith<T> {
    pub diag: IntMatrix<T>,
    pub left: IntMatrix<T>,
    pub right: IntMatrix<T>,
}

impl<T> IntSmith<T>
where
    T: Integer + Signed + Clone + Debug,
{
    pub fn invariant_factors(&self) -> Vec<T> {
        (0..self.diag.rows.min(self.diag.cols)).map(|i| self.diag.get(i, i).clone()).collect()
    }
}

/// Smith normal form over `Z`.
pub fn smith_int<T>(m: &IntMatrix<T>) -> IntSmith<T>
where
    T: Integer + Signed + Clone + Debug,
{
    let (rows, cols) = (m.rows, m.cols);
    let mut a = m.clone();
    let mut left = IntMatrix::identity(rows);
    let mut right = IntMatrix::identity(cols);
    for k in 0..rows.min(cols) {
        loop {
            // Smallest nonzero absolute value in the trailing block.
            let mut best: Option<(T, usize, usize)> = None;
            for i in k..rows {
                for j in k..cols {
                    let e = a.get(i, j);
                    if !e.is_zero() && best.as_ref().is_none_or(|(b, _, _)| e.abs() < *b) {
                        best = Some((e.abs(), i, j));
                    }
                }
            }
            let Some((_, pi, pj)) = best else {
                return finish(a, left, right);
            };
            a.swap_rows(k, pi);
            left.swap_rows(k, pi);
            a.swap_cols(k, pj);
            right.swap_cols(k, pj);
            let pivot = a.get(k, k).clone();
            let mut clean = true;
            for i in k + 1..rows {
                let q = a.get(i, k).div_floor(&pivot);
                if !q.is_zero() {
                    let c = -q;
                    a.add_row_multiple(i, k, &c);
                    left.add_row_multiple(i, k, &c);
                }
                if !a.get(i, k).is_zero() {
                    clean = false;
                }
            }
            for j in k + 1..cols {
                let q = a.get(k, j).div_floor(&pivot);
                if !q.is_zero() {
                    let c = -q;
                    a.add_col_multiple(j, k, &c);
                    right.add_col_multiple(j, k, &c);
                }
                if !a.get(k, j).is_zero() {
                    clean = false;
                }
            }
            if !clean {
                continue;
            }
            // Divisibility: fold any entry the pivot fails to divide into row k.
            let mut offender = None;
            'scan: for i in k + 1..rows {
                for j in k + 1..cols {
                    if !a.get(i, j).mod_floor(&pivot).is_zero() {
                        offender = Some(i);
                        break 'scan;
                    }
                }
            }
            match offender {
                Some(i) => {
                    let one = T::one();
                    a.add_row_multiple(k, i, &one);
                    left.add_row_multiple(k, i, &one);
                }
                None => break,
            }
        }
        if a.get(k, k).is_negative() {
            a.negate_row(k);
            left.negate_row(k);
        }
    }
    finish(a, left, right)
}

fn finish<T>(diag: IntMatrix<T>, left: IntMatrix<T>, right: IntMatrix<T>) -> IntSmith<T>
where
    T: Integer + Signed + Clone + Debug,
{
    IntSmith { diag, left, right }
}

/// Determinant by Bareiss fraction-free elimination.
pub fn determinant<T>(m: &IntMatrix<T>) -> Result<T>
where
    T: Integer + Signed + Clone + Debug,
{
    if m.rows != m.cols {
        return Err(Error::Dimension("determinant of a non-square matrix".into()));
    }
    let n = m.rows;
    if n == 0 {
        return Ok(T::one());
    }
    let mut a = m.clone();
    let mut sign = T::one();
    let mut prev = T::one();
    for k in 0..n - 1 {
        if a.get(k, k).is_zero() {
            let Some(swap) = (k + 1..n).find(|&i| !a.get(i, k).is_zero()) else {
                return Ok(T::zero());
            };
            a.swap_rows(k, swap);
            sign = -sign;
        }
        let akk = a.get(k, k).clone();
        for i in k + 1..n {
            for j in k + 1..n {
                let num = akk.clone() * a.get(i, j).clone() - a.get(i, k).clone() * a.get(k, j).clone();
                a.set(i, j, num.div_floor(&prev));
            }
            a.set(i, k, T::zero());
        }
        prev = akk;
    }
    Ok(sign * a.get(n - 1, n - 1).clone())
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_bigint::BigInt;

    #[test]
    fn smith_of_two_by_two() {
        let m = IntMatrix::from_rows(vec![vec![2i64, 4], vec![6, 8]]).unwrap();
        let s = smith_int(&m);
        assert_eq!(s.invariant_factors(), vec![2, 4]);
        assert_eq!(s.left.mul(&m).unwrap().mul(&s.right).unwrap(), s.diag);
    }

    #[test]
    fn identity_is_canonical() {
        let m: IntMatrix<BigInt> = IntMatrix::identity(3);
        let s = smith_int(&m);
        assert_eq!(s.diag, m);
    }

    #[test]
    fn divisibility_repair() {
        let m = IntMatrix::from_rows(vec![vec![2i64, 0], vec![0, 3]]).unwrap();
        let s = smith_int(&m);
        assert_eq!(s.invariant_factors(), vec![1, 6]);
        assert_eq!(s.left.mul(&m).unwrap().mul(&s.right).unwrap(), s.diag);
    }

    #[test]
    fn bareiss_determinant() {
        let m = IntMatrix::from_rows(vec![vec![0i64, 2, 1], vec![1, 1, 0], vec![3, 0, 1]]).unwrap();
        assert_eq!(determinant(&m).unwrap(), -5);
    }
}
