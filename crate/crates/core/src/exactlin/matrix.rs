//! Dense matrices over `Z/p^n`.

use std::fmt;

use super::ring::ModRing;
use crate::error::{Error, Result};

/// Dense row-major matrix with entries in a fixed residue ring.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct ModMatrix {
    ring: ModRing,
    rows: usize,
    cols: usize,
    data: Vec<u64>,
}

impl ModMatrix {
    pub fn zeros(ring: ModRing, rows: usize, cols: usize) -> Self {
        ModMatrix { ring, rows, cols, data: vec![0; rows * cols] }
    }

    pub fn identity(ring: ModRing, n: usize) -> Self {
        let mut m = Self::zeros(ring, n, n);
        for i in 0..n {
            m.data[i * n + i] = 1 % ring.modulus();
        }
        m
    }

    pub fn from_rows(ring: ModRing, rows: &[Vec<i64>]) -> Result<Self> {
        let cols = rows.first().map_or(0, |r| r.len());
        if rows.iter().any(|r| r.len() != cols) {
            return Err(Error::Dimension("ragged rows".into()));
        }
        let data = rows.iter().flatten().map(|&v| ring.reduce_i64(v)).collect();
        Ok(ModMatrix { ring, rows: rows.len(), cols, data })
    }

    /// Build from already reduced residues in row-major order.
    pub fn from_data(ring: ModRing, rows: usize, cols: usize, data: Vec<u64>) -> Self {
        assert_eq!(data.len(), rows * cols);
        let data = data.into_iter().map(|v| ring.reduce_u64(v)).collect();
        ModMatrix { ring, rows, cols, data }
    }

    pub fn from_fn(ring: ModRing, rows: usize, cols: usize, mut f: impl FnMut(usize, usize) -> u64) -> Self {
        let mut data = Vec::with_capacity(rows * cols);
        for i in 0..rows {
            for j in 0..cols {
                data.push(ring.reduce_u64(f(i, j)));
            }
        }
        ModMatrix { ring, rows, cols, data }
    }

    pub fn ring(&self) -> ModRing {
        self.ring
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> u64 {
        self.data[i * self.cols + j]
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize, v: u64) {
        self.data[i * self.cols + j] = self.ring.reduce_u64(v);
    }

    /// `self[i][j] += v`.
    #[inline]
    pub fn add_to(&mut self, i: usize, j: usize, v: u64) {
        let idx = i * self.cols + j;
        self.data[idx] = self.ring.add(self.data[idx], self.ring.reduce_u64(v));
    }

    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.cols..(i + 1) * self.cols]
    }

    pub fn column(&self, j: usize) -> Vec<u64> {
        (0..self.rows).map(|i| self.get(i, j)).collect()
    }

    pub fn data(&self) -> &[u64] {
        &self.data
    }

    pub fn to_rows(&self) -> Vec<Vec<u64>> {
        (0..self.rows).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_zero(&self) -> bool {
        self.data.iter().all(|&v| v == 0)
    }

    pub fn transpose(&self) -> Self {
        ModMatrix::from_fn(self.ring, self.cols, self.rows, |i, j| self.get(j, i))
    }

    fn same_ring(&self, other: &Self) -> Result<()> {
        if self.ring != other.ring {
            return Err(Error::RingMismatch(format!("{} vs {}", self.ring, other.ring)));
        }
        Ok(())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.cols != other.rows {
            return Err(Error::Dimension(format!(
                "cannot multiply {}x{} by {}x{}",
                self.rows, self.cols, other.rows, other.cols
            )));
        }
        let r = self.ring;
        let m = r.modulus();
        let mut out = ModMatrix::zeros(r, self.rows, other.cols);
        if m <= 1 << 26 {
            // Products stay below 2^52, so 2^11 of them fit in a u64 before reducing.
            let mut acc = vec![0u64; other.cols];
            for i in 0..self.rows {
                acc.iter_mut().for_each(|a| *a = 0);
                let mut pending = 0usize;
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a == 0 {
                        continue;
                    }
                    let brow = other.row(k);
                    for (acc_j, &b) in acc.iter_mut().zip(brow) {
                        *acc_j += a * b;
                    }
                    pending += 1;
                    if pending == 2048 {
                        acc.iter_mut().for_each(|a| *a %= m);
                        pending = 0;
                    }
                }
                for (j, a) in acc.iter().enumerate() {
                    out.data[i * other.cols + j] = a % m;
                }
            }
        } else {
            for i in 0..self.rows {
                for k in 0..self.cols {
                    let a = self.get(i, k);
                    if a == 0 {
                        continue;
                    }
                    for j in 0..other.cols {
                        let idx = i * other.cols + j;
                        out.data[idx] = r.mul_add(a, other.get(k, j), out.data[idx]);
                    }
                }
            }
        }
        Ok(out)
    }

    pub fn mul_vec(&self, v: &[u64]) -> Result<Vec<u64>> {
        if v.len() != self.cols {
            return Err(Error::Dimension(format!("vector of length {} for {} columns", v.len(), self.cols)));
        }
        let r = self.ring;
        Ok((0..self.rows)
            .map(|i| self.row(i).iter().zip(v).fold(0, |acc, (&a, &b)| r.mul_add(a, b, acc)))
            .collect())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.shape() != other.shape() {
            return Err(Error::Dimension("shape mismatch in addition".into()));
        }
        let data = self.data.iter().zip(&other.data).map(|(&a, &b)| self.ring.add(a, b)).collect();
        Ok(ModMatrix { ring: self.ring, rows: self.rows, cols: self.cols, data })
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.scale(self.ring.neg(1 % self.ring.modulus())))
    }

    pub fn scale(&self, c: u64) -> Self {
        let data = self.data.iter().map(|&a| self.ring.mul(a, c)).collect();
        ModMatrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    pub fn neg(&self) -> Self {
        let data = self.data.iter().map(|&a| self.ring.neg(a)).collect();
        ModMatrix { ring: self.ring, rows: self.rows, cols: self.cols, data }
    }

    /// Rows of `self` followed by rows of `other`.
    pub fn vstack(&self, other: &Self) -> Result<Self> {
        self.same_ring(other)?;
        if self.cols != other.cols && self.rows > 0 && other.rows > 0 {
            return Err(Error::Dimension("column mismatch in vstack".into()));
        }
        let cols = if self.rows > 0 { self.cols } else { other.cols };
        let mut data = self.data.clone();
        data.extend_from_slice(&other.data);
        Ok(ModMatrix { ring: self.ring, rows: self.rows + other.rows, cols, data })
    }

    pub fn hstack(&self, other: &Self) -> Result<Self> {
        Ok(self.transpose().vstack(&other.transpose())?.transpose())
    }

    /// Copy `block` into `self` with its top-left corner at `(r0, c0)`.
    pub fn set_block(&mut self, r0: usize, c0: usize, block: &ModMatrix) {
        for i in 0..block.rows {
            for j in 0..block.cols {
                self.data[(r0 + i) * self.cols + c0 + j] = block.get(i, j);
            }
        }
    }

    pub fn submatrix(&self, rows: std::ops::Range<usize>, cols: std::ops::Range<usize>) -> Self {
        ModMatrix::from_fn(self.ring, rows.len(), cols.len(), |i, j| self.get(rows.start + i, cols.start + j))
    }

    pub fn select_rows(&self, idx: &[usize]) -> Self {
        ModMatrix::from_fn(self.ring, idx.len(), self.cols, |i, j| self.get(idx[i], j))
    }

    pub fn select_cols(&self, idx: &[usize]) -> Self {
        ModMatrix::from_fn(self.ring, self.rows, idx.len(), |i, j| self.get(i, idx[j]))
    }

    /// Same residues read in a ring of smaller exponent (reduction `Z/p^n -> Z/p^k`).
    pub fn reduce_to(&self, target: ModRing) -> Result<Self> {
        if target.p() != self.ring.p() || target.n() > self.ring.n() {
            return Err(Error::RingMismatch(format!("cannot reduce {} to {}", self.ring, target)));
        }
        Ok(ModMatrix::from_fn(target, self.rows, self.cols, |i, j| self.get(i, j)))
    }

    pub(crate) fn swap_rows(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for j in 0..self.cols {
            self.data.swap(a * self.cols + j, b * self.cols + j);
        }
    }

    pub(crate) fn swap_cols(&mut self, a: usize, b: usize) {
        if a == b {
            return;
        }
        for i in 0..self.rows {
            self.data.swap(i * self.cols + a, i * self.cols + b);
        }
    }

    /// `row[target] += c * row[source]`.
    pub(crate) fn add_row_multiple(&mut self, target: usize, source: usize, c: u64) {
        if c == 0 {
            return;
        }
        let r = self.ring;
        for j in 0..self.cols {
            let s = self.data[source * self.cols + j];
            if s != 0 {
                let idx = target * self.cols + j;
                self.data[idx] = r.mul_add(c, s, self.data[idx]);
            }
        }
    }

    /// `col[target] += c * col[source]`.
    pub(crate) fn add_col_multiple(&mut self, target: usize, source: usize, c: u64) {
        if c == 0 {
            return;
        }
        let r = self.ring;
        for i in 0..self.rows {
            let s = self.data[i * self.cols + source];
            if s != 0 {
                let idx = i * self.cols + target;
                self.data[idx] = r.mul_add(c, s, self.data[idx]);
            }
        }
    }

    /// Kronecker product; index `(i, k)` of the result is `i * other.rows() + k`.
    pub fn kron(&self, other: &Self) -> Self {
        let r = self.ring;
        let (br, bc) = other.shape();
        let mut out = ModMatrix::zeros(r, self.rows * br, self.cols * bc);
        for i in 0..self.rows {
            for j in 0..self.cols {
                let a = self.get(i, j);
                if a == 0 {
                    continue;
                }
                for k in 0..br {
                    for l in 0..bc {
                        out.set(i * br + k, j * bc + l, r.mul(a, other.get(k, l)));
                    }
                }
            }
        }
        out
    }

    pub(crate) fn scale_col(&mut self, j: usize, c: u64) {
        let r = self.ring;
        for i in 0..self.rows {
            let idx = i * self.cols + j;
            self.data[idx] = r.mul(self.data[idx], c);
        }
    }

    pub(crate) fn scale_row(&mut self, i: usize, c: u64) {
        let r = self.ring;
        for j in 0..self.cols {
            let idx = i * self.cols + j;
            self.data[idx] = r.mul(self.data[idx], c);
        }
    }
}

impl fmt::Debug for ModMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "ModMatrix {}x{} over {}", self.rows, self.cols, self.ring)?;
        for i in 0..self.rows {
            writeln!(f, "  {:?}", self.row(i))?;
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multiply_and_stack() {
        let r = ModRing::new(2, 2).unwrap();
        let a = ModMatrix::from_rows(r, &[vec![1, 2], vec![3, 1]]).unwrap();
        let b = ModMatrix::from_rows(r, &[vec![1, 0], vec![1, 1]]).unwrap();
        let ab = a.mul(&b).unwrap();
        assert_eq!(ab.to_rows(), vec![vec![3, 2], vec![0, 1]]);
        let s = a.vstack(&b).unwrap();
        assert_eq!(s.shape(), (4, 2));
        let h = a.hstack(&b).unwrap();
        assert_eq!(h.row(1), &[3, 1, 1, 1]);
    }

    #[test]
    fn large_modulus_product() {
        let r = ModRing::new(3, 30).unwrap();
        let a = ModMatrix::from_data(r, 1, 1, vec![r.modulus() - 1]);
        assert_eq!(a.mul(&a).unwrap().get(0, 0), 1);
    }
}
