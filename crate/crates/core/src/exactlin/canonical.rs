//! Canonical forms over the local ring `Z/p^n`: Smith form with certificates,
//! Howell form, kernels, linear solving and span lengths.

use super::matrix::ModMatrix;
use super::ring::ModRing;
use crate::error::{Error, Result};

/// `left * m * right = diag`, with `diag` carrying `p^{v_1}, p^{v_2}, ...`
/// on its diagonal, `v_1 <= v_2 <= ...`.
#[derive(Clone, Debug)]
pub struct ModSmith {
    pub diag: ModMatrix,
    pub left: ModMatrix,
    pub right: ModMatrix,
    /// Valuations of the diagonal entries, `n` standing for a zero entry.
    pub valuations: Vec<u32>,
}

impl ModSmith {
    /// Number of diagonal entries that are nonzero.
    pub fn rank(&self) -> usize {
        let n = self.diag.ring().n();
        self.valuations.iter().take_while(|&&v| v < n).count()
    }
}

/// Smith normal form over `Z/p^n`. Pivoting on an entry of minimal valuation
/// always works because that entry divides every other one.
pub fn smith_mod(m: &ModMatrix) -> ModSmith {
    smith_mod_impl(m, true)
}

/// Diagonal valuations only; skips certificate bookkeeping.
pub fn smith_valuations(m: &ModMatrix) -> Vec<u32> {
    smith_mod_impl(m, false).valuations
}

fn smith_mod_impl(m: &ModMatrix, certify: bool) -> ModSmith {
    let ring = m.ring();
    let (rows, cols) = m.shape();
    let mut a = m.clone();
    let (mut left, mut right) = if certify {
        (ModMatrix::identity(ring, rows), ModMatrix::identity(ring, cols))
    } else {
        (ModMatrix::zeros(ring, 0, 0), ModMatrix::zeros(ring, 0, 0))
    };
    let n = ring.n();
    let steps = rows.min(cols);
    let mut valuations = Vec::with_capacity(steps);
    for k in 0..steps {
        // Find pivot of minimal valuation in the trailing block.
        let mut best: Option<(u32, usize, usize)> = None;
        'search: for i in k..rows {
            for j in k..cols {
                let e = a.get(i, j);
                if e == 0 {
                    continue;
                }
                let v = ring.valuation(e);
                if best.is_none_or(|(bv, _, _)| v < bv) {
                    best = Some((v, i, j));
                    if v == 0 {
                        break 'search;
                    }
                }
            }
        }
        let Some((v, pi, pj)) = best else {
            valuations.extend(std::iter::repeat_n(n, steps - k));
            break;
        };
        a.swap_rows(k, pi);
        a.swap_cols(k, pj);
        if certify {
            left.swap_rows(k, pi);
            right.swap_cols(k, pj);
        }
        let (_, unit) = ring.split_unit(a.get(k, k));
        let uinv = ring.inv(unit).expect("unit part is invertible");
        a.scale_row(k, uinv);
        if certify {
            left.scale_row(k, uinv);
        }
        let pivot = a.get(k, k);
        debug_assert_eq!(pivot, ring.p_power(v));
        let pv = pivot;
        for i in k + 1..rows {
            let e = a.get(i, k);
            if e == 0 {
                continue;
            }
            let q = e / pv;
            let c = ring.neg(q);
            a.add_row_multiple(i, k, c);
            if certify {
                left.add_row_multiple(i, k, c);
            }
        }
        for j in k + 1..cols {
            let e = a.get(k, j);
            if e == 0 {
                continue;
            }
            let q = e / pv;
            let c = ring.neg(q);
            a.add_col_multiple(j, k, c);
            if certify {
                right.add_col_multiple(j, k, c);
            }
        }
        valuations.push(v);
    }
    ModSmith { diag: a, left, right, valuations }
}

/// Invariant-factor exponents `e` (module `Z/p^e`) of the cokernel of `m`
/// viewed as a relation matrix: rows are relations, columns generators.
pub fn cokernel_exponents(relations: &ModMatrix, generators: usize) -> Vec<u32> {
    let ring = relations.ring();
    let n = ring.n();
    let vals = if relations.rows() == 0 || relations.cols() == 0 {
        Vec::new()
    } else {
        smith_valuations(relations)
    };
    let mut out: Vec<u32> = vals.iter().copied().filter(|&v| v > 0).collect();
    out.extend(std::iter::repeat_n(n, generators.saturating_sub(vals.len())));
    out.retain(|&e| e > 0);
    out.sort_unstable();
    out
}

/// Length (over `Z/p^n`, i.e. `log_p` of the cardinality) of the row span.
pub fn row_span_length(m: &ModMatrix) -> u64 {
    if m.rows() == 0 || m.cols() == 0 {
        return 0;
    }
    let n = m.ring().n();
    smith_valuations(m).iter().map(|&v| (n - v) as u64).sum()
}

/// Generators (as columns) of `{x : m x = 0}`.
pub fn kernel_columns(m: &ModMatrix) -> ModMatrix {
    let ring = m.ring();
    let (rows, cols) = m.shape();
    if cols == 0 {
        return ModMatrix::zeros(ring, 0, 0);
    }
    if rows == 0 {
        return ModMatrix::identity(ring, cols);
    }
    let s = smith_mod(m);
    let n = ring.n();
    let mut gens: Vec<Vec<u64>> = Vec::new();
    for j in 0..cols {
        let v = if j < s.valuations.len() { s.valuations[j] } else { n };
        if v == 0 {
            continue;
        }
        let scale = ring.p_power(n - v);
        let col: Vec<u64> = s.right.column(j).iter().map(|&e| ring.mul(e, scale)).collect();
        if col.iter().any(|&e| e != 0) {
            gens.push(col);
        }
    }
    let mut out = ModMatrix::zeros(ring, cols, gens.len());
    for (j, g) in gens.iter().enumerate() {
        for (i, &e) in g.iter().enumerate() {
            out.set(i, j, e);
        }
    }
    out
}

/// Some `x` with `m x = b`, or `None` when `b` is not in the column span.
pub fn solve(m: &ModMatrix, b: &[u64]) -> Result<Option<Vec<u64>>> {
    let ring = m.ring();
    let (rows, cols) = m.shape();
    if b.len() != rows {
        return Err(Error::Dimension(format!("right-hand side of length {} for {} rows", b.len(), rows)));
    }
    if rows == 0 {
        return Ok(Some(vec![0; cols]));
    }
    if cols == 0 {
        return Ok(b.iter().all(|&e| e == 0).then(Vec::new));
    }
    let s = smith_mod(m);
    let ub = s.left.mul_vec(b)?;
    let mut y = vec![0u64; cols];
    for i in 0..rows {
        let target = ub[i];
        if i < s.valuations.len() && i < cols {
            let d = s.diag.get(i, i);
            match ring.div(target, d) {
                Some(q) if d != 0 || target == 0 => y[i] = q,
                _ => return Ok(None),
            }
        } else if target != 0 {
            return Ok(None);
        }
    }
    Ok(Some(s.right.mul_vec(&y)?))
}

/// Howell form of the row span: echelon form with pivots `p^v`, entries above
/// each pivot reduced below it, and the Howell closure property. Two
/// generating sets of the same row span give identical results.
pub fn howell_form(m: &ModMatrix) -> ModMatrix {
    let ring = m.ring();
    let cols = m.cols();
    let mut rows: Vec<Vec<u64>> = m.to_rows().into_iter().filter(|r| r.iter().any(|&e| e != 0)).collect();
    let mut done: Vec<(usize, Vec<u64>)> = Vec::new();
    for c in 0..cols {
        let best = rows
            .iter()
            .enumerate()
            .filter(|(_, r)| r[c] != 0)
            .min_by_key(|(_, r)| ring.valuation(r[c]))
            .map(|(i, _)| i);
        let Some(bi) = best else { continue };
        let mut pivot_row = rows.swap_remove(bi);
        let (v, unit) = ring.split_unit(pivot_row[c]);
        let uinv = ring.inv(unit).expect("unit");
        pivot_row.iter_mut().for_each(|e| *e = ring.mul(*e, uinv));
        let pv = pivot_row[c];
        for r in rows.iter_mut() {
            if r[c] != 0 {
                let q = ring.neg(r[c] / pv);
                for j in c..cols {
                    r[j] = ring.mul_add(q, pivot_row[j], r[j]);
                }
            }
        }
        // Howell closure: p^{n-v} times the pivot row loses its pivot but stays in the span.
        let annihilator = ring.p_power(ring.n() - v);
        let shifted: Vec<u64> = pivot_row.iter().map(|&e| ring.mul(e, annihilator)).collect();
        if shifted.iter().any(|&e| e != 0) {
            rows.push(shifted);
        }
        rows.retain(|r| r.iter().any(|&e| e != 0));
        done.push((c, pivot_row));
    }
    // Reduce entries above each pivot into [0, p^v).
    for k in 0..done.len() {
        let (c, ref prow) = done[k];
        let pv = prow[c];
        let prow = prow.clone();
        for above in done.iter_mut().take(k) {
            let e = above.1[c];
            let q = e / pv;
            if q != 0 {
                let negq = ring.neg(q % ring.modulus());
                for j in c..cols {
                    above.1[j] = ring.mul_add(negq, prow[j], above.1[j]);
                }
            }
        }
    }
    let data: Vec<u64> = done.iter().flat_map(|(_, r)| r.iter().copied()).collect();
    ModMatrix::from_data(ring, done.len(), cols, data)
}

/// True if every row of `a` lies in the row span of `b`.
pub fn row_span_contains(b: &ModMatrix, a: &ModMatrix) -> Result<bool> {
    let bt = b.transpose();
    for i in 0..a.rows() {
        if solve(&bt, a.row(i))?.is_none() {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Exponents of the finite module `Z / B` where `Z ⊇ B` are given by
/// generating columns inside a common free module of rank `dim`.
/// Uses the counts `len(p^j Z + B)` for `j = 0..=n`.
pub fn quotient_exponents(ring: ModRing, dim: usize, z: &ModMatrix, b: &ModMatrix) -> Vec<u32> {
    let n = ring.n();
    let bt = if b.cols() == 0 { ModMatrix::zeros(ring, 0, dim) } else { b.transpose() };
    let len_b = row_span_length(&bt);
    let zt = if z.cols() == 0 { ModMatrix::zeros(ring, 0, dim) } else { z.transpose() };
    // s_j = length of p^j (Z/B)
    let mut s = Vec::with_capacity(n as usize + 2);
    for j in 0..=n {
        let scaled = zt.scale(ring.p_power(j));
        let stacked = scaled.vstack(&bt).expect("same ring");
        s.push(row_span_length(&stacked) - len_b);
    }
    s.push(0);
    let mut out = Vec::new();
    // number of summands of order >= p^{j+1} is s_j - s_{j+1}
    for e in 1..=n {
        let ge_e = s[(e - 1) as usize] - s[e as usize];
        let ge_e1 = if e < n { s[e as usize] - s[(e + 1) as usize] } else { 0 };
        for _ in 0..(ge_e - ge_e1) {
            out.push(e);
        }
    }
    out
}

/// Reduced echelon basis of a row span that is a free direct summand: each
/// basis row has a unit pivot, and pivot columns carry the identity. Returns
/// the basis rows and pivot columns; errors if the span is not a free summand.
pub fn unit_echelon(m: &ModMatrix) -> Result<(ModMatrix, Vec<usize>)> {
    let ring = m.ring();
    let cols = m.cols();
    let mut rows: Vec<Vec<u64>> = m.to_rows();
    let mut basis: Vec<Vec<u64>> = Vec::new();
    let mut pivots = Vec::new();
    for c in 0..cols {
        let Some(bi) = rows.iter().position(|r| ring.is_unit(r[c])) else { continue };
        let mut prow = rows.swap_remove(bi);
        let inv = ring.inv(prow[c]).expect("unit");
        prow.iter_mut().for_each(|e| *e = ring.mul(*e, inv));
        for r in rows.iter_mut().chain(basis.iter_mut()) {
            let f = r[c];
            if f != 0 {
                let neg = ring.neg(f);
                for j in 0..cols {
                    r[j] = ring.mul_add(neg, prow[j], r[j]);
                }
            }
        }
        rows.retain(|r| r.iter().any(|&e| e != 0));
        basis.push(prow);
        pivots.push(c);
    }
    if !rows.is_empty() {
        return Err(Error::InvalidInput("row span is not a free direct summand".into()));
    }
    // Order basis rows by pivot column.
    let mut order: Vec<usize> = (0..pivots.len()).collect();
    order.sort_by_key(|&i| pivots[i]);
    let data: Vec<u64> = order.iter().flat_map(|&i| basis[i].iter().copied()).collect();
    let pivots: Vec<usize> = order.iter().map(|&i| pivots[i]).collect();
    Ok((ModMatrix::from_data(ring, pivots.len(), cols, data), pivots))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ring(p: u64, n: u32) -> ModRing {
        ModRing::new(p, n).unwrap()
    }

    #[test]
    fn single_entry_over_z4_is_reduced() {
        let r = ring(2, 2);
        let m = ModMatrix::from_rows(r, &[vec![2]]).unwrap();
        let s = smith_mod(&m);
        assert_eq!(s.diag.to_rows(), vec![vec![2]]);
        assert_eq!(howell_form(&m).to_rows(), vec![vec![2]]);
    }

    #[test]
    fn certificates_multiply_back() {
        let r = ring(3, 2);
        let m = ModMatrix::from_rows(r, &[vec![3, 6, 1], vec![0, 3, 3], vec![6, 0, 2]]).unwrap();
        let s = smith_mod(&m);
        let prod = s.left.mul(&m).unwrap().mul(&s.right).unwrap();
        assert_eq!(prod, s.diag);
        assert!(s.valuations.windows(2).all(|w| w[0] <= w[1]));
    }

    #[test]
    fn kernel_of_doubling_on_z4() {
        let r = ring(2, 2);
        let m = ModMatrix::from_rows(r, &[vec![2]]).unwrap();
        let k = kernel_columns(&m);
        assert_eq!(k.to_rows(), vec![vec![2]]);
    }

    #[test]
    fn howell_closure_adds_annihilated_row() {
        // span{(2,1)} over Z/4 contains 2*(2,1) = (0,2).
        let r = ring(2, 2);
        let m = ModMatrix::from_rows(r, &[vec![2, 1]]).unwrap();
        assert_eq!(howell_form(&m).to_rows(), vec![vec![2, 1], vec![0, 2]]);
    }

    #[test]
    fn solving_detects_non_membership() {
        let r = ring(2, 2);
        let m = ModMatrix::from_rows(r, &[vec![2, 0], vec![0, 0]]).unwrap();
        assert!(solve(&m, &[2, 0]).unwrap().is_some());
        assert!(solve(&m, &[1, 0]).unwrap().is_none());
        assert!(solve(&m, &[0, 1]).unwrap().is_none());
    }

    #[test]
    fn unit_echelon_of_free_summand() {
        let r = ring(2, 2);
        let m = ModMatrix::from_rows(r, &[vec![2, 1, 0], vec![0, 2, 3]]).unwrap();
        let (b, piv) = unit_echelon(&m).unwrap();
        assert_eq!(piv, vec![1, 2]);
        assert_eq!(b.to_rows(), vec![vec![2, 1, 0], vec![0, 0, 1]]);
        let bad = ModMatrix::from_rows(r, &[vec![2, 0]]).unwrap();
        assert!(unit_echelon(&bad).is_err());
    }

    #[test]
    fn quotient_of_z4_by_2() {
        let r = ring(2, 2);
        let z = ModMatrix::identity(r, 1);
        let b = ModMatrix::from_rows(r, &[vec![2]]).unwrap();
        assert_eq!(quotient_exponents(r, 1, &z, &b), vec![1]);
        let z2 = ModMatrix::identity(r, 2);
        let empty = ModMatrix::zeros(r, 2, 0);
        assert_eq!(quotient_exponents(r, 2, &z2, &empty), vec![2, 2]);
    }
}
