use rand::Rng;
use serde::Serialize;

use super::derived::{exterior_matrix, gamma_matrix, multi_indices, subsets};
use crate::complexes::random::random_invertible;
use crate::complexes::{homology_report, GradedSliceComplex, HomologyReport};
use crate::error::{Error, Result};
use crate::exactlin::{row_span_length, solve, ModMatrix, ModRing};
use crate::polyalg::wedge_sign;

#[derive(Clone, Debug, Serialize)]
pub struct KoszulReport {
    /// Ranks in degrees `0..=n+1`; degree `n+1` is `Γⁿ(E)`.
    pub ranks: Vec<usize>,
    #[serde(skip)]
    pub complex: GradedSliceComplex,
    pub homology: HomologyReport,
    pub exact: bool,
}

/// `0 → Γⁿ(E) → Γⁿ(F) → Γ^{n-1}(F)⊗G → … → ∧ⁿG → 0` for `u: E → F`, `v: F → G`
/// (matrices acting on columns), with `d(γ_I ⊗ e_S) = Σ_j γ_{I-e_j} ⊗ v(f_j) ∧ e_S`.
pub fn koszul_gamma_complex(u: &ModMatrix, v: &ModMatrix, n: u32) -> Result<KoszulReport> {
    let ring = u.ring();
    if v.cols() != u.rows() || v.ring() != ring {
        return Err(Error::Dimension(format!("cannot compose {:?} after {:?}", v.shape(), u.shape())));
    }
    if !v.mul(u)?.is_zero() {
        return Err(Error::NotAComplex("v∘u ≠ 0".into()));
    }
    let (f, g) = (u.rows(), v.rows());
    // Degree n - i carries Γ^{n-i}(F) ⊗ ∧^i G, basis pairs (I, S).
    let term = |i: usize| -> Vec<(Vec<u32>, Vec<usize>)> {
        let mut out = Vec::new();
        for idx in multi_indices(f, n - i as u32) {
            for s in subsets(g, i) {
                out.push((idx.clone(), s));
            }
        }
        out
    };
    let terms: Vec<_> = (0..=n as usize).map(term).collect();
    let mut ranks: Vec<usize> = (0..=n as usize).rev().map(|i| terms[i].len()).collect();
    ranks.push(multi_indices(u.cols(), n).len());
    let mut diffs = Vec::new();
    // diffs[k]: degree k+1 → degree k, i.e. term i = n-k-1 → term i+1.
    for k in 0..n as usize {
        let i = n as usize - k - 1;
        let (src, tgt) = (&terms[i], &terms[i + 1]);
        let mut d = ModMatrix::zeros(ring, tgt.len(), src.len());
        for (c, (idx, s)) in src.iter().enumerate() {
            let mask: u64 = s.iter().map(|&b| 1u64 << b).sum();
            for j in 0..f {
                if idx[j] == 0 {
                    continue;
                }
                let mut lower = idx.clone();
                lower[j] -= 1;
                for l in 0..g {
                    let coef = v.get(l, j);
                    if coef == 0 || mask & (1 << l) != 0 {
                        continue;
                    }
                    let sign = wedge_sign(1 << l, mask);
                    let mut t: Vec<usize> = s.clone();
                    t.push(l);
                    t.sort_unstable();
                    let r = tgt.iter().position(|(a, b)| *a == lower && *b == t).expect("target basis element");
                    let val = if sign < 0 { ring.neg(coef) } else { coef };
                    d.add_to(r, c, val);
                }
            }
        }
        diffs.push(d);
    }
    diffs.push(gamma_matrix(u, n)?);
    let complex = GradedSliceComplex::ungraded(ring, 0, ranks.clone(), diffs)?;
    let homology = homology_report(&complex);
    let exact = homology.entries.iter().all(|e| e.invariants.is_zero());
    Ok(KoszulReport { ranks, complex, homology, exact })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FiltrationPiece {
    pub a: usize,
    pub graded_rank: usize,
    /// `rank ∧^{i-a}M′ · rank ∧^a M″`.
    pub expected: usize,
    /// The section's complement realises `gr_a` as a direct summand.
    pub split: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ExteriorFiltrationReport {
    pub i: usize,
    pub pieces: Vec<FiltrationPiece>,
    pub total_rank: usize,
    pub consistent: bool,
}

fn binom(n: usize, k: usize) -> usize {
    subsets(n, k).len()
}

/// Coordinates in `∧^i M` of `x_1 ∧ … ∧ x_i` for column vectors `x_j`.
fn wedge_of_columns(ring: ModRing, cols: &[Vec<u64>], m: usize) -> Vec<u64> {
    let a = ModMatrix::from_fn(ring, m, cols.len(), |r, c| cols[c][r]);
    exterior_matrix(&a, cols.len()).column(0)
}

/// Filtration `I_a = Im(∧^{i-a}M′ ⊗ ∧^a M → ∧^i M)` for a split exact
/// `0 → M′ -u→ M -v→ M″ → 0` of free modules. Without a section one is solved for;
/// a non-split (or non-exact) input is rejected.
pub fn exterior_filtration(u: &ModMatrix, v: &ModMatrix, section: Option<&ModMatrix>, i: usize) -> Result<ExteriorFiltrationReport> {
    let ring = u.ring();
    let (m, r1) = u.shape();
    let r2 = v.rows();
    let n = ring.n() as u64;
    if v.cols() != m || !v.mul(u)?.is_zero() {
        return Err(Error::NotAComplex("v∘u ≠ 0".into()));
    }
    if r1 + r2 != m || row_span_length(&u.transpose()) != r1 as u64 * n {
        return Err(Error::Hypothesis("sequence is not short exact with free terms".into()));
    }
    let s = match section {
        Some(s) => s.clone(),
        None => {
            let mut s = ModMatrix::zeros(ring, m, r2);
            for j in 0..r2 {
                let e: Vec<u64> = (0..r2).map(|k| u64::from(k == j)).collect();
                let x = solve(v, &e)?.ok_or_else(|| Error::Hypothesis("v is not surjective, no splitting".into()))?;
                for (k, val) in x.into_iter().enumerate() {
                    s.set(k, j, val);
                }
            }
            s
        }
    };
    if s.shape() != (m, r2) || v.mul(&s)? != ModMatrix::identity(ring, r2) {
        return Err(Error::Hypothesis("supplied section does not split v".into()));
    }
    let dim = binom(m, i);
    let span = |vectors: &[Vec<u64>]| -> ModMatrix {
        let mut out = ModMatrix::zeros(ring, vectors.len(), dim);
        for (r, x) in vectors.iter().enumerate() {
            for (c, &val) in x.iter().enumerate() {
                out.set(r, c, val);
            }
        }
        out
    };
    let len = |vectors: &[Vec<u64>]| row_span_length(&span(vectors));
    // I_a generated by u(e'_S) ∧ e_T; the complement by u(e'_S) ∧ s(e''_T).
    let level = |a: usize| -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        if a > i {
            return out;
        }
        for sset in subsets(r1, i - a) {
            for t in subsets(m, a) {
                let mut cols: Vec<Vec<u64>> = sset.iter().map(|&j| u.column(j)).collect();
                cols.extend(t.iter().map(|&k| (0..m).map(|r| u64::from(r == k)).collect()));
                out.push(wedge_of_columns(ring, &cols, m));
            }
        }
        out
    };
    let complement = |a: usize| -> Vec<Vec<u64>> {
        let mut out = Vec::new();
        for sset in subsets(r1, i - a) {
            for t in subsets(r2, a) {
                let mut cols: Vec<Vec<u64>> = sset.iter().map(|&j| u.column(j)).collect();
                cols.extend(t.iter().map(|&k| s.column(k)));
                out.push(wedge_of_columns(ring, &cols, m));
            }
        }
        out
    };
    let mut pieces = Vec::new();
    let mut prev: Vec<Vec<u64>> = Vec::new();
    let mut consistent = true;
    for a in 0..=i {
        let cur = level(a);
        let (lc, lp) = (len(&cur), len(&prev));
        let graded_rank = ((lc - lp) / n) as usize;
        let expected = binom(r1, i - a) * binom(r2, a);
        let comp = complement(a);
        let mut joined = prev.clone();
        joined.extend(comp.iter().cloned());
        let split = len(&comp) == expected as u64 * n && len(&joined) == lc && lc == lp + expected as u64 * n;
        consistent &= split && graded_rank == expected && (lc - lp) % n == 0;
        pieces.push(FiltrationPiece { a, graded_rank, expected, split });
        prev = cur;
    }
    let total_rank = (len(&prev) / n) as usize;
    consistent &= total_rank == dim;
    Ok(ExteriorFiltrationReport { i, pieces, total_rank, consistent })
}

/// A random split short exact sequence `0 → A^{r1} -u→ A^{r1+r2} -v→ A^{r2} → 0`
/// with a section `s` of `v`, scrambled by a random automorphism of the middle term.
pub fn random_split_exact<R: Rng + ?Sized>(ring: ModRing, r1: usize, r2: usize, rng: &mut R) -> (ModMatrix, ModMatrix, ModMatrix) {
    let m = r1 + r2;
    let (p, q) = random_invertible(ring, m, rng);
    let u = p.select_cols(&(0..r1).collect::<Vec<_>>());
    let s = p.select_cols(&(r1..m).collect::<Vec<_>>());
    let v = q.select_rows(&(r1..m).collect::<Vec<_>>());
    (u, v, s)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn split_inclusion(ring: ModRing, r1: usize, r2: usize) -> (ModMatrix, ModMatrix) {
        let m = r1 + r2;
        let u = ModMatrix::from_fn(ring, m, r1, |r, c| u64::from(r == c));
        let v = ModMatrix::from_fn(ring, r2, m, |r, c| u64::from(c == r + r1));
        (u, v)
    }

    #[test]
    fn koszul_ranks_for_a_split_line() {
        let ring = ModRing::new(3, 2).unwrap();
        let (u, v) = split_inclusion(ring, 1, 1);
        let k = koszul_gamma_complex(&u, &v, 2).unwrap();
        assert_eq!(k.ranks, vec![0, 2, 3, 1]);
        assert!(k.exact);
    }

    #[test]
    fn koszul_degenerate_sequences() {
        let ring = ModRing::new(2, 1).unwrap();
        let (u, v) = split_inclusion(ring, 1, 0);
        for n in 0..4 {
            assert!(koszul_gamma_complex(&u, &v, n).unwrap().exact, "n = {n}");
        }
        let (u, v) = split_inclusion(ring, 0, 1);
        assert!(koszul_gamma_complex(&u, &v, 1).unwrap().exact);
    }

    #[test]
    fn koszul_detects_non_exactness() {
        let ring = ModRing::new(3, 1).unwrap();
        let u = ModMatrix::zeros(ring, 1, 1);
        let v = ModMatrix::zeros(ring, 1, 1);
        assert!(!koszul_gamma_complex(&u, &v, 1).unwrap().exact);
        let bad = ModMatrix::identity(ring, 1);
        assert!(koszul_gamma_complex(&bad, &bad, 1).is_err());
    }

    #[test]
    fn exterior_filtration_of_a_plane_in_three_space() {
        let ring = ModRing::new(5, 1).unwrap();
        let (u, v) = split_inclusion(ring, 1, 2);
        let r = exterior_filtration(&u, &v, None, 2).unwrap();
        assert_eq!(r.pieces.iter().map(|p| p.graded_rank).collect::<Vec<_>>(), vec![0, 2, 1]);
        assert_eq!(r.total_rank, 3);
        assert!(r.consistent);
        let zero = exterior_filtration(&u, &v, None, 4).unwrap();
        assert_eq!(zero.total_rank, 0);
        let one = exterior_filtration(&u, &v, None, 0).unwrap();
        assert_eq!(one.pieces.len(), 1);
        assert_eq!(one.total_rank, 1);
    }

    #[test]
    fn non_split_input_is_rejected() {
        let ring = ModRing::new(2, 2).unwrap();
        // 2: A -> A with cokernel Z/2, not a split sequence of free modules.
        let u = ModMatrix::from_rows(ring, &[vec![2]]).unwrap();
        let v = ModMatrix::zeros(ring, 0, 1);
        assert!(exterior_filtration(&u, &v, None, 1).is_err());
        let (u, v) = split_inclusion(ring, 1, 1);
        let wrong = ModMatrix::from_rows(ring, &[vec![0], vec![2]]).unwrap();
        assert!(exterior_filtration(&u, &v, Some(&wrong), 1).is_err());
    }
}
