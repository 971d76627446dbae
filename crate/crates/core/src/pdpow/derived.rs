use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::algebra::{PDAlgebra, PDElement};
use crate::complexes::{homology_report, GradedSliceComplex, HomologyReport};
use crate::error::{Error, Result};
use crate::exactlin::{ModMatrix, ModRing};
use crate::simplex::{kan_transform, normalized_complex, SimplicialModule, SimplicialSlice};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Functor {
    Gamma,
    Exterior,
}

/// Multisets of size `n` from `0..r`, as multiplicity vectors, in lex order.
pub fn multi_indices(r: usize, n: u32) -> Vec<Vec<u32>> {
    fn rec(k: usize, left: u32, cur: &mut Vec<u32>, out: &mut Vec<Vec<u32>>) {
        if k + 1 == cur.len() {
            cur[k] = left;
            out.push(cur.clone());
            return;
        }
        for e in (0..=left).rev() {
            cur[k] = e;
            rec(k + 1, left - e, cur, out);
        }
    }
    if r == 0 {
        return if n == 0 { vec![Vec::new()] } else { Vec::new() };
    }
    let mut out = Vec::new();
    rec(0, n, &mut vec![0; r], &mut out);
    out
}

/// Increasing `n`-subsets of `0..r`.
pub fn subsets(r: usize, n: usize) -> Vec<Vec<usize>> {
    fn rec(start: usize, r: usize, n: usize, cur: &mut Vec<usize>, out: &mut Vec<Vec<usize>>) {
        if cur.len() == n {
            out.push(cur.clone());
            return;
        }
        for s in start..r {
            cur.push(s);
            rec(s + 1, r, n, cur, out);
            cur.pop();
        }
    }
    let mut out = Vec::new();
    rec(0, r, n, &mut Vec::new(), &mut out);
    out
}

/// Determinant by cofactor expansion; fine for the small minors used here.
pub(crate) fn det(ring: ModRing, m: &[Vec<u64>]) -> u64 {
    match m.len() {
        0 => 1,
        1 => m[0][0],
        k => {
            let mut acc = 0;
            for j in 0..k {
                if m[0][j] == 0 {
                    continue;
                }
                let minor: Vec<Vec<u64>> =
                    m[1..].iter().map(|row| row.iter().enumerate().filter(|(c, _)| *c != j).map(|(_, &v)| v).collect()).collect();
                let t = ring.mul(m[0][j], det(ring, &minor));
                acc = if j % 2 == 0 { ring.add(acc, t) } else { ring.sub(acc, t) };
            }
            acc
        }
    }
}

/// Matrix of `Γⁿ(a)` on the monomial bases `multi_indices(cols, n)` and
/// `multi_indices(rows, n)`: `Π γ_{I_j}(e_j) ↦ Π γ_{I_j}(a e_j)`.
pub fn gamma_matrix(a: &ModMatrix, n: u32) -> Result<ModMatrix> {
    let ring = a.ring();
    let (rows, cols) = a.shape();
    let src = multi_indices(cols, n);
    let tgt = multi_indices(rows, n);
    let mut out = ModMatrix::zeros(ring, tgt.len(), src.len());
    let alg = PDAlgebra::divided(ring, rows, n)?;
    let images: Vec<PDElement> = (0..cols)
        .map(|j| PDElement::from_terms(&alg, (0..rows).map(|i| (unit(rows, i), a.get(i, j)))))
        .collect();
    let mut cache: BTreeMap<(usize, u32), PDElement> = BTreeMap::new();
    for (c, idx) in src.iter().enumerate() {
        let mut acc = PDElement::one(&alg);
        for (j, &e) in idx.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let g = match cache.get(&(j, e)) {
                Some(g) => g.clone(),
                None => {
                    let g = images[j].gamma(e)?;
                    cache.insert((j, e), g.clone());
                    g
                }
            };
            acc = acc.mul(&g)?;
        }
        for (m, &v) in acc.terms() {
            let r = tgt.binary_search_by(|t| m.cmp(t)).map_err(|_| Error::Internal("Γ image outside degree n".into()))?;
            out.set(r, c, v);
        }
    }
    Ok(out)
}

fn unit(r: usize, i: usize) -> Vec<u32> {
    let mut v = vec![0; r];
    v[i] = 1;
    v
}

/// Matrix of `∧ⁿ(a)` on the bases `subsets(cols, n)` and `subsets(rows, n)`.
pub fn exterior_matrix(a: &ModMatrix, n: usize) -> ModMatrix {
    let ring = a.ring();
    let (rows, cols) = a.shape();
    let src = subsets(cols, n);
    let tgt = subsets(rows, n);
    ModMatrix::from_fn(ring, tgt.len(), src.len(), |r, c| {
        let minor: Vec<Vec<u64>> = tgt[r].iter().map(|&i| src[c].iter().map(|&j| a.get(i, j)).collect()).collect();
        det(ring, &minor)
    })
}

/// Basis of `F(X_k)` for the functor applied to the whole (weight-summed) module,
/// with the weight of each basis element.
struct FunctorBasis {
    /// Weight of each basis vector of `X_k` in the concatenated order.
    input_weights: Vec<u32>,
    output_weights: Vec<u32>,
}

impl FunctorBasis {
    fn new(x: &SimplicialModule, k: usize, functor: Functor, n: u32) -> Self {
        let input_weights: Vec<u32> = x.weights().iter().flat_map(|&w| std::iter::repeat_n(w, x.rank(k, w))).collect();
        let r = input_weights.len();
        let output_weights = match functor {
            Functor::Gamma => multi_indices(r, n)
                .iter()
                .map(|idx| idx.iter().zip(&input_weights).map(|(&e, &w)| e * w).sum())
                .collect(),
            Functor::Exterior => {
                subsets(r, n as usize).iter().map(|s| s.iter().map(|&i| input_weights[i]).sum()).collect()
            }
        };
        FunctorBasis { input_weights, output_weights }
    }

    fn indices_of(&self, w: u32) -> Vec<usize> {
        (0..self.output_weights.len()).filter(|&i| self.output_weights[i] == w).collect()
    }
}

/// Block-diagonal assembly of a weight-preserving simplicial operator.
fn whole(x: &SimplicialModule, rows: usize, cols: usize, block: impl Fn(u32) -> ModMatrix) -> ModMatrix {
    let mut out = ModMatrix::zeros(x.ring(), rows, cols);
    let (mut r0, mut c0) = (0, 0);
    for w in x.weights() {
        let b = block(w);
        out.set_block(r0, c0, &b);
        r0 += b.rows();
        c0 += b.cols();
    }
    out
}

/// The simplicial module `F(X)` obtained by applying `Γⁿ` or `∧ⁿ` degreewise.
/// Output weights are sums of input weights.
pub fn apply_functor(x: &SimplicialModule, functor: Functor, n: u32) -> Result<SimplicialModule> {
    let ring = x.ring();
    let top = x.top();
    let bases: Vec<FunctorBasis> = (0..=top).map(|k| FunctorBasis::new(x, k, functor, n)).collect();
    let apply = |m: &ModMatrix| -> Result<ModMatrix> {
        match functor {
            Functor::Gamma => gamma_matrix(m, n),
            Functor::Exterior => Ok(exterior_matrix(m, n as usize)),
        }
    };
    let dims: Vec<usize> = bases.iter().map(|b| b.input_weights.len()).collect();
    let mut faces_full = vec![Vec::new()];
    for k in 1..=top {
        let fs = (0..=k)
            .map(|i| apply(&whole(x, dims[k - 1], dims[k], |w| x.face(k, i, w).clone())))
            .collect::<Result<Vec<_>>>()?;
        faces_full.push(fs);
    }
    let mut degens_full = Vec::new();
    for k in 0..top {
        let ss = (0..=k)
            .map(|i| apply(&whole(x, dims[k + 1], dims[k], |w| x.degeneracy(k, i, w).clone())))
            .collect::<Result<Vec<_>>>()?;
        degens_full.push(ss);
    }
    let mut weights: Vec<u32> = bases.iter().flat_map(|b| b.output_weights.iter().copied()).collect();
    weights.sort_unstable();
    weights.dedup();
    let mut slices = BTreeMap::new();
    for w in weights {
        let idx: Vec<Vec<usize>> = bases.iter().map(|b| b.indices_of(w)).collect();
        let faces = (0..=top)
            .map(|k| faces_full[k].iter().map(|f| f.select_rows(&idx[k - 1]).select_cols(&idx[k])).collect())
            .collect();
        let degens =
            (0..top).map(|k| degens_full[k].iter().map(|s| s.select_rows(&idx[k + 1]).select_cols(&idx[k])).collect()).collect();
        slices.insert(w, SimplicialSlice { ranks: idx.iter().map(Vec::len).collect(), faces, degens });
    }
    SimplicialModule::new_unchecked(ring, top, slices)
}

#[derive(Clone, Debug, Serialize)]
pub struct DerivedPower {
    pub functor: Functor,
    pub n: u32,
    #[serde(skip)]
    pub normalized: GradedSliceComplex,
    pub homology: HomologyReport,
}

/// `L F(C) = N F(K C)` for `F = Γⁿ` or `∧ⁿ`, on simplicial degrees `0..=top`
/// (homology is trusted below `top`).
pub fn derived_power(c: &GradedSliceComplex, functor: Functor, n: u32, top: usize) -> Result<DerivedPower> {
    let x = kan_transform(c, top)?;
    let fx = apply_functor(&x, functor, n)?;
    let normalized = normalized_complex(&fx)?;
    let homology = homology_report(&normalized);
    Ok(DerivedPower { functor, n, normalized, homology })
}

/// `C(n + r - 1, n)`, the rank of `Γⁿ` of a free module of rank `r`.
pub fn gamma_rank(r: usize, n: u32) -> usize {
    multi_indices(r, n).len()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::complexes::Slice;

    fn shifted_free(ring: ModRing, r: usize, degree: usize) -> GradedSliceComplex {
        let mut ranks = vec![0; degree + 1];
        ranks[degree] = r;
        let diffs = (0..degree).map(|k| ModMatrix::zeros(ring, ranks[k], ranks[k + 1])).collect();
        let mut slices = BTreeMap::new();
        slices.insert(1, Slice::new(ring, ranks, diffs).unwrap());
        GradedSliceComplex::new(ring, 0, degree as i64, slices).unwrap()
    }

    #[test]
    fn gamma_of_a_map_is_functorial() {
        let ring = ModRing::new(3, 2).unwrap();
        let a = ModMatrix::from_rows(ring, &[vec![1, 2], vec![3, 4], vec![0, 5]]).unwrap();
        let b = ModMatrix::from_rows(ring, &[vec![2, 0, 1], vec![1, 1, 7]]).unwrap();
        let ab = b.mul(&a).unwrap();
        for n in 0..4 {
            assert_eq!(gamma_matrix(&ab, n).unwrap(), gamma_matrix(&b, n).unwrap().mul(&gamma_matrix(&a, n).unwrap()).unwrap());
            assert_eq!(
                exterior_matrix(&ab, n as usize),
                exterior_matrix(&b, n as usize).mul(&exterior_matrix(&a, n as usize)).unwrap()
            );
        }
        // Γ²(2·id) = 4·id: γ_2(2e) = 4γ_2(e), (2e)(2f) = 4ef.
        let two = ModMatrix::identity(ring, 2).scale(2);
        assert_eq!(gamma_matrix(&two, 2).unwrap(), ModMatrix::identity(ring, 3).scale(4));
    }

    #[test]
    fn ranks_of_gamma() {
        assert_eq!(gamma_rank(2, 2), 3);
        assert_eq!(gamma_rank(3, 3), 10);
        assert_eq!(subsets(4, 2).len(), 6);
    }

    #[test]
    fn gamma_of_free_module_in_degree_zero() {
        let ring = ModRing::new(2, 2).unwrap();
        let d = derived_power(&shifted_free(ring, 2, 0), Functor::Gamma, 2, 3).unwrap();
        assert_eq!(d.homology.total(0).factors(), vec![4, 4, 4]);
        assert!(d.homology.total(1).is_zero() && d.homology.total(2).is_zero());
    }

    #[test]
    fn exterior_square_of_a_shifted_line() {
        let ring = ModRing::new(2, 2).unwrap();
        let d = derived_power(&shifted_free(ring, 1, 1), Functor::Exterior, 2, 3).unwrap();
        assert!(d.homology.concentrated_in(2));
        assert_eq!(d.homology.total(2).factors(), vec![4]);
        assert_eq!(d.homology.invariants(2, 2).factors(), vec![4]);
    }

    #[test]
    fn functor_output_satisfies_simplicial_identities() {
        let ring = ModRing::new(3, 1).unwrap();
        let x = kan_transform(&shifted_free(ring, 2, 1), 3).unwrap();
        apply_functor(&x, Functor::Gamma, 2).unwrap().check_identities().unwrap();
        apply_functor(&x, Functor::Exterior, 3).unwrap().check_identities().unwrap();
    }
}
