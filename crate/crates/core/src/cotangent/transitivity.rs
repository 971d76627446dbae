use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{kaehler_invariants, FormsOver};
use super::presentation::{AlgebraPresentation, TargetRing};
use super::resolution::{resolve, FreeSimplicialResolution};
use crate::complexes::{homology_report, GradedSliceComplex, HomologyReport, Slice};
use crate::error::{Error, Result};
use crate::exactlin::{quotient_exponents, ModMatrix, ModRing, ModuleInvariants};
use crate::polyalg::{AlgebraMap, Poly, PolyAlgebra};
use crate::simplex::unnormalized_complex;

/// Towers `A -> B -> C` with `B -> C` surjective.
#[derive(Clone, Debug)]
pub enum Tower {
    /// `k[y] -> k[y]/(f) -> k[y]/(y)` for `f = u·y^d`, `d >= 1`.
    Quotients { base: PolyAlgebra, f: Poly },
    /// `k -> k[x] -> k[x]/(x)`.
    Section { ring: ModRing },
    /// `A -> A -> A`.
    Identity { base: PolyAlgebra },
}

/// Lengths of `H_i` of `L_{B/A} ⊗_B C`, `L_{C/A}` and `L_{C/B}` in one slice.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityRow {
    pub degree: i64,
    pub weight: u32,
    pub left: ModuleInvariants,
    pub middle: ModuleInvariants,
    pub right: ModuleInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TransitivityReport {
    pub rows: Vec<TransitivityRow>,
    /// `H_{top+1}(L_{C/B})` vanishes, so the truncated sequence starts exactly.
    pub boundary_clean: bool,
    /// Per weight, the alternating sum of lengths along the long exact sequence.
    pub alternating_sums: BTreeMap<u32, i64>,
    /// `H_0(L_{B/A}⊗C) -> H_0(L_{C/A}) -> H_0(L_{C/B}) -> 0` is exact, and the
    /// outer terms match the Kähler modules.
    pub tail_exact: bool,
    /// `H_1(L_{C/B})` against the conormal module of `ker(B -> C)`.
    pub conormal_matches: bool,
}

impl TransitivityReport {
    pub fn passes(&self) -> bool {
        self.boundary_clean && self.alternating_sums.values().all(|&s| s == 0) && self.tail_exact && self.conormal_matches
    }
}

/// Builds `L_{C/B}` as the cone of `L_{B/A} ⊗_B C -> L_{C/A}` (the transitivity
/// triangle) and audits the long exact homology sequence on `0..=window_top`.
pub fn transitivity_report(tower: &Tower, window_top: usize, weight_bound: u32) -> Result<TransitivityReport> {
    let (pres_b, pres_c, phi_var): (AlgebraPresentation, AlgebraPresentation, Box<dyn Fn(usize, usize, &Poly) -> Poly>) =
        match tower {
            Tower::Identity { base } => return Ok(identity_report(base, window_top, weight_bound)),
            Tower::Quotients { base, f } => {
                if base.nvars() != 1 || f.len() != 1 || f.degree_in(0) == 0 {
                    return Err(Error::Unsupported("the quotient tower needs f = u·y^d over k[y] with d >= 1".into()));
                }
                let pb = AlgebraPresentation::quotient(base.clone(), f.clone())?;
                let pc = AlgebraPresentation::quotient(base.clone(), Poly::var(base.ring(), 1, 0))?;
                // y ↦ y, x_j ↦ f(z_j).
                (pb, pc, Box::new(|n, j, f: &Poly| if j == 0 { Poly::var(f.ring(), n + 1, 0) } else { f.embed(n + 1, &[j]) }))
            }
            Tower::Section { ring } => {
                let k = PolyAlgebra::new(*ring, Vec::new(), None)?;
                let pb = AlgebraPresentation::free(k, "x")?;
                let pc = AlgebraPresentation::monogenic(*ring, "z", 1, Poly::var(*ring, 1, 0))?;
                // x ↦ z.
                (pb, pc, Box::new(|n, _, f: &Poly| Poly::var(f.ring(), n + 1, 0)))
            }
        };
    let depth = window_top + 3;
    let res_b = resolve(&pres_b, depth, weight_bound)?;
    let res_c = resolve(&pres_c, depth, weight_bound)?;
    let tc = res_c.target().clone();
    let relation = pres_b.relation().cloned().unwrap_or_else(|| Poly::zero(pres_b.ring(), 1));
    let phi: Vec<AlgebraMap> = (0..=depth)
        .map(|n| {
            let src = res_b.algebra(n);
            let tgt = res_c.algebra(n);
            let images = (0..src.nvars()).map(|j| phi_var(n, j, &relation)).collect();
            AlgebraMap::new(&src, &tgt, images)
        })
        .collect::<Result<_>>()?;
    let aug: Vec<AlgebraMap> = (0..=depth).map(|n| phi[n].then(&res_c.augmentation(n))).collect::<Result<_>>()?;
    let x_forms = FormsOver::new(&res_b, &tc, aug, 1)?;
    let y_forms = FormsOver::over_b(&res_c, 1)?;
    let x = unnormalized_complex(&x_forms.simplicial()?)?;
    let y = unnormalized_complex(&y_forms.simplicial()?)?;
    let ring = pres_b.ring();
    let weights = res_b.slice_weights();
    let mut cone_slices = BTreeMap::new();
    let mut f0 = BTreeMap::new();
    for &w in &weights {
        let maps: Vec<ModMatrix> = (0..=depth)
            .map(|n| {
                let images = x_forms
                    .basis(n, w)
                    .iter()
                    .map(|k| x_forms.push(&phi[n], res_c.frozen(), &res_c.augmentation(n), k))
                    .collect::<Result<Vec<_>>>()?;
                x_forms.matrix(&images, &y_forms.basis(n, w), false)
            })
            .collect::<Result<_>>()?;
        for n in 1..=depth as i64 {
            let lhs = y.differential(n, w).mul(&maps[n as usize])?;
            let rhs = maps[n as usize - 1].mul(&x.differential(n, w))?;
            if lhs != rhs {
                return Err(Error::Internal(format!("comparison map is not a chain map in degree {n}, weight {w}")));
            }
        }
        f0.insert(w, maps[0].clone());
        let rank = |c: &GradedSliceComplex, n: i64| if n < 0 { 0 } else { c.rank(n, w) };
        let ranks: Vec<usize> = (0..=depth as i64).map(|n| rank(&y, n) + rank(&x, n - 1)).collect();
        let mut diffs = Vec::new();
        for n in 1..=depth as i64 {
            let (yr, yc, xr, xc) = (rank(&y, n - 1), rank(&y, n), rank(&x, n - 2), rank(&x, n - 1));
            let mut d = ModMatrix::zeros(ring, yr + xr, yc + xc);
            d.set_block(0, 0, &y.differential(n, w));
            d.set_block(0, yc, &maps[n as usize - 1]);
            if n >= 2 {
                d.set_block(yr, yc, &x.differential(n - 1, w).neg());
            }
            diffs.push(d);
        }
        cone_slices.insert(w, Slice::new(ring, ranks, diffs)?);
    }
    let z = GradedSliceComplex::new(ring, 0, depth as i64, cone_slices)?.with_trusted_top(depth as i64 - 1);
    let (hx, hy, hz) = (homology_report(&x), homology_report(&y), homology_report(&z));
    let m = window_top as i64;
    let rows = collect_rows(&weights, m, &hx, &hy, &hz);
    let boundary_clean = weights.iter().all(|&w| hz.invariants(m + 1, w).is_zero());
    let alternating_sums = alternating(&rows);

    // Tail: coker(H_0(X) -> H_0(Y)) has the length of H_0(Z), and H_0(Y) = Ω_{C/A}.
    let kc = kaehler_invariants(&pres_c, weight_bound)?;
    let mut tail_exact = true;
    for &w in &weights {
        let dim = y.rank(0, w);
        let by = y.differential(1, w);
        let image = quotient_exponents(ring, dim, &f0[&w].hstack(&by)?, &by);
        let coker = hy.invariants(0, w).length() - image.iter().map(|&e| e as u64).sum::<u64>();
        tail_exact &= coker == hz.invariants(0, w).length();
        tail_exact &= hy.invariants(0, w) == kc.get(&w).cloned().unwrap_or_else(|| ModuleInvariants::zero(ring.p()));
        // B -> C is surjective, so Ω_{C/B} = 0.
        tail_exact &= hz.invariants(0, w).is_zero();
    }
    // ker(B -> C) is generated by the image of the last variable of the ambient ring of B.
    let tb = res_b.target();
    let kernel_gen = Poly::var(ring, tb.ambient().nvars(), tb.ambient().nvars() - 1);
    let conormal = conormal_in(tb, &kernel_gen, &res_b, weight_bound)?;
    let conormal_matches = weights.iter().all(|w| hz.invariants(1, *w) == conormal[w]);
    Ok(TransitivityReport { rows, boundary_clean, alternating_sums, tail_exact, conormal_matches })
}

/// `J/J²` for `J = (g)` inside a graded ring `T`, from spans of `g·T` and `g²·T`.
fn conormal_in(t: &TargetRing, g: &Poly, res: &FreeSimplicialResolution, weight_bound: u32) -> Result<BTreeMap<u32, ModuleInvariants>> {
    let ring = res.ring();
    let gw = g.homogeneous_weight(&t.ambient().weights()).ok_or_else(|| Error::Internal("inhomogeneous generator".into()))?;
    let mut out = BTreeMap::new();
    for w in 0..=weight_bound {
        let dim = t.basis(w).len();
        let span = |p: &Poly, shift: u32| -> Result<ModMatrix> {
            if shift > w {
                return Ok(ModMatrix::zeros(ring, dim, 0));
            }
            t.mul_matrix(p, w - shift, shift)
        };
        let ex = quotient_exponents(ring, dim, &span(g, gw)?, &span(&g.mul(g), 2 * gw)?);
        out.insert(w, ModuleInvariants::from_exponents(ring.p(), ex));
    }
    Ok(out)
}

fn collect_rows(weights: &[u32], m: i64, hx: &HomologyReport, hy: &HomologyReport, hz: &HomologyReport) -> Vec<TransitivityRow> {
    let mut rows = Vec::new();
    for &w in weights {
        for degree in 0..=m {
            rows.push(TransitivityRow {
                degree,
                weight: w,
                left: hx.invariants(degree, w),
                middle: hy.invariants(degree, w),
                right: hz.invariants(degree, w),
            });
        }
    }
    rows
}

fn alternating(rows: &[TransitivityRow]) -> BTreeMap<u32, i64> {
    let mut out = BTreeMap::new();
    for r in rows {
        let s = r.left.length() as i64 - r.middle.length() as i64 + r.right.length() as i64;
        *out.entry(r.weight).or_insert(0) += if r.degree % 2 == 0 { s } else { -s };
    }
    out
}

fn identity_report(base: &PolyAlgebra, window_top: usize, weight_bound: u32) -> TransitivityReport {
    let zero = ModuleInvariants::zero(base.ring().p());
    let rows: Vec<TransitivityRow> = (0..=weight_bound)
        .flat_map(|w| {
            let zero = zero.clone();
            (0..=window_top as i64).map(move |degree| TransitivityRow {
                degree,
                weight: w,
                left: zero.clone(),
                middle: zero.clone(),
                right: zero.clone(),
            })
        })
        .collect();
    let alternating_sums = alternating(&rows);
    TransitivityReport { rows, boundary_clean: true, alternating_sums, tail_exact: true, conormal_matches: true }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_poly, Variable};

    fn line(p: u64) -> PolyAlgebra {
        PolyAlgebra::new(ModRing::new(p, 1).unwrap(), vec![Variable::new("y", 1)], None).unwrap()
    }

    #[test]
    fn cube_tower_in_characteristic_three() {
        let a = line(3);
        let f = parse_poly(&a, "y^3").unwrap();
        let r = transitivity_report(&Tower::Quotients { base: a, f }, 2, 4).unwrap();
        assert!(r.passes(), "{r:?}");
        let at = |d: i64, w: u32| r.rows.iter().find(|x| x.degree == d && x.weight == w).unwrap();
        assert_eq!(at(1, 1).right.factors(), vec![3]);
        assert_eq!(at(2, 3).right.factors(), vec![3]);
        assert!(at(1, 3).middle.is_zero());
    }

    #[test]
    fn section_tower_recovers_the_conormal_line() {
        let r = transitivity_report(&Tower::Section { ring: ModRing::new(2, 2).unwrap() }, 2, 3).unwrap();
        assert!(r.passes(), "{r:?}");
        let h1: Vec<_> = r.rows.iter().filter(|x| x.degree == 1 && !x.right.is_zero()).collect();
        assert_eq!(h1.len(), 1);
        assert_eq!((h1[0].weight, h1[0].right.factors()), (1, vec![4]));
    }

    #[test]
    fn identity_tower_is_trivial() {
        assert!(transitivity_report(&Tower::Identity { base: line(5) }, 2, 2).unwrap().passes());
    }
}
