use serde::Serialize;

use super::complex::{build_derham, hodge_quotient_homology, FilteredDeRhamComplex};
use crate::cotangent::{cotangent_homology, kaehler_invariants, AlgebraPresentation, TargetRing};
use crate::error::{Error, Result};
use crate::exactlin::{row_span_length, solve, ModMatrix, ModuleInvariants};
use crate::polyalg::{Monomial, Poly};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThickeningRow {
    pub weight: u32,
    /// `H_0(LΩ/F²)` in this weight.
    pub h0: ModuleInvariants,
    /// `(A/J²)` in this weight.
    pub target: ModuleInvariants,
    /// `H_1 L_{B/A}` and `B` in this weight: `0 → H_1L → H_0(LΩ/F²) → B → 0`.
    pub conormal: ModuleInvariants,
    pub b: ModuleInvariants,
    /// `Φ ∘ D = 0` on degree-1 chains.
    pub kills_boundaries: bool,
    pub surjective: bool,
    pub bijective: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct ThickeningResult {
    pub rows: Vec<ThickeningRow>,
    /// The shuffle product descends to `H_0`: boundary times chain is a boundary.
    pub product_well_defined: bool,
    /// `Φ(ab) = Φ(a)Φ(b)` on all pairs of basis chains.
    pub multiplicative: bool,
    /// Products of two elements of `ker(H_0(LΩ/F²) → B)` vanish in `H_0`.
    pub square_zero: bool,
    /// Length bookkeeping of `0 → H_1L → H_0(LΩ/F²) → B → 0`.
    pub lengths_add: bool,
}

impl ThickeningResult {
    pub fn passes(&self) -> bool {
        self.product_well_defined
            && self.multiplicative
            && self.square_zero
            && self.lengths_add
            && self.rows.iter().all(|r| r.kills_boundaries && r.surjective && r.bijective)
    }
}

struct Thickening<'a> {
    c: &'a FilteredDeRhamComplex,
    f: Poly,
    target: TargetRing,
}

impl Thickening<'_> {
    /// `Φ(a) = a` on `Q_0`, `Φ(h dx_1) = h(y, 0)·f` on `Ω¹_{Q_1}`, into `A/J²`.
    fn phi(&self, w: u32, kept: &[usize]) -> Result<ModMatrix> {
        let ring = self.c.ring();
        let s = self.c.slice(w).expect("weight inside the bound");
        let basis = self.target.basis(w);
        let mut m = ModMatrix::zeros(ring, basis.len(), kept.len());
        for (col, &k) in kept.iter().enumerate() {
            let key = &s.bases[0][k];
            let p = match key.n {
                0 => Poly::monomial(ring, Monomial(vec![key.mono[0]]), 1),
                1 if key.mono[1] == 0 => Poly::monomial(ring, Monomial(vec![key.mono[0]]), 1).mul(&self.f),
                1 => continue,
                _ => return Err(Error::Internal("degree-0 chain above simplicial degree 1 in LΩ/F²".into())),
            };
            for (r, v) in self.target.coordinates(&p, w)?.into_iter().enumerate() {
                m.set(r, col, v);
            }
        }
        Ok(m)
    }
}

fn in_span(b: &ModMatrix, v: &[u64]) -> Result<bool> {
    if v.iter().all(|&x| x == 0) {
        return Ok(true);
    }
    if b.cols() == 0 {
        return Ok(false);
    }
    Ok(solve(b, v)?.is_some())
}

fn unit(len: usize, i: usize) -> Vec<u64> {
    (0..len).map(|k| u64::from(k == i)).collect()
}

/// `H_0(LΩ_{B/A}/F²)` with its shuffle product against `A/J²` for `B = A/J`,
/// `J = (f)`, through `Φ(a, h dx_1) = a + h(y, 0)·f`, checked per weight `≤ weight_bound`.
pub fn universal_thickening(pres: &AlgebraPresentation, weight_bound: u32) -> Result<ThickeningResult> {
    let f = pres.relation().ok_or_else(|| Error::Unsupported("first-order thickening needs B = A/(f)".into()))?.clone();
    if kaehler_invariants(pres, weight_bound)?.values().any(|m| !m.is_zero()) {
        return Err(Error::Hypothesis("Ω¹_{B/A} ≠ 0".into()));
    }
    let ring = pres.ring();
    let target = TargetRing::quotient(pres.base().clone(), 0, f.mul(&f))?;
    let c = build_derham(pres, 2, 2, weight_bound)?;
    let h = hodge_quotient_homology(&c, 2)?;
    let cot = cotangent_homology(pres, 2, weight_bound)?;
    let b_ring = pres.target()?;
    let th = Thickening { c: &c, f, target };
    let n = ring.n() as u64;
    let mut rows = Vec::new();
    let mut data = Vec::new();
    for w in 0..=weight_bound {
        let (kept, boundary) = c.degree_zero(w, 2)?;
        let phi = th.phi(w, &kept)?;
        let kills_boundaries = boundary.cols() == 0 || phi.mul(&boundary)?.is_zero();
        let tdim = th.target.basis(w).len() as u64;
        let surjective = tdim == 0 || row_span_length(&phi) == tdim * n;
        let h0 = h.invariants(0, w);
        let target_inv = ModuleInvariants::free(ring, tdim as usize);
        let bijective = surjective && kills_boundaries && h0.length() == tdim * n;
        let b = ModuleInvariants::free(ring, b_ring.basis(w).len());
        rows.push(ThickeningRow {
            weight: w,
            h0,
            target: target_inv,
            conormal: cot.invariants(1, w),
            b,
            kills_boundaries,
            surjective,
            bijective,
        });
        data.push((kept, boundary, phi));
    }
    let lengths_add = rows.iter().all(|r| r.h0.length() == r.conormal.length() + r.b.length());

    // Kernel of H_0(LΩ/F²) → H_0(LΩ/F¹) = B on representatives: Ω¹ chains and
    // the F¹-boundaries inside Q_0.
    let mut kernel: Vec<Vec<(u32, Vec<u64>)>> = vec![Vec::new(); weight_bound as usize + 1];
    for w in 0..=weight_bound {
        let s = c.slice(w).expect("weight inside the bound");
        let kept = &data[w as usize].0;
        let (kept1, boundary1) = c.degree_zero(w, 1)?;
        for (pos, &k) in kept.iter().enumerate() {
            if s.bases[0][k].n == 1 {
                kernel[w as usize].push((w, unit(kept.len(), pos)));
            }
        }
        for col in 0..boundary1.cols() {
            let mut v = vec![0; kept.len()];
            for (r, &k) in kept1.iter().enumerate() {
                let pos = kept.iter().position(|&x| x == k).expect("F¹ chains are F² chains");
                v[pos] = boundary1.get(r, col);
            }
            kernel[w as usize].push((w, v));
        }
    }
    // Chains on the full degree-0 basis of the slice, as the product expects.
    let lift = |w: u32, v: &[u64]| -> Vec<u64> {
        let s = c.slice(w).expect("weight inside the bound");
        let mut out = vec![0; s.bases[0].len()];
        for (pos, &k) in data[w as usize].0.iter().enumerate() {
            out[k] = v[pos];
        }
        out
    };
    let restrict = |w: u32, v: &[u64]| -> Vec<u64> { data[w as usize].0.iter().map(|&k| v[k]).collect() };

    let mut product_well_defined = true;
    let mut multiplicative = true;
    let mut square_zero = true;
    for w1 in 0..=weight_bound {
        for w2 in 0..=weight_bound - w1 {
            let w = w1 + w2;
            let (k1, b1, phi1) = &data[w1 as usize];
            let (k2, _, phi2) = &data[w2 as usize];
            let (_, bw, phiw) = &data[w as usize];
            for i in 0..k1.len() {
                for j in 0..k2.len() {
                    let prod = restrict(w, &c.product((0, w1, &lift(w1, &unit(k1.len(), i))), (0, w2, &lift(w2, &unit(k2.len(), j))))?);
                    let lhs = phiw.mul_vec(&prod)?;
                    let rhs = th.target.coordinates(
                        &coord_poly(&th, w1, &phi1.column(i)).mul(&coord_poly(&th, w2, &phi2.column(j))),
                        w,
                    )?;
                    multiplicative &= lhs == rhs;
                }
            }
            for col in 0..b1.cols() {
                for j in 0..k2.len() {
                    let prod = restrict(w, &c.product((0, w1, &lift(w1, &b1.column(col))), (0, w2, &lift(w2, &unit(k2.len(), j))))?);
                    product_well_defined &= in_span(bw, &prod)?;
                }
            }
            for (_, u) in &kernel[w1 as usize] {
                for (_, v) in &kernel[w2 as usize] {
                    let prod = restrict(w, &c.product((0, w1, &lift(w1, u)), (0, w2, &lift(w2, v)))?);
                    square_zero &= in_span(bw, &prod)?;
                }
            }
        }
    }
    Ok(ThickeningResult { rows, product_well_defined, multiplicative, square_zero, lengths_add })
}

fn coord_poly(th: &Thickening<'_>, w: u32, coords: &[u64]) -> Poly {
    let ring = th.c.ring();
    let mut p = Poly::zero(ring, 1);
    for (m, &c) in th.target.basis(w).into_iter().zip(coords) {
        p.add_term(m, c);
    }
    p
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ModRing;
    use crate::polyalg::{parse_poly, PolyAlgebra, Variable};

    #[test]
    fn thickening_of_the_origin_over_z4() {
        let a = PolyAlgebra::new(ModRing::new(2, 2).unwrap(), vec![Variable::new("y", 1)], None).unwrap();
        let pres = AlgebraPresentation::quotient(a.clone(), parse_poly(&a, "y").unwrap()).unwrap();
        let r = universal_thickening(&pres, 2).unwrap();
        assert!(r.passes(), "{r:?}");
        let lengths: Vec<u64> = r.rows.iter().map(|row| row.h0.length()).collect();
        assert_eq!(lengths, vec![2, 2, 0]);
    }
}
