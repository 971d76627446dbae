use std::collections::BTreeMap;
use std::sync::Arc;

use super::algebra::{GeneratorKind, PDAlgebra, PDElement, PDGenerator};
use crate::error::{Error, Result};
use crate::exactlin::{cokernel_exponents, ModMatrix, ModRing, ModuleInvariants};
use crate::polyalg::Poly;

/// `A⟨t⟩/(t - f)` for `A = k[x]` and a monomial `f = c·x^d` (`c` a unit), graded
/// with `x` of weight 1 and `t` of weight `d`, truncated at weight `bound`.
#[derive(Clone, Debug)]
pub struct PDEnvelope {
    pub algebra: Arc<PDAlgebra>,
    pub degree: u32,
    /// `t - f` in the PD algebra.
    pub relation: PDElement,
}

impl PDEnvelope {
    pub fn new(ring: ModRing, f: &Poly, bound: u32) -> Result<Self> {
        if f.nvars() != 1 || f.ring() != ring {
            return Err(Error::InvalidInput("f must be a polynomial in one variable over the coefficient ring".into()));
        }
        let (m, &c) = match f.terms().iter().collect::<Vec<_>>()[..] {
            [(m, c)] => (m, c),
            _ => return Err(Error::Unsupported("envelope slices need a monomial f = c·x^d".into())),
        };
        let d = m.0[0];
        if d == 0 || !ring.is_unit(c) {
            return Err(Error::Hypothesis("f must be a unit times a positive power of x".into()));
        }
        let gens = vec![
            PDGenerator { name: "x".into(), weight: 1, kind: GeneratorKind::Polynomial },
            PDGenerator { name: "t".into(), weight: d, kind: GeneratorKind::Divided },
        ];
        let algebra = PDAlgebra::new(ring, gens, bound)?;
        let relation = PDElement::gamma_gen(&algebra, 1, 1).sub(&PDElement::monomial(&algebra, vec![d, 0], c))?;
        Ok(PDEnvelope { algebra, degree: d, relation })
    }

    /// Relation rows on the weight-`w` slice basis `algebra.slice(w)`: multiples
    /// of `t - f`, plus `x^a γ_b(t)` with `b ≥ i` when cutting at Hodge level `i`.
    pub fn relations(&self, w: u32, hodge_level: Option<u32>) -> Result<ModMatrix> {
        let ring = self.algebra.ring();
        let basis = self.algebra.slice(w);
        let mut rows: Vec<Vec<u64>> = Vec::new();
        if w >= self.degree {
            for m in self.algebra.slice(w - self.degree) {
                let e = self.relation.mul(&PDElement::monomial(&self.algebra, m, 1))?;
                rows.push(basis.iter().map(|b| e.coeff(b)).collect());
            }
        }
        if let Some(i) = hodge_level {
            for (k, b) in basis.iter().enumerate() {
                if b[1] >= i {
                    rows.push((0..basis.len()).map(|j| u64::from(j == k)).collect());
                }
            }
        }
        let data = rows.concat();
        Ok(ModMatrix::from_data(ring, rows.len(), basis.len(), data))
    }

    pub fn slice_invariants(&self, w: u32, hodge_level: Option<u32>) -> Result<ModuleInvariants> {
        let rel = self.relations(w, hodge_level)?;
        let g = self.algebra.slice(w).len();
        Ok(ModuleInvariants::from_exponents(self.algebra.ring().p(), cokernel_exponents(&rel, g)))
    }
}

/// Invariants of each weight slice `w ≤ bound` of `A⟨t⟩/(t - f)`, optionally
/// modulo the image of `⟨t⟩^{[i]}`.
pub fn pd_envelope_slices(ring: ModRing, f: &Poly, bound: u32, hodge_level: Option<u32>) -> Result<BTreeMap<u32, ModuleInvariants>> {
    let env = PDEnvelope::new(ring, f, bound)?;
    (0..=bound).map(|w| Ok((w, env.slice_invariants(w, hodge_level)?))).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::polyalg::{parse_poly, PolyAlgebra, Variable};

    fn poly(ring: ModRing, s: &str) -> Poly {
        let a = PolyAlgebra::new(ring, vec![Variable::new("x", 1)], None).unwrap();
        parse_poly(&a, s).unwrap()
    }

    #[test]
    fn envelope_of_the_origin_is_the_divided_power_line() {
        let ring = ModRing::new(2, 2).unwrap();
        let s = pd_envelope_slices(ring, &poly(ring, "x"), 4, None).unwrap();
        assert!(s.values().all(|m| m.factors() == vec![4]));
        let cut = pd_envelope_slices(ring, &poly(ring, "x"), 4, Some(2)).unwrap();
        assert_eq!(cut[&1].factors(), vec![4]);
        assert!(cut[&2].is_zero() && cut[&3].is_zero());
    }

    #[test]
    fn envelope_of_a_square() {
        // Over F_2: x^a γ_b(t) with x^2 = t = γ_1(t); weight 2 gives x^2 and t identified.
        let ring = ModRing::new(2, 1).unwrap();
        let s = pd_envelope_slices(ring, &poly(ring, "x^2"), 4, None).unwrap();
        assert_eq!(s[&2].length(), 1);
        assert!(pd_envelope_slices(ring, &poly(ring, "x^2 + x"), 4, None).is_err());
    }
}
