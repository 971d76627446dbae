use std::sync::Arc;

use serde::Serialize;

use super::algebra::{PDAlgebra, PDElement};

/// `⟨t⟩^{[i]}` inside a truncated PD algebra: spanned by the monomials whose
/// divided indices sum to at least `i` (times arbitrary polynomial factors).
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct PDFiltrationLevel {
    pub level: u32,
    pub basis: Vec<Vec<u32>>,
    /// Ideal-closed under multiplication by every basis monomial.
    pub ideal_closed: bool,
    /// `γ_k` maps level `j ≥ 1` into level `jk`.
    pub pd_compatible: bool,
}

impl PDFiltrationLevel {
    pub fn rank(&self) -> usize {
        self.basis.len()
    }

    pub fn contains(&self, e: &PDElement) -> bool {
        e.terms().keys().all(|m| self.basis.binary_search(m).is_ok())
    }
}

pub fn pd_filtration(alg: &Arc<PDAlgebra>, i: u32) -> PDFiltrationLevel {
    let mut basis: Vec<Vec<u32>> = alg.basis().iter().filter(|m| alg.divided_index(m) >= i).cloned().collect();
    basis.sort();
    let mut level = PDFiltrationLevel { level: i, basis, ideal_closed: true, pd_compatible: true };
    let gens: Vec<PDElement> = level.basis.iter().map(|m| PDElement::monomial(alg, m.clone(), 1)).collect();
    // Closure by enumeration: products with every basis monomial stay inside.
    'outer: for g in &gens {
        for b in alg.basis() {
            let prod = g.mul(&PDElement::monomial(alg, b.clone(), 1)).expect("same parent");
            if !level.contains(&prod) {
                level.ideal_closed = false;
                break 'outer;
            }
        }
    }
    if i >= 1 {
        'pd: for g in &gens {
            let j = alg.divided_index(g.terms().keys().next().expect("nonzero monomial"));
            for k in 2..=alg.bound() {
                let gk = g.gamma(k).expect("level i >= 1 lies in the PD ideal");
                let target = pd_filtration_basis(alg, j * k);
                if !gk.terms().keys().all(|m| target.binary_search(m).is_ok()) {
                    level.pd_compatible = false;
                    break 'pd;
                }
            }
        }
    }
    level
}

fn pd_filtration_basis(alg: &PDAlgebra, i: u32) -> Vec<Vec<u32>> {
    let mut b: Vec<Vec<u32>> = alg.basis().iter().filter(|m| alg.divided_index(m) >= i).cloned().collect();
    b.sort();
    b
}

/// Ranks of `gr^j = ⟨t⟩^{[j]} / ⟨t⟩^{[j+1]}` for `j = 0..=top`.
pub fn graded_ranks(alg: &Arc<PDAlgebra>, top: u32) -> Vec<usize> {
    (0..=top).map(|j| pd_filtration_basis(alg, j).len() - pd_filtration_basis(alg, j + 1).len()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ModRing;
    use crate::pdpow::{GeneratorKind, PDGenerator};

    #[test]
    fn single_generator_levels() {
        let a = PDAlgebra::divided(ModRing::new(2, 2).unwrap(), 1, 6).unwrap();
        let l2 = pd_filtration(&a, 2);
        assert_eq!(l2.basis, (2..=6).map(|j| vec![j]).collect::<Vec<_>>());
        assert!(l2.ideal_closed && l2.pd_compatible);
        assert_eq!(pd_filtration(&a, 0).rank(), a.basis().len());
        assert_eq!(graded_ranks(&a, 5), vec![1; 6]);
    }

    #[test]
    fn mixed_generators() {
        let ring = ModRing::new(3, 1).unwrap();
        let gens = vec![
            PDGenerator { name: "x".into(), weight: 1, kind: GeneratorKind::Polynomial },
            PDGenerator { name: "t".into(), weight: 2, kind: GeneratorKind::Divided },
            PDGenerator { name: "s".into(), weight: 1, kind: GeneratorKind::Divided },
        ];
        let a = PDAlgebra::new(ring, gens, 5).unwrap();
        for i in 0..4 {
            let l = pd_filtration(&a, i);
            assert!(l.ideal_closed && l.pd_compatible, "level {i}");
        }
    }
}
