use super::monotone::MonotoneMap;
use super::simplicial::SimplicialModule;
use crate::error::{Error, Result};
use crate::exactlin::ModMatrix;

/// The map `α_i: [n] -> [1]` sending `0..=i` to 0 and the rest to 1, for `i = -1..=n`.
pub fn step_map(n: usize, i: i64) -> MonotoneMap {
    MonotoneMap::new((0..=n).map(|t| usize::from(t as i64 > i)).collect(), 1).expect("step map is monotone")
}

fn step_index(alpha: &MonotoneMap) -> i64 {
    alpha.values().iter().filter(|&&v| v == 0).count() as i64 - 1
}

/// A homotopy `X × Δ[1] -> Y` on one weight slice: `components[n][i+1]` is
/// `H_{α_i}: X_n -> Y_n`. Its ends are `H_{α_n}` (constant 0) and `H_{α_{-1}}` (constant 1).
#[derive(Clone, Debug)]
pub struct SimplicialHomotopyData {
    pub weight: u32,
    pub components: Vec<Vec<ModMatrix>>,
}

impl SimplicialHomotopyData {
    pub fn component(&self, n: usize, i: i64) -> &ModMatrix {
        &self.components[n][(i + 1) as usize]
    }

    /// Checks `∂_k H_α = H_{α δ^k} ∂_k` and `σ_k H_α = H_{α σ^k} σ_k` on every degree.
    pub fn verify(&self, x: &SimplicialModule, y: &SimplicialModule) -> Result<()> {
        let w = self.weight;
        let top = x.top().min(y.top()).min(self.components.len().saturating_sub(1));
        for n in 0..=top {
            if self.components[n].len() != n + 2 {
                return Err(Error::Dimension(format!("degree {n} needs {} components", n + 2)));
            }
            for i in -1..=n as i64 {
                let h = self.component(n, i);
                if h.shape() != (y.rank(n, w), x.rank(n, w)) {
                    return Err(Error::Dimension(format!("component ({n},{i}) has shape {:?}", h.shape())));
                }
                let alpha = step_map(n, i);
                if n >= 1 {
                    for k in 0..=n {
                        let j = step_index(&alpha.compose(&MonotoneMap::coface(n, k))?);
                        let lhs = y.face(n, k, w).mul(h)?;
                        let rhs = self.component(n - 1, j).mul(x.face(n, k, w))?;
                        if lhs != rhs {
                            return Err(Error::Hypothesis(format!("face {k} fails on component ({n},{i})")));
                        }
                    }
                }
                if n < top {
                    for k in 0..=n {
                        let j = step_index(&alpha.compose(&MonotoneMap::codegeneracy(n, k))?);
                        let lhs = y.degeneracy(n, k, w).mul(h)?;
                        let rhs = self.component(n + 1, j).mul(x.degeneracy(n, k, w))?;
                        if lhs != rhs {
                            return Err(Error::Hypothesis(format!("degeneracy {k} fails on component ({n},{i})")));
                        }
                    }
                }
            }
        }
        Ok(())
    }

    /// `(f, g)` with `f_n = H_{α_n}` (constant 0 end) and `g_n = H_{α_{-1}}`.
    pub fn ends(&self) -> (Vec<ModMatrix>, Vec<ModMatrix>) {
        let f = self.components.iter().enumerate().map(|(n, c)| c[n + 1].clone()).collect();
        let g = self.components.iter().map(|c| c[0].clone()).collect();
        (f, g)
    }
}

/// `ε_n = ε_0 ∘ v^*` for a vertex `v: [0] -> [n]`, checked to be the same for every vertex.
/// Needs `ε_0 ∂_0 = ε_0 ∂_1`.
pub fn full_augmentation(x: &SimplicialModule, eps0: &ModMatrix, n: usize, w: u32) -> Result<ModMatrix> {
    if x.top() >= 1 && eps0.mul(x.face(1, 0, w))? != eps0.mul(x.face(1, 1, w))? {
        return Err(Error::Hypothesis("augmentation does not equalize the two faces".into()));
    }
    let mut out: Option<ModMatrix> = None;
    for v in 0..=n {
        let vertex = MonotoneMap::new(vec![v], n)?;
        let e = eps0.mul(&x.act(&vertex, w)?)?;
        match &out {
            None => out = Some(e),
            Some(prev) if *prev != e => {
                return Err(Error::Internal(format!("vertices 0 and {v} give different augmentations")));
            }
            _ => {}
        }
    }
    Ok(out.expect("at least one vertex"))
}

#[cfg(test)]
mod tests {
    use std::collections::BTreeMap;

    use super::*;
    use crate::exactlin::ModRing;

    #[test]
    fn constant_homotopy_verifies_and_tampering_is_caught() {
        let r = ModRing::new(2, 2).unwrap();
        let x = SimplicialModule::constant(r, 3, &BTreeMap::from([(0, 2)]));
        let id = ModMatrix::identity(r, 2);
        let mut h = SimplicialHomotopyData { weight: 0, components: (0..=3).map(|n| vec![id.clone(); n + 2]).collect() };
        h.verify(&x, &x).unwrap();
        h.components[2][1] = id.scale(3);
        assert!(h.verify(&x, &x).is_err());
    }

    #[test]
    fn step_maps_cover_the_two_ends() {
        assert_eq!(step_map(2, -1).values(), &[1, 1, 1]);
        assert_eq!(step_map(2, 2).values(), &[0, 0, 0]);
        assert_eq!(step_index(&step_map(3, 1)), 1);
    }
}
