use crate::error::{Error, Result};

/// Nondecreasing map `[m] -> [n]`, stored as its values on `0..=m`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct MonotoneMap {
    target: usize,
    values: Vec<usize>,
}

impl MonotoneMap {
    /// `values` has length `m + 1` with entries in `0..=target`.
    pub fn new(values: Vec<usize>, target: usize) -> Result<Self> {
        if values.is_empty() {
            return Err(Error::InvalidInput("monotone map needs a nonempty source".into()));
        }
        if values.windows(2).any(|w| w[0] > w[1]) {
            return Err(Error::InvalidInput(format!("{values:?} is not nondecreasing")));
        }
        if values.iter().any(|&v| v > target) {
            return Err(Error::InvalidInput(format!("{values:?} leaves [{target}]")));
        }
        Ok(MonotoneMap { target, values })
    }

    pub fn identity(n: usize) -> Self {
        MonotoneMap { target: n, values: (0..=n).collect() }
    }

    /// Coface `δ_i: [n-1] -> [n]` skipping `i`.
    pub fn coface(n: usize, i: usize) -> Self {
        assert!(n >= 1 && i <= n);
        MonotoneMap { target: n, values: (0..n).map(|j| if j < i { j } else { j + 1 }).collect() }
    }

    /// Codegeneracy `σ^i: [n+1] -> [n]` hitting `i` twice.
    pub fn codegeneracy(n: usize, i: usize) -> Self {
        assert!(i <= n);
        MonotoneMap { target: n, values: (0..=n + 1).map(|j| if j <= i { j } else { j - 1 }).collect() }
    }

    /// `m` for a map `[m] -> [n]`.
    pub fn source_dim(&self) -> usize {
        self.values.len() - 1
    }

    pub fn target_dim(&self) -> usize {
        self.target
    }

    pub fn values(&self) -> &[usize] {
        &self.values
    }

    pub fn apply(&self, i: usize) -> usize {
        self.values[i]
    }

    pub fn is_injective(&self) -> bool {
        self.values.windows(2).all(|w| w[0] < w[1])
    }

    pub fn is_surjective(&self) -> bool {
        self.values[0] == 0
            && *self.values.last().unwrap() == self.target
            && self.values.windows(2).all(|w| w[1] - w[0] <= 1)
    }

    pub fn is_identity(&self) -> bool {
        self.target == self.source_dim() && self.is_injective()
    }

    /// `self ∘ other` (apply `other` first).
    pub fn compose(&self, other: &MonotoneMap) -> Result<MonotoneMap> {
        if other.target != self.source_dim() {
            return Err(Error::Dimension(format!(
                "cannot compose [{}] -> [{}] after [{}] -> [{}]",
                self.source_dim(),
                self.target,
                other.source_dim(),
                other.target
            )));
        }
        Ok(MonotoneMap { target: self.target, values: other.values.iter().map(|&v| self.values[v]).collect() })
    }

    /// Unique factorization `self = ε ∘ η`, `η` surjective, `ε` injective.
    pub fn epi_mono_factorize(&self) -> (MonotoneMap, MonotoneMap) {
        let mut image: Vec<usize> = self.values.clone();
        image.dedup();
        let q = image.len() - 1;
        let eta_values = self.values.iter().map(|v| image.binary_search(v).unwrap()).collect();
        (MonotoneMap { target: q, values: eta_values }, MonotoneMap { target: self.target, values: image })
    }

    /// For injective `ε: [q] -> [n]`: the skipped values `j_1 < ... < j_r`,
    /// so that `ε^* = ∂_{j_1} ∘ ... ∘ ∂_{j_r}`.
    pub fn skipped(&self) -> Vec<usize> {
        (0..=self.target).filter(|v| !self.values.contains(v)).collect()
    }

    /// For surjective `η: [m] -> [q]`: positions `i` with `η(i) = η(i+1)`, ascending,
    /// so that `η^* = σ_{i_s} ∘ ... ∘ σ_{i_1}`.
    pub fn repeats(&self) -> Vec<usize> {
        (0..self.source_dim()).filter(|&i| self.values[i] == self.values[i + 1]).collect()
    }
}

/// All surjections `[n] -> [p]`, in lexicographic order of their values.
pub fn surjections(n: usize, p: usize) -> Vec<MonotoneMap> {
    if p > n {
        return Vec::new();
    }
    // A surjection is determined by the set of `p` jump positions among `1..=n`.
    let mut out = Vec::new();
    let mut jumps = Vec::with_capacity(p);
    fn rec(start: usize, n: usize, left: usize, jumps: &mut Vec<usize>, p: usize, out: &mut Vec<MonotoneMap>) {
        if left == 0 {
            let mut values = Vec::with_capacity(n + 1);
            let mut v = 0;
            for i in 0..=n {
                if jumps.contains(&i) {
                    v += 1;
                }
                values.push(v);
            }
            out.push(MonotoneMap { target: p, values });
            return;
        }
        for j in start..=n {
            jumps.push(j);
            rec(j + 1, n, left - 1, jumps, p, out);
            jumps.pop();
        }
    }
    rec(1, n, p, &mut jumps, p, &mut out);
    out.sort();
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn factorization_examples() {
        let a = MonotoneMap::new(vec![0, 0, 2], 2).unwrap();
        let (eta, eps) = a.epi_mono_factorize();
        assert_eq!(eta.values(), &[0, 0, 1]);
        assert_eq!(eps.values(), &[0, 2]);
        assert_eq!(eps.compose(&eta).unwrap(), a);
        let id = MonotoneMap::identity(3);
        assert_eq!(id.epi_mono_factorize(), (id.clone(), id.clone()));
        let d = MonotoneMap::coface(3, 1);
        assert_eq!(d.epi_mono_factorize(), (MonotoneMap::identity(2), d));
    }

    #[test]
    fn surjection_counts() {
        assert_eq!(surjections(4, 1).len(), 4);
        assert_eq!(surjections(5, 2).len(), 10);
        assert!(surjections(3, 3)[0].is_identity());
        assert!(surjections(2, 3).is_empty());
    }
}
