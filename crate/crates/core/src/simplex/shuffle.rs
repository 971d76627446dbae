/// An `(i, j)`-shuffle of `{0, ..., i+j-1}`: `mu` has `i` entries, `nu` has `j`,
/// both increasing, disjoint, covering. `sign` is the sign of the permutation `(mu, nu)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Shuffle {
    pub mu: Vec<usize>,
    pub nu: Vec<usize>,
    pub sign: i8,
}

pub fn shuffles(i: usize, j: usize) -> Vec<Shuffle> {
    let total = i + j;
    let mut out = Vec::new();
    let mut mu = Vec::with_capacity(i);
    fn rec(start: usize, total: usize, i: usize, mu: &mut Vec<usize>, out: &mut Vec<Shuffle>) {
        if mu.len() == i {
            let nu: Vec<usize> = (0..total).filter(|k| !mu.contains(k)).collect();
            // Inversions of (mu, nu): pairs with mu_a > nu_b.
            let inversions: usize = mu.iter().map(|&m| nu.iter().filter(|&&n| n < m).count()).sum();
            let sign = if inversions.is_multiple_of(2) { 1 } else { -1 };
            out.push(Shuffle { mu: mu.clone(), nu, sign });
            return;
        }
        for k in start..total {
            mu.push(k);
            rec(k + 1, total, i, mu, out);
            mu.pop();
        }
    }
    rec(0, total, i, &mut mu, &mut out);
    out
}

/// Degreewise algebra structure on a simplicial module, enough to form shuffle products.
pub trait SimplicialAlgebra {
    type Elem: Clone;
    /// `σ_k: X_n -> X_{n+1}`.
    fn degeneracy(&self, x: &Self::Elem, n: usize, k: usize) -> Self::Elem;
    /// Product inside `X_n`.
    fn mul(&self, a: &Self::Elem, b: &Self::Elem, n: usize) -> Self::Elem;
    fn add(&self, a: &Self::Elem, b: &Self::Elem) -> Self::Elem;
    fn neg(&self, a: &Self::Elem) -> Self::Elem;
    fn zero(&self, n: usize) -> Self::Elem;
}

/// `x * y = Σ sign(μ,ν) (σ_{ν_j} ⋯ σ_{ν_1} x) · (σ_{μ_i} ⋯ σ_{μ_1} y)` for `x ∈ X_i`, `y ∈ X_j`.
pub fn shuffle_product<A: SimplicialAlgebra>(alg: &A, x: &A::Elem, i: usize, y: &A::Elem, j: usize) -> A::Elem {
    let mut acc = alg.zero(i + j);
    for sh in shuffles(i, j) {
        let mut a = x.clone();
        for (step, &k) in sh.nu.iter().enumerate() {
            a = alg.degeneracy(&a, i + step, k);
        }
        let mut b = y.clone();
        for (step, &k) in sh.mu.iter().enumerate() {
            b = alg.degeneracy(&b, j + step, k);
        }
        let term = alg.mul(&a, &b, i + j);
        acc = if sh.sign > 0 { alg.add(&acc, &term) } else { alg.add(&acc, &alg.neg(&term)) };
    }
    acc
}
