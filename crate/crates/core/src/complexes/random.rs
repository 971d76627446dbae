//! Seeded random complexes with homology known by construction.

use std::collections::BTreeMap;

use rand::Rng;

use super::graded::GradedSliceComplex;
use super::total::{DoubleComplex, DoubleSlice};
use crate::error::Result;
use crate::exactlin::{ModMatrix, ModRing, ModuleInvariants};

/// Random invertible matrix together with its inverse, as a product of elementary operations.
pub fn random_invertible<R: Rng + ?Sized>(ring: ModRing, n: usize, rng: &mut R) -> (ModMatrix, ModMatrix) {
    let mut p = ModMatrix::identity(ring, n);
    let mut inv = ModMatrix::identity(ring, n);
    if n == 0 {
        return (p, inv);
    }
    for _ in 0..3 * n {
        let a = rng.gen_range(0..n);
        let b = rng.gen_range(0..n);
        if a != b {
            // row_b += c row_a on p; col_a -= c col_b on the inverse.
            let c = rng.gen_range(0..ring.modulus());
            p.add_row_multiple(b, a, c);
            inv.add_col_multiple(a, b, ring.neg(c));
        } else {
            let u = loop {
                let u = rng.gen_range(1..ring.modulus());
                if ring.is_unit(u) {
                    break u;
                }
            };
            p.scale_row(a, u);
            inv.scale_col(a, ring.inv(u).expect("unit"));
        }
    }
    (p, inv)
}

/// A complex on degrees `0..=top` with its homology computed from the
/// elementary pieces it was assembled from.
#[derive(Clone, Debug)]
pub struct RandomComplex {
    pub complex: GradedSliceComplex,
    pub expected: BTreeMap<i64, ModuleInvariants>,
}

/// Direct sum of spheres `Z/p^n[k]` and disks `p^e: Z/p^n -> Z/p^n` (degree `k` to `k-1`),
/// with at most `max_rank` generators per degree, then conjugated by random
/// invertible matrices. Ungraded (one weight).
pub fn random_complex<R: Rng + ?Sized>(ring: ModRing, top: usize, max_rank: usize, rng: &mut R) -> Result<RandomComplex> {
    let n = ring.n();
    let mut ranks = vec![0usize; top + 1];
    // (degree of source, exponent) for disks; spheres as (degree, None).
    let mut pieces: Vec<(usize, Option<u32>)> = Vec::new();
    for _ in 0..rng.gen_range(0..=max_rank * (top + 1)) {
        let k = rng.gen_range(0..=top);
        if k >= 1 && rng.gen_bool(0.6) {
            if ranks[k] < max_rank && ranks[k - 1] < max_rank {
                ranks[k] += 1;
                ranks[k - 1] += 1;
                pieces.push((k, Some(rng.gen_range(0..n))));
            }
        } else if ranks[k] < max_rank {
            ranks[k] += 1;
            pieces.push((k, None));
        }
    }
    let mut expected: BTreeMap<i64, Vec<u32>> = BTreeMap::new();
    let mut diffs: Vec<ModMatrix> = (1..=top).map(|k| ModMatrix::zeros(ring, ranks[k - 1], ranks[k])).collect();
    let mut used = vec![0usize; top + 1];
    for &(k, e) in &pieces {
        match e {
            None => {
                expected.entry(k as i64).or_default().push(n);
                used[k] += 1;
            }
            Some(e) => {
                expected.entry(k as i64).or_default().push(e);
                expected.entry(k as i64 - 1).or_default().push(e);
                diffs[k - 1].set(used[k - 1], used[k], ring.p_power(e));
                used[k] += 1;
                used[k - 1] += 1;
            }
        }
    }
    let conj: Vec<(ModMatrix, ModMatrix)> = ranks.iter().map(|&r| random_invertible(ring, r, rng)).collect();
    let diffs = diffs
        .iter()
        .enumerate()
        .map(|(i, d)| conj[i].0.mul(d)?.mul(&conj[i + 1].1))
        .collect::<Result<Vec<_>>>()?;
    let complex = GradedSliceComplex::ungraded(ring, 0, ranks, diffs)?;
    let expected = expected
        .into_iter()
        .map(|(k, es)| (k, ModuleInvariants::from_exponents(ring.p(), es.into_iter().filter(|&e| e > 0).collect())))
        .collect();
    Ok(RandomComplex { complex, expected })
}

/// `C ⊗ C'` for two random complexes on `0..=top`, conjugated by a random invertible
/// matrix in each bidegree. The differentials commute.
pub fn random_double_complex<R: Rng + ?Sized>(ring: ModRing, top: usize, max_rank: usize, rng: &mut R) -> Result<DoubleComplex> {
    let c = random_complex(ring, top, max_rank, rng)?.complex;
    let c2 = random_complex(ring, top, max_rank, rng)?.complex;
    let t = top as i64;
    let mut s = DoubleSlice::default();
    let mut conj = BTreeMap::new();
    for p in 0..=t {
        for q in 0..=t {
            let r = c.rank(p, 0) * c2.rank(q, 0);
            s.ranks.insert((p, q), r);
            conj.insert((p, q), random_invertible(ring, r, rng));
        }
    }
    for p in 0..=t {
        for q in 0..=t {
            let (_, inv) = &conj[&(p, q)];
            if p >= 1 {
                let dh = c.differential(p, 0).kron(&ModMatrix::identity(ring, c2.rank(q, 0)));
                s.dh.insert((p, q), conj[&(p - 1, q)].0.mul(&dh)?.mul(inv)?);
            }
            if q >= 1 {
                let dv = ModMatrix::identity(ring, c.rank(p, 0)).kron(&c2.differential(q, 0));
                s.dv.insert((p, q), conj[&(p, q - 1)].0.mul(&dv)?.mul(inv)?);
            }
        }
    }
    let d = DoubleComplex { ring, p_range: (0, t), q_range: (0, t), slices: BTreeMap::from([(0, s)]) };
    d.validate()?;
    Ok(d)
}

#[cfg(test)]
mod tests {
    use rand::SeedableRng;

    use super::*;
    use crate::complexes::slice_homology;

    #[test]
    fn invertible_pairs_multiply_to_identity() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(7);
        let r = ModRing::new(3, 2).unwrap();
        for n in 0..5 {
            let (p, inv) = random_invertible(r, n, &mut rng);
            assert_eq!(p.mul(&inv).unwrap(), ModMatrix::identity(r, n));
        }
    }

    #[test]
    fn random_complex_homology_matches_construction() {
        let mut rng = rand::rngs::StdRng::seed_from_u64(11);
        let r = ModRing::new(2, 2).unwrap();
        for _ in 0..20 {
            let rc = random_complex(r, 3, 3, &mut rng).unwrap();
            for k in 0..=3 {
                let got = slice_homology(&rc.complex, k, 0).unwrap();
                let want = rc.expected.get(&k).cloned().unwrap_or_else(|| ModuleInvariants::zero(2));
                assert_eq!(got, want, "degree {k}");
            }
        }
    }
}
