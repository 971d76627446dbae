use std::collections::BTreeMap;

use hodgekit::complexes::random::{random_complex, random_double_complex};
use hodgekit::complexes::{compare_homology, homology_report, total_complex, GradedSliceComplex};
use hodgekit::exactlin::{kernel_columns, ModMatrix, ModRing, ModuleInvariants};
use hodgekit::simplex::{
    diagonal, double_kan_transform, full_augmentation, kan_counit, kan_transform, normalize, normalized_complex,
    unnormalized_complex, MonotoneMap, SimplicialModule,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn rings() -> Vec<ModRing> {
    vec![ModRing::new(2, 2).unwrap(), ModRing::new(3, 2).unwrap(), ModRing::new(5, 1).unwrap()]
}

fn random_monotone(rng: &mut impl Rng, m: usize, n: usize) -> MonotoneMap {
    let mut v: Vec<usize> = (0..=m).map(|_| rng.gen_range(0..=n)).collect();
    v.sort();
    MonotoneMap::new(v, n).unwrap()
}

#[test]
fn normalization_inverts_kan_transform() {
    let mut rng = ChaCha8Rng::seed_from_u64(1);
    for ring in rings() {
        for _ in 0..5 {
            let rc = random_complex(ring, 4, 3, &mut rng).unwrap();
            let k = kan_transform(&rc.complex, 4).unwrap();
            k.check_identities().unwrap();
            let n = normalized_complex(&k).unwrap();
            for d in 0..=4 {
                assert_eq!(n.rank(d, 0), rc.complex.rank(d, 0));
                assert_eq!(n.differential(d, 0), rc.complex.differential(d, 0));
            }
            let un = unnormalized_complex(&k).unwrap();
            assert!(compare_homology(&n, &un, 0, 3).unwrap().all_equal);
            let rep = homology_report(&n);
            for d in 0..=3 {
                assert_eq!(rep.invariants(d, 0), rc.expected.get(&d).cloned().unwrap_or_else(|| ModuleInvariants::zero(ring.p())));
            }
        }
    }
}

#[test]
fn action_is_functorial() {
    let mut rng = ChaCha8Rng::seed_from_u64(2);
    let ring = ModRing::new(3, 2).unwrap();
    let rc = random_complex(ring, 3, 2, &mut rng).unwrap();
    let k = kan_transform(&rc.complex, 3).unwrap();
    for _ in 0..40 {
        let (l, m, n) = (rng.gen_range(0..=3), rng.gen_range(0..=3), rng.gen_range(0..=3));
        let beta = random_monotone(&mut rng, l, m);
        let alpha = random_monotone(&mut rng, m, n);
        let lhs = k.act(&alpha.compose(&beta).unwrap(), 0).unwrap();
        let rhs = k.act(&beta, 0).unwrap().mul(&k.act(&alpha, 0).unwrap()).unwrap();
        assert_eq!(lhs, rhs, "{alpha:?} after {beta:?}");
    }
}

#[test]
fn constant_module_normalizes_to_degree_zero() {
    let ring = ModRing::new(2, 3).unwrap();
    let x = SimplicialModule::constant(ring, 4, &BTreeMap::from([(0, 2), (3, 1)]));
    x.check_identities().unwrap();
    let n = normalized_complex(&x).unwrap();
    assert_eq!(n.rank(0, 3), 1);
    assert!((1..=4).all(|d| n.rank(d, 0) == 0 && n.rank(d, 3) == 0));
    let un = unnormalized_complex(&x).unwrap();
    let rep = homology_report(&un);
    assert_eq!(rep.invariants(0, 0).factors(), vec![8, 8]);
    assert!(rep.concentrated_in(0));
}

#[test]
fn kan_of_normalization_recovers_a_diagonal() {
    // Diagonals of double Kan transforms are not themselves Kan transforms.
    let mut rng = ChaCha8Rng::seed_from_u64(3);
    let ring = ModRing::new(2, 2).unwrap();
    for _ in 0..3 {
        let d = random_double_complex(ring, 1, 2, &mut rng).unwrap();
        let x = diagonal(&double_kan_transform(&d, 3).unwrap()).unwrap();
        x.check_identities().unwrap();
        let nx = normalize(&x).unwrap();
        let knx = kan_transform(&nx.complex, 3).unwrap();
        let nknx = normalized_complex(&knx).unwrap();
        assert!(compare_homology(&nx.complex, &nknx, 0, 2).unwrap().all_equal);
        for n in 0..=3 {
            let c = kan_counit(&x, &nx.bases[&0], n, 0).unwrap();
            assert_eq!(c.rows(), c.cols());
            // Bijective: the kernel is zero.
            assert!(c.rows() == 0 || kernel_columns(&c).is_zero());
        }
    }
}

#[test]
fn diagonal_matches_total_complex() {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    for ring in [ModRing::new(2, 2).unwrap(), ModRing::new(3, 1).unwrap()] {
        for _ in 0..3 {
            let d = random_double_complex(ring, 1, 2, &mut rng).unwrap();
            let b = double_kan_transform(&d, 3).unwrap();
            b.check_identities().unwrap();
            let x = diagonal(&b).unwrap();
            x.check_identities().unwrap();
            let tot = total_complex(&d).unwrap();
            let pi = normalized_complex(&x).unwrap();
            assert!(compare_homology(&pi, &tot, 0, 2).unwrap().all_equal);
        }
    }
}

#[test]
fn augmentation_is_independent_of_the_vertex() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    let ring = ModRing::new(3, 2).unwrap();
    for _ in 0..10 {
        let rc = random_complex(ring, 3, 3, &mut rng).unwrap();
        let c = &rc.complex;
        let d1 = c.differential(1, 0);
        // ε₀ must kill the image of d₁: combine vectors of the left kernel of d₁.
        let left = if d1.cols() == 0 { ModMatrix::identity(ring, c.rank(0, 0)) } else { kernel_columns(&d1.transpose()) };
        let k = left.cols();
        let coeffs = ModMatrix::from_fn(ring, 2, k, |_, _| rng.gen_range(0..9));
        let eps0 = coeffs.mul(&left.transpose()).unwrap();
        let x = kan_transform(c, 3).unwrap();
        for n in 0..=3 {
            let e = full_augmentation(&x, &eps0, n, 0).unwrap();
            assert_eq!(e.shape(), (2, x.rank(n, 0)));
        }
    }
}

#[test]
fn augmentation_must_equalize_faces() {
    let ring = ModRing::new(2, 1).unwrap();
    let c = GradedSliceComplex::ungraded(ring, 0, vec![1, 1], vec![ModMatrix::identity(ring, 1)]).unwrap();
    let x = kan_transform(&c, 2).unwrap();
    assert!(full_augmentation(&x, &ModMatrix::identity(ring, 1), 1, 0).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn kan_transforms_satisfy_simplicial_identities(seed in any::<u64>(), which in 0usize..3) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = rings()[which];
        let rc = random_complex(ring, 3, 2, &mut rng).unwrap();
        let k = kan_transform(&rc.complex, 4).unwrap();
        prop_assert!(k.check_identities().is_ok());
        let n = normalized_complex(&k).unwrap();
        for d in 0..=3 {
            prop_assert_eq!(n.differential(d, 0), rc.complex.differential(d, 0));
        }
    }

    #[test]
    fn tampered_faces_are_rejected(seed in any::<u64>()) {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let ring = ModRing::new(2, 2).unwrap();
        let c = GradedSliceComplex::ungraded(ring, 0, vec![1, 1], vec![ModMatrix::zeros(ring, 1, 1)]).unwrap();
        let k = kan_transform(&c, 3).unwrap();
        let mut slices = k.slices().clone();
        let s = slices.get_mut(&0).unwrap();
        let n = rng.gen_range(2..=3);
        let i = rng.gen_range(0..=n);
        let f = &mut s.faces[n][i];
        let (r, col) = (rng.gen_range(0..f.rows()), rng.gen_range(0..f.cols()));
        f.set(r, col, (f.get(r, col) + 1) % 4);
        prop_assert!(SimplicialModule::new(ring, 3, slices).is_err());
    }
}
