use hodgekit::exactlin::{IntPoly, ModRing};
use hodgekit::witt::{
    ker_theta_report, lift_uniqueness, p_adic_filtration_sizes, ring_isomorphisms, structure_polynomials, CyclotomicModel,
    FiniteRing, QuotientRing, WittRing,
};
use proptest::prelude::*;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn f4() -> QuotientRing {
    QuotientRing::new(ModRing::new(2, 1).unwrap(), &IntPoly::from_i64(&[1, 1, 1])).unwrap()
}

#[test]
fn small_witt_rings_by_exhaustive_isomorphism_search() {
    let z4 = QuotientRing::new(ModRing::new(2, 2).unwrap(), &IntPoly::from_i64(&[0, 1])).unwrap();
    let w2f2 = WittRing::new(ModRing::new(2, 1).unwrap(), 2, 2).unwrap();
    assert_eq!(ring_isomorphisms(&z4, &w2f2).unwrap().len(), 1);

    let target = QuotientRing::new(ModRing::new(2, 2).unwrap(), &IntPoly::from_i64(&[1, 1, 1])).unwrap();
    let w2f4 = WittRing::new(f4(), 2, 2).unwrap();
    // x ↦ the two roots of x²+x+1 (Galois conjugates)
    assert_eq!(ring_isomorphisms(&target, &w2f4).unwrap().len(), 2);
    // Z/4[x]/(x²) has a different shape and no isomorphism.
    let nil = QuotientRing::new(ModRing::new(2, 2).unwrap(), &IntPoly::from_i64(&[0, 0, 1])).unwrap();
    assert!(ring_isomorphisms(&nil, &w2f4).unwrap().is_empty());
}

#[test]
fn ghost_components_are_additive_and_multiplicative_over_z8() {
    let base = ModRing::new(2, 3).unwrap();
    let w = WittRing::new(base, 2, 3).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(2024);
    for _ in 0..100 {
        let a: Vec<u64> = (0..3).map(|_| rng.gen_range(0..8)).collect();
        let b: Vec<u64> = (0..3).map(|_| rng.gen_range(0..8)).collect();
        let (ga, gb) = (w.ghost(&a), w.ghost(&b));
        let sum: Vec<u64> = ga.iter().zip(&gb).map(|(x, y)| base.add(*x, *y)).collect();
        let prod: Vec<u64> = ga.iter().zip(&gb).map(|(x, y)| base.mul(*x, *y)).collect();
        assert_eq!(w.ghost(&w.add(&a, &b)), sum);
        assert_eq!(w.ghost(&w.mul(&a, &b)), prod);
    }
}

#[test]
fn lifts_of_identity_and_frobenius_over_f4_are_unique() {
    let w = WittRing::new(f4(), 2, 2).unwrap();
    let s = QuotientRing::new(ModRing::new(2, 2).unwrap(), &IntPoly::from_i64(&[1, 1, 1])).unwrap();
    let r = f4();
    for phi in [|x: &[u64]| x.to_vec(), |x: &[u64]| f4().pow(&x.to_vec(), 2)] {
        let u = lift_uniqueness(&w, phi, &s).unwrap();
        assert_eq!(u.ring_maps, 2);
        assert_eq!(u.lifts, 1, "{u:?}");
        assert!(u.formula_matches && u.formula_is_homomorphism && u.lift_independent, "{u:?}");
    }
    assert_eq!(r.elements().unwrap().len(), 4);
}

#[test]
fn p_adic_filtration_of_witt_vectors_of_finite_fields() {
    for (r, q) in [(f4(), 4usize)] {
        for n in 1..=3 {
            let sizes = p_adic_filtration_sizes(&WittRing::new(r.clone(), 2, n).unwrap()).unwrap();
            for i in 0..n {
                assert_eq!(sizes[i] / sizes[i + 1], q, "n={n} i={i}");
            }
            assert_eq!(sizes[n], 1);
        }
    }
    let f3 = QuotientRing::new(ModRing::new(3, 1).unwrap(), &IntPoly::from_i64(&[0, 1])).unwrap();
    assert_eq!(p_adic_filtration_sizes(&WittRing::new(f3, 3, 3).unwrap()).unwrap(), vec![27, 9, 3, 1]);
}

#[test]
fn theta_on_the_level_eight_cyclotomic_model() {
    let r = ker_theta_report(&CyclotomicModel::new(2, 3, 2, 2).unwrap()).unwrap();
    assert!(r.passes(), "{r:#?}");
    assert_eq!(r.witt_size, 256);
    assert!(!r.tilt_is_perfect);
    assert!(r.shift_bijective);
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn ghost_map_is_a_ring_map_over_z_mod_p4(p in prop::sample::select(vec![2u64, 3]), seed in any::<u64>()) {
        let base = ModRing::new(p, 4).unwrap();
        let w = WittRing::new(base, p, 3).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        let a: Vec<u64> = (0..3).map(|_| rng.gen_range(0..base.modulus())).collect();
        let b: Vec<u64> = (0..3).map(|_| rng.gen_range(0..base.modulus())).collect();
        let (ga, gb) = (w.ghost(&a), w.ghost(&b));
        let sum: Vec<u64> = ga.iter().zip(&gb).map(|(x, y)| base.add(*x, *y)).collect();
        let prod: Vec<u64> = ga.iter().zip(&gb).map(|(x, y)| base.mul(*x, *y)).collect();
        prop_assert_eq!(w.ghost(&w.add(&a, &b)), sum);
        prop_assert_eq!(w.ghost(&w.mul(&a, &b)), prod);
        prop_assert_eq!(w.ghost(&w.neg(&a)), ga.iter().map(|x| base.neg(*x)).collect::<Vec<_>>());
    }

    #[test]
    fn witt_vectors_over_f4_form_a_ring(a in proptest::collection::vec(0u64..2, 6), b in proptest::collection::vec(0u64..2, 6), c in proptest::collection::vec(0u64..2, 6)) {
        let w = WittRing::new(f4(), 2, 3).unwrap();
        let split = |v: &[u64]| v.chunks(2).map(|x| x.to_vec()).collect::<Vec<_>>();
        let (x, y, z) = (split(&a), split(&b), split(&c));
        prop_assert_eq!(w.add(&x, &y), w.add(&y, &x));
        prop_assert_eq!(w.mul(&x, &y), w.mul(&y, &x));
        prop_assert_eq!(w.add(&w.add(&x, &y), &z), w.add(&x, &w.add(&y, &z)));
        prop_assert_eq!(w.mul(&w.mul(&x, &y), &z), w.mul(&x, &w.mul(&y, &z)));
        prop_assert_eq!(w.mul(&x, &w.add(&y, &z)), w.add(&w.mul(&x, &y), &w.mul(&x, &z)));
        prop_assert_eq!(w.add(&x, &w.neg(&x)), w.zero());
        // [x][y] = [xy]
        let r = f4();
        prop_assert_eq!(w.mul(&w.teichmuller(&x[0]), &w.teichmuller(&y[0])), w.teichmuller(&r.mul(&x[0], &y[0])));
    }
}

#[test]
fn structure_tables_up_to_length_four() {
    let t = structure_polynomials(2, 4).unwrap();
    assert!(t.verify_ghost_identities());
    assert_eq!(t.sum.len(), 4);
}
