use std::collections::BTreeMap;
use std::sync::Arc;

use hodgekit::complexes::{GradedSliceComplex, Slice};
use hodgekit::exactlin::{ModMatrix, ModRing};
use hodgekit::pdpow::{
    composition_coefficient, derived_power, exterior_filtration, gamma_rank, koszul_gamma_complex, pd_envelope_slices,
    random_split_exact, Functor, GeneratorKind, PDAlgebra, PDElement, PDGenerator,
};
use hodgekit::polyalg::{parse_poly, PolyAlgebra, Variable};
use num_bigint::BigInt;
use proptest::prelude::*;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

fn free_in_degree(ring: ModRing, r: usize, degree: usize) -> GradedSliceComplex {
    let mut ranks = vec![0; degree + 1];
    ranks[degree] = r;
    let diffs = (0..degree).map(|k| ModMatrix::zeros(ring, ranks[k], ranks[k + 1])).collect();
    let mut slices = BTreeMap::new();
    slices.insert(1, Slice::new(ring, ranks, diffs).unwrap());
    GradedSliceComplex::new(ring, 0, degree as i64, slices).unwrap()
}

/// Exact integer oracle for binomials, independent of the library.
fn choose(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

#[test]
fn quillen_shift_for_small_free_modules() {
    for ring in [ModRing::new(2, 2).unwrap(), ModRing::new(3, 1).unwrap()] {
        for r in 1..=2 {
            for n in 1..=3u32 {
                let d = derived_power(&free_in_degree(ring, r, 1), Functor::Exterior, n, n as usize + 1).unwrap();
                assert!(d.homology.concentrated_in(n as i64), "{ring:?} r={r} n={n}");
                let expect = vec![ring.modulus(); choose((n as usize + r - 1) as u64, n as u64) as usize];
                assert_eq!(d.homology.total(n as i64).factors(), expect, "{ring:?} r={r} n={n}");
                // The Γⁿ side computed directly in degree 0.
                let g = derived_power(&free_in_degree(ring, r, 0), Functor::Gamma, n, 2).unwrap();
                assert_eq!(g.homology.total(0).factors(), expect);
                assert_eq!(gamma_rank(r, n), expect.len());
            }
        }
    }
}

#[test]
fn koszul_gamma_exactness_on_random_split_sequences() {
    for ring in [ModRing::new(3, 2).unwrap(), ModRing::new(2, 1).unwrap()] {
        let mut rng = ChaCha8Rng::seed_from_u64(7);
        for _ in 0..20 {
            let r1 = rand::Rng::gen_range(&mut rng, 0..=2);
            let r2 = rand::Rng::gen_range(&mut rng, 0..=2);
            let (u, v, _) = random_split_exact(ring, r1, r2, &mut rng);
            for n in 0..=3 {
                assert!(koszul_gamma_complex(&u, &v, n).unwrap().exact, "{ring:?} r1={r1} r2={r2} n={n}");
            }
        }
    }
}

#[test]
fn exterior_filtration_on_random_split_sequences() {
    let ring = ModRing::new(3, 2).unwrap();
    let mut rng = ChaCha8Rng::seed_from_u64(11);
    for _ in 0..10 {
        let (u, v, s) = random_split_exact(ring, 2, 2, &mut rng);
        for i in 0..=4 {
            let r = exterior_filtration(&u, &v, Some(&s), i).unwrap();
            assert!(r.consistent);
            assert_eq!(r.total_rank as u64, choose(4, i as u64));
        }
    }
}

#[test]
fn envelope_of_x_over_z4() {
    let ring = ModRing::new(2, 2).unwrap();
    let a = PolyAlgebra::new(ring, vec![Variable::new("x", 1)], None).unwrap();
    let s = pd_envelope_slices(ring, &parse_poly(&a, "x").unwrap(), 4, None).unwrap();
    assert!(s.values().all(|m| m.factors() == vec![4]));
}

fn algebra() -> Arc<PDAlgebra> {
    let gens = vec![
        PDGenerator { name: "x".into(), weight: 1, kind: GeneratorKind::Polynomial },
        PDGenerator { name: "s".into(), weight: 1, kind: GeneratorKind::Divided },
        PDGenerator { name: "t".into(), weight: 1, kind: GeneratorKind::Divided },
    ];
    PDAlgebra::new(ModRing::new(2, 3).unwrap(), gens, 6).unwrap()
}

fn element(alg: &Arc<PDAlgebra>, coeffs: &[u64], ideal: bool) -> PDElement {
    let basis: Vec<Vec<u32>> =
        alg.basis().iter().filter(|m| alg.weight_of(m) <= 2 && (!ideal || alg.divided_index(m) > 0)).cloned().collect();
    PDElement::from_terms(alg, basis.into_iter().zip(coeffs.iter().copied()))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(24))]

    #[test]
    fn divided_power_axioms(
        a in proptest::collection::vec(0u64..8, 8),
        b in proptest::collection::vec(0u64..8, 8),
        lambda in 0u64..8,
        s in 0u32..3,
        t in 0u32..3,
    ) {
        let alg = algebra();
        let ring = alg.ring();
        let x = element(&alg, &a, true);
        let y = element(&alg, &b, true);
        let any = element(&alg, &b, false);
        prop_assert_eq!(x.gamma(0).unwrap(), PDElement::one(&alg));
        prop_assert_eq!(x.gamma(1).unwrap(), x.clone());
        // γ_s γ_t = C(s+t, s) γ_{s+t}
        let lhs = x.gamma(s).unwrap().mul(&x.gamma(t).unwrap()).unwrap();
        let rhs = x.gamma(s + t).unwrap().scale(choose((s + t) as u64, s as u64));
        prop_assert_eq!(lhs, rhs);
        // γ_n(λx) = λ^n γ_n(x)
        prop_assert_eq!(x.scale(lambda).gamma(s).unwrap(), x.gamma(s).unwrap().scale(ring.pow(lambda, s as u64)));
        // γ_n(a x) = a^n γ_n(x) for arbitrary a
        prop_assert_eq!(any.mul(&x).unwrap().gamma(s).unwrap(), any.pow(s).unwrap().mul(&x.gamma(s).unwrap()).unwrap());
        // γ_n(x + y) = Σ γ_i(x) γ_{n-i}(y)
        let sum = x.add(&y).unwrap().gamma(s + t).unwrap();
        let mut expand = PDElement::zero(&alg);
        for i in 0..=s + t {
            expand = expand.add(&x.gamma(i).unwrap().mul(&y.gamma(s + t - i).unwrap()).unwrap()).unwrap();
        }
        prop_assert_eq!(sum, expand);
        // γ_m(γ_n(x)) = (mn)!/(m!(n!)^m) γ_{mn}(x)
        if s >= 1 && t >= 1 {
            let c = composition_coefficient(s, t);
            let c = ring.reduce_big(&c);
            prop_assert_eq!(x.gamma(t).unwrap().gamma(s).unwrap(), x.gamma(s * t).unwrap().scale(c));
        }
    }

    #[test]
    fn product_is_associative_and_commutative(
        a in proptest::collection::vec(0u64..8, 10),
        b in proptest::collection::vec(0u64..8, 10),
        c in proptest::collection::vec(0u64..8, 10),
    ) {
        let alg = algebra();
        let (x, y, z) = (element(&alg, &a, false), element(&alg, &b, false), element(&alg, &c, false));
        prop_assert_eq!(x.mul(&y).unwrap(), y.mul(&x).unwrap());
        prop_assert_eq!(x.mul(&y).unwrap().mul(&z).unwrap(), x.mul(&y.mul(&z).unwrap()).unwrap());
    }

    #[test]
    fn composition_coefficients_are_integers(k in 1u32..7, i in 1u32..7) {
        let c = composition_coefficient(k, i);
        prop_assert!(c >= BigInt::from(1));
    }
}
