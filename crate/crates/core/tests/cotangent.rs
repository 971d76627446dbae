use std::collections::BTreeMap;

use hodgekit::complexes::{homology_report, GradedSliceComplex, Slice};
use hodgekit::cotangent::{
    bar_resolution, base_change_resolution, cotangent_homology, ext1_cotangent, kaehler_invariants, quotient_shortcut,
    AlgebraPresentation, BModule, PresentationDescriptor,
};
use hodgekit::exactlin::ModRing;
use hodgekit::polyalg::{parse_poly, Monomial, Poly, PolyAlgebra, Variable};
use hodgekit::Error;
use proptest::prelude::*;

fn line(ring: ModRing, name: &str) -> PolyAlgebra {
    PolyAlgebra::new(ring, vec![Variable::new(name, 1)], None).unwrap()
}

fn quotient(ring: ModRing, f: &str) -> AlgebraPresentation {
    let a = line(ring, "x");
    let f = parse_poly(&a, f).unwrap();
    AlgebraPresentation::quotient(a, f).unwrap()
}

fn reduce_complex(c: &GradedSliceComplex, ring: ModRing) -> GradedSliceComplex {
    let (lo, hi) = c.window();
    let slices: BTreeMap<u32, Slice> = c
        .slices()
        .iter()
        .map(|(&w, s)| (w, Slice::new(ring, s.ranks().to_vec(), s.diffs().iter().map(|d| d.reduce_to(ring).unwrap()).collect()).unwrap()))
        .collect();
    GradedSliceComplex::new(ring, lo, hi, slices).unwrap()
}

#[test]
fn regular_quotients_have_conormal_cotangent_complex() {
    for (p, n, f) in [(3, 1, "x"), (2, 1, "x^2"), (2, 2, "x")] {
        let ring = ModRing::new(p, n).unwrap();
        let pres = quotient(ring, f);
        let bar = bar_resolution(ring, 4, 5).unwrap();
        let res = base_change_resolution(&bar, &pres).unwrap();
        let r = hodgekit::cotangent::cotangent_from_resolution(&res, 2).unwrap();
        let shortcut = quotient_shortcut(&pres, 5).unwrap();
        let d = parse_poly(pres.base(), f).unwrap().degree_in(0);
        for w in 0..=5 {
            assert!(r.invariants(0, w).is_zero());
            assert!(r.invariants(2, w).is_zero());
            assert_eq!(r.invariants(1, w), shortcut[&w], "{f} weight {w}");
            // I/I² ≅ A/(f) shifted by deg f.
            let expect = if w >= d && w < 2 * d { vec![ring.modulus()] } else { vec![] };
            assert_eq!(r.invariants(1, w).factors(), expect, "{f} weight {w}");
        }
    }
}

#[test]
fn bar_resolution_resolves_the_coefficients() {
    let ring = ModRing::new(2, 3).unwrap();
    let bar = bar_resolution(ring, 3, 4).unwrap();
    let h = bar.certificate().homology.clone().unwrap();
    assert_eq!(h.invariants(0, 0).factors(), vec![8]);
    assert!((1..=4).all(|w| h.invariants(0, w).is_zero()));
    assert!(bar_resolution(ring, 0, 4).is_err());
}

#[test]
fn zero_divisors_are_rejected() {
    let ring = ModRing::new(3, 1).unwrap();
    let a = line(ring, "x");
    assert!(matches!(AlgebraPresentation::quotient(a.clone(), Poly::zero(ring, 1)), Err(Error::Hypothesis(_))));
    // 2x over Z/4 has a non-unit leading coefficient and kills 2.
    let a4 = line(ModRing::new(2, 2).unwrap(), "x");
    assert!(AlgebraPresentation::quotient(a4.clone(), parse_poly(&a4, "2x").unwrap()).is_err());
}

#[test]
fn kaehler_examples() {
    let f3 = ModRing::new(3, 1).unwrap();
    let amb = line(f3, "z");
    let cube = AlgebraPresentation::monogenic(f3, "z", 1, parse_poly(&amb, "z^3").unwrap()).unwrap();
    let k = kaehler_invariants(&cube, 3).unwrap();
    let total: usize = k.values().map(|m| m.rank()).sum();
    assert_eq!(total, 3, "B dz with B of rank 3");
    let free = AlgebraPresentation::free(PolyAlgebra::new(f3, Vec::new(), None).unwrap(), "x").unwrap();
    assert_eq!(kaehler_invariants(&free, 1).unwrap()[&1].factors(), vec![3]);
    let f2 = ModRing::new(2, 1).unwrap();
    let amb2 = line(f2, "z");
    let f4 = AlgebraPresentation::unramified(f2, "z", parse_poly(&amb2, "z^2 + z + 1").unwrap()).unwrap();
    assert!(kaehler_invariants(&f4, 0).unwrap()[&0].is_zero());
    let r = cotangent_homology(&f4, 2, 0).unwrap();
    assert!(r.homology.entries.iter().all(|e| e.invariants.is_zero()));
}

#[test]
fn thickening_extension_group() {
    let ring = ModRing::new(2, 2).unwrap();
    let pres = quotient(ring, "x");
    let r = ext1_cotangent(&pres, &BModule::residue(&pres, 1).unwrap(), 3, 3).unwrap();
    assert_eq!(r.ext1.factors(), vec![2]);
    assert_eq!(r.conormal_hom.as_ref().unwrap().factors(), vec![2]);
}

#[test]
fn descriptors_roundtrip_through_json() {
    let pres = quotient(ModRing::new(3, 2).unwrap(), "x^2 + 3x");
    let json = serde_json::to_string(&pres.descriptor()).unwrap();
    assert!(json.contains("\"shape\":\"quotient\""));
    let back: PresentationDescriptor = serde_json::from_str(&json).unwrap();
    assert_eq!(AlgebraPresentation::from_descriptor(&back).unwrap(), pres);
}

fn random_relation(ring: ModRing, coeffs: &[u64]) -> Poly {
    let d = coeffs.len() as u32;
    let mut terms: Vec<(Monomial, u64)> = coeffs.iter().enumerate().map(|(e, &c)| (Monomial(vec![e as u32]), c)).collect();
    // Unit leading coefficient.
    let mut lead = 1 + coeffs.last().copied().unwrap_or(0) % (ring.modulus() - 1);
    while !ring.is_unit(lead) {
        lead += 1;
    }
    terms.push((Monomial(vec![d]), lead));
    Poly::from_terms(ring, 1, terms)
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn resolution_matches_conormal_shortcut(
        which in 0usize..4,
        coeffs in proptest::collection::vec(0u64..27, 1..4),
    ) {
        let ring = [ModRing::new(2, 1), ModRing::new(3, 1), ModRing::new(2, 2), ModRing::new(3, 2)][which].clone().unwrap();
        let f = random_relation(ring, &coeffs);
        let pres = AlgebraPresentation::quotient(line(ring, "x"), f).unwrap();
        let w = 2 * (coeffs.len() as u32 + 1);
        let r = cotangent_homology(&pres, 2, w).unwrap();
        let s = quotient_shortcut(&pres, w).unwrap();
        for (wt, inv) in s {
            prop_assert_eq!(r.invariants(1, wt), inv);
            prop_assert!(r.invariants(0, wt).is_zero());
            prop_assert!(r.invariants(2, wt).is_zero());
        }
    }

    #[test]
    fn cotangent_complex_commutes_with_reduction_mod_p(
        p in prop_oneof![Just(2u64), Just(3u64)],
        coeffs in proptest::collection::vec(0u64..9, 1..4),
    ) {
        let ring = ModRing::new(p, 2).unwrap();
        let f = random_relation(ring, &coeffs);
        let w = 2 * (coeffs.len() as u32 + 1);
        let pres = AlgebraPresentation::quotient(line(ring, "x"), f.clone()).unwrap();
        let field = ring.residue_field();
        let pres_k = AlgebraPresentation::quotient(line(field, "x"), f.reduce_to(field)).unwrap();
        let over_a = cotangent_homology(&pres, 2, w).unwrap();
        let reduced = homology_report(&reduce_complex(&over_a.normalized, field));
        let direct = cotangent_homology(&pres_k, 2, w).unwrap();
        for d in 0..=1 {
            prop_assert_eq!(reduced.total(d), direct.homology.total(d));
        }
    }
}
