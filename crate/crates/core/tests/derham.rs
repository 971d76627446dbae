use hodgekit::cotangent::AlgebraPresentation;
use hodgekit::derham::{
    build_derham, exterior_of_conormal, frobenius_audit, graded_piece_report, hodge_quotient_homology, pd_envelope_report,
    universal_thickening,
};
use hodgekit::exactlin::ModRing;
use hodgekit::pdpow::pd_envelope_slices;
use hodgekit::polyalg::{parse_poly, PolyAlgebra, Variable};
use proptest::prelude::*;

fn quotient(p: u64, n: u32, f: &str) -> AlgebraPresentation {
    let a = PolyAlgebra::new(ModRing::new(p, n).unwrap(), vec![Variable::new("y", 1)], None).unwrap();
    let f = parse_poly(&a, f).unwrap();
    AlgebraPresentation::quotient(a, f).unwrap()
}

#[test]
fn mod_p_hodge_quotients_of_the_origin() {
    for p in [2, 3] {
        let pres = quotient(p, 1, "y");
        let c = build_derham(&pres, 7, 3, 5).unwrap();
        c.check_square_zero().unwrap();
        for i in 1..=5 {
            let h = hodge_quotient_homology(&c, i).unwrap();
            assert_eq!(h.total(0).length(), i as u64, "p={p} i={i}");
            for t in 1..=2 {
                assert!(h.total(t).is_zero(), "p={p} i={i} t={t}");
            }
        }
        let h = hodge_quotient_homology(&c, 7).unwrap();
        for w in 0..=5 {
            assert_eq!(h.invariants(0, w).length(), 1, "p={p} w={w}");
        }
    }
}

#[test]
fn mod_four_derham_matches_divided_powers() {
    let pres = quotient(2, 2, "y");
    let r = pd_envelope_report(&pres, 4).unwrap();
    assert!(r.passes(), "{r:?}");
    for row in r.rows.iter().filter(|r| r.hodge_level.is_none()) {
        assert_eq!(row.derham.factors(), vec![4], "weight {}", row.weight);
    }
    // Hodge slices against the divided-power filtration, independently of the report.
    for i in 1..=4 {
        let c = build_derham(&pres, i, 2, 4).unwrap();
        let h = hodge_quotient_homology(&c, i).unwrap();
        let env = pd_envelope_slices(pres.ring(), pres.relation().unwrap(), 4, Some(i)).unwrap();
        for w in 0..=4 {
            assert_eq!(h.invariants(0, w), env[&w], "i={i} w={w}");
        }
    }
}

#[test]
fn squared_relation_matches_its_envelope() {
    let pres = quotient(2, 2, "y^2");
    let r = pd_envelope_report(&pres, 4).unwrap();
    assert!(r.passes(), "{r:?}");
}

#[test]
fn residue_field_envelopes_mod_p() {
    for p in [2, 3] {
        let r = pd_envelope_report(&quotient(p, 1, "y"), 5).unwrap();
        assert!(r.passes(), "p={p}: {r:?}");
    }
}

#[test]
fn universal_first_order_thickening() {
    let r = universal_thickening(&quotient(2, 2, "y"), 2).unwrap();
    assert!(r.passes(), "{r:?}");
    let r = universal_thickening(&quotient(3, 1, "y"), 3).unwrap();
    assert!(r.passes(), "{r:?}");
}

#[test]
fn graded_pieces_are_shifted_exterior_powers() {
    for (p, n, f) in [(2, 1, "y"), (3, 1, "y"), (2, 2, "y"), (2, 1, "y^2")] {
        let pres = quotient(p, n, f);
        let c = build_derham(&pres, 4, 4, 4).unwrap();
        for i in 0..=3 {
            let r = graded_piece_report(&c, i).unwrap();
            assert!(r.all_equal, "{p}^{n} f={f} i={i}: {r:?}");
        }
    }
}

#[test]
fn hodge_lengths_add_over_graded_pieces() {
    let pres = quotient(2, 2, "y");
    let c = build_derham(&pres, 5, 2, 4).unwrap();
    for i in 1..=4 {
        let h = hodge_quotient_homology(&c, i).unwrap();
        let gr: u64 = (0..i).map(|j| exterior_of_conormal(&pres, j, 0, 4).unwrap().total(j as i64).length()).sum();
        assert_eq!(h.total(0).length(), gr, "i={i}");
    }
}

#[test]
fn frobenius_dimension_audit() {
    for p in [2, 3] {
        for row in frobenius_audit(&quotient(p, 1, "y"), 1, 4).unwrap() {
            assert_eq!(row.graded_sum, row.total, "p={p} {row:?}");
        }
    }
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(16))]

    #[test]
    fn product_satisfies_leibniz(seed_u in proptest::collection::vec(0u64..4, 64), seed_v in proptest::collection::vec(0u64..4, 64),
                                 t1 in 0usize..2, t2 in 0usize..2, w1 in 0u32..3, w2 in 0u32..3) {
        let pres = quotient(2, 2, "y");
        let c = build_derham(&pres, 8, 4, 4).unwrap();
        let ring = c.ring();
        let (s1, s2) = (c.slice(w1).unwrap(), c.slice(w2).unwrap());
        let u: Vec<u64> = seed_u.iter().cycle().take(s1.bases[t1].len()).copied().collect();
        let v: Vec<u64> = seed_v.iter().cycle().take(s2.bases[t2].len()).copied().collect();
        let t = t1 + t2;
        prop_assume!(t >= 1);
        let lhs = c.apply_d(t, w1 + w2, &c.product((t1, w1, &u), (t2, w2, &v)).unwrap()).unwrap();
        let mut rhs = vec![0; lhs.len()];
        if t1 >= 1 {
            let a = c.product((t1 - 1, w1, &c.apply_d(t1, w1, &u).unwrap()), (t2, w2, &v)).unwrap();
            for (r, x) in rhs.iter_mut().zip(a) { *r = ring.add(*r, x); }
        }
        if t2 >= 1 {
            let b = c.product((t1, w1, &u), (t2 - 1, w2, &c.apply_d(t2, w2, &v).unwrap())).unwrap();
            let sign = if t1 % 2 == 1 { ring.neg(1) } else { 1 };
            for (r, x) in rhs.iter_mut().zip(b) { *r = ring.add(*r, ring.mul(sign, x)); }
        }
        prop_assert_eq!(lhs, rhs);
    }
}
