use std::time::Instant;

use hodgekit::exactlin::{resultant, IntPoly};
use hodgekit::padicfield::{
    cyclotomic_tower, different_valuation, fontaine_annihilator_check, omega_invariants, MonogenicExtension,
};
use num_bigint::BigInt;
use num_rational::Ratio;

/// Closed-form oracle: `v_p(disc Φ_{p^r}) = p^{r-1}(r(p-1) - 1)`.
fn discriminant_valuation(p: i64, r: u32) -> i64 {
    p.pow(r - 1) * (r as i64 * (p - 1) - 1)
}

#[test]
fn cyclotomic_differents_for_small_primes() {
    let start = Instant::now();
    for p in [2u64, 3, 5] {
        for r in 1..=3 {
            let row = fontaine_annihilator_check(p, r).unwrap();
            assert!(row.agrees, "{row:?}");
            let d = row.degree as i64;
            assert_eq!(row.smith_length as i64, discriminant_valuation(p as i64, r), "p={p} r={r}");
            assert_eq!(row.resultant.value(), Some(Ratio::new(discriminant_valuation(p as i64, r), d)));
        }
    }
    assert!(start.elapsed().as_secs() < 10, "took {:?}", start.elapsed());
}

#[test]
fn lengths_grow_along_the_tower() {
    for p in [2, 3] {
        let t = cyclotomic_tower(p, 3).unwrap();
        assert!(t.lengths_increase, "{t:?}");
    }
}

#[test]
fn eisenstein_and_unramified_cases() {
    let e = MonogenicExtension::eisenstein(3, IntPoly::from_i64(&[-3, 0, 1])).unwrap();
    let v = different_valuation(&e).unwrap();
    assert_eq!(v.value(), Some(Ratio::new(1, 2)));
    assert_eq!(omega_invariants(&e, 3).unwrap().length, 1);

    let u = MonogenicExtension::unramified(2, IntPoly::from_i64(&[1, 1, 1])).unwrap();
    assert_eq!(different_valuation(&u).unwrap().value(), Some(Ratio::from_integer(0)));
    assert_eq!(omega_invariants(&u, 2).unwrap().length, 0);
}

#[test]
fn resultant_of_the_cube_root_polynomial() {
    let f = IntPoly::from_i64(&[1, 1, 1]);
    assert_eq!(resultant(&f, &f.derivative()).unwrap(), BigInt::from(3));
}
