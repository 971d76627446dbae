use hodgekit::exactlin::{is_prime, IntPoly, ModRing};
use hodgekit::padicfield::fontaine_annihilator_check;
use hodgekit::witt::{ker_theta_report, lift_uniqueness, ring_isomorphisms, CyclotomicModel, FiniteRing, QuotientRing, WittRing};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::{usage, Case, Params, UsageError};

fn f4() -> QuotientRing {
    QuotientRing::new(ModRing::new(2, 1).expect("F_2"), &IntPoly::from_i64(&[1, 1, 1])).expect("x²+x+1 is monic")
}

fn quotient(p: u64, n: u32, modulus: &[i64]) -> hodgekit::Result<QuotientRing> {
    QuotientRing::new(ModRing::new(p, n)?, &IntPoly::from_i64(modulus))
}

fn isomorphism_case(name: &str, expected: usize, count: hodgekit::Result<usize>) -> Case {
    let show = |k: usize| format!("{k} isomorphism{}", if k == 1 { "" } else { "s" });
    let want = show(expected);
    match count {
        Ok(c) => Case::check(name, want, show(c), c == expected),
        Err(e) => Case::from_error(name, &want, &e),
    }
}

fn ghost_case(pairs: u64, seed: u64) -> Case {
    let base = ModRing::new(2, 3).expect("Z/8");
    let w = match WittRing::new(base, 2, 3) {
        Ok(w) => w,
        Err(e) => return Case::from_error("ghost-map-over-z8", "ring map", &e),
    };
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut good = 0;
    for _ in 0..pairs {
        let a: Vec<u64> = (0..3).map(|_| rng.gen_range(0..8)).collect();
        let b: Vec<u64> = (0..3).map(|_| rng.gen_range(0..8)).collect();
        let (ga, gb) = (w.ghost(&a), w.ghost(&b));
        let sum: Vec<u64> = ga.iter().zip(&gb).map(|(x, y)| base.add(*x, *y)).collect();
        let prod: Vec<u64> = ga.iter().zip(&gb).map(|(x, y)| base.mul(*x, *y)).collect();
        if w.ghost(&w.add(&a, &b)) == sum && w.ghost(&w.mul(&a, &b)) == prod {
            good += 1;
        }
    }
    Case::check(
        "ghost-map-over-z8",
        format!("{pairs}/{pairs} pairs additive and multiplicative"),
        format!("{good}/{pairs} pairs additive and multiplicative"),
        good == pairs,
    )
}

fn lift_case(name: &str, phi: impl Fn(&[u64]) -> Vec<u64> + Copy) -> Case {
    let want = "one lift, given by the Teichmüller formula";
    let run = || -> hodgekit::Result<Case> {
        let w = WittRing::new(f4(), 2, 2)?;
        let u = lift_uniqueness(&w, phi, &quotient(2, 2, &[1, 1, 1])?)?;
        let ok = u.lifts == 1 && u.formula_matches && u.formula_is_homomorphism && u.lift_independent;
        let computed = format!(
            "{} of {} ring maps lift, formula {}",
            u.lifts,
            u.ring_maps,
            if u.formula_matches && u.formula_is_homomorphism { "matches" } else { "differs" }
        );
        Ok(Case::check(name, want, computed, ok))
    };
    run().unwrap_or_else(|e| Case::from_error(name, want, &e))
}

pub(crate) fn witt_vectors(params: &Params, seed: u64) -> Result<Vec<Case>, UsageError> {
    let w2f2 = || -> hodgekit::Result<usize> {
        Ok(ring_isomorphisms(&quotient(2, 2, &[0, 1])?, &WittRing::new(ModRing::new(2, 1)?, 2, 2)?)?.len())
    };
    // x ↦ either root of x²+x+1: the two Galois conjugate isomorphisms.
    let w2f4 = || -> hodgekit::Result<usize> {
        Ok(ring_isomorphisms(&quotient(2, 2, &[1, 1, 1])?, &WittRing::new(f4(), 2, 2)?)?.len())
    };
    Ok(vec![
        isomorphism_case("w2-f2-vs-z4", 1, w2f2()),
        isomorphism_case("w2-f4-vs-z4[x]/(x^2+x+1)", 2, w2f4()),
        ghost_case(params["pairs"], seed),
        lift_case("lift-of-identity-on-f4", |x: &[u64]| x.to_vec()),
        lift_case("lift-of-frobenius-on-f4", |x: &[u64]| f4().pow(&x.to_vec(), 2)),
    ])
}

pub(crate) fn theta_epsilon(params: &Params, _seed: u64) -> Result<Vec<Case>, UsageError> {
    let (p, m, n, k) = (params["p"], params["m"] as u32, params["n"] as u32, params["k"] as u32);
    let model = CyclotomicModel::new(p, m, n, k).or_else(|e| usage(format!("no θ model at (p, m, n, k) = ({p}, {m}, {n}, {k}): {e}")))?;
    let r = match ker_theta_report(&model) {
        Ok(r) => r,
        Err(e) => return Ok(vec![Case::from_error("theta", "ring map", &e)]),
    };
    let flag = |name: &str, b: bool| Case::check(name, "holds", if b { "holds" } else { "fails" }, b);
    Ok(vec![
        flag("epsilon-is-a-tilt-element", r.epsilon_valid),
        flag("theta-is-a-ring-map", r.homomorphism),
        flag("theta-reduces-to-projection", r.reduces_to_projection),
        flag("theta-independent-of-lift", r.lift_independent),
        flag("theta-of-epsilon-is-one", r.theta_epsilon_is_one),
        flag("theta-of-xi-is-zero", r.theta_xi_is_zero),
        flag("epsilon-minus-one-in-kernel", r.epsilon_minus_one_in_kernel),
        Case::check(
            "kernel-generated-by-xi",
            format!("|ker θ| = {} multiples of ξ", r.kernel_size),
            format!("{} multiples of ξ (|W| = {}, |tilt| = {})", r.multiples_of_xi, r.witt_size, r.tilt_size),
            r.kernel_generated_by_xi,
        ),
    ])
}

pub(crate) fn different_valuation(params: &Params, _seed: u64) -> Result<Vec<Case>, UsageError> {
    let p = params["p"];
    if !is_prime(p) {
        return usage(format!("p = {p} is not prime"));
    }
    let mut cases = Vec::new();
    for r in 1..=params["r_max"] as u32 {
        let name = format!("r={r}");
        let want = format!("{r} - 1/{}", p - 1);
        cases.push(match fontaine_annihilator_check(p, r) {
            Ok(row) => Case::check(
                name,
                format!("{}", row.expected),
                format!(
                    "resultant {}, Smith length {} = {} × {}, via ζ_p {}",
                    row.resultant, row.smith_length, row.degree, row.smith, row.via_zeta_p
                ),
                row.agrees,
            ),
            Err(e) => Case::from_error(name, &want, &e),
        });
    }
    Ok(cases)
}
