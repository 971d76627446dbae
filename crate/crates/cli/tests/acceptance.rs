//! One line per acceptance criterion; the test fails if any criterion does.
//! Closed forms used as oracles live here, independent of the library.

use std::time::{Duration, Instant};

use hodgekit::exactlin::ModRing;
use hodgekit::pdpow::pd_envelope_slices;
use hodgekit::polyalg::{parse_poly, PolyAlgebra, Variable};
use hodgekit_cli::{run_suite, show_module, Params, SuiteReport};

type Outcome = Result<(), String>;
/// Label, check, runtime limit in seconds.
type Criterion = (&'static str, fn() -> Outcome, Option<u64>);

fn params(kv: &[(&str, u64)]) -> Params {
    kv.iter().map(|&(k, v)| (k.to_string(), v)).collect()
}

fn suite(name: &str, kv: &[(&str, u64)], seed: u64) -> Result<SuiteReport, String> {
    let r = run_suite(name, &params(kv), seed).map_err(|e| e.to_string())?;
    if !r.passed(false) {
        let bad: Vec<String> = r
            .cases
            .iter()
            .filter(|c| c.status != hodgekit_cli::Status::Pass)
            .map(|c| format!("{} [{}]: expected {}, computed {}", c.name, c.status, c.expected, c.computed))
            .collect();
        return Err(format!("{name} {kv:?}: {}", bad.join("; ")));
    }
    Ok(r)
}

fn computed<'a>(r: &'a SuiteReport, case: &str) -> Result<&'a str, String> {
    r.case(case).map(|c| c.computed.as_str()).ok_or_else(|| format!("{} has no case {case}", r.suite))
}

fn ensure(ok: bool, msg: impl FnOnce() -> String) -> Outcome {
    if ok {
        Ok(())
    } else {
        Err(msg())
    }
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

fn gcd(a: u64, b: u64) -> u64 {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}

/// `(Z/q)^k` in the report's notation.
fn free_module(q: u64, k: u64) -> String {
    match k {
        0 => "0".into(),
        1 => format!("Z/{q}"),
        _ => format!("(Z/{q})^{k}"),
    }
}

fn dold_kan() -> Outcome {
    for (p, n) in [(2, 2), (3, 2), (5, 1)] {
        let r = suite("dold-kan-roundtrip", &[("p", p), ("n", n), ("max_degree", 5), ("max_rank", 3), ("cases", 20)], 1)?;
        ensure(r.cases.len() == 20, || format!("{} cases over Z/{p}^{n}", r.cases.len()))?;
    }
    Ok(())
}

fn eilenberg_zilber() -> Outcome {
    let r = suite("eilenberg-zilber", &[("p", 2), ("n", 2), ("max_degree", 2), ("homology_top", 4), ("cases", 10)], 1)?;
    ensure(r.cases.len() == 10, || format!("{} cases", r.cases.len()))
}

fn cotangent() -> Outcome {
    for (p, n, d) in [(3, 1, 1), (2, 1, 2), (2, 2, 1)] {
        let r = suite("cotangent-regular", &[("p", p), ("n", n), ("power", d), ("depth", 4), ("weight_bound", 5)], 1)?;
        // I/I² ≅ A/(f) generated in weight deg f.
        for w in 0..=5u64 {
            let h1 = if w >= d && w < 2 * d { format!("Z/{}", p.pow(n as u32)) } else { "0".into() };
            let want = format!("H0=0 H1={h1} H2=0");
            let got = computed(&r, &format!("weight-{w:02}"))?;
            ensure(got == want, || format!("x^{d} over Z/{p}^{n}, weight {w}: {got} vs {want}"))?;
        }
    }
    Ok(())
}

fn quillen() -> Outcome {
    for (p, n) in [(2, 2), (3, 1)] {
        for rank in 1..=2 {
            for power in 1..=3 {
                let r = suite("quillen-shift", &[("p", p), ("n", n), ("rank", rank), ("power", power)], 1)?;
                let want = free_module(p.pow(n as u32), binomial(power + rank - 1, power));
                let got = computed(&r, &format!("H{power}"))?;
                ensure(got == want, || format!("Z/{p}^{n} rank {rank} power {power}: {got} vs {want}"))?;
            }
        }
    }
    Ok(())
}

fn koszul() -> Outcome {
    for (p, n, seed) in [(3, 2, 7), (2, 1, 8)] {
        let r = suite("koszul-gamma", &[("p", p), ("n", n), ("max_rank", 2), ("power", 3), ("cases", 20)], seed)?;
        ensure(r.cases.len() == 22, || format!("{} cases over Z/{p}^{n}", r.cases.len()))?;
        computed(&r, "degenerate-kernel-zero")?;
        computed(&r, "degenerate-quotient-zero")?;
    }
    Ok(())
}

fn derham_mod_p() -> Outcome {
    for p in [2, 3] {
        let r = suite("derham-mod-p", &[("p", p), ("hodge_max", 5), ("weight_bound", 5)], 1)?;
        for i in 1..=5 {
            let got = computed(&r, &format!("hodge-level-{i}"))?;
            ensure(got == format!("length {i}, higher vanish"), || format!("p={p} level {i}: {got}"))?;
        }
    }
    Ok(())
}

fn derham_mod_four() -> Outcome {
    let r = suite("drpd-envelope", &[("p", 2), ("n", 2), ("power", 1), ("weight_bound", 4)], 1)?;
    for w in 0..=4 {
        let got = computed(&r, &format!("w{w:02}-full"))?;
        ensure(got == "Z/4", || format!("weight {w} of H₀: {got}"))?;
    }
    ensure(r.cases.iter().any(|c| c.name.contains("-level-")), || "no Hodge-level rows".into())?;
    // f = x²: against A⟨t⟩/(t − x²) computed directly.
    let r = suite("drpd-envelope", &[("p", 2), ("n", 2), ("power", 2), ("weight_bound", 4)], 1)?;
    let ring = ModRing::new(2, 2).unwrap();
    let a = PolyAlgebra::new(ring, vec![Variable::new("y", 1)], None).unwrap();
    let env = pd_envelope_slices(ring, &parse_poly(&a, "y^2").unwrap(), 4, None).map_err(|e| e.to_string())?;
    for w in 0..=4 {
        let (got, want) = (computed(&r, &format!("w{w:02}-full"))?, show_module(&env[&w]));
        ensure(got == want, || format!("f = x², weight {w}: {got} vs {want}"))?;
    }
    Ok(())
}

fn thickening() -> Outcome {
    let r = suite("universal-thickening", &[("p", 2), ("n", 2), ("weight_bound", 2)], 1)?;
    // A/(y²) over Z/4: Z/4 in weights 0 and 1, nothing in weight 2.
    for (w, want) in [(0, "Z/4"), (1, "Z/4"), (2, "0")] {
        let got = computed(&r, &format!("w{w:02}"))?;
        ensure(got == format!("{want}, map bijective"), || format!("weight {w}: {got}"))?;
    }
    ensure(computed(&r, "kernel-square-zero")? == "holds", || "kernel does not square to zero".into())
}

fn witt() -> Outcome {
    let r = suite("witt-vectors", &[("pairs", 100)], 1)?;
    ensure(computed(&r, "w2-f2-vs-z4")? == "1 isomorphism", || "W₂(F_2)".into())?;
    ensure(computed(&r, "ghost-map-over-z8")?.starts_with("100/100"), || "ghost pairs".into())
}

fn theta() -> Outcome {
    suite("theta-epsilon", &[("p", 2), ("m", 3), ("n", 2), ("k", 2)], 1).map(|_| ())
}

fn different() -> Outcome {
    for p in [2u64, 3, 5] {
        let r = suite("different-valuation", &[("p", p), ("r_max", 3)], 1)?;
        for r_ in 1..=3u32 {
            // v = r − 1/(p−1), length = d·v with d = p^{r−1}(p−1).
            let (num, den) = (r_ as u64 * (p - 1) - 1, p - 1);
            let g = gcd(num, den).max(1);
            let v = if den / g == 1 { format!("{}", num / g) } else { format!("{}/{}", num / g, den / g) };
            let length = p.pow(r_ - 1) * num;
            let case = r.case(&format!("r={r_}")).ok_or("missing case")?;
            ensure(case.expected == v, || format!("p={p} r={r_}: expected {} vs {v}", case.expected))?;
            let want = format!("resultant {v}, Smith length {length} ");
            ensure(case.computed.starts_with(&want), || format!("p={p} r={r_}: {}", case.computed))?;
        }
    }
    Ok(())
}

#[test]
fn acceptance() {
    let criteria: [Criterion; 11] = [
        ("Dold–Kan roundtrip over Z/4, Z/9, F_5", dold_kan, Some(10)),
        ("Eilenberg–Zilber on double Kan transforms", eilenberg_zilber, Some(30)),
        ("cotangent complex of regular quotients", cotangent, None),
        ("Quillen shift and Γⁿ ranks", quillen, None),
        ("Koszul–Γ exactness", koszul, None),
        ("mod p derived de Rham", derham_mod_p, Some(60)),
        ("mod p^n derived de Rham and divided powers", derham_mod_four, None),
        ("universal first-order thickening", thickening, None),
        ("Witt vectors", witt, None),
        ("θ and ε at (p, m, n, k) = (2, 3, 2, 2)", theta, Some(120)),
        ("different of Q_p(ζ_{p^r})", different, Some(10)),
    ];
    let mut failed = Vec::new();
    for (i, (label, run, limit)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let mut outcome = run();
        let elapsed = start.elapsed();
        if let (Ok(()), Some(s)) = (&outcome, limit) {
            if elapsed > Duration::from_secs(*s) {
                outcome = Err(format!("took {:.2} s, limit {s} s", elapsed.as_secs_f64()));
            }
        }
        let limit = limit.map_or(String::new(), |s| format!(" (limit {s} s)"));
        match &outcome {
            Ok(()) => println!("criterion {:>2} PASS {:>7.2} s{limit}  {label}", i + 1, elapsed.as_secs_f64()),
            Err(e) => {
                println!("criterion {:>2} FAIL {:>7.2} s{limit}  {label}: {e}", i + 1, elapsed.as_secs_f64());
                failed.push(i + 1);
            }
        }
    }
    assert!(failed.is_empty(), "failed criteria: {failed:?}");
}
