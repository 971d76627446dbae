use std::collections::BTreeMap;

use hodgekit::complexes::random::{random_complex, random_double_complex, RandomComplex};
use hodgekit::complexes::{compare_homology, homology_report, total_complex, ComparisonRow, GradedSliceComplex, Slice};
use hodgekit::exactlin::{ModMatrix, ModRing, ModuleInvariants};
use hodgekit::pdpow::{derived_power, gamma_rank, koszul_gamma_complex, random_split_exact, Functor};
use hodgekit::simplex::{diagonal, double_kan_transform, kan_transform, normalized_complex};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{ring, show_homology};
use crate::{show_module, Case, Params, UsageError};

fn or_error(name: String, expected: &str, r: hodgekit::Result<Case>) -> Case {
    r.unwrap_or_else(|e| Case::from_error(name, expected, &e))
}

fn show_expected(m: &BTreeMap<i64, ModuleInvariants>, top: i64) -> String {
    let parts: Vec<String> = (0..=top)
        .filter_map(|d| m.get(&d).filter(|h| !h.is_zero()).map(|h| format!("H{d}={}", show_module(h))))
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

fn roundtrip(rc: &RandomComplex, top: usize, name: String) -> hodgekit::Result<Case> {
    let c = &rc.complex;
    let n = normalized_complex(&kan_transform(c, top)?)?;
    let t = top as i64;
    let ranks_c: Vec<usize> = (0..=t).map(|d| c.rank(d, 0)).collect();
    let ranks_n: Vec<usize> = (0..=t).map(|d| n.rank(d, 0)).collect();
    let same_diffs = (0..=t).all(|d| n.differential(d, 0) == c.differential(d, 0));
    let expected = format!("ranks {ranks_c:?}, {}", show_expected(&rc.expected, t));
    let h = homology_report(&n);
    let mut computed = format!("ranks {ranks_n:?}, {}", show_homology(&h, 0, t));
    if !same_diffs {
        computed += ", differentials differ";
    }
    let homology_ok = (0..=t).all(|d| h.total(d) == rc.expected.get(&d).cloned().unwrap_or_else(|| ModuleInvariants::zero(c.ring().p())));
    let ok = ranks_c == ranks_n && same_diffs && homology_ok;
    Ok(Case::check(name, expected, computed, ok))
}

pub(crate) fn dold_kan(params: &Params, seed: u64) -> Result<Vec<Case>, UsageError> {
    let ring = ring(params, params["n"])?;
    let top = params["max_degree"] as usize;
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for i in 0..params["cases"] {
        let name = format!("complex-{i:03}");
        let r = random_complex(ring, top, params["max_rank"] as usize, &mut rng).and_then(|rc| roundtrip(&rc, top, name.clone()));
        cases.push(or_error(name, "N(K(C)) = C", r));
    }
    Ok(cases)
}

fn sum_rows(rows: &[ComparisonRow], hi: i64, left: bool, p: u64) -> String {
    let parts: Vec<String> = (0..=hi)
        .filter_map(|d| {
            let m = rows
                .iter()
                .filter(|r| r.degree == d)
                .fold(ModuleInvariants::zero(p), |acc, r| acc.sum(if left { &r.left } else { &r.right }));
            (!m.is_zero()).then(|| format!("H{d}={}", show_module(&m)))
        })
        .collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}

pub(crate) fn eilenberg_zilber(params: &Params, seed: u64) -> Result<Vec<Case>, UsageError> {
    let ring = ring(params, params["n"])?;
    let (top, hi) = (params["max_degree"] as usize, params["homology_top"] as i64);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for i in 0..params["cases"] {
        let name = format!("double-complex-{i:03}");
        let r = random_double_complex(ring, top, params["max_rank"] as usize, &mut rng).and_then(|d| {
            let x = diagonal(&double_kan_transform(&d, hi as usize + 1)?)?;
            let cmp = compare_homology(&normalized_complex(&x)?, &total_complex(&d)?, 0, hi)?;
            let (pi, tot) = (sum_rows(&cmp.rows, hi, true, ring.p()), sum_rows(&cmp.rows, hi, false, ring.p()));
            Ok(Case::check(name.clone(), format!("H(Tot): {tot}"), format!("π(diag): {pi}"), cmp.all_equal))
        });
        cases.push(or_error(name, "π(diag) = H(Tot)", r));
    }
    Ok(cases)
}

/// `E` free of rank `r` placed in one degree.
fn free_in_degree(ring: ModRing, r: usize, degree: usize) -> hodgekit::Result<GradedSliceComplex> {
    let mut ranks = vec![0; degree + 1];
    ranks[degree] = r;
    let diffs = (0..degree).map(|k| ModMatrix::zeros(ring, ranks[k], ranks[k + 1])).collect();
    let mut slices = BTreeMap::new();
    slices.insert(1, Slice::new(ring, ranks, diffs)?);
    GradedSliceComplex::new(ring, 0, degree as i64, slices)
}

fn binomial(n: u64, k: u64) -> u64 {
    (0..k).fold(1, |acc, i| acc * (n - i) / (i + 1))
}

pub(crate) fn quillen_shift(params: &Params, _seed: u64) -> Result<Vec<Case>, UsageError> {
    let ring = ring(params, params["n"])?;
    let (r, power) = (params["rank"] as usize, params["power"] as u32);
    let mut cases = vec![Case::equal(
        "gamma-rank",
        binomial(power as u64 + r as u64 - 1, power as u64),
        gamma_rank(r, power),
    )];
    let run = || -> hodgekit::Result<Vec<Case>> {
        let gamma = derived_power(&free_in_degree(ring, r, 0)?, Functor::Gamma, power, 2)?.homology.total(0);
        let wedge = derived_power(&free_in_degree(ring, r, 1)?, Functor::Exterior, power, power as usize + 1)?.homology;
        let mut out = Vec::new();
        for d in 0..=power as i64 {
            let expected = if d == power as i64 { gamma.clone() } else { ModuleInvariants::zero(ring.p()) };
            let trusted = wedge.entries.iter().filter(|e| e.degree == d).all(|e| e.trusted);
            let mut c = Case::equal(format!("H{d}"), show_module(&expected), show_module(&wedge.total(d)));
            if c.status == crate::Status::Pass && !trusted {
                c.status = crate::Status::TruncatedEvidence;
            }
            out.push(c);
        }
        Ok(out)
    };
    match run() {
        Ok(c) => cases.extend(c),
        Err(e) => cases.push(Case::from_error("derived-exterior-power", "Γⁿ(E) in degree n", &e)),
    }
    Ok(cases)
}

fn koszul_case(ring: ModRing, r1: usize, r2: usize, power: u32, name: String, rng: &mut ChaCha8Rng) -> Case {
    let (u, v, _) = random_split_exact(ring, r1, r2, rng);
    let expected = format!("exact for n ≤ {power}");
    let r = (0..=power).map(|n| koszul_gamma_complex(&u, &v, n).map(|k| (n, k.exact))).collect::<hodgekit::Result<Vec<_>>>();
    match r {
        Ok(rows) => {
            let bad: Vec<u32> = rows.iter().filter(|(_, ok)| !ok).map(|(n, _)| *n).collect();
            let computed = if bad.is_empty() { expected.clone() } else { format!("homology at n = {bad:?}") };
            Case::check(name, expected, computed, bad.is_empty())
        }
        Err(e) => Case::from_error(name, &expected, &e),
    }
}

pub(crate) fn koszul_gamma(params: &Params, seed: u64) -> Result<Vec<Case>, UsageError> {
    let ring = ring(params, params["n"])?;
    let (max_rank, power) = (params["max_rank"] as usize, params["power"] as u32);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut cases = Vec::new();
    for i in 0..params["cases"] {
        let (r1, r2) = (rng.gen_range(0..=max_rank), rng.gen_range(0..=max_rank));
        cases.push(koszul_case(ring, r1, r2, power, format!("sequence-{i:03} ({r1} → {} → {r2})", r1 + r2), &mut rng));
    }
    cases.push(koszul_case(ring, 0, max_rank, power, "degenerate-kernel-zero".into(), &mut rng));
    cases.push(koszul_case(ring, max_rank, 0, power, "degenerate-quotient-zero".into(), &mut rng));
    Ok(cases)
}
