use hodgekit::cotangent::{bar_resolution, base_change_resolution, cotangent_from_resolution, quotient_shortcut, AlgebraPresentation};
use hodgekit::derham::{build_derham, hodge_quotient_homology, pd_envelope_report};
use hodgekit::exactlin::ModRing;
use hodgekit::polyalg::{parse_poly, PolyAlgebra, Variable};

use super::ring;
use crate::{show_module, usage, Case, Params, UsageError};

fn quotient(ring: ModRing, var: &str, power: u64) -> Result<AlgebraPresentation, UsageError> {
    let build = || {
        let a = PolyAlgebra::new(ring, vec![Variable::new(var, 1)], None)?;
        let f = parse_poly(&a, &format!("{var}^{power}"))?;
        AlgebraPresentation::quotient(a, f)
    };
    build().or_else(|e| usage(format!("cannot present {ring}[{var}]/({var}^{power}): {e}")))
}

fn holds(b: bool) -> &'static str {
    if b {
        "holds"
    } else {
        "fails"
    }
}

fn flag(name: &str, b: bool) -> Case {
    Case::check(name, "holds", holds(b), b)
}

pub(crate) fn cotangent_regular(params: &Params, _seed: u64) -> Result<Vec<Case>, UsageError> {
    let ring = ring(params, params["n"])?;
    let pres = quotient(ring, "x", params["power"])?;
    let w_max = params["weight_bound"] as u32;
    let run = || -> hodgekit::Result<Vec<Case>> {
        let bar = bar_resolution(ring, params["depth"] as usize, w_max)?;
        let l = cotangent_from_resolution(&base_change_resolution(&bar, &pres)?, 2)?;
        let shortcut = quotient_shortcut(&pres, w_max)?;
        Ok((0..=w_max)
            .map(|w| {
                let expected = format!("H0=0 H1={} H2=0", show_module(&shortcut[&w]));
                let (h0, h1, h2) = (l.invariants(0, w), l.invariants(1, w), l.invariants(2, w));
                let computed = format!("H0={} H1={} H2={}", show_module(&h0), show_module(&h1), show_module(&h2));
                Case::check(format!("weight-{w:02}"), expected, computed, h0.is_zero() && h2.is_zero() && h1 == shortcut[&w])
            })
            .collect())
    };
    Ok(run().unwrap_or_else(|e| vec![Case::from_error("bar-resolution", "L concentrated in degree 1", &e)]))
}

pub(crate) fn derham_mod_p(params: &Params, _seed: u64) -> Result<Vec<Case>, UsageError> {
    let ring = ring(params, 1)?;
    let pres = quotient(ring, "y", 1)?;
    let (i_max, w_max) = (params["hodge_max"] as u32, params["weight_bound"] as u32);
    let full_level = i_max.max(w_max) + 2;
    let run = || -> hodgekit::Result<Vec<Case>> {
        let c = build_derham(&pres, full_level, 3, w_max)?;
        let mut cases = Vec::new();
        for i in 1..=i_max {
            let h = hodge_quotient_homology(&c, i)?;
            let len = h.total(0).length();
            let higher = (1..=2).all(|t| h.total(t).is_zero());
            let computed = format!("length {len}, higher {}", if higher { "vanish" } else { "nonzero" });
            let ok = len == i as u64 && higher;
            cases.push(Case::check(format!("hodge-level-{i}"), format!("length {i}, higher vanish"), computed, ok));
        }
        let h = hodge_quotient_homology(&c, full_level)?;
        for w in 0..=w_max {
            let len = h.invariants(0, w).length();
            let higher = (1..=2).all(|t| h.invariants(t, w).is_zero());
            let computed = format!("dim {len}, higher {}", if higher { "vanish" } else { "nonzero" });
            cases.push(Case::check(format!("weight-{w:02}"), "dim 1, higher vanish", computed, len == 1 && higher));
        }
        Ok(cases)
    };
    Ok(run().unwrap_or_else(|e| vec![Case::from_error("derham-complex", "F_p⟨x⟩ in degree 0", &e)]))
}

pub(crate) fn drpd_envelope(params: &Params, _seed: u64) -> Result<Vec<Case>, UsageError> {
    let ring = ring(params, params["n"])?;
    let pres = quotient(ring, "y", params["power"])?;
    let r = match pd_envelope_report(&pres, params["weight_bound"] as u32) {
        Ok(r) => r,
        Err(e) => return Ok(vec![Case::from_error("envelope-report", "H₀ = A⟨t⟩/(t − f)", &e)]),
    };
    let mut cases = vec![flag("higher-vanish", r.higher_vanish)];
    for row in &r.rows {
        let name = match row.hodge_level {
            None => format!("w{:02}-full", row.weight),
            Some(i) => format!("w{:02}-level-{i}", row.weight),
        };
        let mut computed = show_module(&row.derham);
        if !row.map_certified {
            computed += " (generator map not certified)";
        }
        let ok = row.derham == row.envelope && row.map_certified;
        cases.push(Case::check(name, show_module(&row.envelope), computed, ok));
    }
    Ok(cases)
}

pub(crate) fn universal_thickening(params: &Params, _seed: u64) -> Result<Vec<Case>, UsageError> {
    let ring = ring(params, params["n"])?;
    let pres = quotient(ring, "y", 1)?;
    let r = match hodgekit::derham::universal_thickening(&pres, params["weight_bound"] as u32) {
        Ok(r) => r,
        Err(e) => return Ok(vec![Case::from_error("thickening", "H₀(LΩ/F²) = A/(y²)", &e)]),
    };
    let mut cases = vec![
        flag("kernel-square-zero", r.square_zero),
        flag("length-bookkeeping", r.lengths_add),
        flag("multiplicative", r.multiplicative),
        flag("product-well-defined", r.product_well_defined),
    ];
    for row in &r.rows {
        let ok = row.h0 == row.target && row.bijective && row.kills_boundaries && row.surjective;
        let computed = format!("{}, map {}", show_module(&row.h0), if row.bijective { "bijective" } else { "not bijective" });
        cases.push(Case::check(format!("w{:02}", row.weight), format!("{}, map bijective", show_module(&row.target)), computed, ok));
    }
    Ok(cases)
}
