use std::collections::BTreeMap;

use serde::Serialize;

use super::complex::{build_derham, hodge_quotient_homology, FilteredDeRhamComplex, TotKey};
use crate::complexes::{homology_report, GradedSliceComplex, HomologyReport, Slice};
use crate::cotangent::AlgebraPresentation;
use crate::error::{Error, Result};
use crate::exactlin::{cokernel_exponents, row_span_length, solve, ModMatrix, ModuleInvariants};
use crate::pdpow::{derived_power, Functor, PDEnvelope};

/// Sign conventions tried for `x^a γ_b(t) ↦ ±[y^a dx_1 ∧ … ∧ dx_b]`.
const SIGNS: [(&str, fn(u32) -> bool); 4] = [
    ("+1", |_| false),
    ("(-1)^b", |b| b % 2 == 1),
    ("(-1)^(b(b-1)/2)", |b| (b * b.saturating_sub(1) / 2) % 2 == 1),
    ("(-1)^(b(b+1)/2)", |b| (b * (b + 1) / 2) % 2 == 1),
];

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopeRow {
    pub weight: u32,
    /// `None` for the whole complex, `Some(i)` for `LΩ/F^i` against `A⟨t⟩/((t-f) + ⟨t⟩^{[i]})`.
    pub hodge_level: Option<u32>,
    pub derham: ModuleInvariants,
    pub envelope: ModuleInvariants,
    /// The generator-matching map is well defined, surjective and length preserving.
    pub map_certified: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct EnvelopeReport {
    pub weight_bound: u32,
    pub rows: Vec<EnvelopeRow>,
    /// `H_t = 0` for `t > 0` in every slice.
    pub higher_vanish: bool,
    /// Sign convention under which the map was certified.
    pub sign: Option<String>,
}

impl EnvelopeReport {
    pub fn passes(&self) -> bool {
        self.higher_vanish && self.rows.iter().all(|r| r.derham == r.envelope && r.map_certified)
    }
}

fn length(m: &ModMatrix) -> u64 {
    if m.rows() == 0 || m.cols() == 0 {
        0
    } else {
        row_span_length(&m.transpose())
    }
}

/// Checks that `phi` (columns: envelope basis, rows: degree-0 chains) kills the
/// relations modulo boundaries, is onto `H_0`, and that lengths agree.
fn certify_map(phi: &ModMatrix, relations: &ModMatrix, boundary: &ModMatrix, env_len: u64, h0_len: u64) -> Result<bool> {
    let ring = phi.ring();
    for r in 0..relations.rows() {
        let img = phi.mul_vec(relations.row(r))?;
        if img.iter().all(|&v| v == 0) {
            continue;
        }
        if boundary.cols() == 0 || solve(boundary, &img)?.is_none() {
            return Ok(false);
        }
    }
    let dim = phi.rows() as u64 * ring.n() as u64;
    let spanned = if boundary.cols() == 0 { length(phi) } else { length(&phi.hstack(boundary)?) };
    Ok(spanned == dim && env_len == h0_len)
}

fn envelope_map(c: &FilteredDeRhamComplex, env: &PDEnvelope, w: u32, level: u32, rows: &[usize], negate: fn(u32) -> bool) -> Result<ModMatrix> {
    let ring = c.ring();
    let s = c.slice(w).ok_or_else(|| Error::InvalidInput(format!("weight {w} outside the complex")))?;
    let basis = env.algebra.slice(w);
    let mut phi = ModMatrix::zeros(ring, rows.len(), basis.len());
    for (col, m) in basis.iter().enumerate() {
        let (a, b) = (m[0], m[1]);
        if b >= level {
            continue;
        }
        let mut mono = vec![0; b as usize + 1];
        mono[0] = a;
        let key = TotKey { n: b as usize, wedge: ((1u64 << b) - 1) << 1, mono };
        let pos = rows
            .iter()
            .position(|&k| s.bases[0][k] == key)
            .ok_or_else(|| Error::Internal(format!("no chain y^{a} dx_1…dx_{b} in weight {w}")))?;
        phi.set(pos, col, if negate(b) { ring.neg(1) } else { 1 });
    }
    Ok(phi)
}

/// Compares `H_*(LΩ_{B/A})` for `B = A/(f)` with `A⟨t⟩/(t - f)`, slice by slice
/// and for every Hodge level, through the explicit map `x^a γ_b(t) ↦ ±[y^a dx_1…dx_b]`.
pub fn pd_envelope_report(pres: &AlgebraPresentation, weight_bound: u32) -> Result<EnvelopeReport> {
    let f = pres.relation().ok_or_else(|| Error::Unsupported("envelope comparison needs B = A/(f)".into()))?;
    let ring = pres.ring();
    let env = PDEnvelope::new(ring, f, weight_bound)?;
    let e = env.degree;
    let top = weight_bound / e;
    let c = build_derham(pres, top + 2, top as usize + 1, weight_bound)?;
    let full = hodge_quotient_homology(&c, top + 2)?;
    let higher_vanish = full.entries.iter().all(|en| en.degree == 0 || en.invariants.is_zero());
    let mut levels: Vec<Option<u32>> = (1..=top + 1).map(Some).collect();
    levels.push(None);
    let mut chosen = None;
    let mut best_rows = Vec::new();
    for (name, negate) in SIGNS {
        let mut rows = Vec::new();
        let mut all = true;
        for &level in &levels {
            let cut = level.unwrap_or(top + 2);
            let h = hodge_quotient_homology(&c, cut)?;
            for w in 0..=weight_bound {
                let derham = h.invariants(0, w);
                let envelope = env.slice_invariants(w, level)?;
                let (kept, boundary) = c.degree_zero(w, cut)?;
                let phi = envelope_map(&c, &env, w, cut, &kept, negate)?;
                let rel = env.relations(w, level)?;
                let env_len: u64 = cokernel_exponents(&rel, env.algebra.slice(w).len()).iter().map(|&x| x as u64).sum();
                let map_certified = certify_map(&phi, &rel, &boundary, env_len, derham.length())?;
                all &= map_certified;
                rows.push(EnvelopeRow { weight: w, hodge_level: level, derham, envelope, map_certified });
            }
        }
        if all {
            chosen = Some(name.to_string());
            best_rows = rows;
            break;
        }
        if best_rows.is_empty() {
            best_rows = rows;
        }
    }
    Ok(EnvelopeReport { weight_bound, rows: best_rows, higher_vanish, sign: chosen })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPieceRow {
    /// Total degree in `gr^i_F`; the derived side sits in degree `degree + i`.
    pub degree: i64,
    pub weight: u32,
    pub derham: ModuleInvariants,
    pub derived: ModuleInvariants,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GradedPieceReport {
    pub level: u32,
    pub rows: Vec<GradedPieceRow>,
    pub all_equal: bool,
}

/// `H_*(L∧^i L_{B/A})` per weight for `L_{B/A} = B·e[1]` (regular quotient),
/// computed as `B ⊗_k L∧^i(k e[1])` with derived powers through the Kan transform,
/// in degrees `0..=i + extra`.
pub fn exterior_of_conormal(pres: &AlgebraPresentation, i: u32, extra: usize, weight_bound: u32) -> Result<HomologyReport> {
    let ring = pres.ring();
    let target = pres.target()?;
    let f = pres.relation().ok_or_else(|| Error::Unsupported("needs B = A/(f)".into()))?;
    let e = f
        .homogeneous_weight(&pres.base().weights())
        .ok_or_else(|| Error::Unsupported("f must be homogeneous".into()))?;
    let line = {
        let mut slices = BTreeMap::new();
        slices.insert(e, Slice::new(ring, vec![0, 1], vec![ModMatrix::zeros(ring, 0, 1)])?);
        GradedSliceComplex::new(ring, 0, 1, slices)?
    };
    let top = i as usize + extra + 1;
    let d = derived_power(&line, Functor::Exterior, i, top)?;
    let mut entries = Vec::new();
    for deg in 0..top as i64 {
        for w in 0..=weight_bound {
            let mut inv = ModuleInvariants::zero(ring.p());
            for w1 in 0..=w {
                let h = d.homology.invariants(deg, w1);
                for _ in 0..target.basis(w - w1).len() {
                    inv = inv.sum(&h);
                }
            }
            entries.push(crate::complexes::HomologyEntry { degree: deg, weight: w, invariants: inv, trusted: true });
        }
    }
    Ok(HomologyReport { p: ring.p(), window: (0, top as i64 - 1), trusted: (0, top as i64 - 1), entries })
}

/// `gr^i_F LΩ_{B/A}` against `L∧^i L_{B/A}[-i]`.
pub fn graded_piece_report(c: &FilteredDeRhamComplex, i: u32) -> Result<GradedPieceReport> {
    let gr = homology_report(&c.graded_piece(i)?);
    let derived = exterior_of_conormal(c.resolution().presentation(), i, 1, c.weight_bound())?;
    let mut rows = Vec::new();
    for j in 0..=(i as i64 + 1) {
        let degree = j - i as i64;
        for w in 0..=c.weight_bound() {
            let left = if degree < 0 { ModuleInvariants::zero(c.ring().p()) } else { gr.invariants(degree, w) };
            rows.push(GradedPieceRow { degree, weight: w, derham: left, derived: derived.invariants(j, w) });
        }
    }
    let all_equal = rows.iter().all(|r| r.derham == r.derived);
    Ok(GradedPieceReport { level: i, rows, all_equal })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct FrobeniusRow {
    pub degree: i64,
    pub weight: u32,
    pub graded_sum: u64,
    pub total: u64,
}

/// Over `F_p`: `Σ_i dim H_j(L∧^i L_{B/A}[-i])_w = dim H_j(LΩ_{B/A})_w` for `j ≤ window_top`.
pub fn frobenius_audit(pres: &AlgebraPresentation, window_top: usize, weight_bound: u32) -> Result<Vec<FrobeniusRow>> {
    let ring = pres.ring();
    if !ring.is_field() {
        return Err(Error::Hypothesis("the Frobenius dimension audit runs over F_p".into()));
    }
    let f = pres.relation().ok_or_else(|| Error::Unsupported("needs B = A/(f)".into()))?;
    let e = f.homogeneous_weight(&pres.base().weights()).ok_or_else(|| Error::Unsupported("f must be homogeneous".into()))?;
    let top = weight_bound / e;
    let c = build_derham(pres, top + 2, top as usize + 1, weight_bound)?;
    let total = hodge_quotient_homology(&c, top + 2)?;
    let pieces: Vec<HomologyReport> =
        (0..=top + 1).map(|i| exterior_of_conormal(pres, i, window_top, weight_bound)).collect::<Result<Vec<_>>>()?;
    let mut rows = Vec::new();
    for j in 0..=window_top as i64 {
        for w in 0..=weight_bound {
            let graded_sum = (0..=top + 1).map(|i| pieces[i as usize].invariants(j + i as i64, w).length()).sum();
            rows.push(FrobeniusRow { degree: j, weight: w, graded_sum, total: total.invariants(j, w).length() });
        }
    }
    Ok(rows)
}
