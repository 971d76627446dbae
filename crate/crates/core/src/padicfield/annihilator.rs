use num_rational::Ratio;
use serde::Serialize;

use super::extension::{different_valuation, expected_cyclotomic_different, omega_invariants, MonogenicExtension};
use crate::error::Result;
use crate::exactlin::{IntPoly, PAdicValue};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AnnihilatorRow {
    pub p: u64,
    pub r: u32,
    pub degree: usize,
    /// `r - 1/(p-1)`.
    pub expected: PAdicValue,
    /// `v_p(Res(Φ, Φ'))/d`.
    pub resultant: PAdicValue,
    /// Length of `O_L/(Φ'(ζ))` from the Smith form.
    pub smith_length: u64,
    /// `smith_length / d`.
    pub smith: PAdicValue,
    /// `r - v(ζ_p - 1)`, the valuation of `p^r/(ζ_p - 1)`.
    pub via_zeta_p: PAdicValue,
    /// `ζ_{p^r}` is a unit, so `d ζ` and `dlog ζ` share an annihilator.
    pub zeta_is_unit: bool,
    pub agrees: bool,
}

/// Annihilator of `d ζ_{p^r}` in `Ω¹_{O_L/Z_p}` for `L = Q_p(ζ_{p^r})`, three ways.
pub fn fontaine_annihilator_check(p: u64, r: u32) -> Result<AnnihilatorRow> {
    let e = MonogenicExtension::cyclotomic(p, r)?;
    let d = e.degree();
    let ram = e.ramification();
    let expected = PAdicValue::finite(p, expected_cyclotomic_different(p, r), ram)?;
    let resultant = different_valuation(&e)?;
    // v(f'(b)) ≤ r, so every Smith exponent is at most r.
    let omega = omega_invariants(&e, r + 1)?;
    let smith = PAdicValue::finite(p, Ratio::new(omega.length as i64, d as i64), ram)?;
    let zeta_p_minus_one = IntPoly::monomial(p.pow(r - 1) as usize).sub(&IntPoly::from_i64(&[1]));
    let v_zeta_p = e.valuation_of(&zeta_p_minus_one)?.value().expect("ζ_p - 1 ≠ 0");
    let via_zeta_p = PAdicValue::finite(p, Ratio::from_integer(r as i64) - v_zeta_p, ram)?;
    let zeta_is_unit = e.valuation_of(&IntPoly::monomial(1))?.value() == Some(Ratio::from_integer(0));
    let agrees = resultant == expected && smith == expected && via_zeta_p == expected && zeta_is_unit;
    Ok(AnnihilatorRow { p, r, degree: d, expected, resultant, smith_length: omega.length, smith, via_zeta_p, zeta_is_unit, agrees })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerReport {
    pub p: u64,
    pub rows: Vec<AnnihilatorRow>,
    /// Every module has finite length and the lengths grow strictly with `r`.
    pub lengths_increase: bool,
}

pub fn cyclotomic_tower(p: u64, r_max: u32) -> Result<TowerReport> {
    let rows: Vec<AnnihilatorRow> = (1..=r_max).map(|r| fontaine_annihilator_check(p, r)).collect::<Result<_>>()?;
    let lengths_increase = rows.windows(2).all(|w| w[0].smith_length < w[1].smith_length);
    Ok(TowerReport { p, rows, lengths_increase })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn level_nine() {
        let row = fontaine_annihilator_check(3, 2).unwrap();
        assert!(row.agrees, "{row:?}");
        assert_eq!(row.expected.value(), Some(Ratio::new(3, 2)));
        assert_eq!(row.smith_length, 9);
    }

    #[test]
    fn trivial_and_quadratic_levels_for_two() {
        assert_eq!(fontaine_annihilator_check(2, 1).unwrap().resultant.value(), Some(Ratio::from_integer(0)));
        assert_eq!(fontaine_annihilator_check(2, 2).unwrap().resultant.value(), Some(Ratio::from_integer(1)));
    }
}
