//! Ramification of monogenic extensions of `Q_p`: differents by resultants,
//! `Ω¹_{O_L/Z_p}` by Smith forms, and the annihilator of `d ζ_{p^r}`.

mod annihilator;
mod extension;

pub use annihilator::{cyclotomic_tower, fontaine_annihilator_check, AnnihilatorRow, TowerReport};
pub use extension::{
    different_valuation, expected_cyclotomic_different, omega_invariants, Flavor, MonogenicExtension, OmegaInvariants,
};
