use hodgekit::complexes::HomologyReport;
use hodgekit::exactlin::ModRing;

use crate::{show_module, usage, Params, ParamSpec, SuiteDescriptor, UsageError};

mod arithmetic;
mod derived;
mod simplicial;

const fn spec(name: &'static str, default: u64, min: u64, max: u64, help: &'static str) -> ParamSpec {
    ParamSpec { name, default, min, max, help }
}

pub(crate) static REGISTRY: &[SuiteDescriptor] = &[
    SuiteDescriptor {
        name: "dold-kan-roundtrip",
        params: &[
            spec("p", 2, 2, 97, "residue characteristic"),
            spec("n", 2, 1, 6, "coefficients Z/p^n"),
            spec("max_degree", 5, 1, 6, "top degree of the random complexes"),
            spec("max_rank", 3, 1, 4, "generators per degree"),
            spec("cases", 20, 1, 200, "number of random complexes"),
        ],
        anchor: "Dold–Kan: N(K(C)) = C, and homology of the normalized complex agrees",
        entry: simplicial::dold_kan,
    },
    SuiteDescriptor {
        name: "eilenberg-zilber",
        params: &[
            spec("p", 2, 2, 97, "residue characteristic"),
            spec("n", 2, 1, 6, "coefficients Z/p^n"),
            spec("max_degree", 2, 1, 2, "top bidegree of the random double complexes"),
            spec("max_rank", 2, 1, 3, "generators per bidegree"),
            spec("homology_top", 4, 0, 4, "compare π_k(diag) and H_k(Tot) for k up to this"),
            spec("cases", 10, 1, 100, "number of random double complexes"),
        ],
        anchor: "Eilenberg–Zilber: π_*(diagonal of the double Kan transform) = H_*(Tot)",
        entry: simplicial::eilenberg_zilber,
    },
    SuiteDescriptor {
        name: "quillen-shift",
        params: &[
            spec("p", 2, 2, 97, "residue characteristic"),
            spec("n", 2, 1, 6, "coefficients Z/p^n"),
            spec("rank", 1, 1, 3, "rank of the free module E"),
            spec("power", 2, 1, 4, "exterior power taken of Kan(E[1])"),
        ],
        anchor: "Quillen shift: ∧ⁿ of Kan(E[1]) has homology Γⁿ(E) in degree n only",
        entry: simplicial::quillen_shift,
    },
    SuiteDescriptor {
        name: "koszul-gamma",
        params: &[
            spec("p", 3, 2, 97, "residue characteristic"),
            spec("n", 2, 1, 6, "coefficients Z/p^n"),
            spec("max_rank", 2, 1, 3, "ranks of the outer terms"),
            spec("power", 3, 0, 4, "check Koszul complexes of Γⁿ for n up to this"),
            spec("cases", 20, 0, 200, "number of random split sequences"),
        ],
        anchor: "Koszul complexes of Γⁿ for a split short exact sequence are exact",
        entry: simplicial::koszul_gamma,
    },
    SuiteDescriptor {
        name: "cotangent-regular",
        params: &[
            spec("p", 3, 2, 97, "residue characteristic"),
            spec("n", 1, 1, 4, "coefficients Z/p^n"),
            spec("power", 1, 1, 3, "relation f = x^power"),
            spec("weight_bound", 5, 0, 8, "largest weight examined"),
            spec("depth", 4, 1, 6, "simplicial depth of the bar resolution"),
        ],
        anchor: "cotangent complex of a regular quotient A/(f) is (f)/(f²) in degree 1",
        entry: derived::cotangent_regular,
    },
    SuiteDescriptor {
        name: "derham-mod-p",
        params: &[
            spec("p", 2, 2, 7, "characteristic"),
            spec("hodge_max", 5, 1, 6, "largest Hodge level i of LΩ/F^i"),
            spec("weight_bound", 5, 0, 7, "largest weight examined"),
        ],
        anchor: "mod p derived de Rham of F_p over F_p[x] is F_p⟨x⟩ in degree 0",
        entry: derived::derham_mod_p,
    },
    SuiteDescriptor {
        name: "drpd-envelope",
        params: &[
            spec("p", 2, 2, 7, "residue characteristic"),
            spec("n", 2, 1, 3, "coefficients Z/p^n"),
            spec("power", 1, 1, 2, "relation f = x^power"),
            spec("weight_bound", 4, 0, 6, "largest weight examined"),
        ],
        anchor: "H₀ of derived de Rham of A/(f) over A is the divided power envelope A⟨t⟩/(t − f), filtrations matching",
        entry: derived::drpd_envelope,
    },
    SuiteDescriptor {
        name: "universal-thickening",
        params: &[
            spec("p", 2, 2, 7, "residue characteristic"),
            spec("n", 2, 1, 3, "coefficients Z/p^n"),
            spec("weight_bound", 2, 0, 4, "largest weight examined"),
        ],
        anchor: "H₀(LΩ/F²) of A/(y) over A = Z/p^n[y] is the first-order thickening A/(y²)",
        entry: derived::universal_thickening,
    },
    SuiteDescriptor {
        name: "witt-vectors",
        params: &[spec("pairs", 100, 1, 10_000, "random pairs for the ghost check over Z/8")],
        anchor: "W₂(F_2) = Z/4, W₂(F_4) = Z/4[x]/(x²+x+1), ghost map is a ring map, lifts of maps out of W are unique",
        entry: arithmetic::witt_vectors,
    },
    SuiteDescriptor {
        name: "theta-epsilon",
        params: &[
            spec("p", 2, 2, 3, "residue characteristic"),
            spec("m", 3, 2, 4, "cyclotomic level ζ_{p^m}"),
            spec("n", 2, 1, 3, "Witt length"),
            spec("k", 2, 1, 4, "tilt depth"),
        ],
        anchor: "θ: W_n(tilt) → Z/p^n[ζ] is a ring map with θ([ε]) = 1 and kernel generated by ξ",
        entry: arithmetic::theta_epsilon,
    },
    SuiteDescriptor {
        name: "different-valuation",
        params: &[spec("p", 3, 2, 7, "residue characteristic"), spec("r_max", 3, 1, 3, "largest cyclotomic level r")],
        anchor: "v(different of Q_p(ζ_{p^r})) = r − 1/(p−1), the annihilator of dζ",
        entry: arithmetic::different_valuation,
    },
];

pub(crate) fn ring(params: &Params, n: u64) -> Result<ModRing, UsageError> {
    let p = params["p"];
    ModRing::new(p, n as u32).or_else(|e| usage(format!("no ring Z/{p}^{n}: {e}")))
}

/// `H0=Z/4 H2=Z/2`, or `0`, over the degrees `lo..=hi` summed across weights.
pub(crate) fn show_homology(h: &HomologyReport, lo: i64, hi: i64) -> String {
    let parts: Vec<String> =
        (lo..=hi).filter(|&d| !h.total(d).is_zero()).map(|d| format!("H{d}={}", show_module(&h.total(d)))).collect();
    if parts.is_empty() {
        "0".into()
    } else {
        parts.join(" ")
    }
}
