use std::collections::{BTreeMap, BTreeSet};

use num_bigint::BigInt;
use serde::Serialize;

use super::ring::{FiniteRing, QuotientRing};
use super::vector::WittRing;
use crate::error::{Error, Result};
use crate::exactlin::IntPoly;

/// `Σ c_j x^j ↦ Σ c_j t^j`.
fn presented_image<R: FiniteRing>(tgt: &R, powers: &[R::Elem], a: &[u64]) -> R::Elem {
    a.iter().zip(powers).fold(tgt.zero(), |acc, (&c, tp)| tgt.add(&acc, &tgt.mul(&tgt.from_big(&BigInt::from(c)), tp)))
}

/// Every `t ∈ tgt` for which `x ↦ t` defines a ring homomorphism `src → tgt`,
/// each candidate checked on all pairs of elements.
pub fn presented_homomorphisms<R: FiniteRing>(src: &QuotientRing, tgt: &R) -> Result<Vec<R::Elem>> {
    let elems = src.elements()?;
    let g = src.modulus_poly();
    let mut found = Vec::new();
    for t in tgt.elements()? {
        if tgt.eval(&g, &t) != tgt.zero() {
            continue;
        }
        let powers: Vec<R::Elem> = (0..src.degree() as u64).map(|j| tgt.pow(&t, j)).collect();
        let image: BTreeMap<&Vec<u64>, R::Elem> = elems.iter().map(|a| (a, presented_image(tgt, &powers, a))).collect();
        if image[&src.one()] != tgt.one() {
            continue;
        }
        let hom = elems.iter().all(|a| {
            elems.iter().all(|b| {
                image[&src.add(a, b)] == tgt.add(&image[a], &image[b]) && image[&src.mul(a, b)] == tgt.mul(&image[a], &image[b])
            })
        });
        if hom {
            found.push(t);
        }
    }
    Ok(found)
}

/// Homomorphisms `src → tgt` (by the image of `x`) that are bijective.
pub fn ring_isomorphisms<R: FiniteRing>(src: &QuotientRing, tgt: &R) -> Result<Vec<R::Elem>> {
    if src.size() != tgt.size() {
        return Ok(Vec::new());
    }
    let elems = src.elements()?;
    Ok(presented_homomorphisms(src, tgt)?
        .into_iter()
        .filter(|t| {
            let powers: Vec<R::Elem> = (0..src.degree() as u64).map(|j| tgt.pow(t, j)).collect();
            let image: BTreeSet<R::Elem> = elems.iter().map(|a| presented_image(tgt, &powers, a)).collect();
            image.len() == elems.len()
        })
        .collect())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct IsomorphismReport {
    pub source_size: u64,
    pub target_size: u64,
    pub homomorphisms: usize,
    pub isomorphisms: usize,
}

pub fn isomorphism_report<R: FiniteRing>(src: &QuotientRing, tgt: &R) -> Result<IsomorphismReport> {
    Ok(IsomorphismReport {
        source_size: src.size().unwrap_or(u64::MAX),
        target_size: tgt.size().unwrap_or(u64::MAX),
        homomorphisms: presented_homomorphisms(src, tgt)?.len(),
        isomorphisms: ring_isomorphisms(src, tgt)?.len(),
    })
}

/// Writes `W_n(R)` as `(Z/p^n)[X]/(h)` with `X ↦ u`, if `1, u, …, u^{d-1}` is a
/// `Z/p^n`-basis for some `d`. Returns the presentation and, for every element,
/// its coordinates.
pub fn presentation_by_generator<R: FiniteRing>(
    w: &WittRing<R>,
    u: &[R::Elem],
) -> Result<(QuotientRing, BTreeMap<Vec<R::Elem>, Vec<u64>>)> {
    let zn = crate::exactlin::ModRing::new(w.p(), w.len() as u32)?;
    let size = w.size().ok_or_else(|| Error::EnumerationBound("Witt ring".into()))?;
    let mut d = 0u32;
    while zn.modulus().pow(d) < size {
        d += 1;
    }
    if zn.modulus().pow(d) != size {
        return Err(Error::Hypothesis(format!("|W_n(R)| = {size} is not a power of p^n")));
    }
    let u = u.to_vec();
    let powers: Vec<Vec<R::Elem>> = (0..=d as u64).map(|j| w.pow(&u, j)).collect();
    let basis = QuotientRing::new(zn, &IntPoly::monomial(d as usize))?;
    let mut coords = BTreeMap::new();
    for c in basis.elements()? {
        let v = presented_image(w, &powers[..d as usize], &c);
        if coords.insert(v, c).is_some() {
            return Err(Error::Hypothesis("powers of the generator are linearly dependent".into()));
        }
    }
    let top = coords
        .get(&powers[d as usize])
        .ok_or_else(|| Error::Internal("u^d outside the span of lower powers".into()))?;
    // h = X^d - Σ c_j X^j
    let mut h: Vec<BigInt> = top.iter().map(|&c| BigInt::from(zn.neg(c))).collect();
    h.push(BigInt::from(1));
    Ok((QuotientRing::new(zn, &IntPoly::new(h))?, coords))
}

/// `τ: W_n(R) → S` lifting `φ: R → S/p`, tabulated on all of `W_n(R)`.
#[derive(Clone, Debug)]
pub struct LiftedHomomorphism {
    pub table: BTreeMap<Vec<Vec<u64>>, Vec<u64>>,
}

impl LiftedHomomorphism {
    pub fn apply(&self, a: &[Vec<u64>]) -> Option<&Vec<u64>> {
        self.table.get(a)
    }

    /// Checked on all pairs.
    pub fn is_homomorphism(&self, w: &WittRing<QuotientRing>, target: &QuotientRing) -> bool {
        let t = &self.table;
        t[&w.one()] == target.one()
            && t.keys().all(|a| {
                t.keys().all(|b| t[&w.add(a, b)] == target.add(&t[a], &t[b]) && t[&w.mul(a, b)] == target.mul(&t[a], &t[b]))
            })
    }
}

/// Inverse of `x ↦ x^p` on a finite ring, when it is a bijection.
pub fn frobenius_inverse(r: &QuotientRing) -> Result<BTreeMap<Vec<u64>, Vec<u64>>> {
    let p = r.base().p();
    let mut inv = BTreeMap::new();
    for x in r.elements()? {
        if inv.insert(r.pow(&x, p), x).is_some() {
            return Err(Error::Hypothesis("Frobenius is not injective on R".into()));
        }
    }
    Ok(inv)
}

/// `τ(a) = Σ_{i<n} p^i T(a_i^{p^{-i}})` with `T(b) = \hat{φ(b^{p^{-(n-1)}})}^{p^{n-1}}`,
/// where `lift` picks any preimage under `S → S/p`.
pub fn lift_homomorphism(
    w: &WittRing<QuotientRing>,
    phi: impl Fn(&[u64]) -> Vec<u64>,
    target: &QuotientRing,
    lift: impl Fn(&[u64]) -> Vec<u64>,
) -> Result<LiftedHomomorphism> {
    let (p, n) = (w.p(), w.len());
    if target.base().p() != p || target.base().n() as usize != n {
        return Err(Error::RingMismatch(format!("target must live over Z/{p}^{n}")));
    }
    let r = w.base();
    let finv = frobenius_inverse(r)?;
    let root = |x: &Vec<u64>, k: usize| (0..k).fold(x.clone(), |y, _| finv[&y].clone());
    let teich = |b: &Vec<u64>| target.pow(&lift(&phi(&root(b, n - 1))), p.pow(n as u32 - 1));
    let mut table = BTreeMap::new();
    for a in w.elements()? {
        let mut acc = target.zero();
        for (i, ai) in a.iter().enumerate() {
            let pi = target.from_big(&BigInt::from(p).pow(i as u32));
            acc = target.add(&acc, &target.mul(&pi, &teich(&root(ai, i))));
        }
        table.insert(a, acc);
    }
    Ok(LiftedHomomorphism { table })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LiftUniqueness {
    /// Ring maps `W_n(R) → S` found by exhausting the image of a generator.
    pub ring_maps: usize,
    /// Those reducing to `φ` on `W_n(R) → R → S/p`.
    pub lifts: usize,
    /// The explicit `τ` is a homomorphism.
    pub formula_is_homomorphism: bool,
    /// The unique lift equals `τ`.
    pub formula_matches: bool,
    /// `τ` computed with a second choice of set-theoretic lifts agrees.
    pub lift_independent: bool,
}

/// Exhausts ring maps `W_n(R) → S` through the Teichmüller lift of a generator of `R`
/// and counts those lifting `φ`.
pub fn lift_uniqueness(
    w: &WittRing<QuotientRing>,
    phi: impl Fn(&[u64]) -> Vec<u64> + Copy,
    target: &QuotientRing,
) -> Result<LiftUniqueness> {
    let r = w.base();
    let residue = target.with_exponent(1)?;
    let u = w.teichmuller(&r.generator());
    let (pres, coords) = presentation_by_generator(w, &u)?;
    let maps = presented_homomorphisms(&pres, target)?;
    let canonical = |x: &[u64]| target.from_coeffs(x);
    let tau = lift_homomorphism(w, phi, target, canonical)?;
    let p = w.p();
    let other = lift_homomorphism(
        w,
        phi,
        target,
        |x: &[u64]| {
            // shift every coefficient by p, a different preimage of the same class
            target.from_coeffs(&x.iter().map(|&c| c + p).collect::<Vec<_>>())
        },
    )?;
    let mut lifts = Vec::new();
    for t in &maps {
        let powers: Vec<Vec<u64>> = (0..pres.degree() as u64).map(|j| target.pow(t, j)).collect();
        let map: BTreeMap<&Vec<Vec<u64>>, Vec<u64>> =
            coords.iter().map(|(wv, c)| (wv, presented_image(target, &powers, c))).collect();
        let reduces = map.iter().all(|(wv, s)| target.reduce_into(&residue, s) == phi(&wv[0]));
        if reduces {
            lifts.push(map);
        }
    }
    let formula_matches = lifts.len() == 1 && lifts[0].iter().all(|(wv, s)| tau.table.get(*wv) == Some(s));
    Ok(LiftUniqueness {
        ring_maps: maps.len(),
        lifts: lifts.len(),
        formula_is_homomorphism: tau.is_homomorphism(w, target),
        formula_matches,
        lift_independent: tau.table == other.table,
    })
}

/// Sizes of `p^i W` for `i = 0..=n`.
pub fn p_adic_filtration_sizes<R: FiniteRing>(w: &WittRing<R>) -> Result<Vec<usize>> {
    let elems = w.elements()?;
    let p = w.from_i64(w.p() as i64);
    let mut current: BTreeSet<Vec<R::Elem>> = elems.into_iter().collect();
    let mut sizes = vec![current.len()];
    for _ in 0..w.len() {
        current = current.iter().map(|a| w.mul(&p, a)).collect();
        sizes.push(current.len());
    }
    Ok(sizes)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ModRing;

    fn f4() -> QuotientRing {
        QuotientRing::new(ModRing::new(2, 1).unwrap(), &IntPoly::from_i64(&[1, 1, 1])).unwrap()
    }

    #[test]
    fn w2_of_f2_is_z4() {
        let w = WittRing::new(ModRing::new(2, 1).unwrap(), 2, 2).unwrap();
        let z4 = QuotientRing::new(ModRing::new(2, 2).unwrap(), &IntPoly::from_i64(&[0, 1])).unwrap();
        assert_eq!(ring_isomorphisms(&z4, &w).unwrap().len(), 1);
    }

    #[test]
    fn frobenius_lift_is_unique_over_f4() {
        let w = WittRing::new(f4(), 2, 2).unwrap();
        let s = QuotientRing::new(ModRing::new(2, 2).unwrap(), &IntPoly::from_i64(&[1, 1, 1])).unwrap();
        let r = f4();
        let u = lift_uniqueness(&w, |x| r.pow(&x.to_vec(), 2), &s).unwrap();
        assert_eq!(u.lifts, 1, "{u:?}");
        assert!(u.formula_matches && u.formula_is_homomorphism && u.lift_independent);
    }

    #[test]
    fn filtration_quotients_are_the_residue_field() {
        let w = WittRing::new(f4(), 2, 3).unwrap();
        assert_eq!(p_adic_filtration_sizes(&w).unwrap(), vec![64, 16, 4, 1]);
    }
}
