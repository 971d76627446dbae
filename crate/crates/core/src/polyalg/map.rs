use std::collections::HashMap;

use super::algebra::PolyAlgebra;
use super::forms::{poly_differential, wedge, DifferentialForm};
use super::poly::Poly;
use crate::error::{Error, Result};

/// Substitution homomorphism `source -> target` over a common coefficient ring.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraMap {
    source: PolyAlgebra,
    target: PolyAlgebra,
    images: Vec<Option<Poly>>,
}

impl AlgebraMap {
    /// Images listed in source-variable order.
    pub fn new(source: &PolyAlgebra, target: &PolyAlgebra, images: Vec<Poly>) -> Result<Self> {
        if images.len() != source.nvars() {
            return Err(Error::Dimension(format!("{} images for {} variables", images.len(), source.nvars())));
        }
        AlgebraMap::partial(source, target, images.into_iter().map(Some).collect())
    }

    /// Some variables may lack an image; applying the map to them is an error.
    pub fn partial(source: &PolyAlgebra, target: &PolyAlgebra, images: Vec<Option<Poly>>) -> Result<Self> {
        if source.ring() != target.ring() {
            return Err(Error::RingMismatch(format!("{} vs {}", source.ring(), target.ring())));
        }
        if images.len() != source.nvars() {
            return Err(Error::Dimension(format!("{} images for {} variables", images.len(), source.nvars())));
        }
        for p in images.iter().flatten() {
            if p.nvars() != target.nvars() || p.ring() != target.ring() {
                return Err(Error::RingMismatch("image outside the target algebra".into()));
            }
        }
        Ok(AlgebraMap { source: source.clone(), target: target.clone(), images })
    }

    pub fn identity(alg: &PolyAlgebra) -> Self {
        let images = (0..alg.nvars()).map(|i| Some(Poly::var(alg.ring(), alg.nvars(), i))).collect();
        AlgebraMap { source: alg.clone(), target: alg.clone(), images }
    }

    pub fn source(&self) -> &PolyAlgebra {
        &self.source
    }

    pub fn target(&self) -> &PolyAlgebra {
        &self.target
    }

    pub fn image(&self, var: usize) -> Option<&Poly> {
        self.images[var].as_ref()
    }

    /// Every image is zero or homogeneous of its variable's weight.
    pub fn is_weight_compatible(&self) -> bool {
        let tw = self.target.weights();
        self.images.iter().enumerate().all(|(i, p)| match p {
            None => true,
            Some(p) => p.is_zero() || p.homogeneous_weight(&tw) == Some(self.source.weight(i)),
        })
    }

    /// The composite `other ∘ self`.
    pub fn then(&self, other: &AlgebraMap) -> Result<AlgebraMap> {
        let images = self
            .images
            .iter()
            .map(|p| p.as_ref().map(|p| apply_map(other, p)).transpose())
            .collect::<Result<Vec<_>>>()?;
        AlgebraMap::partial(&self.source, &other.target, images)
    }
}

/// `φ(f)`.
pub fn apply_map(phi: &AlgebraMap, f: &Poly) -> Result<Poly> {
    if f.nvars() != phi.source.nvars() {
        return Err(Error::RingMismatch("polynomial outside the source algebra".into()));
    }
    let ring = phi.target.ring();
    let nt = phi.target.nvars();
    let mut powers: HashMap<(usize, u32), Poly> = HashMap::new();
    let mut out = Poly::zero(ring, nt);
    for (m, &c) in f.terms() {
        let mut term = Poly::constant(ring, nt, 1).scale(c);
        for (i, &e) in m.0.iter().enumerate() {
            if e == 0 {
                continue;
            }
            let img = phi.images[i].as_ref().ok_or_else(|| {
                Error::InvalidInput(format!("variable {} has no image", phi.source.vars()[i].name))
            })?;
            let pw = powers.entry((i, e)).or_insert_with(|| img.pow(e));
            term = term.mul(pw);
            if term.is_zero() {
                break;
            }
        }
        out = out.add(&term);
    }
    Ok(out)
}

/// Pullback `φ^*(m dx_J) = φ(m) dφ(x_{j_1}) ∧ ...`, with `d` relative to `frozen` target variables.
pub fn pullback_form(phi: &AlgebraMap, w: &DifferentialForm, frozen: u64) -> Result<DifferentialForm> {
    let ring = phi.target.ring();
    let nt = phi.target.nvars();
    let mut out = DifferentialForm::zero(ring, nt, w.degree());
    let mut dimg: HashMap<usize, DifferentialForm> = HashMap::new();
    for (k, &c) in w.terms() {
        let coeff = apply_map(phi, &Poly::monomial(w.ring(), k.mono.clone(), c))?;
        let mut acc = DifferentialForm::from_poly(&coeff);
        for j in 0..phi.source.nvars() {
            if k.wedge >> j & 1 == 0 {
                continue;
            }
            let img = phi.images[j]
                .as_ref()
                .ok_or_else(|| Error::InvalidInput(format!("variable {} has no image", phi.source.vars()[j].name)))?;
            let dj = dimg.entry(j).or_insert_with(|| poly_differential(img, frozen));
            acc = wedge(&acc, dj)?;
            if acc.is_zero() {
                break;
            }
        }
        out = out.add(&acc)?;
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ModRing;
    use crate::polyalg::Variable;

    #[test]
    fn substitution_examples() {
        let r = ModRing::new(3, 1).unwrap();
        let q2 = PolyAlgebra::relative(r, "x", 1, 2, 1).unwrap();
        let q1 = PolyAlgebra::relative(r, "x", 1, 1, 1).unwrap();
        let x = Poly::var(r, 2, 0);
        // x1 -> x
        let phi = AlgebraMap::new(&q1, &q1, vec![x.clone(), x.clone()]).unwrap();
        let f = Poly::var(r, 2, 1).pow(2);
        assert_eq!(apply_map(&phi, &f).unwrap(), x.pow(2));
        // x2 -> 0 applied to x*x2 + 1
        let psi = AlgebraMap::new(&q2, &q1, vec![x.clone(), Poly::var(r, 2, 1), Poly::zero(r, 2)]).unwrap();
        let g = Poly::var(r, 3, 0).mul(&Poly::var(r, 3, 2)).add(&Poly::one(r, 3));
        assert_eq!(apply_map(&psi, &g).unwrap(), Poly::one(r, 2));
        let id = AlgebraMap::identity(&q2);
        assert_eq!(apply_map(&id, &g).unwrap(), g);
    }

    #[test]
    fn missing_image_is_an_error() {
        let r = ModRing::new(2, 1).unwrap();
        let a = PolyAlgebra::new(r, vec![Variable::new("x", 1), Variable::new("y", 1)], None).unwrap();
        let phi = AlgebraMap::partial(&a, &a, vec![Some(Poly::var(r, 2, 0)), None]).unwrap();
        assert!(apply_map(&phi, &Poly::var(r, 2, 0)).is_ok());
        assert!(apply_map(&phi, &Poly::var(r, 2, 1)).is_err());
    }
}
