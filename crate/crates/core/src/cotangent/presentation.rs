use num_bigint::BigInt;
use num_traits::Zero;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::exactlin::{kernel_columns, resultant, IntPoly, ModMatrix, ModRing, RingDescriptor};
use crate::polyalg::{monomials_of_weight, parse_poly, Monomial, Poly, PolyAlgebra, Variable};

/// A ring `B = P / (g)` with `P` a polynomial ring and `g` either absent or a
/// polynomial in one variable of `P` with unit leading coefficient.
/// Graded by the weights of `P` when `g` is absent or a monomial; otherwise
/// everything sits in weight 0 and `P` must have that one variable only.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TargetRing {
    ambient: PolyAlgebra,
    modulus: Option<(usize, Poly)>,
    graded: bool,
}

impl TargetRing {
    pub fn polynomial(ambient: PolyAlgebra) -> Self {
        TargetRing { ambient, modulus: None, graded: true }
    }

    pub fn quotient(ambient: PolyAlgebra, var: usize, g: Poly) -> Result<Self> {
        let ring = ambient.ring();
        let d = g.degree_in(var);
        if g.terms().keys().any(|m| m.0.iter().enumerate().any(|(j, &e)| j != var && e > 0)) {
            return Err(Error::Unsupported("the relation must involve one variable only".into()));
        }
        let lead = g.coeff(&var_power(ambient.nvars(), var, d));
        if d == 0 || !ring.is_unit(lead) {
            return Err(Error::Unsupported(format!(
                "relation {} must have positive degree and a unit leading coefficient",
                g.to_string_in(&ambient)
            )));
        }
        let graded = g.len() == 1;
        if !graded && ambient.nvars() != 1 {
            return Err(Error::Unsupported("inhomogeneous relations need a one-variable ambient ring".into()));
        }
        Ok(TargetRing { ambient, modulus: Some((var, g)), graded })
    }

    pub fn ring(&self) -> ModRing {
        self.ambient.ring()
    }

    pub fn ambient(&self) -> &PolyAlgebra {
        &self.ambient
    }

    pub fn is_graded(&self) -> bool {
        self.graded
    }

    pub fn modulus(&self) -> Option<&(usize, Poly)> {
        self.modulus.as_ref()
    }

    /// Rank of `B` over the coefficients when finite.
    pub fn rank(&self) -> Option<usize> {
        match &self.modulus {
            Some((v, g)) if self.ambient.nvars() == 1 => Some(g.degree_in(*v) as usize),
            _ => None,
        }
    }

    /// Weight of a standard monomial (0 when ungraded).
    pub fn weight_of(&self, m: &Monomial) -> u32 {
        if self.graded {
            m.weight(&self.ambient.weights())
        } else {
            0
        }
    }

    /// Standard monomials of weight `w`.
    pub fn basis(&self, w: u32) -> Vec<Monomial> {
        let nv = self.ambient.nvars();
        let mut out: Vec<Monomial> = if self.graded {
            monomials_of_weight(&self.ambient.weights(), w)
        } else if w == 0 {
            let (v, g) = self.modulus.as_ref().expect("ungraded rings are quotients");
            (0..g.degree_in(*v)).map(|e| var_power(nv, *v, e)).collect()
        } else {
            Vec::new()
        };
        if let Some((v, g)) = &self.modulus {
            let d = g.degree_in(*v);
            out.retain(|m| m.0[*v] < d);
        }
        out.sort();
        out
    }

    /// Normal form modulo the relation.
    pub fn reduce(&self, p: &Poly) -> Poly {
        let Some((v, g)) = &self.modulus else {
            return p.clone();
        };
        let ring = self.ring();
        let nv = self.ambient.nvars();
        let d = g.degree_in(*v);
        let lead_m = var_power(nv, *v, d);
        let inv = ring.inv(g.coeff(&lead_m)).expect("unit leading coefficient");
        // y^d = -inv * (g - lead y^d)
        let tail = {
            let mut t = g.clone();
            t.add_term(lead_m.clone(), ring.neg(g.coeff(&lead_m)));
            t.scale(ring.neg(inv))
        };
        let mut out = p.clone();
        loop {
            let Some((m, c)) = out.terms().iter().rev().find(|(m, _)| m.0[*v] >= d).map(|(m, &c)| (m.clone(), c)) else {
                return out;
            };
            out.add_term(m.clone(), ring.neg(c));
            let mut rest = m.clone();
            rest.0[*v] -= d;
            out = out.add(&tail.mul(&Poly::monomial(ring, rest, c)));
        }
    }

    /// Coordinates of `p` (reduced) in the weight-`w` basis.
    pub fn coordinates(&self, p: &Poly, w: u32) -> Result<Vec<u64>> {
        let r = self.reduce(p);
        let basis = self.basis(w);
        let mut out = vec![0; basis.len()];
        for (m, &c) in r.terms() {
            let i = basis
                .iter()
                .position(|b| b == m)
                .ok_or_else(|| Error::Internal(format!("term outside the weight-{w} slice")))?;
            out[i] = c;
        }
        Ok(out)
    }

    /// Matrix of multiplication by `p` from the weight-`w` slice to the weight-`w + shift` slice.
    pub fn mul_matrix(&self, p: &Poly, w: u32, shift: u32) -> Result<ModMatrix> {
        let src = self.basis(w);
        let tgt_w = w + shift;
        let rows = self.basis(tgt_w).len();
        let mut m = ModMatrix::zeros(self.ring(), rows, src.len());
        for (j, b) in src.iter().enumerate() {
            let prod = p.mul(&Poly::monomial(self.ring(), b.clone(), 1));
            for (i, c) in self.coordinates(&prod, tgt_w)?.into_iter().enumerate() {
                m.set(i, j, c);
            }
        }
        Ok(m)
    }
}

pub(crate) fn var_power(nvars: usize, var: usize, e: u32) -> Monomial {
    let mut m = Monomial::one(nvars);
    m.0[var] = e;
    m
}

/// The supported pairs `A -> B`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Shape {
    /// `B = A[x]`.
    Free { var: String },
    /// `B = A/(f)` for `A = k[y]`, `f` a nonzerodivisor with unit leading coefficient.
    Quotient { f: Poly },
    /// `B = k[z]/(g)` over `A = k`, `g` with unit leading coefficient.
    Monogenic { g: Poly },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AlgebraPresentation {
    base: PolyAlgebra,
    shape: Shape,
    /// Ambient ring of `B` for the monogenic shape.
    ambient: Option<PolyAlgebra>,
}

impl AlgebraPresentation {
    pub fn free(base: PolyAlgebra, var: &str) -> Result<Self> {
        if base.var_index(var).is_some() {
            return Err(Error::InvalidInput(format!("{var} is already a base variable")));
        }
        Ok(AlgebraPresentation { base, shape: Shape::Free { var: var.to_string() }, ambient: None })
    }

    /// `A/(f)` over `A = k[y]`.
    pub fn quotient(base: PolyAlgebra, f: Poly) -> Result<Self> {
        if base.nvars() != 1 {
            return Err(Error::Unsupported("quotients are supported over k[y] only".into()));
        }
        if f.is_zero() {
            return Err(Error::Hypothesis("0 is a zero divisor".into()));
        }
        let lead = f.coeff(&Monomial(vec![f.degree_in(0)]));
        if !base.ring().is_unit(lead) {
            return Err(Error::Unsupported(format!(
                "{} needs a unit leading coefficient so that A/(f) is free over the coefficients",
                f.to_string_in(&base)
            )));
        }
        let p = AlgebraPresentation { base, shape: Shape::Quotient { f }, ambient: None };
        p.target()?;
        Ok(p)
    }

    /// `k[z]/(g)` over `k`.
    pub fn monogenic(ring: ModRing, var: &str, weight: u32, g: Poly) -> Result<Self> {
        let ambient = PolyAlgebra::new(ring, vec![Variable::new(var, weight)], None)?;
        let base = PolyAlgebra::new(ring, Vec::new(), None)?;
        TargetRing::quotient(ambient.clone(), 0, g.clone())?;
        Ok(AlgebraPresentation { base, shape: Shape::Monogenic { g }, ambient: Some(ambient) })
    }

    /// Finite unramified extension: `g` monic and separable modulo `p`.
    pub fn unramified(ring: ModRing, var: &str, g: Poly) -> Result<Self> {
        let pres = AlgebraPresentation::monogenic(ring, var, 1, g.clone())?;
        let d = g.degree_in(0);
        if g.coeff(&Monomial(vec![d])) != 1 {
            return Err(Error::InvalidInput("an unramified extension needs a monic polynomial".into()));
        }
        let lift = to_int_poly(&g);
        let res = resultant(&lift, &lift.derivative())?;
        if (res % BigInt::from(ring.p())).is_zero() {
            return Err(Error::Hypothesis(format!("{} is not separable modulo {}", g.to_string_in(pres.ambient()), ring.p())));
        }
        Ok(pres)
    }

    pub fn ring(&self) -> ModRing {
        self.base.ring()
    }

    pub fn base(&self) -> &PolyAlgebra {
        &self.base
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    /// Polynomial ring that `B` is a quotient of.
    pub fn ambient(&self) -> &PolyAlgebra {
        self.ambient.as_ref().unwrap_or(&self.base)
    }

    pub fn target(&self) -> Result<TargetRing> {
        match &self.shape {
            Shape::Free { var } => {
                let mut vars = self.base.vars().to_vec();
                vars.push(Variable::new(var.clone(), 1));
                Ok(TargetRing::polynomial(PolyAlgebra::new(self.ring(), vars, None)?))
            }
            Shape::Quotient { f } => TargetRing::quotient(self.base.clone(), 0, f.clone()),
            Shape::Monogenic { g } => TargetRing::quotient(self.ambient().clone(), 0, g.clone()),
        }
    }

    /// The relation cut out of the ambient ring, if any.
    pub fn relation(&self) -> Option<&Poly> {
        match &self.shape {
            Shape::Free { .. } => None,
            Shape::Quotient { f } => Some(f),
            Shape::Monogenic { g } => Some(g),
        }
    }

    /// Differentials are taken relative to `A`: true unless `A` is the coefficient ring.
    pub fn is_relative(&self) -> bool {
        self.base.nvars() > 0
    }

    /// Checks that multiplication by the relation is injective on `A`-slices of weight `<= bound`.
    /// For a quotient of `k[y]` this is the bounded proxy for the nonzerodivisor hypothesis.
    pub fn check_nonzerodivisor(&self, bound: u32) -> Result<u32> {
        let (Shape::Quotient { f } | Shape::Monogenic { g: f }) = &self.shape else {
            return Ok(bound);
        };
        let ring = self.ring();
        let amb = self.ambient();
        let d = f.degree_in(0);
        let rows = (bound + d + 1) as usize;
        let cols = (bound + 1) as usize;
        let mut m = ModMatrix::zeros(ring, rows, cols);
        for j in 0..cols {
            for (mono, &c) in f.terms() {
                m.set(j + mono.0[0] as usize, j, c);
            }
        }
        let ker = kernel_columns(&m);
        if let Some(j) = (0..ker.cols()).find(|&j| ker.column(j).iter().any(|&c| c != 0)) {
            let terms = ker.column(j).into_iter().enumerate().map(|(e, c)| (Monomial(vec![e as u32]), c));
            let witness = Poly::from_terms(ring, 1, terms);
            return Err(Error::Hypothesis(format!(
                "{} is a zero divisor: it kills {}",
                f.to_string_in(amb),
                witness.to_string_in(amb)
            )));
        }
        Ok(bound)
    }

    pub fn descriptor(&self) -> PresentationDescriptor {
        let coeff = self.ring().into();
        match &self.shape {
            Shape::Free { var } => PresentationDescriptor::Free {
                coeff,
                base_vars: self.base.vars().iter().map(|v| v.name.clone()).collect(),
                var: var.clone(),
            },
            Shape::Quotient { f } => PresentationDescriptor::Quotient {
                coeff,
                base_var: self.base.vars()[0].name.clone(),
                f: f.to_string_in(&self.base),
            },
            Shape::Monogenic { g } => PresentationDescriptor::Monogenic {
                coeff,
                var: self.ambient().vars()[0].name.clone(),
                g: g.to_string_in(self.ambient()),
            },
        }
    }

    pub fn from_descriptor(d: &PresentationDescriptor) -> Result<Self> {
        match d {
            PresentationDescriptor::Free { coeff, base_vars, var } => {
                let ring = ModRing::try_from(*coeff)?;
                let vars = base_vars.iter().map(|v| Variable::new(v.clone(), 1)).collect();
                AlgebraPresentation::free(PolyAlgebra::new(ring, vars, None)?, var)
            }
            PresentationDescriptor::Quotient { coeff, base_var, f } => {
                let base = PolyAlgebra::new(ModRing::try_from(*coeff)?, vec![Variable::new(base_var.clone(), 1)], None)?;
                let f = parse_poly(&base, f)?;
                AlgebraPresentation::quotient(base, f)
            }
            PresentationDescriptor::Monogenic { coeff, var, g } => {
                let ring = ModRing::try_from(*coeff)?;
                let amb = PolyAlgebra::new(ring, vec![Variable::new(var.clone(), 1)], None)?;
                AlgebraPresentation::monogenic(ring, var, 1, parse_poly(&amb, g)?)
            }
        }
    }
}

/// JSON form: a shape tag plus polynomial strings.
#[derive(Clone, Debug, Serialize, Deserialize)]
#[serde(tag = "shape", rename_all = "kebab-case")]
pub enum PresentationDescriptor {
    Free { coeff: RingDescriptor, base_vars: Vec<String>, var: String },
    Quotient { coeff: RingDescriptor, base_var: String, f: String },
    Monogenic { coeff: RingDescriptor, var: String, g: String },
}

/// Signed lift of a univariate polynomial to the integers.
pub(crate) fn to_int_poly(g: &Poly) -> IntPoly {
    let d = g.degree_in(0) as usize;
    let ring = g.ring();
    let mut c = vec![BigInt::zero(); d + 1];
    for (m, &v) in g.terms() {
        c[m.0[0] as usize] = BigInt::from(ring.lift_signed(v));
    }
    IntPoly::new(c)
}
