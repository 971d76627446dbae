use serde::Serialize;

use super::complex::FormsOver;
use super::presentation::{AlgebraPresentation, Shape};
use super::resolution::resolve;
use crate::error::{Error, Result};
use crate::exactlin::{
    kernel_columns, module_invariants, quotient_exponents, row_span_contains, ModMatrix, ModuleInvariants,
    ModulePresentation,
};
use crate::polyalg::Poly;

/// A finite `B`-module: a presentation over the coefficients plus the action of
/// each ambient variable of `B` on generators (column `j` is `v · e_j`).
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct BModule {
    presentation: ModulePresentation,
    action: Vec<ModMatrix>,
}

impl BModule {
    /// Checks that each action matrix preserves the relations and that the
    /// action kills the defining relation of `B`.
    pub fn new(pres: &AlgebraPresentation, presentation: ModulePresentation, action: Vec<ModMatrix>) -> Result<Self> {
        let t = pres.target()?;
        let g = presentation.generators();
        if action.len() != t.ambient().nvars() {
            return Err(Error::Dimension(format!("{} action matrices for {} variables", action.len(), t.ambient().nvars())));
        }
        if action.iter().any(|a| a.shape() != (g, g)) {
            return Err(Error::Dimension(format!("action matrices must be {g} x {g}")));
        }
        let m = BModule { presentation, action };
        let rel = m.presentation.relations();
        for a in &m.action {
            // Relations are rows r with r·e = 0; the action sends r to (a r^T)^T.
            if rel.rows() > 0 && !row_span_contains(rel, &a.mul(&rel.transpose())?.transpose())? {
                return Err(Error::InvalidInput("action does not preserve the relations".into()));
            }
        }
        for (i, a) in m.action.iter().enumerate() {
            for (j, b) in m.action.iter().enumerate() {
                if a.mul(b)? != b.mul(a)? {
                    return Err(Error::InvalidInput(format!("actions of variables {i} and {j} do not commute")));
                }
            }
        }
        if let Some(f) = pres.relation() {
            let image = m.act(f)?;
            if !m.is_zero_map(&image)? {
                return Err(Error::InvalidInput("the defining relation of B acts nontrivially".into()));
            }
        }
        Ok(m)
    }

    /// `B/(f)`-module `Z/p^e` on which every variable acts as zero.
    pub fn residue(pres: &AlgebraPresentation, e: u32) -> Result<Self> {
        let ring = pres.ring();
        let nv = pres.target()?.ambient().nvars();
        let rel = ModMatrix::from_data(ring, 1, 1, vec![ring.p_power(e)]);
        BModule::new(pres, ModulePresentation::new(1, rel)?, vec![ModMatrix::zeros(ring, 1, 1); nv])
    }

    pub fn presentation(&self) -> &ModulePresentation {
        &self.presentation
    }

    pub fn invariants(&self) -> ModuleInvariants {
        module_invariants(&self.presentation)
    }

    fn generators(&self) -> usize {
        self.presentation.generators()
    }

    /// Matrix of multiplication by a polynomial in the ambient variables.
    fn act(&self, p: &Poly) -> Result<ModMatrix> {
        let ring = self.presentation.ring();
        let g = self.generators();
        let mut out = ModMatrix::zeros(ring, g, g);
        for (m, &c) in p.terms() {
            let mut t = ModMatrix::identity(ring, g).scale(c);
            for (v, &e) in m.0.iter().enumerate() {
                for _ in 0..e {
                    t = self.action[v].mul(&t)?;
                }
            }
            out = out.add(&t)?;
        }
        Ok(out)
    }

    /// Every column of `m` lies in the span of the relations.
    fn is_zero_map(&self, m: &ModMatrix) -> Result<bool> {
        let rel = self.presentation.relations();
        if rel.rows() == 0 {
            return Ok(m.is_zero());
        }
        row_span_contains(rel, &m.transpose())
    }

    /// Relation vectors of `I^r` as columns.
    fn relation_columns(&self, r: usize) -> ModMatrix {
        let ring = self.presentation.ring();
        let rel = self.presentation.relations();
        let g = self.generators();
        let mut out = ModMatrix::zeros(ring, g * r, rel.rows() * r);
        for k in 0..r {
            for i in 0..rel.rows() {
                for j in 0..g {
                    out.set(k * g + j, k * rel.rows() + i, rel.get(i, j));
                }
            }
        }
        out
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ext1Result {
    pub ext1: ModuleInvariants,
    /// `Hom_B(J/J², I)` when `B = A/J`.
    pub conormal_hom: Option<ModuleInvariants>,
}

impl Ext1Result {
    pub fn consistent(&self) -> bool {
        self.conormal_hom.as_ref().is_none_or(|h| *h == self.ext1)
    }
}

/// `Ext¹_B(L_{B/A}, I)` as `H^1` of `Hom_B(B ⊗_{Q_•} Ω¹_{Q_•/A}, I)` on the
/// normalized complex of a resolution of depth `depth` (at least 3), certified
/// up to `weight_bound`.
pub fn ext1_cotangent(pres: &AlgebraPresentation, module: &BModule, depth: usize, weight_bound: u32) -> Result<Ext1Result> {
    if depth < 3 {
        return Err(Error::InsufficientDepth { needed: 3, available: depth });
    }
    let res = resolve(pres, depth, weight_bound)?;
    let forms = FormsOver::over_b(&res, 1)?;
    let ring = pres.ring();
    let g = module.generators();
    // Coboundary δ: I^{U_{n-1}} -> I^{U_n}, block (v, u) = action of the entry d_{u v}.
    let coboundary = |n: usize| -> Result<(usize, usize, ModMatrix)> {
        let (rows, cols, m) = forms.normalized_t_matrix(n)?;
        let mut out = ModMatrix::zeros(ring, g * cols.len(), g * rows.len());
        for (u, row) in m.iter().enumerate() {
            for (v, entry) in row.iter().enumerate() {
                out.set_block(v * g, u * g, &module.act(entry)?);
            }
        }
        Ok((rows.len(), cols.len(), out))
    };
    let (u0, u1, delta1) = coboundary(1)?;
    let (_, u2, delta2) = coboundary(2)?;
    let dim = g * u1;
    // Cocycles: x with δ² x in the relations of I^{U_2}.
    let r2 = module.relation_columns(u2);
    let z = if u2 == 0 || dim == 0 {
        ModMatrix::identity(ring, dim)
    } else {
        let stacked = delta2.hstack(&r2.neg())?;
        let k = kernel_columns(&stacked);
        k.submatrix(0..dim, 0..k.cols())
    };
    let r1 = module.relation_columns(u1);
    let b = if u0 == 0 { r1 } else { delta1.hstack(&r1)? };
    let ext1 = ModuleInvariants::from_exponents(ring.p(), quotient_exponents(ring, dim, &z, &b));
    let conormal_hom = match pres.shape() {
        // J/J² is free of rank one, so Hom_B(J/J², I) = I.
        Shape::Quotient { .. } => Some(module.invariants()),
        _ => None,
    };
    Ok(Ext1Result { ext1, conormal_hom })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exactlin::ModRing;
    use crate::polyalg::{parse_poly, PolyAlgebra, Variable};

    fn line(p: u64, n: u32) -> PolyAlgebra {
        PolyAlgebra::new(ModRing::new(p, n).unwrap(), vec![Variable::new("y", 1)], None).unwrap()
    }

    #[test]
    fn ext1_of_residue_field_into_two_torsion() {
        let a = line(2, 2);
        let pres = AlgebraPresentation::quotient(a.clone(), parse_poly(&a, "y").unwrap()).unwrap();
        let r = ext1_cotangent(&pres, &BModule::residue(&pres, 1).unwrap(), 3, 4).unwrap();
        assert_eq!(r.ext1.factors(), vec![2]);
        assert!(r.consistent());
        let zero = ext1_cotangent(&pres, &BModule::residue(&pres, 0).unwrap(), 3, 4).unwrap();
        assert!(zero.ext1.is_zero());
    }

    #[test]
    fn free_algebras_have_no_extensions() {
        let a = PolyAlgebra::new(ModRing::new(3, 1).unwrap(), Vec::new(), None).unwrap();
        let pres = AlgebraPresentation::free(a, "x").unwrap();
        let ring = pres.ring();
        // k[x]/(x) viewed as a k[x]-module.
        let m = BModule::new(&pres, ModulePresentation::free(ring, 1), vec![ModMatrix::zeros(ring, 1, 1)]).unwrap();
        assert!(ext1_cotangent(&pres, &m, 3, 4).unwrap().ext1.is_zero());
    }

    #[test]
    fn inseparable_extension_has_a_square_zero_deformation() {
        // B = F_2[z]/(z^2): L = [B dx_1 -0-> B dz], so Ext^1(L, B) = B.
        let ring = ModRing::new(2, 1).unwrap();
        let amb = PolyAlgebra::new(ring, vec![Variable::new("z", 1)], None).unwrap();
        let pres = AlgebraPresentation::monogenic(ring, "z", 1, parse_poly(&amb, "z^2").unwrap()).unwrap();
        let act = ModMatrix::from_data(ring, 2, 2, vec![0, 0, 1, 0]);
        let m = BModule::new(&pres, ModulePresentation::free(ring, 2), vec![act]).unwrap();
        assert_eq!(ext1_cotangent(&pres, &m, 3, 4).unwrap().ext1.factors(), vec![2, 2]);
    }

    #[test]
    fn action_must_respect_relations() {
        let a = line(2, 2);
        let pres = AlgebraPresentation::quotient(a.clone(), parse_poly(&a, "y").unwrap()).unwrap();
        let ring = pres.ring();
        let bad = BModule::new(&pres, ModulePresentation::free(ring, 1), vec![ModMatrix::identity(ring, 1)]);
        assert!(bad.is_err());
        assert!(ext1_cotangent(&pres, &BModule::residue(&pres, 1).unwrap(), 2, 4).is_err());
    }
}
