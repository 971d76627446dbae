use std::collections::{BTreeMap, HashMap};

use serde::Serialize;

use super::presentation::{AlgebraPresentation, Shape, TargetRing};
use crate::complexes::{homology_report, HomologyReport};
use crate::error::{Error, Result};
use crate::exactlin::{ModMatrix, ModRing};
use crate::polyalg::{apply_map, monomials_of_weight, AlgebraMap, Monomial, Poly, PolyAlgebra, Variable};
use crate::simplex::{unnormalized_complex, SimplicialModule, SimplicialSlice};

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ResolutionKind {
    /// `Q_n = B` for all `n` (B already free over A).
    Constant,
    /// `Q_n = k[y][x_1, ..., x_n]` with `x_0 := f(y)`.
    Substitution { f: Poly },
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum CertificateMethod {
    Constant,
    /// Homology of the weight slices of `C(Q_•)` computed directly.
    DirectSlices,
    /// Base change of a certified bar resolution along a nonzerodivisor.
    BaseChange,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct AcyclicityCertificate {
    pub method: CertificateMethod,
    /// Weight bound up to which multiplication by the relation was checked injective.
    pub nonzerodivisor_to: Option<u32>,
    /// Homology of `C(Q_•)` when computed slice by slice.
    pub homology: Option<HomologyReport>,
}

/// An augmented simplicial polynomial algebra `Q_• -> B` over `A`, on degrees `0..=depth`.
#[derive(Clone, Debug)]
pub struct FreeSimplicialResolution {
    presentation: AlgebraPresentation,
    target: TargetRing,
    kind: ResolutionKind,
    depth: usize,
    weight_bound: u32,
    certificate: AcyclicityCertificate,
}

impl FreeSimplicialResolution {
    pub fn presentation(&self) -> &AlgebraPresentation {
        &self.presentation
    }

    pub fn target(&self) -> &TargetRing {
        &self.target
    }

    pub fn kind(&self) -> &ResolutionKind {
        &self.kind
    }

    pub fn depth(&self) -> usize {
        self.depth
    }

    pub fn weight_bound(&self) -> u32 {
        self.weight_bound
    }

    pub fn certificate(&self) -> &AcyclicityCertificate {
        &self.certificate
    }

    pub fn ring(&self) -> ModRing {
        self.presentation.ring()
    }

    pub fn is_graded(&self) -> bool {
        self.target.is_graded()
    }

    /// Weights carried by slices: `0..=bound` when graded, just 0 otherwise.
    pub fn slice_weights(&self) -> Vec<u32> {
        if self.is_graded() {
            (0..=self.weight_bound).collect()
        } else {
            vec![0]
        }
    }

    /// Weight of the `x_j`.
    pub fn x_weight(&self) -> u32 {
        match &self.kind {
            ResolutionKind::Substitution { f } if self.is_graded() => {
                f.homogeneous_weight(&self.target.ambient().weights()).expect("graded relation")
            }
            _ => 1,
        }
    }

    /// `Q_n`.
    pub fn algebra(&self, n: usize) -> PolyAlgebra {
        let amb = self.target.ambient();
        match &self.kind {
            ResolutionKind::Constant => amb.clone(),
            ResolutionKind::Substitution { .. } => {
                let y = &amb.vars()[0];
                let mut vars = vec![Variable::new(y.name.clone(), y.weight)];
                vars.extend((1..=n).map(|j| Variable::new(format!("x{j}"), self.x_weight())));
                PolyAlgebra::new(self.ring(), vars, None).expect("valid variable names")
            }
        }
    }

    /// Variables of `Q_n` whose differential vanishes (those of `A`).
    pub fn frozen(&self) -> u64 {
        match &self.kind {
            ResolutionKind::Constant => (1u64 << self.presentation.base().nvars()) - 1,
            ResolutionKind::Substitution { .. } => u64::from(self.presentation.is_relative()),
        }
    }

    /// `∂_i: Q_n -> Q_{n-1}`: `x_j ↦ x_j` for `j <= i`, `j != n`; `x_j ↦ x_{j-1}` for `j > i`
    /// (with `x_0 = f`); `x_n ↦ 0` for `i = n`.
    pub fn face(&self, n: usize, i: usize) -> AlgebraMap {
        let (src, tgt) = (self.algebra(n), self.algebra(n - 1));
        match &self.kind {
            ResolutionKind::Constant => AlgebraMap::identity(&src),
            ResolutionKind::Substitution { f } => {
                let ring = self.ring();
                let nt = n;
                let mut images = vec![Poly::var(ring, nt, 0)];
                for j in 1..=n {
                    images.push(if j <= i && j != n {
                        Poly::var(ring, nt, j)
                    } else if j > i {
                        if j == 1 {
                            f.embed(nt, &[0])
                        } else {
                            Poly::var(ring, nt, j - 1)
                        }
                    } else {
                        Poly::zero(ring, nt)
                    });
                }
                AlgebraMap::new(&src, &tgt, images).expect("face images live in Q_{n-1}")
            }
        }
    }

    /// `σ_i: Q_n -> Q_{n+1}`: `x_j ↦ x_j` for `j <= i`, `x_{j+1}` for `j > i`.
    pub fn degeneracy(&self, n: usize, i: usize) -> AlgebraMap {
        let (src, tgt) = (self.algebra(n), self.algebra(n + 1));
        match &self.kind {
            ResolutionKind::Constant => AlgebraMap::identity(&src),
            ResolutionKind::Substitution { .. } => {
                let ring = self.ring();
                let nt = n + 2;
                let mut images = vec![Poly::var(ring, nt, 0)];
                images.extend((1..=n).map(|j| Poly::var(ring, nt, if j <= i { j } else { j + 1 })));
                AlgebraMap::new(&src, &tgt, images).expect("degeneracy images live in Q_{n+1}")
            }
        }
    }

    /// `Q_n -> B`, landing in the ambient polynomial ring of `B` (reduce afterwards).
    pub fn augmentation(&self, n: usize) -> AlgebraMap {
        let amb = self.target.ambient();
        let src = self.algebra(n);
        match &self.kind {
            ResolutionKind::Constant => AlgebraMap::identity(amb),
            ResolutionKind::Substitution { .. } => {
                let ring = self.ring();
                let mut images = vec![Poly::var(ring, 1, 0)];
                images.extend((1..=n).map(|_| Poly::zero(ring, 1)));
                AlgebraMap::new(&src, amb, images).expect("augmentation into B")
            }
        }
    }

    /// The simplicial module `C(Q_•)` sliced by weight (graded resolutions only).
    pub fn algebra_slices(&self) -> Result<SimplicialModule> {
        if !self.is_graded() {
            return Err(Error::Unsupported("ungraded resolutions have infinite slices".into()));
        }
        let ring = self.ring();
        let mut slices = BTreeMap::new();
        let algs: Vec<PolyAlgebra> = (0..=self.depth + 1).map(|n| self.algebra(n)).collect();
        for w in 0..=self.weight_bound {
            let bases: Vec<Vec<Monomial>> = (0..=self.depth)
                .map(|n| {
                    let mut b = monomials_of_weight(&algs[n].weights(), w);
                    b.sort();
                    b
                })
                .collect();
            let index: Vec<HashMap<&Monomial, usize>> =
                bases.iter().map(|b| b.iter().enumerate().map(|(i, m)| (m, i)).collect()).collect();
            let matrix = |phi: &AlgebraMap, src: usize, tgt: usize| -> Result<ModMatrix> {
                let mut m = ModMatrix::zeros(ring, bases[tgt].len(), bases[src].len());
                for (j, mono) in bases[src].iter().enumerate() {
                    let img = apply_map(phi, &Poly::monomial(ring, mono.clone(), 1))?;
                    for (t, &c) in img.terms() {
                        let i = index[tgt].get(t).ok_or_else(|| Error::Internal("map leaves the weight slice".into()))?;
                        m.set(*i, j, c);
                    }
                }
                Ok(m)
            };
            let mut faces = vec![Vec::new()];
            for n in 1..=self.depth {
                faces.push((0..=n).map(|i| matrix(&self.face(n, i), n, n - 1)).collect::<Result<Vec<_>>>()?);
            }
            let mut degens = Vec::new();
            for n in 0..self.depth {
                degens.push((0..=n).map(|i| matrix(&self.degeneracy(n, i), n, n + 1)).collect::<Result<Vec<_>>>()?);
            }
            let ranks = bases.iter().map(|b| b.len()).collect();
            slices.insert(w, SimplicialSlice { ranks, faces, degens });
        }
        SimplicialModule::new(ring, self.depth, slices)
    }

    /// Computes `H_*(C(Q_•))` on every slice and checks `H_0 = B`, `H_i = 0` for `0 < i < depth`.
    fn certify_directly(&mut self) -> Result<()> {
        let rep = homology_report(&unnormalized_complex(&self.algebra_slices()?)?);
        let ring = self.ring();
        for w in 0..=self.weight_bound {
            let want = self.target.basis(w).len();
            let h0 = rep.invariants(0, w);
            if h0.rank() != want || h0.exponents.iter().any(|&e| e != ring.n()) {
                return Err(Error::Hypothesis(format!("H_0 of the resolution is {h0} in weight {w}, not B")));
            }
            for i in 1..self.depth as i64 {
                if !rep.invariants(i, w).is_zero() {
                    return Err(Error::Hypothesis(format!("resolution has homology in degree {i}, weight {w}")));
                }
            }
        }
        self.certificate.homology = Some(rep);
        Ok(())
    }
}

/// Bar resolution of `R` over `R[x]`: `Q_n = R[x][x_1, ..., x_n]`, `x_0 := x`, certified on
/// every weight slice up to `weight_bound`.
pub fn bar_resolution(ring: ModRing, depth: usize, weight_bound: u32) -> Result<FreeSimplicialResolution> {
    if depth < 1 {
        return Err(Error::InvalidInput("a resolution needs depth at least 1".into()));
    }
    let base = PolyAlgebra::new(ring, vec![Variable::new("x", 1)], None)?;
    let f = Poly::var(ring, 1, 0);
    let presentation = AlgebraPresentation::quotient(base, f.clone())?;
    let mut res = FreeSimplicialResolution {
        target: presentation.target()?,
        presentation,
        kind: ResolutionKind::Substitution { f },
        depth,
        weight_bound,
        certificate: AcyclicityCertificate { method: CertificateMethod::DirectSlices, nonzerodivisor_to: None, homology: None },
    };
    res.certify_directly()?;
    Ok(res)
}

/// Substitute `x ↦ f` in a bar resolution to resolve `A/(f)` over `A` (or `k[z]/(g)` over `k`).
pub fn base_change_resolution(bar: &FreeSimplicialResolution, target: &AlgebraPresentation) -> Result<FreeSimplicialResolution> {
    let is_bar = matches!(&bar.kind, ResolutionKind::Substitution { f } if *f == Poly::var(bar.ring(), 1, 0));
    if !is_bar || bar.certificate.homology.is_none() {
        return Err(Error::InvalidInput("base change starts from a certified bar resolution".into()));
    }
    if bar.ring() != target.ring() {
        return Err(Error::RingMismatch(format!("{} vs {}", bar.ring(), target.ring())));
    }
    let f = match target.shape() {
        Shape::Quotient { f } => f.clone(),
        Shape::Monogenic { g } => g.clone(),
        Shape::Free { .. } => return Err(Error::Unsupported("free algebras are their own resolution".into())),
    };
    let nzd = target.check_nonzerodivisor(bar.weight_bound)?;
    let tr = target.target()?;
    let mut res = FreeSimplicialResolution {
        presentation: target.clone(),
        target: tr,
        kind: ResolutionKind::Substitution { f },
        depth: bar.depth,
        weight_bound: bar.weight_bound,
        certificate: AcyclicityCertificate {
            method: CertificateMethod::BaseChange,
            nonzerodivisor_to: Some(nzd),
            homology: None,
        },
    };
    if res.is_graded() {
        res.certificate.method = CertificateMethod::DirectSlices;
        res.certify_directly()?;
    }
    Ok(res)
}

/// A certified resolution of any supported presentation.
pub fn resolve(pres: &AlgebraPresentation, depth: usize, weight_bound: u32) -> Result<FreeSimplicialResolution> {
    match pres.shape() {
        Shape::Free { .. } => Ok(FreeSimplicialResolution {
            target: pres.target()?,
            presentation: pres.clone(),
            kind: ResolutionKind::Constant,
            depth,
            weight_bound,
            certificate: AcyclicityCertificate { method: CertificateMethod::Constant, nonzerodivisor_to: None, homology: None },
        }),
        _ => base_change_resolution(&bar_resolution(pres.ring(), depth, weight_bound)?, pres),
    }
}
