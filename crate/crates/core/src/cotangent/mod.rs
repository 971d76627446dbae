//! Free simplicial resolutions, cotangent complexes `L_{B/A}`, Kähler
//! differentials, `Ext^1` against `L` and transitivity audits.

mod complex;
mod ext;
mod presentation;
mod resolution;
mod transitivity;

pub use presentation::{AlgebraPresentation, PresentationDescriptor, Shape, TargetRing};
pub use resolution::{
    bar_resolution, base_change_resolution, resolve, AcyclicityCertificate, CertificateMethod, FreeSimplicialResolution,
    ResolutionKind,
};
pub use complex::{
    conormal_module, cotangent_from_resolution, cotangent_homology, forms_over_b, kaehler_invariants,
    kaehler_presentation, quotient_shortcut, CotangentResult, FormBasisKey,
};
pub use ext::{ext1_cotangent, BModule, Ext1Result};
pub use transitivity::{transitivity_report, Tower, TransitivityReport, TransitivityRow};
