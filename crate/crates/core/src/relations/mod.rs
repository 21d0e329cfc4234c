//! Relation families on `V_λ`, their `g₂`-closure `R_λ`, and the quotient
//! `S_λ = V_λ / R_λ`.

mod cache;
mod closure;
mod families;
mod quotient;

use thiserror::Error;

use crate::tableau::Shape;

pub use cache::{CertificateCache, CertificateRecord, CACHE_VERSION};
pub use closure::{RelationBasis, MAX_RELATION_BOXES};
pub use families::{
    alternating_generators, exchange_generators, exclusion_generators, family_generators, orthogonal_generators,
    pairing_generators, transposition_generators, FamilySet, RelationFamily,
};
pub use quotient::{
    family_consistency, lie_closure, quotient_dimension, relation_rank, relation_space, BasisCertificate, FamilyReport,
    Quotient,
};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RelationError {
    #[error("the {0} family is empty for shape {1}")]
    EmptyFamily(RelationFamily, Shape),
    #[error("shape {0} has too many boxes for the relation engine (limit {MAX_RELATION_BOXES})")]
    TooLarge(Shape),
    #[error("unknown relation family {0:?}")]
    UnknownFamily(String),
    #[error("generator is not weight-homogeneous; only closed spans split by weight")]
    Inhomogeneous,
    #[error("expected shape {0}, got {1}")]
    MixedShapes(Shape, Shape),
    #[error("no basis certificate has been computed for shape {0}")]
    CertificateMissing(Shape),
    #[error("{0} is not a usable prime modulus")]
    BadModulus(u64),
    #[error("G2 tableaux of shape {0} do not form a basis of the quotient")]
    CertificateFailed(Shape),
}
