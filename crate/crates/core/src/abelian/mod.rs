//! Exact integer linear algebra: Smith normal form, finitely generated abelian groups,
//! homomorphisms between them, and cohomology of integer cochain complexes.

mod complex;
pub mod field;
mod group;
mod matrix;
mod smith;

pub use complex::{induced_map, CochainMap, IntegralComplex, MatrixComplex};
pub use group::{
    cohomology_at, exactness_check, exactness_detail, CohomologyPresentation, ExactnessOutcome,
    FgAbGroup, GroupHom,
};
pub use matrix::IntMatrix;
pub use smith::{smith_normal_form, SmithDecomposition};

pub(crate) use group::render_free;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AbelianError {
    #[error("composite of consecutive maps is not zero")]
    CompositionNotZero,
    #[error("cochain map does not commute with the differentials in degree {degree}")]
    NotAChainMap { degree: usize },
    #[error("matrix shape {found:?} does not match expected {expected:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        found: (usize, usize),
    },
    #[error("image of torsion generator {generator} is not killed by its order")]
    TorsionViolation { generator: usize },
    #[error("maps cannot be composed: target and source differ")]
    IncompatibleMaps,
    #[error("cochain is not a cocycle")]
    NotACocycle,
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("complex has no differentials")]
    EmptyComplex,
    #[error("degree {0} is out of range")]
    DegreeOutOfRange(usize),
}
