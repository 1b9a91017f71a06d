//! Cochains with values in a `Z/2`-twisted local system, their cohomology over
//! `Z`, `Q`, `F_p` and `R/Z`, and the Bockstein and rationalization maps.

mod bockstein;
mod complex;

pub use bockstein::{
    bockstein, bockstein_of, class_of_coboundary, free_projection, rationalization, Bockstein,
};
pub use complex::{
    coboundary_matrices, rz_cohomology, standard_coboundaries, twisted_cohomology, CochainComplex,
    CoefficientRing, CoefficientSystem, CohomologyValue, DivisibleDescriptor,
};

use thiserror::Error;

use crate::abelian::AbelianError;
use crate::nerve::NerveError;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CochainError {
    #[error("twist violates the cocycle law")]
    TwistInvalid,
    #[error("internal error: twisted differential squares to a nonzero map in degree {degree}")]
    InternalDeltaSquaredNonzero { degree: usize },
    #[error("cochain in degree {degree} has no integral coboundary")]
    LiftFailure { degree: usize },
    #[error("unknown coefficient ring {0:?}; expected z, q, fp:P or rz")]
    UnknownRing(String),
    #[error(transparent)]
    Nerve(#[from] NerveError),
    #[error(transparent)]
    Abelian(#[from] AbelianError),
}
