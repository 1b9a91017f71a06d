//! Combinatorial models of spaces: Δ-sets, `Z/2` twist cocycles on them, face-closed
//! subcomplexes, and builders for the model spaces.

pub mod builders;
mod delta;
mod subcomplex;
mod twist;

pub use delta::{CellSpec, DeltaSet, ValidationReport};
pub use subcomplex::{restrict, SubComplex};
pub use twist::{
    are_cohomologous, first_cocycle_violation, gauge_between, mod2_first_betti, twist_classes_mod2,
    validate_twist, Sign, TwistCocycle,
};

pub(crate) use twist::sign_value;

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum NerveError {
    #[error("{degree}-cell {cell:?} references missing face {face:?}")]
    BrokenFaceReference {
        degree: usize,
        cell: String,
        face: String,
    },
    #[error("{degree}-cell {cell:?} has {found} faces, expected {expected}")]
    WrongFaceCount {
        degree: usize,
        cell: String,
        expected: usize,
        found: usize,
    },
    #[error("{degree}-cell {cell:?} violates d_{i} d_{j} = d_{} d_{i}", j - 1)]
    SimplicialIdentityViolation {
        degree: usize,
        cell: String,
        i: usize,
        j: usize,
    },
    #[error("duplicate {degree}-cell id {cell:?}")]
    DuplicateCell { degree: usize, cell: String },
    #[error("cell ids and face lists disagree on the number of cells")]
    MalformedDegrees,
    #[error("no twist value for edge {0:?}")]
    MissingEdgeValue(String),
    #[error("twist names unknown edge {0:?}")]
    UnknownEdge(String),
    #[error("twist value {value} on edge {edge:?} is not +1 or -1")]
    InvalidSign { edge: String, value: i64 },
    #[error("{degree}-cell {cell:?} is selected but its face {missing_face:?} is not")]
    NotFaceClosed {
        degree: usize,
        cell: String,
        missing_face: String,
    },
    #[error("subcomplex or twist belongs to a different complex")]
    ParentMismatch,
}
