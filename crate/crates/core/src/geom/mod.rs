//! Global checks for hypersurfaces in (products of, weighted) projective spaces.

mod ambient;
mod family;
mod fixed;
mod locus;
pub mod pipeline;
mod reid_tai;

use thiserror::Error;

pub use ambient::{
    dehomogenize, AmbientKind, AmbientSpace, DiagonalProjectiveAction, HypersurfaceScheme,
    SmoothingFamily,
};
pub use family::{
    family_discriminants, family_smoothing_verify, hypersurface_smooth, FamilyChart,
    FamilySmoothingVerdict, WITNESS_SAMPLES,
};
pub use fixed::{
    fixed_locus, fixed_points_on, FixedComponent, FixedPointReport, FixedSubspace, Intersection,
};
pub use locus::{singular_locus_check, ChartReport, SingularLocusVerdict};
pub use reid_tai::reid_tai_terminal;

use crate::equiv::EquivError;
use crate::gb::GbError;
use crate::poly::PolyError;
use crate::t1::T1Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GeomError {
    #[error("invalid ambient space: {0}")]
    Ambient(String),
    #[error("expected {expected} coordinates, got {got}")]
    Arity { expected: usize, got: usize },
    #[error("equation is not homogeneous in factor {factor}")]
    NotHomogeneous { factor: usize },
    #[error("claimed point {0} is not a coordinate point")]
    NotCoordinatePoint(usize),
    #[error("claimed point {0} does not lie on the hypersurface")]
    PointNotOnScheme(usize),
    #[error("perturbation has degree {got:?}, expected {expected:?}")]
    DegreeMismatch { expected: Vec<u64>, got: Vec<u64> },
    #[error("perturbation character {got:?} differs from the equation's {expected:?}")]
    PerturbationCharacter {
        expected: Option<u32>,
        got: Option<u32>,
    },
    #[error("the equation is not semi-invariant under the action")]
    NotSemiInvariant,
    #[error("terminality test needs three weights, got {0}")]
    ReidTaiArity(usize),
    #[error("weight {0} is divisible by the group order")]
    ReidTaiZeroWeight(usize),
    #[error(transparent)]
    Poly(#[from] PolyError),
    #[error(transparent)]
    Gb(#[from] GbError),
    #[error(transparent)]
    T1(#[from] T1Error),
    #[error(transparent)]
    Equiv(#[from] EquivError),
}
