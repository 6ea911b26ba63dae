//! Error types shared by the geometry modules.

use thiserror::Error;

use crate::exact::Rational;

/// Errors raised by polyhedral and quotient operations.
#[derive(Debug, Clone, Error)]
pub enum Error {
    #[error("operation requires a nonempty polyhedron")]
    EmptyPolyhedron,

    #[error("operation requires a cone (b = 0 after canonicalization)")]
    NotACone,

    #[error("objective is unbounded below on the polyhedron")]
    UnboundedDirection,

    #[error("point violates an inequality of the polyhedron")]
    PointOutside,

    #[error("fiber over the given point is empty (point not in the image)")]
    FiberEmpty,

    #[error("fans have different supports")]
    SupportMismatch {
        /// A vector lying in one support but not the other.
        witness: Vec<Rational>,
    },

    #[error("matrix does not have full row rank with fewer rows than columns")]
    RankDeficient,

    #[error("ambient dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("fiber fan routes disagree; this would falsify the route-equivalence theorem")]
    RouteMismatch {
        direct: Box<crate::fan::Fan>,
        dual: Box<crate::fan::Fan>,
    },

    #[error("SVG rendering only for ambient dimension <= 2 (got {0})")]
    RenderDimension(usize),
}
