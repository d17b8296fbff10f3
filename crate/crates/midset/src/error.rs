use crate::geometry::Point2;

/// Crate-wide error type.
///
/// Construction errors (`InvalidInput`, `NotDisjoint`, ...) are raised when a
/// value would violate one of its invariants. Hypothesis errors
/// (`NoSeparation`, `InsideHull`, `HullsIntersect`) mean a requested
/// computation does not apply to the given configuration; they are ordinary
/// outcomes, not bugs, and callers are expected to handle them.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("parameter out of range: {0}")]
    Domain(String),

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("focal sets are not disjoint (minimum primitive distance {0})")]
    NotDisjoint(f64),

    #[error("focal set `{label}` is not contained in the open disk of radius {radius}")]
    OutsideBoundingDisk { label: String, radius: f64 },

    #[error("convex hulls overlap or touch; exterior tangents do not exist")]
    HullsIntersect,

    #[error("point ({},{}) lies inside or on a focal hull", .0.x, .0.y)]
    InsideHull(Point2),

    #[error("no separating tangent pair through ({},{})", .0.x, .0.y)]
    NoSeparation(Point2),

    #[error("no sign change across the bracket: gap({},{}) and gap({},{}) agree in sign", p.x, p.y, q.x, q.y)]
    SameSign { p: Point2, q: Point2 },

    #[error("chain does not project injectively onto the ray beyond t_min")]
    NotAGraph,
}

pub type Result<T> = std::result::Result<T, Error>;
