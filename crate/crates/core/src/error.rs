use thiserror::Error;

/// Errors raised by geometric constructions and queries.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("vector has zero length and cannot be placed on the sphere")]
    ZeroVector,
    #[error("arc endpoints are antipodal (distance {0})")]
    AntipodalEndpoints(f64),
    #[error("the three points lie on one great circle")]
    DegenerateTriple,
    #[error("hemisphere poles are equal or opposite (distance {0})")]
    DegenerateLune(f64),
    #[error("points are not contained in an open hemisphere")]
    NotInOpenHemisphere,
    #[error("degenerate input: {0}")]
    DegenerateInput(String),
    #[error("radius {0} outside (0, pi/2]")]
    BadRadius(f64),
    #[error("thickness {0} outside (0, pi/2)")]
    BadThickness(f64),
    #[error("invalid parameters: {0}")]
    BadParameters(String),
    #[error("invalid body: {0}")]
    InvalidBody(String),
    #[error("root finder failed to bracket a solution")]
    NoSolution,
    #[error("point is not on the boundary of the body (distance {0})")]
    NotOnBoundary(f64),
    #[error("hemisphere with this pole does not support the body (margin {0})")]
    NotSupporting(f64),
    #[error("intersection has empty interior")]
    EmptyResult,
    #[error("diameter {actual} differs from requested width {expected}")]
    DiameterMismatch { expected: f64, actual: f64 },
    #[error("thickness {0} is not below pi/2")]
    ThicknessTooLarge(f64),
    #[error("body is not of constant width above pi/2 (width {width}, deviation {deviation})")]
    NotConstantWidthOverHalfPi { width: f64, deviation: f64 },
    #[error("operation requires a geodesic polygon")]
    NotAPolygon,
    #[error("regime unknown: body is neither certified reduced nor of constant width")]
    RegimeUnknown,
    #[error("unknown theorem id `{0}`")]
    UnknownTheoremId(String),
    #[error("invalid tolerance: {0}")]
    BadTolerance(String),
    #[error("schema error: {0}")]
    Schema(String),
    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
