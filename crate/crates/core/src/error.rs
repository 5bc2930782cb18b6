use thiserror::Error;

/// Failures while constructing or validating a [`crate::PlaneMap`].
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MapError {
    #[error("table has {found} entries, expected {expected}")]
    TableSize { expected: usize, found: usize },
    #[error("dart {dart} maps outside the dart range")]
    DartOutOfRange { dart: usize },
    #[error("mate is not a fixed-point-free involution at dart {dart}")]
    NotInvolution { dart: usize },
    #[error("rotation orbit at vertex {vertex} is not a 4-cycle on its own darts")]
    BadRotationOrbit { vertex: usize },
    #[error("component containing vertex {vertex} has Euler characteristic {euler}, expected 2")]
    NotSpherical { vertex: usize, euler: i64 },
    #[error("map is disconnected")]
    Disconnected,
    #[error("map has {0} vertices, more than the supported maximum")]
    TooLarge(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: {msg}")]
    Syntax { line: usize, msg: String },
    #[error("invalid map: {0}")]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CurveError {
    #[error("curve code is not realizable as a simple taut curve")]
    UnrealizableCode,
    #[error("curve degree {0} is not supported")]
    BadDegree(usize),
    #[error("graph must be connected with at least one vertex")]
    NeedsConnected,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum SurgeryError {
    #[error("illegal surgery move: {0}")]
    IllegalMove(String),
    #[error("vertex {0} is not simple")]
    NotSimpleVertex(usize),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DecomposeError {
    #[error("curve is trivial")]
    TrivialCurve,
    #[error("cannot cut along a {0}-curve")]
    BadDegree(usize),
    #[error("inconsistent gluing record: {0}")]
    InconsistentGluing(String),
    #[error(transparent)]
    Curve(#[from] CurveError),
    #[error(transparent)]
    Map(#[from] MapError),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum EnumerateError {
    #[error("requested bound {requested} exceeds limit {limit}")]
    LimitExceeded { requested: usize, limit: usize },
    #[error("piece is not allowed in this catalogue: {0}")]
    ForbiddenPiece(String),
    #[error("invalid vertex {0}")]
    BadVertex(usize),
    #[error("corrupt checkpoint: {0}")]
    CorruptCheckpoint(String),
    #[error("invariant violated: {0}")]
    InvariantViolation(String),
    #[error(transparent)]
    Map(#[from] MapError),
}
