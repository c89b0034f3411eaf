use thiserror::Error;

/// Every failure the library can report. Each variant has a stable string code
/// (see [`Error::code`]) used in JSON reports.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("line {line}: {message}")]
    MalformedSyntax { line: usize, message: String },

    #[error("unknown {kind} id {id:?}")]
    DanglingReference { kind: &'static str, id: String },

    #[error("boundary word of cell {cell:?} is not a closed edge path")]
    OpenBoundaryWord { cell: String },

    #[error("unknown generator {0:?}")]
    UnknownGenerator(String),

    #[error("monodromy around {cell:?} is not the identity")]
    MonodromyObstruction { cell: String },

    #[error("mod-{p} first homology is trivial")]
    TrivialQuotient { p: u64 },

    #[error("cover degree {degree} exceeds cap {cap}")]
    DegreeCapExceeded { degree: u128, cap: u128 },

    #[error("level {level} out of range (tower has {levels} levels)")]
    LevelOutOfRange { level: usize, levels: usize },

    #[error("target is not a boundary over the chosen ring")]
    NotABoundary,

    #[error("target is not a coboundary over the chosen ring")]
    NotACoboundary,

    #[error("branch-and-bound node cap {cap} reached")]
    SearchCapExceeded {
        cap: usize,
        incumbent: Option<Box<crate::filling::FillResult>>,
    },

    #[error("ambient dimension {dim} exceeds the vertex-enumeration cap {cap}")]
    DimensionCapExceeded { dim: usize, cap: usize },

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    #[error("triangle {face:?} has {count} cofaces (expected 2)")]
    NotClosed { face: Vec<usize>, count: usize },

    #[error("triangulation is not orientable")]
    NonOrientable,

    #[error("link of vertex {vertex} is not a 2-sphere: {reason}")]
    BadVertexLink { vertex: String, reason: String },

    #[error("path endpoints do not match the geodesic endpoints")]
    EndpointMismatch,

    #[error("trace decomposition mismatch: {0}")]
    DecompositionMismatch(String),

    #[error("not found: {0}")]
    NotFound(String),

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn code(&self) -> &'static str {
        match self {
            Error::MalformedSyntax { .. } => "MALFORMED_SYNTAX",
            Error::DanglingReference { .. } => "DANGLING_REFERENCE",
            Error::OpenBoundaryWord { .. } => "OPEN_BOUNDARY_WORD",
            Error::UnknownGenerator(_) => "UNKNOWN_GENERATOR",
            Error::MonodromyObstruction { .. } => "MONODROMY_OBSTRUCTION",
            Error::TrivialQuotient { .. } => "TRIVIAL_QUOTIENT",
            Error::DegreeCapExceeded { .. } => "DEGREE_CAP_EXCEEDED",
            Error::LevelOutOfRange { .. } => "LEVEL_OUT_OF_RANGE",
            Error::NotABoundary => "NOT_A_BOUNDARY",
            Error::NotACoboundary => "NOT_A_COBOUNDARY",
            Error::SearchCapExceeded { .. } => "SEARCH_CAP_EXCEEDED",
            Error::DimensionCapExceeded { .. } => "DIMENSION_CAP_EXCEEDED",
            Error::PreconditionViolated(_) => "PRECONDITION_VIOLATED",
            Error::NotClosed { .. } => "NOT_CLOSED",
            Error::NonOrientable => "NON_ORIENTABLE",
            Error::BadVertexLink { .. } => "BAD_VERTEX_LINK",
            Error::EndpointMismatch => "ENDPOINT_MISMATCH",
            Error::DecompositionMismatch(_) => "DECOMPOSITION_MISMATCH",
            Error::NotFound(_) => "NOT_FOUND",
            Error::InvalidInput(_) => "INVALID_INPUT",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
