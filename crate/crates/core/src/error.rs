use thiserror::Error;

/// Errors raised by graph construction, counting and interpolation.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {edge} references vertex {vertex}, but the graph has {vertex_count} vertices")]
    VertexOutOfRange {
        edge: usize,
        vertex: usize,
        vertex_count: usize,
    },

    #[error("{what}: expected length {expected}, found {found}")]
    LengthMismatch {
        what: &'static str,
        expected: usize,
        found: usize,
    },

    #[error("capacity of edge {edge} must be at least 1")]
    NonPositiveCapacity { edge: usize },

    #[error("labeling is not a flow: conservation fails at vertex {vertex}")]
    NotAFlow { vertex: usize },

    #[error("orientation {0} is not totally cyclic")]
    NotTotallyCyclic(String),

    #[error("graph has {edges} edges, above the enumeration cap of {cap}")]
    EnumerationCap { edges: usize, cap: usize },

    #[error("oracle box has {size} points, above the cap of {cap}")]
    OracleCap { size: u128, cap: u128 },

    #[error("graph has a bridge (edge {edge}); it admits no nowhere-zero flow")]
    HasBridge { edge: usize },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("interpolation system is singular")]
    SingularSystem,

    #[error("no polynomial piece validated around {base} (tried dilations up to {max_dilation})")]
    NoValidatedPiece { base: String, max_dilation: u64 },

    #[error("piece does not describe the count along the ray through {0}")]
    PointOutsidePiece(String),

    #[error(
        "fitted polynomial disagrees with the count at {point}: expected {expected}, found {found}"
    )]
    ValidationFailed {
        point: String,
        expected: String,
        found: String,
    },

    #[error("{0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
