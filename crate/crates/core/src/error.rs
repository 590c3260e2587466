use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid generator index {index} (presentation has {count} generators)")]
    InvalidGenerator { index: usize, count: usize },

    #[error("unknown generator symbol {symbol:?}")]
    UnknownSymbol { symbol: String },

    #[error("presentation has {count} generators; at most {max} are supported")]
    TooManyGenerators { count: usize, max: usize },

    #[error("malformed input in field `{field}`: {message}")]
    Malformed { field: String, message: String },

    #[error("resource cap exceeded: {what} needs more than {limit}")]
    ResourceCap { what: &'static str, limit: usize },

    #[error("graph is disconnected (vertex {vertex} unreachable from 0)")]
    Disconnected { vertex: usize },

    #[error("graph is not median: triple {triple:?} has {medians} medians")]
    NotMedian { triple: (usize, usize, usize), medians: usize },

    #[error("no unique median for the given triple ({found} candidates)")]
    NoMedian { found: usize },

    #[error("invalid hyperplane class {class} (graph has {count} classes)")]
    InvalidClass { class: usize, count: usize },

    #[error("vertices {from:?} and {to:?} are not adjacent")]
    NotAdjacent { from: String, to: String },

    #[error("vertex set is not convex: {witness:?} lies between members but is missing")]
    NotConvex { witness: String },

    #[error("path is not a combinatorial geodesic (edge {edge} recrosses a wall)")]
    NonGeodesic { edge: usize },

    #[error("empty vertex set")]
    EmptySet,

    #[error("index out of range: {what}")]
    OutOfRange { what: String },

    #[error("invalid ray spec: {reason}")]
    InvalidRay { reason: String },

    #[error("window [{start}, {end}] is invalid: {reason}")]
    InvalidWindow { start: usize, end: usize, reason: String },

    #[error("no color string of length {n} recurs within depth {depth}")]
    NoRecurringString { n: usize, depth: usize },

    #[error("depth {depth} too small: need at least {needed}")]
    DepthTooSmall { depth: usize, needed: usize },

    #[error("mismatched inputs: {0}")]
    Mismatch(String),

    #[error("internal consistency check failed: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn malformed(field: impl Into<String>, message: impl Into<String>) -> Self {
        Error::Malformed {
            field: field.into(),
            message: message.into(),
        }
    }

    pub fn is_resource_cap(&self) -> bool {
        matches!(self, Error::ResourceCap { .. })
    }
}
