use thiserror::Error;

/// Everything that can go wrong inside the library.
///
/// Analysis code distinguishes *structural* failures (bad input, malformed
/// files) from *degenerate* inputs (quantities that are mathematically
/// undefined for the given graph or distribution). Callers that run large
/// batches typically record the latter as missing values instead of aborting.
#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("edge list contains no usable edges")]
    EmptyEdgeSet,

    #[error("operation would leave no vertices")]
    EmptyGraph,

    #[error("vertex id {vertex} out of range for graph with {n} vertices")]
    InvalidVertex { vertex: usize, n: usize },

    #[error("graph is already undirected")]
    AlreadyUndirected,

    #[error("measure {measure} requires a directed graph")]
    DirectedOnly { measure: String },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("removal plan was built for a different graph")]
    PlanMismatch,

    #[error("distance distribution has no mass on the requested support")]
    DegenerateDistribution,

    #[error("graph has no reachable vertex pairs at positive distance")]
    NoReachablePairs,

    #[error("operation requires a graph with at least one edge")]
    NoEdges,

    #[error("quantity undefined for graphs with fewer than two vertices")]
    TooFewVertices,

    #[error("baseline graph has no finite harmonic diameter")]
    InfiniteBaseline,

    #[error("rank correlation undefined: input vector is constant")]
    ConstantVector,

    #[error("vectors have mismatched lengths ({left} vs {right})")]
    LengthMismatch { left: usize, right: usize },

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
