use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid edge ({0}, {1}): self-loop")]
    SelfLoop(usize, usize),

    #[error("invalid edge ({u}, {v}): endpoint out of range for {vertex_count} vertices")]
    EndpointOutOfRange {
        u: usize,
        v: usize,
        vertex_count: usize,
    },

    #[error("graph must have at least one vertex")]
    EmptyGraph,

    #[error("vertex {0} is not a label of this graph")]
    UnknownVertex(usize),

    #[error("vertices {0} and {1} are in different components (unreachable)")]
    Unreachable(usize, usize),

    #[error("edge {0} is not an edge of the graph")]
    UnknownEdge(Edge),

    #[error("edge cut {0:?} has no edges")]
    EmptyCut(String),

    #[error("graph is not a tree: {0}")]
    NotATree(&'static str),

    #[error("dimension n = {n} out of range: {reason}")]
    Domain { n: u32, reason: String },

    #[error("k = {k} out of range for n = {n}: {reason}")]
    OutOfRange { k: u64, n: u32, reason: String },

    #[error("exhaustive oracle refused: {vertices} vertices exceed budget of {budget}; {hint}")]
    BudgetExceeded {
        vertices: usize,
        budget: usize,
        hint: &'static str,
    },

    #[error("size mismatch: guest has {guest} vertices, host has {host}")]
    SizeMismatch { guest: usize, host: usize },

    #[error("embedding map is not a bijection: {0}")]
    NotBijective(String),

    #[error("routing {routing} is not valid for this host: {reason}")]
    InvalidRouting {
        routing: &'static str,
        reason: String,
    },

    #[error("({0}, {1}) is not an edge of the guest graph")]
    NotAGuestEdge(usize, usize),

    #[error("cut family failed verification: {0}")]
    UnverifiedFamily(String),

    #[error("internal consistency: {0}")]
    Inconsistent(String),

    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),

    #[error("malformed input: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
