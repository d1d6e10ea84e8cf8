use thiserror::Error;

use crate::graph::Edge;
use crate::solutions::Problem;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: malformed header, expected \"n m\"")]
    MalformedHeader { line: usize },
    #[error("line {line}: malformed edge line, expected \"u v\"")]
    MalformedEdge { line: usize },
    #[error("line {line}: endpoint {vertex} out of range for n = {n}")]
    EndpointOutOfRange { line: usize, vertex: usize, n: usize },
    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },
    #[error("line {line}: duplicate edge {edge}")]
    DuplicateEdge { line: usize, edge: Edge },
    #[error("header announces {expected} edges but {found} were listed")]
    EdgeCountMismatch { expected: usize, found: usize },
    #[error("malformed solution: {0}")]
    MalformedSolution(String),

    #[error("vertex {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("{0} is not an edge of the graph")]
    NotAnEdge(Edge),
    #[error("the graph is disconnected")]
    Disconnected,
    #[error("t-edge-connectivity requires t >= 1")]
    ZeroConnectivity,

    #[error("a {payload} payload cannot be checked as {problem}")]
    PayloadMismatch { problem: Problem, payload: &'static str },
    #[error("the given set is not a valid {0} of the graph")]
    InvalidSolution(Problem),
    #[error("infeasible seed for {problem} completion: {reason}")]
    InfeasibleSeed { problem: Problem, reason: &'static str },

    #[error("size guard exceeded: {what} = {actual} > {limit} (use the override to force)")]
    GuardExceeded { what: &'static str, actual: usize, limit: usize },
    #[error("bitset routines support at most 64 vertices, got {0}")]
    TooManyVertices(usize),

    #[error("{0}")]
    InvalidParameter(String),
    #[error("no known characterization of the universal class for {0}; use brute force")]
    NotCharacterized(Problem),
    #[error("the equivalence requires a 2-edge-connected graph")]
    NotTwoEdgeConnected,
}

pub type Result<T> = std::result::Result<T, Error>;
