use thiserror::Error;

use crate::graph::Vertex;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("graph has no vertices")]
    EmptyGraph,
    #[error("loop edge at vertex {0}")]
    LoopEdge(Vertex),
    #[error("vertex id {vertex} out of range for n = {n}")]
    VertexOutOfRange { vertex: Vertex, n: usize },
    #[error("graph is disconnected; component representatives: {representatives:?}")]
    Disconnected { representatives: Vec<Vertex> },
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("graph is not a cactus: cycles {first:?} and {second:?} share an edge")]
    NotCactus { first: Vec<Vertex>, second: Vec<Vertex> },
    #[error("vertex sequence is not a path: {0}")]
    NotAPath(String),
    #[error("path from {from} to {to} is not isometric (length {length}, distance {distance})")]
    NotIsometric { from: Vertex, to: Vertex, length: usize, distance: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("internal invariant violated: {0}")]
    Invariant(String),
    #[error("power {power} at vertex {vertex} exceeds the diameter {diameter}")]
    PowerOutOfRange { vertex: Vertex, power: usize, diameter: usize },
    #[error("broadcast domination is undefined on a single-vertex graph")]
    SingleVertex,
    #[error("resource guard: {0}")]
    ResourceGuard(String),
}

pub type Result<T> = std::result::Result<T, Error>;
