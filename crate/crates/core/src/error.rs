//! Crate-wide error type.

use thiserror::Error;

/// Everything that can go wrong while building or deciding a program.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// The quiver contains a directed cycle; the payload lists the vertices
    /// of one witness cycle in arrow order.
    #[error("quiver has a directed cycle through vertices {0:?}")]
    CyclicQuiver(Vec<usize>),

    /// The underlying undirected graph is not connected; the payload is a
    /// vertex unreachable from vertex 1.
    #[error("quiver is disconnected: vertex {0} is not reachable from vertex 1")]
    Disconnected(usize),

    /// A vertex id outside `1..=num_vertices` was used.
    #[error("vertex id {id} out of range 1..={max}")]
    BadVertexId { id: usize, max: usize },

    /// An arrow with equal source and target.
    #[error("arrow {arrow} is a self-loop at vertex {vertex}")]
    SelfLoop { arrow: usize, vertex: usize },

    /// A weight that must be weakly decreasing (and non-negative where
    /// required) is not.
    #[error("weight {0:?} is not dominant in the required sense")]
    NotDominant(Vec<i64>),

    /// Truncating a weight would drop a nonzero coordinate.
    #[error("cannot truncate {weight:?} to length {keep}: nonzero entry past position {keep}")]
    TruncationViolation { weight: Vec<i64>, keep: usize },

    /// A slot or weight has the wrong number of coordinates.
    #[error("expected {expected} coordinates, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    /// A weight family does not match the quiver/dimension data.
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    /// During counting, some variable has no finite range over the polytope.
    #[error("variable x{0} has no finite range; the polytope is unbounded")]
    Unbounded(usize),

    /// An enumeration budget was exhausted before the count finished.
    #[error("enumeration budget exceeded: {0}")]
    BudgetExceeded(String),

    /// The arrow-weight flow system admits sizes beyond the caller's bound.
    #[error("arrow weight sizes reach {needed}, beyond the bound {bound}")]
    BoundExceeded { bound: u64, needed: u64 },
}

/// Convenience alias used throughout the crate.
pub type Result<T> = std::result::Result<T, Error>;
