use thiserror::Error;

/// Errors surfaced by graph loading, matrix operations and the simulator.
#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex id {id} out of range for graph with {n} vertices")]
    InvalidVertex { id: usize, n: usize },

    #[error("invalid edge ({u},{v},{w}): {reason}")]
    InvalidEdge { u: usize, v: usize, w: u64, reason: String },

    #[error("duplicate edge ({u},{v})")]
    DuplicateEdge { u: usize, v: usize },

    #[error("dimension mismatch: left is {lr}x{lc}, right is {rr}x{rc}")]
    DimensionMismatch { lr: usize, lc: usize, rr: usize, rc: usize },

    #[error("matrix entry {entry} exceeds bound {bound}")]
    EntryExceedsBound { entry: u64, bound: u64 },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("operation requires an undirected graph")]
    DirectedUnsupported,

    #[error("source set is empty")]
    EmptySources,

    #[error("no path from {u} to {v}")]
    NoPath { u: usize, v: usize },

    #[error("entry ({i},{j}) is infinite; no path to report")]
    InfiniteEntry { i: usize, j: usize },

    #[error("graph format error: {0}")]
    GraphFormat(String),

    #[error("hopset construction failed after {attempts} attempts: {reason}")]
    HopsetConstruction { attempts: u32, reason: String },

    #[error("bandwidth exceeded in round {round}: {src}->{dst} carries {words} words, limit {limit}")]
    BandwidthExceeded { round: u64, src: usize, dst: usize, words: u64, limit: u64 },

    #[error("bilinear algorithm rejected: {0}")]
    BilinearInvalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}
