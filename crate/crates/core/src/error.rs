use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

/// Errors reported by the matrix, digraph, join and poset operations.
///
/// Matrix and vertex positions in messages are 1-based, matching the
/// vertex numbering used for printed matrices.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch in {op}: {left_rows}x{left_cols} vs {right_rows}x{right_cols}")]
    DimensionMismatch {
        op: &'static str,
        left_rows: usize,
        left_cols: usize,
        right_rows: usize,
        right_cols: usize,
    },
    #[error("{op} requires a square matrix, got {rows}x{cols}")]
    NotSquare {
        op: &'static str,
        rows: usize,
        cols: usize,
    },
    #[error("integer overflow in {0}")]
    Overflow(&'static str),
    #[error("{what} index {index} out of range (valid: 1..={len})")]
    IndexOutOfRange {
        what: &'static str,
        index: usize,
        len: usize,
    },
    #[error("digraph is cyclic: vertex {0} reaches itself")]
    Cyclic(usize),
    #[error("invalid sequence: {0}")]
    InvalidSequence(String),
    #[error("invalid digraph: {0}")]
    InvalidDigraph(String),
    #[error("invalid relation: {0}")]
    InvalidRelation(String),
    #[error(
        "natural join condition violated: left codomain {left} does not match right domain {right}"
    )]
    JoinCondition { left: String, right: String },
    #[error("relation chain broken at link {index}: ran {ran} != dom {dom}")]
    ChainBroken {
        index: usize,
        ran: String,
        dom: String,
    },
    #[error("no Hasse arc {from} -> {to}")]
    NoSuchArc { from: usize, to: usize },
    #[error("staircase shape violated at row {row}, column {col}")]
    Staircase { row: usize, col: usize },
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("vertex limit exceeded: {count} > {limit}")]
    TooLarge { count: usize, limit: usize },
}
