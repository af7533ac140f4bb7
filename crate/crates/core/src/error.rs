use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid graph: {0}")]
    Invalid(String),
    #[error("duplicate name {0}")]
    DuplicateName(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MoveError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("move not applicable: {0}")]
    Inapplicable(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum WordError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("malformed word: {0}")]
    Malformed(String),
    #[error("word is not closed: starts at {start}, ends at {end}")]
    NotClosed { start: String, end: String },
    #[error("translation length inconclusive within {0} powers")]
    Inconclusive(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum DeformError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Move(#[from] MoveError),
    #[error("graph has {edges} geometric edges, more than the cap of {cap}")]
    CapExceeded { edges: usize, cap: usize },
    #[error("elementary graph ({0}); no canonical form")]
    Elementary(&'static str),
    #[error("search budget exhausted after {0} states")]
    BudgetExhausted(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum BallError {
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error("unknown vertex {0}")]
    UnknownVertex(String),
    #[error("ball would exceed {0} vertices")]
    BudgetExceeded(usize),
    #[error("edge-end {0} is not collapsible")]
    NotCollapsible(String),
    #[error("vertex map does not match the ball: {0}")]
    MapMismatch(String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseError {
    #[error("line {line}: syntax error: {message}")]
    Syntax { line: usize, message: String },
    #[error("line {line}: {message}")]
    Semantic { line: usize, message: String },
    #[error("{0}")]
    Graph(String),
}
