use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid rational literal `{0}`")]
    InvalidRational(String),
    #[error("vertex {vertex} has negative value {value}")]
    NegativeValue { vertex: usize, value: String },
    #[error("edge ({0}, {1}) is a self-loop")]
    SelfLoop(usize, usize),
    #[error("edge ({0}, {1}) appears more than once")]
    DuplicateEdge(usize, usize),
    #[error("edge ({u}, {v}) references a vertex outside 0..{n}")]
    VertexOutOfRange { u: usize, v: usize, n: usize },
    #[error("expected {expected} values, got {got}")]
    ValueCount { expected: usize, got: usize },
    #[error("graph is not a tree")]
    NotATree,
    #[error("vertex {0} does not attain the maximum of the function")]
    NotMaximal(usize),
    #[error("component {index} is not unimodal: {reason}")]
    NotUnimodal { index: usize, reason: String },
    #[error("parameter {parameter} must be {requirement}")]
    InvalidParameter { parameter: &'static str, requirement: String },
    #[error("budget exceeded: {parameter} is {actual}, limit {limit}")]
    BudgetExceeded { parameter: &'static str, actual: usize, limit: usize },
    #[error("not a vertex cover: edge ({0}, {1}) is uncovered")]
    NotACover(usize, usize),
    #[error("instance format: {0}")]
    Format(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
