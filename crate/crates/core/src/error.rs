use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("invalid coloring: {0}")]
    InvalidColoring(String),
    #[error("color value does not fit the chosen color type")]
    ColorOverflow,
    #[error("graph is not good: vertex {vertex} has {size} neighbors with identical neighborhoods")]
    NotGood { vertex: usize, size: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("private neighbor condition fails at vertex {u} for neighbor {v}")]
    PncViolated { u: usize, v: usize },
    #[error("resample budget of {0} exhausted")]
    ResampleBudgetExceeded(u64),
    #[error("iteration budget of {0} exhausted")]
    IterationBudgetExceeded(u64),
    #[error("retries exhausted after {0} attempts")]
    RetriesExhausted(usize),
    #[error("instance too large for exhaustive enumeration: {0}")]
    TooLarge(String),
    #[error("{0} is not a valid Steiner triple system order (need n = 1 or 3 mod 6, n >= 7)")]
    InadmissibleOrder(usize),
}

impl Error {
    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            msg: msg.into(),
        }
    }
}
