use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch in {context}: expected {expected}, got {got}")]
    DimMismatch { context: &'static str, expected: usize, got: usize },

    #[error("invalid {what}: {why}")]
    Invalid { what: &'static str, why: String },

    #[error("empty feasible set: {0}")]
    EmptySet(String),

    #[error("cyclic projection stalled after {cycles} cycles (last change {change:.3e})")]
    ProjectionStalled { cycles: usize, change: f64 },

    #[error("simplex method exceeded {0} pivots")]
    PivotLimit(usize),

    #[error("linear minimization oracle failed: feasible set is {0}")]
    DegenerateLmo(&'static str),

    #[error("block {index}: {source}")]
    Block {
        index: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("numerical failure: {0}")]
    Numerical(String),

    #[error("{0}")]
    Misuse(String),

    #[error("config: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    pub(crate) fn in_block(self, index: usize) -> Error {
        Error::Block { index, source: Box::new(self) }
    }
}
