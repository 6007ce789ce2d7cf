use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("size mismatch: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid set partition: {0}")]
    InvalidSetPartition(String),

    #[error("invalid query: {0}")]
    InvalidQuery(String),

    #[error("variable mismatch: {0} vs {1}")]
    VariableMismatch(char, char),

    #[error("division by the zero polynomial")]
    DivisionByZero,

    #[error("evaluation at a pole")]
    Pole,

    #[error("{what} refused for n = {n} (limit {limit}); use a smaller instance or raise the limit")]
    LimitExceeded {
        what: &'static str,
        n: usize,
        limit: usize,
    },

    #[error("group algebra element is not central: {0}")]
    NotCentral(String),

    #[error("expected a nonnegative integer, got {0}")]
    NotANaturalNumber(String),

    #[error("odd power N^{power} has nonzero coefficient {coeff}")]
    ParityViolation { power: i64, coeff: String },

    #[error("positive power N^{power} survives in a scaled cumulant")]
    UnexpectedGrowth { power: i64 },

    #[error("mixed-sign trace monomials are not supported")]
    MixedSigns,

    #[error("singular linear system")]
    Singular,

    #[error("invalid path: {0}")]
    InvalidPath(String),

    #[error("counter overflow in {0}")]
    Overflow(&'static str),

    #[error("invalid sampler configuration: {0}")]
    InvalidSampler(String),
}
