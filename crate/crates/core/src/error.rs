use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),

    #[error("division by the zero polynomial")]
    ZeroDivisor,

    #[error("polynomial is not monic")]
    NotMonic,

    #[error("expected degree {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("remainder at step n = {index} dropped degree by more than one")]
    DegreeGap { index: usize },

    #[error("zero remainder at step n = {index}: the pair has a common factor")]
    ZeroRemainder { index: usize },

    #[error("u_{index} = {value} is not positive")]
    NonPositiveU { index: usize, value: String },

    #[error("interval endpoint {0} is a root")]
    EndpointIsRoot(String),

    #[error("empty interval: lower bound must be below upper bound")]
    InvalidInterval,

    #[error("node {index} is not a root of the characteristic polynomial")]
    NodeMismatch { index: usize },

    #[error("weight {index} is not positive")]
    NonPositiveWeight { index: usize },

    #[error("need {needed} moments, got {got}")]
    InsufficientMoments { needed: usize, got: usize },

    #[error("evaluation point is a pole")]
    PoleHit,

    #[error("grid has repeated nodes")]
    DegenerateGrid,

    #[error("invalid grid: {0}")]
    InvalidGrid(String),

    #[error("nodes do not form a classical grid: {0}")]
    NotAClassicalGrid(String),

    #[error("{family}: vanishing denominator at index {index}")]
    DenominatorZero { family: &'static str, index: usize },

    #[error("transform pivot P_{index}(a) vanishes")]
    PivotZero { index: usize },

    #[error("Geronimus sequence phi_{index} vanishes")]
    ZeroPhi { index: usize },

    #[error("second-kind value F_{index}(a) vanishes")]
    ZeroF { index: usize },

    #[error("recurrence does not hold at n = {index}")]
    RecurrenceBroken { index: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("unsupported: {0}")]
    Unsupported(String),
}
