use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("empty population")]
    EmptyPopulation,
    #[error("negative fitness: {0}")]
    NegativeFitness(f64),
    #[error("non-finite fitness value")]
    NonFiniteFitness,
    #[error("fitness distribution has zero total count")]
    ZeroTotalCount,
    #[error("invalid normalized fitness distribution: {0}")]
    InvalidNfd(String),
    #[error("inverse temperature must be nonnegative (got {0})")]
    NegativeInverseTemperature(f64),
    #[error("degenerate proportionate selection: mean fitness is zero")]
    DegenerateProportionate,
    #[error("alpha must exceed 1 (got {0})")]
    AlphaNotAboveOne(f64),
    #[error("g0 must be finite and nonnegative (got {0})")]
    InvalidG0(f64),
    #[error("generation index must be at least 1")]
    ZeroGenerationIndex,
    #[error("invalid index range: need {lower} < {upper}")]
    InvalidRange { lower: usize, upper: usize },
    #[error("tail sum undefined for constant schedule")]
    TailSumOnConstant,
    #[error("operation requires a cauchy schedule")]
    RequiresCauchySchedule,
    #[error("support value {0} is negative")]
    NegativeSupport(f64),
    #[error("checkpoint list is empty")]
    EmptyCheckpoints,
    #[error("checkpoints must be positive and strictly ascending")]
    UnorderedCheckpoints,
    #[error("expected vector of length {expected}, got {actual}")]
    WrongLength { expected: usize, actual: usize },
    #[error("component {index} = {value} lies outside [{lower}, {upper}]")]
    OutOfBounds {
        index: usize,
        value: f64,
        lower: f64,
        upper: f64,
    },
    #[error("bound violation: raw value {raw} outside [{lower}, {upper}], recompute bounds")]
    BoundViolation { raw: f64, lower: f64, upper: f64 },
    #[error("degenerate population: all fitness values are zero")]
    DegeneratePopulation,
    #[error("genome length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}
