use thiserror::Error;

/// Errors produced by the belief calculus.
///
/// Variants are split between *validation* failures (malformed inputs,
/// mismatched frames, violated invariants) and *computation* failures
/// (operations that are undefined for the given, otherwise valid, inputs).
#[derive(Debug, Error)]
pub enum Error {
    #[error("frame mismatch: {0}")]
    FrameMismatch(String),

    #[error("subsets enumerate 2^{size} sets, above the cap of 2^{cap}; raise the cap to proceed")]
    EnumCapExceeded { size: usize, cap: usize },

    #[error("masses sum to {sum}, not 1 (mode: {mode})")]
    NotNormalized { sum: f64, mode: &'static str },

    #[error("invalid mass {mass} for set {set}")]
    InvalidMass { set: String, mass: f64 },

    #[error("empty set carries mass in normalized mode")]
    EmptySetMass,

    #[error("not a belief function: {0}")]
    NotABeliefFunction(String),

    #[error("belief functions are not combinable: {0}")]
    NonCombinable(String),

    #[error("invalid frame: {0}")]
    InvalidFrame(String),

    #[error("invalid refining: {0}")]
    InvalidRefining(String),

    #[error("invalid partition: {0}")]
    InvalidPartition(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("core of size {size} exceeds the limit {limit} for conditional subspaces")]
    CoreTooLarge { size: usize, limit: usize },

    #[error("{what} would enumerate {size} items, above the cap of {cap}")]
    OperationTooLarge {
        what: &'static str,
        size: usize,
        cap: usize,
    },

    #[error("degenerate configuration: {0}")]
    Degenerate(String),

    #[error("singular solution system for column selection {0:?}")]
    SingularSystem(Vec<usize>),

    #[error("unsolved total-belief instance: {0}")]
    UnsolvedInstance(String),

    #[error("invalid problem: {0}")]
    InvalidProblem(String),

    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("invalid training data: {0}")]
    InvalidTrainingData(String),

    #[error("total conflict: the non-empty part of the estimate carries no mass")]
    TotalConflict,

    #[error("document error: {0}")]
    Document(String),
}

impl Error {
    /// True for errors that indicate malformed input rather than an
    /// operation that is undefined on valid input.
    pub fn is_validation(&self) -> bool {
        !matches!(
            self,
            Error::NonCombinable(_)
                | Error::UnsolvedInstance(_)
                | Error::SingularSystem(_)
                | Error::TotalConflict
                | Error::Degenerate(_)
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
