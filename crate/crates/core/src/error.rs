use thiserror::Error;

/// Errors raised by construction, evaluation and verification routines.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    /// A Verblunsky parameter left the open unit interval.
    #[error("Verblunsky parameter a_{n} = {value} violates |a_n| < 1")]
    Validity { n: usize, value: f64 },

    #[error("index {index} is outside the cached range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },

    #[error("input is not symmetric under z -> 1/z (max deviation {deviation:e})")]
    Symmetry { deviation: f64 },

    #[error("sample plan error: {0}")]
    Plan(String),

    #[error("composition produces derivative order {0}, only orders up to 2 are supported")]
    UnsupportedComposition(usize),

    #[error("parameter constraint violated: {0}")]
    Constraint(String),

    #[error("internal consistency error: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;
