use thiserror::Error;

/// Failures of distribution construction and indicator evaluation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("distribution must have at least one outcome")]
    EmptyInput,
    #[error("probability {value} at index {index} is negative")]
    NegativeProbability { index: usize, value: f64 },
    #[error("probability {value} at index {index} is above one")]
    ProbabilityAboveOne { index: usize, value: f64 },
    #[error("probabilities sum to {sum}, above one")]
    SumExceedsOne { sum: f64 },
    #[error("probability at index {index} is not finite")]
    NonFinite { index: usize },
    #[error("{labels} labels given for {probs} probabilities")]
    LabelLengthMismatch { probs: usize, labels: usize },
    #[error("all counts are zero")]
    AllZeroCounts,
    #[error("size must be at least one")]
    ZeroSize,
    #[error("index {index} out of range for {n} outcomes")]
    IndexOutOfRange { index: usize, n: usize },
    #[error("parameter {name} = {value} out of range")]
    ParameterOutOfRange { name: &'static str, value: f64 },
    #[error("every outcome is impossible (total probability is zero)")]
    AllImpossible,
    #[error("distribution is incomplete (total probability {total})")]
    IncompleteDistribution { total: f64 },
}

impl Error {
    /// Stable variant name, used in diagnostics.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::EmptyInput => "EmptyInput",
            Error::NegativeProbability { .. } => "NegativeProbability",
            Error::ProbabilityAboveOne { .. } => "ProbabilityAboveOne",
            Error::SumExceedsOne { .. } => "SumExceedsOne",
            Error::NonFinite { .. } => "NonFinite",
            Error::LabelLengthMismatch { .. } => "LabelLengthMismatch",
            Error::AllZeroCounts => "AllZeroCounts",
            Error::ZeroSize => "ZeroSize",
            Error::IndexOutOfRange { .. } => "IndexOutOfRange",
            Error::ParameterOutOfRange { .. } => "ParameterOutOfRange",
            Error::AllImpossible => "AllImpossible",
            Error::IncompleteDistribution { .. } => "IncompleteDistribution",
        }
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
