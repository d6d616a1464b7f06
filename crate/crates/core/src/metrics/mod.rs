//! Text-quality, readability and agreement metrics.

mod agreement;
mod bertscore;
mod familiarity;
mod readability;
mod rouge;
mod ttest;

pub use agreement::{cohens_kappa, krippendorff_alpha_ordinal, RatingsMatrix};
pub use bertscore::{bert_score, cosine_similarity, TokenEmbeddings};
pub use familiarity::{word_familiarity, FrequencyTable};
pub use readability::coleman_liau;
pub use rouge::{lcs_length, rouge_l};
pub use ttest::{paired_t_test, student_t_two_sided_p, TTest};

use serde::{Deserialize, Serialize};

#[derive(Debug, thiserror::Error)]
pub enum MetricError {
    #[error("empty document")]
    EmptyDocument,
    #[error("empty text")]
    EmptyText,
    #[error("empty input: {0}")]
    EmptyInput(&'static str),
    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite vector component")]
    NonFinite,
    #[error("rating {value} outside scale [{min}, {max}]")]
    RatingOutOfScale { value: i64, min: i64, max: i64 },
    #[error("invalid ratings matrix: {0}")]
    InvalidRatings(&'static str),
    #[error("no pairable values")]
    NoPairableValues,
    #[error("no variance")]
    NoVariance,
    #[error("degenerate: differences have zero variance")]
    Degenerate,
    #[error("need at least 2 observations, got {0}")]
    TooFewObservations(usize),
    #[error("frequency table line {line}: {message}")]
    TableFormat { line: usize, message: String },
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

/// Precision, recall and their harmonic mean.
#[derive(Debug, Clone, Copy, PartialEq, Default, Serialize, Deserialize)]
pub struct Prf {
    pub precision: f64,
    pub recall: f64,
    pub f1: f64,
}

impl Prf {
    /// Builds the triple with `f1 = 2pr/(p+r)`, or 0 when `p + r == 0`.
    pub fn new(precision: f64, recall: f64) -> Self {
        let sum = precision + recall;
        let f1 = if sum == 0.0 {
            0.0
        } else {
            2.0 * precision * recall / sum
        };
        Self {
            precision,
            recall,
            f1,
        }
    }
}
