//! Corpus ingestion and the datasets derived from it.

mod corrupt;
mod derive;
mod filter;
mod record;
mod split;
mod stats;

pub use corrupt::{corrupt_for_pretraining, Corruption, MASK_TOKEN};
pub use derive::{
    align_record, derive_background_pairs, derive_plainness_training,
    derive_simplification_pairs, DerivedKind, DerivedPair, LabeledSentence, LengthFilter,
    RecordAlignment,
};
pub use filter::{filter_outliers, lexical_similarity, DropReason, DroppedRecord, FilterOutcome, OutlierBounds};
pub use record::{load_corpus, read_corpus, read_corpus_file, write_jsonl, CorpusReader, ParallelRecord};
pub use split::{split_corpus, split_sizes, Split, SplitSpec};
pub use stats::{corpus_statistics, CorpusStats, GroupStats};

use crate::metrics::MetricError;

#[derive(Debug, thiserror::Error)]
pub enum CorpusError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("line {line}: record {id:?}: {message}")]
    InvalidRecord {
        line: usize,
        id: String,
        message: String,
    },
    #[error("line {line}: duplicate id {id:?}")]
    DuplicateId { line: usize, id: String },
    #[error("invalid outlier bounds: {0}")]
    InvalidBounds(String),
    #[error("invalid split: {0}")]
    InvalidSplit(String),
    #[error("boundary must be 1, 2 or 3, got {0}")]
    InvalidBoundary(usize),
    #[error("substitution rate must be in [0, 1], got {0}")]
    InvalidRate(f64),
    #[error("empty corpus")]
    EmptyCorpus,
    #[error(transparent)]
    Metric(#[from] MetricError),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
