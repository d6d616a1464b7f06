//! Retrieval-augmentation preprocessing.
//!
//! Two routes add outside knowledge to a source text: definitions of
//! lexicon terms found in (or extracted from) the text, and passages pulled
//! from a precomputed embedding index by exact inner-product search. The
//! encoders themselves live outside this crate; it works on lexicons and
//! vectors.

mod augment;
mod index;
mod index_io;
mod keywords;
mod lexicon;
mod rag;

pub use augment::{augment_with_definitions, AugmentedSource, DEFAULT_TOKEN_BUDGET};
pub use index::{retrieve_top_k, softmax, EmbeddingIndex, RetrievalHit, DEFAULT_TOP_K};
pub use index_io::{read_ids, read_vectors, write_ids, write_vectors, INDEX_MAGIC, INDEX_VERSION};
pub use keywords::{extract_keywords, EmbeddingProvider, HashEmbedder, STOPWORDS};
pub use lexicon::{match_terms, Lexicon, LexiconEntry};
pub use rag::rag_sequence_marginalize;

#[derive(Debug, thiserror::Error)]
pub enum RetrievalError {
    #[error("lexicon line {line}: {message}")]
    Lexicon { line: usize, message: String },
    #[error("duplicate lexicon entity {0:?}")]
    DuplicateEntity(String),
    #[error("index is empty")]
    EmptyIndex,
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("duplicate document id {0:?}")]
    DuplicateId(String),
    #[error("non-finite component in vector {0:?}")]
    NonFinite(String),
    #[error("k must be at least 1")]
    InvalidK,
    #[error("embedding provider failed on {phrase:?}: {message}")]
    Provider { phrase: String, message: String },
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("token budget {budget} does not exceed source length {source_words}")]
    BudgetTooSmall { budget: usize, source_words: usize },
    #[error("{hits} hits but {scores} generator scores")]
    LengthMismatch { hits: usize, scores: usize },
    #[error("priors sum to {0}, expected 1")]
    PriorsNotNormalized(f64),
    #[error("non-finite generator score at position {0}")]
    NonFiniteScore(usize),
    #[error("embedding file: {0}")]
    Format(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}
