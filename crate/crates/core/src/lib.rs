//! Toolkit for building and evaluating lay-summary corpora.
//!
//! * [`text`]: tokenization and sentence segmentation.
//! * [`metrics`]: ROUGE-L, BERTScore, Coleman-Liau, word familiarity,
//!   Cohen's kappa, Krippendorff's alpha and the paired t-test.
//! * [`align`]: greedy paired sentence search between an abstract and its
//!   lay summary.
//! * [`corpus`]: JSONL ingestion, outlier filtering, seeded splits, derived
//!   sub-corpora, pretraining corruption and corpus statistics.
//! * [`retrieval`]: lexicon matching, keyword extraction, definition
//!   augmentation, exact inner-product search and RAG-Sequence
//!   marginalization.
//!
//! The `book/` directory at the repository root walks through each of
//! these with runnable examples.

pub mod align;
pub mod corpus;
pub mod metrics;
pub mod retrieval;
pub mod rng;
pub mod text;

pub use align::{align_documents, build_score_matrix, gpss, AlignmentResult, ScoreMatrix};
pub use text::{split_sentences, text_counts, tokenize, Sentence, Token, TokenizedDocument};

#[cfg(doctest)]
mod book {
    #[doc = include_str!("../../../book/src/introduction.md")]
    mod introduction {}
    #[doc = include_str!("../../../book/src/text.md")]
    mod text {}
    #[doc = include_str!("../../../book/src/metrics.md")]
    mod metrics {}
    #[doc = include_str!("../../../book/src/alignment.md")]
    mod alignment {}
    #[doc = include_str!("../../../book/src/corpus.md")]
    mod corpus {}
    #[doc = include_str!("../../../book/src/retrieval.md")]
    mod retrieval {}
    #[doc = include_str!("../../../book/src/cli.md")]
    mod cli {}
}
