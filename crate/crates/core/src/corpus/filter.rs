use serde::{Deserialize, Serialize};

use super::{CorpusError, ParallelRecord};
use crate::metrics::rouge_l;
use crate::text::word_tokens;

/// Acceptance window for [`filter_outliers`]. Both ranges are inclusive.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct OutlierBounds {
    pub sim_low: f64,
    pub sim_high: f64,
    pub len_low: usize,
    pub len_high: usize,
}

impl Default for OutlierBounds {
    fn default() -> Self {
        Self {
            sim_low: 0.05,
            sim_high: 0.95,
            len_low: 50,
            len_high: 2000,
        }
    }
}

impl OutlierBounds {
    pub fn validate(&self) -> Result<(), CorpusError> {
        if !(self.sim_low <= self.sim_high) {
            return Err(CorpusError::InvalidBounds(format!(
                "sim_low {} exceeds sim_high {}",
                self.sim_low, self.sim_high
            )));
        }
        if self.len_low == 0 || self.len_low > self.len_high {
            return Err(CorpusError::InvalidBounds(format!(
                "length bounds [{}, {}] must be positive and ordered",
                self.len_low, self.len_high
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "rule", rename_all = "snake_case")]
pub enum DropReason {
    SourceLength { words: usize },
    TargetLength { words: usize },
    Similarity { value: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct DroppedRecord {
    pub record: ParallelRecord,
    /// Every rule the record violated, in the order source length, target
    /// length, similarity.
    pub reasons: Vec<DropReason>,
}

#[derive(Debug, Clone, Default, PartialEq)]
pub struct FilterOutcome {
    pub kept: Vec<ParallelRecord>,
    pub dropped: Vec<DroppedRecord>,
}

/// Document-level ROUGE-L F1 between the target (candidate) and source
/// (reference) word tokens.
pub fn lexical_similarity(record: &ParallelRecord) -> f64 {
    rouge_l(&word_tokens(&record.target), &word_tokens(&record.source)).f1
}

/// Splits `records` into those inside `bounds` and those outside, keeping
/// input order in both lists.
pub fn filter_outliers(
    records: impl IntoIterator<Item = ParallelRecord>,
    bounds: &OutlierBounds,
) -> Result<FilterOutcome, CorpusError> {
    bounds.validate()?;
    let len_ok = |n: usize| (bounds.len_low..=bounds.len_high).contains(&n);
    let mut outcome = FilterOutcome::default();
    for record in records {
        let src_words = word_tokens(&record.source);
        let tgt_words = word_tokens(&record.target);
        let mut reasons = Vec::new();
        if !len_ok(src_words.len()) {
            reasons.push(DropReason::SourceLength {
                words: src_words.len(),
            });
        }
        if !len_ok(tgt_words.len()) {
            reasons.push(DropReason::TargetLength {
                words: tgt_words.len(),
            });
        }
        let similarity = rouge_l(&tgt_words, &src_words).f1;
        if !(bounds.sim_low..=bounds.sim_high).contains(&similarity) {
            reasons.push(DropReason::Similarity { value: similarity });
        }
        if reasons.is_empty() {
            outcome.kept.push(record);
        } else {
            outcome.dropped.push(DroppedRecord { record, reasons });
        }
    }
    Ok(outcome)
}
