//! Sub-corpora derived from sentence alignments.
//!
//! * Simplification: each matched sentence pair whose two sides both pass
//!   the length filter.
//! * Background explanation: the material in front of the n-th matched
//!   pair. Source side is every source sentence before the pair; target
//!   side is every target sentence before it, or up to and including it
//!   when `n == 1`.
//! * Plainness training: the two sentences of every simplification pair,
//!   labelled 0 (source) and 1 (target).

use serde::{Deserialize, Serialize};

use super::{CorpusError, ParallelRecord};
use crate::align::{align_sentences, AlignmentPair, AlignmentResult};
use crate::text::{split_sentences, Sentence};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum DerivedKind {
    Simplification,
    Background,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct DerivedPair {
    pub id: String,
    pub kind: DerivedKind,
    #[serde(rename = "src")]
    pub source_text: String,
    #[serde(rename = "tgt")]
    pub target_text: String,
}

/// Inclusive sentence-length window in word tokens.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct LengthFilter {
    pub min_len: usize,
    pub max_len: usize,
}

impl Default for LengthFilter {
    fn default() -> Self {
        Self {
            min_len: 10,
            max_len: 150,
        }
    }
}

impl LengthFilter {
    pub fn new(min_len: usize, max_len: usize) -> Self {
        Self { min_len, max_len }
    }

    pub fn accepts(&self, sentence: &Sentence) -> bool {
        (self.min_len..=self.max_len).contains(&sentence.word_count())
    }
}

/// A record's segmented sides and their alignment.
#[derive(Debug, Clone, PartialEq)]
pub struct RecordAlignment {
    pub source: Vec<Sentence>,
    pub target: Vec<Sentence>,
    pub alignment: AlignmentResult,
}

impl RecordAlignment {
    /// Matched pairs whose two sentences both pass `filter`.
    pub fn filtered_pairs<'a>(
        &'a self,
        filter: &'a LengthFilter,
    ) -> impl Iterator<Item = (&'a AlignmentPair, &'a Sentence, &'a Sentence)> + 'a {
        self.alignment.pairs.iter().filter_map(move |p| {
            let src = &self.source[p.src_index];
            let tgt = &self.target[p.tgt_index];
            (filter.accepts(src) && filter.accepts(tgt)).then_some((p, src, tgt))
        })
    }
}

pub fn align_record(record: &ParallelRecord, min_score: f64) -> RecordAlignment {
    let source = split_sentences(&record.source);
    let target = split_sentences(&record.target);
    let alignment = align_sentences(&source, &target, min_score);
    RecordAlignment {
        source,
        target,
        alignment,
    }
}

/// One pair per length-passing matched sentence pair, with ids
/// `<record id>:s<src index>-t<tgt index>`.
pub fn derive_simplification_pairs(
    record: &ParallelRecord,
    min_score: f64,
    filter: &LengthFilter,
) -> Vec<DerivedPair> {
    let aligned = align_record(record, min_score);
    aligned
        .filtered_pairs(filter)
        .map(|(p, src, tgt)| DerivedPair {
            id: format!("{}:s{}-t{}", record.id, p.src_index, p.tgt_index),
            kind: DerivedKind::Simplification,
            source_text: src.text.clone(),
            target_text: tgt.text.clone(),
        })
        .collect()
}

fn join(sentences: &[Sentence]) -> String {
    sentences
        .iter()
        .map(|s| s.text.as_str())
        .collect::<Vec<_>>()
        .join(" ")
}

/// The content in front of the `boundary`-th matched pair, id
/// `<record id>:bg<boundary>`. `None` when there are fewer matches than
/// `boundary` or either side comes out empty.
pub fn derive_background_pairs(
    record: &ParallelRecord,
    boundary: usize,
    min_score: f64,
) -> Result<Option<DerivedPair>, CorpusError> {
    if !(1..=3).contains(&boundary) {
        return Err(CorpusError::InvalidBoundary(boundary));
    }
    let aligned = align_record(record, min_score);
    let Some(pair) = aligned.alignment.pairs.get(boundary - 1) else {
        return Ok(None);
    };
    let tgt_end = if boundary == 1 {
        pair.tgt_index + 1
    } else {
        pair.tgt_index
    };
    let source = &aligned.source[..pair.src_index];
    let target = &aligned.target[..tgt_end];
    if source.is_empty() || target.is_empty() {
        return Ok(None);
    }
    Ok(Some(DerivedPair {
        id: format!("{}:bg{}", record.id, boundary),
        kind: DerivedKind::Background,
        source_text: join(source),
        target_text: join(target),
    }))
}

/// A sentence labelled 0 (abstract) or 1 (lay summary).
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct LabeledSentence {
    pub label: u8,
    pub text: String,
}

impl LabeledSentence {
    /// `<label>\t<sentence>`, without a trailing newline.
    pub fn to_tsv(&self) -> String {
        format!("{}\t{}", self.label, self.text)
    }
}

pub fn derive_plainness_training<'a>(
    records: impl IntoIterator<Item = &'a ParallelRecord>,
    min_score: f64,
    filter: &LengthFilter,
) -> Vec<LabeledSentence> {
    let mut out = Vec::new();
    for record in records {
        let aligned = align_record(record, min_score);
        for (_, src, tgt) in aligned.filtered_pairs(filter) {
            out.push(LabeledSentence {
                label: 0,
                text: src.text.clone(),
            });
            out.push(LabeledSentence {
                label: 1,
                text: tgt.text.clone(),
            });
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const TWELVE_A: &str = "Researchers measured antibody levels in two hundred adults living near the river.";
    const TWELVE_B: &str = "Levels were highest among farmers who worked outdoors during the rainy season.";
    const TWELVE_C: &str = "These results suggest that outdoor workers need targeted vaccination programs very soon.";

    fn rec(src: &str, tgt: &str) -> ParallelRecord {
        ParallelRecord::new("r1", "J", src, tgt)
    }

    #[test]
    fn identity_gives_one_pair_per_sentence() {
        let text = format!("{TWELVE_A} {TWELVE_B} {TWELVE_C}");
        for s in split_sentences(&text) {
            assert_eq!(s.word_count(), 12);
        }
        let pairs = derive_simplification_pairs(&rec(&text, &text), 0.0, &LengthFilter::default());
        assert_eq!(pairs.len(), 3);
        assert_eq!(pairs[1].id, "r1:s1-t1");
        assert_eq!(pairs[1].source_text, TWELVE_B);
    }

    #[test]
    fn no_matches_no_pairs() {
        let r = rec("Alpha beta gamma.", "Delta epsilon zeta.");
        // the only cell scores 0; a positive threshold removes it
        assert!(derive_simplification_pairs(&r, 0.1, &LengthFilter::default()).is_empty());
        assert!(derive_plainness_training([&r], 0.1, &LengthFilter::default()).is_empty());
    }

    #[test]
    fn short_sentences_filtered() {
        let r = rec("Short one here.", "Short one here.");
        assert!(derive_simplification_pairs(&r, 0.0, &LengthFilter::default()).is_empty());
        assert_eq!(
            derive_simplification_pairs(&r, 0.0, &LengthFilter::new(1, 150)).len(),
            1
        );
    }

    #[test]
    fn background_boundary_one_includes_match() {
        // first match at (src 0, tgt 2): source side empty
        let r = rec(
            "Zika infection causes microcephaly. Other text follows.",
            "Mosquitoes bite people. Many get sick. Zika infection causes microcephaly.",
        );
        let aligned = align_record(&r, 0.1);
        assert_eq!(aligned.alignment.pairs[0].src_index, 0);
        assert_eq!(aligned.alignment.pairs[0].tgt_index, 2);
        assert_eq!(derive_background_pairs(&r, 1, 0.1).unwrap(), None);
    }

    #[test]
    fn background_boundary_two() {
        let r = rec(
            "Dengue is spreading. We sampled mosquitoes in ten cities. Resistance was common. Control must change.",
            "Dengue is a viral disease. Dengue is spreading. Mosquitoes carry it. Bites happen at dawn. We sampled mosquitoes in ten cities. Resistance was common.",
        );
        let aligned = align_record(&r, 0.5);
        let tgts: Vec<usize> = aligned.alignment.pairs.iter().map(|p| p.tgt_index).collect();
        assert_eq!(&tgts[..2], [1, 4]);
        let bg = derive_background_pairs(&r, 2, 0.5).unwrap().unwrap();
        assert_eq!(bg.id, "r1:bg2");
        assert_eq!(bg.source_text, "Dengue is spreading.");
        assert_eq!(
            bg.target_text,
            "Dengue is a viral disease. Dengue is spreading. Mosquitoes carry it. Bites happen at dawn."
        );
        assert_eq!(derive_background_pairs(&r, 3, 0.5).unwrap().unwrap().kind, DerivedKind::Background);
    }

    #[test]
    fn background_needs_enough_matches() {
        let r = rec("One sentence here.", "One sentence here.");
        assert_eq!(derive_background_pairs(&r, 2, 0.0).unwrap(), None);
        assert!(matches!(
            derive_background_pairs(&r, 5, 0.0),
            Err(CorpusError::InvalidBoundary(5))
        ));
        assert!(derive_background_pairs(&r, 0, 0.0).is_err());
    }

    #[test]
    fn plainness_pairs_are_balanced() {
        let text = format!("{TWELVE_A} {TWELVE_B}");
        let r = rec(&text, &text);
        let out = derive_plainness_training([&r], 0.0, &LengthFilter::default());
        assert_eq!(out.len(), 4);
        assert_eq!(out.iter().filter(|s| s.label == 0).count(), 2);
        assert_eq!(out[0].to_tsv(), format!("0\t{TWELVE_A}"));
    }
}
