//! Denoising-style corruption for pretraining data.
//!
//! Sentences are shuffled with [`SplitMix64::shuffle`]; afterwards every
//! word token, visited in output order, consumes one `next_f64()` draw and
//! is replaced by [`MASK_TOKEN`] when the draw is below the rate.
//! Punctuation is never masked. Output sentences are whitespace-normalized
//! and joined with single spaces.

use serde::{Deserialize, Serialize};

use super::CorpusError;
use crate::rng::SplitMix64;
use crate::text::{split_sentences, token_spans};

pub const MASK_TOKEN: &str = "<mask>";

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Corruption {
    pub corrupted: String,
    pub original: String,
    /// `sentence_order[k]` is the original index of output sentence `k`.
    pub sentence_order: Vec<usize>,
    /// Output sentences after masking.
    pub sentences: Vec<String>,
    pub masked: usize,
}

pub fn corrupt_for_pretraining(
    text: &str,
    seed: u64,
    substitution_rate: f64,
) -> Result<Corruption, CorpusError> {
    if !(0.0..=1.0).contains(&substitution_rate) {
        return Err(CorpusError::InvalidRate(substitution_rate));
    }
    let mut rng = SplitMix64::new(seed);
    let sentences = split_sentences(text);
    let mut order: Vec<usize> = (0..sentences.len()).collect();
    rng.shuffle(&mut order);

    let mut masked = 0;
    let mut out = Vec::with_capacity(sentences.len());
    for &idx in &order {
        let s = &sentences[idx].text;
        let mut rendered = String::with_capacity(s.len());
        let mut cursor = 0;
        for span in token_spans(s).into_iter().filter(|t| t.is_word) {
            if rng.next_f64() < substitution_rate {
                rendered.push_str(&s[cursor..span.range.start]);
                rendered.push_str(MASK_TOKEN);
                cursor = span.range.end;
                masked += 1;
            }
        }
        rendered.push_str(&s[cursor..]);
        out.push(rendered);
    }
    Ok(Corruption {
        corrupted: out.join(" "),
        original: text.to_owned(),
        sentence_order: order,
        sentences: out,
        masked,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::{tokenize, word_count};
    use proptest::prelude::*;

    const TEXT: &str = "Ticks spread Lyme disease. Most bites go unnoticed! Early antibiotics cure it.";

    #[test]
    fn zero_rate_single_sentence_is_identity() {
        let c = corrupt_for_pretraining("Ticks spread Lyme disease.", 9, 0.0).unwrap();
        assert_eq!(c.corrupted, "Ticks spread Lyme disease.");
        assert_eq!(c.masked, 0);
    }

    #[test]
    fn full_rate_masks_every_word() {
        let c = corrupt_for_pretraining("It's 5 p.m., go!", 1, 1.0).unwrap();
        assert_eq!(c.corrupted, "<mask>'<mask> <mask> <mask>.<mask>., <mask>!");
        assert_eq!(c.masked, 6);
    }

    #[test]
    fn golden_output() {
        let c = corrupt_for_pretraining(TEXT, 2024, 0.15).unwrap();
        assert_eq!(c.sentence_order, GOLDEN_ORDER);
        assert_eq!(c.corrupted, GOLDEN_TEXT);
    }

    // Reproduced by hand-running the generator documented at module level.
    const GOLDEN_ORDER: [usize; 3] = [2, 0, 1];
    const GOLDEN_TEXT: &str = "Early <mask> cure it. <mask> spread Lyme disease. Most bites go unnoticed!";

    #[test]
    fn rejects_bad_rate() {
        assert!(corrupt_for_pretraining(TEXT, 0, 1.5).is_err());
        assert!(corrupt_for_pretraining(TEXT, 0, -0.1).is_err());
    }

    proptest! {
        #[test]
        fn preserves_sentence_lengths(seed: u64, rate in 0.0f64..=1.0) {
            let c = corrupt_for_pretraining(TEXT, seed, rate).unwrap();
            let original = split_sentences(TEXT);
            let mut before: Vec<usize> = original.iter().map(|s| s.word_count()).collect();
            let mut after: Vec<usize> = c.sentences.iter().map(|s| word_count(s)).collect();
            for (k, &idx) in c.sentence_order.iter().enumerate() {
                prop_assert_eq!(after[k], before[idx]);
            }
            before.sort_unstable();
            after.sort_unstable();
            prop_assert_eq!(before, after);
            let non_words = |s: &str| tokenize(s).iter().filter(|t| !t.is_word && t.text != "<" && t.text != ">").count();
            prop_assert_eq!(non_words(&c.corrupted), non_words(TEXT));
        }

        #[test]
        fn deterministic(seed: u64) {
            prop_assert_eq!(
                corrupt_for_pretraining(TEXT, seed, 0.3).unwrap(),
                corrupt_for_pretraining(TEXT, seed, 0.3).unwrap()
            );
        }
    }
}
