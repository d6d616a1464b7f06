use super::MetricError;
use crate::text::TokenizedDocument;

/// Coleman-Liau index: `0.0588 L - 0.296 S - 15.8`, where `L` is letters per
/// 100 words and `S` is sentences per 100 words.
pub fn coleman_liau(doc: &TokenizedDocument) -> Result<f64, MetricError> {
    if doc.word_count == 0 {
        return Err(MetricError::EmptyDocument);
    }
    let words = doc.word_count as f64;
    let letters_per_100 = 100.0 * doc.letter_count as f64 / words;
    let sentences_per_100 = 100.0 * doc.sentence_count as f64 / words;
    Ok(0.0588 * letters_per_100 - 0.296 * sentences_per_100 - 15.8)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::text::text_counts;

    fn doc(letters: usize, words: usize, sentences: usize) -> TokenizedDocument {
        TokenizedDocument {
            sentences: Vec::new(),
            word_count: words,
            letter_count: letters,
            sentence_count: sentences,
        }
    }

    #[test]
    fn degenerate_single_word() {
        let v = coleman_liau(&doc(0, 1, 1)).unwrap();
        assert!((v - (-45.4)).abs() < 1e-12);
    }

    #[test]
    fn the_cat_sat() {
        let v = coleman_liau(&text_counts("The cat sat.")).unwrap();
        // 0.0588*300 - 0.296*100/3 - 15.8
        assert!((v - (-8.026_666_666_666_667)).abs() < 1e-9);
    }

    #[test]
    fn duplication_invariant() {
        let once = text_counts("Viruses spread quickly. Masks help a lot!");
        let twice = text_counts("Viruses spread quickly. Masks help a lot! Viruses spread quickly. Masks help a lot!");
        assert_eq!(coleman_liau(&once).unwrap(), coleman_liau(&twice).unwrap());
    }

    #[test]
    fn empty_errors() {
        assert!(matches!(coleman_liau(&text_counts("")), Err(MetricError::EmptyDocument)));
        assert!(matches!(coleman_liau(&text_counts("?!")), Err(MetricError::EmptyDocument)));
    }
}
