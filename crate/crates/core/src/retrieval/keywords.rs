//! Embedding-ranked keyword extraction.
//!
//! Candidates are the distinct word n-grams of the document (lowercased,
//! `1 <= n <= ngram_max`) that neither start nor end with a stopword and do
//! not cross punctuation. Each is scored by cosine similarity between its
//! embedding and the document embedding; the `m` best are returned, ties
//! going to the earlier first occurrence.

use super::RetrievalError;
use crate::rng::SplitMix64;
use crate::text::token_spans;

/// Supplies a vector for any piece of text.
pub trait EmbeddingProvider {
    fn embed(&self, text: &str) -> Result<Vec<f64>, String>;
}

/// Deterministic bag-of-words embedder for tests and offline runs.
///
/// Each lowercased word token is hashed with 64-bit FNV-1a; the hash seeds
/// a [`SplitMix64`] that emits `dimension` values `2 * next_f64() - 1`. The
/// text vector is the sum over its tokens, scaled to unit length (all zeros
/// when the text has no words).
#[derive(Debug, Clone, Copy)]
pub struct HashEmbedder {
    pub dimension: usize,
}

impl HashEmbedder {
    pub fn new(dimension: usize) -> Self {
        Self { dimension }
    }

    fn fnv1a(bytes: &[u8]) -> u64 {
        let mut hash = 0xcbf2_9ce4_8422_2325u64;
        for &b in bytes {
            hash ^= u64::from(b);
            hash = hash.wrapping_mul(0x0000_0100_0000_01b3);
        }
        hash
    }
}

impl EmbeddingProvider for HashEmbedder {
    fn embed(&self, text: &str) -> Result<Vec<f64>, String> {
        if self.dimension == 0 {
            return Err("zero dimension".into());
        }
        let mut v = vec![0.0; self.dimension];
        for word in crate::text::word_tokens(text) {
            let mut rng = SplitMix64::new(Self::fnv1a(word.as_bytes()));
            for x in &mut v {
                *x += 2.0 * rng.next_f64() - 1.0;
            }
        }
        let norm = v.iter().map(|x| x * x).sum::<f64>().sqrt();
        if norm > 0.0 {
            v.iter_mut().for_each(|x| *x /= norm);
        }
        Ok(v)
    }
}

pub const STOPWORDS: &[&str] = &[
    "a", "about", "above", "after", "again", "against", "all", "also", "am", "an", "and", "any",
    "are", "as", "at", "be", "because", "been", "before", "being", "below", "between", "both",
    "but", "by", "can", "could", "did", "do", "does", "doing", "down", "during", "each", "few",
    "for", "from", "further", "had", "has", "have", "having", "he", "her", "here", "hers",
    "him", "his", "how", "i", "if", "in", "into", "is", "it", "its", "itself", "just", "may",
    "me", "might", "more", "most", "must", "my", "no", "nor", "not", "now", "of", "off", "on",
    "once", "only", "or", "other", "our", "ours", "out", "over", "own", "same", "she", "should",
    "so", "some", "such", "than", "that", "the", "their", "theirs", "them", "then", "there",
    "these", "they", "this", "those", "through", "to", "too", "under", "until", "up", "us",
    "very", "was", "we", "were", "what", "when", "where", "which", "while", "who", "whom", "why",
    "will", "with", "would", "you", "your", "yours",
];

fn is_stopword(word: &str) -> bool {
    STOPWORDS.binary_search(&word).is_ok()
}

/// Candidate phrases in first-occurrence order.
fn candidates(source: &str, ngram_max: usize) -> Vec<String> {
    let mut runs: Vec<Vec<String>> = vec![Vec::new()];
    for span in token_spans(source) {
        if span.is_word {
            runs.last_mut()
                .expect("non-empty")
                .push(source[span.range].to_lowercase());
        } else if !runs.last().expect("non-empty").is_empty() {
            runs.push(Vec::new());
        }
    }
    let mut seen = std::collections::HashSet::new();
    let mut out = Vec::new();
    for run in &runs {
        for start in 0..run.len() {
            for n in 1..=ngram_max.min(run.len() - start) {
                let gram = &run[start..start + n];
                if is_stopword(&gram[0]) || is_stopword(&gram[n - 1]) {
                    continue;
                }
                let phrase = gram.join(" ");
                if seen.insert(phrase.clone()) {
                    out.push(phrase);
                }
            }
        }
    }
    out
}

pub fn extract_keywords<P: EmbeddingProvider + ?Sized>(
    source: &str,
    provider: &P,
    m: usize,
    ngram_max: usize,
) -> Result<Vec<String>, RetrievalError> {
    if m == 0 || ngram_max == 0 {
        return Err(RetrievalError::InvalidParameter(
            "m and ngram_max must be at least 1".into(),
        ));
    }
    let embed = |phrase: &str| {
        provider.embed(phrase).map_err(|message| RetrievalError::Provider {
            phrase: phrase.to_owned(),
            message,
        })
    };
    let doc = embed(source)?;
    let mut scored = Vec::new();
    for phrase in candidates(source, ngram_max) {
        let v = embed(&phrase)?;
        if v.len() != doc.len() {
            return Err(RetrievalError::DimensionMismatch {
                expected: doc.len(),
                found: v.len(),
            });
        }
        scored.push((crate::metrics::cosine_similarity(&v, &doc), phrase));
    }
    scored.sort_by(|a, b| b.0.total_cmp(&a.0));
    Ok(scored.into_iter().take(m).map(|(_, p)| p).collect())
}
