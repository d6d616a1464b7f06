//! Tokenization and sentence segmentation.
//!
//! Everything downstream (ROUGE-L, readability, alignment) is computed from
//! the output of this module, so the rules are deliberately plain and fully
//! deterministic:
//!
//! * Text is cut on Unicode whitespace into chunks.
//! * Inside a chunk, maximal runs of alphanumeric characters form word
//!   tokens (lowercased). Every other character is its own non-word token.
//! * A sentence ends at `.`, `!` or `?` (plus any trailing closers such as
//!   `)` or `"`) when followed by whitespace and then an uppercase letter or
//!   a digit, unless the chunk ending in `.` is a known abbreviation.

use std::ops::Range;

use serde::{Deserialize, Serialize};

/// A single token. Word tokens are lowercased.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Token {
    pub text: String,
    /// True iff the token contains at least one letter or digit.
    pub is_word: bool,
}

/// A sentence and its tokens. `index` is the position within its document.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Sentence {
    pub text: String,
    pub tokens: Vec<Token>,
    pub index: usize,
}

impl Sentence {
    pub fn new(text: impl Into<String>, index: usize) -> Self {
        let text = text.into();
        let tokens = tokenize(&text);
        Self {
            text,
            tokens,
            index,
        }
    }

    /// The lowercased word tokens, punctuation removed.
    pub fn words(&self) -> Vec<&str> {
        self.tokens
            .iter()
            .filter(|t| t.is_word)
            .map(|t| t.text.as_str())
            .collect()
    }

    pub fn word_count(&self) -> usize {
        self.tokens.iter().filter(|t| t.is_word).count()
    }
}

/// Sentence list plus the counts readability formulas need.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TokenizedDocument {
    pub sentences: Vec<Sentence>,
    pub word_count: usize,
    /// Alphabetic characters of the original (not lowercased) text.
    pub letter_count: usize,
    pub sentence_count: usize,
}

/// Byte range of a token in the source text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub(crate) struct TokenSpan {
    pub range: Range<usize>,
    pub is_word: bool,
}

pub(crate) fn token_spans(text: &str) -> Vec<TokenSpan> {
    let mut spans = Vec::new();
    let mut word_start: Option<usize> = None;
    for (i, c) in text.char_indices() {
        if c.is_alphanumeric() {
            word_start.get_or_insert(i);
            continue;
        }
        if let Some(start) = word_start.take() {
            spans.push(TokenSpan {
                range: start..i,
                is_word: true,
            });
        }
        if !c.is_whitespace() {
            spans.push(TokenSpan {
                range: i..i + c.len_utf8(),
                is_word: false,
            });
        }
    }
    if let Some(start) = word_start {
        spans.push(TokenSpan {
            range: start..text.len(),
            is_word: true,
        });
    }
    spans
}

/// Splits `text` into lowercased word tokens and single-character
/// punctuation tokens.
pub fn tokenize(text: &str) -> Vec<Token> {
    token_spans(text)
        .into_iter()
        .map(|span| {
            let raw = &text[span.range];
            Token {
                text: if span.is_word {
                    raw.to_lowercase()
                } else {
                    raw.to_owned()
                },
                is_word: span.is_word,
            }
        })
        .collect()
}

/// Lowercased word tokens only.
pub fn word_tokens(text: &str) -> Vec<String> {
    tokenize(text)
        .into_iter()
        .filter(|t| t.is_word)
        .map(|t| t.text)
        .collect()
}

pub fn word_count(text: &str) -> usize {
    token_spans(text).iter().filter(|s| s.is_word).count()
}

/// Chunks ending in `.` that never close a sentence. Compared lowercased,
/// after stripping leading brackets and quotes.
const ABBREVIATIONS: &[&str] = &[
    "al.", "approx.", "ca.", "cf.", "dr.", "e.g.", "eq.", "eqs.", "fig.", "figs.", "i.e.",
    "mr.", "mrs.", "ms.", "prof.", "ref.", "refs.", "sp.", "spp.", "vol.", "vs.",
];

const CLOSERS: &[char] = &['.', '!', '?', '"', '\'', ')', ']', '\u{201d}', '\u{2019}'];

fn is_terminal(c: char) -> bool {
    matches!(c, '.' | '!' | '?')
}

fn is_abbreviation(text: &str, period_end: usize) -> bool {
    let chunk_start = text[..period_end]
        .rfind(char::is_whitespace)
        .map(|i| i + text[i..].chars().next().map_or(1, char::len_utf8))
        .unwrap_or(0);
    let chunk = text[chunk_start..period_end]
        .trim_start_matches(['(', '[', '"', '\'', '\u{201c}', '\u{2018}'])
        .to_lowercase();
    ABBREVIATIONS.contains(&chunk.as_str())
}

fn normalize_whitespace(s: &str) -> String {
    s.split_whitespace().collect::<Vec<_>>().join(" ")
}

/// Splits `text` into sentences. Sentence text is trimmed and internal
/// whitespace runs are collapsed to a single space.
pub fn split_sentences(text: &str) -> Vec<Sentence> {
    let chars: Vec<(usize, char)> = text.char_indices().collect();
    let mut boundaries = Vec::new();
    let mut k = 0;
    while k < chars.len() {
        let (pos, c) = chars[k];
        if !is_terminal(c) {
            k += 1;
            continue;
        }
        let mut end_k = k + 1;
        while end_k < chars.len() && CLOSERS.contains(&chars[end_k].1) {
            end_k += 1;
        }
        let end = chars.get(end_k).map_or(text.len(), |&(p, _)| p);
        let mut next_k = end_k;
        while next_k < chars.len() && chars[next_k].1.is_whitespace() {
            next_k += 1;
        }
        let followed_by_space = next_k > end_k;
        let starts_new = chars
            .get(next_k)
            .is_some_and(|&(_, n)| n.is_uppercase() || n.is_numeric());
        let guarded = c == '.' && is_abbreviation(text, pos + 1);
        if followed_by_space && starts_new && !guarded {
            boundaries.push(end);
        }
        k = end_k.max(k + 1);
    }
    boundaries.push(text.len());

    let mut sentences = Vec::new();
    let mut start = 0;
    for end in boundaries {
        let piece = normalize_whitespace(&text[start..end]);
        start = end;
        if !piece.is_empty() {
            let index = sentences.len();
            sentences.push(Sentence::new(piece, index));
        }
    }
    sentences
}

/// Sentences plus word, letter and sentence counts of `text`.
pub fn text_counts(text: &str) -> TokenizedDocument {
    let sentences = split_sentences(text);
    TokenizedDocument {
        word_count: word_count(text),
        letter_count: text.chars().filter(|c| c.is_alphabetic()).count(),
        sentence_count: sentences.len(),
        sentences,
    }
}
