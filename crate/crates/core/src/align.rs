//! Greedy paired sentence search (GPSS).
//!
//! Every source/target sentence pair is scored with ROUGE-L F1 (target as
//! candidate, source as reference). The highest-scoring cell is taken as a
//! match, which splits the matrix into the block above-left of it and the
//! block below-right of it; each block is searched the same way. The result
//! is therefore a chain that is strictly increasing in both indexes.
//!
//! Rectangles are half-open, `[src_start, src_end) x [tgt_start, tgt_end)`.
//! After selecting `(s, t)` the search continues on `[src_start, s) x
//! [tgt_start, t)` and `[s + 1, src_end) x [t + 1, tgt_end)`. Ties go to the
//! smallest source index, then the smallest target index.

use serde::{Deserialize, Serialize};

use crate::metrics::rouge_l;
use crate::text::{split_sentences, Sentence};

#[derive(Debug, thiserror::Error, PartialEq)]
pub enum AlignError {
    #[error("score matrix row {row} has {found} columns, expected {expected}")]
    Ragged {
        row: usize,
        expected: usize,
        found: usize,
    },
    #[error("score matrix has {found} values, expected {rows}x{cols}")]
    Shape {
        rows: usize,
        cols: usize,
        found: usize,
    },
    #[error("score at ({row}, {col}) is not finite")]
    NonFinite { row: usize, col: usize },
}

/// Dense source x target score matrix, row-major.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ScoreMatrix {
    rows: usize,
    cols: usize,
    values: Vec<f64>,
}

impl ScoreMatrix {
    pub fn new(rows: usize, cols: usize, values: Vec<f64>) -> Result<Self, AlignError> {
        if values.len() != rows * cols {
            return Err(AlignError::Shape {
                rows,
                cols,
                found: values.len(),
            });
        }
        if let Some(pos) = values.iter().position(|v| !v.is_finite()) {
            return Err(AlignError::NonFinite {
                row: pos / cols,
                col: pos % cols,
            });
        }
        Ok(Self { rows, cols, values })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self, AlignError> {
        let cols = rows.first().map_or(0, Vec::len);
        let n = rows.len();
        let mut values = Vec::with_capacity(n * cols);
        for (row, r) in rows.into_iter().enumerate() {
            if r.len() != cols {
                return Err(AlignError::Ragged {
                    row,
                    expected: cols,
                    found: r.len(),
                });
            }
            values.extend(r);
        }
        Self::new(n, cols, values)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> f64 {
        self.values[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[f64] {
        &self.values[row * self.cols..(row + 1) * self.cols]
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct AlignmentPair {
    #[serde(rename = "src")]
    pub src_index: usize,
    #[serde(rename = "tgt")]
    pub tgt_index: usize,
    pub score: f64,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum SentenceLabel {
    Matched,
    Unmatched,
}

/// Matched pairs, sorted by source index, plus per-sentence labels.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AlignmentResult {
    pub pairs: Vec<AlignmentPair>,
    pub src_labels: Vec<SentenceLabel>,
    pub tgt_labels: Vec<SentenceLabel>,
}

impl AlignmentResult {
    fn from_pairs(pairs: Vec<AlignmentPair>, rows: usize, cols: usize) -> Self {
        let mut src_labels = vec![SentenceLabel::Unmatched; rows];
        let mut tgt_labels = vec![SentenceLabel::Unmatched; cols];
        for p in &pairs {
            src_labels[p.src_index] = SentenceLabel::Matched;
            tgt_labels[p.tgt_index] = SentenceLabel::Matched;
        }
        Self {
            pairs,
            src_labels,
            tgt_labels,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.pairs.is_empty()
    }
}

/// ROUGE-L F1 of every (target as candidate, source as reference) pair,
/// over word tokens.
pub fn build_score_matrix(src: &[Sentence], tgt: &[Sentence]) -> ScoreMatrix {
    let tgt_words: Vec<Vec<&str>> = tgt.iter().map(Sentence::words).collect();
    let mut values = Vec::with_capacity(src.len() * tgt.len());
    for s in src {
        let s_words = s.words();
        values.extend(tgt_words.iter().map(|t| rouge_l(t, &s_words).f1));
    }
    ScoreMatrix {
        rows: src.len(),
        cols: tgt.len(),
        values,
    }
}

#[derive(Debug, Clone, Copy)]
struct Rect {
    src: (usize, usize),
    tgt: (usize, usize),
}

impl Rect {
    fn is_empty(&self) -> bool {
        self.src.0 >= self.src.1 || self.tgt.0 >= self.tgt.1
    }
}

/// Runs the greedy search, then drops pairs scoring below `min_score`.
///
/// `min_score` is expected in `[0, 1]`; at 0 every selected cell is kept,
/// including zero-score ones.
pub fn gpss(matrix: &ScoreMatrix, min_score: f64) -> AlignmentResult {
    let mut pairs = Vec::new();
    let mut stack = vec![Rect {
        src: (0, matrix.rows),
        tgt: (0, matrix.cols),
    }];
    while let Some(rect) = stack.pop() {
        if rect.is_empty() {
            continue;
        }
        let mut best = (rect.src.0, rect.tgt.0);
        let mut best_score = matrix.get(best.0, best.1);
        for i in rect.src.0..rect.src.1 {
            let row = matrix.row(i);
            for (j, &v) in row.iter().enumerate().take(rect.tgt.1).skip(rect.tgt.0) {
                if v > best_score {
                    best = (i, j);
                    best_score = v;
                }
            }
        }
        pairs.push(AlignmentPair {
            src_index: best.0,
            tgt_index: best.1,
            score: best_score,
        });
        stack.push(Rect {
            src: (rect.src.0, best.0),
            tgt: (rect.tgt.0, best.1),
        });
        stack.push(Rect {
            src: (best.0 + 1, rect.src.1),
            tgt: (best.1 + 1, rect.tgt.1),
        });
    }
    pairs.retain(|p| p.score >= min_score);
    pairs.sort_by_key(|p| p.src_index);
    AlignmentResult::from_pairs(pairs, matrix.rows, matrix.cols)
}

/// Aligns two already-segmented documents.
pub fn align_sentences(src: &[Sentence], tgt: &[Sentence], min_score: f64) -> AlignmentResult {
    gpss(&build_score_matrix(src, tgt), min_score)
}

/// Segments both texts and aligns them. Indexes refer to
/// [`split_sentences`] output.
pub fn align_documents(src_text: &str, tgt_text: &str, min_score: f64) -> AlignmentResult {
    align_sentences(
        &split_sentences(src_text),
        &split_sentences(tgt_text),
        min_score,
    )
}
