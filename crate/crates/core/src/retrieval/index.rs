//! Exact maximum inner-product search over an in-memory index.

use std::collections::HashSet;

use serde::{Deserialize, Serialize};

use super::RetrievalError;

/// Number of passages retrieved per input unless told otherwise.
pub const DEFAULT_TOP_K: usize = 5;

/// Immutable id -> vector store; iteration follows insertion order.
#[derive(Debug, Clone, PartialEq, Default)]
pub struct EmbeddingIndex {
    dimension: usize,
    ids: Vec<String>,
    data: Vec<f32>,
}

impl EmbeddingIndex {
    pub fn build(
        entries: impl IntoIterator<Item = (String, Vec<f32>)>,
    ) -> Result<Self, RetrievalError> {
        let mut index = Self::default();
        let mut seen = HashSet::new();
        for (id, vector) in entries {
            if index.ids.is_empty() {
                if vector.is_empty() {
                    return Err(RetrievalError::DimensionMismatch {
                        expected: 1,
                        found: 0,
                    });
                }
                index.dimension = vector.len();
            } else if vector.len() != index.dimension {
                return Err(RetrievalError::DimensionMismatch {
                    expected: index.dimension,
                    found: vector.len(),
                });
            }
            if vector.iter().any(|x| !x.is_finite()) {
                return Err(RetrievalError::NonFinite(id));
            }
            if !seen.insert(id.clone()) {
                return Err(RetrievalError::DuplicateId(id));
            }
            index.ids.push(id);
            index.data.extend_from_slice(&vector);
        }
        Ok(index)
    }

    /// Zero for an empty index.
    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.ids.len()
    }

    pub fn is_empty(&self) -> bool {
        self.ids.is_empty()
    }

    pub fn ids(&self) -> &[String] {
        &self.ids
    }

    pub fn vector(&self, i: usize) -> &[f32] {
        &self.data[i * self.dimension..(i + 1) * self.dimension]
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, &[f32])> {
        self.ids
            .iter()
            .enumerate()
            .map(|(i, id)| (id.as_str(), self.vector(i)))
    }
}

/// One retrieved document with its score and its prior among the
/// retrieved set.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RetrievalHit {
    pub doc_id: String,
    pub inner_product: f64,
    pub prior: f64,
}

/// Numerically stable softmax.
pub fn softmax(logits: &[f64]) -> Vec<f64> {
    let max = logits.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let exps: Vec<f64> = logits.iter().map(|x| (x - max).exp()).collect();
    let total: f64 = exps.iter().sum();
    exps.into_iter().map(|e| e / total).collect()
}

pub(crate) fn inner_product(a: &[f32], b: &[f32]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| f64::from(*x) * f64::from(*y))
        .sum()
}

/// Exhaustive top-`k` by inner product, best first, ties broken by
/// insertion order. Priors are the softmax of the returned scores. A `k`
/// larger than the index returns every document.
pub fn retrieve_top_k(
    index: &EmbeddingIndex,
    query: &[f32],
    k: usize,
) -> Result<Vec<RetrievalHit>, RetrievalError> {
    if index.is_empty() {
        return Err(RetrievalError::EmptyIndex);
    }
    if k == 0 {
        return Err(RetrievalError::InvalidK);
    }
    if query.len() != index.dimension {
        return Err(RetrievalError::DimensionMismatch {
            expected: index.dimension,
            found: query.len(),
        });
    }
    if query.iter().any(|x| !x.is_finite()) {
        return Err(RetrievalError::NonFinite("query".into()));
    }
    let mut scored: Vec<(f64, usize)> = (0..index.len())
        .map(|i| (inner_product(index.vector(i), query), i))
        .collect();
    let order = |a: &(f64, usize), b: &(f64, usize)| b.0.total_cmp(&a.0).then(a.1.cmp(&b.1));
    let k = k.min(scored.len());
    if k < scored.len() {
        scored.select_nth_unstable_by(k - 1, order);
        scored.truncate(k);
    }
    scored.sort_unstable_by(order);
    let logits: Vec<f64> = scored.iter().map(|s| s.0).collect();
    Ok(scored
        .into_iter()
        .zip(softmax(&logits))
        .map(|((score, i), prior)| RetrievalHit {
            doc_id: index.ids[i].clone(),
            inner_product: score,
            prior,
        })
        .collect())
}
