use super::{MetricError, Prf};

/// Contextual token vectors for one text, produced by an external encoder.
#[derive(Debug, Clone, PartialEq)]
pub struct TokenEmbeddings {
    vectors: Vec<Vec<f64>>,
    dimension: usize,
}

impl TokenEmbeddings {
    pub fn new(vectors: Vec<Vec<f64>>) -> Result<Self, MetricError> {
        let dimension = vectors
            .first()
            .map(Vec::len)
            .ok_or(MetricError::EmptyInput("token embeddings"))?;
        if dimension == 0 {
            return Err(MetricError::EmptyInput("zero-dimensional vectors"));
        }
        for v in &vectors {
            if v.len() != dimension {
                return Err(MetricError::DimensionMismatch {
                    expected: dimension,
                    found: v.len(),
                });
            }
            if v.iter().any(|x| !x.is_finite()) {
                return Err(MetricError::NonFinite);
            }
        }
        Ok(Self { vectors, dimension })
    }

    pub fn dimension(&self) -> usize {
        self.dimension
    }

    pub fn len(&self) -> usize {
        self.vectors.len()
    }

    pub fn is_empty(&self) -> bool {
        self.vectors.is_empty()
    }

    pub fn vectors(&self) -> &[Vec<f64>] {
        &self.vectors
    }
}

fn squared_norm(v: &[f64]) -> f64 {
    v.iter().map(|x| x * x).sum()
}

/// Cosine similarity; 0 when either vector is zero.
pub fn cosine_similarity(x: &[f64], y: &[f64]) -> f64 {
    let denom = (squared_norm(x) * squared_norm(y)).sqrt();
    if denom == 0.0 {
        return 0.0;
    }
    let dot: f64 = x.iter().zip(y).map(|(a, b)| a * b).sum();
    dot / denom
}

/// Greedy-matching BERTScore without idf weighting or baseline rescaling.
///
/// Each candidate vector is matched to its most similar reference vector
/// (precision) and vice versa (recall).
pub fn bert_score(
    candidate: &TokenEmbeddings,
    reference: &TokenEmbeddings,
) -> Result<Prf, MetricError> {
    if candidate.dimension != reference.dimension {
        return Err(MetricError::DimensionMismatch {
            expected: reference.dimension,
            found: candidate.dimension,
        });
    }
    let sims: Vec<Vec<f64>> = candidate
        .vectors
        .iter()
        .map(|c| reference.vectors.iter().map(|r| cosine_similarity(c, r)).collect())
        .collect();
    let precision = sims
        .iter()
        .map(|row| row.iter().copied().fold(f64::NEG_INFINITY, f64::max))
        .sum::<f64>()
        / candidate.len() as f64;
    let recall = (0..reference.len())
        .map(|j| sims.iter().map(|row| row[j]).fold(f64::NEG_INFINITY, f64::max))
        .sum::<f64>()
        / reference.len() as f64;
    Ok(Prf::new(precision, recall))
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn emb(v: &[&[f64]]) -> TokenEmbeddings {
        TokenEmbeddings::new(v.iter().map(|x| x.to_vec()).collect()).unwrap()
    }

    #[test]
    fn self_match_is_one() {
        let s = 0.5f64.sqrt();
        let e = emb(&[&[1.0, 0.0], &[s, s], &[0.0, -1.0]]);
        assert_eq!(
            bert_score(&e, &e).unwrap(),
            Prf { precision: 1.0, recall: 1.0, f1: 1.0 }
        );
    }

    #[test]
    fn orthogonal_is_zero() {
        let c = emb(&[&[1.0, 0.0, 0.0]]);
        let r = emb(&[&[0.0, 1.0, 0.0], &[0.0, 0.0, 2.0]]);
        assert_eq!(bert_score(&c, &r).unwrap(), Prf::default());
    }

    #[test]
    fn hand_case() {
        let c = emb(&[&[1.0, 0.0]]);
        let r = emb(&[&[1.0, 0.0], &[0.0, 1.0]]);
        let prf = bert_score(&c, &r).unwrap();
        assert_eq!(prf.precision, 1.0);
        assert_eq!(prf.recall, 0.5);
        assert!((prf.f1 - 2.0 / 3.0).abs() < 1e-15);
    }

    #[test]
    fn zero_vector_has_zero_cosine() {
        let c = emb(&[&[0.0, 0.0]]);
        let r = emb(&[&[1.0, 0.0]]);
        assert_eq!(bert_score(&c, &r).unwrap(), Prf::default());
    }

    #[test]
    fn errors() {
        assert!(TokenEmbeddings::new(vec![]).is_err());
        assert!(TokenEmbeddings::new(vec![vec![1.0], vec![1.0, 2.0]]).is_err());
        assert!(TokenEmbeddings::new(vec![vec![f64::NAN]]).is_err());
        let a = emb(&[&[1.0]]);
        let b = emb(&[&[1.0, 0.0]]);
        assert!(matches!(
            bert_score(&a, &b),
            Err(MetricError::DimensionMismatch { .. })
        ));
    }

    fn vectors(lo: f64) -> impl Strategy<Value = Vec<Vec<f64>>> {
        prop::collection::vec(prop::collection::vec(lo..1.0, 3), 1..6)
    }

    proptest! {
        #[test]
        fn bounded_for_non_negative(c in vectors(0.0), r in vectors(0.0)) {
            let prf = bert_score(&TokenEmbeddings::new(c).unwrap(), &TokenEmbeddings::new(r).unwrap()).unwrap();
            prop_assert!((0.0..=1.0 + 1e-12).contains(&prf.f1));
        }

        #[test]
        fn precision_recall_bounded(c in vectors(-1.0), r in vectors(-1.0)) {
            let prf = bert_score(&TokenEmbeddings::new(c).unwrap(), &TokenEmbeddings::new(r).unwrap()).unwrap();
            prop_assert!(prf.precision.abs() <= 1.0 + 1e-12);
            prop_assert!(prf.recall.abs() <= 1.0 + 1e-12);
            if prf.precision >= 0.0 && prf.recall >= 0.0 {
                prop_assert!(prf.f1 <= 1.0 + 1e-12);
            }
        }

        #[test]
        fn scale_invariant(c in vectors(-1.0), r in vectors(-1.0), scale in 0.01f64..100.0) {
            let base = bert_score(&TokenEmbeddings::new(c.clone()).unwrap(), &TokenEmbeddings::new(r.clone()).unwrap()).unwrap();
            let rescale = |v: Vec<Vec<f64>>| v.into_iter().map(|x| x.into_iter().map(|y| y * scale).collect()).collect();
            let scaled = bert_score(&TokenEmbeddings::new(rescale(c)).unwrap(), &TokenEmbeddings::new(rescale(r)).unwrap()).unwrap();
            prop_assert!((base.precision - scaled.precision).abs() < 1e-12);
            prop_assert!((base.recall - scaled.recall).abs() < 1e-12);
        }
    }
}
