use super::{RetrievalError, RetrievalHit};

const PRIOR_SUM_TOLERANCE: f64 = 1e-9;

/// RAG-Sequence marginal `log sum_z p(z|s) p(t|s,z)` from retrieval priors
/// and per-document sequence log-likelihoods.
///
/// Terms are combined with log-sum-exp over the sorted term list, so the
/// result does not depend on the order of the hits.
pub fn rag_sequence_marginalize(
    hits: &[RetrievalHit],
    log_likelihoods: &[f64],
) -> Result<f64, RetrievalError> {
    if hits.len() != log_likelihoods.len() {
        return Err(RetrievalError::LengthMismatch {
            hits: hits.len(),
            scores: log_likelihoods.len(),
        });
    }
    if hits.is_empty() {
        return Err(RetrievalError::InvalidParameter("no hits".into()));
    }
    if let Some(pos) = log_likelihoods.iter().position(|x| !x.is_finite()) {
        return Err(RetrievalError::NonFiniteScore(pos));
    }
    let prior_sum: f64 = hits.iter().map(|h| h.prior).sum();
    if hits.iter().any(|h| !(0.0..=1.0).contains(&h.prior))
        || (prior_sum - 1.0).abs() > PRIOR_SUM_TOLERANCE
    {
        return Err(RetrievalError::PriorsNotNormalized(prior_sum));
    }
    let mut terms: Vec<f64> = hits
        .iter()
        .zip(log_likelihoods)
        .filter(|(h, _)| h.prior > 0.0)
        .map(|(h, ll)| h.prior.ln() + ll)
        .collect();
    terms.sort_by(f64::total_cmp);
    let max = *terms.last().expect("priors sum to one");
    let total: f64 = terms.iter().map(|t| (t - max).exp()).sum();
    Ok(max + total.ln())
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    fn hits(priors: &[f64]) -> Vec<RetrievalHit> {
        priors
            .iter()
            .enumerate()
            .map(|(i, &p)| RetrievalHit {
                doc_id: format!("d{i}"),
                inner_product: 0.0,
                prior: p,
            })
            .collect()
    }

    #[test]
    fn single_hit_is_identity() {
        assert_eq!(rag_sequence_marginalize(&hits(&[1.0]), &[-12.5]).unwrap(), -12.5);
    }

    #[test]
    fn hand_case() {
        let v = rag_sequence_marginalize(&hits(&[0.5, 0.5]), &[0.2f64.ln(), 0.4f64.ln()]).unwrap();
        assert!((v - 0.3f64.ln()).abs() < 1e-12);
    }

    #[test]
    fn errors() {
        assert!(matches!(
            rag_sequence_marginalize(&hits(&[0.5, 0.5]), &[0.0]),
            Err(RetrievalError::LengthMismatch { hits: 2, scores: 1 })
        ));
        assert!(matches!(
            rag_sequence_marginalize(&hits(&[0.5, 0.4]), &[0.0, 0.0]),
            Err(RetrievalError::PriorsNotNormalized(_))
        ));
        assert!(rag_sequence_marginalize(&hits(&[1.0]), &[f64::NAN]).is_err());
        assert!(rag_sequence_marginalize(&[], &[]).is_err());
    }

    #[test]
    fn zero_prior_ignored() {
        let v = rag_sequence_marginalize(&hits(&[1.0, 0.0]), &[-3.0, 50.0]).unwrap();
        assert_eq!(v, -3.0);
    }

    proptest! {
        #[test]
        fn bounded_and_order_free(
            raw in prop::collection::vec((0.01f64..1.0, -300.0f64..0.0), 1..8),
            rot in 0usize..8,
        ) {
            let total: f64 = raw.iter().map(|r| r.0).sum();
            let mut h = hits(&raw.iter().map(|r| r.0 / total).collect::<Vec<_>>());
            let fix: f64 = h.iter().map(|x| x.prior).sum();
            prop_assume!((fix - 1.0).abs() <= 1e-9);
            let mut ll: Vec<f64> = raw.iter().map(|r| r.1).collect();
            let v = rag_sequence_marginalize(&h, &ll).unwrap();
            let lo = ll.iter().copied().fold(f64::INFINITY, f64::min);
            let hi = ll.iter().copied().fold(f64::NEG_INFINITY, f64::max);
            prop_assert!(v >= lo - 1e-9 && v <= hi + 1e-9);
            let r = rot % h.len();
            h.rotate_left(r);
            ll.rotate_left(r);
            prop_assert_eq!(rag_sequence_marginalize(&h, &ll).unwrap(), v);
        }
    }
}
