//! Inter-annotator agreement.
//!
//! Krippendorff's alpha uses the coincidence-matrix form. For every item
//! with `m >= 2` ratings, each ordered pair of ratings `(c, k)` taken from
//! different raters adds `1 / (m - 1)` to `o[c][k]`. With marginals
//! `n_c = sum_k o[c][k]` and `n = sum_c n_c`,
//!
//! ```text
//! alpha = 1 - (n - 1) * sum o[c][k] d2(c, k) / sum n_c n_k d2(c, k)
//! ```
//!
//! and the ordinal distance is
//! `d2(c, k) = (sum_{g=c..=k} n_g - (n_c + n_k) / 2)^2`.

use std::collections::BTreeMap;

use super::MetricError;

/// Cohen's kappa for two annotators labelling the same items.
pub fn cohens_kappa<T: Ord>(a: &[T], b: &[T]) -> Result<f64, MetricError> {
    if a.len() != b.len() {
        return Err(MetricError::LengthMismatch {
            left: a.len(),
            right: b.len(),
        });
    }
    if a.is_empty() {
        return Err(MetricError::EmptyInput("label lists"));
    }
    let n = a.len() as f64;
    let mut marginals: BTreeMap<&T, (usize, usize)> = BTreeMap::new();
    let mut agree = 0usize;
    for (x, y) in a.iter().zip(b) {
        marginals.entry(x).or_default().0 += 1;
        marginals.entry(y).or_default().1 += 1;
        if x == y {
            agree += 1;
        }
    }
    let observed = agree as f64 / n;
    let chance: f64 = marginals
        .values()
        .map(|&(ca, cb)| (ca as f64 / n) * (cb as f64 / n))
        .sum();
    if chance == 1.0 {
        return Ok(1.0);
    }
    Ok((observed - chance) / (1.0 - chance))
}

/// Raters x items matrix of optional ordinal ratings.
#[derive(Debug, Clone, PartialEq)]
pub struct RatingsMatrix {
    values: Vec<Vec<Option<i64>>>,
    scale_min: i64,
    scale_max: i64,
}

impl RatingsMatrix {
    pub fn new(
        values: Vec<Vec<Option<i64>>>,
        scale_min: i64,
        scale_max: i64,
    ) -> Result<Self, MetricError> {
        if scale_min > scale_max {
            return Err(MetricError::InvalidRatings("scale_min exceeds scale_max"));
        }
        if values.len() < 2 {
            return Err(MetricError::InvalidRatings("need at least 2 raters"));
        }
        let items = values[0].len();
        if items == 0 {
            return Err(MetricError::InvalidRatings("need at least 1 item"));
        }
        if values.iter().any(|row| row.len() != items) {
            return Err(MetricError::InvalidRatings("ragged rows"));
        }
        for &v in values.iter().flatten().flatten() {
            if v < scale_min || v > scale_max {
                return Err(MetricError::RatingOutOfScale {
                    value: v,
                    min: scale_min,
                    max: scale_max,
                });
            }
        }
        Ok(Self {
            values,
            scale_min,
            scale_max,
        })
    }

    pub fn raters(&self) -> usize {
        self.values.len()
    }

    pub fn items(&self) -> usize {
        self.values[0].len()
    }

    pub fn scale(&self) -> (i64, i64) {
        (self.scale_min, self.scale_max)
    }

    pub fn item(&self, item: usize) -> impl Iterator<Item = i64> + '_ {
        self.values.iter().filter_map(move |row| row[item])
    }
}

/// Krippendorff's alpha with the ordinal difference function.
///
/// Fails when fewer than two items carry two or more ratings. When every
/// pairable rating is the same value the expected disagreement is zero and
/// the result is 1.
pub fn krippendorff_alpha_ordinal(ratings: &RatingsMatrix) -> Result<f64, MetricError> {
    let units: Vec<Vec<i64>> = (0..ratings.items())
        .map(|i| ratings.item(i).collect::<Vec<_>>())
        .filter(|u| u.len() >= 2)
        .collect();
    if units.is_empty() {
        return Err(MetricError::NoPairableValues);
    }
    if units.len() < 2 {
        return Err(MetricError::NoVariance);
    }

    let mut categories: Vec<i64> = units.iter().flatten().copied().collect();
    categories.sort_unstable();
    categories.dedup();
    let index_of = |v: i64| categories.binary_search(&v).expect("category present");
    let q = categories.len();

    let mut coincidences = vec![vec![0.0f64; q]; q];
    for unit in &units {
        let mut counts: BTreeMap<usize, f64> = BTreeMap::new();
        for &v in unit {
            *counts.entry(index_of(v)).or_default() += 1.0;
        }
        let weight = 1.0 / (unit.len() - 1) as f64;
        for (&c, &nc) in &counts {
            for (&k, &nk) in &counts {
                let pairs = if c == k { nc * (nc - 1.0) } else { nc * nk };
                coincidences[c][k] += pairs * weight;
            }
        }
    }

    let marginals: Vec<f64> = coincidences.iter().map(|row| row.iter().sum()).collect();
    let total: f64 = marginals.iter().sum();

    let mut observed = 0.0;
    let mut expected = 0.0;
    for c in 0..q {
        for k in 0..q {
            let (lo, hi) = if c <= k { (c, k) } else { (k, c) };
            let span: f64 = marginals[lo..=hi].iter().sum();
            let d2 = (span - (marginals[c] + marginals[k]) / 2.0).powi(2);
            observed += coincidences[c][k] * d2;
            expected += marginals[c] * marginals[k] * d2;
        }
    }
    if expected == 0.0 {
        return Ok(1.0);
    }
    Ok(1.0 - (total - 1.0) * observed / expected)
}
