//! Seeded train/validation/test splits.
//!
//! Records are permuted with [`SplitMix64::shuffle`] seeded by
//! `SplitSpec::seed`. Validation and test sizes are `floor(n * ratio)` with
//! the ratios normalized by their sum; training gets the remainder. The
//! first `train` positions of the permutation go to training, the next
//! `valid` to validation, the rest to test. Each subset is returned in the
//! original corpus order.

use serde::{Deserialize, Serialize};

use super::CorpusError;
use crate::rng::SplitMix64;

/// Ratios may deviate from summing to one by at most this much; they are
/// normalized before use.
const RATIO_SUM_TOLERANCE: f64 = 1e-3;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct SplitSpec {
    pub train_ratio: f64,
    pub valid_ratio: f64,
    pub test_ratio: f64,
    pub seed: u64,
}

impl SplitSpec {
    pub fn new(train: f64, valid: f64, test: f64, seed: u64) -> Result<Self, CorpusError> {
        let spec = Self {
            train_ratio: train,
            valid_ratio: valid,
            test_ratio: test,
            seed,
        };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<(), CorpusError> {
        let ratios = [self.train_ratio, self.valid_ratio, self.test_ratio];
        if ratios.iter().any(|r| !r.is_finite() || *r < 0.0) {
            return Err(CorpusError::InvalidSplit(format!(
                "ratios must be finite and non-negative: {ratios:?}"
            )));
        }
        let sum: f64 = ratios.iter().sum();
        if (sum - 1.0).abs() > RATIO_SUM_TOLERANCE {
            return Err(CorpusError::InvalidSplit(format!(
                "ratios sum to {sum}, expected 1"
            )));
        }
        Ok(())
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Split<T> {
    pub train: Vec<T>,
    pub valid: Vec<T>,
    pub test: Vec<T>,
}

/// `(train, valid, test)` sizes for `n` items.
pub fn split_sizes(n: usize, spec: &SplitSpec) -> (usize, usize, usize) {
    let sum = spec.train_ratio + spec.valid_ratio + spec.test_ratio;
    let portion = |ratio: f64| ((n as f64 * ratio / sum).floor() as usize).min(n);
    let valid = portion(spec.valid_ratio);
    let test = portion(spec.test_ratio).min(n - valid);
    (n - valid - test, valid, test)
}

pub fn split_corpus<T>(records: Vec<T>, spec: &SplitSpec) -> Result<Split<T>, CorpusError> {
    spec.validate()?;
    let n = records.len();
    let (train, valid, _) = split_sizes(n, spec);
    let mut order: Vec<usize> = (0..n).collect();
    SplitMix64::new(spec.seed).shuffle(&mut order);

    // 0 = train, 1 = valid, 2 = test
    let mut bucket = vec![2u8; n];
    for (pos, &idx) in order.iter().enumerate() {
        if pos < train {
            bucket[idx] = 0;
        } else if pos < train + valid {
            bucket[idx] = 1;
        }
    }
    let mut split = Split {
        train: Vec::with_capacity(train),
        valid: Vec::with_capacity(valid),
        test: Vec::new(),
    };
    for (record, b) in records.into_iter().zip(bucket) {
        match b {
            0 => split.train.push(record),
            1 => split.valid.push(record),
            _ => split.test.push(record),
        }
    }
    Ok(split)
}
