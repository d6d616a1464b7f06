//! Greedy sentence search against a recursive transcription and structural
//! checks on larger matrices.

use laysum::align::{gpss, AlignmentResult, ScoreMatrix};
use laysum::rng::SplitMix64;

/// Straight recursive transcription: argmax over the rectangle (first
/// strictly larger value in row-major order), then recurse above-left and
/// below-right.
fn oracle(m: &[Vec<f64>], s: (usize, usize), t: (usize, usize), out: &mut Vec<(usize, usize)>) {
    if s.0 >= s.1 || t.0 >= t.1 {
        return;
    }
    let mut best: Option<(usize, usize)> = None;
    for i in s.0..s.1 {
        for j in t.0..t.1 {
            if best.map_or(true, |(bi, bj)| m[i][j] > m[bi][bj]) {
                best = Some((i, j));
            }
        }
    }
    let (i, j) = best.unwrap();
    out.push((i, j));
    oracle(m, (s.0, i), (t.0, j), out);
    oracle(m, (i + 1, s.1), (j + 1, t.1), out);
}

fn oracle_pairs(m: &[Vec<f64>], min_score: f64) -> Vec<(usize, usize)> {
    let rows = m.len();
    let cols = m.first().map_or(0, Vec::len);
    let mut out = Vec::new();
    oracle(m, (0, rows), (0, cols), &mut out);
    out.retain(|&(i, j)| m[i][j] >= min_score);
    out.sort();
    out
}

fn random_matrix(rng: &mut SplitMix64, rows: usize, cols: usize) -> Vec<Vec<f64>> {
    (0..rows)
        .map(|_| (0..cols).map(|_| rng.below(11) as f64 / 10.0).collect())
        .collect()
}

fn pairs(r: &AlignmentResult) -> Vec<(usize, usize)> {
    r.pairs.iter().map(|p| (p.src_index, p.tgt_index)).collect()
}

#[test]
fn matches_recursive_transcription() {
    let mut rng = SplitMix64::new(11);
    for _ in 0..3000 {
        let rows = rng.below(7) as usize;
        let cols = rng.below(7) as usize;
        let m = random_matrix(&mut rng, rows, cols);
        let min_score = [0.0, 0.3, 0.7][rng.below(3) as usize];
        let got = gpss(&ScoreMatrix::new(rows, cols, m.concat()).unwrap(), min_score);
        assert_eq!(pairs(&got), oracle_pairs(&m, min_score), "{m:?}");
    }
}

#[test]
fn structure_on_large_matrices() {
    let mut rng = SplitMix64::new(12);
    for _ in 0..2000 {
        let m: Vec<f64> = (0..400).map(|_| rng.next_f64()).collect();
        let sm = ScoreMatrix::new(20, 20, m).unwrap();
        let r = gpss(&sm, 0.0);
        let p = pairs(&r);
        assert!(p.windows(2).all(|w| w[0].0 < w[1].0 && w[0].1 < w[1].1));
        assert!(p.len() <= 20);
        // the first pick is the global maximum
        let max = (0..20)
            .flat_map(|i| (0..20).map(move |j| (i, j)))
            .fold(f64::NEG_INFINITY, |acc, (i, j)| acc.max(sm.get(i, j)));
        assert!(r.pairs.iter().any(|x| x.score == max));
        let stricter = gpss(&sm, 0.5);
        assert!(stricter.pairs.iter().all(|x| r.pairs.contains(x)));
    }
}
