use std::collections::HashSet;

use laysum::corpus::{split_corpus, split_sizes, SplitSpec};

#[test]
fn published_split_sizes() {
    let spec = SplitSpec::new(0.72, 0.17961, 0.10036, 0).unwrap();
    let (train, valid, test) = split_sizes(62_886, &spec);
    for (got, want) in [(train, 45_280i64), (valid, 11_295), (test, 6_311)] {
        assert!((got as i64 - want).abs() <= 2, "{got} vs {want}");
    }
    let split = split_corpus((0..62_886u32).collect(), &spec).unwrap();
    assert_eq!(
        (split.train.len(), split.valid.len(), split.test.len()),
        (train, valid, test)
    );
}

#[test]
fn seeds_determine_membership() {
    let items: Vec<u32> = (0..500).collect();
    let run = |seed| {
        let spec = SplitSpec::new(0.8, 0.1, 0.1, seed).unwrap();
        split_corpus(items.clone(), &spec).unwrap()
    };
    let mut seen = HashSet::new();
    for seed in 0..20 {
        let a = run(seed);
        assert_eq!(a.test, run(seed).test);
        let mut all: Vec<u32> = a.train.iter().chain(&a.valid).chain(&a.test).copied().collect();
        all.sort_unstable();
        assert_eq!(all, items);
        assert!(seen.insert(a.test.clone()), "seed {seed} repeated a permutation");
    }
}
