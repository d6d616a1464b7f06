use super::Prf;

/// Length of the longest common subsequence of `a` and `b`.
pub fn lcs_length<T: PartialEq>(a: &[T], b: &[T]) -> usize {
    let (long, short) = if a.len() >= b.len() { (a, b) } else { (b, a) };
    if short.is_empty() {
        return 0;
    }
    let mut prev = vec![0usize; short.len() + 1];
    let mut curr = vec![0usize; short.len() + 1];
    for x in long {
        for (j, y) in short.iter().enumerate() {
            curr[j + 1] = if x == y {
                prev[j] + 1
            } else {
                curr[j].max(prev[j + 1])
            };
        }
        std::mem::swap(&mut prev, &mut curr);
    }
    prev[short.len()]
}

/// ROUGE-L with beta = 1: precision over the candidate, recall over the
/// reference.
pub fn rouge_l<T: PartialEq>(candidate: &[T], reference: &[T]) -> Prf {
    let lcs = lcs_length(candidate, reference) as f64;
    let ratio = |len: usize| if len == 0 { 0.0 } else { lcs / len as f64 };
    Prf::new(ratio(candidate.len()), ratio(reference.len()))
}
