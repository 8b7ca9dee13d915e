use std::collections::BTreeSet;

use crate::providers::alphanumeric_words;

/// Set of contiguous `k`-word windows (lowercased, split on non-alphanumeric
/// runs, joined by single spaces). Texts with fewer than `k` words, or
/// `k == 0`, give the empty set.
pub fn word_shingles(text: &str, k: usize) -> BTreeSet<String> {
    let words = alphanumeric_words(text);
    if k == 0 || words.len() < k {
        return BTreeSet::new();
    }
    words.windows(k).map(|w| w.join(" ")).collect()
}

/// `|a ∩ b| / |a ∪ b|`, with two empty sets counted as identical (1.0).
pub fn jaccard<T: Ord>(a: &BTreeSet<T>, b: &BTreeSet<T>) -> f64 {
    if a.is_empty() && b.is_empty() {
        return 1.0;
    }
    let inter = a.intersection(b).count();
    let union = a.len() + b.len() - inter;
    inter as f64 / union as f64
}
