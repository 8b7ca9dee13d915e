mod support;

use proptest::prelude::*;
use scout_core::intelligence::filter_fragments;
use support::filter::*;

#[test]
fn retained_set_matches_independent_cosine() {
    filter_criterion();
}

#[test]
fn order_of_retained_follows_input() {
    let (p, frags) = fixture(12, 50);
    let (kept, _) = filter_fragments(frags.clone(), &problem(&p), 0.35).unwrap();
    let ids: Vec<&str> = kept.iter().map(|f| f.id.as_str()).collect();
    let mut sorted = ids.clone();
    sorted.sort_unstable();
    assert_eq!(ids, sorted);
}

#[test]
fn out_of_range_threshold_is_rejected() {
    let (p, frags) = fixture(13, 3);
    assert!(filter_fragments(frags.clone(), &problem(&p), 1.5).is_err());
    assert!(filter_fragments(frags, &problem(&p), f64::NAN).is_err());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(48))]

    #[test]
    fn thresholds_are_monotone(seed in any::<u64>(), a in 0.0f64..1.0, b in 0.0f64..1.0) {
        let (lo, hi) = if a <= b { (a, b) } else { (b, a) };
        let (p, frags) = fixture(seed, 40);
        let low = retained_ids(&frags, &p, lo);
        let high = retained_ids(&frags, &p, hi);
        prop_assert!(high.is_subset(&low));
    }
}
