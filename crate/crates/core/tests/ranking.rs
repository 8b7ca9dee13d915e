mod support;

use proptest::prelude::*;
use scout_core::intelligence::RankWeights;
use std::collections::BTreeMap;
use support::ranking::*;

#[test]
fn scaling_weights_changes_nothing_holds() {
    scaling_weights_changes_nothing();
}

#[test]
fn equal_scores_break_ties_by_id_holds() {
    equal_scores_break_ties_by_id();
}

#[test]
fn scores_match_hand_computation() {
    // equal weights; now = 2026-01-01
    let novelty = |days: f64, cites: f64| 0.5 * (-(days / 365.25) / 10.0).exp() + 0.5 / (1.0 + cites);
    let n_p1 = novelty(579.0, 0.0);
    // cluster 0 spans C1 and C2 of three categories
    let a = (n_p1 + 1.0 + 0.5) / 3.0;
    let scores: BTreeMap<String, f64> = run(RankWeights::new(1.0, 1.0, 1.0).unwrap(), fragments()).into_iter().collect();
    assert!((scores["a"] - a).abs() < 1e-12);
    // no patent provenance: neutral novelty; cluster 2 spans all categories
    let e = (0.5 + 1.0 + 1.0) / 3.0;
    assert!((scores["e"] - e).abs() < 1e-12);
    // single-category cluster, unvalidated
    let n_p4 = novelty(1960.0, 1.0);
    let n_p2 = novelty(4018.0, 4.0);
    let d = (n_p2.max(n_p4) + 3.0 / 9.0 + 0.0) / 3.0;
    assert!((scores["d"] - d).abs() < 1e-12);
}

#[test]
fn invalid_weights_are_rejected() {
    assert!(RankWeights::new(0.0, 0.0, 0.0).is_err());
    assert!(RankWeights::new(-1.0, 1.0, 1.0).is_err());
    assert!(RankWeights::new(f64::INFINITY, 1.0, 1.0).is_err());
    assert!(RankWeights::new(1.0, 1.0, 1.0).unwrap().scaled(0.0).is_err());
}

proptest! {
    #[test]
    fn random_weights_are_scale_free(
        wn in 0.0f64..10.0, wr in 0.0f64..10.0, wa in 0.01f64..10.0, c in 0.01f64..1000.0,
    ) {
        let w = RankWeights::new(wn, wr, wa).unwrap();
        let reference = run(w, fragments());
        let scaled = run(w.scaled(c).unwrap(), fragments());
        for (a, b) in reference.iter().zip(&scaled) {
            prop_assert!((a.1 - b.1).abs() < 1e-12);
        }
        for pair in scaled.windows(2) {
            prop_assert!(pair[0].1 > pair[1].1 || (pair[0].1 == pair[1].1 && pair[0].0 < pair[1].0));
        }
    }
}
