mod support;

use proptest::prelude::*;
use scout_core::intelligence::kmeans;
use support::kmeans::*;

#[test]
fn objective_is_non_increasing() {
    objective_never_increases();
}

#[test]
fn converged_assignment_is_nearest() {
    converged_points_sit_with_nearest_centroid();
}

#[test]
fn k_equal_to_n_is_exact() {
    one_cluster_per_point_has_zero_objective();
}

#[test]
fn k_one_is_the_mean() {
    single_cluster_is_the_mean();
}

#[test]
fn runs_are_repeatable() {
    let points = unit_vectors(100, 5);
    assert_eq!(kmeans(&points, 6, &params()).unwrap(), kmeans(&points, 6, &params()).unwrap());
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(32))]

    #[test]
    fn random_inputs_keep_the_invariants(seed in any::<u64>(), n in 2usize..40, k_frac in 0.0f64..1.0) {
        let points = unit_vectors(n, seed);
        let k = 1 + ((n - 1) as f64 * k_frac) as usize;
        let r = kmeans(&points, k, &params()).unwrap();
        prop_assert_eq!(r.assignments.len(), n);
        prop_assert!(r.assignments.iter().all(|a| *a < k));
        for w in r.objective_trace.windows(2) {
            prop_assert!(w[1] <= w[0] + 1e-9);
        }
        let direct: f64 = points.iter().zip(&r.assignments).map(|(p, a)| dist2(p.as_slice(), r.centroids[*a].as_slice())).sum();
        prop_assert!((direct - r.objective).abs() < 1e-9);
    }
}
