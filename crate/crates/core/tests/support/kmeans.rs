use rand::rngs::StdRng;
use rand::{Rng, SeedableRng};
use scout_core::intelligence::{kmeans, KMeansParams};
use scout_core::providers::Vector;

pub const DIM: usize = 256;

pub fn unit_vectors(n: usize, seed: u64) -> Vec<Vector> {
    let mut rng = StdRng::seed_from_u64(seed);
    (0..n)
        .map(|_| {
            let raw: Vec<f64> = (0..DIM).map(|_| rng.random_range(-1.0..1.0)).collect();
            let norm = raw.iter().map(|x| x * x).sum::<f64>().sqrt();
            Vector::new(raw.into_iter().map(|x| x / norm).collect()).unwrap()
        })
        .collect()
}

pub fn dist2(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

pub fn params() -> KMeansParams {
    KMeansParams { max_iter: 1000, tol: 1e-9 }
}

pub fn objective_never_increases() {
    let points = unit_vectors(100, 1);
    for k in [2, 5, 7, 10, 25] {
        let r = kmeans(&points, k, &params()).unwrap();
        assert!(!r.objective_trace.is_empty());
        for w in r.objective_trace.windows(2) {
            assert!(w[1] <= w[0] + 1e-9, "k={k}: {} then {}", w[0], w[1]);
        }
        assert_eq!(*r.objective_trace.last().unwrap(), r.objective);
    }
}

pub fn converged_points_sit_with_nearest_centroid() {
    let points = unit_vectors(100, 2);
    for k in [3, 7, 12] {
        let r = kmeans(&points, k, &params()).unwrap();
        assert!(r.iterations < 1000, "k={k} did not converge");
        for (p, &a) in points.iter().zip(&r.assignments) {
            let own = dist2(p.as_slice(), r.centroids[a].as_slice());
            for c in &r.centroids {
                assert!(own <= dist2(p.as_slice(), c.as_slice()) + 1e-12);
            }
        }
        // centroids are the means of their members
        for (c, centroid) in r.centroids.iter().enumerate() {
            let members: Vec<&Vector> =
                points.iter().zip(&r.assignments).filter(|(_, a)| **a == c).map(|(p, _)| p).collect();
            assert!(!members.is_empty());
            for d in 0..DIM {
                let mean = members.iter().map(|m| m.as_slice()[d]).sum::<f64>() / members.len() as f64;
                assert!((mean - centroid.as_slice()[d]).abs() < 1e-12);
            }
        }
    }
}

pub fn one_cluster_per_point_has_zero_objective() {
    let points = unit_vectors(100, 3);
    let r = kmeans(&points, 100, &params()).unwrap();
    assert_eq!(r.objective, 0.0);
    let mut seen = r.assignments.clone();
    seen.sort_unstable();
    seen.dedup();
    assert_eq!(seen.len(), 100);
}

pub fn single_cluster_is_the_mean() {
    let points = unit_vectors(100, 4);
    let r = kmeans(&points, 1, &params()).unwrap();
    let mean: Vec<f64> = (0..DIM).map(|d| points.iter().map(|p| p.as_slice()[d]).sum::<f64>() / 100.0).collect();
    let sse: f64 = points.iter().map(|p| dist2(p.as_slice(), &mean)).sum();
    assert!((r.objective - sse).abs() < 1e-9);
    for (a, b) in r.centroids[0].as_slice().iter().zip(&mean) {
        assert!((a - b).abs() < 1e-9);
    }
    assert!(r.assignments.iter().all(|a| *a == 0));
}

pub fn kmeans_criterion() {
    objective_never_increases();
    converged_points_sit_with_nearest_centroid();
    one_cluster_per_point_has_zero_objective();
    single_cluster_is_the_mean();
}
