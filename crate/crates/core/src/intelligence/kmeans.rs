use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::providers::Vector;

pub const DEFAULT_MAX_ITER: usize = 100;
pub const DEFAULT_TOL: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default)]
pub struct KMeansParams {
    pub max_iter: usize,
    pub tol: f64,
}

impl Default for KMeansParams {
    fn default() -> Self {
        Self {
            max_iter: DEFAULT_MAX_ITER,
            tol: DEFAULT_TOL,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ClusterResult {
    pub k: usize,
    /// Cluster index per input vector.
    pub assignments: Vec<usize>,
    /// Arithmetic cluster means.
    pub centroids: Vec<Vector>,
    /// Sum of squared distances to assigned centroids.
    pub objective: f64,
    pub iterations: usize,
    /// Objective after each iteration.
    pub objective_trace: Vec<f64>,
}

fn sq(a: &[f64], b: &[f64]) -> f64 {
    a.iter().zip(b).map(|(x, y)| (x - y) * (x - y)).sum()
}

fn nearest(point: &[f64], centroids: &[Vec<f64>]) -> usize {
    let mut best = 0;
    let mut best_d = f64::INFINITY;
    for (j, c) in centroids.iter().enumerate() {
        let d = sq(point, c);
        if d < best_d {
            best = j;
            best_d = d;
        }
    }
    best
}

/// Farthest-first seeding: index 0, then repeatedly the unchosen point with
/// the largest distance to its nearest chosen seed (lowest index on ties).
fn seed(points: &[&[f64]], k: usize) -> Vec<Vec<f64>> {
    let mut chosen = vec![false; points.len()];
    chosen[0] = true;
    let mut centroids = vec![points[0].to_vec()];
    let mut min_d: Vec<f64> = points.iter().map(|p| sq(p, points[0])).collect();
    while centroids.len() < k {
        let mut pick = None;
        for i in 0..points.len() {
            if !chosen[i] && pick.is_none_or(|p: usize| min_d[i] > min_d[p]) {
                pick = Some(i);
            }
        }
        let p = pick.expect("k <= n leaves an unchosen point");
        chosen[p] = true;
        centroids.push(points[p].to_vec());
        for (i, q) in points.iter().enumerate() {
            min_d[i] = min_d[i].min(sq(q, points[p]));
        }
    }
    centroids
}

fn means(points: &[&[f64]], assignments: &[usize], k: usize, dim: usize) -> Vec<Vec<f64>> {
    let mut sums = vec![vec![0.0; dim]; k];
    let mut counts = vec![0usize; k];
    for (p, &a) in points.iter().zip(assignments) {
        counts[a] += 1;
        for (s, x) in sums[a].iter_mut().zip(p.iter()) {
            *s += x;
        }
    }
    for (s, &c) in sums.iter_mut().zip(&counts) {
        if c > 0 {
            s.iter_mut().for_each(|x| *x /= c as f64);
        }
    }
    sums
}

/// Deterministic Lloyd's k-means with farthest-first initialization.
///
/// Assignment ties go to the lowest cluster index. A cluster left empty
/// takes the point farthest from its own centroid among clusters with more
/// than one member. Iteration stops once no centroid moves by `tol` or more,
/// or after `max_iter` iterations.
pub fn kmeans(vectors: &[Vector], k: usize, params: &KMeansParams) -> Result<ClusterResult> {
    let n = vectors.len();
    if k < 1 || k > n {
        return Err(Error::InvalidK { k, n });
    }
    if params.max_iter < 1 || params.tol.is_nan() || params.tol <= 0.0 {
        return Err(Error::invalid("k-means needs max_iter >= 1 and tol > 0"));
    }
    let dim = vectors[0].dim();
    if let Some(v) = vectors.iter().find(|v| v.dim() != dim) {
        return Err(Error::Dimension { left: dim, right: v.dim() });
    }
    let points: Vec<&[f64]> = vectors.iter().map(Vector::as_slice).collect();
    let mut centroids = seed(&points, k);
    let mut assignments = vec![0; n];
    let mut trace = Vec::new();
    let mut iterations = 0;

    for _ in 0..params.max_iter {
        iterations += 1;
        for (a, p) in assignments.iter_mut().zip(&points) {
            *a = nearest(p, &centroids);
        }
        let mut counts = vec![0usize; k];
        assignments.iter().for_each(|&a| counts[a] += 1);
        for j in 0..k {
            if counts[j] > 0 {
                continue;
            }
            let mut far = None;
            let mut far_d = -1.0;
            for (i, p) in points.iter().enumerate() {
                let a = assignments[i];
                if counts[a] > 1 {
                    let d = sq(p, &centroids[a]);
                    if d > far_d {
                        far = Some(i);
                        far_d = d;
                    }
                }
            }
            let i = far.expect("k <= n leaves a cluster with spare members");
            counts[assignments[i]] -= 1;
            assignments[i] = j;
            counts[j] = 1;
        }
        let next = means(&points, &assignments, k, dim);
        let movement = centroids
            .iter()
            .zip(&next)
            .map(|(a, b)| sq(a, b).sqrt())
            .fold(0.0, f64::max);
        centroids = next;
        let objective: f64 = points.iter().zip(&assignments).map(|(p, &a)| sq(p, &centroids[a])).sum();
        trace.push(objective);
        if movement < params.tol {
            break;
        }
    }

    Ok(ClusterResult {
        k,
        assignments,
        centroids: centroids.into_iter().map(|c| Vector::new(c)).collect::<Result<_>>()?,
        objective: *trace.last().expect("at least one iteration"),
        iterations,
        objective_trace: trace,
    })
}

/// Default cluster count for `n` items: ceil(sqrt(n / 2)) within [1, n].
pub fn default_k(n: usize) -> usize {
    if n == 0 {
        return 0;
    }
    let k = (n as f64 / 2.0).sqrt().ceil() as usize;
    k.clamp(1, n)
}
