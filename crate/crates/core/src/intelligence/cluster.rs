use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::kmeans::{default_k, kmeans, ClusterResult, KMeansParams};
use crate::domain::SolutionFragment;
use crate::error::{Error, Result};
use crate::providers::Vector;

/// How many clusters to ask for.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "policy", content = "k")]
pub enum KPolicy {
    /// ceil(sqrt(n / 2)).
    #[default]
    SqrtHalf,
    /// A fixed k, clamped to [1, n].
    Fixed(usize),
}

impl KPolicy {
    pub fn k_for(&self, n: usize) -> usize {
        match *self {
            KPolicy::SqrtHalf => default_k(n),
            KPolicy::Fixed(k) => k.clamp(1, n.max(1)),
        }
    }
}

/// Clustering outcome keyed by fragment id.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FragmentClusters {
    pub assignments: BTreeMap<String, usize>,
    pub result: ClusterResult,
}

/// Runs k-means over fragment embeddings and writes `cluster_id` onto each
/// fragment.
pub fn cluster_fragments(
    frags: &mut [SolutionFragment],
    policy: KPolicy,
    params: &KMeansParams,
) -> Result<FragmentClusters> {
    if frags.is_empty() {
        return Err(Error::EmptyPipeline(
            "no solution fragments reached clustering; upstream stages filtered everything".into(),
        ));
    }
    let vectors: Vec<Vector> = frags.iter().map(|f| f.embedding.clone()).collect();
    let result = kmeans(&vectors, policy.k_for(frags.len()), params)?;
    let mut assignments = BTreeMap::new();
    for (f, &c) in frags.iter_mut().zip(&result.assignments) {
        f.cluster_id = Some(c);
        assignments.insert(f.id.clone(), c);
    }
    Ok(FragmentClusters { assignments, result })
}
