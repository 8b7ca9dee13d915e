use crate::domain::{SemanticProblem, SolutionFragment};
use crate::error::{Error, Result};
use crate::providers::cosine_similarity;

pub const DEFAULT_RELEVANCE_THRESHOLD: f64 = 0.35;

/// Decides whether a fragment is relevant to the problem.
pub trait RelevanceClassifier: Send + Sync {
    /// Relevance score stored on the fragment.
    fn score(&self, frag: &SolutionFragment, sp: &SemanticProblem) -> Result<f64>;

    fn is_relevant(&self, score: f64) -> bool;
}

/// Cosine against the problem embedding with a fixed cut-off.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CosineThreshold {
    pub tau: f64,
}

impl CosineThreshold {
    pub fn new(tau: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&tau) {
            return Err(Error::invalid(format!("relevance threshold {tau} outside [0, 1]")));
        }
        Ok(Self { tau })
    }
}

impl RelevanceClassifier for CosineThreshold {
    fn score(&self, frag: &SolutionFragment, sp: &SemanticProblem) -> Result<f64> {
        cosine_similarity(&frag.embedding, &sp.embedding)
    }

    fn is_relevant(&self, score: f64) -> bool {
        score >= self.tau
    }
}

/// Splits fragments into (retained, discarded), both in input order, with
/// `relevance` set on every fragment.
pub fn filter_with(
    frags: Vec<SolutionFragment>,
    sp: &SemanticProblem,
    classifier: &dyn RelevanceClassifier,
) -> Result<(Vec<SolutionFragment>, Vec<SolutionFragment>)> {
    let mut retained = Vec::new();
    let mut discarded = Vec::new();
    for mut f in frags {
        let s = classifier.score(&f, sp)?;
        f.relevance = Some(s);
        if classifier.is_relevant(s) {
            retained.push(f);
        } else {
            discarded.push(f);
        }
    }
    Ok((retained, discarded))
}

pub fn filter_fragments(
    frags: Vec<SolutionFragment>,
    sp: &SemanticProblem,
    tau: f64,
) -> Result<(Vec<SolutionFragment>, Vec<SolutionFragment>)> {
    filter_with(frags, sp, &CosineThreshold::new(tau)?)
}
