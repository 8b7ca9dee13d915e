use crate::domain::{PatentDocument, SemanticProblem};
use crate::error::{Error, Result};
use crate::providers::{cosine_similarity, Embedder};

pub const DEFAULT_RETRIEVAL_THRESHOLD: f64 = 0.15;

/// Cosine between a document's title + abstract embedding and the problem
/// embedding.
pub fn retrieval_score(doc: &PatentDocument, sp: &SemanticProblem, embedder: &dyn Embedder) -> Result<f64> {
    cosine_similarity(&embedder.embed(&doc.title_abstract())?, &sp.embedding)
}

/// Keeps documents whose retrieval score reaches `threshold`, in input order.
pub fn curate(
    docs: Vec<PatentDocument>,
    sp: &SemanticProblem,
    threshold: f64,
    embedder: &dyn Embedder,
) -> Result<Vec<PatentDocument>> {
    if !(0.0..=1.0).contains(&threshold) {
        return Err(Error::invalid(format!("retrieval threshold {threshold} outside [0, 1]")));
    }
    let mut kept = Vec::with_capacity(docs.len());
    for doc in docs {
        if retrieval_score(&doc, sp, embedder)? >= threshold {
            kept.push(doc);
        }
    }
    Ok(kept)
}
