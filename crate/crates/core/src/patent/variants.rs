use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::domain::SemanticProblem;
use crate::error::{Error, Result};
use crate::providers::{LlmProvider, SynonymGraph};

/// One keyword query issued to the patent connectors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct QuerySpec {
    pub terms: Vec<String>,
    pub variant_index: usize,
    pub rationale: String,
}

/// Variant 0 is the keyword list verbatim; the rest come from the LLM
/// `variants` capability. Variants with an already-seen term set are dropped,
/// so the result may be shorter than `n`.
pub fn generate_query_variants(
    sp: &SemanticProblem,
    n: usize,
    llm: &dyn LlmProvider,
    graph: &SynonymGraph,
) -> Result<Vec<QuerySpec>> {
    if n < 1 {
        return Err(Error::invalid("variant count must be at least 1"));
    }
    if sp.keywords.is_empty() {
        return Err(Error::invalid("semantic problem has no keywords to query with"));
    }
    let base = normalize_terms(&sp.keywords);
    let mut seen: BTreeSet<BTreeSet<String>> = BTreeSet::new();
    seen.insert(base.iter().cloned().collect());
    let mut out = vec![QuerySpec {
        terms: base,
        variant_index: 0,
        rationale: "keywords".to_string(),
    }];
    if n == 1 {
        return Ok(out);
    }
    for proposal in llm.variants(sp, n - 1, graph)? {
        if out.len() == n {
            break;
        }
        let terms = normalize_terms(&proposal.terms);
        if terms.is_empty() || !seen.insert(terms.iter().cloned().collect()) {
            continue;
        }
        out.push(QuerySpec {
            terms,
            variant_index: out.len(),
            rationale: proposal.rationale,
        });
    }
    Ok(out)
}

fn normalize_terms(terms: &[String]) -> Vec<String> {
    let mut seen = BTreeSet::new();
    terms
        .iter()
        .map(|t| t.trim().to_lowercase())
        .filter(|t| !t.is_empty() && seen.insert(t.clone()))
        .collect()
}
