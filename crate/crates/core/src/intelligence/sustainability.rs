use std::collections::BTreeMap;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::domain::{SolutionFragment, SustainabilityScore};
use crate::error::{Error, Result};
use crate::providers::TermMatcher;

/// Criterion names, in score order.
pub const CRITERIA: [&str; 4] = ["material_origin", "resource_intensity", "waste_generation", "recyclability"];

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CriterionTerms {
    #[serde(default)]
    pub positive: Vec<String>,
    #[serde(default)]
    pub negative: Vec<String>,
}

#[derive(Debug, Clone)]
struct CriterionMatcher {
    matcher: TermMatcher,
    positive_count: usize,
}

/// Positive and negative term lists for the four criteria.
#[derive(Debug, Clone)]
pub struct SustainabilityLexicon {
    terms: BTreeMap<String, CriterionTerms>,
    matchers: Vec<CriterionMatcher>,
}

impl SustainabilityLexicon {
    /// Every criterion must be present and no other key is accepted.
    pub fn new(terms: BTreeMap<String, CriterionTerms>) -> Result<Self> {
        if let Some(k) = terms.keys().find(|k| !CRITERIA.contains(&k.as_str())) {
            return Err(Error::config(format!("unknown sustainability criterion {k:?}")));
        }
        let mut matchers = Vec::new();
        for c in CRITERIA {
            let t = terms
                .get(c)
                .ok_or_else(|| Error::config(format!("lexicon lacks criterion {c:?}")))?;
            // One matcher over both lists so "non-recyclable" shadows "recyclable".
            matchers.push(CriterionMatcher {
                matcher: TermMatcher::new(t.positive.iter().chain(&t.negative))?,
                positive_count: t.positive.len(),
            });
        }
        Ok(Self { terms, matchers })
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let terms = serde_json::from_str(text).map_err(|e| Error::config(format!("lexicon: {e}")))?;
        Self::new(terms)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("lexicon {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn terms(&self) -> &BTreeMap<String, CriterionTerms> {
        &self.terms
    }

    fn criterion(&self, i: usize, text: &str) -> f64 {
        let m = &self.matchers[i];
        let hits = m.matcher.find(text);
        let pos = hits.iter().any(|h| h.term < m.positive_count);
        let neg = hits.iter().any(|h| h.term >= m.positive_count);
        match (pos, neg) {
            (true, false) => 1.0,
            (false, true) => 0.0,
            _ => 0.5,
        }
    }

    pub fn score_text(&self, text: &str) -> SustainabilityScore {
        SustainabilityScore::from_criteria(
            self.criterion(0, text),
            self.criterion(1, text),
            self.criterion(2, text),
            self.criterion(3, text),
        )
        .expect("criteria are drawn from {0, 0.5, 1}")
    }
}

pub fn score_sustainability(frag: &SolutionFragment, lexicon: &SustainabilityLexicon) -> SustainabilityScore {
    lexicon.score_text(&frag.text)
}
