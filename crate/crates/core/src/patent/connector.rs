use std::path::Path;

use chrono::NaiveDate;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::variants::QuerySpec;
use crate::domain::{canonicalize_patent_id, PatentDocument};
use crate::error::{Error, Result};
use crate::providers::{nfc, SynonymGraph};

/// A patent source searchable by keyword query.
pub trait PatentConnector: Send + Sync {
    fn name(&self) -> &str;

    fn search(&self, query: &QuerySpec) -> Result<Vec<PatentDocument>>;
}

/// One line of a fixture corpus file.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct PatentRecord {
    pub id: String,
    pub title: String,
    #[serde(rename = "abstract")]
    pub abstract_text: String,
    #[serde(default)]
    pub claims: String,
    #[serde(default)]
    pub description: String,
    #[serde(default)]
    pub inventors: Vec<String>,
    #[serde(default)]
    pub applicants: Vec<String>,
    pub filing_date: NaiveDate,
    #[serde(default)]
    pub forward_citations: u32,
    #[serde(default)]
    pub cited_ids: Vec<String>,
}

impl PatentRecord {
    pub fn into_document(self, source: &str) -> Result<PatentDocument> {
        let canonical_id = canonicalize_patent_id(&self.id)?;
        let cited_ids = self
            .cited_ids
            .iter()
            .filter_map(|c| canonicalize_patent_id(c).ok())
            .collect();
        let text = |s: &str| nfc(s.trim());
        Ok(PatentDocument {
            raw_id: self.id,
            canonical_id,
            title: text(&self.title),
            abstract_text: text(&self.abstract_text),
            claims: text(&self.claims),
            description: text(&self.description),
            inventors: self.inventors.iter().map(|s| text(s)).collect(),
            applicants: self.applicants.iter().map(|s| text(s)).collect(),
            filing_date: self.filing_date,
            forward_citations: self.forward_citations,
            cited_ids,
            entity_tags: Vec::new(),
            source: source.to_string(),
        })
    }
}

/// Offline connector over a JSON-lines corpus.
///
/// A document matches when every query term, after synonym substitution,
/// occurs (case-insensitively) in its title + abstract, itself after
/// substitution. Results keep corpus order.
#[derive(Debug, Clone)]
pub struct FixtureConnector {
    docs: Vec<PatentDocument>,
    haystacks: Vec<String>,
    graph: SynonymGraph,
}

impl FixtureConnector {
    pub const NAME: &'static str = "fixture";

    pub fn new(docs: Vec<PatentDocument>, graph: SynonymGraph) -> Self {
        let haystacks = docs
            .iter()
            .map(|d| graph.apply(&d.title_abstract()).to_lowercase())
            .collect();
        Self { docs, haystacks, graph }
    }

    pub fn from_jsonl(text: &str, graph: SynonymGraph) -> Result<Self> {
        let mut docs = Vec::new();
        for (lineno, line) in text.lines().enumerate() {
            if line.trim().is_empty() {
                continue;
            }
            let record: PatentRecord = serde_json::from_str(line)
                .map_err(|e| Error::config(format!("corpus line {}: {e}", lineno + 1)))?;
            docs.push(record.into_document(Self::NAME)?);
        }
        Ok(Self::new(docs, graph))
    }

    pub fn load(path: &Path, graph: SynonymGraph) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("corpus {}: {e}", path.display())))?;
        Self::from_jsonl(&text, graph)
    }

    pub fn documents(&self) -> &[PatentDocument] {
        &self.docs
    }
}

impl PatentConnector for FixtureConnector {
    fn name(&self) -> &str {
        Self::NAME
    }

    fn search(&self, query: &QuerySpec) -> Result<Vec<PatentDocument>> {
        let needles: Vec<String> = query.terms.iter().map(|t| self.graph.apply(t).to_lowercase()).collect();
        Ok(self
            .docs
            .iter()
            .zip(&self.haystacks)
            .filter(|(_, hay)| needles.iter().all(|n| hay.contains(n.as_str())))
            .map(|(d, _)| d.clone())
            .collect())
    }
}

/// Union of connector results over all queries, ordered by variant index and
/// then by connector result order. Duplicates are kept for the dedup stage.
pub fn retrieve(queries: &[QuerySpec], connector: &dyn PatentConnector) -> Result<Vec<PatentDocument>> {
    if queries.is_empty() {
        return Err(Error::invalid("retrieve needs at least one query"));
    }
    let mut ordered: Vec<&QuerySpec> = queries.iter().collect();
    ordered.sort_by_key(|q| q.variant_index);
    let batches: Vec<Result<Vec<PatentDocument>>> = ordered
        .par_iter()
        .map(|q| {
            connector.search(q).map_err(|e| match e {
                e @ Error::Retrieval { .. } => e,
                other => Error::Retrieval {
                    connector: connector.name().to_string(),
                    query: q.terms.clone(),
                    cause: other.to_string(),
                },
            })
        })
        .collect();
    let mut out = Vec::new();
    for batch in batches {
        out.extend(batch?);
    }
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;

    const CORPUS: &str = r#"
{"id":"us-1","title":"Aerogel pad","abstract":"An aerogel absorbs oil.","filing_date":"2019-01-01"}
{"id":"us-2","title":"Boom","abstract":"A floating boom contains oil.","filing_date":"2020-01-01"}
{"id":"us-3","title":"Oleophilic sponge","abstract":"Sponge for spills.","filing_date":"2021-01-01"}
"#;

    fn q(terms: &[&str], i: usize) -> QuerySpec {
        QuerySpec {
            terms: terms.iter().map(|s| s.to_string()).collect(),
            variant_index: i,
            rationale: String::new(),
        }
    }

    #[test]
    fn conjunctive_containment() {
        let c = FixtureConnector::from_jsonl(CORPUS, SynonymGraph::default()).unwrap();
        let ids: Vec<_> = c.search(&q(&["oil"], 0)).unwrap().into_iter().map(|d| d.canonical_id).collect();
        assert_eq!(ids, ["US1", "US2"]);
        assert!(c.search(&q(&["oil", "sponge"], 0)).unwrap().is_empty());
    }

    #[test]
    fn synonyms_apply_to_terms_and_text() {
        let g = SynonymGraph::new([("oleophilic".to_string(), "oil-attracting".to_string())].into()).unwrap();
        let c = FixtureConnector::from_jsonl(CORPUS, g).unwrap();
        let hits = c.search(&q(&["oleophilic"], 0)).unwrap();
        assert_eq!(hits.len(), 1);
        assert_eq!(hits[0].canonical_id, "US3");
    }

    #[test]
    fn union_keeps_duplicates_in_variant_order() {
        let c = FixtureConnector::from_jsonl(CORPUS, SynonymGraph::default()).unwrap();
        let docs = retrieve(&[q(&["boom"], 1), q(&["oil"], 0)], &c).unwrap();
        let ids: Vec<_> = docs.iter().map(|d| d.canonical_id.as_str()).collect();
        assert_eq!(ids, ["US1", "US2", "US2"]);
        assert_eq!(docs[0].raw_id, "us-1");
    }

    #[test]
    fn empty_results_are_not_an_error() {
        let c = FixtureConnector::from_jsonl(CORPUS, SynonymGraph::default()).unwrap();
        assert!(retrieve(&[q(&["graphene"], 0)], &c).unwrap().is_empty());
        assert!(retrieve(&[], &c).is_err());
    }

    struct Broken;
    impl PatentConnector for Broken {
        fn name(&self) -> &str {
            "broken"
        }
        fn search(&self, _: &QuerySpec) -> Result<Vec<PatentDocument>> {
            Err(Error::invalid("socket closed"))
        }
    }

    #[test]
    fn connector_failure_carries_query_context() {
        match retrieve(&[q(&["oil", "boom"], 0)], &Broken) {
            Err(Error::Retrieval { connector, query, .. }) => {
                assert_eq!(connector, "broken");
                assert_eq!(query, ["oil", "boom"]);
            }
            other => panic!("unexpected {other:?}"),
        }
    }
}
