use serde::{Deserialize, Serialize};

use crate::providers::Vector;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceAgent {
    Market,
    Product,
    Competitor,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct SpecEntry {
    pub key: String,
    pub value: String,
}

/// One normalized company/product entry of the per-run commercial knowledge base.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CommercialRecord {
    pub id: String,
    pub company_name: String,
    pub country: Option<String>,
    pub founding_year: Option<i32>,
    pub funding_status: Option<String>,
    pub product_name: Option<String>,
    pub description: String,
    pub specs: Vec<SpecEntry>,
    pub launch_year: Option<i32>,
    pub source_agent: SourceAgent,
    /// Fixture page urls the record was assembled from.
    pub source_refs: Vec<String>,
    pub embedding: Vector,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum LinkKind {
    NameMatch,
    Similarity,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SignalKind {
    LaunchYear,
    FundingRound,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct AdoptionSignal {
    pub signal_kind: SignalKind,
    pub value: String,
}

/// Link between a fragment and a commercial record.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ValidationEvidence {
    pub record_id: String,
    pub link_kind: LinkKind,
    pub link_score: f64,
    pub adoption_signals: Vec<AdoptionSignal>,
}
