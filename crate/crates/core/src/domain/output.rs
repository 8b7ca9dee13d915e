use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use super::fragment::{CategoryPath, SustainabilityFlag};

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum CommercialFlag {
    Commercial,
    NonCommercial,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct BucketKey {
    pub sustainability: SustainabilityFlag,
    pub commercial: CommercialFlag,
}

impl BucketKey {
    pub const ALL: [BucketKey; 4] = [
        BucketKey::new(SustainabilityFlag::Sustainable, CommercialFlag::Commercial),
        BucketKey::new(SustainabilityFlag::Sustainable, CommercialFlag::NonCommercial),
        BucketKey::new(SustainabilityFlag::Traditional, CommercialFlag::Commercial),
        BucketKey::new(SustainabilityFlag::Traditional, CommercialFlag::NonCommercial),
    ];

    pub const fn new(sustainability: SustainabilityFlag, commercial: CommercialFlag) -> Self {
        Self {
            sustainability,
            commercial,
        }
    }

    pub fn label(&self) -> &'static str {
        match (self.sustainability, self.commercial) {
            (SustainabilityFlag::Sustainable, CommercialFlag::Commercial) => "Sustainable / Commercial",
            (SustainabilityFlag::Sustainable, CommercialFlag::NonCommercial) => "Sustainable / Non-Commercial",
            (SustainabilityFlag::Traditional, CommercialFlag::Commercial) => "Traditional / Commercial",
            (SustainabilityFlag::Traditional, CommercialFlag::NonCommercial) => "Traditional / Non-Commercial",
        }
    }
}

/// The four-way partition of retained fragment ids, each list ordered by
/// rank score descending then fragment id ascending.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct Buckets {
    pub sustainable_commercial: Vec<String>,
    pub sustainable_non_commercial: Vec<String>,
    pub traditional_commercial: Vec<String>,
    pub traditional_non_commercial: Vec<String>,
}

impl Buckets {
    pub fn get(&self, key: BucketKey) -> &Vec<String> {
        match (key.sustainability, key.commercial) {
            (SustainabilityFlag::Sustainable, CommercialFlag::Commercial) => &self.sustainable_commercial,
            (SustainabilityFlag::Sustainable, CommercialFlag::NonCommercial) => &self.sustainable_non_commercial,
            (SustainabilityFlag::Traditional, CommercialFlag::Commercial) => &self.traditional_commercial,
            (SustainabilityFlag::Traditional, CommercialFlag::NonCommercial) => &self.traditional_non_commercial,
        }
    }

    pub fn get_mut(&mut self, key: BucketKey) -> &mut Vec<String> {
        match (key.sustainability, key.commercial) {
            (SustainabilityFlag::Sustainable, CommercialFlag::Commercial) => &mut self.sustainable_commercial,
            (SustainabilityFlag::Sustainable, CommercialFlag::NonCommercial) => &mut self.sustainable_non_commercial,
            (SustainabilityFlag::Traditional, CommercialFlag::Commercial) => &mut self.traditional_commercial,
            (SustainabilityFlag::Traditional, CommercialFlag::NonCommercial) => &mut self.traditional_non_commercial,
        }
    }

    pub fn iter(&self) -> impl Iterator<Item = (BucketKey, &Vec<String>)> {
        BucketKey::ALL.into_iter().map(|k| (k, self.get(k)))
    }
}

/// Taxonomy node annotated with the fragments assigned under it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AnnotatedNode {
    pub label: String,
    pub fragment_count: usize,
    pub fragment_ids: Vec<String>,
    pub children: Vec<AnnotatedNode>,
}

impl AnnotatedNode {
    pub fn find(&self, label: &str) -> Option<&AnnotatedNode> {
        if self.label == label {
            return Some(self);
        }
        self.children.iter().find_map(|c| c.find(label))
    }
}

/// One bubble of the technology-player chart: x = category, y = year,
/// size = number of supporting patents and products.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize, Deserialize)]
pub struct PlayerChartRow {
    pub category: String,
    pub year: i32,
    pub entity_name: String,
    pub volume: usize,
}

/// Compact per-fragment view carried in the final output.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionSummary {
    pub id: String,
    pub description: String,
    pub category_path: CategoryPath,
    pub cluster_id: usize,
    pub relevance: f64,
    pub sustainability_flag: SustainabilityFlag,
    pub sustainability_aggregate: f64,
    pub commercial: CommercialFlag,
    pub rank_score: f64,
    pub patent_ids: Vec<String>,
    pub record_ids: Vec<String>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunMetadata {
    pub seed: u64,
    pub config_digest: String,
    /// Item counts per stage; wall-clock timings live in the run state.
    pub stage_counts: BTreeMap<String, usize>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct StructuredOutput {
    pub schema: String,
    pub buckets: Buckets,
    pub taxonomy: AnnotatedNode,
    pub player_chart: Vec<PlayerChartRow>,
    pub solutions: Vec<SolutionSummary>,
    pub run_metadata: RunMetadata,
}
