use serde::{Deserialize, Serialize};

use super::commercial::ValidationEvidence;
use crate::error::{Error, Result};
use crate::providers::Vector;

/// Label used for both levels when no subcategory is close enough.
pub const UNCATEGORIZED: &str = "Uncategorized";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum SourceKind {
    Patent,
    Commercial,
    Web,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Provenance {
    pub source_kind: SourceKind,
    pub source_id: String,
}

impl Provenance {
    pub fn patent(id: impl Into<String>) -> Self {
        Self {
            source_kind: SourceKind::Patent,
            source_id: id.into(),
        }
    }

    pub fn commercial(id: impl Into<String>) -> Self {
        Self {
            source_kind: SourceKind::Commercial,
            source_id: id.into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct CategoryPath {
    pub category: String,
    pub subcategory: String,
}

impl CategoryPath {
    pub fn uncategorized() -> Self {
        Self {
            category: UNCATEGORIZED.to_string(),
            subcategory: UNCATEGORIZED.to_string(),
        }
    }

    pub fn is_uncategorized(&self) -> bool {
        self.subcategory == UNCATEGORIZED
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum SustainabilityFlag {
    Sustainable,
    Traditional,
}

/// Four-criterion environmental rubric. Each criterion is 0, 0.5 or 1.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SustainabilityScore {
    pub material_origin: f64,
    pub resource_intensity: f64,
    pub waste_generation: f64,
    pub recyclability: f64,
    pub aggregate: f64,
    pub flag: SustainabilityFlag,
}

impl SustainabilityScore {
    /// Builds a score from the four criteria; the aggregate is their mean and
    /// the flag is `Sustainable` when the aggregate reaches 0.5.
    pub fn from_criteria(
        material_origin: f64,
        resource_intensity: f64,
        waste_generation: f64,
        recyclability: f64,
    ) -> Result<Self> {
        let criteria = [material_origin, resource_intensity, waste_generation, recyclability];
        if let Some(bad) = criteria.iter().find(|v| ![0.0, 0.5, 1.0].contains(*v)) {
            return Err(Error::invalid(format!("criterion value {bad} not in {{0, 0.5, 1}}")));
        }
        let aggregate = criteria.iter().sum::<f64>() / 4.0;
        let flag = if aggregate >= 0.5 {
            SustainabilityFlag::Sustainable
        } else {
            SustainabilityFlag::Traditional
        };
        Ok(Self {
            material_origin,
            resource_intensity,
            waste_generation,
            recyclability,
            aggregate,
            flag,
        })
    }

    pub fn criteria(&self) -> [f64; 4] {
        [
            self.material_origin,
            self.resource_intensity,
            self.waste_generation,
            self.recyclability,
        ]
    }
}

/// A semantically coherent solution unit with everything the models attach
/// to it along the way.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SolutionFragment {
    pub id: String,
    pub text: String,
    pub provenance: Vec<Provenance>,
    pub embedding: Vector,
    pub relevance: Option<f64>,
    pub cluster_id: Option<usize>,
    pub category_path: Option<CategoryPath>,
    pub sustainability: Option<SustainabilityScore>,
    /// `None` until the validation model has run.
    pub validation: Option<Vec<ValidationEvidence>>,
    pub rank_score: Option<f64>,
}

impl SolutionFragment {
    pub fn new(id: impl Into<String>, text: impl Into<String>, provenance: Vec<Provenance>, embedding: Vector) -> Self {
        Self {
            id: id.into(),
            text: text.into(),
            provenance,
            embedding,
            relevance: None,
            cluster_id: None,
            category_path: None,
            sustainability: None,
            validation: None,
            rank_score: None,
        }
    }

    pub fn is_commercially_validated(&self) -> bool {
        self.validation.as_ref().is_some_and(|v| !v.is_empty())
    }

    pub fn patent_ids(&self) -> impl Iterator<Item = &str> {
        self.provenance
            .iter()
            .filter(|p| p.source_kind == SourceKind::Patent)
            .map(|p| p.source_id.as_str())
    }
}
