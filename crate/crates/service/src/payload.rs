use std::collections::BTreeMap;

use serde::Serialize;

use scout_core::domain::{
    AnnotatedNode, CategoryPath, CommercialFlag, CommercialRecord, PatentDocument, PlayerChartRow, SolutionFragment,
    SourceAgent, SpecEntry, ValidationEvidence,
};
use scout_core::SCHEMA_VERSION;

#[derive(Debug, Clone, Serialize)]
pub struct Accepted {
    pub schema: &'static str,
    pub run_id: String,
}

impl Accepted {
    pub fn new(run_id: impl Into<String>) -> Self {
        Self {
            schema: SCHEMA_VERSION,
            run_id: run_id.into(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TaxonomyPayload<'a> {
    pub schema: &'static str,
    pub run_id: &'a str,
    pub taxonomy: &'a AnnotatedNode,
}

#[derive(Debug, Clone, Serialize)]
pub struct ChartPayload<'a> {
    pub schema: &'static str,
    pub run_id: &'a str,
    pub rows: &'a [PlayerChartRow],
}

#[derive(Debug, Clone, Serialize)]
pub struct PatentValidation {
    /// True when the fragment traces back to at least one patent.
    pub validated: bool,
    pub patent_ids: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct CommercialValidation {
    pub label: CommercialFlag,
    pub evidence: Vec<ValidationEvidence>,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum PlayerRole {
    Applicant,
    Company,
}

#[derive(Debug, Clone, Serialize)]
pub struct MajorPlayer {
    pub name: String,
    pub roles: Vec<PlayerRole>,
    pub patent_ids: Vec<String>,
    pub record_ids: Vec<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct SolutionCard {
    pub schema: &'static str,
    pub run_id: String,
    pub fragment_id: String,
    pub description: String,
    pub category_path: Option<CategoryPath>,
    pub rank_score: Option<f64>,
    pub patent_validation: PatentValidation,
    pub commercial_validation: CommercialValidation,
    pub major_players: Vec<MajorPlayer>,
}

fn fold(name: &str) -> String {
    name.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

/// Card for one retained fragment. Major players are the applicants of its
/// patents plus the companies behind its validating records, merged by
/// case-folded name and ordered by name.
pub fn solution_card(
    run_id: &str,
    frag: &SolutionFragment,
    patents: &BTreeMap<String, PatentDocument>,
    records: &BTreeMap<String, CommercialRecord>,
) -> SolutionCard {
    let patent_ids: Vec<String> = frag.patent_ids().map(str::to_string).collect();
    let evidence = frag.validation.clone().unwrap_or_default();

    let mut players: BTreeMap<String, MajorPlayer> = BTreeMap::new();
    let mut add = |name: &str, role: PlayerRole, patent: Option<&str>, record: Option<&str>| {
        let p = players.entry(fold(name)).or_insert_with(|| MajorPlayer {
            name: name.trim().to_string(),
            roles: vec![],
            patent_ids: vec![],
            record_ids: vec![],
        });
        if !p.roles.contains(&role) {
            p.roles.push(role);
            p.roles.sort();
        }
        if let Some(id) = patent.filter(|id| !p.patent_ids.iter().any(|x| x == id)) {
            p.patent_ids.push(id.to_string());
        }
        if let Some(id) = record.filter(|id| !p.record_ids.iter().any(|x| x == id)) {
            p.record_ids.push(id.to_string());
        }
    };
    for id in &patent_ids {
        if let Some(doc) = patents.get(id) {
            for applicant in &doc.applicants {
                add(applicant, PlayerRole::Applicant, Some(id), None);
            }
        }
    }
    for e in &evidence {
        if let Some(r) = records.get(&e.record_id) {
            add(&r.company_name, PlayerRole::Company, None, Some(&r.id));
        }
    }
    let mut major_players: Vec<MajorPlayer> = players.into_values().collect();
    for p in &mut major_players {
        p.patent_ids.sort();
        p.record_ids.sort();
    }

    SolutionCard {
        schema: SCHEMA_VERSION,
        run_id: run_id.to_string(),
        fragment_id: frag.id.clone(),
        description: frag.text.clone(),
        category_path: frag.category_path.clone(),
        rank_score: frag.rank_score,
        patent_validation: PatentValidation {
            validated: !patent_ids.is_empty(),
            patent_ids,
        },
        commercial_validation: CommercialValidation {
            label: if evidence.is_empty() {
                CommercialFlag::NonCommercial
            } else {
                CommercialFlag::Commercial
            },
            evidence,
        },
        major_players,
    }
}

/// A commercial record without its embedding.
#[derive(Debug, Clone, Serialize)]
pub struct EntityProfile {
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
    pub source_refs: Vec<String>,
}

impl From<&CommercialRecord> for EntityProfile {
    fn from(r: &CommercialRecord) -> Self {
        Self {
            id: r.id.clone(),
            company_name: r.company_name.clone(),
            country: r.country.clone(),
            founding_year: r.founding_year,
            funding_status: r.funding_status.clone(),
            product_name: r.product_name.clone(),
            description: r.description.clone(),
            specs: r.specs.clone(),
            launch_year: r.launch_year,
            source_agent: r.source_agent,
            source_refs: r.source_refs.clone(),
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct EntityPayload {
    pub schema: &'static str,
    pub run_id: String,
    pub record: EntityProfile,
    /// Retained fragments this record validates, in id order.
    pub linked_fragments: Vec<String>,
}
