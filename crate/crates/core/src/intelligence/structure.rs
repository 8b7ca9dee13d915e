use std::collections::{BTreeMap, BTreeSet};

use chrono::Datelike;

use crate::domain::{
    AnnotatedNode, BucketKey, Buckets, CategoryPath, CommercialFlag, CommercialRecord, PatentDocument,
    PlayerChartRow, RunMetadata, SolutionFragment, SolutionSummary, StructuredOutput, Taxonomy, UNCATEGORIZED,
};
use crate::error::{Error, Result};
use crate::SCHEMA_VERSION;

fn missing(frag: &SolutionFragment, field: &str) -> Error {
    Error::PipelineInvariant(format!("fragment {} reached structuring without {field}", frag.id))
}

struct Complete<'a> {
    frag: &'a SolutionFragment,
    path: &'a CategoryPath,
    key: BucketKey,
    rank_score: f64,
    relevance: f64,
    cluster_id: usize,
    aggregate: f64,
}

fn complete(frag: &SolutionFragment) -> Result<Complete<'_>> {
    let sustainability = frag.sustainability.as_ref().ok_or_else(|| missing(frag, "sustainability"))?;
    let validation = frag.validation.as_ref().ok_or_else(|| missing(frag, "validation"))?;
    let commercial = if validation.is_empty() {
        CommercialFlag::NonCommercial
    } else {
        CommercialFlag::Commercial
    };
    Ok(Complete {
        frag,
        path: frag.category_path.as_ref().ok_or_else(|| missing(frag, "category_path"))?,
        key: BucketKey::new(sustainability.flag, commercial),
        rank_score: frag.rank_score.ok_or_else(|| missing(frag, "rank_score"))?,
        relevance: frag.relevance.ok_or_else(|| missing(frag, "relevance"))?,
        cluster_id: frag.cluster_id.ok_or_else(|| missing(frag, "cluster_id"))?,
        aggregate: sustainability.aggregate,
    })
}

fn node(label: &str, fragment_ids: Vec<String>, children: Vec<AnnotatedNode>) -> AnnotatedNode {
    AnnotatedNode {
        label: label.to_string(),
        fragment_count: fragment_ids.len(),
        fragment_ids,
        children,
    }
}

/// Taxonomy tree with the ids of the fragments under each node, plus an
/// `Uncategorized` branch. Id lists follow the ranked order.
pub fn annotate_taxonomy(taxonomy: &Taxonomy, ranked: &[SolutionFragment]) -> AnnotatedNode {
    let mut by_path: BTreeMap<(String, String), Vec<String>> = BTreeMap::new();
    for f in ranked {
        if let Some(p) = &f.category_path {
            by_path.entry((p.category.clone(), p.subcategory.clone())).or_default().push(f.id.clone());
        }
    }
    let build = |category: &str, subs: Vec<&str>| {
        let children: Vec<AnnotatedNode> = subs
            .iter()
            .map(|s| node(s, by_path.get(&(category.to_string(), s.to_string())).cloned().unwrap_or_default(), vec![]))
            .collect();
        let ids = ranked
            .iter()
            .filter(|f| f.category_path.as_ref().is_some_and(|p| p.category == category))
            .map(|f| f.id.clone())
            .collect();
        node(category, ids, children)
    };
    let mut categories: Vec<AnnotatedNode> = taxonomy
        .categories()
        .iter()
        .map(|c| build(&c.label, c.children.iter().map(|s| s.label.as_str()).collect()))
        .collect();
    categories.push(build(UNCATEGORIZED, vec![UNCATEGORIZED]));
    let all = ranked.iter().map(|f| f.id.clone()).collect();
    node(&taxonomy.root.label, all, categories)
}

/// Bubble rows aggregated by (category, year, entity): patent applicants
/// dated by filing year and validating companies dated by launch year,
/// falling back to the fragment's earliest filing year and then the founding
/// year. Volume counts distinct supporting patents and products.
pub fn player_chart(
    ranked: &[SolutionFragment],
    patents: &BTreeMap<String, PatentDocument>,
    kb: &[CommercialRecord],
) -> Vec<PlayerChartRow> {
    let records: BTreeMap<&str, &CommercialRecord> = kb.iter().map(|r| (r.id.as_str(), r)).collect();
    let mut support: BTreeMap<(String, i32, String), BTreeSet<String>> = BTreeMap::new();
    for f in ranked {
        let Some(path) = &f.category_path else { continue };
        let docs: Vec<&PatentDocument> = f.patent_ids().filter_map(|id| patents.get(id)).collect();
        for doc in &docs {
            for applicant in &doc.applicants {
                support
                    .entry((path.category.clone(), doc.filing_date.year(), applicant.clone()))
                    .or_default()
                    .insert(format!("patent:{}", doc.canonical_id));
            }
        }
        let earliest_filing = docs.iter().map(|d| d.filing_date.year()).min();
        for ev in f.validation.iter().flatten() {
            let Some(r) = records.get(ev.record_id.as_str()) else { continue };
            let Some(year) = r.launch_year.or(earliest_filing).or(r.founding_year) else { continue };
            support
                .entry((path.category.clone(), year, r.company_name.clone()))
                .or_default()
                .insert(format!("record:{}", r.id));
        }
    }
    support
        .into_iter()
        .map(|((category, year, entity_name), items)| PlayerChartRow {
            category,
            year,
            entity_name,
            volume: items.len(),
        })
        .collect()
}

/// Assembles the final output from ranked, fully annotated fragments.
pub fn structure_outputs(
    ranked: &[SolutionFragment],
    taxonomy: &Taxonomy,
    patents: &BTreeMap<String, PatentDocument>,
    kb: &[CommercialRecord],
    run_metadata: RunMetadata,
) -> Result<StructuredOutput> {
    let rows = ranked.iter().map(complete).collect::<Result<Vec<_>>>()?;
    let mut order: Vec<&Complete<'_>> = rows.iter().collect();
    order.sort_by(|a, b| b.rank_score.total_cmp(&a.rank_score).then_with(|| a.frag.id.cmp(&b.frag.id)));

    let mut buckets = Buckets::default();
    let mut solutions = Vec::with_capacity(order.len());
    for c in &order {
        buckets.get_mut(c.key).push(c.frag.id.clone());
        let mut patent_ids: Vec<String> = c.frag.patent_ids().map(str::to_string).collect();
        patent_ids.sort();
        patent_ids.dedup();
        let record_ids = c
            .frag
            .validation
            .iter()
            .flatten()
            .map(|e| e.record_id.clone())
            .collect();
        solutions.push(SolutionSummary {
            id: c.frag.id.clone(),
            description: c.frag.text.clone(),
            category_path: c.path.clone(),
            cluster_id: c.cluster_id,
            relevance: c.relevance,
            sustainability_flag: c.key.sustainability,
            sustainability_aggregate: c.aggregate,
            commercial: c.key.commercial,
            rank_score: c.rank_score,
            patent_ids,
            record_ids,
        });
    }
    let sorted: Vec<SolutionFragment> = order.iter().map(|c| c.frag.clone()).collect();
    Ok(StructuredOutput {
        schema: SCHEMA_VERSION.to_string(),
        buckets,
        taxonomy: annotate_taxonomy(taxonomy, &sorted),
        player_chart: player_chart(&sorted, patents, kb),
        solutions,
        run_metadata,
    })
}
