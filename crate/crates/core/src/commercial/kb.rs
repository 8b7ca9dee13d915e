use std::collections::BTreeMap;

use super::agents::{fold, CompetitorFindings, MarketFindings, ProductEntry, ProductFindings};
use crate::domain::{slug, CommercialRecord, SourceAgent};
use crate::error::{Error, Result};
use crate::providers::{CommercialDraft, Embedder, LlmProvider};

/// Merges the three agents' findings into normalized, embedded records.
///
/// Every (company, product) pair becomes one record with id
/// `slug(company)--slug(product)`; a company with no product becomes one
/// record with id `slug(company)`. Records are sorted by id.
pub fn build_commercial_kb(
    market: &MarketFindings,
    product: &ProductFindings,
    competitor: &CompetitorFindings,
    llm: &dyn LlmProvider,
    embedder: &dyn Embedder,
    reference_year: i32,
) -> Result<Vec<CommercialRecord>> {
    let mut snippets: BTreeMap<String, Vec<String>> = BTreeMap::new();
    let mut market_refs: BTreeMap<String, Vec<String>> = BTreeMap::new();
    for m in &market.entries {
        if !m.snippet.is_empty() {
            snippets.entry(fold(&m.company_name)).or_default().push(m.snippet.clone());
        }
        market_refs.entry(fold(&m.company_name)).or_default().push(m.source_ref.clone());
    }
    let mut products: BTreeMap<String, Vec<&ProductEntry>> = BTreeMap::new();
    for p in &product.entries {
        products.entry(fold(&p.company_name)).or_default().push(p);
    }

    let mut records: BTreeMap<String, CommercialRecord> = BTreeMap::new();
    for company in &competitor.entries {
        let key = fold(&company.company_name);
        let company_snippets = snippets.get(&key).cloned().unwrap_or_default();
        let company_refs = market_refs.get(&key).cloned().unwrap_or_default();
        let company_products = products.get(&key).cloned().unwrap_or_default();

        let mut drafts = Vec::new();
        if company_products.is_empty() {
            let draft = CommercialDraft {
                company_name: company.company_name.clone(),
                product_name: None,
                description: company_snippets.join(" "),
                evidence: company_snippets.clone(),
                specs: vec![],
                reference_year,
            };
            let agent = if company_refs.is_empty() {
                SourceAgent::Competitor
            } else {
                SourceAgent::Market
            };
            drafts.push((draft, agent, company_refs.clone()));
        }
        for p in company_products {
            let mut evidence = company_snippets.clone();
            evidence.push(p.description.clone());
            evidence.extend(p.specs.iter().map(|s| format!("{}: {}", s.key, s.value)));
            if !p.caption.is_empty() {
                evidence.push(p.caption.clone());
            }
            let description = if p.description.is_empty() {
                company_snippets.join(" ")
            } else {
                p.description.clone()
            };
            let mut refs = company_refs.clone();
            refs.push(p.source_ref.clone());
            let draft = CommercialDraft {
                company_name: p.company_name.clone(),
                product_name: Some(p.product_name.clone()),
                description,
                evidence,
                specs: p.specs.clone(),
                reference_year,
            };
            drafts.push((draft, SourceAgent::Product, refs));
        }

        for (draft, source_agent, mut source_refs) in drafts {
            let n = llm.normalize(&draft)?;
            let id = match &n.product_name {
                Some(p) => format!("{}--{}", slug(&n.company_name), slug(p)),
                None => slug(&n.company_name),
            };
            if id.is_empty() || id.starts_with("--") {
                return Err(Error::invalid(format!("company name {:?} yields an empty id", draft.company_name)));
            }
            let embed_text = if n.description.is_empty() {
                format!("{} {}", n.company_name, n.product_name.as_deref().unwrap_or(""))
            } else {
                n.description.clone()
            };
            source_refs.sort();
            source_refs.dedup();
            let record = CommercialRecord {
                embedding: embedder.embed(&embed_text)?,
                id: id.clone(),
                company_name: n.company_name,
                country: n.country,
                founding_year: n.founding_year,
                funding_status: n.funding_status,
                product_name: n.product_name,
                description: n.description,
                specs: draft.specs,
                launch_year: n.launch_year,
                source_agent,
                source_refs,
            };
            // Two products slugging to the same id keep the first in url order.
            records.entry(id).or_insert(record);
        }
    }
    Ok(records.into_values().collect())
}
