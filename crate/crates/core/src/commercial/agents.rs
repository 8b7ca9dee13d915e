use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};

use super::web::{header_value, PageKind, WebClient, WebPage};
use crate::domain::{SemanticProblem, SpecEntry};
use crate::error::{Error, Result};

/// Produces a caption for a page's product imagery.
pub trait CaptionProvider: Send + Sync {
    fn caption(&self, page: &WebPage) -> String;
}

/// Always returns an empty caption.
#[derive(Debug, Clone, Copy, Default)]
pub struct StubCaptioner;

impl CaptionProvider for StubCaptioner {
    fn caption(&self, _page: &WebPage) -> String {
        String::new()
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarketEntry {
    pub company_name: String,
    pub snippet: String,
    pub source_ref: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct MarketFindings {
    pub entries: Vec<MarketEntry>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductEntry {
    pub company_name: String,
    pub product_name: String,
    pub description: String,
    pub specs: Vec<SpecEntry>,
    pub caption: String,
    pub source_ref: String,
}

/// A datasheet line that could not be parsed and was skipped.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ParseWarning {
    pub source_ref: String,
    pub line: usize,
    pub message: String,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct ProductFindings {
    pub entries: Vec<ProductEntry>,
    pub warnings: Vec<ParseWarning>,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompetitorEntry {
    pub company_name: String,
    pub related_products: Vec<String>,
    /// `products`, `snippets` and `sources` evidence lists.
    pub enrichment: BTreeMap<String, Vec<String>>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CompetitorFindings {
    pub entries: Vec<CompetitorEntry>,
}

pub(crate) fn fold(name: &str) -> String {
    name.split_whitespace().collect::<Vec<_>>().join(" ").to_lowercase()
}

fn agent_err(agent: &str) -> impl Fn(Error) -> Error + '_ {
    move |e| Error::Agent {
        agent: agent.to_string(),
        cause: e.to_string(),
    }
}

/// Blank-line separated blocks of `(key, value)` pairs; lines without a
/// colon are ignored.
fn blocks(body: &str) -> Vec<Vec<(String, String)>> {
    let mut out = Vec::new();
    let mut current = Vec::new();
    for line in body.lines() {
        if line.trim().is_empty() {
            if !current.is_empty() {
                out.push(std::mem::take(&mut current));
            }
            continue;
        }
        if let Some((k, v)) = line.split_once(':') {
            current.push((k.trim().to_lowercase(), v.trim().to_string()));
        }
    }
    if !current.is_empty() {
        out.push(current);
    }
    out
}

/// Extracts `(company, snippet)` pairs from search-result and company pages
/// found for the problem keywords; first occurrence of each case-folded
/// company name wins.
pub fn run_market_agent(sp: &SemanticProblem, web: &dyn WebClient) -> Result<MarketFindings> {
    let pages = web.search(&sp.keywords).map_err(agent_err("market"))?;
    let mut seen = BTreeSet::new();
    let mut entries = Vec::new();
    for page in pages.iter().filter(|p| p.kind != PageKind::Datasheet) {
        for block in blocks(&page.body) {
            let Some(company) = block.iter().find(|(k, _)| k == "company").map(|(_, v)| v.clone()) else {
                continue;
            };
            if company.is_empty() || !seen.insert(fold(&company)) {
                continue;
            }
            let snippet = block
                .iter()
                .filter(|(k, _)| k == "snippet")
                .map(|(_, v)| v.as_str())
                .collect::<Vec<_>>()
                .join(" ");
            entries.push(MarketEntry {
                company_name: company,
                snippet,
                source_ref: page.url.clone(),
            });
        }
    }
    Ok(MarketFindings { entries })
}

fn parse_datasheet(page: &WebPage, caption: String, warnings: &mut Vec<ParseWarning>) -> Option<ProductEntry> {
    let mut company = None;
    let mut product = None;
    let mut description = String::new();
    let mut specs = Vec::new();
    for (i, line) in page.body.lines().enumerate() {
        if line.trim().is_empty() {
            continue;
        }
        if let Some(v) = header_value(line, "company") {
            company.get_or_insert(v);
            continue;
        }
        if let Some(v) = header_value(line, "product") {
            product.get_or_insert(v);
            continue;
        }
        if let Some(v) = header_value(line, "description") {
            description = v;
            continue;
        }
        match line.split_once(':') {
            Some((k, v)) if !k.trim().is_empty() && !v.trim().is_empty() => specs.push(SpecEntry {
                key: k.trim().to_lowercase(),
                value: v.trim().to_string(),
            }),
            _ => warnings.push(ParseWarning {
                source_ref: page.url.clone(),
                line: i + 1,
                message: format!("expected `key: value`, got {:?}", line.trim()),
            }),
        }
    }
    match (company, product) {
        (Some(company_name), Some(product_name)) => Some(ProductEntry {
            company_name,
            product_name,
            description,
            specs,
            caption,
            source_ref: page.url.clone(),
        }),
        _ => {
            warnings.push(ParseWarning {
                source_ref: page.url.clone(),
                line: 0,
                message: "datasheet lacks company or product header".to_string(),
            });
            None
        }
    }
}

/// Fetches datasheets for every market company plus datasheets hit directly
/// by the keywords, and parses them into product entries (url order).
pub fn run_product_agent(
    sp: &SemanticProblem,
    market: &MarketFindings,
    web: &dyn WebClient,
    captioner: &dyn CaptionProvider,
) -> Result<ProductFindings> {
    let err = agent_err("product");
    let mut pages: BTreeMap<String, WebPage> = BTreeMap::new();
    for entry in &market.entries {
        for p in web.pages_about(&entry.company_name, PageKind::Datasheet).map_err(&err)? {
            pages.entry(p.url.clone()).or_insert(p);
        }
    }
    for p in web.search(&sp.keywords).map_err(&err)? {
        if p.kind == PageKind::Datasheet {
            pages.entry(p.url.clone()).or_insert(p);
        }
    }
    let mut findings = ProductFindings::default();
    for page in pages.values() {
        let caption = captioner.caption(page);
        if let Some(entry) = parse_datasheet(page, caption, &mut findings.warnings) {
            findings.entries.push(entry);
        }
    }
    Ok(findings)
}

/// Union of the companies seen by the market and product agents, each
/// enriched with its products, snippets and sources, ordered by case-folded
/// name.
pub fn run_competitor_agent(
    _sp: &SemanticProblem,
    market: &MarketFindings,
    product: &ProductFindings,
) -> CompetitorFindings {
    let mut by_name: BTreeMap<String, CompetitorEntry> = BTreeMap::new();
    for m in &market.entries {
        let e = entry_for(&mut by_name, &m.company_name);
        push_unique(e.enrichment.entry("snippets".into()).or_default(), &m.snippet);
        push_unique(e.enrichment.entry("sources".into()).or_default(), &m.source_ref);
    }
    for p in &product.entries {
        let e = entry_for(&mut by_name, &p.company_name);
        push_unique(&mut e.related_products, &p.product_name);
        push_unique(e.enrichment.entry("products".into()).or_default(), &p.product_name);
        push_unique(e.enrichment.entry("sources".into()).or_default(), &p.source_ref);
    }
    CompetitorFindings {
        entries: by_name.into_values().collect(),
    }
}

fn entry_for<'a>(by_name: &'a mut BTreeMap<String, CompetitorEntry>, name: &str) -> &'a mut CompetitorEntry {
    by_name.entry(fold(name)).or_insert_with(|| CompetitorEntry {
        company_name: name.trim().to_string(),
        related_products: Vec::new(),
        enrichment: BTreeMap::new(),
    })
}

fn push_unique(list: &mut Vec<String>, value: &str) {
    if !value.is_empty() && !list.iter().any(|v| v == value) {
        list.push(value.to_string());
    }
}
