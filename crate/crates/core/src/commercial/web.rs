use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::providers::nfc;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PageKind {
    SearchResult,
    Company,
    Datasheet,
}

/// One fixture page: `{"url": ..., "kind": ..., "body": ...}`.
///
/// Bodies are `key: value` lines. Search-result pages hold blank-line
/// separated blocks with `company:` and `snippet:` lines; company pages hold
/// one such block; datasheets carry `company:`, `product:`, an optional
/// `description:` and free-form specification lines.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct WebPage {
    pub url: String,
    pub kind: PageKind,
    pub body: String,
}

impl WebPage {
    /// Value of the first `company:` line.
    pub fn company(&self) -> Option<String> {
        self.body.lines().find_map(|l| header_value(l, "company"))
    }
}

pub(crate) fn header_value(line: &str, key: &str) -> Option<String> {
    let (k, v) = line.split_once(':')?;
    (k.trim().eq_ignore_ascii_case(key) && !v.trim().is_empty()).then(|| v.trim().to_string())
}

/// Access to web content for the commercial agents.
pub trait WebClient: Send + Sync {
    fn name(&self) -> &str;

    /// Pages mentioning any of the terms.
    fn search(&self, terms: &[String]) -> Result<Vec<WebPage>>;

    /// Pages of `kind` whose `company:` header names `company` (case-folded).
    fn pages_about(&self, company: &str, kind: PageKind) -> Result<Vec<WebPage>>;

    fn is_remote(&self) -> bool {
        false
    }
}

/// Deterministic client over a directory of `*.json` page files. Results are
/// ordered by url.
#[derive(Debug, Clone, Default)]
pub struct FixtureWebClient {
    pages: Vec<WebPage>,
}

impl FixtureWebClient {
    pub fn new(mut pages: Vec<WebPage>) -> Self {
        for p in &mut pages {
            p.body = nfc(&p.body);
        }
        pages.sort_by(|a, b| a.url.cmp(&b.url));
        Self { pages }
    }

    pub fn load(dir: &Path) -> Result<Self> {
        let read_err = |e: std::io::Error| Error::config(format!("web fixtures {}: {e}", dir.display()));
        let mut pages = Vec::new();
        let mut paths: Vec<_> = std::fs::read_dir(dir)
            .map_err(read_err)?
            .filter_map(|e| e.ok().map(|e| e.path()))
            .filter(|p| p.extension().is_some_and(|x| x == "json"))
            .collect();
        paths.sort();
        for path in paths {
            let text = std::fs::read_to_string(&path).map_err(read_err)?;
            let page: WebPage = serde_json::from_str(&text)
                .map_err(|e| Error::config(format!("web page {}: {e}", path.display())))?;
            pages.push(page);
        }
        Ok(Self::new(pages))
    }

    pub fn pages(&self) -> &[WebPage] {
        &self.pages
    }
}

impl WebClient for FixtureWebClient {
    fn name(&self) -> &str {
        "fixture"
    }

    fn search(&self, terms: &[String]) -> Result<Vec<WebPage>> {
        let needles: Vec<String> = terms.iter().map(|t| t.to_lowercase()).filter(|t| !t.is_empty()).collect();
        Ok(self
            .pages
            .iter()
            .filter(|p| {
                let body = p.body.to_lowercase();
                needles.iter().any(|n| body.contains(n.as_str()))
            })
            .cloned()
            .collect())
    }

    fn pages_about(&self, company: &str, kind: PageKind) -> Result<Vec<WebPage>> {
        let wanted = company.trim().to_lowercase();
        Ok(self
            .pages
            .iter()
            .filter(|p| p.kind == kind && p.company().is_some_and(|c| c.to_lowercase() == wanted))
            .cloned()
            .collect())
    }
}
