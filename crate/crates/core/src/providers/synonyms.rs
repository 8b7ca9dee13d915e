use std::collections::BTreeMap;
use std::path::Path;

use super::text::{nfc, TermMatcher};
use crate::error::{Error, Result};

/// Term → canonical-term substitution map.
///
/// No canonical term may itself be a key, so a single application pass is a
/// fixpoint.
#[derive(Debug, Clone)]
pub struct SynonymGraph {
    map: BTreeMap<String, String>,
    keys: Vec<String>,
    matcher: TermMatcher,
}

impl Default for SynonymGraph {
    fn default() -> Self {
        Self::new(BTreeMap::new()).expect("empty graph is valid")
    }
}

impl SynonymGraph {
    pub fn new(entries: BTreeMap<String, String>) -> Result<Self> {
        let mut map = BTreeMap::new();
        for (k, v) in entries {
            let key = nfc(k.trim()).to_lowercase();
            let value = nfc(v.trim());
            if key.is_empty() || value.is_empty() {
                return Err(Error::config("synonym graph entries must be non-empty"));
            }
            if map.insert(key.clone(), value).is_some() {
                return Err(Error::config(format!("duplicate synonym key {key:?}")));
            }
        }
        if let Some((k, v)) = map.iter().find(|(_, v)| map.contains_key(&v.to_lowercase())) {
            return Err(Error::config(format!(
                "canonical term {v:?} (for {k:?}) is itself a synonym key"
            )));
        }
        let keys: Vec<String> = map.keys().cloned().collect();
        let matcher = TermMatcher::new(&keys)?;
        // a key embedded in a canonical term would break idempotence too
        if let Some(v) = map.values().find(|v| matcher.is_match(v)) {
            return Err(Error::config(format!("canonical term {v:?} contains a synonym key")));
        }
        Ok(Self { map, keys, matcher })
    }

    /// Reads a JSON object of `term: canonical` pairs.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("synonyms {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn from_json_str(text: &str) -> Result<Self> {
        let entries: BTreeMap<String, String> =
            serde_json::from_str(text).map_err(|e| Error::config(format!("synonyms: {e}")))?;
        Self::new(entries)
    }

    pub fn entries(&self) -> &BTreeMap<String, String> {
        &self.map
    }

    pub fn is_empty(&self) -> bool {
        self.map.is_empty()
    }

    /// Replaces every key occurrence (longest match, case-insensitive, whole
    /// words) by its canonical term in one left-to-right pass.
    pub fn apply(&self, text: &str) -> String {
        if self.map.is_empty() {
            return text.to_string();
        }
        let mut out = String::with_capacity(text.len());
        let mut last = 0;
        for m in self.matcher.find(text) {
            out.push_str(&text[last..m.start]);
            out.push_str(&self.map[&self.keys[m.term]]);
            last = m.end;
        }
        out.push_str(&text[last..]);
        out
    }
}

/// Free-function form of [`SynonymGraph::apply`].
pub fn apply_synonym_graph(text: &str, graph: &SynonymGraph) -> String {
    graph.apply(text)
}
