use std::collections::{BTreeMap, BTreeSet};
use std::path::Path;

use crate::domain::{DocField, EntityCategory, EntityTag, PatentDocument, Span};
use crate::error::{Error, Result};
use crate::providers::{byte_to_char_offset, TermMatcher};

const LEXICAL_FIELDS: [DocField; 3] = [DocField::Title, DocField::Abstract, DocField::Claims];

/// Term lists for the lexical entity categories.
#[derive(Debug, Clone)]
pub struct Gazetteer {
    entries: BTreeMap<EntityCategory, Vec<String>>,
    matcher: TermMatcher,
    term_category: Vec<EntityCategory>,
}

impl Default for Gazetteer {
    fn default() -> Self {
        Self::new(BTreeMap::new()).expect("empty gazetteer is valid")
    }
}

impl Gazetteer {
    /// A term listed under several categories keeps the first one in
    /// MATERIAL, SYSTEM, METHOD order.
    pub fn new(entries: BTreeMap<EntityCategory, Vec<String>>) -> Result<Self> {
        if let Some(bad) = entries.keys().find(|c| !c.is_lexical()) {
            return Err(Error::config(format!("gazetteer category {bad:?} is not lexical")));
        }
        let mut seen = BTreeSet::new();
        let mut terms = Vec::new();
        let mut term_category = Vec::new();
        for (cat, list) in &entries {
            for term in list {
                let key = term.trim().to_lowercase();
                if seen.insert(key) {
                    terms.push(term.clone());
                    term_category.push(*cat);
                }
            }
        }
        Ok(Self {
            matcher: TermMatcher::new(&terms)?,
            entries,
            term_category,
        })
    }

    /// JSON object mapping `MATERIAL` / `SYSTEM` / `METHOD` to term arrays.
    pub fn from_json_str(text: &str) -> Result<Self> {
        let entries: BTreeMap<EntityCategory, Vec<String>> =
            serde_json::from_str(text).map_err(|e| Error::config(format!("gazetteer: {e}")))?;
        Self::new(entries)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("gazetteer {}: {e}", path.display())))?;
        Self::from_json_str(&text)
    }

    pub fn entries(&self) -> &BTreeMap<EntityCategory, Vec<String>> {
        &self.entries
    }
}

/// Tags parties from the structured inventor/applicant lists and lexical
/// entities from title, abstract and claims. Spans are character offsets
/// into [`PatentDocument::field_text`]. Output is sorted by field then span.
pub fn tag_entities(doc: &PatentDocument, gazetteer: &Gazetteer) -> Vec<EntityTag> {
    let mut tags = Vec::new();
    for (field, names, category) in [
        (DocField::Inventors, &doc.inventors, EntityCategory::Inventor),
        (DocField::Applicants, &doc.applicants, EntityCategory::Applicant),
    ] {
        let mut offset = 0;
        for (i, name) in names.iter().enumerate() {
            if i > 0 {
                offset += 2; // "; "
            }
            let len = name.chars().count();
            if len > 0 {
                tags.push(EntityTag {
                    field,
                    span: Span {
                        start: offset,
                        end: offset + len,
                    },
                    category,
                    surface: name.clone(),
                });
            }
            offset += len;
        }
    }
    if !gazetteer.matcher.is_empty() {
        for field in LEXICAL_FIELDS {
            let text = doc.field_text(field);
            for m in gazetteer.matcher.find(&text) {
                tags.push(EntityTag {
                    field,
                    span: Span {
                        start: byte_to_char_offset(&text, m.start),
                        end: byte_to_char_offset(&text, m.end),
                    },
                    category: gazetteer.term_category[m.term],
                    surface: text[m.start..m.end].to_string(),
                });
            }
        }
    }
    tags.sort();
    tags
}
