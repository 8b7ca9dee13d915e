use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

/// A normalized patent record.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PatentDocument {
    pub raw_id: String,
    pub canonical_id: String,
    pub title: String,
    #[serde(rename = "abstract")]
    pub abstract_text: String,
    pub claims: String,
    pub description: String,
    pub inventors: Vec<String>,
    pub applicants: Vec<String>,
    pub filing_date: NaiveDate,
    pub forward_citations: u32,
    pub cited_ids: Vec<String>,
    #[serde(default)]
    pub entity_tags: Vec<EntityTag>,
    pub source: String,
}

impl PatentDocument {
    /// Title and abstract joined by a single space; the text used for
    /// near-duplicate detection and curation.
    pub fn title_abstract(&self) -> String {
        format!("{} {}", self.title, self.abstract_text)
    }

    /// Text of a taggable field. Party fields are synthesized as a `"; "`
    /// separated listing.
    pub fn field_text(&self, field: DocField) -> String {
        match field {
            DocField::Title => self.title.clone(),
            DocField::Abstract => self.abstract_text.clone(),
            DocField::Claims => self.claims.clone(),
            DocField::Inventors => self.inventors.join("; "),
            DocField::Applicants => self.applicants.join("; "),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum EntityCategory {
    Inventor,
    Applicant,
    Material,
    System,
    Method,
}

impl EntityCategory {
    /// Categories that may be supplied through a gazetteer.
    pub fn is_lexical(self) -> bool {
        matches!(self, Self::Material | Self::System | Self::Method)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum DocField {
    Inventors,
    Applicants,
    Title,
    Abstract,
    Claims,
}

/// Half-open character range `[start, end)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Span {
    pub start: usize,
    pub end: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct EntityTag {
    pub field: DocField,
    pub span: Span,
    pub category: EntityCategory,
    pub surface: String,
}

impl EntityTag {
    /// Slices `text` by this tag's character span.
    pub fn slice<'a>(&self, text: &'a str) -> Option<&'a str> {
        let mut indices = text.char_indices().map(|(i, _)| i).chain(std::iter::once(text.len()));
        let start = indices.nth(self.span.start)?;
        let len = self.span.end.checked_sub(self.span.start)?;
        let end = if len == 0 { start } else { indices.nth(len - 1)? };
        text.get(start..end)
    }
}
