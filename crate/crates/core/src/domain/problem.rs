use chrono::{DateTime, Utc};
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::providers::{nfc, Vector};

/// Free-text problem as submitted by a researcher.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProblemStatement {
    pub id: String,
    pub text: String,
    pub submitted_at: DateTime<Utc>,
}

impl ProblemStatement {
    /// Creates a statement with a fresh random id, stamped now.
    pub fn new(text: &str) -> Result<Self> {
        Self::with_id(uuid::Uuid::new_v4().to_string(), text, Utc::now())
    }

    pub fn with_id(id: impl Into<String>, text: &str, submitted_at: DateTime<Utc>) -> Result<Self> {
        let text = nfc(text.trim());
        if text.is_empty() {
            return Err(Error::invalid("problem text is empty"));
        }
        Ok(Self {
            id: id.into(),
            text,
            submitted_at,
        })
    }
}

/// Machine-readable interpretation of a problem statement.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SemanticProblem {
    pub source_id: String,
    pub intent: String,
    pub keywords: Vec<String>,
    pub functional_requirements: Vec<String>,
    pub domain_context: String,
    pub embedding: Vector,
}
