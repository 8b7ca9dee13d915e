//! Pluggable embeddings, vector math, synonym handling and LLM capabilities,
//! plus the deterministic offline implementations used by default.

mod embed;
pub mod http;
pub mod llm;
mod synonyms;
mod text;
mod vector;

use std::sync::Arc;

use serde::{Deserialize, Serialize};

pub use embed::{stub_embed, Embedder, StubEmbedder};
pub use http::{remote_call_count, HttpEmbedder, HttpLlm};
pub use llm::{
    Capability, CommercialDraft, InterpretContext, LlmProvider, NormalizedCommercial, StubLlm, VariantProposal,
};
pub use synonyms::{apply_synonym_graph, SynonymGraph};
pub use text::{alphabetic_tokens, alphanumeric_words, collapse_whitespace, nfc, TermMatch, TermMatcher};
pub(crate) use text::byte_to_char_offset;
pub use vector::{cosine_similarity, Vector};

use crate::error::{Error, Result};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProviderKind {
    #[default]
    Stub,
    Http,
}

impl std::str::FromStr for ProviderKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.trim().to_ascii_lowercase().as_str() {
            "stub" => Ok(Self::Stub),
            "http" => Ok(Self::Http),
            other => Err(Error::config(format!("unknown provider {other:?} (expected stub or http)"))),
        }
    }
}

/// Which providers a run uses.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct ProviderSelection {
    pub llm: ProviderKind,
    pub embed: ProviderKind,
    pub endpoint: Option<String>,
    /// Never serialized into artifacts.
    #[serde(skip)]
    pub api_key: Option<String>,
}

impl ProviderSelection {
    /// Applies `SCOUT_LLM_PROVIDER`, `SCOUT_EMBED_PROVIDER`,
    /// `SCOUT_LLM_ENDPOINT` and `SCOUT_LLM_API_KEY` on top of `self`.
    pub fn with_env(mut self) -> Result<Self> {
        self.apply_vars(|k| std::env::var(k).ok())?;
        Ok(self)
    }

    pub(crate) fn apply_vars(&mut self, get: impl Fn(&str) -> Option<String>) -> Result<()> {
        if let Some(v) = get("SCOUT_LLM_PROVIDER") {
            self.llm = v.parse()?;
        }
        if let Some(v) = get("SCOUT_EMBED_PROVIDER") {
            self.embed = v.parse()?;
        }
        if let Some(v) = get("SCOUT_LLM_ENDPOINT") {
            self.endpoint = Some(v);
        }
        if let Some(v) = get("SCOUT_LLM_API_KEY") {
            self.api_key = Some(v);
        }
        Ok(())
    }

    fn endpoint(&self) -> Result<&str> {
        self.endpoint
            .as_deref()
            .ok_or_else(|| Error::config("http provider selected but SCOUT_LLM_ENDPOINT is unset"))
    }

    pub fn build_llm(&self) -> Result<Arc<dyn LlmProvider>> {
        Ok(match self.llm {
            ProviderKind::Stub => Arc::new(StubLlm),
            ProviderKind::Http => Arc::new(HttpLlm::new(self.endpoint()?, self.api_key.clone())?),
        })
    }

    pub fn build_embedder(&self) -> Result<Arc<dyn Embedder>> {
        Ok(match self.embed {
            ProviderKind::Stub => Arc::new(StubEmbedder),
            ProviderKind::Http => Arc::new(HttpEmbedder::new(self.endpoint()?, self.api_key.clone())?),
        })
    }
}
