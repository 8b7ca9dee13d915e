//! Remote providers speaking the `scout.llm.v1` JSON wire contract.
//!
//! Every request is a POST of
//! `{"schema": "scout.llm.v1", "capability": <name>, "input": <object>}` and
//! every response must echo the schema and capability and carry `"output"`.
//! Per-capability payloads are listed in `docs/llm-wire.md`.

use std::sync::atomic::{AtomicU64, Ordering};
use std::time::Duration;

use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use super::embed::Embedder;
use super::llm::{Capability, CommercialDraft, InterpretContext, LlmProvider, NormalizedCommercial, VariantProposal};
use super::synonyms::SynonymGraph;
use super::vector::Vector;
use crate::domain::{PatentDocument, ProblemStatement, SemanticProblem};
use crate::error::{Error, Result};

pub const WIRE_SCHEMA: &str = "scout.llm.v1";

static REMOTE_CALLS: AtomicU64 = AtomicU64::new(0);

/// Number of outbound provider requests attempted by this process.
pub fn remote_call_count() -> u64 {
    REMOTE_CALLS.load(Ordering::SeqCst)
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WireRequest {
    pub schema: String,
    pub capability: String,
    pub input: Value,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct WireResponse {
    pub schema: String,
    pub capability: String,
    pub output: Value,
}

impl WireRequest {
    pub fn new(capability: &str, input: Value) -> Self {
        Self {
            schema: WIRE_SCHEMA.to_string(),
            capability: capability.to_string(),
            input,
        }
    }
}

/// Checks the envelope and decodes `output`.
pub fn decode_response<T: DeserializeOwned>(capability: &str, body: &str) -> Result<T> {
    let provider_err = |cause: String| Error::Provider {
        provider: "http".to_string(),
        cause,
    };
    let resp: WireResponse = serde_json::from_str(body).map_err(|e| provider_err(format!("bad envelope: {e}")))?;
    if resp.schema != WIRE_SCHEMA {
        return Err(provider_err(format!("unsupported schema {:?}", resp.schema)));
    }
    if resp.capability != capability {
        return Err(provider_err(format!(
            "capability mismatch: asked {capability}, got {}",
            resp.capability
        )));
    }
    serde_json::from_value(resp.output).map_err(|e| provider_err(format!("bad {capability} output: {e}")))
}

#[derive(Debug, Clone)]
struct HttpTransport {
    endpoint: String,
    api_key: Option<String>,
    client: reqwest::blocking::Client,
}

impl HttpTransport {
    fn new(endpoint: &str, api_key: Option<String>) -> Result<Self> {
        let client = reqwest::blocking::Client::builder()
            .timeout(Duration::from_secs(120))
            .build()
            .map_err(|e| Error::Provider {
                provider: "http".into(),
                cause: e.to_string(),
            })?;
        Ok(Self {
            endpoint: endpoint.to_string(),
            api_key,
            client,
        })
    }

    fn call<T: DeserializeOwned>(&self, capability: &str, input: Value) -> Result<T> {
        REMOTE_CALLS.fetch_add(1, Ordering::SeqCst);
        let mut req = self.client.post(&self.endpoint).json(&WireRequest::new(capability, input));
        if let Some(key) = &self.api_key {
            req = req.bearer_auth(key);
        }
        let err = |cause: String| Error::Provider {
            provider: format!("http:{}", self.endpoint),
            cause,
        };
        let resp = req.send().map_err(|e| err(e.to_string()))?;
        let status = resp.status();
        let body = resp.text().map_err(|e| err(e.to_string()))?;
        if !status.is_success() {
            return Err(err(format!("{capability}: HTTP {status}: {body}")));
        }
        decode_response(capability, &body)
    }
}

#[derive(Debug, Deserialize)]
struct InterpretOutput {
    intent: String,
    keywords: Vec<String>,
    functional_requirements: Vec<String>,
    domain_context: String,
}

#[derive(Debug, Deserialize)]
struct VariantsOutput {
    variants: Vec<VariantProposal>,
}

#[derive(Debug, Deserialize)]
struct FragmentsOutput {
    fragments: Vec<String>,
}

#[derive(Debug, Deserialize)]
struct EmbedOutput {
    vector: Vec<f64>,
}

/// LLM reached over HTTP. Never deterministic.
#[derive(Debug, Clone)]
pub struct HttpLlm {
    transport: HttpTransport,
}

impl HttpLlm {
    pub fn new(endpoint: &str, api_key: Option<String>) -> Result<Self> {
        Ok(Self {
            transport: HttpTransport::new(endpoint, api_key)?,
        })
    }
}

/// Builds the `input` object of an `interpret` request.
pub fn interpret_input(problem: &ProblemStatement, ctx: &InterpretContext<'_>) -> Value {
    let categories: Vec<&str> = ctx.taxonomy.categories().iter().map(|c| c.label.as_str()).collect();
    json!({ "problem": problem, "categories": categories })
}

impl LlmProvider for HttpLlm {
    fn name(&self) -> &str {
        "http"
    }

    fn capabilities(&self) -> &[Capability] {
        &[
            Capability::Interpret,
            Capability::Variants,
            Capability::Fragments,
            Capability::Normalize,
        ]
    }

    fn is_deterministic(&self) -> bool {
        false
    }

    fn is_remote(&self) -> bool {
        true
    }

    fn interpret(&self, problem: &ProblemStatement, ctx: &InterpretContext<'_>) -> Result<SemanticProblem> {
        let out: InterpretOutput = self.transport.call("interpret", interpret_input(problem, ctx))?;
        Ok(SemanticProblem {
            source_id: problem.id.clone(),
            intent: out.intent,
            keywords: out.keywords.into_iter().map(|k| k.to_lowercase()).collect(),
            functional_requirements: out.functional_requirements,
            domain_context: out.domain_context,
            embedding: ctx.embedder.embed(&problem.text)?,
        })
    }

    fn variants(&self, sp: &SemanticProblem, count: usize, graph: &SynonymGraph) -> Result<Vec<VariantProposal>> {
        let input = json!({
            "keywords": sp.keywords,
            "domain_context": sp.domain_context,
            "count": count,
            "synonyms": graph.entries(),
        });
        let out: VariantsOutput = self.transport.call("variants", input)?;
        Ok(out.variants)
    }

    fn fragments(&self, doc: &PatentDocument) -> Result<Vec<String>> {
        let out: FragmentsOutput = self.transport.call("fragments", json!({ "patent": doc }))?;
        Ok(out.fragments)
    }

    fn normalize(&self, draft: &CommercialDraft) -> Result<NormalizedCommercial> {
        let input = serde_json::to_value(draft).map_err(|e| Error::Serialization(e.to_string()))?;
        self.transport.call("normalize", input)
    }
}

#[derive(Debug, Clone)]
pub struct HttpEmbedder {
    transport: HttpTransport,
}

impl HttpEmbedder {
    pub fn new(endpoint: &str, api_key: Option<String>) -> Result<Self> {
        Ok(Self {
            transport: HttpTransport::new(endpoint, api_key)?,
        })
    }
}

impl Embedder for HttpEmbedder {
    fn name(&self) -> &str {
        "http"
    }

    fn is_remote(&self) -> bool {
        true
    }

    fn embed(&self, text: &str) -> Result<Vector> {
        let out: EmbedOutput = self.transport.call("embed", json!({ "text": text }))?;
        if out.vector.len() != self.dimension() {
            return Err(Error::Dimension {
                left: self.dimension(),
                right: out.vector.len(),
            });
        }
        Ok(Vector::new(out.vector)?.normalized())
    }
}
