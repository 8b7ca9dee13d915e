//! Deterministic technology-scouting pipeline.
//!
//! A free-text R&D problem goes in; a curated patent set, a per-run commercial
//! knowledge base and a ranked, sustainability-flagged, four-bucket solution
//! set come out. Every model is a pure function of its inputs and every
//! external dependency (LLM, embeddings, patent offices, the web) sits behind
//! a trait with a deterministic offline implementation.
//!
//! Layers:
//! - [`domain`]: shared value types and result containers.
//! - [`providers`]: embeddings, vector math, synonym graph, LLM capabilities.
//! - [`patent`]: query variants, retrieval, deduplication, entity tagging, curation.
//! - [`commercial`]: market/product/competitor agents and the commercial knowledge base.
//! - [`intelligence`]: fragmentation and the eight solution models.
//! - [`runtime`]: configuration, run lifecycle, canonical artifacts, orchestration.

pub mod commercial;
pub mod domain;
pub mod error;
pub mod intelligence;
pub mod patent;
pub mod providers;
pub mod runtime;

pub use error::{Error, Result};

/// Embedding dimension used across the system.
pub const EMBEDDING_DIM: usize = 256;

/// Version tag written into every persisted artifact and API payload.
pub const SCHEMA_VERSION: &str = "scout.v1";
