//! Patent intelligence: query variants, retrieval, refinement and cleaning.

mod connector;
mod curate;
pub mod dedup;
mod ner;
mod shingle;
mod variants;

pub use connector::{retrieve, FixtureConnector, PatentConnector, PatentRecord};
pub use curate::{curate, retrieval_score, DEFAULT_RETRIEVAL_THRESHOLD};
pub use dedup::{deduplicate, DedupParams, DedupReport, ExactMerge, NearMerge};
pub use ner::{tag_entities, Gazetteer};
pub use shingle::{jaccard, word_shingles};
pub use variants::{generate_query_variants, QuerySpec};
