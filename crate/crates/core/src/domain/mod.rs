//! Shared domain types used by every pipeline stage.

mod commercial;
mod fragment;
mod ids;
mod output;
mod patent;
mod problem;
mod taxonomy;

pub use commercial::{AdoptionSignal, CommercialRecord, LinkKind, SignalKind, SourceAgent, SpecEntry, ValidationEvidence};
pub use fragment::{
    CategoryPath, Provenance, SolutionFragment, SourceKind, SustainabilityFlag, SustainabilityScore,
    UNCATEGORIZED,
};
pub use ids::canonicalize_patent_id;
pub(crate) use ids::slug;
pub use output::{
    AnnotatedNode, BucketKey, Buckets, CommercialFlag, PlayerChartRow, RunMetadata, SolutionSummary,
    StructuredOutput,
};
pub use patent::{DocField, EntityCategory, EntityTag, PatentDocument, Span};
pub use problem::{ProblemStatement, SemanticProblem};
pub use taxonomy::{Taxonomy, TaxonomyConfig, TaxonomyNode};
