//! Run configuration, lifecycle, canonical artifacts and orchestration.

pub mod canonical;
mod config;
mod persist;
mod pipeline;
mod state;

pub use canonical::{format_float, from_canonical_slice, to_canonical_bytes, to_canonical_string};
pub use config::{FixturePaths, RunConfig, Thresholds, DEFAULT_VARIANT_COUNT};
pub use persist::{check_run_id, Artifact, RunDirectory};
pub use pipeline::{
    empty_lexicon, run_pipeline, CommercialArtifact, FragmentsArtifact, IntakeArtifact, Pipeline, PipelineParts,
    RawPatentsArtifact, RunOutcome,
};
pub use state::{Phase, RunState, StageError};
