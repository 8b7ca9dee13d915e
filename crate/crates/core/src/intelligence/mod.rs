//! Core intelligence: fragmentation followed by integration, clustering,
//! filtering, categorization, sustainability scoring, validation, ranking
//! and structuring.

mod categorize;
mod cluster;
pub mod fragment;
mod filter;
mod integrate;
mod kmeans;
mod rank;
mod structure;
mod sustainability;
mod validate;

pub use categorize::{categorize, categorize_all, DEFAULT_CATEGORY_THRESHOLD};
pub use cluster::{cluster_fragments, FragmentClusters, KPolicy};
pub use filter::{filter_fragments, filter_with, CosineThreshold, RelevanceClassifier, DEFAULT_RELEVANCE_THRESHOLD};
pub use fragment::{
    commercial_fragments, fragment_solutions, sentence_windows, split_sentences, stub_fragment_units,
    DEFAULT_MIN_FRAGMENT_LEN,
};
pub use integrate::{integrate, merge_components, MERGE_THRESHOLD};
pub use kmeans::{default_k, kmeans, ClusterResult, KMeansParams, DEFAULT_MAX_ITER, DEFAULT_TOL};
pub use rank::{
    cluster_adaptability, fragment_novelty, novelty_for_age, novelty_from, novelty_score, rank, sort_ranked, RankContext, RankWeights,
    TrlPolicy, NEUTRAL_NOVELTY,
};
pub use structure::{annotate_taxonomy, player_chart, structure_outputs};
pub use sustainability::{score_sustainability, CriterionTerms, SustainabilityLexicon, CRITERIA};
pub use validate::{adoption_signals, validate, Validator, DEFAULT_VALIDATION_THRESHOLD};
