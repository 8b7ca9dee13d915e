use std::path::{Path, PathBuf};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};
use sha2::{Digest, Sha256};

use super::canonical::to_canonical_bytes;
use crate::error::{Error, Result};
use crate::intelligence::{
    KMeansParams, KPolicy, RankWeights, TrlPolicy, DEFAULT_CATEGORY_THRESHOLD, DEFAULT_MIN_FRAGMENT_LEN,
    DEFAULT_RELEVANCE_THRESHOLD, DEFAULT_VALIDATION_THRESHOLD,
};
use crate::patent::{DedupParams, DEFAULT_RETRIEVAL_THRESHOLD};
use crate::providers::ProviderSelection;

pub const DEFAULT_VARIANT_COUNT: usize = 8;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct Thresholds {
    pub retrieval: f64,
    pub relevance: f64,
    pub category: f64,
    pub validation: f64,
}

impl Default for Thresholds {
    fn default() -> Self {
        Self {
            retrieval: DEFAULT_RETRIEVAL_THRESHOLD,
            relevance: DEFAULT_RELEVANCE_THRESHOLD,
            category: DEFAULT_CATEGORY_THRESHOLD,
            validation: DEFAULT_VALIDATION_THRESHOLD,
        }
    }
}

/// Input files of a fixture-backed run. Relative paths resolve against the
/// directory of the config file they were read from.
#[derive(Debug, Clone, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct FixturePaths {
    pub corpus: Option<PathBuf>,
    pub web_fixtures: Option<PathBuf>,
    pub taxonomy: Option<PathBuf>,
    pub gazetteer: Option<PathBuf>,
    pub lexicon: Option<PathBuf>,
    pub synonyms: Option<PathBuf>,
}

impl FixturePaths {
    fn resolve(&mut self, base: &Path) {
        for p in [
            &mut self.corpus,
            &mut self.web_fixtures,
            &mut self.taxonomy,
            &mut self.gazetteer,
            &mut self.lexicon,
            &mut self.synonyms,
        ]
        .into_iter()
        .flatten()
        {
            if p.is_relative() {
                *p = base.join(&*p);
            }
        }
    }
}

fn default_reference_date() -> NaiveDate {
    NaiveDate::from_ymd_opt(2026, 1, 1).expect("valid date")
}

/// Everything that determines a run besides the problem text and fixtures.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(default, deny_unknown_fields)]
pub struct RunConfig {
    pub seed: u64,
    /// The "today" used for patent age and year plausibility.
    pub reference_date: NaiveDate,
    pub thresholds: Thresholds,
    pub weights: RankWeights,
    pub trl: TrlPolicy,
    pub dedup: DedupParams,
    pub variant_count: usize,
    pub min_fragment_len: usize,
    pub kmeans: KMeansParams,
    pub k_policy: KPolicy,
    pub providers: ProviderSelection,
    pub paths: FixturePaths,
}

impl Default for RunConfig {
    fn default() -> Self {
        Self {
            seed: 0,
            reference_date: default_reference_date(),
            thresholds: Thresholds::default(),
            weights: RankWeights::default(),
            trl: TrlPolicy::default(),
            dedup: DedupParams::default(),
            variant_count: DEFAULT_VARIANT_COUNT,
            min_fragment_len: DEFAULT_MIN_FRAGMENT_LEN,
            kmeans: KMeansParams::default(),
            k_policy: KPolicy::default(),
            providers: ProviderSelection::default(),
            paths: FixturePaths::default(),
        }
    }
}

impl RunConfig {
    pub fn from_json_str(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::config(format!("run config: {e}")))?;
        cfg.validate()?;
        Ok(cfg)
    }

    /// Reads a JSON config; relative fixture paths resolve against its directory.
    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::config(format!("run config {}: {e}", path.display())))?;
        let mut cfg = Self::from_json_str(&text)?;
        cfg.paths.resolve(path.parent().unwrap_or(Path::new(".")));
        Ok(cfg)
    }

    pub fn validate(&self) -> Result<()> {
        let t = &self.thresholds;
        for (name, v) in [
            ("retrieval", t.retrieval),
            ("relevance", t.relevance),
            ("category", t.category),
            ("validation", t.validation),
            ("dedup jaccard", self.dedup.jaccard_threshold),
        ] {
            if !(0.0..=1.0).contains(&v) {
                return Err(Error::config(format!("{name} threshold {v} outside [0, 1]")));
            }
        }
        if self.variant_count < 1 {
            return Err(Error::config("variant_count must be at least 1"));
        }
        if self.kmeans.max_iter < 1 || self.kmeans.tol.is_nan() || self.kmeans.tol <= 0.0 {
            return Err(Error::config("kmeans needs max_iter >= 1 and tol > 0"));
        }
        if self.trl.launched > 9 || self.trl.validated > 9 || self.trl.unvalidated > 9 {
            return Err(Error::config("TRL levels must lie in 0..=9"));
        }
        Ok(())
    }

    /// Hex sha256 of the canonical config without its fixture paths, so
    /// moving fixtures does not change the digest.
    pub fn digest(&self) -> Result<String> {
        let mut v = serde_json::to_value(self).map_err(|e| Error::Serialization(e.to_string()))?;
        if let Some(map) = v.as_object_mut() {
            map.remove("paths");
        }
        let bytes = to_canonical_bytes(&v)?;
        Ok(Sha256::digest(&bytes).iter().map(|b| format!("{b:02x}")).collect())
    }
}
