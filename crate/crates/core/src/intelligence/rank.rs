use std::collections::{BTreeMap, BTreeSet};

use chrono::NaiveDate;
use serde::{Deserialize, Serialize};

use crate::domain::{PatentDocument, SignalKind, SolutionFragment};
use crate::error::{Error, Result};

const DECAY_YEARS: f64 = 10.0;
const DAYS_PER_YEAR: f64 = 365.25;
/// Novelty of a fragment with no patent provenance.
pub const NEUTRAL_NOVELTY: f64 = 0.5;

/// 0.5 * exp(-age_years / 10) + 0.5 / (1 + forward_citations).
pub fn novelty_score(doc: &PatentDocument, now: NaiveDate) -> Result<f64> {
    novelty_from(doc.filing_date, doc.forward_citations, now)
}

pub fn novelty_from(filing_date: NaiveDate, forward_citations: u32, now: NaiveDate) -> Result<f64> {
    if filing_date > now {
        return Err(Error::invalid(format!("filing date {filing_date} is after {now}")));
    }
    let age_years = (now - filing_date).num_days() as f64 / DAYS_PER_YEAR;
    Ok(novelty_for_age(age_years, forward_citations))
}

/// Novelty for an age given in (possibly fractional) years; ages are days / 365.25.
pub fn novelty_for_age(age_years: f64, forward_citations: u32) -> f64 {
    let recency = (-age_years / DECAY_YEARS).exp();
    let sparsity = 1.0 / (1.0 + forward_citations as f64);
    0.5 * recency + 0.5 * sparsity
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawWeights")]
pub struct RankWeights {
    w_novelty: f64,
    w_readiness: f64,
    w_adaptability: f64,
}

#[derive(Deserialize)]
struct RawWeights {
    w_novelty: f64,
    w_readiness: f64,
    w_adaptability: f64,
}

impl TryFrom<RawWeights> for RankWeights {
    type Error = Error;

    fn try_from(r: RawWeights) -> Result<Self> {
        RankWeights::new(r.w_novelty, r.w_readiness, r.w_adaptability)
    }
}

impl Default for RankWeights {
    fn default() -> Self {
        Self {
            w_novelty: 0.4,
            w_readiness: 0.4,
            w_adaptability: 0.2,
        }
    }
}

impl RankWeights {
    /// Weights must be finite, non-negative and not all zero.
    pub fn new(w_novelty: f64, w_readiness: f64, w_adaptability: f64) -> Result<Self> {
        let ws = [w_novelty, w_readiness, w_adaptability];
        if ws.iter().any(|w| !w.is_finite() || *w < 0.0) || ws.iter().sum::<f64>() <= 0.0 {
            return Err(Error::config(format!("rank weights {ws:?} must be >= 0 and not all zero")));
        }
        Ok(Self {
            w_novelty,
            w_readiness,
            w_adaptability,
        })
    }

    pub fn w_novelty(&self) -> f64 {
        self.w_novelty
    }

    pub fn w_readiness(&self) -> f64 {
        self.w_readiness
    }

    pub fn w_adaptability(&self) -> f64 {
        self.w_adaptability
    }

    pub fn scaled(&self, c: f64) -> Result<Self> {
        Self::new(self.w_novelty * c, self.w_readiness * c, self.w_adaptability * c)
    }

    /// Normalized weighted sum.
    pub fn combine(&self, novelty: f64, readiness: f64, adaptability: f64) -> f64 {
        let total = self.w_novelty + self.w_readiness + self.w_adaptability;
        (self.w_novelty / total) * novelty + (self.w_readiness / total) * readiness + (self.w_adaptability / total) * adaptability
    }
}

/// Technology readiness levels assigned from validation evidence.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(default)]
pub struct TrlPolicy {
    pub launched: u8,
    pub validated: u8,
    pub unvalidated: u8,
}

impl Default for TrlPolicy {
    fn default() -> Self {
        Self {
            launched: 9,
            validated: 7,
            unvalidated: 3,
        }
    }
}

impl TrlPolicy {
    pub fn trl(&self, frag: &SolutionFragment) -> u8 {
        let evidence = frag.validation.as_deref().unwrap_or_default();
        if evidence.is_empty() {
            self.unvalidated
        } else if evidence
            .iter()
            .any(|e| e.adoption_signals.iter().any(|s| s.signal_kind == SignalKind::LaunchYear))
        {
            self.launched
        } else {
            self.validated
        }
    }

    pub fn readiness(&self, frag: &SolutionFragment) -> f64 {
        f64::from(self.trl(frag)) / 9.0
    }
}

/// Category diversity of each cluster among `frags`, as
/// (distinct categories - 1) / (total categories - 1) in [0, 1].
/// Uncategorized fragments do not count towards diversity.
pub fn cluster_adaptability(frags: &[SolutionFragment], total_categories: usize) -> BTreeMap<usize, f64> {
    let mut seen: BTreeMap<usize, BTreeSet<&str>> = BTreeMap::new();
    for f in frags {
        let Some(c) = f.cluster_id else { continue };
        let cats = seen.entry(c).or_default();
        if let Some(p) = f.category_path.as_ref().filter(|p| !p.is_uncategorized()) {
            cats.insert(&p.category);
        }
    }
    seen.into_iter()
        .map(|(c, cats)| {
            let a = if total_categories <= 1 {
                0.0
            } else {
                ((cats.len() as f64 - 1.0) / (total_categories as f64 - 1.0)).clamp(0.0, 1.0)
            };
            (c, a)
        })
        .collect()
}

/// Ranking inputs that do not live on the fragments.
pub struct RankContext<'a> {
    pub patents: &'a BTreeMap<String, PatentDocument>,
    pub now: NaiveDate,
    pub total_categories: usize,
    pub weights: RankWeights,
    pub trl: TrlPolicy,
}

pub fn fragment_novelty(frag: &SolutionFragment, ctx: &RankContext<'_>) -> Result<f64> {
    let mut best: Option<f64> = None;
    for id in frag.patent_ids() {
        if let Some(doc) = ctx.patents.get(id) {
            let n = novelty_score(doc, ctx.now)?;
            best = Some(best.map_or(n, |b| b.max(n)));
        }
    }
    Ok(best.unwrap_or(NEUTRAL_NOVELTY))
}

/// Scores every fragment and sorts by score descending, fragment id
/// ascending.
pub fn rank(mut frags: Vec<SolutionFragment>, ctx: &RankContext<'_>) -> Result<Vec<SolutionFragment>> {
    let adaptability = cluster_adaptability(&frags, ctx.total_categories);
    for f in &mut frags {
        let novelty = fragment_novelty(f, ctx)?;
        let readiness = ctx.trl.readiness(f);
        let adapt = f.cluster_id.and_then(|c| adaptability.get(&c).copied()).unwrap_or(0.0);
        f.rank_score = Some(ctx.weights.combine(novelty, readiness, adapt).clamp(0.0, 1.0));
    }
    sort_ranked(&mut frags);
    Ok(frags)
}

pub fn sort_ranked(frags: &mut [SolutionFragment]) {
    frags.sort_by(|a, b| {
        let (sa, sb) = (a.rank_score.unwrap_or(0.0), b.rank_score.unwrap_or(0.0));
        sb.total_cmp(&sa).then_with(|| a.id.cmp(&b.id))
    });
}
