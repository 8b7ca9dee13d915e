use crate::domain::{AdoptionSignal, CommercialRecord, LinkKind, SignalKind, SolutionFragment, ValidationEvidence};
use crate::error::{Error, Result};
use crate::providers::{cosine_similarity, TermMatcher};

pub const DEFAULT_VALIDATION_THRESHOLD: f64 = 0.5;

/// Links fragments to commercial records.
pub struct Validator<'a> {
    kb: &'a [CommercialRecord],
    names: Vec<TermMatcher>,
    tau_val: f64,
}

impl<'a> Validator<'a> {
    pub fn new(kb: &'a [CommercialRecord], tau_val: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&tau_val) {
            return Err(Error::invalid(format!("validation threshold {tau_val} outside [0, 1]")));
        }
        let names = kb
            .iter()
            .map(|r| TermMatcher::new(std::iter::once(&r.company_name).chain(r.product_name.as_ref())))
            .collect::<Result<_>>()?;
        Ok(Self { kb, names, tau_val })
    }

    /// One evidence item per linked record, in knowledge-base order: a name
    /// match when the company or product name occurs in the text, otherwise
    /// a similarity link when the cosine reaches the threshold.
    pub fn validate(&self, frag: &SolutionFragment) -> Result<Vec<ValidationEvidence>> {
        let mut out = Vec::new();
        for (record, names) in self.kb.iter().zip(&self.names) {
            let (link_kind, link_score) = if names.is_match(&frag.text) {
                (LinkKind::NameMatch, 1.0)
            } else {
                let s = cosine_similarity(&frag.embedding, &record.embedding)?;
                if s < self.tau_val {
                    continue;
                }
                (LinkKind::Similarity, s)
            };
            out.push(ValidationEvidence {
                record_id: record.id.clone(),
                link_kind,
                link_score,
                adoption_signals: adoption_signals(record),
            });
        }
        Ok(out)
    }
}

pub fn adoption_signals(record: &CommercialRecord) -> Vec<AdoptionSignal> {
    let mut out = Vec::new();
    if let Some(y) = record.launch_year {
        out.push(AdoptionSignal {
            signal_kind: SignalKind::LaunchYear,
            value: y.to_string(),
        });
    }
    if let Some(f) = &record.funding_status {
        out.push(AdoptionSignal {
            signal_kind: SignalKind::FundingRound,
            value: f.clone(),
        });
    }
    out
}

pub fn validate(frag: &SolutionFragment, kb: &[CommercialRecord], tau_val: f64) -> Result<Vec<ValidationEvidence>> {
    Validator::new(kb, tau_val)?.validate(frag)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::domain::{Provenance, SourceAgent};
    use crate::providers::stub_embed;

    fn record(company: &str, description: &str) -> CommercialRecord {
        CommercialRecord {
            id: crate::domain::slug(company),
            company_name: company.into(),
            country: None,
            founding_year: Some(2015),
            funding_status: Some("Seed".into()),
            product_name: None,
            description: description.into(),
            specs: vec![],
            launch_year: None,
            source_agent: SourceAgent::Market,
            source_refs: vec![],
            embedding: stub_embed(description),
        }
    }

    fn frag(text: &str) -> SolutionFragment {
        SolutionFragment::new("f", text, vec![Provenance::patent("X")], stub_embed(text))
    }

    #[test]
    fn name_match_scores_one() {
        let kb = [record("Active Aerogel", "unrelated words entirely")];
        let ev = validate(&frag("sorbent pads sold by active aerogel for tankers"), &kb, 0.5).unwrap();
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].link_kind, LinkKind::NameMatch);
        assert_eq!(ev[0].link_score, 1.0);
        assert_eq!(
            ev[0].adoption_signals,
            [AdoptionSignal {
                signal_kind: SignalKind::FundingRound,
                value: "Seed".into()
            }]
        );
    }

    #[test]
    fn empty_kb_gives_no_evidence() {
        assert!(validate(&frag("anything at all here"), &[], 0.5).unwrap().is_empty());
    }

    #[test]
    fn max_threshold_keeps_only_exact_embeddings() {
        let text = "aerogel sorbent blanket for marine oil spill response";
        let kb = [record("Acme", text), record("Boomco", "aerogel sorbent blanket for marine oil spills")];
        let ev = validate(&frag(text), &kb, 1.0).unwrap();
        assert_eq!(ev.len(), 1);
        assert_eq!(ev[0].record_id, "acme");
        assert_eq!(ev[0].link_kind, LinkKind::Similarity);
    }
}
