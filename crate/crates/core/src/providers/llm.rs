use std::collections::BTreeSet;
use std::sync::OnceLock;

use regex::Regex;
use serde::{Deserialize, Serialize};

use super::embed::Embedder;
use super::synonyms::SynonymGraph;
use super::text::{alphabetic_tokens, collapse_whitespace};
use super::vector::cosine_similarity;
use crate::domain::{PatentDocument, ProblemStatement, SemanticProblem, SpecEntry, Taxonomy};
use crate::error::Result;
use crate::intelligence::fragment::stub_fragment_units;

const STOPWORDS: &str = include_str!("../../data/stopwords.txt");
const COUNTRIES: &str = include_str!("../../data/countries.txt");

const TRIGGER_WORDS: [&str; 4] = ["must", "should", "require", "need"];
const INTENT_MAX_CHARS: usize = 120;
const DOMAIN_MIN_COSINE: f64 = 0.1;
pub const GENERAL_DOMAIN: &str = "general";

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Capability {
    Interpret,
    Variants,
    Fragments,
    Normalize,
}

pub struct InterpretContext<'a> {
    pub embedder: &'a dyn Embedder,
    pub taxonomy: &'a Taxonomy,
}

/// One proposed query reformulation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct VariantProposal {
    pub terms: Vec<String>,
    pub rationale: String,
}

/// Raw agent output for one (company, product) pair, before normalization.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CommercialDraft {
    pub company_name: String,
    pub product_name: Option<String>,
    pub description: String,
    /// Snippets and page text the structured fields are extracted from.
    pub evidence: Vec<String>,
    pub specs: Vec<SpecEntry>,
    /// Upper bound for plausible years is `reference_year + 1`.
    pub reference_year: i32,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct NormalizedCommercial {
    pub company_name: String,
    pub product_name: Option<String>,
    pub description: String,
    pub country: Option<String>,
    pub founding_year: Option<i32>,
    pub funding_status: Option<String>,
    pub launch_year: Option<i32>,
}

/// Language-model capabilities used by the pipeline.
pub trait LlmProvider: Send + Sync {
    fn name(&self) -> &str;

    fn capabilities(&self) -> &[Capability];

    /// Same input, same output.
    fn is_deterministic(&self) -> bool;

    fn is_remote(&self) -> bool {
        false
    }

    fn interpret(&self, problem: &ProblemStatement, ctx: &InterpretContext<'_>) -> Result<SemanticProblem>;

    /// Up to `count` reformulations of the base keyword query (the base query
    /// itself excluded).
    fn variants(&self, sp: &SemanticProblem, count: usize, graph: &SynonymGraph) -> Result<Vec<VariantProposal>>;

    /// Candidate solution-unit texts for one patent.
    fn fragments(&self, doc: &PatentDocument) -> Result<Vec<String>>;

    fn normalize(&self, draft: &CommercialDraft) -> Result<NormalizedCommercial>;
}

/// Rule-based, offline, pure implementation of every capability.
#[derive(Debug, Clone, Copy, Default)]
pub struct StubLlm;

impl LlmProvider for StubLlm {
    fn name(&self) -> &str {
        "stub"
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
        true
    }

    fn interpret(&self, problem: &ProblemStatement, ctx: &InterpretContext<'_>) -> Result<SemanticProblem> {
        stub_interpret(problem, ctx)
    }

    fn variants(&self, sp: &SemanticProblem, count: usize, graph: &SynonymGraph) -> Result<Vec<VariantProposal>> {
        Ok(stub_variants(sp, count, graph))
    }

    fn fragments(&self, doc: &PatentDocument) -> Result<Vec<String>> {
        Ok(stub_fragment_units(doc))
    }

    fn normalize(&self, draft: &CommercialDraft) -> Result<NormalizedCommercial> {
        Ok(stub_normalize(draft))
    }
}

fn stopwords() -> &'static BTreeSet<&'static str> {
    static SET: OnceLock<BTreeSet<&'static str>> = OnceLock::new();
    SET.get_or_init(|| data_lines(STOPWORDS).collect())
}

fn data_lines(text: &'static str) -> impl Iterator<Item = &'static str> {
    text.lines().map(str::trim).filter(|l| !l.is_empty() && !l.starts_with('#'))
}

pub fn is_stopword(word: &str) -> bool {
    stopwords().contains(word)
}

/// Lowercased alphabetic tokens minus stopwords, deduplicated in order of
/// first occurrence.
pub fn extract_keywords(text: &str) -> Vec<String> {
    let mut seen = BTreeSet::new();
    alphabetic_tokens(text)
        .into_iter()
        .filter(|t| !is_stopword(t))
        .filter(|t| seen.insert(t.clone()))
        .collect()
}

/// Splits on `.`, `!` or `?` followed by whitespace or end of text.
pub fn split_problem_sentences(text: &str) -> Vec<String> {
    let chars: Vec<char> = text.chars().collect();
    let mut out = Vec::new();
    let mut current = String::new();
    for (i, &c) in chars.iter().enumerate() {
        current.push(c);
        let at_break = matches!(c, '.' | '!' | '?') && chars.get(i + 1).is_none_or(|n| n.is_whitespace());
        if at_break {
            push_sentence(&mut out, &mut current);
        }
    }
    push_sentence(&mut out, &mut current);
    out
}

fn push_sentence(out: &mut Vec<String>, current: &mut String) {
    let s = current.trim();
    if !s.is_empty() {
        out.push(s.to_string());
    }
    current.clear();
}

pub fn stub_interpret(problem: &ProblemStatement, ctx: &InterpretContext<'_>) -> Result<SemanticProblem> {
    let text = &problem.text;
    let keywords = extract_keywords(text);
    let sentences = split_problem_sentences(text);
    let intent = sentences
        .first()
        .map(|s| s.chars().take(INTENT_MAX_CHARS).collect())
        .unwrap_or_default();
    let functional_requirements = sentences
        .iter()
        .filter(|s| alphabetic_tokens(s).iter().any(|t| TRIGGER_WORDS.contains(&t.as_str())))
        .cloned()
        .collect();
    let embedding = ctx.embedder.embed(text)?;

    let mut domain_context = GENERAL_DOMAIN.to_string();
    if !keywords.is_empty() {
        let mut best = DOMAIN_MIN_COSINE;
        for cat in ctx.taxonomy.categories() {
            let cos = cosine_similarity(&cat.centroid, &embedding)?;
            if cos > best {
                best = cos;
                domain_context = cat.label.clone();
            }
        }
    }

    Ok(SemanticProblem {
        source_id: problem.id.clone(),
        intent,
        keywords,
        functional_requirements,
        domain_context,
        embedding,
    })
}

/// Shortest term, ties broken alphabetically.
fn lowest_information(terms: &[String]) -> Option<usize> {
    terms
        .iter()
        .enumerate()
        .min_by(|(_, a), (_, b)| a.chars().count().cmp(&b.chars().count()).then_with(|| a.cmp(b)))
        .map(|(i, _)| i)
}

fn dedup_terms(terms: impl IntoIterator<Item = String>) -> Vec<String> {
    let mut seen = BTreeSet::new();
    terms.into_iter().filter(|t| !t.is_empty() && seen.insert(t.clone())).collect()
}

/// Cycles three reformulations over a working term list that starts as the
/// keywords: synonym substitution, dropping the lowest-information term
/// (which also shrinks the working list), and appending the domain label.
pub fn stub_variants(sp: &SemanticProblem, count: usize, graph: &SynonymGraph) -> Vec<VariantProposal> {
    let mut working = sp.keywords.clone();
    let mut out = Vec::with_capacity(count);
    for step in 0..count {
        let proposal = match step % 3 {
            0 => VariantProposal {
                terms: dedup_terms(working.iter().map(|t| graph.apply(t).to_lowercase())),
                rationale: "synonym substitution".to_string(),
            },
            1 => {
                if working.len() > 1 {
                    if let Some(i) = lowest_information(&working) {
                        working.remove(i);
                    }
                }
                VariantProposal {
                    terms: working.clone(),
                    rationale: "dropped lowest-information keyword".to_string(),
                }
            }
            _ => VariantProposal {
                terms: dedup_terms(working.iter().cloned().chain([sp.domain_context.to_lowercase()])),
                rationale: "appended domain context".to_string(),
            },
        };
        out.push(proposal);
    }
    out
}

fn title_case(name: &str) -> String {
    collapse_whitespace(name)
        .split(' ')
        .map(|word| {
            let mut chars = word.chars();
            match chars.next() {
                Some(first) => first.to_uppercase().chain(chars.flat_map(char::to_lowercase)).collect(),
                None => String::new(),
            }
        })
        .collect::<Vec<_>>()
        .join(" ")
}

struct Patterns {
    founded: Regex,
    launched: Regex,
    country: Regex,
    funding: Regex,
}

fn patterns() -> &'static Patterns {
    static P: OnceLock<Patterns> = OnceLock::new();
    P.get_or_init(|| {
        let mut countries: Vec<&str> = data_lines(COUNTRIES).collect();
        countries.sort_by_key(|c| std::cmp::Reverse(c.len()));
        let alternation = countries.iter().map(|c| regex::escape(c)).collect::<Vec<_>>().join("|");
        Patterns {
            founded: Regex::new(r"(?i)\b(?:founded in|since)\s+(\d{4})\b").unwrap(),
            launched: Regex::new(r"(?i)\blaunched in\s+(\d{4})\b").unwrap(),
            country: Regex::new(&format!(r"\b(?:in|In)\s+({alternation})\b")).unwrap(),
            funding: Regex::new(
                r"(?i)\b(pre-seed|seed|series [a-f])\s+(?:funding|round|investment)\b|\b(ipo|publicly listed|bootstrapped)\b",
            )
            .unwrap(),
        }
    })
}

fn first_year(re: &Regex, texts: &[String], max_year: i32) -> Option<i32> {
    texts.iter().find_map(|t| {
        re.captures_iter(t)
            .filter_map(|c| c[1].parse::<i32>().ok())
            .find(|y| (1800..=max_year).contains(y))
    })
}

fn canonical_funding(raw: &str) -> String {
    let lower = raw.to_lowercase();
    if lower == "ipo" {
        return "IPO".to_string();
    }
    let sep = if lower.contains('-') { "-" } else { " " };
    lower
        .split(sep)
        .map(|w| if w.chars().count() == 1 { w.to_uppercase() } else { title_case(w) })
        .collect::<Vec<_>>()
        .join(sep)
}

/// Trims and collapses whitespace, title-cases the company name and pulls
/// years, country and funding stage out of the evidence text.
pub fn stub_normalize(draft: &CommercialDraft) -> NormalizedCommercial {
    let p = patterns();
    let max_year = draft.reference_year + 1;
    let mut texts: Vec<String> = draft.evidence.iter().map(|t| collapse_whitespace(t)).collect();
    texts.push(collapse_whitespace(&draft.description));

    let country = texts
        .iter()
        .find_map(|t| p.country.captures(t).map(|c| c[1].to_string()));
    let funding_status = texts.iter().find_map(|t| {
        p.funding
            .captures(t)
            .and_then(|c| c.get(1).or_else(|| c.get(2)))
            .map(|m| canonical_funding(m.as_str()))
    });
    let spec_launch = draft
        .specs
        .iter()
        .find(|s| s.key == "launch year" || s.key == "launched")
        .and_then(|s| s.value.trim().parse::<i32>().ok())
        .filter(|y| (1800..=max_year).contains(y));

    NormalizedCommercial {
        company_name: title_case(&draft.company_name),
        product_name: draft
            .product_name
            .as_deref()
            .map(collapse_whitespace)
            .filter(|p| !p.is_empty()),
        description: collapse_whitespace(&draft.description),
        country,
        founding_year: first_year(&p.founded, &texts, max_year),
        funding_status,
        launch_year: spec_launch.or_else(|| first_year(&p.launched, &texts, max_year)),
    }
}
