use crate::domain::{CommercialRecord, PatentDocument, Provenance, SolutionFragment};
use crate::error::Result;
use crate::providers::{collapse_whitespace, Embedder, LlmProvider, Vector};

/// Default minimum fragment length in characters.
pub const DEFAULT_MIN_FRAGMENT_LEN: usize = 40;

const WINDOW: usize = 3;
const STEP: usize = 2;

const ABBREVIATIONS: [&str; 12] = [
    "e.g.", "i.e.", "etc.", "fig.", "figs.", "no.", "approx.", "wt.", "vol.", "vs.", "al.", "ca.",
];

fn ends_with_abbreviation(sentence: &str) -> bool {
    let last = sentence.split_whitespace().last().unwrap_or("").to_lowercase();
    ABBREVIATIONS.iter().any(|a| last.ends_with(a) && {
        let head = &last[..last.len() - a.len()];
        head.is_empty() || !head.chars().last().is_some_and(char::is_alphanumeric)
    })
}

/// Splits on `.`, `;` or `!` followed by whitespace or end of text, except
/// after a listed abbreviation.
pub fn split_sentences(text: &str) -> Vec<String> {
    let mut out = Vec::new();
    let mut current = String::new();
    let mut chars = text.chars().peekable();
    while let Some(c) = chars.next() {
        current.push(c);
        if matches!(c, '.' | ';' | '!') && chars.peek().is_none_or(|n| n.is_whitespace()) {
            if c == '.' && ends_with_abbreviation(&current) {
                continue;
            }
            let s = collapse_whitespace(&current);
            if !s.is_empty() {
                out.push(s);
            }
            current.clear();
        }
    }
    let s = collapse_whitespace(&current);
    if !s.is_empty() {
        out.push(s);
    }
    out
}

/// Windows of three sentences overlapping by one; the last window may be
/// shorter.
pub fn sentence_windows(sentences: &[String]) -> Vec<String> {
    let mut out = Vec::new();
    let mut start = 0;
    while start < sentences.len() {
        let end = (start + WINDOW).min(sentences.len());
        out.push(sentences[start..end].join(" "));
        if end == sentences.len() {
            break;
        }
        start += STEP;
    }
    out
}

/// Candidate solution units of a document: sentence windows over claims
/// followed by description.
pub fn stub_fragment_units(doc: &PatentDocument) -> Vec<String> {
    let mut sentences = split_sentences(&doc.claims);
    sentences.extend(split_sentences(&doc.description));
    sentence_windows(&sentences)
}

/// Fragments every document through the provider's `fragments` capability,
/// dropping units shorter than `min_len` characters. Ids are
/// `frag-<canonical id>-<n>` with `n` counting kept units.
pub fn fragment_solutions(
    docs: &[PatentDocument],
    llm: &dyn LlmProvider,
    embedder: &dyn Embedder,
    min_len: usize,
) -> Result<Vec<SolutionFragment>> {
    let mut out = Vec::new();
    for doc in docs {
        let mut n = 0;
        for unit in llm.fragments(doc)? {
            let unit = collapse_whitespace(&unit);
            if unit.chars().count() < min_len {
                continue;
            }
            n += 1;
            let embedding = embedder.embed(&unit)?;
            out.push(SolutionFragment::new(
                format!("frag-{}-{n}", doc.canonical_id),
                unit,
                vec![Provenance::patent(&doc.canonical_id)],
                embedding,
            ));
        }
    }
    Ok(out)
}

/// One fragment per record description long enough to stand alone, id
/// `cfrag-<record id>`.
pub fn commercial_fragments(
    records: &[CommercialRecord],
    embedder: &dyn Embedder,
    min_len: usize,
) -> Result<Vec<SolutionFragment>> {
    let mut out = Vec::new();
    for r in records {
        let text = collapse_whitespace(&r.description);
        if text.chars().count() < min_len {
            continue;
        }
        let embedding: Vector = embedder.embed(&text)?;
        out.push(SolutionFragment::new(
            format!("cfrag-{}", r.id),
            text,
            vec![Provenance::commercial(&r.id)],
            embedding,
        ));
    }
    Ok(out)
}
