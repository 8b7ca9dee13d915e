use regex::{Regex, RegexBuilder};
use unicode_normalization::UnicodeNormalization;

use crate::error::{Error, Result};

pub fn nfc(text: &str) -> String {
    text.nfc().collect()
}

/// Maximal runs of alphabetic characters, lowercased.
pub fn alphabetic_tokens(text: &str) -> Vec<String> {
    text.split(|c: char| !c.is_alphabetic())
        .filter(|t| !t.is_empty())
        .map(str::to_lowercase)
        .collect()
}

/// Lowercased words split on runs of non-alphanumeric characters.
pub fn alphanumeric_words(text: &str) -> Vec<String> {
    text.to_lowercase()
        .split(|c: char| !c.is_alphanumeric())
        .filter(|t| !t.is_empty())
        .map(str::to_string)
        .collect()
}

/// Collapses whitespace runs to single spaces and trims.
pub fn collapse_whitespace(text: &str) -> String {
    text.split_whitespace().collect::<Vec<_>>().join(" ")
}

pub(crate) fn byte_to_char_offset(text: &str, byte: usize) -> usize {
    text[..byte].chars().count()
}

/// A non-overlapping term occurrence, in byte offsets.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct TermMatch {
    pub start: usize,
    pub end: usize,
    /// Index of the matched term in the matcher's term list.
    pub term: usize,
}

/// Case-insensitive, word-boundary matcher over a fixed term list.
///
/// All occurrences of all terms are collected (overlaps included), then
/// selected greedily by longer match first, earlier start second, lower term
/// index third, skipping any occurrence that overlaps an already selected one.
#[derive(Debug, Clone)]
pub struct TermMatcher {
    terms: Vec<String>,
    patterns: Vec<Regex>,
}

impl TermMatcher {
    pub fn new<I, S>(terms: I) -> Result<Self>
    where
        I: IntoIterator<Item = S>,
        S: AsRef<str>,
    {
        let mut out = Self {
            terms: Vec::new(),
            patterns: Vec::new(),
        };
        for term in terms {
            let term = nfc(term.as_ref().trim());
            if term.is_empty() {
                return Err(Error::config("empty match term"));
            }
            let pattern = RegexBuilder::new(&regex::escape(&term))
                .case_insensitive(true)
                .build()
                .map_err(|e| Error::config(format!("term {term:?}: {e}")))?;
            out.terms.push(term);
            out.patterns.push(pattern);
        }
        Ok(out)
    }

    pub fn terms(&self) -> &[String] {
        &self.terms
    }

    pub fn is_empty(&self) -> bool {
        self.terms.is_empty()
    }

    /// Selected matches sorted by start offset.
    pub fn find(&self, text: &str) -> Vec<TermMatch> {
        let mut candidates = Vec::new();
        for (term, pattern) in self.patterns.iter().enumerate() {
            let mut from = 0;
            while from <= text.len() {
                let Some(m) = pattern.find_at(text, from) else { break };
                if m.start() < m.end() && at_word_boundary(text, m.start(), m.end()) {
                    candidates.push(TermMatch {
                        start: m.start(),
                        end: m.end(),
                        term,
                    });
                }
                // advance by one character so overlapping occurrences are seen
                from = m.start() + text[m.start()..].chars().next().map_or(1, char::len_utf8);
            }
        }
        candidates.sort_by_key(|m| {
            let chars = text[m.start..m.end].chars().count();
            (std::cmp::Reverse(chars), m.start, m.term)
        });
        let mut selected: Vec<TermMatch> = Vec::new();
        for c in candidates {
            if selected.iter().all(|s| c.end <= s.start || c.start >= s.end) {
                selected.push(c);
            }
        }
        selected.sort_by_key(|m| m.start);
        selected
    }

    pub fn is_match(&self, text: &str) -> bool {
        !self.find(text).is_empty()
    }
}

fn is_word_char(c: char) -> bool {
    c.is_alphanumeric() || c == '_'
}

fn at_word_boundary(text: &str, start: usize, end: usize) -> bool {
    let before = text[..start].chars().next_back();
    let after = text[end..].chars().next();
    let first = text[start..end].chars().next();
    let last = text[start..end].chars().next_back();
    let left_ok = match (before, first) {
        (Some(b), Some(f)) => !(is_word_char(b) && is_word_char(f)),
        _ => true,
    };
    let right_ok = match (last, after) {
        (Some(l), Some(a)) => !(is_word_char(l) && is_word_char(a)),
        _ => true,
    };
    left_ok && right_ok
}
