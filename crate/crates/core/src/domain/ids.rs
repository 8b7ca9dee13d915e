use crate::error::{Error, Result};

/// Normalizes a patent number as retrieved into its canonical form: ASCII
/// letters and digits only, uppercased.
pub fn canonicalize_patent_id(raw: &str) -> Result<String> {
    let canonical: String = raw
        .chars()
        .filter(char::is_ascii_alphanumeric)
        .map(|c| c.to_ascii_uppercase())
        .collect();
    if canonical.is_empty() {
        return Err(Error::InvalidId(raw.to_string()));
    }
    Ok(canonical)
}

/// Lowercase ASCII slug used for deterministic record ids.
pub(crate) fn slug(text: &str) -> String {
    let mut out = String::with_capacity(text.len());
    let mut dash = false;
    for c in text.chars().flat_map(char::to_lowercase) {
        if c.is_ascii_alphanumeric() {
            out.push(c);
            dash = false;
        } else if !dash && !out.is_empty() {
            out.push('-');
            dash = true;
        }
    }
    while out.ends_with('-') {
        out.pop();
    }
    out
}
