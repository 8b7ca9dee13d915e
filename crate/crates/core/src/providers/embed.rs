use super::text::nfc;
use super::vector::Vector;
use crate::error::Result;
use crate::EMBEDDING_DIM;

/// Text → vector. Implementations must be deterministic per input and return
/// unit vectors for non-empty text.
pub trait Embedder: Send + Sync {
    fn name(&self) -> &str;

    fn dimension(&self) -> usize {
        EMBEDDING_DIM
    }

    fn embed(&self, text: &str) -> Result<Vector>;

    /// Whether calls leave the process.
    fn is_remote(&self) -> bool {
        false
    }
}

const FNV_OFFSET: u64 = 14695981039346656037;
const FNV_PRIME: u64 = 1099511628211;

fn fnv1a64(bytes: &[u8]) -> u64 {
    bytes
        .iter()
        .fold(FNV_OFFSET, |h, b| (h ^ u64::from(*b)).wrapping_mul(FNV_PRIME))
}

/// Hashed character-trigram embedding.
///
/// The text is NFC-normalized and lowercased; each character trigram is
/// hashed with FNV-1a 64 over its UTF-8 bytes and counted in bucket
/// `hash % 256`; the counts are L2-normalized. Fewer than three characters
/// gives the zero vector.
pub fn stub_embed(text: &str) -> Vector {
    let chars: Vec<char> = nfc(text).to_lowercase().chars().collect();
    let mut counts = vec![0.0f64; EMBEDDING_DIM];
    if chars.len() < 3 {
        return Vector::zeros(EMBEDDING_DIM);
    }
    let mut buf = [0u8; 12];
    for window in chars.windows(3) {
        let mut len = 0;
        for c in window {
            len += c.encode_utf8(&mut buf[len..]).len();
        }
        counts[(fnv1a64(&buf[..len]) % EMBEDDING_DIM as u64) as usize] += 1.0;
    }
    Vector::new(counts).expect("counts are finite").normalized()
}

#[derive(Debug, Clone, Copy, Default)]
pub struct StubEmbedder;

impl Embedder for StubEmbedder {
    fn name(&self) -> &str {
        "stub"
    }

    fn embed(&self, text: &str) -> Result<Vector> {
        Ok(stub_embed(text))
    }
}
