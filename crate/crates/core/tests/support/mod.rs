#![allow(dead_code)]

pub mod dedup;
pub mod filter;
pub mod kmeans;
pub mod ranking;
pub mod novelty;
pub mod sustainability;
pub mod ner;
pub mod pipeline;
pub mod partition;

/// The oil-spill fixture, found from either the core or the service crate.
pub fn fixture_root() -> std::path::PathBuf {
    let manifest = std::path::Path::new(env!("CARGO_MANIFEST_DIR"));
    let own = manifest.join("fixtures/oil_spill");
    if own.is_dir() {
        own
    } else {
        manifest.join("../core/fixtures/oil_spill")
    }
}
