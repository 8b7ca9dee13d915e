use std::collections::BTreeSet;
use std::path::{Path, PathBuf};
use std::time::Instant;

use chrono::{TimeZone, Utc};
use scout_core::domain::{LinkKind, ProblemStatement, StructuredOutput};
use scout_core::runtime::{from_canonical_slice, Artifact, Phase, Pipeline, RunConfig, RunDirectory};

pub fn fixture_dir() -> PathBuf {
    super::fixture_root()
}

pub fn config() -> RunConfig {
    RunConfig::load(&fixture_dir().join("config.json")).unwrap()
}

pub fn problem() -> ProblemStatement {
    let text = std::fs::read_to_string(fixture_dir().join("problem.txt")).unwrap();
    ProblemStatement::with_id("oil-spill", &text, Utc.with_ymd_and_hms(2026, 1, 1, 0, 0, 0).unwrap()).unwrap()
}

pub fn run_into(root: &Path, run_id: &str, pipeline: &Pipeline) -> (scout_core::runtime::RunOutcome, RunDirectory) {
    let dir = RunDirectory::create(root, run_id).unwrap();
    let outcome = pipeline.run(&problem(), &dir, &|_| {});
    (outcome, dir)
}

/// Two runs of the fixture, plus one on a fresh pipeline, agree byte for
/// byte on every artifact except the run state.
pub fn fixture_runs_are_byte_identical_and_fast() {
    let tmp = tempfile::tempdir().unwrap();
    let pipeline = Pipeline::from_config(config()).unwrap();
    let mut outputs = Vec::new();
    for id in ["first", "second"] {
        let start = Instant::now();
        let (outcome, dir) = run_into(tmp.path(), id, &pipeline);
        assert!(start.elapsed().as_secs_f64() < 10.0);
        assert_eq!(outcome.state.phase, Phase::Complete);
        outputs.push(dir);
    }
    for artifact in Artifact::ALL.into_iter().filter(|a| *a != Artifact::RunState) {
        assert_eq!(outputs[0].read_bytes(artifact).unwrap(), outputs[1].read_bytes(artifact).unwrap(), "{artifact:?}");
    }
    // a freshly built pipeline gives the same bytes as a reused one
    let fresh = Pipeline::from_config(config()).unwrap();
    let (_, third) = run_into(tmp.path(), "third", &fresh);
    assert_eq!(
        outputs[0].read_bytes(Artifact::StructuredOutput).unwrap(),
        third.read_bytes(Artifact::StructuredOutput).unwrap()
    );
}

pub fn artifact_json(dir: &RunDirectory, artifact: Artifact) -> serde_json::Value {
    serde_json::from_slice(&dir.read_bytes(artifact).unwrap()).unwrap()
}

pub fn complete_output() -> (StructuredOutput, serde_json::Value, RunDirectory, tempfile::TempDir) {
    let tmp = tempfile::tempdir().unwrap();
    let pipeline = Pipeline::from_config(config()).unwrap();
    let (outcome, dir) = run_into(tmp.path(), "golden", &pipeline);
    let out = outcome.result.unwrap();
    let fragments = artifact_json(&dir, Artifact::Fragments);
    (out, fragments, dir, tmp)
}

pub fn oil_spill_golden() {
    let (out, fragments, dir, _tmp) = complete_output();
    let materials = out.taxonomy.find("Innovative Materials for Oil Spills").expect("category present");
    let aerogels = materials.children.iter().find(|c| c.label == "Aerogels").unwrap();
    assert!(aerogels.fragment_count >= 1);
    assert_eq!(aerogels.fragment_count, aerogels.fragment_ids.len());

    let retained: Vec<scout_core::domain::SolutionFragment> =
        serde_json::from_value(fragments["retained"].clone()).unwrap();
    let validated_by_active = retained.iter().filter(|f| {
        f.validation.as_deref().unwrap_or_default().iter().any(|e| {
            e.record_id.starts_with("active-aerogel") && e.link_kind == LinkKind::NameMatch && e.link_score == 1.0
        })
    });
    assert!(validated_by_active.count() >= 1);

    // the decoy photoresist patent is retrieved and then curated away
    const DECOY: &str = "US11999000B2";
    let raw = artifact_json(&dir, Artifact::PatentsRaw);
    assert!(raw["documents"].as_array().unwrap().iter().any(|d| d["canonical_id"] == DECOY));
    let curated = artifact_json(&dir, Artifact::PatentsCurated);
    assert!(curated.as_array().unwrap().iter().all(|d| d["canonical_id"] != DECOY));
    assert!(out.run_metadata.stage_counts["patents_curated"] < out.run_metadata.stage_counts["patents_deduplicated"]);
}

pub fn fixture_buckets_partition_retained_fragments() {
    let (out, fragments, _dir, _tmp) = complete_output();
    let retained: BTreeSet<String> = fragments["retained"]
        .as_array()
        .unwrap()
        .iter()
        .map(|f| f["id"].as_str().unwrap().to_string())
        .collect();
    let mut seen = BTreeSet::new();
    for (_, ids) in out.buckets.iter() {
        for id in ids {
            assert!(seen.insert(id.clone()), "{id} in two buckets");
        }
    }
    assert_eq!(seen, retained);
    let solutions: BTreeSet<String> = out.solutions.iter().map(|s| s.id.clone()).collect();
    assert_eq!(solutions, retained);
}

pub fn structured_output_round_trips_canonically() {
    let tmp = tempfile::tempdir().unwrap();
    let pipeline = Pipeline::from_config(config()).unwrap();
    let (_, dir) = run_into(tmp.path(), "rt", &pipeline);
    let bytes = dir.read_bytes(Artifact::StructuredOutput).unwrap();
    let parsed: StructuredOutput = from_canonical_slice(&bytes).unwrap();
    assert_eq!(scout_core::runtime::to_canonical_bytes(&parsed).unwrap(), bytes);
}
