use std::io::ErrorKind;
use std::path::{Path, PathBuf};

use serde::Serialize;

use super::canonical::to_canonical_bytes;
use crate::error::{Error, Result};

/// Artifacts written into a run directory, in pipeline order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum Artifact {
    Config,
    SemanticProblem,
    PatentsRaw,
    PatentsCurated,
    DedupReport,
    CommercialKb,
    Fragments,
    Clusters,
    StructuredOutput,
    RunState,
}

impl Artifact {
    pub const ALL: [Artifact; 10] = [
        Artifact::Config,
        Artifact::SemanticProblem,
        Artifact::PatentsRaw,
        Artifact::PatentsCurated,
        Artifact::DedupReport,
        Artifact::CommercialKb,
        Artifact::Fragments,
        Artifact::Clusters,
        Artifact::StructuredOutput,
        Artifact::RunState,
    ];

    pub fn file_name(&self) -> &'static str {
        match self {
            Artifact::Config => "config.json",
            Artifact::SemanticProblem => "semantic_problem.json",
            Artifact::PatentsRaw => "patents_raw.json",
            Artifact::PatentsCurated => "patents_curated.json",
            Artifact::DedupReport => "dedup_report.json",
            Artifact::CommercialKb => "commercial_kb.json",
            Artifact::Fragments => "fragments.json",
            Artifact::Clusters => "clusters.json",
            Artifact::StructuredOutput => "structured_output.json",
            Artifact::RunState => "run_state.json",
        }
    }
}

fn persist_err(path: &Path, e: impl std::fmt::Display) -> Error {
    Error::Persist {
        path: path.display().to_string(),
        cause: e.to_string(),
    }
}

/// Rejects ids that could escape the runs root.
pub fn check_run_id(run_id: &str) -> Result<()> {
    let ok = !run_id.is_empty()
        && run_id.len() <= 128
        && run_id.chars().all(|c| c.is_ascii_alphanumeric() || matches!(c, '-' | '_' | '.'))
        && !run_id.starts_with('.');
    if ok {
        Ok(())
    } else {
        Err(Error::invalid(format!("run id {run_id:?} must be 1-128 chars of [A-Za-z0-9._-], not starting with '.'")))
    }
}

/// One run's output directory; created once, written by a single writer.
#[derive(Debug, Clone)]
pub struct RunDirectory {
    path: PathBuf,
}

impl RunDirectory {
    /// Creates `root/run_id`; an existing directory is a [`Error::RunIdConflict`].
    pub fn create(root: &Path, run_id: &str) -> Result<Self> {
        check_run_id(run_id)?;
        std::fs::create_dir_all(root).map_err(|e| persist_err(root, e))?;
        let path = root.join(run_id);
        match std::fs::create_dir(&path) {
            Ok(()) => Ok(Self { path }),
            Err(e) if e.kind() == ErrorKind::AlreadyExists => Err(Error::RunIdConflict(run_id.to_string())),
            Err(e) => Err(persist_err(&path, e)),
        }
    }

    /// Opens an existing run directory for reading.
    pub fn open(path: &Path) -> Result<Self> {
        if !path.is_dir() {
            return Err(persist_err(path, "not a run directory"));
        }
        Ok(Self { path: path.to_path_buf() })
    }

    pub fn path(&self) -> &Path {
        &self.path
    }

    pub fn artifact_path(&self, artifact: Artifact) -> PathBuf {
        self.path.join(artifact.file_name())
    }

    /// Writes canonically via a temporary file and rename.
    pub fn write<T: Serialize + ?Sized>(&self, artifact: Artifact, value: &T) -> Result<()> {
        let bytes = to_canonical_bytes(value)?;
        let target = self.artifact_path(artifact);
        let tmp = self.path.join(format!(".{}.tmp", artifact.file_name()));
        std::fs::write(&tmp, &bytes).map_err(|e| persist_err(&tmp, e))?;
        std::fs::rename(&tmp, &target).map_err(|e| persist_err(&target, e))
    }

    pub fn read_bytes(&self, artifact: Artifact) -> Result<Vec<u8>> {
        let p = self.artifact_path(artifact);
        std::fs::read(&p).map_err(|e| persist_err(&p, e))
    }

    pub fn exists(&self, artifact: Artifact) -> bool {
        self.artifact_path(artifact).is_file()
    }
}
