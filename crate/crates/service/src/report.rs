use std::fmt::Write as _;
use std::path::Path;

use scout_core::domain::{BucketKey, CommercialFlag, StructuredOutput, SustainabilityFlag};
use scout_core::runtime::{from_canonical_slice, Artifact, Phase, RunDirectory, RunState};

pub const TOP_N: usize = 10;
const BUCKET_PREVIEW: usize = 3;

#[derive(Debug, thiserror::Error)]
pub enum ReportError {
    #[error("run {run_id} failed at stage {stage}: {message}")]
    Failed {
        run_id: String,
        stage: String,
        message: String,
    },
    #[error("run {run_id} has not finished (phase {phase})")]
    Incomplete { run_id: String, phase: &'static str },
    #[error(transparent)]
    Core(#[from] scout_core::Error),
}

fn sustainability_label(flag: SustainabilityFlag) -> &'static str {
    match flag {
        SustainabilityFlag::Sustainable => "Sustainable",
        SustainabilityFlag::Traditional => "Traditional",
    }
}

fn commercial_label(flag: CommercialFlag) -> &'static str {
    match flag {
        CommercialFlag::Commercial => "Commercial",
        CommercialFlag::NonCommercial => "Non-Commercial",
    }
}

/// Human-readable summary of a finished run: the four buckets and the top
/// ranked solutions.
pub fn render_report(run_dir: &Path) -> Result<String, ReportError> {
    let dir = RunDirectory::open(run_dir)?;
    let state: RunState = from_canonical_slice(&dir.read_bytes(Artifact::RunState)?)?;
    match state.phase {
        Phase::Complete => {}
        Phase::Failed => {
            let err = state.error.unwrap_or_else(|| scout_core::runtime::StageError {
                stage: "unknown".into(),
                message: String::new(),
            });
            return Err(ReportError::Failed {
                run_id: state.run_id,
                stage: err.stage,
                message: err.message,
            });
        }
        phase => {
            return Err(ReportError::Incomplete {
                run_id: state.run_id,
                phase: phase.as_str(),
            })
        }
    }
    let out: StructuredOutput = from_canonical_slice(&dir.read_bytes(Artifact::StructuredOutput)?)?;
    Ok(format_output(&state.run_id, &out))
}

pub fn format_output(run_id: &str, out: &StructuredOutput) -> String {
    let mut s = String::new();
    let _ = writeln!(s, "Run {run_id}");
    let _ = writeln!(s, "Config digest {}", out.run_metadata.config_digest);
    let _ = writeln!(s, "Solutions {}", out.solutions.len());
    let _ = writeln!(s);
    let _ = writeln!(s, "{:<30} {:>5}  Fragments", "Bucket", "Count");
    for key in BucketKey::ALL {
        let ids = out.buckets.get(key);
        let mut preview = ids.iter().take(BUCKET_PREVIEW).cloned().collect::<Vec<_>>().join(", ");
        if ids.len() > BUCKET_PREVIEW {
            let _ = write!(preview, ", +{} more", ids.len() - BUCKET_PREVIEW);
        }
        let line = format!("{:<30} {:>5}  {}", key.label(), ids.len(), preview);
        let _ = writeln!(s, "{}", line.trim_end());
    }
    let _ = writeln!(s);
    let _ = writeln!(s, "Top {TOP_N} solutions");
    let _ = writeln!(
        s,
        "{:>3}  {:>6}  {:<14}  {:<14}  {:<60}  Fragment",
        "#", "Score", "Sustainability", "Commercial", "Category / Subcategory"
    );
    for (i, sol) in out.solutions.iter().take(TOP_N).enumerate() {
        let path = format!("{} / {}", sol.category_path.category, sol.category_path.subcategory);
        let _ = writeln!(
            s,
            "{:>3}  {:>6.4}  {:<14}  {:<14}  {:<60}  {}",
            i + 1,
            sol.rank_score,
            sustainability_label(sol.sustainability_flag),
            commercial_label(sol.commercial),
            path,
            sol.id
        );
    }
    s
}
