use std::collections::BTreeMap;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::SCHEMA_VERSION;

#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Phase {
    Pending,
    Intake,
    Patent,
    Commercial,
    Intelligence,
    Complete,
    Failed,
}

impl Phase {
    pub fn as_str(&self) -> &'static str {
        match self {
            Phase::Pending => "pending",
            Phase::Intake => "intake",
            Phase::Patent => "patent",
            Phase::Commercial => "commercial",
            Phase::Intelligence => "intelligence",
            Phase::Complete => "complete",
            Phase::Failed => "failed",
        }
    }

    pub fn is_terminal(&self) -> bool {
        matches!(self, Phase::Complete | Phase::Failed)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct StageError {
    pub stage: String,
    pub message: String,
}

/// Lifecycle of one run. Phases only move forward; `failed` is terminal and
/// always carries an error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunState {
    pub schema: String,
    pub run_id: String,
    pub phase: Phase,
    /// Wall-clock milliseconds per finished phase.
    pub timings_ms: BTreeMap<String, f64>,
    pub error: Option<StageError>,
}

impl RunState {
    pub fn new(run_id: impl Into<String>) -> Self {
        Self {
            schema: SCHEMA_VERSION.to_string(),
            run_id: run_id.into(),
            phase: Phase::Pending,
            timings_ms: BTreeMap::new(),
            error: None,
        }
    }

    pub fn advance(&mut self, next: Phase) -> Result<()> {
        if next == Phase::Failed || self.phase.is_terminal() || next <= self.phase {
            return Err(Error::PipelineInvariant(format!(
                "illegal phase transition {} -> {}",
                self.phase.as_str(),
                next.as_str()
            )));
        }
        self.phase = next;
        Ok(())
    }

    pub fn fail(&mut self, stage: impl Into<String>, message: impl Into<String>) -> Result<()> {
        if self.phase.is_terminal() {
            return Err(Error::PipelineInvariant(format!("cannot fail a {} run", self.phase.as_str())));
        }
        self.phase = Phase::Failed;
        self.error = Some(StageError {
            stage: stage.into(),
            message: message.into(),
        });
        Ok(())
    }

    pub fn record_timing(&mut self, phase: Phase, ms: f64) {
        self.timings_ms.insert(phase.as_str().to_string(), ms);
    }
}
