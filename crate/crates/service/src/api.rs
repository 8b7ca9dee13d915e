use std::collections::BTreeMap;
use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use axum::body::Bytes;
use axum::extract::{Path as UrlPath, Query, State};
use axum::http::StatusCode;
use axum::response::Response;
use axum::routing::{get, post};
use axum::Router;
use serde::de::DeserializeOwned;
use serde::Deserialize;

use scout_core::domain::{CommercialRecord, PatentDocument, ProblemStatement, SolutionFragment, StructuredOutput};
use scout_core::runtime::{from_canonical_slice, Artifact, Phase, Pipeline, RunDirectory, RunState};
use scout_core::SCHEMA_VERSION;

use crate::error::{ApiError, ErrorCode};
use crate::json_response;
use crate::payload::{solution_card, Accepted, ChartPayload, EntityPayload, EntityProfile, TaxonomyPayload};

type ApiResult<T = Response> = Result<T, ApiError>;

/// Shared service state: one pipeline, one data directory and the registry
/// of known runs.
#[derive(Clone)]
pub struct AppState {
    inner: Arc<Inner>,
}

struct Inner {
    pipeline: Pipeline,
    data_dir: PathBuf,
    runs: Mutex<BTreeMap<String, RunState>>,
}

impl AppState {
    /// Creates `data_dir` if needed and registers the runs already in it.
    /// Runs left unfinished by an earlier process are reported as failed.
    pub fn new(pipeline: Pipeline, data_dir: &Path) -> scout_core::Result<Self> {
        std::fs::create_dir_all(data_dir).map_err(|e| scout_core::Error::Persist {
            path: data_dir.display().to_string(),
            cause: e.to_string(),
        })?;
        let mut runs = BTreeMap::new();
        if let Ok(entries) = std::fs::read_dir(data_dir) {
            for entry in entries.flatten() {
                let path = entry.path().join(Artifact::RunState.file_name());
                let Ok(bytes) = std::fs::read(&path) else { continue };
                let Ok(mut state) = serde_json::from_slice::<RunState>(&bytes) else {
                    tracing::warn!(path = %path.display(), "skipping unreadable run state");
                    continue;
                };
                if !state.phase.is_terminal() {
                    let stage = state.phase.as_str();
                    state.fail(stage, "run interrupted before completion")?;
                }
                runs.insert(state.run_id.clone(), state);
            }
        }
        Ok(Self {
            inner: Arc::new(Inner {
                pipeline,
                data_dir: data_dir.to_path_buf(),
                runs: Mutex::new(runs),
            }),
        })
    }

    pub fn data_dir(&self) -> &Path {
        &self.inner.data_dir
    }

    /// Current state of `run_id`, if known.
    pub fn run_state(&self, run_id: &str) -> Option<RunState> {
        self.inner.runs.lock().expect("registry lock").get(run_id).cloned()
    }

    fn set_state(&self, state: &RunState) {
        self.inner.runs.lock().expect("registry lock").insert(state.run_id.clone(), state.clone());
    }

    fn complete_runs(&self) -> Vec<String> {
        self.inner
            .runs
            .lock()
            .expect("registry lock")
            .values()
            .filter(|s| s.phase == Phase::Complete)
            .map(|s| s.run_id.clone())
            .collect()
    }

    /// Registers a new run and executes it on the blocking pool.
    pub fn submit(&self, problem: ProblemStatement) -> scout_core::Result<String> {
        let run_id = problem.id.clone();
        let dir = RunDirectory::create(&self.inner.data_dir, &run_id)?;
        self.set_state(&RunState::new(&run_id));
        let this = self.clone();
        tokio::task::spawn_blocking(move || {
            let outcome = this.inner.pipeline.run(&problem, &dir, &|s| this.set_state(s));
            match &outcome.result {
                Ok(_) => tracing::info!(run_id = %outcome.state.run_id, "run complete"),
                Err(e) => tracing::warn!(run_id = %outcome.state.run_id, error = %e, "run failed"),
            }
            this.set_state(&outcome.state);
        });
        Ok(run_id)
    }

    fn complete_dir(&self, run_id: &str) -> ApiResult<RunDirectory> {
        let state = self.run_state(run_id).ok_or_else(|| ApiError::run_not_found(run_id))?;
        match state.phase {
            Phase::Complete => Ok(RunDirectory::open(&self.inner.data_dir.join(run_id))?),
            Phase::Failed => {
                let stage = state.error.as_ref().map(|e| e.stage.clone()).unwrap_or_default();
                Err(ApiError::new(ErrorCode::RunFailed, format!("run {run_id} failed at stage {stage}"))
                    .with_detail("run_id", run_id)
                    .with_detail("stage", stage))
            }
            phase => Err(ApiError::new(ErrorCode::RunInProgress, format!("run {run_id} is still running"))
                .with_detail("run_id", run_id)
                .with_detail("phase", phase.as_str())),
        }
    }
}

pub fn router(state: AppState) -> Router {
    Router::new()
        .route("/v1/problems", post(post_problem))
        .route("/v1/runs/{id}", get(get_run))
        .route("/v1/runs/{id}/output", get(get_output))
        .route("/v1/runs/{id}/taxonomy", get(get_taxonomy))
        .route("/v1/runs/{id}/solutions/{fragment_id}", get(get_solution))
        .route("/v1/runs/{id}/chart", get(get_chart))
        .route("/v1/entities/{record_id}", get(get_entity))
        .with_state(state)
}

pub async fn serve(addr: SocketAddr, state: AppState) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    tracing::info!(addr = %listener.local_addr()?, data = %state.data_dir().display(), "serving");
    axum::serve(listener, router(state)).await
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct ProblemRequest {
    text: String,
}

async fn post_problem(State(state): State<AppState>, body: Bytes) -> ApiResult {
    let req: ProblemRequest = serde_json::from_slice(&body)
        .map_err(|e| ApiError::new(ErrorCode::MalformedBody, format!("expected {{\"text\": string}}: {e}")))?;
    let problem = ProblemStatement::new(&req.text).map_err(|e| ApiError::new(ErrorCode::InvalidProblem, e.to_string()))?;
    let run_id = state.submit(problem)?;
    Ok(json_response(StatusCode::ACCEPTED, &Accepted::new(run_id)))
}

async fn get_run(State(state): State<AppState>, UrlPath(id): UrlPath<String>) -> ApiResult {
    let run = state.run_state(&id).ok_or_else(|| ApiError::run_not_found(&id))?;
    Ok(json_response(StatusCode::OK, &run))
}

async fn get_output(State(state): State<AppState>, UrlPath(id): UrlPath<String>) -> ApiResult {
    let dir = state.complete_dir(&id)?;
    let bytes = dir.read_bytes(Artifact::StructuredOutput)?;
    Ok(crate::raw_json(StatusCode::OK, bytes))
}

fn read<T: DeserializeOwned>(dir: &RunDirectory, artifact: Artifact) -> ApiResult<T> {
    Ok(from_canonical_slice(&dir.read_bytes(artifact)?)?)
}

async fn get_taxonomy(State(state): State<AppState>, UrlPath(id): UrlPath<String>) -> ApiResult {
    let dir = state.complete_dir(&id)?;
    let out: StructuredOutput = read(&dir, Artifact::StructuredOutput)?;
    let payload = TaxonomyPayload {
        schema: SCHEMA_VERSION,
        run_id: &id,
        taxonomy: &out.taxonomy,
    };
    Ok(json_response(StatusCode::OK, &payload))
}

async fn get_chart(State(state): State<AppState>, UrlPath(id): UrlPath<String>) -> ApiResult {
    let dir = state.complete_dir(&id)?;
    let out: StructuredOutput = read(&dir, Artifact::StructuredOutput)?;
    let payload = ChartPayload {
        schema: SCHEMA_VERSION,
        run_id: &id,
        rows: &out.player_chart,
    };
    Ok(json_response(StatusCode::OK, &payload))
}

#[derive(Deserialize)]
struct FragmentsFile {
    retained: Vec<SolutionFragment>,
}

#[derive(Deserialize)]
struct CommercialFile {
    records: Vec<CommercialRecord>,
}

fn retained(dir: &RunDirectory) -> ApiResult<Vec<SolutionFragment>> {
    Ok(read::<FragmentsFile>(dir, Artifact::Fragments)?.retained)
}

fn records(dir: &RunDirectory) -> ApiResult<BTreeMap<String, CommercialRecord>> {
    let file: CommercialFile = read(dir, Artifact::CommercialKb)?;
    Ok(file.records.into_iter().map(|r| (r.id.clone(), r)).collect())
}

async fn get_solution(
    State(state): State<AppState>,
    UrlPath((id, fragment_id)): UrlPath<(String, String)>,
) -> ApiResult {
    let dir = state.complete_dir(&id)?;
    let frag = retained(&dir)?
        .into_iter()
        .find(|f| f.id == fragment_id)
        .ok_or_else(|| {
            ApiError::new(ErrorCode::FragmentNotFound, format!("run {id} has no solution {fragment_id}"))
                .with_detail("fragment_id", fragment_id.as_str())
        })?;
    let patents: Vec<PatentDocument> = read(&dir, Artifact::PatentsCurated)?;
    let patents: BTreeMap<String, PatentDocument> = patents.into_iter().map(|p| (p.canonical_id.clone(), p)).collect();
    let card = solution_card(&id, &frag, &patents, &records(&dir)?);
    Ok(json_response(StatusCode::OK, &card))
}

#[derive(Deserialize)]
struct EntityQuery {
    run: Option<String>,
}

/// Looks the record up in `?run=` or, without it, in the complete runs in
/// run id order.
async fn get_entity(
    State(state): State<AppState>,
    UrlPath(record_id): UrlPath<String>,
    Query(q): Query<EntityQuery>,
) -> ApiResult {
    let candidates = match q.run {
        Some(run) => {
            state.complete_dir(&run)?;
            vec![run]
        }
        None => state.complete_runs(),
    };
    for run_id in candidates {
        let dir = state.complete_dir(&run_id)?;
        if let Some(record) = records(&dir)?.get(&record_id) {
            let linked_fragments = retained(&dir)?
                .into_iter()
                .filter(|f| f.validation.iter().flatten().any(|e| e.record_id == record_id))
                .map(|f| f.id)
                .collect();
            let payload = EntityPayload {
                schema: SCHEMA_VERSION,
                run_id,
                record: EntityProfile::from(record),
                linked_fragments,
            };
            return Ok(json_response(StatusCode::OK, &payload));
        }
    }
    Err(ApiError::new(ErrorCode::EntityNotFound, format!("no commercial record {record_id}"))
        .with_detail("record_id", record_id.as_str()))
}
