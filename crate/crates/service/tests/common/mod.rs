#![allow(dead_code)]

use std::path::{Path, PathBuf};
use std::time::Duration;

use axum::body::Body;
use axum::http::{Method, Request, StatusCode};
use axum::Router;
use http_body_util::BodyExt;
use scout_core::runtime::{Phase, Pipeline, RunConfig, RunState};
use scout_service::{router, AppState};
use tower::ServiceExt;

pub fn fixture_dir() -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("../core/fixtures/oil_spill")
}

pub fn fixture_config() -> RunConfig {
    RunConfig::load(&fixture_dir().join("config.json")).unwrap()
}

pub fn problem_text() -> String {
    std::fs::read_to_string(fixture_dir().join("problem.txt")).unwrap()
}

pub fn app(data: &Path) -> Router {
    let pipeline = Pipeline::from_config(fixture_config()).unwrap();
    router(AppState::new(pipeline, data).unwrap())
}

pub async fn request(app: &Router, method: Method, uri: &str, body: Option<&str>) -> (StatusCode, Vec<u8>) {
    let req = Request::builder()
        .method(method)
        .uri(uri)
        .header("content-type", "application/json")
        .body(body.map(|b| Body::from(b.to_string())).unwrap_or_else(Body::empty))
        .unwrap();
    let resp = app.clone().oneshot(req).await.unwrap();
    let status = resp.status();
    let bytes = resp.into_body().collect().await.unwrap().to_bytes().to_vec();
    (status, bytes)
}

pub async fn get(app: &Router, uri: &str) -> (StatusCode, serde_json::Value) {
    let (status, bytes) = request(app, Method::GET, uri, None).await;
    (status, serde_json::from_slice(&bytes).unwrap())
}

pub async fn submit(app: &Router, text: &str) -> String {
    let body = serde_json::json!({ "text": text }).to_string();
    let (status, bytes) = request(app, Method::POST, "/v1/problems", Some(&body)).await;
    assert_eq!(status, StatusCode::ACCEPTED);
    let v: serde_json::Value = serde_json::from_slice(&bytes).unwrap();
    assert_eq!(v["schema"], scout_core::SCHEMA_VERSION);
    v["run_id"].as_str().unwrap().to_string()
}

/// Polls the run until it reaches a terminal phase.
pub async fn wait(app: &Router, run_id: &str) -> RunState {
    for _ in 0..600 {
        let (status, bytes) = request(app, Method::GET, &format!("/v1/runs/{run_id}"), None).await;
        assert_eq!(status, StatusCode::OK);
        let state: RunState = serde_json::from_slice(&bytes).unwrap();
        if state.phase.is_terminal() {
            return state;
        }
        tokio::time::sleep(Duration::from_millis(50)).await;
    }
    panic!("run {run_id} did not finish");
}

pub fn is_complete(state: &RunState) -> bool {
    state.phase == Phase::Complete
}
