//! HTTP API, batch CLI helpers and run reports for the scouting pipeline.

pub mod api;
pub mod error;
pub mod payload;
pub mod report;

use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use serde::Serialize;

pub use api::{router, serve, AppState};
pub use error::{ApiError, ErrorCode};

/// Canonical JSON body with the given status.
pub fn json_response<T: Serialize + ?Sized>(status: StatusCode, value: &T) -> Response {
    match scout_core::runtime::to_canonical_bytes(value) {
        Ok(bytes) => raw_json(status, bytes),
        Err(e) => (StatusCode::INTERNAL_SERVER_ERROR, e.to_string()).into_response(),
    }
}

pub fn raw_json(status: StatusCode, bytes: Vec<u8>) -> Response {
    (status, [(header::CONTENT_TYPE, "application/json; charset=utf-8")], bytes).into_response()
}
