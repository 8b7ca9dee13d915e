use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use serde::Serialize;
use serde_json::{Map, Value};

use crate::json_response;

/// Closed set of error codes returned by the API.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum ErrorCode {
    RunNotFound,
    RunInProgress,
    RunFailed,
    InvalidProblem,
    MalformedBody,
    FragmentNotFound,
    EntityNotFound,
    InternalError,
}

impl ErrorCode {
    pub fn status(self) -> StatusCode {
        match self {
            ErrorCode::RunNotFound | ErrorCode::FragmentNotFound | ErrorCode::EntityNotFound => StatusCode::NOT_FOUND,
            ErrorCode::RunInProgress | ErrorCode::RunFailed => StatusCode::CONFLICT,
            ErrorCode::InvalidProblem | ErrorCode::MalformedBody => StatusCode::BAD_REQUEST,
            ErrorCode::InternalError => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct ApiError {
    pub code: ErrorCode,
    pub message: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub detail: Option<Map<String, Value>>,
}

impl ApiError {
    pub fn new(code: ErrorCode, message: impl Into<String>) -> Self {
        Self {
            code,
            message: message.into(),
            detail: None,
        }
    }

    pub fn with_detail(mut self, key: &str, value: impl Into<Value>) -> Self {
        self.detail.get_or_insert_with(Map::new).insert(key.to_string(), value.into());
        self
    }

    pub fn run_not_found(run_id: &str) -> Self {
        Self::new(ErrorCode::RunNotFound, format!("no run with id {run_id}")).with_detail("run_id", run_id)
    }

    pub fn internal(err: impl std::fmt::Display) -> Self {
        Self::new(ErrorCode::InternalError, err.to_string())
    }
}

impl From<scout_core::Error> for ApiError {
    fn from(e: scout_core::Error) -> Self {
        ApiError::internal(e)
    }
}

#[derive(Serialize)]
struct Envelope<'a> {
    schema: &'static str,
    error: &'a ApiError,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = Envelope {
            schema: scout_core::SCHEMA_VERSION,
            error: &self,
        };
        json_response(self.code.status(), &body)
    }
}
