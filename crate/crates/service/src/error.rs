use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use graphlet_core::analytics::AnalyticsError;
use graphlet_core::census::CensusError;
use graphlet_core::graph::GraphError;
use serde_json::{json, Value};

/// Error body: `{"code", "message", "detail"}`.
#[derive(Debug)]
pub struct ApiError {
    pub status: StatusCode,
    pub code: &'static str,
    pub message: String,
    pub detail: Value,
}

impl ApiError {
    pub fn new(status: StatusCode, code: &'static str, message: impl Into<String>) -> Self {
        ApiError { status, code, message: message.into(), detail: Value::Null }
    }

    pub fn with_detail(mut self, detail: Value) -> Self {
        self.detail = detail;
        self
    }

    pub fn not_found(id: &str) -> Self {
        Self::new(StatusCode::NOT_FOUND, "not_found", format!("no graph with id {id:?}"))
    }

    pub fn unprocessable(message: impl Into<String>) -> Self {
        Self::new(StatusCode::UNPROCESSABLE_ENTITY, "invalid_request", message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        Self::new(StatusCode::INTERNAL_SERVER_ERROR, "internal", message)
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = json!({ "code": self.code, "message": self.message, "detail": self.detail });
        (self.status, Json(body)).into_response()
    }
}

impl From<GraphError> for ApiError {
    fn from(e: GraphError) -> Self {
        let detail = match &e {
            GraphError::Parse { line, .. } => json!({ "line": line }),
            _ => Value::Null,
        };
        ApiError::new(StatusCode::BAD_REQUEST, "parse_error", e.to_string()).with_detail(detail)
    }
}

impl From<CensusError> for ApiError {
    fn from(e: CensusError) -> Self {
        ApiError::new(StatusCode::INTERNAL_SERVER_ERROR, "consistency", e.to_string())
    }
}

impl From<AnalyticsError> for ApiError {
    fn from(e: AnalyticsError) -> Self {
        match e {
            AnalyticsError::Census(c) => c.into(),
            AnalyticsError::Graph(g) => g.into(),
            other => ApiError::unprocessable(other.to_string()),
        }
    }
}
