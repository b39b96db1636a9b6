use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::Json;
use serde::{Deserialize, Serialize};
use thiserror::Error;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ApiErrorCode {
    NotFound,
    StaleBatch,
    InvalidInput,
    Conflict,
    Internal,
}

impl ApiErrorCode {
    pub fn status(self) -> StatusCode {
        match self {
            ApiErrorCode::NotFound => StatusCode::NOT_FOUND,
            ApiErrorCode::StaleBatch | ApiErrorCode::Conflict => StatusCode::CONFLICT,
            ApiErrorCode::InvalidInput => StatusCode::UNPROCESSABLE_ENTITY,
            ApiErrorCode::Internal => StatusCode::INTERNAL_SERVER_ERROR,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Error)]
#[error("{code:?}: {message}")]
pub struct ApiError {
    pub code: ApiErrorCode,
    pub message: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub detail: Option<serde_json::Value>,
}

pub type ApiResult<T> = Result<T, ApiError>;

impl ApiError {
    pub fn new(code: ApiErrorCode, message: impl Into<String>) -> Self {
        ApiError {
            code,
            message: message.into(),
            detail: None,
        }
    }

    pub fn not_found(message: impl Into<String>) -> Self {
        ApiError::new(ApiErrorCode::NotFound, message)
    }

    pub fn invalid_input(message: impl Into<String>) -> Self {
        ApiError::new(ApiErrorCode::InvalidInput, message)
    }

    pub fn internal(message: impl Into<String>) -> Self {
        ApiError::new(ApiErrorCode::Internal, message)
    }
}

impl From<maxlev::Error> for ApiError {
    fn from(e: maxlev::Error) -> Self {
        use maxlev::Error as E;
        let code = match &e {
            E::NotFound(_) => ApiErrorCode::NotFound,
            E::StaleBatch(_) => ApiErrorCode::StaleBatch,
            E::InvalidState(_) => ApiErrorCode::Conflict,
            E::InvalidInput(_) | E::InvalidParameter(_) | E::Parse { .. } | E::Io { .. } => {
                ApiErrorCode::InvalidInput
            }
        };
        let detail = match &e {
            E::Parse { path, line, .. } => Some(serde_json::json!({ "path": path, "line": line })),
            E::Io { path, .. } => Some(serde_json::json!({ "path": path })),
            _ => None,
        };
        ApiError {
            code,
            message: e.to_string(),
            detail,
        }
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        (self.code.status(), Json(self)).into_response()
    }
}
