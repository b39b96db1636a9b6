//! HTTP facade over researcher-in-the-loop sessions and chrF scoring.
//!
//! Every route deserializes its request, calls the matching [`Api`] method and
//! serializes the result; no logic lives in the routes themselves.

mod api;
mod error;

use std::net::SocketAddr;
use std::path::PathBuf;
use std::sync::Arc;

use axum::extract::rejection::JsonRejection;
use axum::extract::{Path, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;
use tower_http::services::ServeDir;

pub use api::{
    AcceptRequest, Api, ChrfRequest, CreateSession, DataRef, DiscardRequest, SessionCreated,
};
pub use error::{ApiError, ApiErrorCode, ApiResult};

pub const DEFAULT_HOST: &str = "127.0.0.1";
pub const DEFAULT_PORT: u16 = 8614;

type Shared = Arc<Api>;

/// Run a blocking API call off the async executor.
async fn call<T, F>(api: Shared, f: F) -> Response
where
    T: Serialize + Send + 'static,
    F: FnOnce(&Api) -> ApiResult<T> + Send + 'static,
{
    match tokio::task::spawn_blocking(move || f(&api)).await {
        Ok(Ok(value)) => Json(value).into_response(),
        Ok(Err(e)) => e.into_response(),
        Err(e) => ApiError::internal(e.to_string()).into_response(),
    }
}

fn body<T>(payload: Result<Json<T>, JsonRejection>) -> ApiResult<T> {
    payload
        .map(|Json(v)| v)
        .map_err(|e| ApiError::invalid_input(e.body_text()))
}

async fn create_session(
    State(api): State<Shared>,
    payload: Result<Json<CreateSession>, JsonRejection>,
) -> Response {
    let req = match body(payload) {
        Ok(r) => r,
        Err(e) => return e.into_response(),
    };
    let mut resp = call(api, move |a| a.create_session(req)).await;
    if resp.status() == StatusCode::OK {
        *resp.status_mut() = StatusCode::CREATED;
    }
    resp
}

async fn batch(State(api): State<Shared>, Path(id): Path<String>) -> Response {
    call(api, move |a| a.batch(&id)).await
}

async fn accept(
    State(api): State<Shared>,
    Path(id): Path<String>,
    payload: Result<Json<AcceptRequest>, JsonRejection>,
) -> Response {
    match body(payload) {
        Ok(req) => call(api, move |a| a.accept(&id, req)).await,
        Err(e) => e.into_response(),
    }
}

async fn discard(
    State(api): State<Shared>,
    Path(id): Path<String>,
    payload: Result<Json<DiscardRequest>, JsonRejection>,
) -> Response {
    match body(payload) {
        Ok(req) => call(api, move |a| a.discard(&id, req)).await,
        Err(e) => e.into_response(),
    }
}

async fn status(State(api): State<Shared>, Path(id): Path<String>) -> Response {
    call(api, move |a| a.status(&id)).await
}

async fn export(State(api): State<Shared>, Path(id): Path<String>) -> Response {
    call(api, move |a| a.export(&id)).await
}

async fn score_chrf(
    State(api): State<Shared>,
    payload: Result<Json<ChrfRequest>, JsonRejection>,
) -> Response {
    match body(payload) {
        Ok(req) => call(api, move |a| a.score_chrf(req)).await,
        Err(e) => e.into_response(),
    }
}

async fn unknown_route() -> Response {
    ApiError::not_found("no such route").into_response()
}

/// The full route table. Static UI files are served under `/ui/` when a
/// bundle directory is given.
pub fn router(api: Shared, ui_dir: Option<PathBuf>) -> Router {
    let mut router = Router::new()
        .route("/sessions", post(create_session))
        .route("/sessions/{id}/batch", get(batch))
        .route("/sessions/{id}/accept", post(accept))
        .route("/sessions/{id}/discard", post(discard))
        .route("/sessions/{id}/status", get(status))
        .route("/sessions/{id}/export", get(export))
        .route("/score/chrf", post(score_chrf));
    if let Some(dir) = ui_dir {
        router = router.nest_service(
            "/ui",
            ServeDir::new(dir).append_index_html_on_directories(true),
        );
    }
    router.fallback(unknown_route).with_state(api)
}

/// Bind and serve until the process is stopped.
pub async fn serve(addr: SocketAddr, api: Shared, ui_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    log::info!("listening on http://{}", listener.local_addr()?);
    axum::serve(listener, router(api, ui_dir)).await
}
