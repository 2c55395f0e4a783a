//! HTTP routes over [`Engine`].

use std::collections::HashMap;
use std::net::SocketAddr;

use axum::body::Bytes;
use axum::extract::{Query, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::Serialize;
use tokio::net::TcpListener;

use crate::api::{ApiError, ApiResult, Engine};

fn respond<T: Serialize>(result: ApiResult<T>) -> Response {
    match result {
        Ok(body) => Json(body).into_response(),
        Err(e) => {
            let status = StatusCode::from_u16(e.status()).unwrap_or(StatusCode::BAD_REQUEST);
            (status, Json(serde_json::json!({ "error": e.message() }))).into_response()
        }
    }
}

/// Runs a handler off the async workers; BFS-backed requests can be long.
async fn blocking<T, F>(engine: Engine, f: F) -> Response
where
    T: Serialize + Send + 'static,
    F: FnOnce(&Engine) -> ApiResult<T> + Send + 'static,
{
    match tokio::task::spawn_blocking(move || f(&engine)).await {
        Ok(result) => respond(result),
        Err(e) => respond::<()>(Err(ApiError::Domain(format!("request aborted: {e}")))),
    }
}

async fn graph(State(engine): State<Engine>, Query(q): Query<HashMap<String, String>>) -> Response {
    respond(engine.graph(&q))
}

async fn apply_move(State(engine): State<Engine>, body: Bytes) -> Response {
    blocking(engine, move |e| e.apply_move(&body)).await
}

async fn solve(State(engine): State<Engine>, body: Bytes) -> Response {
    blocking(engine, move |e| e.solve(&body)).await
}

async fn classify(State(engine): State<Engine>, body: Bytes) -> Response {
    blocking(engine, move |e| e.classify(&body)).await
}

async fn scramble(State(engine): State<Engine>, body: Bytes) -> Response {
    blocking(engine, move |e| e.scramble(&body)).await
}

pub fn router(engine: Engine) -> Router {
    Router::new()
        .route("/api/graph", get(graph))
        .route("/api/move", post(apply_move))
        .route("/api/solve", post(solve))
        .route("/api/classify", post(classify))
        .route("/api/scramble", post(scramble))
        .with_state(engine)
}

/// Serves on an already bound listener until `shutdown` resolves.
pub async fn serve_on<F>(listener: TcpListener, shutdown: F) -> std::io::Result<()>
where
    F: std::future::Future<Output = ()> + Send + 'static,
{
    axum::serve(listener, router(Engine::new()))
        .with_graceful_shutdown(shutdown)
        .await
}

/// Binds `addr` and serves until Ctrl-C.
pub async fn serve(addr: SocketAddr) -> std::io::Result<()> {
    let listener = TcpListener::bind(addr).await?;
    eprintln!("listening on http://{}", listener.local_addr()?);
    serve_on(listener, async {
        let _ = tokio::signal::ctrl_c().await;
    })
    .await
}
