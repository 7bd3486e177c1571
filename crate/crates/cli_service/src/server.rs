// SPDX-License-Identifier: Apache-2.0
use crate::session::SessionService;
use axum::extract::State;
use axum::routing::post;
use axum::{Json, Router};
use serde_json::Value;
use std::path::PathBuf;
use std::sync::Arc;

async fn api(State(svc): State<Arc<SessionService>>, Json(body): Json<Value>) -> Json<Value> {
    let out = tokio::task::spawn_blocking(move || svc.handle(&body))
        .await
        .unwrap_or_else(|e| serde_json::json!({ "ok": false, "error": { "kind": "internal", "message": e.to_string() } }));
    Json(out)
}

/// `POST /api` for the session protocol; other paths serve `static_dir`.
pub fn router(svc: Arc<SessionService>, static_dir: Option<PathBuf>) -> Router {
    let r = Router::new().route("/api", post(api)).with_state(svc);
    match static_dir {
        Some(d) => r.fallback_service(tower_http::services::ServeDir::new(d)),
        None => r,
    }
}

pub async fn serve(svc: Arc<SessionService>, addr: &str, static_dir: Option<PathBuf>) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    eprintln!("listening on {}", listener.local_addr()?);
    axum::serve(listener, router(svc, static_dir)).await
}
