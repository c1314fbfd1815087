//! HTTP API for uploading graphs, reading their census, and editing an
//! interactive selection whose counts are updated locally.
//!
//! | Method | Path | |
//! |---|---|---|
//! | POST | `/graphs` | edge-list body, returns id and census |
//! | GET | `/graphs/{id}/counts` | global and selection counts |
//! | GET | `/graphs/{id}/gfd?k=&scope=&source=` | graphlet frequency distribution |
//! | POST | `/graphs/{id}/selection/ops` | apply selection ops |
//! | GET | `/graphs/{id}/edges/weights?pattern=` | per-edge weights |
//! | GET | `/graphs/{id}/audit` | recount and compare |
//!
//! Vertices are addressed by their labels in the uploaded file.

mod error;
mod ops;
mod session;

use std::collections::HashMap;
use std::net::SocketAddr;
use std::sync::{Arc, Mutex};
use std::time::Duration;

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, Query, State};
use axum::http::StatusCode;
use axum::routing::{get, post};
use axum::{Json, Router};
use graphlet_core::analytics::{edge_weights, gfd, EdgePattern, GfdScope};
use graphlet_core::census::{CensusError, GraphletFrequencies};
use graphlet_core::graph::{load_edge_list, ParseOptions};
use graphlet_core::json::BigDelta;
use graphlet_core::ParallelConfig;
use serde::Deserialize;
use serde_json::{json, Value};

pub use error::ApiError;
pub use ops::{OpsRequest, WireOp};
use session::{Session, SessionStore};

#[derive(Debug, Clone)]
pub struct ServiceConfig {
    /// Uploads with more edges are rejected with 413.
    pub max_edges: usize,
    /// Largest accepted request body.
    pub max_body_bytes: usize,
    /// Idle sessions older than this are evicted.
    pub session_ttl: Duration,
    pub parallel: ParallelConfig,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        ServiceConfig {
            max_edges: 5_000_000,
            max_body_bytes: 512 << 20,
            session_ttl: Duration::from_secs(3600),
            parallel: ParallelConfig::default(),
        }
    }
}

#[derive(Clone)]
pub struct AppState {
    config: Arc<ServiceConfig>,
    sessions: Arc<Mutex<SessionStore>>,
}

impl AppState {
    pub fn new(config: ServiceConfig) -> Self {
        AppState { config: Arc::new(config), sessions: Arc::new(Mutex::new(HashMap::new())) }
    }

    fn session(&self, id: &str) -> Result<Arc<Mutex<Session>>, ApiError> {
        let mut store = self.sessions.lock().expect("session store poisoned");
        session::evict_expired(&mut store, self.config.session_ttl);
        let entry = store.get_mut(id).ok_or_else(|| ApiError::not_found(id))?;
        entry.touch();
        Ok(entry.session.clone())
    }

    pub fn session_count(&self) -> usize {
        self.sessions.lock().expect("session store poisoned").len()
    }
}

pub fn app(config: ServiceConfig) -> Router {
    let limit = config.max_body_bytes;
    Router::new()
        .route("/graphs", post(upload_graph))
        .route("/graphs/{id}/counts", get(get_counts))
        .route("/graphs/{id}/gfd", get(get_gfd))
        .route("/graphs/{id}/selection/ops", post(update_selection))
        .route("/graphs/{id}/edges/weights", get(get_edge_weights))
        .route("/graphs/{id}/audit", get(audit))
        .layer(DefaultBodyLimit::max(limit))
        .with_state(AppState::new(config))
}

pub async fn serve(addr: SocketAddr, config: ServiceConfig) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, app(config)).await
}

fn counts_json(f: &GraphletFrequencies) -> Value {
    serde_json::to_value(f).expect("frequencies serialize")
}

fn delta_json(delta: &[i128; 17]) -> Value {
    let map: serde_json::Map<String, Value> = graphlet_core::GraphletClass::ALL
        .iter()
        .map(|c| (c.id().to_string(), serde_json::to_value(BigDelta(delta[c.index()])).expect("delta serializes")))
        .collect();
    Value::Object(map)
}

async fn blocking<T: Send + 'static>(f: impl FnOnce() -> T + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f).await.map_err(|e| ApiError::internal(format!("worker failed: {e}")))
}

async fn upload_graph(State(state): State<AppState>, body: Bytes) -> Result<(StatusCode, Json<Value>), ApiError> {
    let config = state.config.clone();
    let session = blocking(move || -> Result<Session, ApiError> {
        let g = load_edge_list(&body[..], &ParseOptions::default())?;
        if g.num_edges() > config.max_edges {
            return Err(ApiError::new(
                StatusCode::PAYLOAD_TOO_LARGE,
                "too_large",
                format!("graph has {} edges, above the cap of {}", g.num_edges(), config.max_edges),
            ));
        }
        Ok(Session::new(g, &config.parallel)?)
    })
    .await??;
    let id = uuid::Uuid::new_v4().simple().to_string();
    let body = json!({
        "id": id,
        "n": session.graph().num_vertices(),
        "m": session.graph().num_edges(),
        "counts": counts_json(session.census())["counts"],
    });
    let mut store = state.sessions.lock().expect("session store poisoned");
    session::evict_expired(&mut store, state.config.session_ttl);
    store.insert(id, session::Entry::new(session));
    Ok((StatusCode::CREATED, Json(body)))
}

async fn get_counts(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = state.session(&id)?;
    let s = session.lock().expect("session poisoned");
    Ok(Json(json!({
        "id": id,
        "n": s.graph().num_vertices(),
        "m": s.graph().num_edges(),
        "counts": counts_json(s.census())["counts"],
        "selection": counts_json(s.selection().counts()),
    })))
}

#[derive(Debug, Deserialize)]
struct GfdQuery {
    k: Option<String>,
    scope: Option<String>,
    source: Option<String>,
}

async fn get_gfd(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<GfdQuery>,
) -> Result<Json<Value>, ApiError> {
    let session = state.session(&id)?;
    let k: usize = match q.k.as_deref() {
        None => 4,
        Some(s) => s.parse().map_err(|_| ApiError::unprocessable(format!("invalid k {s:?}")))?,
    };
    let scope: GfdScope = q.scope.as_deref().unwrap_or("connected").parse()?;
    let s = session.lock().expect("session poisoned");
    let freqs = match q.source.as_deref().unwrap_or("graph") {
        "graph" => *s.census(),
        "selection" => *s.selection().counts(),
        other => return Err(ApiError::unprocessable(format!("unknown source {other:?}"))),
    };
    Ok(Json(serde_json::to_value(gfd(&freqs, k, scope)?).expect("gfd serializes")))
}

async fn update_selection(
    State(state): State<AppState>,
    Path(id): Path<String>,
    body: Bytes,
) -> Result<Json<Value>, ApiError> {
    let session = state.session(&id)?;
    let request: OpsRequest = serde_json::from_slice(&body).map_err(|e| {
        if e.is_data() {
            ApiError::unprocessable(format!("invalid op: {e}"))
        } else {
            ApiError::new(StatusCode::BAD_REQUEST, "bad_request", format!("malformed JSON: {e}"))
        }
    })?;
    blocking(move || {
        let mut s = session.lock().expect("session poisoned");
        let update = s.apply_ops(&request.ops)?;
        let sel = s.selection();
        Ok(Json(json!({
            "seq": request.seq,
            "n": sel.num_active_vertices(),
            "m": sel.num_active_edges(),
            "counts": counts_json(&update.counts)["counts"],
            "delta": delta_json(&update.delta),
            "recomputed_edges": update.recomputed_edges,
        })))
    })
    .await?
}

#[derive(Debug, Deserialize)]
struct WeightsQuery {
    pattern: Option<String>,
}

async fn get_edge_weights(
    State(state): State<AppState>,
    Path(id): Path<String>,
    Query(q): Query<WeightsQuery>,
) -> Result<Json<Value>, ApiError> {
    let session = state.session(&id)?;
    let name = q.pattern.ok_or_else(|| ApiError::unprocessable("missing pattern"))?;
    let pattern: EdgePattern = name.parse()?;
    let parallel = state.config.parallel;
    blocking(move || {
        let mut s = session.lock().expect("session poisoned");
        let (g, micro) = s.micro(&parallel)?;
        let weights = edge_weights(micro, pattern);
        let mut vertex_triangles = vec![0u64; g.num_vertices()];
        for (e, m) in g.edge_refs().zip(micro) {
            vertex_triangles[e.u as usize] += m.local.tri;
            vertex_triangles[e.v as usize] += m.local.tri;
        }
        let edges: Vec<Value> = g
            .edge_refs()
            .zip(&weights)
            .map(|(e, w)| json!({ "index": e.index, "src": g.label(e.u), "dst": g.label(e.v), "weight": w }))
            .collect();
        // each triangle at a vertex is seen from both of its edges there
        let vertices: Vec<Value> = (0..g.num_vertices() as u32)
            .map(|v| json!({ "id": g.label(v), "triangles": vertex_triangles[v as usize] / 2 }))
            .collect();
        Ok(Json(json!({ "pattern": name, "edges": edges, "vertices": vertices })))
    })
    .await?
}

async fn audit(State(state): State<AppState>, Path(id): Path<String>) -> Result<Json<Value>, ApiError> {
    let session = state.session(&id)?;
    let parallel = state.config.parallel;
    blocking(move || {
        let s = session.lock().expect("session poisoned");
        let fresh = graphlet_core::graphlet_census(s.graph(), &parallel)?;
        if &fresh != s.census() {
            return Err(ApiError::from(CensusError::Inconsistent("cached graph census differs from a recount"))
                .with_detail(json!({ "cached": counts_json(s.census()), "fresh": counts_json(&fresh) })));
        }
        let selection = s.selection().audit()?;
        Ok(Json(json!({ "ok": true, "graph": counts_json(&fresh), "selection": counts_json(&selection) })))
    })
    .await?
}
