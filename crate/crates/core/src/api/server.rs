use std::net::SocketAddr;
use std::path::{Path, PathBuf};
use std::sync::{Arc, Mutex};

use axum::extract::{Path as UrlPath, State};
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use dashmap::DashMap;
use rand::Rng;
use serde::{Deserialize, Serialize};
use serde_json::json;

use super::session::{ApiError, CreateRequest, Session, SessionRecord, View};

#[derive(Debug, Clone, Default)]
pub struct ServerConfig {
    /// Reject a request with 429 instead of waiting while another request
    /// holds the same session.
    pub busy_reject: bool,
    /// Write every session to `<dir>/<id>.json` after each change, and load
    /// existing records at startup.
    pub persist_dir: Option<PathBuf>,
}

pub struct SessionStore {
    sessions: DashMap<String, Arc<Mutex<Session>>>,
    config: ServerConfig,
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let status = match &self {
            ApiError::NotFound => StatusCode::NOT_FOUND,
            ApiError::BadRequest(_) => StatusCode::BAD_REQUEST,
            ApiError::Conflict { .. } => StatusCode::CONFLICT,
            ApiError::Busy => StatusCode::TOO_MANY_REQUESTS,
            ApiError::Internal(_) => StatusCode::INTERNAL_SERVER_ERROR,
        };
        let mut body = json!({ "error": self.to_string() });
        if let ApiError::Conflict { forced: Some(d), .. } = &self {
            body["forced"] = json!(d);
        }
        (status, Json(body)).into_response()
    }
}

impl SessionStore {
    /// Opens a store, reloading persisted sessions. Records that no longer
    /// replay are skipped and reported.
    pub fn open(config: ServerConfig) -> std::io::Result<(Self, Vec<String>)> {
        let store = Self {
            sessions: DashMap::new(),
            config,
        };
        let mut skipped = Vec::new();
        if let Some(dir) = &store.config.persist_dir {
            std::fs::create_dir_all(dir)?;
            for entry in std::fs::read_dir(dir)? {
                let path = entry?.path();
                if path.extension().is_none_or(|x| x != "json") {
                    continue;
                }
                let restored = std::fs::read_to_string(&path)
                    .map_err(|e| e.to_string())
                    .and_then(|text| serde_json::from_str::<SessionRecord>(&text).map_err(|e| e.to_string()))
                    .and_then(|rec| Session::restore(&rec).map_err(|e| e.to_string()));
                match restored {
                    Ok(s) => {
                        store.sessions.insert(s.id().to_string(), Arc::new(Mutex::new(s)));
                    }
                    Err(e) => skipped.push(format!("{}: {e}", path.display())),
                }
            }
        }
        Ok((store, skipped))
    }

    pub fn len(&self) -> usize {
        self.sessions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sessions.is_empty()
    }

    fn fresh_id(&self) -> String {
        loop {
            let id = format!("{:016x}", rand::thread_rng().gen::<u64>());
            if !self.sessions.contains_key(&id) {
                return id;
            }
        }
    }

    pub fn create(&self, req: &CreateRequest) -> Result<(String, View), ApiError> {
        let session = Session::create(self.fresh_id(), req)?;
        let id = session.id().to_string();
        let view = session.view();
        self.persist(&session)?;
        self.sessions.insert(id.clone(), Arc::new(Mutex::new(session)));
        Ok((id, view))
    }

    /// Runs `f` with exclusive access to one session, persisting afterwards.
    pub fn with<T>(&self, id: &str, f: impl FnOnce(&mut Session) -> Result<T, ApiError>) -> Result<T, ApiError> {
        let cell = self.sessions.get(id).map(|s| s.clone()).ok_or(ApiError::NotFound)?;
        let mut guard = if self.config.busy_reject {
            cell.try_lock().map_err(|e| match e {
                std::sync::TryLockError::WouldBlock => ApiError::Busy,
                std::sync::TryLockError::Poisoned(_) => ApiError::Internal("session poisoned".into()),
            })?
        } else {
            cell.lock().map_err(|_| ApiError::Internal("session poisoned".into()))?
        };
        let out = f(&mut guard)?;
        self.persist(&guard)?;
        Ok(out)
    }

    fn persist(&self, s: &Session) -> Result<(), ApiError> {
        let Some(dir) = &self.config.persist_dir else {
            return Ok(());
        };
        write_record(dir, &s.record()).map_err(|e| ApiError::Internal(format!("persisting session: {e}")))
    }
}

fn write_record(dir: &Path, rec: &SessionRecord) -> std::io::Result<()> {
    let tmp = dir.join(format!("{}.json.tmp", rec.id));
    std::fs::write(&tmp, serde_json::to_vec(rec)?)?;
    std::fs::rename(tmp, dir.join(format!("{}.json", rec.id)))
}

#[derive(Serialize)]
struct Created {
    id: String,
    view: View,
}

#[derive(Debug, Serialize, Deserialize)]
struct QueryBody {
    edge: (usize, usize),
}

#[derive(Debug, Serialize, Deserialize)]
struct AnswerBody {
    dir: (usize, usize),
}

type Shared = Arc<SessionStore>;

/// Session work can be CPU-heavy (hints run the solver), so it runs off the
/// async workers.
async fn blocking<T: Send + 'static>(f: impl FnOnce() -> Result<T, ApiError> + Send + 'static) -> Result<T, ApiError> {
    tokio::task::spawn_blocking(f)
        .await
        .map_err(|e| ApiError::Internal(e.to_string()))?
}

async fn create(State(store): State<Shared>, Json(req): Json<CreateRequest>) -> Result<Response, ApiError> {
    let (id, view) = blocking(move || store.create(&req)).await?;
    Ok((StatusCode::CREATED, Json(Created { id, view })).into_response())
}

async fn show(State(store): State<Shared>, UrlPath(id): UrlPath<String>) -> Result<Json<View>, ApiError> {
    blocking(move || store.with(&id, |s| Ok(s.view()))).await.map(Json)
}

async fn query(
    State(store): State<Shared>,
    UrlPath(id): UrlPath<String>,
    Json(body): Json<QueryBody>,
) -> Result<Response, ApiError> {
    let r = blocking(move || store.with(&id, |s| s.query(body.edge))).await?;
    Ok(Json(r).into_response())
}

async fn answer(
    State(store): State<Shared>,
    UrlPath(id): UrlPath<String>,
    Json(body): Json<AnswerBody>,
) -> Result<Response, ApiError> {
    let r = blocking(move || store.with(&id, |s| s.answer(body.dir))).await?;
    Ok(Json(r).into_response())
}

async fn hint(State(store): State<Shared>, UrlPath(id): UrlPath<String>) -> Result<Response, ApiError> {
    let h = blocking(move || store.with(&id, |s| Ok(s.hint()))).await?;
    Ok(Json(h).into_response())
}

pub fn router(store: Shared) -> Router {
    Router::new()
        .route("/sessions", post(create))
        .route("/sessions/{id}", get(show))
        .route("/sessions/{id}/query", post(query))
        .route("/sessions/{id}/answer", post(answer))
        .route("/sessions/{id}/hint", get(hint))
        .with_state(store)
}

/// Serves until Ctrl-C.
pub async fn serve(addr: SocketAddr, store: Shared) -> std::io::Result<()> {
    let listener = tokio::net::TcpListener::bind(addr).await?;
    axum::serve(listener, router(store))
        .with_graceful_shutdown(async {
            let _ = tokio::signal::ctrl_c().await;
        })
        .await
}
