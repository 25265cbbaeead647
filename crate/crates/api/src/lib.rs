//! HTTP service over the READ library.
//!
//! | Route | Body | Response |
//! |---|---|---|
//! | `GET /api/features/{word}` | | [`FeatureDocument`] |
//! | `POST /api/pair` | `{"word_a", "word_b"}` | [`PairDocument`] |
//! | `POST /api/annotate` | `{"text"}` | [`AnnotationDocument`](read_core::advisor::AnnotationDocument) |
//! | `GET /api/replication/report` | | replication report JSON |
//! | `GET /api/health` | | `{"status": "ready" \| "loading"}` |
//!
//! Everything else is served from the static directory when one is
//! configured. Requests made before the resources finish loading get 503.

pub mod config;
pub mod documents;

use std::sync::{Arc, Mutex, OnceLock};

use axum::body::Bytes;
use axum::extract::{DefaultBodyLimit, Path, State};
use axum::http::{header, StatusCode};
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::Router;
use serde::Deserialize;
use tower_http::services::ServeDir;

use read_core::advisor::{AdvisorConfig, AnnotationDocument};
use read_core::{
    predict_pair, render_report, Advisor, FeatureExtractor, ReportFormat, Resources, TrainedModel,
};

pub use config::{ReplicationSource, ServiceConfig, BIND_ENV, DEFAULT_BODY_LIMIT};
pub use documents::{ErrorDocument, FeatureDocument, PairDocument};

#[derive(Debug, thiserror::Error)]
pub enum ServiceError {
    #[error("configuration: {0}")]
    Config(String),
    #[error("loading resources: {0}")]
    Load(#[from] read_core::Error),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

/// Everything a request handler reads. Immutable once built.
pub struct Loaded {
    pub resources: Resources,
    pub model: TrainedModel,
    pub advisor: AdvisorConfig,
    pub strict: bool,
    /// Pre-rendered JSON report, when a dataset is configured.
    pub report: Option<String>,
}

impl Loaded {
    pub fn load(cfg: &ServiceConfig) -> Result<Self, ServiceError> {
        let resources = Resources::read_cache(&cfg.cache)?;
        let model = TrainedModel::load(&cfg.model)?;
        let report = match &cfg.replication {
            Some(src) => {
                let report = documents::replication_report(&src.data, &src.map, Some(&resources))?;
                Some(render_report(&report, ReportFormat::Json)?)
            }
            None => None,
        };
        Ok(Loaded {
            resources,
            model,
            advisor: AdvisorConfig::default(),
            strict: cfg.strict,
            report,
        })
    }

    fn extractor(&self) -> FeatureExtractor<'_> {
        FeatureExtractor::from_resources(&self.resources)
    }
}

/// Shared handle; empty until loading completes.
#[derive(Clone, Default)]
pub struct AppState(Arc<OnceLock<Loaded>>);

impl AppState {
    pub fn ready(loaded: Loaded) -> Self {
        let state = AppState::default();
        state.set(loaded);
        state
    }

    pub fn set(&self, loaded: Loaded) {
        if self.0.set(loaded).is_err() {
            tracing::warn!("service state already initialized");
        }
    }

    pub fn is_ready(&self) -> bool {
        self.0.get().is_some()
    }

    fn get(&self) -> Result<&Loaded, ApiError> {
        self.0
            .get()
            .ok_or_else(|| ApiError(StatusCode::SERVICE_UNAVAILABLE, "resources are still loading".into()))
    }
}

struct ApiError(StatusCode, String);

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let doc = ErrorDocument {
            schema_version: documents::SCHEMA_VERSION,
            error: documents::ErrorBody {
                status: self.0.as_u16(),
                message: self.1,
            },
        };
        (self.0, json(documents::to_json(&doc))).into_response()
    }
}

fn bad_request(e: impl std::fmt::Display) -> ApiError {
    ApiError(StatusCode::BAD_REQUEST, e.to_string())
}

fn internal(e: impl std::fmt::Display) -> ApiError {
    ApiError(StatusCode::INTERNAL_SERVER_ERROR, e.to_string())
}

fn json(body: String) -> impl IntoResponse {
    ([(header::CONTENT_TYPE, "application/json; charset=utf-8")], body)
}

/// Builds the router. `static_dir` and `body_limit` come from `cfg`.
pub fn router(state: AppState, cfg: &ServiceConfig) -> Router {
    let api = Router::new()
        .route("/api/health", get(health))
        .route("/api/features/{word}", get(features))
        .route("/api/pair", post(pair))
        .route("/api/annotate", post(annotate))
        .route("/api/replication/report", get(report))
        .layer(DefaultBodyLimit::max(cfg.body_limit))
        .with_state(state);
    match &cfg.static_dir {
        Some(dir) => api.fallback_service(ServeDir::new(dir)),
        None => api,
    }
}

async fn health(State(state): State<AppState>) -> Response {
    if state.is_ready() {
        json("{\"status\":\"ready\"}\n".into()).into_response()
    } else {
        (StatusCode::SERVICE_UNAVAILABLE, json("{\"status\":\"loading\"}\n".into())).into_response()
    }
}

async fn features(State(state): State<AppState>, Path(word): Path<String>) -> Result<impl IntoResponse, ApiError> {
    let loaded = state.get()?;
    let report = loaded.extractor().extract(&word).map_err(bad_request)?;
    Ok(json(documents::to_json(&FeatureDocument::new(report))))
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct PairRequest {
    word_a: String,
    word_b: String,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AnnotateRequest {
    text: String,
}

/// Request bodies must be JSON objects matching the schema exactly.
fn parse_body<T: serde::de::DeserializeOwned>(body: &[u8]) -> Result<T, ApiError> {
    let value: serde_json::Value = serde_json::from_slice(body).map_err(bad_request)?;
    if !value.is_object() {
        return Err(bad_request("request body must be a JSON object"));
    }
    serde_json::from_value(value).map_err(bad_request)
}

async fn pair(State(state): State<AppState>, body: Bytes) -> Result<impl IntoResponse, ApiError> {
    let loaded = state.get()?;
    let req: PairRequest = parse_body(&body)?;
    let ex = loaded.extractor();
    let a = ex.extract(&req.word_a).map_err(bad_request)?;
    let b = ex.extract(&req.word_b).map_err(bad_request)?;
    if loaded.strict {
        for r in [&a, &b] {
            if r.coverage.lexicon_oov {
                return Err(ApiError(
                    StatusCode::UNPROCESSABLE_ENTITY,
                    format!("{:?} is not in the lexicon", r.word),
                ));
            }
        }
    }
    let prediction = predict_pair(&loaded.model, &a.features, &b.features).map_err(internal)?;
    Ok(json(documents::to_json(&PairDocument::new(&a, &b, prediction))))
}

async fn annotate(State(state): State<AppState>, body: Bytes) -> Result<impl IntoResponse, ApiError> {
    let loaded = state.get()?;
    let req: AnnotateRequest = parse_body(&body)?;
    let doc = annotation_document(loaded, &req.text).map_err(internal)?;
    Ok(json(doc.to_json().map_err(internal)?))
}

/// The annotation document for `text`, as served by `/api/annotate`.
pub fn annotation_document(loaded: &Loaded, text: &str) -> read_core::Result<AnnotationDocument> {
    Advisor::new(loaded.extractor(), &loaded.model, loaded.advisor.clone()).annotate_document(text)
}

async fn report(State(state): State<AppState>) -> Result<impl IntoResponse, ApiError> {
    let loaded = state.get()?;
    match &loaded.report {
        Some(body) => Ok(json(body.clone())),
        None => Err(ApiError(StatusCode::NOT_FOUND, "no replication dataset configured".into())),
    }
}

/// Validates `cfg`, binds, and serves until Ctrl-C. The listener is up
/// before resources load; a load failure stops the server with an error.
pub async fn serve(cfg: ServiceConfig) -> Result<(), ServiceError> {
    cfg.validate()?;
    let listener = tokio::net::TcpListener::bind(cfg.bind).await?;
    serve_on(listener, cfg).await
}

pub async fn serve_on(listener: tokio::net::TcpListener, cfg: ServiceConfig) -> Result<(), ServiceError> {
    tracing::info!(addr = %listener.local_addr()?, "listening");
    let state = AppState::default();
    let app = router(state.clone(), &cfg);

    let failure: Arc<Mutex<Option<ServiceError>>> = Arc::default();
    let (fail_tx, fail_rx) = tokio::sync::oneshot::channel::<()>();
    {
        let failure = failure.clone();
        tokio::spawn(async move {
            let result = tokio::task::spawn_blocking(move || Loaded::load(&cfg)).await;
            let err = match result {
                Ok(Ok(loaded)) => {
                    state.set(loaded);
                    tracing::info!("resources loaded");
                    return;
                }
                Ok(Err(e)) => e,
                Err(e) => ServiceError::Config(format!("loader panicked: {e}")),
            };
            tracing::error!("{err}");
            *failure.lock().unwrap() = Some(err);
            let _ = fail_tx.send(());
        });
    }

    let shutdown = async move {
        tokio::select! {
            _ = async { if fail_rx.await.is_err() { std::future::pending::<()>().await } } => {}
            _ = tokio::signal::ctrl_c() => tracing::info!("shutting down"),
        }
    };
    axum::serve(listener, app).with_graceful_shutdown(shutdown).await?;
    let err = failure.lock().unwrap().take();
    match err {
        Some(e) => Err(e),
        None => Ok(()),
    }
}
