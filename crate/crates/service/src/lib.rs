//! Stateless HTTP API over the simulator.
//!
//! | method | path               | body                |
//! |--------|--------------------|---------------------|
//! | POST   | `/api/v1/run`      | [`RunRequest`]      |
//! | POST   | `/api/v1/validate` | circuit document    |
//! | GET    | `/api/v1/gates`    |                     |
//! | GET    | `/health`          |                     |
//!
//! Errors are reported as `{"errors": [{"path": ..., "message": ...}]}` with
//! status 400 for malformed or invalid input and 422 for well-formed requests
//! the service refuses to run (qubit or shot ceilings).

use std::collections::BTreeMap;
use std::io;
use std::sync::Arc;

use axum::extract::State;
use axum::http::StatusCode;
use axum::response::{IntoResponse, Response};
use axum::routing::{get, post};
use axum::{Json, Router};
use serde::{Deserialize, Serialize};
use serde_json::Value;
use strideq_core::circuit::{from_value, FormatError, RunError, RunOptions};
use strideq_core::gates::GateInfo;
use strideq_core::{catalog, run_with, BlochVector};
use tokio::net::TcpListener;
use tower_http::cors::CorsLayer;

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

/// Largest register whose amplitudes are echoed back with `include_state`.
pub const MAX_STATE_QUBITS: usize = 12;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct ServiceConfig {
    pub max_qubits: usize,
    pub max_shots: u64,
}

impl Default for ServiceConfig {
    fn default() -> Self {
        Self {
            max_qubits: 16,
            max_shots: 100_000,
        }
    }
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunRequest {
    pub circuit: Value,
    #[serde(default)]
    pub seed: u64,
    #[serde(default = "one")]
    pub shots: u64,
    #[serde(default)]
    pub include_state: bool,
}

fn one() -> u64 {
    1
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunResponse {
    pub distribution: Vec<f64>,
    pub bloch: Vec<BlochVector>,
    pub shot_histogram: BTreeMap<String, u64>,
    pub cbits: Vec<u8>,
    pub seed: u64,
    pub rng_id: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub state: Option<Vec<[f64; 2]>>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorItem {
    pub path: Option<String>,
    pub message: String,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ErrorBody {
    pub errors: Vec<ErrorItem>,
}

struct ApiError {
    status: StatusCode,
    item: ErrorItem,
}

impl ApiError {
    fn bad_request(path: Option<String>, message: impl Into<String>) -> Self {
        Self {
            status: StatusCode::BAD_REQUEST,
            item: ErrorItem {
                path,
                message: message.into(),
            },
        }
    }

    fn unprocessable(path: &str, message: impl Into<String>) -> Self {
        Self {
            status: StatusCode::UNPROCESSABLE_ENTITY,
            item: ErrorItem {
                path: Some(path.to_owned()),
                message: message.into(),
            },
        }
    }

    fn from_format(err: FormatError, prefix: &str) -> Self {
        let path = err.path().map(|p| {
            if prefix.is_empty() {
                p.to_owned()
            } else {
                format!("{prefix}.{p}")
            }
        });
        Self::bad_request(path, err.to_string())
    }
}

impl IntoResponse for ApiError {
    fn into_response(self) -> Response {
        let body = ErrorBody {
            errors: vec![self.item],
        };
        (self.status, Json(body)).into_response()
    }
}

fn parse_json(body: &str) -> Result<Value, ApiError> {
    serde_json::from_str(body).map_err(|e| {
        ApiError::bad_request(
            None,
            format!("syntax error at line {}, column {}: {e}", e.line(), e.column()),
        )
    })
}

type Shared = Arc<ServiceConfig>;

async fn run_handler(State(config): State<Shared>, body: String) -> Result<Json<RunResponse>, ApiError> {
    let value = parse_json(&body)?;
    let request: RunRequest = serde_path_to_error::deserialize(value).map_err(|e| {
        ApiError::bad_request(Some(e.path().to_string()), e.inner().to_string())
    })?;
    if request.shots == 0 {
        return Err(ApiError::bad_request(
            Some("shots".to_owned()),
            "shot count must be positive",
        ));
    }
    if request.shots > config.max_shots {
        return Err(ApiError::unprocessable(
            "shots",
            format!("{} shots exceeds the service ceiling of {}", request.shots, config.max_shots),
        ));
    }
    let circuit = from_value(request.circuit).map_err(|e| ApiError::from_format(e, "circuit"))?;
    if circuit.num_qubits > config.max_qubits {
        return Err(ApiError::unprocessable(
            "circuit.qubits",
            format!(
                "circuit has {} qubits, above the service qubit ceiling of {}",
                circuit.num_qubits, config.max_qubits
            ),
        ));
    }

    let options = RunOptions {
        max_qubits: config.max_qubits,
        ..RunOptions::default()
    };
    let (seed, shots, include_state) = (request.seed, request.shots, request.include_state);
    let result = tokio::task::spawn_blocking(move || run_with(&circuit, seed, shots, &options))
        .await
        .map_err(|e| ApiError::unprocessable("circuit", format!("run aborted: {e}")))?
        .map_err(|e| match e {
            RunError::Invalid(v) => ApiError::bad_request(Some(format!("circuit.{}", v.path)), v.to_string()),
            other => ApiError::unprocessable("circuit", other.to_string()),
        })?;

    let n = result.final_state.num_qubits();
    Ok(Json(RunResponse {
        shot_histogram: result.histogram(),
        state: (include_state && n <= MAX_STATE_QUBITS).then(|| {
            result
                .final_state
                .amplitudes()
                .iter()
                .map(|a| [a.re, a.im])
                .collect()
        }),
        distribution: result.distribution,
        bloch: result.bloch,
        cbits: result.cbits,
        seed: result.seed,
        rng_id: result.rng_id,
    }))
}

async fn validate_handler(body: String) -> Response {
    let checked = parse_json(&body)
        .and_then(|v| from_value(v).map_err(|e| ApiError::from_format(e, "")));
    match checked {
        Ok(_) => Json(serde_json::json!({ "ok": true })).into_response(),
        Err(e) => e.into_response(),
    }
}

async fn gates_handler() -> Json<Vec<GateInfo>> {
    Json(catalog())
}

async fn health_handler() -> Json<Value> {
    Json(serde_json::json!({ "status": "ok", "version": VERSION }))
}

pub fn router(config: ServiceConfig) -> Router {
    Router::new()
        .route("/api/v1/run", post(run_handler))
        .route("/api/v1/validate", post(validate_handler))
        .route("/api/v1/gates", get(gates_handler))
        .route("/health", get(health_handler))
        .layer(CorsLayer::permissive())
        .with_state(Arc::new(config))
}

/// Serves the API on an already-bound listener until the task is dropped.
pub async fn serve(listener: TcpListener, config: ServiceConfig) -> io::Result<()> {
    axum::serve(listener, router(config)).await
}
