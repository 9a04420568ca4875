//! JSON model configuration: parsing and validation.
//!
//! Complex numbers are always split {re, im} pairs; matrices are nested
//! row-major arrays. `load_config` reports every violation it finds, not
//! just the first.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::path::Path;

use crate::bloch::{BlochVector, DensityMatrix};
use crate::dynamics::time_grid;
use crate::error::{Error, Result};

/// The commands a config may request, executed in this fixed order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Command {
    Validate,
    SteadyState,
    Spectrum,
    Decompose,
    Simulate,
}

impl Command {
    pub const EXECUTION_ORDER: [Command; 5] = [
        Command::Validate,
        Command::SteadyState,
        Command::Spectrum,
        Command::Decompose,
        Command::Simulate,
    ];

    pub fn name(&self) -> &'static str {
        match self {
            Command::Validate => "validate",
            Command::SteadyState => "steady-state",
            Command::Spectrum => "spectrum",
            Command::Decompose => "decompose",
            Command::Simulate => "simulate",
        }
    }
}

/// Check tolerances; structural defaults 1e−12, spectral 1e−10, residual 1e−8.
#[derive(Debug, Clone, Copy, Serialize, Deserialize)]
pub struct Tolerances {
    #[serde(default = "default_structural")]
    pub structural: f64,
    #[serde(default = "default_spectral")]
    pub spectral: f64,
    #[serde(default = "default_residual")]
    pub residual: f64,
}

fn default_structural() -> f64 {
    1e-12
}
fn default_spectral() -> f64 {
    1e-10
}
fn default_residual() -> f64 {
    1e-8
}

impl Default for Tolerances {
    fn default() -> Self {
        Tolerances {
            structural: default_structural(),
            spectral: default_spectral(),
            residual: default_residual(),
        }
    }
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ComplexMatrixJson {
    pub re: Vec<Vec<f64>>,
    #[serde(default)]
    pub im: Option<Vec<Vec<f64>>>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum StateJson {
    Matrix { matrix: ComplexMatrixJson },
    Bloch { bloch: Vec<f64> },
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(untagged)]
pub enum TimeGridJson {
    Uniform {
        t_start: f64,
        t_end: f64,
        steps: usize,
    },
    Explicit {
        times: Vec<f64>,
    },
}

/// On-disk schema, version 1.
#[derive(Debug, Clone, Deserialize)]
pub struct RawConfig {
    pub version: u32,
    pub dim: usize,
    pub jumps: Vec<ComplexMatrixJson>,
    #[serde(default)]
    pub initial_state: Option<StateJson>,
    #[serde(default)]
    pub time_grid: Option<TimeGridJson>,
    #[serde(default)]
    pub commands: Vec<Command>,
    #[serde(default)]
    pub tolerances: Option<Tolerances>,
}

/// Initial state in either representation, already validated.
#[derive(Debug, Clone)]
pub enum InitialState {
    Matrix(DensityMatrix),
    Bloch(BlochVector),
}

/// Validated configuration ready to run.
#[derive(Debug, Clone)]
pub struct ModelConfig {
    pub dim: usize,
    pub jumps: Vec<DMatrix<Complex64>>,
    pub initial_state: Option<InitialState>,
    pub times: Option<Vec<f64>>,
    pub commands: Vec<Command>,
    pub tolerances: Tolerances,
    /// SHA-256 of the raw config bytes, for provenance.
    pub config_sha256: String,
}

/// Parse and validate a config file. All violations are collected and
/// reported together.
pub fn load_config(path: &Path) -> Result<ModelConfig> {
    let bytes = std::fs::read(path)?;
    let hash = sha256_hex(&bytes);
    let raw: RawConfig = serde_json::from_slice(&bytes)?;
    validate_raw(raw, hash)
}

/// Validate an in-memory config (the hash is of the serialized form).
pub fn from_raw(raw: RawConfig, config_sha256: String) -> Result<ModelConfig> {
    validate_raw(raw, config_sha256)
}

fn validate_raw(raw: RawConfig, config_sha256: String) -> Result<ModelConfig> {
    let mut violations: Vec<String> = Vec::new();
    if raw.version != 1 {
        violations.push(format!("unsupported config version {}", raw.version));
    }
    if raw.dim < 2 {
        violations.push(format!("dim must be at least 2, got {}", raw.dim));
    }
    if raw.jumps.is_empty() {
        violations.push("at least one jump operator is required".into());
    }
    let mut jumps = Vec::with_capacity(raw.jumps.len());
    for (idx, jm) in raw.jumps.iter().enumerate() {
        match parse_matrix(jm, raw.dim) {
            Ok(m) => jumps.push(m),
            Err(e) => violations.push(format!("jump[{idx}]: {e}")),
        }
    }
    let initial_state = match &raw.initial_state {
        None => None,
        Some(StateJson::Matrix { matrix }) => match parse_matrix(matrix, raw.dim)
            .and_then(|m| DensityMatrix::new(m).map_err(|e| e.to_string()))
        {
            Ok(rho) => Some(InitialState::Matrix(rho)),
            Err(e) => {
                violations.push(format!("initial_state: {e}"));
                None
            }
        },
        Some(StateJson::Bloch { bloch }) => {
            let want = raw.dim * raw.dim - 1;
            if bloch.len() != want {
                violations.push(format!(
                    "initial_state: Bloch vector has length {}, expected {want}",
                    bloch.len()
                ));
                None
            } else {
                let a = BlochVector::new(raw.dim.max(2), DVector::from_vec(bloch.clone()))
                    .map_err(|e| e.to_string());
                match a {
                    Ok(a) if a.norm() <= 1.0 + 1e-10 => Some(InitialState::Bloch(a)),
                    Ok(a) => {
                        violations.push(format!(
                            "initial_state: Bloch norm {} exceeds 1",
                            a.norm()
                        ));
                        None
                    }
                    Err(e) => {
                        violations.push(format!("initial_state: {e}"));
                        None
                    }
                }
            }
        }
    };
    let times = match &raw.time_grid {
        None => None,
        Some(TimeGridJson::Uniform {
            t_start,
            t_end,
            steps,
        }) => match time_grid(*t_start, *t_end, *steps) {
            Ok(t) => Some(t),
            Err(e) => {
                violations.push(format!("time_grid: {e}"));
                None
            }
        },
        Some(TimeGridJson::Explicit { times }) => {
            if times.len() < 2 {
                violations.push("time_grid: need at least two time points".into());
                None
            } else if times.windows(2).any(|w| w[1] <= w[0]) {
                violations.push("time_grid: times must be strictly increasing".into());
                None
            } else {
                Some(times.clone())
            }
        }
    };
    if raw.commands.contains(&Command::Simulate) {
        if times.is_none() && raw.time_grid.is_none() {
            violations.push("simulate requires a time_grid".into());
        }
        if initial_state.is_none() && raw.initial_state.is_none() {
            violations.push("simulate requires an initial_state".into());
        }
    }
    let tolerances = raw.tolerances.unwrap_or_default();
    for (name, value) in [
        ("structural", tolerances.structural),
        ("spectral", tolerances.spectral),
        ("residual", tolerances.residual),
    ] {
        if !value.is_finite() || value <= 0.0 {
            violations.push(format!("tolerances.{name} must be positive"));
        }
    }
    if !violations.is_empty() {
        return Err(Error::Config(violations.join("; ")));
    }
    Ok(ModelConfig {
        dim: raw.dim,
        jumps,
        initial_state,
        times,
        commands: raw.commands,
        tolerances,
        config_sha256,
    })
}

fn parse_matrix(
    jm: &ComplexMatrixJson,
    dim: usize,
) -> std::result::Result<DMatrix<Complex64>, String> {
    let check_shape = |name: &str, rows: &Vec<Vec<f64>>| -> std::result::Result<(), String> {
        if rows.len() != dim {
            return Err(format!("{name} has {} rows, expected {dim}", rows.len()));
        }
        for (i, row) in rows.iter().enumerate() {
            if row.len() != dim {
                return Err(format!(
                    "{name} row {i} has {} entries, expected {dim}",
                    row.len()
                ));
            }
        }
        Ok(())
    };
    check_shape("re", &jm.re)?;
    if let Some(im) = &jm.im {
        check_shape("im", im)?;
    }
    Ok(DMatrix::from_fn(dim, dim, |i, j| {
        let re = jm.re[i][j];
        let im = jm.im.as_ref().map_or(0.0, |m| m[i][j]);
        Complex64::new(re, im)
    }))
}

pub fn sha256_hex(bytes: &[u8]) -> String {
    use sha2::{Digest, Sha256};
    let mut hasher = Sha256::new();
    hasher.update(bytes);
    let digest = hasher.finalize();
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

/// Serialize a complex matrix back into the {re, im} form.
pub fn matrix_to_json(m: &DMatrix<Complex64>) -> ComplexMatrixJson {
    let (r, c) = m.shape();
    ComplexMatrixJson {
        re: (0..r)
            .map(|i| (0..c).map(|j| m[(i, j)].re).collect())
            .collect(),
        im: Some(
            (0..r)
                .map(|i| (0..c).map(|j| m[(i, j)].im).collect())
                .collect(),
        ),
    }
}
