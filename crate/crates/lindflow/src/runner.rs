//! Command execution and deterministic output serialization.
//!
//! `run` executes the requested commands in the fixed order
//! validate → steady-state → spectrum → decompose → simulate, writes
//! `steady_state.json`, `spectrum.json`, `hhd.json`, `trajectory.csv` and
//! `report.json` into the output directory, and returns the report. Output
//! is byte-identical across runs of the same config except for the
//! timestamp field. The validation suite draws its probes from a fixed-seed
//! generator, so its residuals are deterministic too.

use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use std::path::Path;

use crate::algebra::SuBasis;
use crate::bloch::{bloch_coords_real, from_bloch, to_bloch, BlochVector};
use crate::config::{matrix_to_json, Command, ComplexMatrixJson, InitialState, ModelConfig};
use crate::dynamics::{
    build_generator, evolve, spectrum, steady_state_detailed, BlochGenerator, Trajectory,
};
use crate::error::{Error, Result};
use crate::hhd::HHDecomposition;
use crate::lindblad::{
    grad_phi, lindbladian, materialize, potential_phi, solenoidal_r, LindbladModel,
    SuperoperatorKind,
};
use crate::sampling;

/// Identifies the generator ordering so serialized Bloch components are
/// interpretable across versions.
pub const BASIS_ORDERING_TAG: &str = "gell-mann-interleaved";

const VALIDATION_SEED: u64 = 0x4c49_4e44;
const VALIDATION_PROBES: usize = 20;

#[derive(Debug, Clone, Serialize)]
pub struct Provenance {
    pub config_sha256: String,
    pub library_version: String,
    pub basis_ordering: String,
    pub timestamp_unix: u64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ValidationItem {
    pub name: String,
    pub residual: f64,
    pub tolerance: f64,
    pub pass: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub note: Option<String>,
}

#[derive(Debug, Clone, Serialize)]
pub struct StateOutput {
    pub bloch: Vec<f64>,
    pub matrix: ComplexMatrixJson,
    pub purity: f64,
    pub positive: bool,
    pub method: String,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComplexJson {
    pub re: f64,
    pub im: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct SpectrumOutput {
    pub eigenvalues: Vec<ComplexJson>,
    pub rates: Vec<f64>,
}

#[derive(Debug, Clone, Serialize)]
pub struct HhdResidualsJson {
    pub riccati: f64,
    pub linear: f64,
    pub scalar: f64,
    pub trace: f64,
    pub orthogonality: f64,
    pub symmetry: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct HhdOutput {
    pub p_matrix: Vec<Vec<f64>>,
    pub p_vector: Vec<f64>,
    pub residuals: HhdResidualsJson,
    /// Entries scale as gamma^gamma_power when every jump is scaled by gamma.
    pub gamma_power: i32,
}

#[derive(Debug, Clone, Serialize)]
pub struct RunReport {
    pub provenance: Provenance,
    pub dim: usize,
    pub commands_run: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub validation: Option<Vec<ValidationItem>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub steady_state: Option<StateOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub spectrum: Option<SpectrumOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub hhd: Option<HhdOutput>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub trajectory_file: Option<String>,
    pub failures: Vec<String>,
    pub success: bool,
}

/// 17 significant digits, locale-independent.
pub fn format_float(x: f64) -> String {
    format!("{x:.16e}")
}

/// Execute the config's commands; `out_dir` receives the output files.
pub fn run(config: &ModelConfig, out_dir: &Path) -> Result<RunReport> {
    std::fs::create_dir_all(out_dir)?;
    let basis = SuBasis::generate(config.dim)?;
    let model = LindbladModel::new(config.jumps.clone(), &basis)?;
    let gen = build_generator(&model, &basis)?;
    let a0 = initial_bloch(config, &basis)?;

    let mut report = RunReport {
        provenance: Provenance {
            config_sha256: config.config_sha256.clone(),
            library_version: env!("CARGO_PKG_VERSION").to_string(),
            basis_ordering: BASIS_ORDERING_TAG.to_string(),
            timestamp_unix: std::time::SystemTime::now()
                .duration_since(std::time::UNIX_EPOCH)
                .map(|d| d.as_secs())
                .unwrap_or(0),
        },
        dim: config.dim,
        commands_run: Vec::new(),
        validation: None,
        steady_state: None,
        spectrum: None,
        hhd: None,
        trajectory_file: None,
        failures: Vec::new(),
        success: true,
    };

    let mut decomposition: Option<HHDecomposition> = None;
    for command in Command::EXECUTION_ORDER {
        if !config.commands.contains(&command) {
            continue;
        }
        report.commands_run.push(command.name().to_string());
        let outcome = match command {
            Command::Validate => {
                let items = validate(config, &basis, &model, &gen)?;
                let all_pass = items.iter().all(|i| i.pass);
                report.validation = Some(items);
                if all_pass {
                    Ok(())
                } else {
                    Err(Error::Config("validation suite reported failures".into()))
                }
            }
            Command::SteadyState => steady_state_command(&gen, &basis, a0.as_ref(), out_dir)
                .map(|out| report.steady_state = Some(out)),
            Command::Spectrum => {
                spectrum_command(&gen, out_dir).map(|out| report.spectrum = Some(out))
            }
            Command::Decompose => decompose_command(&gen, out_dir).map(|(out, dec)| {
                report.hhd = Some(out);
                decomposition = Some(dec);
            }),
            Command::Simulate => {
                simulate_command(config, &gen, a0.as_ref(), decomposition.as_ref(), out_dir)
                    .map(|file| report.trajectory_file = Some(file))
            }
        };
        if let Err(e) = outcome {
            report.success = false;
            report
                .failures
                .push(format!("{}: {e}", command.name()));
        }
    }
    let json = serde_json::to_string_pretty(&report)?;
    std::fs::write(out_dir.join("report.json"), json + "\n")?;
    Ok(report)
}

fn initial_bloch(config: &ModelConfig, basis: &SuBasis) -> Result<Option<BlochVector>> {
    match &config.initial_state {
        None => Ok(None),
        Some(InitialState::Bloch(a)) => Ok(Some(a.clone())),
        Some(InitialState::Matrix(rho)) => Ok(Some(to_bloch(rho, basis)?)),
    }
}

fn steady_state_command(
    gen: &BlochGenerator,
    basis: &SuBasis,
    a0: Option<&BlochVector>,
    out_dir: &Path,
) -> Result<StateOutput> {
    let (ss, method) = steady_state_detailed(gen, a0)?;
    let image = from_bloch(&ss, basis)?;
    let out = StateOutput {
        bloch: ss.coords().iter().cloned().collect(),
        matrix: matrix_to_json(&image.matrix),
        purity: ss.purity(),
        positive: image.positive,
        method: method.describe().to_string(),
    };
    write_json(out_dir.join("steady_state.json"), &out)?;
    Ok(out)
}

fn spectrum_command(gen: &BlochGenerator, out_dir: &Path) -> Result<SpectrumOutput> {
    let spec = spectrum(gen)?;
    let out = SpectrumOutput {
        eigenvalues: spec
            .eigenvalues
            .iter()
            .map(|z| ComplexJson { re: z.re, im: z.im })
            .collect(),
        rates: spec.rates.clone(),
    };
    write_json(out_dir.join("spectrum.json"), &out)?;
    Ok(out)
}

fn decompose_command(
    gen: &BlochGenerator,
    out_dir: &Path,
) -> Result<(HhdOutput, HHDecomposition)> {
    let dec = HHDecomposition::compute(gen)?;
    let n = dec.p_matrix().nrows();
    let r = dec.residuals();
    let out = HhdOutput {
        p_matrix: (0..n)
            .map(|i| (0..n).map(|j| dec.p_matrix()[(i, j)]).collect())
            .collect(),
        p_vector: dec.p_vector().iter().cloned().collect(),
        residuals: HhdResidualsJson {
            riccati: r.riccati,
            linear: r.linear,
            scalar: r.scalar,
            trace: r.trace,
            orthogonality: r.orthogonality,
            symmetry: r.symmetry,
        },
        gamma_power: 2,
    };
    write_json(out_dir.join("hhd.json"), &out)?;
    Ok((out, dec))
}

fn simulate_command(
    config: &ModelConfig,
    gen: &BlochGenerator,
    a0: Option<&BlochVector>,
    dec: Option<&HHDecomposition>,
    out_dir: &Path,
) -> Result<String> {
    let a0 = a0.ok_or_else(|| Error::Config("simulate requires an initial_state".into()))?;
    let times = config
        .times
        .as_ref()
        .ok_or_else(|| Error::Config("simulate requires a time_grid".into()))?;
    let mut traj = evolve(gen, a0, times)?;
    if let Some(dec) = dec {
        traj.record_potential(|a| dec.potential(a).unwrap_or(f64::NAN));
    }
    let name = "trajectory.csv";
    std::fs::write(out_dir.join(name), trajectory_csv(&traj))?;
    Ok(name.to_string())
}

/// CSV with header `t,a_1..a_n,purity[,phi]`, 17 significant digits, LF.
pub fn trajectory_csv(traj: &Trajectory) -> String {
    let n = traj.states.first().map_or(0, |s| s.coords().len());
    let mut out = String::new();
    out.push('t');
    for j in 1..=n {
        out.push_str(&format!(",a_{j}"));
    }
    out.push_str(",purity");
    if traj.potential.is_some() {
        out.push_str(",phi");
    }
    out.push('\n');
    for (k, &t) in traj.times.iter().enumerate() {
        out.push_str(&format_float(t));
        for x in traj.states[k].coords().iter() {
            out.push(',');
            out.push_str(&format_float(*x));
        }
        out.push(',');
        out.push_str(&format_float(traj.purity[k]));
        if let Some(phi) = &traj.potential {
            out.push(',');
            out.push_str(&format_float(phi[k]));
        }
        out.push('\n');
    }
    out
}

fn write_json<T: Serialize>(path: std::path::PathBuf, value: &T) -> Result<()> {
    let json = serde_json::to_string_pretty(value)?;
    std::fs::write(path, json + "\n")?;
    Ok(())
}

/// Run the invariant suites at the configured model. Deterministic: probes
/// come from a fixed-seed generator.
pub fn validate(
    config: &ModelConfig,
    basis: &SuBasis,
    model: &LindbladModel,
    gen: &BlochGenerator,
) -> Result<Vec<ValidationItem>> {
    let tol = config.tolerances;
    let mut rng = ChaCha8Rng::seed_from_u64(VALIDATION_SEED);
    let mut items = Vec::new();
    let item = |name: &str, residual: f64, tolerance: f64, note: Option<String>| ValidationItem {
        name: name.to_string(),
        residual,
        tolerance,
        pass: residual <= tolerance,
        note,
    };

    // basis orthonormality max |Tr[l_j l_k] − 2δ_jk|
    let mut basis_res: f64 = 0.0;
    for (j, lj) in basis.lambdas().iter().enumerate() {
        for (k, lk) in basis.lambdas().iter().enumerate() {
            let want = if j == k { 2.0 } else { 0.0 };
            basis_res = basis_res.max(((lj * lk).trace() - Complex64::new(want, 0.0)).norm());
        }
    }
    items.push(item("basis-orthonormality", basis_res, tol.structural, None));

    // jump vector reconstruction
    let mut rec_res: f64 = 0.0;
    for (jv, b) in model.jump_vectors().iter().zip(model.jumps()) {
        rec_res = rec_res.max((jv.reconstruct(basis)? - b).norm());
    }
    items.push(item("jump-reconstruction", rec_res, tol.structural, None));

    let probes: Vec<_> = (0..VALIDATION_PROBES)
        .map(|_| sampling::random_density(config.dim, &mut rng))
        .collect();

    let mut trace_res: f64 = 0.0;
    let mut herm_res: f64 = 0.0;
    let mut split_res: f64 = 0.0;
    let mut purity_res: f64 = 0.0;
    let mut bloch_res: f64 = 0.0;
    for rho in &probes {
        let l = lindbladian(model, rho.matrix())?;
        trace_res = trace_res.max(l.trace().norm());
        herm_res = herm_res.max((&l - l.adjoint()).norm());
        let g = grad_phi(model, rho.matrix())?;
        let r = solenoidal_r(model, rho.matrix())?;
        split_res = split_res.max((&l + &g - &r).norm());
        let phi = potential_phi(model, rho.matrix())?;
        purity_res = purity_res.max((2.0 * (rho.matrix() * &l).trace().re + 4.0 * phi).abs());
        let a = to_bloch(rho, basis)?;
        let lhs = bloch_coords_real(&l, basis)?;
        bloch_res = bloch_res.max((lhs - gen.apply(a.coords())?).norm());
    }
    items.push(item("trace-preservation", trace_res, tol.structural, None));
    items.push(item("hermiticity-preservation", herm_res, tol.structural, None));
    items.push(item("gradient-solenoid-split", split_res, tol.structural, None));
    items.push(item("purity-law", purity_res, tol.spectral, None));
    items.push(item("generator-consistency", bloch_res, tol.spectral, None));

    let spec = spectrum(gen)?;
    let max_re = spec
        .eigenvalues
        .iter()
        .map(|z| z.re)
        .fold(f64::NEG_INFINITY, f64::max);
    items.push(item("dissipativity", max_re.max(0.0), tol.spectral, None));

    let r_map = materialize(SuperoperatorKind::RMap, model);
    items.push(item(
        "solenoidal-divergence",
        r_map.divergence().norm(),
        tol.spectral,
        None,
    ));

    match HHDecomposition::compute(gen) {
        Ok(dec) => {
            let r = dec.residuals();
            let scale = gen.matrix().norm().max(1.0);
            items.push(item("hhd-riccati", r.riccati, tol.residual * scale * scale, None));
            items.push(item("hhd-linear", r.linear, tol.residual * scale * scale, None));
            items.push(item("hhd-scalar", r.scalar, tol.residual * scale * scale, None));
            items.push(item("hhd-trace", r.trace, tol.residual * scale, None));
            items.push(item("hhd-orthogonality", r.orthogonality, tol.residual, None));
        }
        Err(e) => {
            items.push(ValidationItem {
                name: "hhd-residuals".into(),
                residual: f64::INFINITY,
                tolerance: tol.residual,
                pass: false,
                note: Some(format!("decomposition unavailable: {e}")),
            });
        }
    }

    let note = if model.is_traceless() {
        None
    } else {
        Some("non-traceless jumps: wedge correction folded into the generator".to_string())
    };
    items.push(ValidationItem {
        name: "jump-trace-handling".into(),
        residual: 0.0,
        tolerance: tol.structural,
        pass: true,
        note,
    });

    Ok(items)
}
