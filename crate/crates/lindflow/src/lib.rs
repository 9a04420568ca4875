//! Finite-dimensional Lindblad dynamics as gradient flow.
//!
//! The generator L(ρ) = Σ_α [B_α ρ B_α† − ½{B_α†B_α, ρ}] splits exactly into
//! a steepest-descent part −∂Φ/∂ρᵀ and a solenoidal part R(ρ). In the
//! generalized Bloch-vector picture the same dynamics is the affine flow
//! da/dt = M a + v, and an orthogonal Helmholtz-Hodge decomposition
//! (M a + v) = −(P a + p) + [(M + P) a + v + p] turns the quadratic form
//! ½aᵀPa + pᵀa into a Lyapunov function whose minima are the steady states.
//! P solves the degenerate algebraic Riccati equation MᵀP + PM + 2P² = 0,
//! constructed here through an ordered real Schur decomposition.
//!
//! Modules, bottom-up:
//!
//! - [`algebra`] — su(D) basis (generalized Gell-Mann matrices), sparse
//!   structure tensors f and d, wedge and star products.
//! - [`bloch`] — density matrices, Bloch vectors, jump vectors, purity and
//!   positivity diagnostics.
//! - [`lindblad`] — matrix-space generator, potential Φ, its gradient, the
//!   solenoidal field R, the complexified potential, superoperator
//!   materialization, matrix Laplacian.
//! - [`dynamics`] — the Bloch generator (M, v), steady states, relaxation
//!   spectra, trajectories, closed-form qubit/qutrit results.
//! - [`hhd`] — the orthogonal decomposition (P, p), residual gating, and
//!   Lyapunov monotonicity checks.
//! - [`config`] / [`runner`] — JSON model configs, command execution, and
//!   deterministic file output for the `lindflow` binary.
//!
//! Each major capability has a runnable demonstration under `examples/`:
//!
//! ```text
//! cargo run --example structure_constants   # su(D) tensors + identities
//! cargo run --example qubit_dephasing       # Hermitian jumps, purity decay
//! cargo run --example qubit_nonhermitian    # closed-form spectrum/steady state
//! cargo run --example qutrit_spectrum       # cubic-root rates, star symmetry
//! cargo run --example gradient_split        # L = −∂Φ/∂ρᵀ + R diagnostics
//! cargo run --example amplitude_damping     # the worked D = 3 channel
//! cargo run --example hhd_lyapunov          # orthogonal decomposition + Φ̃(t)
//! ```
//!
//! The `lindflow` binary drives the same machinery from a JSON config; see
//! `configs/` for samples.

pub mod algebra;
pub mod bloch;
pub mod config;
pub mod dynamics;
pub mod error;
pub mod hhd;
pub mod lindblad;
pub mod numeric;
pub mod runner;
pub mod sampling;

pub use error::{Error, Result};
