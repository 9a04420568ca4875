//! Dense numerical kernels: matrix exponential, ordered Schur, eigensolvers.

pub mod eig;
pub mod expm;
pub mod schur;

pub use eig::{eigendecompose, kernel_basis, solve_sylvester, zero_split, EigenDecomposition, ZeroSplit};
pub use expm::expm;
pub use schur::{real_schur, sort_descending_by_real_part, RealSchur};
