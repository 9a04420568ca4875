//! Generalized Gell-Mann basis of su(D) and its structure tensors.
//!
//! The basis follows the standard dimension-ascending order that reduces to
//! the Pauli matrices at D = 2 and the Gell-Mann matrices at D = 3: for each
//! level l = 2..D, the symmetric and antisymmetric off-diagonal pairs
//! (j, l) for j < l, followed by the l-th diagonal generator. All matrices
//! satisfy Tr[λ_j λ_k] = 2 δ_jk.
//!
//! The antisymmetric tensor f and symmetric tensor d are stored sparsely in
//! coordinate format with every nonzero permutation listed, which keeps the
//! contraction kernels (`wedge`, `star`) branch-free.

use nalgebra::{ComplexField, DMatrix, DVector};
use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};

/// Entries smaller than this are pruned from the sparse tensors.
pub const TENSOR_PRUNE_TOL: f64 = 1e-12;
/// Structure coefficients must be real up to this residue.
const IMAG_RESIDUE_TOL: f64 = 1e-10;

/// Real coefficient vector in the adjoint representation (length D² − 1).
pub type AdjointVector = DVector<f64>;
/// Complex coefficient vector in the adjoint representation.
pub type ComplexAdjointVector = DVector<Complex64>;

/// One nonzero entry of a rank-3 tensor, 0-based indices.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TensorEntry {
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: f64,
}

/// Serialized form of a tensor entry, 1-based indices.
#[derive(Debug, Clone, Copy, Serialize)]
pub struct TensorEntryJson {
    pub j: usize,
    pub k: usize,
    pub l: usize,
    pub value: f64,
}

/// Sparse rank-3 tensor over adjoint indices.
#[derive(Debug, Clone)]
pub struct StructureTensor {
    n: usize,
    entries: Vec<TensorEntry>,
}

impl StructureTensor {
    /// Side length of each index (D² − 1).
    pub fn index_len(&self) -> usize {
        self.n
    }

    pub fn entries(&self) -> &[TensorEntry] {
        &self.entries
    }

    /// Tensor value at (j, k, l); zero when the triple is not stored.
    pub fn get(&self, j: usize, k: usize, l: usize) -> f64 {
        self.entries
            .iter()
            .find(|e| e.j == j && e.k == k && e.l == l)
            .map_or(0.0, |e| e.value)
    }

    /// Contraction out_j = Σ_{kl} t_{jkl} a_k b_l over real or complex vectors.
    pub fn contract<T>(&self, a: &DVector<T>, b: &DVector<T>) -> Result<DVector<T>>
    where
        T: ComplexField<RealField = f64>,
    {
        check_len(self.n, a.len(), "tensor contraction, first argument")?;
        check_len(self.n, b.len(), "tensor contraction, second argument")?;
        let mut out = DVector::<T>::zeros(self.n);
        for e in &self.entries {
            out[e.j] += a[e.k].clone() * b[e.l].clone() * T::from_real(e.value);
        }
        Ok(out)
    }

    /// Matrix of the map a ↦ Σ_k t_{jkl} c_k a_l for a fixed left vector c.
    pub fn left_contraction_matrix(&self, c: &DVector<f64>) -> Result<DMatrix<f64>> {
        check_len(self.n, c.len(), "tensor contraction, fixed vector")?;
        let mut out = DMatrix::<f64>::zeros(self.n, self.n);
        for e in &self.entries {
            out[(e.j, e.l)] += e.value * c[e.k];
        }
        Ok(out)
    }

    /// Dense copy, mainly for test oracles.
    pub fn dense(&self) -> Vec<f64> {
        let n = self.n;
        let mut t = vec![0.0; n * n * n];
        for e in &self.entries {
            t[(e.j * n + e.k) * n + e.l] = e.value;
        }
        t
    }

    /// Coordinate-list export with 1-based indices.
    pub fn coordinate_list(&self) -> Vec<TensorEntryJson> {
        self.entries
            .iter()
            .map(|e| TensorEntryJson {
                j: e.j + 1,
                k: e.k + 1,
                l: e.l + 1,
                value: e.value,
            })
            .collect()
    }
}

/// Orthonormal traceless Hermitian basis of su(D) with cached f and d tensors.
#[derive(Debug, Clone)]
pub struct SuBasis {
    dim: usize,
    lambdas: Vec<DMatrix<Complex64>>,
    f: StructureTensor,
    d: StructureTensor,
}

impl SuBasis {
    /// Generate the basis for dimension D ≥ 2 and compute its tensors.
    pub fn generate(dim: usize) -> Result<Self> {
        if dim < 2 {
            return Err(Error::DimensionTooSmall(dim));
        }
        let lambdas = gell_mann_matrices(dim);
        let f = structure_constants(&lambdas)?;
        let d = d_coefficients(&lambdas)?;
        Ok(SuBasis {
            dim,
            lambdas,
            f,
            d,
        })
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    /// Number of generators, D² − 1.
    pub fn adjoint_len(&self) -> usize {
        self.dim * self.dim - 1
    }

    pub fn lambdas(&self) -> &[DMatrix<Complex64>] {
        &self.lambdas
    }

    /// Antisymmetric structure constants f_{jkl}.
    pub fn f(&self) -> &StructureTensor {
        &self.f
    }

    /// Symmetric d-coefficients d_{jkl}.
    pub fn d(&self) -> &StructureTensor {
        &self.d
    }

    /// Wedge product (a ∧ b)_j = f_{jkl} a_k b_l.
    pub fn wedge<T>(&self, a: &DVector<T>, b: &DVector<T>) -> Result<DVector<T>>
    where
        T: ComplexField<RealField = f64>,
    {
        self.f.contract(a, b)
    }

    /// Star product (a ⋆ b)_j = d_{jkl} a_k b_l.
    pub fn star<T>(&self, a: &DVector<T>, b: &DVector<T>) -> Result<DVector<T>>
    where
        T: ComplexField<RealField = f64>,
    {
        self.d.contract(a, b)
    }

    /// Matrix of a ↦ w ∧ a for fixed real w.
    pub fn wedge_matrix(&self, w: &DVector<f64>) -> Result<DMatrix<f64>> {
        self.f.left_contraction_matrix(w)
    }

    /// Matrix of a ↦ b ⋆ a for fixed real b.
    pub fn star_matrix(&self, b: &DVector<f64>) -> Result<DMatrix<f64>> {
        self.d.left_contraction_matrix(b)
    }

    /// Expand adjoint coefficients into the matrix Σ_j x_j λ_j.
    pub fn expand(&self, x: &DVector<Complex64>) -> Result<DMatrix<Complex64>> {
        check_len(self.adjoint_len(), x.len(), "adjoint expansion")?;
        let mut m = DMatrix::<Complex64>::zeros(self.dim, self.dim);
        for (xj, lambda) in x.iter().zip(&self.lambdas) {
            m += lambda * *xj;
        }
        Ok(m)
    }

    /// Coefficients x_j = Tr[X λ_j] / 2 of the traceless part of X.
    pub fn coefficients(&self, x: &DMatrix<Complex64>) -> Result<DVector<Complex64>> {
        check_len(self.dim, x.nrows(), "matrix rows")?;
        check_len(self.dim, x.ncols(), "matrix cols")?;
        let coeffs = self
            .lambdas
            .iter()
            .map(|lambda| (x * lambda).trace() * Complex64::new(0.5, 0.0))
            .collect::<Vec<_>>();
        Ok(DVector::from_vec(coeffs))
    }
}

pub(crate) fn check_len(expected: usize, got: usize, context: &'static str) -> Result<()> {
    if expected == got {
        Ok(())
    } else {
        Err(Error::DimensionMismatch {
            expected,
            got,
            context,
        })
    }
}

/// The generalized Gell-Mann matrices in standard order.
fn gell_mann_matrices(dim: usize) -> Vec<DMatrix<Complex64>> {
    let mut out = Vec::with_capacity(dim * dim - 1);
    let one = Complex64::new(1.0, 0.0);
    let i = Complex64::new(0.0, 1.0);
    for l in 1..dim {
        for j in 0..l {
            let mut sym = DMatrix::<Complex64>::zeros(dim, dim);
            sym[(j, l)] = one;
            sym[(l, j)] = one;
            out.push(sym);
            let mut asym = DMatrix::<Complex64>::zeros(dim, dim);
            asym[(j, l)] = -i;
            asym[(l, j)] = i;
            out.push(asym);
        }
        let norm = (2.0 / (l as f64 * (l as f64 + 1.0))).sqrt();
        let mut diag = DMatrix::<Complex64>::zeros(dim, dim);
        for m in 0..l {
            diag[(m, m)] = Complex64::new(norm, 0.0);
        }
        diag[(l, l)] = Complex64::new(-(l as f64) * norm, 0.0);
        out.push(diag);
    }
    out
}

/// f_{jkl} = −(i/4) Tr([λ_j, λ_k] λ_l), stored with all signed permutations.
pub fn structure_constants(lambdas: &[DMatrix<Complex64>]) -> Result<StructureTensor> {
    let n = lambdas.len();
    let quarter_i = Complex64::new(0.0, -0.25);
    let mut entries = Vec::new();
    for j in 0..n {
        for k in (j + 1)..n {
            let comm = &lambdas[j] * &lambdas[k] - &lambdas[k] * &lambdas[j];
            for (l, lambda_l) in lambdas.iter().enumerate().skip(k + 1) {
                let value = realify(quarter_i * (&comm * lambda_l).trace())?;
                if value.abs() <= TENSOR_PRUNE_TOL {
                    continue;
                }
                // all six permutations, with parity sign
                entries.push(TensorEntry { j, k, l, value });
                entries.push(TensorEntry {
                    j: k,
                    k: l,
                    l: j,
                    value,
                });
                entries.push(TensorEntry {
                    j: l,
                    k: j,
                    l: k,
                    value,
                });
                entries.push(TensorEntry {
                    j: k,
                    k: j,
                    l,
                    value: -value,
                });
                entries.push(TensorEntry {
                    j,
                    k: l,
                    l: k,
                    value: -value,
                });
                entries.push(TensorEntry {
                    j: l,
                    k,
                    l: j,
                    value: -value,
                });
            }
        }
    }
    sort_entries(&mut entries);
    Ok(StructureTensor { n, entries })
}

/// d_{jkl} = (1/4) Tr({λ_j, λ_k} λ_l), stored with all permutations.
pub fn d_coefficients(lambdas: &[DMatrix<Complex64>]) -> Result<StructureTensor> {
    let n = lambdas.len();
    let mut entries = Vec::new();
    for j in 0..n {
        for k in j..n {
            let anti = &lambdas[j] * &lambdas[k] + &lambdas[k] * &lambdas[j];
            for (l, lambda_l) in lambdas.iter().enumerate().skip(k) {
                let value = realify((&anti * lambda_l).trace() * 0.25)?;
                if value.abs() <= TENSOR_PRUNE_TOL {
                    continue;
                }
                let mut perms = [
                    (j, k, l),
                    (j, l, k),
                    (k, j, l),
                    (k, l, j),
                    (l, j, k),
                    (l, k, j),
                ];
                perms.sort_unstable();
                let mut last = None;
                for p in perms {
                    if Some(p) != last {
                        entries.push(TensorEntry {
                            j: p.0,
                            k: p.1,
                            l: p.2,
                            value,
                        });
                        last = Some(p);
                    }
                }
            }
        }
    }
    sort_entries(&mut entries);
    Ok(StructureTensor { n, entries })
}

fn sort_entries(entries: &mut [TensorEntry]) {
    entries.sort_unstable_by_key(|e| (e.j, e.k, e.l));
}

fn realify(z: Complex64) -> Result<f64> {
    if z.im.abs() > IMAG_RESIDUE_TOL {
        Err(Error::BasisCorrupt(format!(
            "structure coefficient has imaginary residue {:.3e}",
            z.im
        )))
    } else {
        Ok(z.re)
    }
}
