//! Real Schur decomposition with eigenvalue reordering.
//!
//! nalgebra supplies the unordered quasi-triangular form; the reordering is
//! done by direct swapping of adjacent diagonal blocks (Bai–Demmel): solve a
//! small Sylvester equation for the coupling, then apply the orthogonal
//! factor of a QR decomposition to exchange the blocks. 2x2 blocks with real
//! eigenvalues are split into 1x1 blocks first so that every block carries
//! either one real eigenvalue or a complex-conjugate pair.

use nalgebra::{DMatrix, Schur};
use num_complex::Complex64;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};

/// Quasi-triangular factorization A = U T Uᵀ with known block boundaries.
#[derive(Debug, Clone)]
pub struct RealSchur {
    pub u: DMatrix<f64>,
    pub t: DMatrix<f64>,
    /// (start index, size) of each diagonal block, in order.
    pub blocks: Vec<(usize, usize)>,
}

impl RealSchur {
    /// Eigenvalues in diagonal order, one per 1x1 block, a conjugate pair per
    /// 2x2 block.
    pub fn eigenvalues(&self) -> Vec<Complex64> {
        let mut out = Vec::with_capacity(self.t.nrows());
        for &(start, size) in &self.blocks {
            if size == 1 {
                out.push(Complex64::new(self.t[(start, start)], 0.0));
            } else {
                let (l1, l2) = eig2(
                    self.t[(start, start)],
                    self.t[(start, start + 1)],
                    self.t[(start + 1, start)],
                    self.t[(start + 1, start + 1)],
                );
                out.push(l1);
                out.push(l2);
            }
        }
        out
    }
}

fn eig2(a: f64, b: f64, c: f64, d: f64) -> (Complex64, Complex64) {
    let tr = 0.5 * (a + d);
    let det = a * d - b * c;
    let disc = tr * tr - det;
    if disc >= 0.0 {
        let r = disc.sqrt();
        (Complex64::new(tr + r, 0.0), Complex64::new(tr - r, 0.0))
    } else {
        let i = (-disc).sqrt();
        (Complex64::new(tr, i), Complex64::new(tr, -i))
    }
}

/// Unordered real Schur form with real-eigenvalue 2x2 blocks split.
///
/// The QR iteration can stall on matrices with exactly repeated eigenvalues.
/// A finite iteration budget turns the stall into a failure, and a retry
/// under a fixed random orthogonal similarity (undone afterwards) breaks the
/// symmetry that caused it.
pub fn real_schur(a: &DMatrix<f64>) -> Result<RealSchur> {
    let n = a.nrows();
    if n != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: n,
            got: a.ncols(),
            context: "Schur decomposition requires a square matrix",
        });
    }
    let max_niter = 100 * n.max(10);
    let mut rng = ChaCha8Rng::seed_from_u64(0x5C4B);
    let mut rotation: Option<DMatrix<f64>> = None;
    let mut schur = Schur::try_new(a.clone(), f64::EPSILON, max_niter);
    for _ in 0..3 {
        if schur.is_some() {
            break;
        }
        let g = DMatrix::<f64>::from_fn(n, n, |_, _| StandardNormal.sample(&mut rng));
        let q = g.qr().q();
        schur = Schur::try_new(q.transpose() * a * &q, f64::EPSILON, max_niter);
        if schur.is_some() {
            rotation = Some(q);
        }
    }
    let schur =
        schur.ok_or_else(|| Error::SchurFailure("iteration did not converge".into()))?;
    let (u, mut t) = schur.unpack();
    let mut u = match rotation {
        Some(q) => q * u,
        None => u,
    };
    let scale = t.norm().max(1.0);
    // clean negligible subdiagonal fuzz, then split real-pair 2x2 blocks
    for i in 0..n.saturating_sub(1) {
        if t[(i + 1, i)].abs() <= f64::EPSILON * scale {
            t[(i + 1, i)] = 0.0;
        }
    }
    let mut i = 0;
    while i + 1 < n {
        if t[(i + 1, i)] != 0.0 {
            let (a11, a12, a21, a22) = (t[(i, i)], t[(i, i + 1)], t[(i + 1, i)], t[(i + 1, i + 1)]);
            let tr = 0.5 * (a11 + a22);
            let disc = tr * tr - (a11 * a22 - a12 * a21);
            if disc >= 0.0 {
                // real eigenvalues: rotate so the block becomes triangular
                let r = disc.sqrt();
                let l = if (tr + r - a11).abs() >= (tr - r - a11).abs() {
                    tr + r
                } else {
                    tr - r
                };
                // eigenvector of the block for eigenvalue l
                let (v0, v1) = if a12.abs().max((l - a11).abs()) >= (l - a22).abs().max(a21.abs())
                {
                    (a12, l - a11)
                } else {
                    (l - a22, a21)
                };
                let nv = (v0 * v0 + v1 * v1).sqrt();
                if nv > 0.0 {
                    let (c, s) = (v0 / nv, v1 / nv);
                    let g = DMatrix::<f64>::from_row_slice(2, 2, &[c, -s, s, c]);
                    apply_window(&mut t, &mut u, i, &g);
                    t[(i + 1, i)] = 0.0;
                }
            }
            i += 2;
        } else {
            i += 1;
        }
    }
    let blocks = scan_blocks(&t);
    Ok(RealSchur { u, t, blocks })
}

fn scan_blocks(t: &DMatrix<f64>) -> Vec<(usize, usize)> {
    let n = t.nrows();
    let mut blocks = Vec::new();
    let mut i = 0;
    while i < n {
        if i + 1 < n && t[(i + 1, i)] != 0.0 {
            blocks.push((i, 2));
            i += 2;
        } else {
            blocks.push((i, 1));
            i += 1;
        }
    }
    blocks
}

/// Apply the window transform T <- V' T V, U <- U V where V is the identity
/// with an orthogonal `q` inserted at `start`.
fn apply_window(t: &mut DMatrix<f64>, u: &mut DMatrix<f64>, start: usize, q: &DMatrix<f64>) {
    let w = q.nrows();
    let rows = t.rows(start, w).into_owned();
    t.rows_mut(start, w).copy_from(&(q.transpose() * rows));
    let cols = t.columns(start, w).into_owned();
    t.columns_mut(start, w).copy_from(&(cols * q));
    let ucols = u.columns(start, w).into_owned();
    u.columns_mut(start, w).copy_from(&(ucols * q));
}

/// Swap the adjacent diagonal blocks at positions `bi` and `bi + 1`.
pub(crate) fn swap_blocks(schur: &mut RealSchur, bi: usize) -> Result<()> {
    let (i, p) = schur.blocks[bi];
    let (_, q) = schur.blocks[bi + 1];
    let w = p + q;
    let a11 = schur.t.view((i, i), (p, p)).into_owned();
    let a12 = schur.t.view((i, i + p), (p, q)).into_owned();
    let a22 = schur.t.view((i + p, i + p), (q, q)).into_owned();

    // Sylvester A11 X - X A22 = A12 via Kronecker form
    let mut k = DMatrix::<f64>::zeros(p * q, p * q);
    for col in 0..q {
        for row in 0..p {
            let r = col * p + row;
            for col2 in 0..q {
                for row2 in 0..p {
                    let c = col2 * p + row2;
                    let mut val = 0.0;
                    if col == col2 {
                        val += a11[(row, row2)];
                    }
                    if row == row2 {
                        val -= a22[(col2, col)];
                    }
                    k[(r, c)] += val;
                }
            }
        }
    }
    let rhs = DMatrix::<f64>::from_fn(p * q, 1, |r, _| a12[(r % p, r / p)]);
    let x = k
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::SchurFailure("block swap Sylvester equation is singular".into()))?;

    // Q from the full QR of [-X; I_q]
    let mut g = DMatrix::<f64>::zeros(w, q);
    for col in 0..q {
        for row in 0..p {
            g[(row, col)] = -x[(col * p + row, 0)];
        }
        g[(p + col, col)] = 1.0;
    }
    let q_full = full_householder_q(&g);

    apply_window(&mut schur.t, &mut schur.u, i, &q_full);

    // the lower-left block must now be numerically zero
    let resid = schur.t.view((i + q, i), (p, q)).norm();
    let scale = schur.t.norm().max(1.0);
    if resid > 1e-8 * scale {
        return Err(Error::SchurFailure(format!(
            "block swap left residual {resid:.3e}"
        )));
    }
    for r in 0..p {
        for c in 0..q {
            schur.t[(i + q + r, i + c)] = 0.0;
        }
    }
    schur.blocks[bi] = (i, q);
    schur.blocks[bi + 1] = (i + q, p);
    Ok(())
}

/// Full orthogonal factor of the QR decomposition of a tall matrix.
fn full_householder_q(g: &DMatrix<f64>) -> DMatrix<f64> {
    let m = g.nrows();
    let cols = g.ncols();
    let mut r = g.clone();
    let mut q = DMatrix::<f64>::identity(m, m);
    for col in 0..cols.min(m - 1) {
        let tail = m - col;
        let mut v = DMatrix::<f64>::zeros(tail, 1);
        for row in 0..tail {
            v[(row, 0)] = r[(col + row, col)];
        }
        let alpha = -v[(0, 0)].signum() * v.norm();
        if alpha == 0.0 {
            continue;
        }
        v[(0, 0)] -= alpha;
        let vn = v.norm();
        if vn <= f64::EPSILON * alpha.abs() {
            continue;
        }
        v /= vn;
        // H = I - 2 v v', applied to the trailing rows of R and columns of Q
        let rt = r.rows(col, tail).into_owned();
        r.rows_mut(col, tail)
            .copy_from(&(&rt - &v * (v.transpose() * rt.clone()) * 2.0));
        let qt = q.columns(col, tail).into_owned();
        q.columns_mut(col, tail)
            .copy_from(&(&qt - (qt.clone() * &v) * v.transpose() * 2.0));
    }
    q
}

/// Reorder the Schur form so block eigenvalue real parts appear in
/// decreasing order. Real parts within `zero_tol` of zero compare as zero,
/// and keys closer than a near-tie margin are never swapped: swapping blocks
/// with (numerically) coincident eigenvalues makes the exchange Sylvester
/// equation singular, and their relative order carries no information.
/// Defective eigenvalues split by O(sqrt(eps)), which sets the margin floor.
pub fn sort_descending_by_real_part(schur: &mut RealSchur, zero_tol: f64) -> Result<()> {
    let margin = zero_tol.max(f64::EPSILON.sqrt() * schur.t.norm());
    let key = |schur: &RealSchur, bi: usize| -> f64 {
        let (start, _) = schur.blocks[bi];
        let re = if schur.blocks[bi].1 == 1 {
            schur.t[(start, start)]
        } else {
            0.5 * (schur.t[(start, start)] + schur.t[(start + 1, start + 1)])
        };
        if re.abs() <= zero_tol {
            0.0
        } else {
            re
        }
    };
    let nb = schur.blocks.len();
    for pos in 0..nb {
        // leftmost key that no other key beats by more than the margin
        let mut best = pos;
        let mut best_key = key(schur, pos);
        for j in (pos + 1)..nb {
            let kj = key(schur, j);
            if kj > best_key + margin {
                best = j;
                best_key = kj;
            }
        }
        let mut j = best;
        while j > pos {
            swap_blocks(schur, j - 1)?;
            j -= 1;
        }
    }
    Ok(())
}
