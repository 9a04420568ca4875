//! Eigendecompositions of real nonsymmetric matrices, built on the Schur
//! form, plus the invariant-subspace splits used for singular generators.

use nalgebra::{DMatrix, DVector};
use num_complex::Complex64;

use crate::error::{Error, Result};
use crate::numeric::schur::{real_schur, RealSchur};

/// Eigenvalues with right eigenvectors (columns). Eigenvectors of clustered
/// eigenvalues come from the joint numerical null space, so degenerate but
/// semisimple eigenvalues get a full set of independent vectors.
#[derive(Debug, Clone)]
pub struct EigenDecomposition {
    pub values: Vec<Complex64>,
    pub vectors: DMatrix<Complex64>,
}

/// Full eigendecomposition of a real square matrix.
pub fn eigendecompose(a: &DMatrix<f64>) -> Result<EigenDecomposition> {
    let n = a.nrows();
    let schur = real_schur(a)?;
    let values = schur.eigenvalues();
    let scale = a.norm().max(1.0);
    let cluster_tol = 1e-9 * scale;

    // group eigenvalues that are numerically identical
    let mut assigned = vec![false; n];
    let mut vectors = DMatrix::<Complex64>::zeros(n, n);
    let ac = a.map(|x| Complex64::new(x, 0.0));
    for start in 0..n {
        if assigned[start] {
            continue;
        }
        let mut cluster = vec![start];
        for j in (start + 1)..n {
            if !assigned[j] && (values[j] - values[start]).norm() <= cluster_tol {
                cluster.push(j);
            }
        }
        let mu = cluster.iter().map(|&j| values[j]).sum::<Complex64>() / cluster.len() as f64;
        let shifted = &ac - DMatrix::<Complex64>::identity(n, n) * mu;
        let svd = shifted.svd(false, true);
        let v_t = svd
            .v_t
            .ok_or_else(|| Error::SchurFailure("SVD did not return V".into()))?;
        // rows of V' with the smallest singular values span the null space
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&x, &y| {
            svd.singular_values[x]
                .partial_cmp(&svd.singular_values[y])
                .unwrap()
        });
        for (slot, &j) in cluster.iter().enumerate() {
            let row = v_t.row(order[slot]).adjoint();
            vectors.set_column(j, &row);
            assigned[j] = true;
        }
    }
    Ok(EigenDecomposition { values, vectors })
}

/// Orthonormal basis of the numerical kernel (singular values <= tol).
pub fn kernel_basis(a: &DMatrix<f64>, tol: f64) -> Result<DMatrix<f64>> {
    let svd = a.clone().svd(false, true);
    let v_t = svd
        .v_t
        .ok_or_else(|| Error::SchurFailure("SVD did not return V".into()))?;
    let cols: Vec<usize> = (0..a.ncols())
        .filter(|&j| svd.singular_values[j] <= tol)
        .collect();
    let mut out = DMatrix::<f64>::zeros(a.ncols(), cols.len());
    for (slot, &j) in cols.iter().enumerate() {
        out.set_column(slot, &v_t.row(j).transpose());
    }
    Ok(out)
}

/// Split of the dynamics x' = A x + v around the zero eigenvalue cluster:
/// the spectral projector onto the kernel-side invariant subspace and the
/// particular solution on the complementary (decaying) subspace.
#[derive(Debug, Clone)]
pub struct ZeroSplit {
    /// Spectral projector onto the zero-eigenvalue invariant subspace.
    pub projector: DMatrix<f64>,
    /// Number of eigenvalues treated as zero.
    pub kernel_dim: usize,
    /// Solution of A x = -v on the complementary subspace.
    pub particular: DVector<f64>,
}

/// Compute the zero-cluster spectral split. Eigenvalues with |Re| and |Im|
/// below `zero_tol` count as zero. Errors when `v` has a component in the
/// zero subspace (secular growth) or when a nonzero eigenvalue sits on the
/// imaginary axis inside the tolerance band is required for the split.
pub fn zero_split(a: &DMatrix<f64>, v: &DVector<f64>, zero_tol: f64) -> Result<ZeroSplit> {
    let n = a.nrows();
    let mut schur = real_schur(a)?;
    // ascending |eigenvalue|: reuse the descending sort on -|lambda| keys is
    // not expressible, so sort descending by real part first and then move
    // the zero cluster to the front by a selection pass.
    sort_zero_cluster_first(&mut schur, zero_tol)?;
    let eigs = schur.eigenvalues();
    let k = eigs.iter().take_while(|z| is_zero(z, zero_tol)).count();
    if eigs.iter().skip(k).any(|z| is_zero(z, zero_tol)) {
        return Err(Error::SchurFailure(
            "zero eigenvalues not contiguous after reordering".into(),
        ));
    }
    let t = &schur.t;
    let u = &schur.u;
    let t0 = t.view((0, 0), (k, k)).into_owned();
    let c = t.view((0, k), (k, n - k)).into_owned();
    let t1 = t.view((k, k), (n - k, n - k)).into_owned();

    // coupling Y: T0 Y - Y T1 = C
    let y = solve_sylvester(&t0, &t1, &c)?;
    let mut pi = DMatrix::<f64>::zeros(n, n);
    for i in 0..k {
        pi[(i, i)] = 1.0;
    }
    pi.view_mut((0, k), (k, n - k)).copy_from(&y);
    let projector = u * pi * u.transpose();

    let vt = u.transpose() * v;
    let v0 = vt.rows(0, k).into_owned();
    let v1 = vt.rows(k, n - k).into_owned();
    let secular = (&v0 + &y * &v1).norm();
    if secular > 1e-8 * v.norm().max(1.0) {
        return Err(Error::Singular(format!(
            "affine term drives the kernel subspace (secular residual {secular:.3e})"
        )));
    }
    let x1 = t1
        .clone()
        .lu()
        .solve(&(-&v1))
        .ok_or_else(|| Error::Singular("complement block is singular".into()))?;
    let mut xt = DVector::<f64>::zeros(n);
    xt.rows_mut(0, k).copy_from(&(-&y * &x1));
    xt.rows_mut(k, n - k).copy_from(&x1);
    let particular = u * xt;

    Ok(ZeroSplit {
        projector,
        kernel_dim: k,
        particular,
    })
}

fn is_zero(z: &Complex64, tol: f64) -> bool {
    z.re.abs() <= tol && z.im.abs() <= tol
}

/// Move every zero block to the leading positions, otherwise keeping order.
fn sort_zero_cluster_first(schur: &mut RealSchur, zero_tol: f64) -> Result<()> {
    // sort by descending "is zero" flag; stable by construction
    let mut target = 0usize;
    let mut bi = 0usize;
    while bi < schur.blocks.len() {
        let (start, size) = schur.blocks[bi];
        let z = if size == 1 {
            is_zero(&Complex64::new(schur.t[(start, start)], 0.0), zero_tol)
        } else {
            let eigs = block_pair(schur, bi);
            is_zero(&eigs.0, zero_tol) && is_zero(&eigs.1, zero_tol)
        };
        if z {
            let mut j = bi;
            while j > target {
                crate::numeric::schur::swap_blocks(schur, j - 1)?;
                j -= 1;
            }
            target += 1;
        }
        bi += 1;
    }
    Ok(())
}

fn block_pair(schur: &RealSchur, bi: usize) -> (Complex64, Complex64) {
    let (start, _) = schur.blocks[bi];
    let a = schur.t[(start, start)];
    let b = schur.t[(start, start + 1)];
    let c = schur.t[(start + 1, start)];
    let d = schur.t[(start + 1, start + 1)];
    let tr = 0.5 * (a + d);
    let disc = tr * tr - (a * d - b * c);
    if disc >= 0.0 {
        let r = disc.sqrt();
        (Complex64::new(tr + r, 0.0), Complex64::new(tr - r, 0.0))
    } else {
        let i = (-disc).sqrt();
        (Complex64::new(tr, i), Complex64::new(tr, -i))
    }
}

/// Solve A X - X B = C with the Kronecker-product linear system.
pub fn solve_sylvester(
    a: &DMatrix<f64>,
    b: &DMatrix<f64>,
    c: &DMatrix<f64>,
) -> Result<DMatrix<f64>> {
    let p = a.nrows();
    let q = b.nrows();
    if p == 0 || q == 0 {
        return Ok(DMatrix::zeros(p, q));
    }
    let mut k = DMatrix::<f64>::zeros(p * q, p * q);
    for col in 0..q {
        for row in 0..p {
            let r = col * p + row;
            for row2 in 0..p {
                k[(r, col * p + row2)] += a[(row, row2)];
            }
            for col2 in 0..q {
                k[(r, col2 * p + row)] -= b[(col2, col)];
            }
        }
    }
    let rhs = DVector::<f64>::from_fn(p * q, |r, _| c[(r % p, r / p)]);
    let x = k
        .lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular("Sylvester system is singular".into()))?;
    Ok(DMatrix::from_fn(p, q, |r, cidx| x[cidx * p + r]))
}
