//! Dense matrix exponential by Padé approximation with scaling and squaring.
//!
//! Degrees 3/5/7/9/13 are selected from the 1-norm following Higham's 2005
//! method, which keeps the backward error at the double-precision unit
//! roundoff for well-scaled inputs. Works for real and complex matrices.

use nalgebra::{ComplexField, DMatrix};

use crate::error::{Error, Result};

const THETA_3: f64 = 1.495585217958292e-2;
const THETA_5: f64 = 2.53939833006323e-1;
const THETA_7: f64 = 9.504178996162932e-1;
const THETA_9: f64 = 2.097847961257068e0;
const THETA_13: f64 = 5.371920351148152e0;

const B3: [f64; 4] = [120.0, 60.0, 12.0, 1.0];
const B5: [f64; 6] = [30240.0, 15120.0, 3360.0, 420.0, 30.0, 1.0];
const B7: [f64; 8] = [
    17297280.0, 8648640.0, 1995840.0, 277200.0, 25200.0, 1512.0, 56.0, 1.0,
];
const B9: [f64; 10] = [
    17643225600.0,
    8821612800.0,
    2075673600.0,
    302702400.0,
    30270240.0,
    2162160.0,
    110880.0,
    3960.0,
    90.0,
    1.0,
];
const B13: [f64; 14] = [
    64764752532480000.0,
    32382376266240000.0,
    7771770303897600.0,
    1187353796428800.0,
    129060195264000.0,
    10559470521600.0,
    670442572800.0,
    33522128640.0,
    1323241920.0,
    40840800.0,
    960960.0,
    16380.0,
    182.0,
    1.0,
];

fn one_norm<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> f64 {
    (0..a.ncols())
        .map(|j| a.column(j).iter().map(|x| x.clone().modulus()).sum::<f64>())
        .fold(0.0, f64::max)
}

/// exp(A) for a square matrix.
pub fn expm<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> Result<DMatrix<T>> {
    if a.nrows() != a.ncols() {
        return Err(Error::DimensionMismatch {
            expected: a.nrows(),
            got: a.ncols(),
            context: "expm requires a square matrix",
        });
    }
    let norm = one_norm(a);
    if !norm.is_finite() {
        return Err(Error::Singular("matrix exponential of non-finite matrix".into()));
    }
    if norm <= THETA_3 {
        return pade(a, &B3);
    }
    if norm <= THETA_5 {
        return pade(a, &B5);
    }
    if norm <= THETA_7 {
        return pade(a, &B7);
    }
    if norm <= THETA_9 {
        return pade(a, &B9);
    }
    let s = (norm / THETA_13).log2().ceil().max(0.0) as u32;
    let scaled = a.map(|x| x / T::from_real(2f64.powi(s as i32)));
    let mut result = pade13(&scaled)?;
    for _ in 0..s {
        result = &result * &result;
    }
    Ok(result)
}

/// Padé approximant of degree m <= 9: solve (V − U) X = (V + U).
fn pade<T: ComplexField<RealField = f64>>(a: &DMatrix<T>, b: &[f64]) -> Result<DMatrix<T>> {
    let n = a.nrows();
    let id = DMatrix::<T>::identity(n, n);
    let a2 = a * a;
    // even powers a^0, a^2, a^4, ...
    let mut even = vec![id.clone()];
    for _ in 0..(b.len() / 2 - 1) {
        even.push(even.last().unwrap() * &a2);
    }
    let mut u_inner = DMatrix::<T>::zeros(n, n);
    let mut v = DMatrix::<T>::zeros(n, n);
    for (k, p) in even.iter().enumerate() {
        u_inner += p * T::from_real(b[2 * k + 1]);
        v += p * T::from_real(b[2 * k]);
    }
    let u = a * u_inner;
    solve_pade(u, v)
}

fn pade13<T: ComplexField<RealField = f64>>(a: &DMatrix<T>) -> Result<DMatrix<T>> {
    let n = a.nrows();
    let id = DMatrix::<T>::identity(n, n);
    let b = &B13;
    let a2 = a * a;
    let a4 = &a2 * &a2;
    let a6 = &a2 * &a4;
    let u_high = &a6 * (&a6 * T::from_real(b[13]) + &a4 * T::from_real(b[11]) + &a2 * T::from_real(b[9]));
    let u_low = &a6 * T::from_real(b[7]) + &a4 * T::from_real(b[5]) + &a2 * T::from_real(b[3])
        + &id * T::from_real(b[1]);
    let u = a * (u_high + u_low);
    let v_high = &a6 * (&a6 * T::from_real(b[12]) + &a4 * T::from_real(b[10]) + &a2 * T::from_real(b[8]));
    let v = v_high
        + &a6 * T::from_real(b[6])
        + &a4 * T::from_real(b[4])
        + &a2 * T::from_real(b[2])
        + &id * T::from_real(b[0]);
    solve_pade(u, v)
}

fn solve_pade<T: ComplexField<RealField = f64>>(
    u: DMatrix<T>,
    v: DMatrix<T>,
) -> Result<DMatrix<T>> {
    let lhs = &v - &u;
    let rhs = &v + &u;
    lhs.lu()
        .solve(&rhs)
        .ok_or_else(|| Error::Singular("Padé denominator is singular".into()))
}
