//! Complex tridiagonal elimination and the shifted Neumann operator it solves.

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Pivots smaller than this abort the elimination.
pub const PIVOT_FLOOR: f64 = 1e-14;

/// Thomas algorithm (no pivoting) for `lower[i] x[i−1] + diag[i] x[i] + upper[i] x[i+1] = rhs[i]`.
///
/// `lower[0]` and `upper[n−1]` are ignored.
pub fn solve_tridiagonal(
    lower: &[Complex64],
    diag: &[Complex64],
    upper: &[Complex64],
    rhs: &[Complex64],
) -> Result<Vec<Complex64>> {
    let n = diag.len();
    assert!(lower.len() == n && upper.len() == n && rhs.len() == n);
    let mut c = vec![Complex64::new(0.0, 0.0); n];
    let mut x = vec![Complex64::new(0.0, 0.0); n];

    let mut pivot = diag[0];
    for i in 0..n {
        if i > 0 {
            pivot = diag[i] - lower[i] * c[i - 1];
        }
        if pivot.norm() < PIVOT_FLOOR {
            return Err(Error::SingularSystem { row: i, pivot: pivot.norm() });
        }
        c[i] = if i + 1 < n { upper[i] / pivot } else { Complex64::new(0.0, 0.0) };
        x[i] = if i == 0 { rhs[0] / pivot } else { (rhs[i] - lower[i] * x[i - 1]) / pivot };
    }
    for i in (0..n - 1).rev() {
        let next = x[i + 1];
        x[i] -= c[i] * next;
    }
    Ok(x)
}

/// Solves `(shift − f′) w − d w″ = rhs` on a uniform grid with homogeneous
/// Neumann conditions, using central differences and the ghost values
/// `w[−1] = w[1]`, `w[n] = w[n−2]`.
pub fn solve_shifted_neumann(
    shift: Complex64,
    fprime: &[f64],
    d: f64,
    dx: f64,
    rhs: &[Complex64],
) -> Result<Vec<Complex64>> {
    let n = fprime.len();
    let s = d / (dx * dx);
    let off = Complex64::from(-s);
    let mut lower = vec![off; n];
    let mut upper = vec![off; n];
    lower[n - 1] = Complex64::from(-2.0 * s);
    upper[0] = Complex64::from(-2.0 * s);
    let diag: Vec<Complex64> = fprime.iter().map(|&fp| shift - fp + 2.0 * s).collect();
    solve_tridiagonal(&lower, &diag, &upper, rhs)
}
