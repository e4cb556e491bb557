//! Brute-force reference solvers, compiled only for tests.
//!
//! Nothing here calls into the rest of the crate, so the file can also be
//! pulled into integration tests with `#[path]`.

#![allow(dead_code)]

use num_complex::Complex64;

/// Number of eigenvalues of the symmetric tridiagonal matrix strictly below `x`
/// (Sturm count via the LDLᵀ pivots).
pub fn sturm_count(diag: &[f64], off: &[f64], x: f64) -> usize {
    let mut count = 0;
    let mut q = diag[0] - x;
    if q < 0.0 {
        count += 1;
    }
    for i in 1..diag.len() {
        let prev = if q == 0.0 { f64::EPSILON * (off[i - 1].abs() + 1.0) } else { q };
        q = diag[i] - x - off[i - 1] * off[i - 1] / prev;
        if q < 0.0 {
            count += 1;
        }
    }
    count
}

/// The `k` smallest eigenvalues of a symmetric tridiagonal matrix by Sturm
/// bisection.
pub fn tridiagonal_lowest_eigenvalues(diag: &[f64], off: &[f64], k: usize) -> Vec<f64> {
    let n = diag.len();
    let (mut lo, mut hi) = (f64::INFINITY, f64::NEG_INFINITY);
    for i in 0..n {
        let r = if i > 0 { off[i - 1].abs() } else { 0.0 } + if i + 1 < n { off[i].abs() } else { 0.0 };
        lo = lo.min(diag[i] - r);
        hi = hi.max(diag[i] + r);
    }
    (0..k.min(n))
        .map(|j| {
            let (mut a, mut b) = (lo - 1.0, hi + 1.0);
            for _ in 0..200 {
                let mid = 0.5 * (a + b);
                if sturm_count(diag, off, mid) > j {
                    b = mid;
                } else {
                    a = mid;
                }
                if b - a < 1e-13 * (1.0 + mid.abs()) {
                    break;
                }
            }
            0.5 * (a + b)
        })
        .collect()
}

/// Lowest `k` eigenvalues of `−d ∂xx − f′` with Neumann ghost points, given
/// `f′` sampled on a uniform grid of spacing `dx`.
///
/// The ghost-point matrix is not symmetric in its boundary rows; conjugating
/// with the square roots of the trapezoid weights makes it symmetric without
/// changing its spectrum.
pub fn neumann_fd_eigenvalues(fprime: &[f64], d: f64, dx: f64, k: usize) -> Vec<f64> {
    let n = fprime.len();
    let s = d / (dx * dx);
    let diag: Vec<f64> = fprime.iter().map(|&fp| 2.0 * s - fp).collect();
    let mut off = vec![-s; n - 1];
    off[0] = -s * 2f64.sqrt();
    off[n - 2] = -s * 2f64.sqrt();
    tridiagonal_lowest_eigenvalues(&diag, &off, k)
}

/// Dense Gaussian elimination with partial pivoting.
pub fn dense_solve(mut m: Vec<Vec<Complex64>>, mut rhs: Vec<Complex64>) -> Vec<Complex64> {
    let n = rhs.len();
    for col in 0..n {
        let piv = (col..n)
            .max_by(|&i, &j| m[i][col].norm().partial_cmp(&m[j][col].norm()).unwrap())
            .unwrap();
        m.swap(col, piv);
        rhs.swap(col, piv);
        let p = m[col][col];
        assert!(p.norm() > 1e-300, "singular dense system");
        for row in col + 1..n {
            let factor = m[row][col] / p;
            if factor == Complex64::new(0.0, 0.0) {
                continue;
            }
            let (top, bottom) = m.split_at_mut(row);
            for (dst, src) in bottom[0][col..].iter_mut().zip(&top[col][col..]) {
                *dst -= factor * src;
            }
            let r = rhs[col];
            rhs[row] -= factor * r;
        }
    }
    let mut x = vec![Complex64::new(0.0, 0.0); n];
    for i in (0..n).rev() {
        let mut acc = rhs[i];
        for k in i + 1..n {
            acc -= m[i][k] * x[k];
        }
        x[i] = acc / m[i][i];
    }
    x
}

/// Dense assembly and solve of `(shift − f′) w − d w″ = rhs` with Neumann
/// ghost points.
pub fn dense_neumann_solve(
    shift: Complex64,
    fprime: &[f64],
    d: f64,
    dx: f64,
    rhs: &[Complex64],
) -> Vec<Complex64> {
    let n = fprime.len();
    let s = d / (dx * dx);
    let zero = Complex64::new(0.0, 0.0);
    let mut m = vec![vec![zero; n]; n];
    for i in 0..n {
        m[i][i] = shift - fprime[i] + 2.0 * s;
        if i == 0 {
            m[0][1] = Complex64::from(-2.0 * s);
        } else if i == n - 1 {
            m[i][i - 1] = Complex64::from(-2.0 * s);
        } else {
            m[i][i - 1] = Complex64::from(-s);
            m[i][i + 1] = Complex64::from(-s);
        }
    }
    dense_solve(m, rhs.to_vec())
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sturm_bisection_on_known_matrix() {
        // tridiag(-1, 2, -1) of size n has eigenvalues 2 − 2cos(kπ/(n+1)).
        let n = 10;
        let ev = tridiagonal_lowest_eigenvalues(&vec![2.0; n], &vec![-1.0; n - 1], 4);
        for (k, e) in ev.iter().enumerate() {
            let exact = 2.0 - 2.0 * ((k + 1) as f64 * std::f64::consts::PI / (n + 1) as f64).cos();
            assert!((e - exact).abs() < 1e-11);
        }
    }

    #[test]
    fn neumann_fd_homogeneous_spectrum() {
        // The discrete Neumann Laplacian has eigenvalues (4/h²) sin²(kπ/(2(n−1))).
        let n = 41;
        let dx = 2.0 / 40.0;
        let ev = neumann_fd_eigenvalues(&vec![3.0; n], 1.0, dx, 3);
        for (k, e) in ev.iter().enumerate() {
            let s = (k as f64 * std::f64::consts::PI / (2.0 * 40.0)).sin();
            assert!((e - (4.0 / (dx * dx) * s * s - 3.0)).abs() < 1e-9);
        }
    }

    #[test]
    fn dense_solve_small() {
        let c = |r: f64, i: f64| Complex64::new(r, i);
        let m = vec![vec![c(0.0, 1.0), c(2.0, 0.0)], vec![c(1.0, 0.0), c(1.0, -1.0)]];
        let x = vec![c(1.0, 1.0), c(-2.0, 0.5)];
        let rhs: Vec<Complex64> = m.iter().map(|row| row[0] * x[0] + row[1] * x[1]).collect();
        let sol = dense_solve(m, rhs);
        for (a, b) in sol.iter().zip(&x) {
            assert!((a - b).norm() < 1e-14);
        }
    }
}
