//! Center-manifold reduction at the Hopf point and the first Lyapunov
//! coefficient.
//!
//! At `p₀` the critical eigenvector of the linearisation is
//! `q = u₀ (1, −i√ε)` with `λ₁ = i/√ε`, and the adjoint eigenvector
//! normalised against it is `q / C` with `C = 2ε ∫u₀²`. Projecting the cubic
//! nonlinearity `−(u³ + 3ū u²)/ε` onto `q` gives the reduced equation
//!
//! ```text
//! z_t = λ₁ z + g₂₀ (z + z̄)² + g₂₁ z² z̄ + …
//! ```
//!
//! whose cubic coefficient needs the quadratic center-manifold term `w₂₀`,
//! the solution of a complex Neumann boundary-value problem.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::Result;
use crate::linalg::solve_shifted_neumann;
use crate::model::{ModelParams, StationaryState};
use crate::quadrature::trapezoid;
use crate::spectral::eigen_pair;

/// `λ₁ = i/√ε`, the critical temporal eigenvalue.
pub fn critical_lambda(epsilon: f64) -> Complex64 {
    Complex64::new(0.0, 1.0 / epsilon.sqrt())
}

/// Quadratic part of the projection.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Projection {
    /// `C = 2ε ∫u₀²`.
    pub c: f64,
    /// `∫ ū u₀³`.
    pub ubar_u0_cubed: f64,
    /// `−(3/C) ∫ ū u₀³`.
    pub g20: f64,
    /// `−(6/C) ∫ ū u₀³`.
    pub g11: f64,
}

pub fn projection_coefficients(u0: &[f64], stationary: &StationaryState, params: &ModelParams) -> Projection {
    let dx = stationary.dx();
    let sq: Vec<f64> = u0.iter().map(|u| u * u).collect();
    let c = 2.0 * params.epsilon * trapezoid(&sq, dx);
    let cubic: Vec<f64> = u0.iter().zip(&stationary.u_bar).map(|(u, ub)| ub * u * u * u).collect();
    let ubar_u0_cubed = trapezoid(&cubic, dx);
    let g20 = -3.0 / c * ubar_u0_cubed;
    Projection { c, ubar_u0_cubed, g20, g11: 2.0 * g20 }
}

/// First component of the quadratic forcing,
/// `H¹ = −(6/ε) ū u₀² + (12/C) (∫ū u₀³) u₀`.
pub fn forcing_h1(u0: &[f64], stationary: &StationaryState, params: &ModelParams, proj: &Projection) -> Vec<f64> {
    let k = 12.0 / proj.c * proj.ubar_u0_cubed;
    u0.iter()
        .zip(&stationary.u_bar)
        .map(|(&u, &ub)| -6.0 / params.epsilon * ub * u * u + k * u)
        .collect()
}

/// Diagonal shift `2ελ + 1/(2λ)` of the `w₂₀` (λ = λ₁) and `w₀₂` (λ = λ̄₁)
/// problems. For `λ₁ = i/√ε` it equals `(3/2) i √ε`.
pub fn w_shift(lambda: Complex64, epsilon: f64) -> Complex64 {
    2.0 * epsilon * lambda + (2.0 * lambda).inv()
}

/// Solves `(2ελ₁ − f′(ū) + 1/(2λ₁)) w − d w″ = ε H¹` with Neumann conditions.
pub fn solve_w20(u0: &[f64], stationary: &StationaryState, params: &ModelParams) -> Result<Vec<Complex64>> {
    let proj = projection_coefficients(u0, stationary, params);
    let h1 = forcing_h1(u0, stationary, params, &proj);
    solve_w20_with_forcing(&h1, stationary, params)
}

pub fn solve_w20_with_forcing(h1: &[f64], stationary: &StationaryState, params: &ModelParams) -> Result<Vec<Complex64>> {
    let lambda = critical_lambda(params.epsilon);
    solve_quadratic_term(lambda, h1, stationary, params)
}

/// Shared solver for the `w₂₀` / `w₀₂` problems at a given `λ`.
pub fn solve_quadratic_term(
    lambda: Complex64,
    h1: &[f64],
    stationary: &StationaryState,
    params: &ModelParams,
) -> Result<Vec<Complex64>> {
    let rhs: Vec<Complex64> = h1.iter().map(|&h| Complex64::from(params.epsilon * h)).collect();
    solve_shifted_neumann(w_shift(lambda, params.epsilon), &stationary.fprime_bar, params.d, stationary.dx(), &rhs)
}

/// Remaining quadratic center-manifold terms.
#[derive(Debug, Clone, PartialEq)]
pub struct MixedTerms {
    /// `(w¹₁₁, w²₁₁) = (0, εH¹)`.
    pub w11: (Vec<f64>, Vec<f64>),
    /// `w¹₀₂ = conj(w¹₂₀)`.
    pub w02: Vec<Complex64>,
}

/// `w₁₁` and `w₀₂`. The `w₀₂` problem is the complex conjugate of the `w₂₀`
/// problem (real coefficients, real forcing), so its solution is `conj(w₂₀)`.
pub fn w11_w02(w20: &[Complex64], h1: &[f64], epsilon: f64) -> MixedTerms {
    MixedTerms {
        w11: (vec![0.0; h1.len()], h1.iter().map(|h| epsilon * h).collect()),
        w02: w20.iter().map(|w| w.conj()).collect(),
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LyapunovReport {
    pub p: f64,
    #[serde(rename = "C")]
    pub c: f64,
    pub omega0: f64,
    pub g20: f64,
    pub g11: f64,
    pub g21: Complex64,
    pub l1: f64,
    pub l1_alt: f64,
    /// `|l1 − l1_alt| / |l1|`.
    pub residual: f64,
    #[serde(skip)]
    pub x: Vec<f64>,
    #[serde(skip)]
    pub w20_profile: Vec<Complex64>,
}

/// Evaluates the first Lyapunov coefficient twice: the closed form
/// `−(3√ε / 2C)(∫u₀⁴ + ∫ū u₀² Re w₂₀)` (reported as `l1`) and the general
/// `(1/2ω₀²) Re(i g₂₀ g₁₁ + ω₀ g₂₁)` (reported as `l1_alt`).
pub fn lyapunov_l1(
    u0: &[f64],
    stationary: &StationaryState,
    params: &ModelParams,
    proj: &Projection,
    w20: &[Complex64],
) -> LyapunovReport {
    let dx = stationary.dx();
    let eps = params.epsilon;
    let quartic: Vec<f64> = u0.iter().map(|u| u.powi(4)).collect();
    let int_u4 = trapezoid(&quartic, dx);
    let weight: Vec<f64> = u0.iter().zip(&stationary.u_bar).map(|(u, ub)| ub * u * u).collect();
    let int_w_re = trapezoid(&weight.iter().zip(w20).map(|(k, w)| k * w.re).collect::<Vec<_>>(), dx);
    let int_w_im = trapezoid(&weight.iter().zip(w20).map(|(k, w)| k * w.im).collect::<Vec<_>>(), dx);

    let omega0 = 1.0 / eps.sqrt();
    let g21 = -3.0 / proj.c * Complex64::new(int_w_re + int_u4, int_w_im);
    let l1 = -3.0 * eps.sqrt() / (2.0 * proj.c) * (int_u4 + int_w_re);
    let i = Complex64::i();
    let l1_alt = (i * proj.g20 * proj.g11 + omega0 * g21).re / (2.0 * omega0 * omega0);
    let residual = if l1 == 0.0 { (l1 - l1_alt).abs() } else { ((l1 - l1_alt) / l1).abs() };
    LyapunovReport {
        p: params.p,
        c: proj.c,
        omega0,
        g20: proj.g20,
        g11: proj.g11,
        g21,
        l1,
        l1_alt,
        residual,
        x: stationary.grid.nodes().to_vec(),
        w20_profile: w20.to_vec(),
    }
}

/// Full pipeline at the parameters given: ground eigenfunction, projection,
/// `w₂₀`, Lyapunov coefficient.
pub fn lyapunov_report(stationary: &StationaryState, params: &ModelParams) -> Result<LyapunovReport> {
    let u0 = eigen_pair(0, stationary, params)?.u_n;
    let proj = projection_coefficients(&u0, stationary, params);
    let h1 = forcing_h1(&u0, stationary, params, &proj);
    let w20 = solve_w20_with_forcing(&h1, stationary, params)?;
    Ok(lyapunov_l1(&u0, stationary, params, &proj, &w20))
}

/// Coefficients of `z_t = λ₁ z + quadratic (z + z̄)² + cubic z² z̄`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReducedEquation {
    pub lambda1: Complex64,
    pub quadratic: f64,
    pub cubic: Complex64,
    pub l1: f64,
}

pub fn reduced_equation_coeffs(report: &LyapunovReport, epsilon: f64) -> ReducedEquation {
    ReducedEquation {
        lambda1: critical_lambda(epsilon),
        quadratic: report.g20,
        cubic: report.g21,
        l1: report.l1,
    }
}

/// A vector `(u, v)` of the complexified phase space, sampled on the grid.
pub type Pair = (Vec<Complex64>, Vec<Complex64>);

/// `((u₁, v₁), (u₂, v₂)) = ε ∫ conj(u₁) u₂ + ∫ conj(v₁) v₂`.
pub fn inner_product(epsilon: f64, dx: f64, lhs: &Pair, rhs: &Pair) -> Complex64 {
    let integrate = |a: &[Complex64], b: &[Complex64]| {
        let prod: Vec<Complex64> = a.iter().zip(b).map(|(x, y)| x.conj() * y).collect();
        let re: Vec<f64> = prod.iter().map(|z| z.re).collect();
        let im: Vec<f64> = prod.iter().map(|z| z.im).collect();
        Complex64::new(trapezoid(&re, dx), trapezoid(&im, dx))
    };
    epsilon * integrate(&lhs.0, &rhs.0) + integrate(&lhs.1, &rhs.1)
}

/// `q = u₀ (1, −i√ε)`.
pub fn critical_eigenvector(u0: &[f64], epsilon: f64) -> Pair {
    let s = epsilon.sqrt();
    (
        u0.iter().map(|&u| Complex64::from(u)).collect(),
        u0.iter().map(|&u| Complex64::new(0.0, -s * u)).collect(),
    )
}

/// Adjoint eigenvector `q / C`, normalised so that `(p, q) = 1`.
pub fn adjoint_eigenvector(u0: &[f64], epsilon: f64, c: f64) -> Pair {
    let (a, b) = critical_eigenvector(u0, epsilon);
    (a.into_iter().map(|z| z / c).collect(), b.into_iter().map(|z| z / c).collect())
}

pub fn conjugate(v: &Pair) -> Pair {
    (v.0.iter().map(|z| z.conj()).collect(), v.1.iter().map(|z| z.conj()).collect())
}
