//! Sturm–Liouville spectrum of the linearisation by Prüfer shooting.
//!
//! The spatial problem is `−d u″ − f′(ū) u = ν u` on `(−a, a)` with
//! `u′(±a) = 0`. Writing `u = r sin θ`, `u′ = r cos θ` turns it into
//!
//! ```text
//! θ′ = cos²θ + q(x) sin²θ,        q = (f′(ū) + ν) / d
//! (ln r)′ = (sin 2θ / 2)(1 − q)
//! ```
//!
//! With `θ(−a) = π/2`, the `n`-th eigenvalue is the unique `ν` for which
//! `θ(a) = π/2 + nπ`; `θ(a)` is increasing in `ν`, so bisection applies.
//! A temporal eigenvalue `λ` of the full system is tied to `ν` through
//! `ελ² + νλ + 1 = 0`.

use std::f64::consts::FRAC_PI_2;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{f_prime, ModelParams, StationaryState};
use crate::quadrature::trapezoid;

/// RK4 substeps per grid cell when integrating θ.
pub const DEFAULT_SUBSTEPS: usize = 10;
/// Upper bound on `h·|q − 1|`; cells where `q` is large get more substeps.
pub const STIFFNESS_BOUND: f64 = 0.5;
/// Cap on the adaptive substep count per cell.
pub const MAX_SUBSTEPS: usize = 2000;
/// Absolute bisection tolerance on ν.
pub const NU_TOLERANCE: f64 = 1e-10;
/// Bracket expansion gives up beyond this |ν|.
pub const NU_LIMIT: f64 = 1e6;

/// How `f′(ū(x))` is evaluated between grid nodes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum CoefficientEval {
    /// Evaluate `f′(c(x))` from the closed-form profile.
    #[default]
    Exact,
    /// Piecewise-linear interpolation of the nodal values of `f′(ū)`.
    Interpolated,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ShootOptions {
    pub substeps: usize,
    pub eval: CoefficientEval,
}

impl Default for ShootOptions {
    fn default() -> Self {
        Self { substeps: DEFAULT_SUBSTEPS, eval: CoefficientEval::Exact }
    }
}

/// Prüfer angle and amplitude along the grid for one value of ν.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PruferPath {
    pub nu: f64,
    pub x: Vec<f64>,
    pub theta: Vec<f64>,
    /// Amplitude with `r(−a) = 1`.
    pub r: Vec<f64>,
    pub theta_end: f64,
}

impl PruferPath {
    pub fn dx(&self) -> f64 {
        self.x[1] - self.x[0]
    }
}

/// Spatial eigenvalue with its normalised eigenfunction and the pair of
/// temporal eigenvalues it generates.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct EigenPair {
    pub n: usize,
    pub nu_n: f64,
    pub u_n: Vec<f64>,
    pub lambda_plus: Complex64,
    pub lambda_minus: Complex64,
}

struct Coefficient<'a> {
    stationary: &'a StationaryState,
    eval: CoefficientEval,
}

impl Coefficient<'_> {
    /// `f′(ū)` at offset `s ∈ [0, dx]` into cell `i`.
    #[inline]
    fn at(&self, i: usize, s: f64) -> f64 {
        let st = self.stationary;
        match self.eval {
            CoefficientEval::Exact => f_prime(st.profile.value(st.grid.nodes()[i] + s)),
            CoefficientEval::Interpolated => {
                let w = s / st.grid.dx();
                let fp = &st.fprime_bar;
                if w <= 0.0 {
                    fp[i]
                } else {
                    (1.0 - w) * fp[i] + w * fp[(i + 1).min(fp.len() - 1)]
                }
            }
        }
    }
}

#[inline]
fn theta_rhs(theta: f64, q: f64) -> f64 {
    let s = theta.sin();
    1.0 + (q - 1.0) * s * s
}

#[inline]
fn log_r_rhs(theta: f64, q: f64) -> f64 {
    0.5 * (2.0 * theta).sin() * (1.0 - q)
}

/// Integrates θ from `θ(−a) = π/2` across the domain with default options.
pub fn shoot_theta(nu: f64, stationary: &StationaryState, params: &ModelParams) -> PruferPath {
    shoot_theta_with(nu, stationary, params, &ShootOptions::default())
}

/// Classical RK4 with at least `opts.substeps` steps per cell, more where
/// `|q|` is large enough to make the step unstable ([`STIFFNESS_BOUND`]). `ln r` is
/// advanced by the same RK4 stages as θ, so the amplitude is fourth-order
/// accurate as well.
pub fn shoot_theta_with(
    nu: f64,
    stationary: &StationaryState,
    params: &ModelParams,
    opts: &ShootOptions,
) -> PruferPath {
    let coeff = Coefficient { stationary, eval: opts.eval };
    let nodes = stationary.grid.nodes();
    let n = nodes.len();
    let dx = stationary.grid.dx();
    let inv_d = 1.0 / params.d;
    let q = |i: usize, s: f64| (coeff.at(i, s) + nu) * inv_d;

    let mut theta = Vec::with_capacity(n);
    let mut log_r = Vec::with_capacity(n);
    let mut th = FRAC_PI_2;
    let mut lr = 0.0;
    theta.push(th);
    log_r.push(lr);
    for i in 0..n - 1 {
        let mut q0 = q(i, 0.0);
        let q_edge = (q0 - 1.0).abs().max((q(i, dx) - 1.0).abs());
        let substeps = opts.substeps.max(((dx * q_edge / STIFFNESS_BOUND).ceil() as usize).min(MAX_SUBSTEPS));
        let h = dx / substeps as f64;
        for k in 0..substeps {
            let s = k as f64 * h;
            let qm = q(i, s + 0.5 * h);
            let q1 = q(i, s + h);
            let k1 = theta_rhs(th, q0);
            let t2 = th + 0.5 * h * k1;
            let k2 = theta_rhs(t2, qm);
            let t3 = th + 0.5 * h * k2;
            let k3 = theta_rhs(t3, qm);
            let t4 = th + h * k3;
            let k4 = theta_rhs(t4, q1);
            let next = th + h / 6.0 * (k1 + 2.0 * k2 + 2.0 * k3 + k4);
            lr += h / 6.0
                * (log_r_rhs(th, q0) + 2.0 * log_r_rhs(t2, qm) + 2.0 * log_r_rhs(t3, qm) + log_r_rhs(t4, q1));
            th = next;
            q0 = q1;
        }
        theta.push(th);
        log_r.push(lr);
    }
    PruferPath {
        nu,
        x: nodes.to_vec(),
        theta_end: th,
        r: log_r.into_iter().map(f64::exp).collect(),
        theta,
    }
}

/// Shooting target `π/2 + nπ` for mode `n`.
pub fn target_angle(n: usize) -> f64 {
    FRAC_PI_2 + n as f64 * PI
}

/// `ν_n` with default shooting options.
pub fn eigenvalue_nu(n: usize, stationary: &StationaryState, params: &ModelParams) -> Result<f64> {
    eigenvalue_nu_with(n, stationary, params, &ShootOptions::default())
}

/// Brackets `ν_n` by stepping outwards from `[−1, 1]` with doubling widths, then bisects to
/// [`NU_TOLERANCE`].
pub fn eigenvalue_nu_with(
    n: usize,
    stationary: &StationaryState,
    params: &ModelParams,
    opts: &ShootOptions,
) -> Result<f64> {
    let target = target_angle(n);
    let miss = |nu: f64| shoot_theta_with(nu, stationary, params, opts).theta_end - target;
    let not_found = Error::BracketNotFound { mode: n, limit: NU_LIMIT };

    let (mut lo, mut hi) = (-1.0_f64, 1.0_f64);
    let mut width = hi - lo;
    let mut g_lo = miss(lo);
    if g_lo == 0.0 {
        return Ok(lo);
    }
    while g_lo > 0.0 {
        hi = lo;
        lo -= width;
        width *= 2.0;
        if lo < -NU_LIMIT {
            return Err(not_found);
        }
        g_lo = miss(lo);
    }
    let mut g_hi = miss(hi);
    while g_hi < 0.0 {
        lo = hi;
        hi += width;
        width *= 2.0;
        if hi > NU_LIMIT {
            return Err(not_found);
        }
        g_hi = miss(hi);
    }
    if g_hi == 0.0 {
        return Ok(hi);
    }

    while hi - lo > NU_TOLERANCE {
        let mid = 0.5 * (lo + hi);
        let g = miss(mid);
        if g == 0.0 {
            return Ok(mid);
        }
        if g < 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(0.5 * (lo + hi))
}

/// `u = r sin θ`, scaled so that `∫u² = 1` (trapezoid) and `u(−a) > 0`.
pub fn eigenfunction(nu: f64, path: &PruferPath) -> Vec<f64> {
    debug_assert_eq!(nu, path.nu);
    let mut u: Vec<f64> = path.r.iter().zip(&path.theta).map(|(r, t)| r * t.sin()).collect();
    let sq: Vec<f64> = u.iter().map(|v| v * v).collect();
    let mut scale = 1.0 / trapezoid(&sq, path.dx()).sqrt();
    if u[0] < 0.0 {
        scale = -scale;
    }
    u.iter_mut().for_each(|v| *v *= scale);
    u
}

/// Both roots of `ελ² + νλ + 1 = 0`, `λ₊` first (the one with the larger
/// real part).
pub fn temporal_eigs(nu: f64, epsilon: f64) -> (Complex64, Complex64) {
    let disc = nu * nu - 4.0 * epsilon;
    if disc >= 0.0 {
        // Cancellation-free form; the roots multiply to 1/ε.
        let q = -0.5 * (nu + nu.signum() * disc.sqrt());
        let (r1, r2) = (q / epsilon, 1.0 / q);
        let (hi, lo) = if r1 >= r2 { (r1, r2) } else { (r2, r1) };
        (Complex64::new(hi, 0.0), Complex64::new(lo, 0.0))
    } else {
        let denom = 2.0 * epsilon;
        let im = (-disc).sqrt() / denom;
        let re = -nu / denom;
        (Complex64::new(re, im), Complex64::new(re, -im))
    }
}

/// `|ελ² + νλ + 1|` relative to the size of its terms.
pub fn quadratic_residual(lambda: Complex64, nu: f64, epsilon: f64) -> f64 {
    let res = lambda * lambda * epsilon + lambda * nu + 1.0;
    let scale = epsilon * lambda.norm_sqr() + nu.abs() * lambda.norm() + 1.0;
    res.norm() / scale
}

/// Inverse map `ν = −(1/λ + ελ)`.
pub fn nu_from_lambda(lambda: Complex64, epsilon: f64) -> Complex64 {
    -(lambda.inv() + lambda * epsilon)
}

/// Eigenvalue, eigenfunction and temporal pair for mode `n`.
pub fn eigen_pair(n: usize, stationary: &StationaryState, params: &ModelParams) -> Result<EigenPair> {
    let nu_n = eigenvalue_nu(n, stationary, params)?;
    let path = shoot_theta(nu_n, stationary, params);
    let u_n = eigenfunction(nu_n, &path);
    let (lambda_plus, lambda_minus) = temporal_eigs(nu_n, params.epsilon);
    Ok(EigenPair { n, nu_n, u_n, lambda_plus, lambda_minus })
}

/// The first `modes` eigenpairs.
pub fn spectrum(modes: usize, stationary: &StationaryState, params: &ModelParams) -> Result<Vec<EigenPair>> {
    (0..modes).map(|n| eigen_pair(n, stationary, params)).collect()
}

/// Rayleigh quotient of the constant test function `1/√(2a)`:
/// `−(1/2a) ∫ f′(ū) dx`. It bounds `ν₀` from above.
pub fn rayleigh_upper_bound(stationary: &StationaryState, params: &ModelParams) -> f64 {
    -stationary.fprime_integral() / (2.0 * params.a)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct InstabilityCertificate {
    /// `∫ f′(ū) dx`.
    pub integral: f64,
    /// The integral is positive, so some temporal eigenvalue has `Re λ > 0`.
    pub certified: bool,
    /// `Re λ₀₊` computed from `ν₀`, filled in when the certificate holds.
    pub re_lambda0: Option<f64>,
}

impl InstabilityCertificate {
    /// The certificate and the computed spectrum agree.
    pub fn is_consistent(&self) -> bool {
        !self.certified || self.re_lambda0.is_some_and(|re| re > 0.0)
    }
}

pub fn instability_certificate(stationary: &StationaryState, params: &ModelParams) -> Result<InstabilityCertificate> {
    let integral = stationary.fprime_integral();
    let certified = integral > 0.0;
    let re_lambda0 = if certified {
        let nu0 = eigenvalue_nu(0, stationary, params)?;
        Some(temporal_eigs(nu0, params.epsilon).0.re)
    } else {
        None
    };
    Ok(InstabilityCertificate { integral, certified, re_lambda0 })
}

/// Number of strict sign changes between consecutive samples.
pub fn sign_changes(u: &[f64]) -> usize {
    let mut last = 0.0_f64;
    let mut count = 0;
    for &v in u {
        if v != 0.0 {
            if last != 0.0 && (v > 0.0) != (last > 0.0) {
                count += 1;
            }
            last = v;
        }
    }
    count
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::model::{stationary_state, HeterogeneityProfile};
    use crate::oracle;

    fn constant_case(c0: f64, d: f64, nx: usize) -> (ModelParams, StationaryState) {
        let params = ModelParams::new(0.1, d, 1.0, 0.0, nx).unwrap();
        let st = stationary_state(&params, &HeterogeneityProfile::constant(c0, 1.0)).unwrap();
        (params, st)
    }

    fn poly_case(p: f64, d: f64, nx: usize) -> (ModelParams, StationaryState) {
        let params = ModelParams::new(0.1, d, 1.0, p, nx).unwrap();
        let st = stationary_state(&params, &HeterogeneityProfile::polynomial(p, 1.0)).unwrap();
        (params, st)
    }

    #[test]
    fn strongly_negative_q_stays_stable() {
        // f′(ū)/d reaches about −2600 at the ends; a fixed 10 steps per cell
        // used to overshoot θ below zero and lose whole turns.
        for &(d, p) in &[(0.1, 9.3), (0.1, 14.0), (0.05, 10.0)] {
            let (params, st) = poly_case(p, d, 201);
            let (fine, stf) = poly_case(p, d, 801);
            let fd = oracle::neumann_fd_eigenvalues(&stf.fprime_bar, d, fine.dx(), 3);
            for (n, want) in fd.iter().enumerate() {
                let nu = eigenvalue_nu(n, &st, &params).unwrap();
                assert!((nu - want).abs() < 2e-3, "d={d} p={p} n={n}: {nu} vs {want}");
                let min = shoot_theta(nu, &st, &params).theta.iter().copied().fold(f64::INFINITY, f64::min);
                assert!(min > 0.0);
            }
        }
    }

    #[test]
    fn ground_mode_is_fixed_point() {
        let (params, st) = constant_case(0.0, 1.0, 21);
        let path = shoot_theta(-3.0, &st, &params);
        assert_eq!(path.theta_end, FRAC_PI_2);
        assert_eq!(path.theta[0], FRAC_PI_2);
        let u = eigenfunction(-3.0, &path);
        for v in u {
            assert!((v - 0.5f64.sqrt()).abs() < 1e-14);
        }
    }

    #[test]
    fn first_neumann_mode_angle() {
        let (params, st) = constant_case(0.0, 1.0, 21);
        let nu = PI * PI / 4.0 - 3.0;
        let path = shoot_theta(nu, &st, &params);
        assert!((path.theta_end - 1.5 * PI).abs() < 1e-8, "{}", path.theta_end);
    }

    #[test]
    fn analytic_eigenvalues() {
        let (params, st) = constant_case(0.0, 1.0, 201);
        assert!((eigenvalue_nu(0, &st, &params).unwrap() + 3.0).abs() < 1e-9);
        let nu2 = eigenvalue_nu(2, &st, &params).unwrap();
        assert!((nu2 - (PI * PI - 3.0)).abs() < 1e-8, "{nu2}");
    }

    #[test]
    fn homogeneous_limit() {
        let (params, st) = poly_case(1e-6, 1.0, 201);
        let nu0 = eigenvalue_nu(0, &st, &params).unwrap();
        assert!((nu0 + 3.0).abs() < 1e-4);
    }

    #[test]
    fn theta_end_monotone_in_nu() {
        let (params, st) = poly_case(2.0, 0.5, 101);
        let ends: Vec<f64> = (-20..=20)
            .map(|k| shoot_theta(k as f64 * 0.5, &st, &params).theta_end)
            .collect();
        assert!(ends.windows(2).all(|w| w[1] > w[0]));
    }

    #[test]
    fn interpolated_coefficients_agree() {
        let (params, st) = poly_case(2.0, 1.0, 401);
        let opts = ShootOptions { eval: CoefficientEval::Interpolated, ..Default::default() };
        for n in 0..3 {
            let exact = eigenvalue_nu(n, &st, &params).unwrap();
            let interp = eigenvalue_nu_with(n, &st, &params, &opts).unwrap();
            assert!((exact - interp).abs() < 1e-3, "mode {n}: {exact} vs {interp}");
        }
    }

    #[test]
    fn matches_finite_difference_oracle() {
        for &(p, d) in &[(0.5, 1.0), (2.0, 0.5), (4.0, 0.1)] {
            let (params, st) = poly_case(p, d, 201);
            let fine = params.with_nx(params.refined_nx(4)).unwrap();
            let prof = HeterogeneityProfile::polynomial(p, 1.0);
            let fine_st = stationary_state(&fine, &prof).unwrap();
            let reference = oracle::neumann_fd_eigenvalues(&fine_st.fprime_bar, d, fine.dx(), 5);
            for (n, r) in reference.iter().enumerate() {
                let nu = eigenvalue_nu(n, &st, &params).unwrap();
                assert!((nu - r).abs() < 1e-3, "p={p} d={d} n={n}: {nu} vs {r}");
            }
        }
    }

    #[test]
    fn eigenfunctions_oscillate_and_normalise() {
        let (params, st) = poly_case(2.0, 1.0, 401);
        let dx = params.dx();
        for n in 0..5 {
            let pair = eigen_pair(n, &st, &params).unwrap();
            assert_eq!(sign_changes(&pair.u_n), n, "mode {n}");
            assert!(pair.u_n[0] > 0.0);
            let sq: Vec<f64> = pair.u_n.iter().map(|v| v * v).collect();
            assert!((trapezoid(&sq, dx) - 1.0).abs() < 1e-12);
            for lam in [pair.lambda_plus, pair.lambda_minus] {
                assert!(quadratic_residual(lam, pair.nu_n, params.epsilon) < 1e-12);
                assert!((nu_from_lambda(lam, params.epsilon).re - pair.nu_n).abs() < 1e-10);
            }
        }
    }

    #[test]
    fn eigenfunction_residual() {
        let (params, st) = poly_case(2.0, 1.0, 401);
        let dx = params.dx();
        for n in 0..3 {
            let pair = eigen_pair(n, &st, &params).unwrap();
            let u = &pair.u_n;
            let worst = (1..u.len() - 1)
                .map(|i| {
                    let uxx = (u[i + 1] - 2.0 * u[i] + u[i - 1]) / (dx * dx);
                    (-params.d * uxx - st.fprime_bar[i] * u[i] - pair.nu_n * u[i]).abs()
                })
                .fold(0.0, f64::max);
            assert!(worst < 1e-3, "mode {n}: residual {worst}");
        }
    }

    #[test]
    fn eigenvalues_ordered() {
        for &p in &[0.0, 1.0, 2.5, 5.0] {
            let (params, st) = poly_case(p, 0.5, 101);
            let nus: Vec<f64> = spectrum(5, &st, &params).unwrap().iter().map(|e| e.nu_n).collect();
            assert!(nus.windows(2).all(|w| w[1] > w[0]), "p={p}: {nus:?}");
        }
    }

    #[test]
    fn temporal_eig_examples() {
        let (lp, lm) = temporal_eigs(0.0, 0.1);
        assert!(lp.re.abs() < 1e-15 && (lp.im - 1.0 / 0.1f64.sqrt()).abs() < 1e-12);
        assert!((lm.im + 3.16228).abs() < 1e-5);

        let eps: f64 = 0.1;
        let (lp, lm) = temporal_eigs(2.0 * eps.sqrt(), eps);
        assert!((lp.re + 1.0 / eps.sqrt()).abs() < 1e-12 && lp.im == 0.0);
        assert_eq!(lp, lm);

        let (lp, lm) = temporal_eigs(-0.5, 0.1);
        assert!((lp.re - 2.5).abs() < 1e-12 && (lp.im - 1.93649).abs() < 1e-5);
        assert_eq!(lm, lp.conj());
    }

    #[test]
    fn rayleigh_bound_examples() {
        let (params, st) = constant_case(0.0, 1.0, 101);
        assert_eq!(rayleigh_upper_bound(&st, &params), -3.0);
        let (params, st) = poly_case(0.0, 1.0, 101);
        assert_eq!(rayleigh_upper_bound(&st, &params), -3.0);
        for &(p, d) in &[(4.0, 1.0), (2.0, 0.1), (1.0, 0.5)] {
            let (params, st) = poly_case(p, d, 201);
            let bound = rayleigh_upper_bound(&st, &params);
            let nu0 = eigenvalue_nu(0, &st, &params).unwrap();
            assert!(nu0 <= bound + 1e-8, "p={p}: {nu0} > {bound}");
        }
    }

    #[test]
    fn certificate_examples() {
        let (params, st) = poly_case(0.0, 1.0, 101);
        let cert = instability_certificate(&st, &params).unwrap();
        assert!(cert.certified && cert.is_consistent());
        assert!((cert.integral - 6.0).abs() < 1e-12);
        let expected = (3.0 + (9.0f64 - 0.4).sqrt()) / 0.2;
        assert!((cert.re_lambda0.unwrap() - expected).abs() < 1e-7);

        let (params, st) = poly_case(10.0, 1.0, 101);
        assert!(!instability_certificate(&st, &params).unwrap().certified);

        let (params, st) = constant_case(2.0, 1.0, 101);
        let cert = instability_certificate(&st, &params).unwrap();
        assert!(!cert.certified);
        assert!((cert.integral + 18.0).abs() < 1e-12);
    }

    #[test]
    fn sign_change_counter() {
        assert_eq!(sign_changes(&[1.0, 0.5, -0.2, -1.0, 0.0, 2.0]), 2);
        assert_eq!(sign_changes(&[0.0, 0.0]), 0);
    }
}
