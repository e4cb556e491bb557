//! Reaction term, heterogeneity profile, grids and the stationary state.
//!
//! The model is
//!
//! ```text
//! ε u_t = f(u) − v + d u_xx,    v_t = u − c(x),    x ∈ (−a, a),
//! ```
//!
//! with homogeneous Neumann conditions and the cubic `f(u) = −u³ + 3u`.
//! Its stationary state is `ū = c(x)`, `v̄ = f(ū) + d ū_xx`.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::quadrature::trapezoid;

/// Cubic reaction term `f(u) = −u³ + 3u`.
#[inline]
pub fn f_cubic(u: f64) -> f64 {
    -u * u * u + 3.0 * u
}

/// Derivative `f′(u) = −3u² + 3`.
#[inline]
pub fn f_prime(u: f64) -> f64 {
    -3.0 * u * u + 3.0
}

/// Physical and discretisation parameters of one study.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ModelParams {
    pub epsilon: f64,
    pub d: f64,
    pub a: f64,
    pub p: f64,
    pub nx: usize,
}

impl ModelParams {
    pub fn new(epsilon: f64, d: f64, a: f64, p: f64, nx: usize) -> Result<Self> {
        let params = Self { epsilon, d, a, p, nx };
        params.validate()?;
        Ok(params)
    }

    pub fn validate(&self) -> Result<()> {
        let positive = |name: &str, v: f64| {
            if v.is_finite() && v > 0.0 {
                Ok(())
            } else {
                Err(Error::InvalidParams(format!("{name} must be positive and finite, got {v}")))
            }
        };
        positive("epsilon", self.epsilon)?;
        positive("d", self.d)?;
        positive("a", self.a)?;
        if !(self.p.is_finite() && self.p >= 0.0) {
            return Err(Error::InvalidParams(format!("p must be nonnegative, got {}", self.p)));
        }
        if self.nx < 5 || self.nx.is_multiple_of(2) {
            return Err(Error::InvalidParams(format!(
                "nx must be odd and at least 5, got {}",
                self.nx
            )));
        }
        Ok(())
    }

    /// Grid spacing `2a / (nx − 1)`.
    pub fn dx(&self) -> f64 {
        2.0 * self.a / (self.nx - 1) as f64
    }

    pub fn grid(&self) -> Grid {
        Grid::new(self.a, self.nx)
    }

    /// Same parameters at a different heterogeneity amplitude.
    pub fn with_p(&self, p: f64) -> Result<Self> {
        Self::new(self.epsilon, self.d, self.a, p, self.nx)
    }

    /// Same parameters on a grid with `nx` nodes.
    pub fn with_nx(&self, nx: usize) -> Result<Self> {
        Self::new(self.epsilon, self.d, self.a, self.p, nx)
    }

    /// Node count after splitting every cell into `factor` cells.
    pub fn refined_nx(&self, factor: usize) -> usize {
        factor * (self.nx - 1) + 1
    }
}

/// Uniform grid on `[−a, a]` with an odd number of nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct Grid {
    nodes: Vec<f64>,
    a: f64,
    dx: f64,
}

impl Grid {
    /// Nodes are `a (2i − (nx−1)) / (nx−1)`, so the endpoints are exactly `±a`,
    /// the middle node is exactly `0` and the grid is exactly symmetric.
    pub fn new(a: f64, nx: usize) -> Self {
        assert!(nx >= 3 && nx % 2 == 1, "grid needs an odd node count >= 3");
        let m = (nx - 1) as f64;
        let nodes = (0..nx)
            .map(|i| a * (2.0 * i as f64 - m) / m)
            .collect();
        Self { nodes, a, dx: 2.0 * a / m }
    }

    pub fn nodes(&self) -> &[f64] {
        &self.nodes
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn dx(&self) -> f64 {
        self.dx
    }

    pub fn half_length(&self) -> f64 {
        self.a
    }

    /// Index of the node `x = 0`.
    pub fn center_index(&self) -> usize {
        (self.nodes.len() - 1) / 2
    }

    /// Index of the node closest to `x`.
    pub fn nearest_index(&self, x: f64) -> usize {
        let i = ((x + self.a) / self.dx).round();
        i.clamp(0.0, (self.nodes.len() - 1) as f64) as usize
    }
}

/// The space-dependent excitability `c(x)`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum HeterogeneityProfile {
    /// `c(x) = p (x⁴/a⁴ − 2x²/a²)`.
    Polynomial { p: f64, a: f64 },
    /// `c(x) = c0`; only meant for checks against closed-form spectra.
    Constant { c0: f64, a: f64 },
}

impl HeterogeneityProfile {
    pub fn polynomial(p: f64, a: f64) -> Self {
        HeterogeneityProfile::Polynomial { p, a }
    }

    pub fn constant(c0: f64, a: f64) -> Self {
        HeterogeneityProfile::Constant { c0, a }
    }

    pub fn half_length(&self) -> f64 {
        match *self {
            HeterogeneityProfile::Polynomial { a, .. } | HeterogeneityProfile::Constant { a, .. } => a,
        }
    }

    /// `c(x)` without the domain check.
    #[inline]
    pub fn value(&self, x: f64) -> f64 {
        match *self {
            HeterogeneityProfile::Polynomial { p, a } => {
                let s = (x / a) * (x / a);
                p * (s * s - 2.0 * s)
            }
            HeterogeneityProfile::Constant { c0, .. } => c0,
        }
    }

    /// `c′(x)`.
    #[inline]
    pub fn derivative(&self, x: f64) -> f64 {
        match *self {
            HeterogeneityProfile::Polynomial { p, a } => {
                let a2 = a * a;
                p * (4.0 * x * x * x / (a2 * a2) - 4.0 * x / a2)
            }
            HeterogeneityProfile::Constant { .. } => 0.0,
        }
    }

    /// `c″(x) = p (12x²/a⁴ − 4/a²)` for the polynomial kind.
    #[inline]
    pub fn second_derivative(&self, x: f64) -> f64 {
        match *self {
            HeterogeneityProfile::Polynomial { p, a } => {
                let a2 = a * a;
                p * (12.0 * x * x / (a2 * a2) - 4.0 / a2)
            }
            HeterogeneityProfile::Constant { .. } => 0.0,
        }
    }

    /// `f′(c(x))`, the coefficient of the linearised problem.
    #[inline]
    pub fn fprime_at(&self, x: f64) -> f64 {
        f_prime(self.value(x))
    }
}

/// `c(x)` with the domain check `|x| ≤ a`.
pub fn c_profile(x: f64, profile: &HeterogeneityProfile) -> Result<f64> {
    let a = profile.half_length();
    if !(x.abs() <= a) {
        return Err(Error::Domain { x, a });
    }
    Ok(profile.value(x))
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum CheckStatus {
    Pass,
    Fail,
    /// The condition holds trivially (flat profile) and carries no information.
    Vacuous,
}

#[derive(Debug, Clone, Serialize)]
pub struct ProfileCheck {
    pub name: &'static str,
    pub status: CheckStatus,
    pub detail: String,
}

/// Outcome of [`validate_profile`], one entry per structural condition.
#[derive(Debug, Clone, Serialize)]
pub struct ProfileReport {
    pub checks: Vec<ProfileCheck>,
    /// Set for the constant override, which is not a physical profile.
    pub validation_only: bool,
}

impl ProfileReport {
    pub fn status(&self, name: &str) -> Option<CheckStatus> {
        self.checks.iter().find(|c| c.name == name).map(|c| c.status)
    }

    pub fn all_passed(&self) -> bool {
        self.checks.iter().all(|c| c.status != CheckStatus::Fail)
    }
}

pub const CHECK_NONPOSITIVE: &str = "c <= 0";
pub const CHECK_ZERO_AT_ORIGIN: &str = "c(0) = 0";
pub const CHECK_INCREASING_LEFT: &str = "c' > 0 on (-a,0)";
pub const CHECK_DECREASING_RIGHT: &str = "c' < 0 on (0,a)";
pub const CHECK_FLAT_ENDS: &str = "c'(-a) = c'(a) = 0";
pub const CHECK_DECREASING_IN_P: &str = "c decreasing in p";

/// Checks the structural conditions on `c` at every node of `grid`.
pub fn validate_profile(profile: &HeterogeneityProfile, grid: &Grid) -> ProfileReport {
    let xs = grid.nodes();
    let a = grid.half_length();
    let mut checks = Vec::with_capacity(6);
    let mut push = |name, status, detail: String| checks.push(ProfileCheck { name, status, detail });

    let flat = match *profile {
        HeterogeneityProfile::Polynomial { p, .. } => p == 0.0,
        HeterogeneityProfile::Constant { .. } => true,
    };
    let constant = matches!(profile, HeterogeneityProfile::Constant { .. });

    let worst = xs.iter().map(|&x| profile.value(x)).fold(f64::NEG_INFINITY, f64::max);
    push(
        CHECK_NONPOSITIVE,
        if worst <= 0.0 { CheckStatus::Pass } else { CheckStatus::Fail },
        format!("max c = {worst:e}"),
    );

    let c0 = profile.value(0.0);
    push(
        CHECK_ZERO_AT_ORIGIN,
        if c0 == 0.0 { CheckStatus::Pass } else { CheckStatus::Fail },
        format!("c(0) = {c0:e}"),
    );

    let sign_check = |pred: fn(f64) -> bool, region: fn(f64) -> bool| -> (CheckStatus, String) {
        let bad: Vec<f64> = xs
            .iter()
            .copied()
            .filter(|&x| region(x) && x.abs() < a && !pred(profile.derivative(x)))
            .collect();
        if flat && !constant {
            (CheckStatus::Vacuous, "flat profile (p = 0)".to_string())
        } else if bad.is_empty() {
            (CheckStatus::Pass, String::new())
        } else {
            (CheckStatus::Fail, format!("{} nodes violate, first at x = {}", bad.len(), bad[0]))
        }
    };
    let (s, msg) = sign_check(|d| d > 0.0, |x| x < 0.0);
    push(CHECK_INCREASING_LEFT, s, msg);
    let (s, msg) = sign_check(|d| d < 0.0, |x| x > 0.0);
    push(CHECK_DECREASING_RIGHT, s, msg);

    let scale = match *profile {
        HeterogeneityProfile::Polynomial { p, .. } => (p / a).max(1.0),
        HeterogeneityProfile::Constant { .. } => 1.0,
    };
    let end_slope = profile.derivative(-a).abs().max(profile.derivative(a).abs());
    push(
        CHECK_FLAT_ENDS,
        if end_slope <= 1e-12 * scale { CheckStatus::Pass } else { CheckStatus::Fail },
        format!("max |c'(±a)| = {end_slope:e}"),
    );

    let (status, detail) = match *profile {
        HeterogeneityProfile::Polynomial { p, a: pa } if p > 0.0 => {
            let larger = HeterogeneityProfile::polynomial(2.0 * p, pa);
            let bad = xs.iter().filter(|&&x| {
                let (c1, c2) = (profile.value(x), larger.value(x));
                if x == 0.0 {
                    c2 > c1
                } else {
                    c2 >= c1
                }
            });
            let count = bad.count();
            if count == 0 {
                (CheckStatus::Pass, format!("compared p = {p} against p = {}", 2.0 * p))
            } else {
                (CheckStatus::Fail, format!("{count} nodes violate"))
            }
        }
        HeterogeneityProfile::Polynomial { .. } => {
            (CheckStatus::Vacuous, "flat profile (p = 0)".to_string())
        }
        HeterogeneityProfile::Constant { .. } => {
            (CheckStatus::Vacuous, "constant override has no amplitude".to_string())
        }
    };
    push(CHECK_DECREASING_IN_P, status, detail);

    ProfileReport { checks, validation_only: constant }
}

/// Stationary state sampled on the grid, together with the data needed to
/// re-evaluate the coefficient `f′(ū)` between nodes.
#[derive(Debug, Clone, PartialEq)]
pub struct StationaryState {
    pub grid: Grid,
    pub profile: HeterogeneityProfile,
    pub u_bar: Vec<f64>,
    pub v_bar: Vec<f64>,
    pub fprime_bar: Vec<f64>,
}

impl StationaryState {
    pub fn dx(&self) -> f64 {
        self.grid.dx()
    }

    /// `∫ f′(ū) dx` by the trapezoid rule.
    pub fn fprime_integral(&self) -> f64 {
        trapezoid(&self.fprime_bar, self.grid.dx())
    }
}

/// `ū = c`, `v̄ = f(ū) + d c″` with the analytic second derivative.
pub fn stationary_state(params: &ModelParams, profile: &HeterogeneityProfile) -> Result<StationaryState> {
    params.validate()?;
    match *profile {
        HeterogeneityProfile::Polynomial { p, a } => {
            if p != params.p || a != params.a {
                return Err(Error::InvalidParams(format!(
                    "profile (p = {p}, a = {a}) does not match parameters (p = {}, a = {})",
                    params.p, params.a
                )));
            }
        }
        HeterogeneityProfile::Constant { a, .. } => {
            if a != params.a {
                return Err(Error::InvalidParams(format!(
                    "profile half-length {a} does not match a = {}",
                    params.a
                )));
            }
        }
    }
    let grid = params.grid();
    let u_bar: Vec<f64> = grid.nodes().iter().map(|&x| profile.value(x)).collect();
    let v_bar = grid
        .nodes()
        .iter()
        .zip(&u_bar)
        .map(|(&x, &u)| f_cubic(u) + params.d * profile.second_derivative(x))
        .collect();
    let fprime_bar = u_bar.iter().map(|&u| f_prime(u)).collect();
    Ok(StationaryState { grid, profile: *profile, u_bar, v_bar, fprime_bar })
}
