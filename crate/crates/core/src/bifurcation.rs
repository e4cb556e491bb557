//! Location of the Hopf point `p₀` (where `ν₀(p) = 0`) and stability sweeps.
//!
//! `ν₀` increases with `p`, so `Re λ₀ = −ν₀/(2ε)` near the crossing goes from
//! positive to negative as `p` increases through `p₀`, and at `p₀` itself the
//! leading temporal pair is `±i/√ε`.

use num_complex::Complex64;
use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::model::{stationary_state, HeterogeneityProfile, ModelParams};
use crate::spectral::{eigenvalue_nu, temporal_eigs};

/// Bisection tolerance on `p`.
pub const P_TOLERANCE: f64 = 1e-6;
/// Required `|ν₀(p₀)|`.
pub const NU_AT_P0_TOLERANCE: f64 = 1e-8;
/// Bracket expansion never goes beyond this amplitude.
pub const P_EXPANSION_LIMIT: f64 = 64.0;
/// Resolution of the sign scan run before bisection.
pub const SCAN_RESOLUTION: f64 = 0.1;
/// `|ν₀|` below which a sweep row is reported as critical.
pub const CRITICAL_TOLERANCE: f64 = 1e-6;

/// A one-parameter family of heterogeneity profiles.
pub trait ProfileFamily: Sync {
    fn profile(&self, p: f64) -> HeterogeneityProfile;
}

/// `c(x) = p (x⁴/a⁴ − 2x²/a²)`.
#[derive(Debug, Clone, Copy)]
pub struct PolynomialFamily {
    pub a: f64,
}

impl ProfileFamily for PolynomialFamily {
    fn profile(&self, p: f64) -> HeterogeneityProfile {
        HeterogeneityProfile::polynomial(p, self.a)
    }
}

/// Constant override with `c0 = p`; its ground eigenvalue is `−f′(c0)`.
#[derive(Debug, Clone, Copy)]
pub struct ConstantFamily {
    pub a: f64,
}

impl ProfileFamily for ConstantFamily {
    fn profile(&self, p: f64) -> HeterogeneityProfile {
        HeterogeneityProfile::constant(p, self.a)
    }
}

/// `ν₀` at amplitude `p`, all other parameters taken from `template`.
pub fn ground_nu(template: &ModelParams, family: &dyn ProfileFamily, p: f64) -> Result<f64> {
    let params = template.with_p(p)?;
    let st = stationary_state(&params, &family.profile(p))?;
    eigenvalue_nu(0, &st, &params)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct HopfPoint {
    pub p0: f64,
    pub nu0: f64,
    /// Leading temporal eigenvalue at `p0` (positive imaginary part).
    pub lambda: Complex64,
    /// Sign-change cell found by the scan, before bisection.
    pub bracket: (f64, f64),
    /// Number of eigenvalue solves spent.
    pub evaluations: usize,
}

/// Finds `p₀` inside `bracket`, widening it (down towards 0, up to
/// [`P_EXPANSION_LIMIT`]) if `ν₀` does not change sign across it.
///
/// Before bisecting, `ν₀` is scanned at [`SCAN_RESOLUTION`]; more than one
/// sign change is reported as [`Error::MultipleCrossings`].
pub fn find_p0(template: &ModelParams, family: &dyn ProfileFamily, bracket: (f64, f64)) -> Result<HopfPoint> {
    let (mut lo, mut hi) = bracket;
    if !(lo >= 0.0 && hi > lo && hi.is_finite()) {
        return Err(Error::InvalidParams(format!("bad p bracket ({lo}, {hi})")));
    }
    let mut evaluations = 0;
    let mut nu = |p: f64| {
        evaluations += 1;
        ground_nu(template, family, p)
    };

    while nu(lo)? >= 0.0 {
        if lo == 0.0 {
            return Err(Error::NoSignChange { lo, hi });
        }
        lo = if lo < 1e-3 { 0.0 } else { 0.5 * lo };
    }
    while nu(hi)? <= 0.0 {
        if hi >= P_EXPANSION_LIMIT {
            return Err(Error::NoSignChange { lo, hi });
        }
        hi = (2.0 * hi).min(P_EXPANSION_LIMIT);
    }

    // Sign scan.
    let cells = ((hi - lo) / SCAN_RESOLUTION).ceil().max(1.0) as usize;
    let node = |k: usize| if k == cells { hi } else { lo + k as f64 * SCAN_RESOLUTION };
    let mut crossings = Vec::new();
    let mut prev = nu(lo)?;
    for k in 1..=cells {
        let v = nu(node(k))?;
        if (prev < 0.0) != (v < 0.0) {
            crossings.push((node(k - 1), node(k)));
        }
        prev = v;
    }
    if crossings.len() != 1 {
        return Err(Error::MultipleCrossings { lo, hi, count: crossings.len() });
    }
    let cell = crossings[0];

    let (mut a, mut b) = cell;
    let mut best = (0.5 * (a + b), f64::INFINITY);
    loop {
        let mid = 0.5 * (a + b);
        let v = nu(mid)?;
        if v.abs() < best.1.abs() {
            best = (mid, v);
        }
        if (b - a <= P_TOLERANCE && v.abs() < NU_AT_P0_TOLERANCE) || b - a < 1e-14 * b.max(1.0) {
            break;
        }
        if v < 0.0 {
            a = mid;
        } else {
            b = mid;
        }
    }
    let (p0, nu0) = best;
    Ok(HopfPoint { p0, nu0, lambda: temporal_eigs(nu0, template.epsilon).0, bracket: cell, evaluations })
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Stability {
    Stable,
    Unstable,
    Critical,
}

impl Stability {
    pub fn as_str(&self) -> &'static str {
        match self {
            Stability::Stable => "stable",
            Stability::Unstable => "unstable",
            Stability::Critical => "critical",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct SweepRow {
    pub p: f64,
    pub nu0: f64,
    pub re_lambda0: f64,
    pub im_lambda0: f64,
    pub classification: Stability,
}

impl SweepRow {
    pub fn from_nu(p: f64, nu0: f64, epsilon: f64) -> Self {
        let lambda = temporal_eigs(nu0, epsilon).0;
        let classification = if nu0.abs() < CRITICAL_TOLERANCE {
            Stability::Critical
        } else if lambda.re > 0.0 {
            Stability::Unstable
        } else {
            Stability::Stable
        };
        Self { p, nu0, re_lambda0: lambda.re, im_lambda0: lambda.im, classification }
    }
}

/// One sweep entry; a failed eigenvalue solve does not abort the sweep.
#[derive(Debug)]
pub struct SweepEntry {
    pub p: f64,
    pub row: Result<SweepRow>,
}

/// Evaluates `ν₀` and the leading temporal eigenvalue at every `p`, in
/// parallel on the current rayon pool. Rows come back sorted by `p`.
pub fn stability_sweep(p_values: &[f64], template: &ModelParams, family: &dyn ProfileFamily) -> Result<Vec<SweepEntry>> {
    if p_values.is_empty() {
        return Err(Error::InvalidParams("empty p list".into()));
    }
    if let Some(bad) = p_values.iter().find(|p| !(p.is_finite() && **p >= 0.0)) {
        return Err(Error::InvalidParams(format!("p must be nonnegative, got {bad}")));
    }
    let mut ps = p_values.to_vec();
    ps.sort_by(f64::total_cmp);
    Ok(ps
        .par_iter()
        .map(|&p| SweepEntry {
            p,
            row: ground_nu(template, family, p).map(|nu0| SweepRow::from_nu(p, nu0, template.epsilon)),
        })
        .collect())
}

/// `lo, lo+step, …` up to and including `hi` (within rounding).
pub fn p_grid(lo: f64, hi: f64, step: f64) -> Vec<f64> {
    let n = ((hi - lo) / step + 1e-9).floor() as usize;
    (0..=n).map(|k| lo + k as f64 * step).collect()
}
