//! JSON run configuration.

use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::bifurcation::{ConstantFamily, PolynomialFamily, ProfileFamily};
use crate::error::{Error, Result};
use crate::model::{HeterogeneityProfile, ModelParams};

#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum ProfileKind {
    #[default]
    Polynomial,
    Constant,
}

/// Model parameters plus simulation numerics. Unknown keys are rejected.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    #[serde(default = "default_epsilon")]
    pub epsilon: f64,
    pub d: f64,
    #[serde(default = "default_a")]
    pub a: f64,
    /// Heterogeneity amplitude; commands that need one and do not get it
    /// from the command line fail without it.
    #[serde(default)]
    pub p: Option<f64>,
    #[serde(default = "default_nx")]
    pub nx: usize,
    #[serde(default)]
    pub profile_kind: ProfileKind,
    /// Level of the constant profile.
    #[serde(default)]
    pub c0: Option<f64>,
    #[serde(default = "default_dt")]
    pub dt: f64,
    #[serde(default = "default_t_end")]
    pub t_end: f64,
}

fn default_epsilon() -> f64 {
    0.1
}
fn default_a() -> f64 {
    1.0
}
fn default_nx() -> usize {
    201
}
fn default_dt() -> f64 {
    1e-4
}
fn default_t_end() -> f64 {
    600.0
}

impl RunConfig {
    pub fn new(d: f64) -> Self {
        Self {
            epsilon: default_epsilon(),
            d,
            a: default_a(),
            p: None,
            nx: default_nx(),
            profile_kind: ProfileKind::Polynomial,
            c0: None,
            dt: default_dt(),
            t_end: default_t_end(),
        }
    }

    pub fn from_json(text: &str) -> Result<Self> {
        let cfg: Self = serde_json::from_str(text).map_err(|e| Error::Config(e.to_string()))?;
        cfg.validate()?;
        Ok(cfg)
    }

    pub fn load(path: &Path) -> Result<Self> {
        let text = std::fs::read_to_string(path)
            .map_err(|e| Error::Config(format!("cannot read {}: {e}", path.display())))?;
        Self::from_json(&text)
    }

    pub fn validate(&self) -> Result<()> {
        self.params(self.p.unwrap_or(0.0))?;
        if !(self.dt > 0.0 && self.dt.is_finite()) {
            return Err(Error::Config(format!("dt must be positive, got {}", self.dt)));
        }
        if !(self.t_end > 0.0 && self.t_end.is_finite()) {
            return Err(Error::Config(format!("t_end must be positive, got {}", self.t_end)));
        }
        if self.profile_kind == ProfileKind::Constant && self.c0.is_none() {
            return Err(Error::Config("profile_kind \"constant\" needs c0".into()));
        }
        Ok(())
    }

    /// Model parameters at amplitude `p`.
    pub fn params(&self, p: f64) -> Result<ModelParams> {
        ModelParams::new(self.epsilon, self.d, self.a, p, self.nx).map_err(|e| Error::Config(e.to_string()))
    }

    /// The amplitude a command should use: the override if given, else the
    /// configured `p`, else `c0` for a constant profile.
    pub fn resolve_p(&self, cli: Option<f64>) -> Result<f64> {
        cli.or(self.p)
            .or(match self.profile_kind {
                ProfileKind::Constant => self.c0,
                ProfileKind::Polynomial => None,
            })
            .ok_or_else(|| Error::Config("no p given (set \"p\" in the config or pass --p)".into()))
    }

    pub fn family(&self) -> Box<dyn ProfileFamily> {
        match self.profile_kind {
            ProfileKind::Polynomial => Box::new(PolynomialFamily { a: self.a }),
            ProfileKind::Constant => Box::new(ConstantFamily { a: self.a }),
        }
    }

    pub fn profile(&self, p: f64) -> HeterogeneityProfile {
        self.family().profile(p)
    }
}
