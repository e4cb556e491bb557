use thiserror::Error;

/// Errors raised by the model, the solvers and the command-line front end.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("x = {x} lies outside [-{a}, {a}]")]
    Domain { x: f64, a: f64 },

    #[error("no eigenvalue bracket for mode {mode}: |nu| exceeded {limit:e}")]
    BracketNotFound { mode: usize, limit: f64 },

    #[error("ground eigenvalue does not change sign for p in [{lo}, {hi}]")]
    NoSignChange { lo: f64, hi: f64 },

    #[error("ground eigenvalue changes sign {count} times for p in [{lo}, {hi}]")]
    MultipleCrossings { lo: f64, hi: f64, count: usize },

    #[error("singular tridiagonal system: pivot {pivot:e} at row {row}")]
    SingularSystem { row: usize, pivot: f64 },

    #[error("solution diverged at t = {t}: |u| = {value:e}")]
    Divergence { t: f64, value: f64 },

    #[error("configuration: {0}")]
    Config(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    /// True for failures of the numerics (as opposed to bad input or I/O).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::BracketNotFound { .. }
                | Error::NoSignChange { .. }
                | Error::MultipleCrossings { .. }
                | Error::SingularSystem { .. }
                | Error::Divergence { .. }
        )
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
