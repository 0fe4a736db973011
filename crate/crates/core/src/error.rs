use thiserror::Error;

/// Errors produced by the cost, network and solver layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),

    #[error("value of {what} overflows f64 at x = {x}; evaluate in the log domain instead")]
    Range { what: String, x: f64 },

    #[error("not differentiable at x = {x} (left derivative {left}, right derivative {right})")]
    Kink { x: f64, left: f64, right: f64 },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("invalid network: {0}")]
    Construction(String),

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("infeasible flow: {0}")]
    Infeasible(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    Convergence { iterations: usize, residual: f64 },

    #[error("cost level unbounded: no bracket found below {cap:e}")]
    UnboundedCost { cap: f64 },

    #[error("demand {m} is outside the covered bracket lattice: {hint}")]
    Bracket { m: f64, hint: String },

    #[error("not regularly varying at this probe: beta_hat = {beta_hat}, residual = {residual:e}")]
    NotRegularlyVarying { beta_hat: f64, residual: f64 },

    #[error("parse error: {0}")]
    Parse(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn unsupported(msg: impl Into<String>) -> Self {
        Error::Unsupported(msg.into())
    }

    /// True for failures of a numeric procedure, as opposed to bad input.
    pub fn is_numeric(&self) -> bool {
        matches!(
            self,
            Error::Range { .. }
                | Error::Kink { .. }
                | Error::Convergence { .. }
                | Error::UnboundedCost { .. }
                | Error::NotRegularlyVarying { .. }
        )
    }
}

pub type Result<T> = std::result::Result<T, Error>;
