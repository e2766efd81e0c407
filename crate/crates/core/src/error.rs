use thiserror::Error;

use crate::info_theory::CapacityResult;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, Error, PartialEq)]
pub enum Error {
    /// Input failed a structural check (simplex, sign labels, lengths, counts).
    #[error("validation failed: {0}")]
    Validation(String),

    /// A quantity was evaluated outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// The joint mass `a` lies outside the Fréchet bounds implied by the marginals.
    #[error("infeasible joint: a = {a} violates {bound} bound {limit}")]
    Infeasible {
        a: f64,
        bound: FrechetBound,
        limit: f64,
    },

    #[error("cannot condition on an event of probability {0}")]
    Conditioning(f64),

    #[error("capacity iteration did not converge: residual {residual:e} > tol {tol:e} after {iterations} iterations")]
    Convergence {
        residual: f64,
        tol: f64,
        iterations: usize,
        best: Box<CapacityResult>,
    },

    #[error("unsupported channel shape {rows}x{cols}, expected 2x2")]
    UnsupportedShape { rows: usize, cols: usize },

    #[error("degenerate cooperation probability {0}: probabilistic policy needs p in (0,1)")]
    DegenerateProbability(f64),

    #[error("reconstruction failed: {0}")]
    Reconstruction(String),

    #[error("unknown player id {0}")]
    UnknownPlayer(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FrechetBound {
    Lower,
    Upper,
}

impl std::fmt::Display for FrechetBound {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            FrechetBound::Lower => f.write_str("lower max(0, mu+nu-1)"),
            FrechetBound::Upper => f.write_str("upper min(mu, nu)"),
        }
    }
}

pub(crate) fn validation(msg: impl Into<String>) -> Error {
    Error::Validation(msg.into())
}

pub(crate) fn domain(msg: impl Into<String>) -> Error {
    Error::Domain(msg.into())
}
