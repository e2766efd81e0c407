use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, FrechetBound, Result};
use crate::info_theory::{Distribution, JointDistribution2x2, TransitionMatrix};

/// Slack allowed on the Fréchet bounds before a point counts as infeasible.
const FRECHET_SLACK: f64 = 1e-12;

/// Cooperation probabilities of both players plus the mutual-cooperation mass.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct TwoPartyGameParams {
    /// P1's probability of cooperating.
    pub mu: f64,
    /// P2's probability of cooperating.
    pub nu: f64,
    /// Probability that both cooperate.
    pub a: f64,
}

impl TwoPartyGameParams {
    pub fn new(mu: f64, nu: f64, a: f64) -> Self {
        TwoPartyGameParams { mu, nu, a }
    }

    pub fn coupled(mu: f64, nu: f64, coupling: Coupling) -> Self {
        TwoPartyGameParams {
            mu,
            nu,
            a: coupling.joint_mass(mu, nu),
        }
    }

    /// `(max(0, mu + nu - 1), min(mu, nu))`.
    pub fn frechet_bounds(mu: f64, nu: f64) -> (f64, f64) {
        ((mu + nu - 1.0).max(0.0), mu.min(nu))
    }

    pub fn is_feasible(&self) -> bool {
        self.check().is_ok()
    }

    fn check(&self) -> Result<()> {
        for (name, v) in [("mu", self.mu), ("nu", self.nu)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(validation(format!("{name} = {v} is outside [0, 1]")));
            }
        }
        if !self.a.is_finite() {
            return Err(validation(format!("a = {} is not finite", self.a)));
        }
        let (lo, hi) = Self::frechet_bounds(self.mu, self.nu);
        if self.a < lo - FRECHET_SLACK {
            return Err(Error::Infeasible {
                a: self.a,
                bound: FrechetBound::Lower,
                limit: lo,
            });
        }
        if self.a > hi + FRECHET_SLACK {
            return Err(Error::Infeasible {
                a: self.a,
                bound: FrechetBound::Upper,
                limit: hi,
            });
        }
        Ok(())
    }
}

/// Rule fixing the mutual-cooperation mass `a` from the marginals.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Coupling {
    /// `a = min(mu, nu)`: cooperation events maximally aligned.
    #[default]
    Comonotone,
    /// `a = mu * nu`.
    Independent,
}

impl Coupling {
    pub fn joint_mass(self, mu: f64, nu: f64) -> f64 {
        match self {
            Coupling::Comonotone => mu.min(nu),
            Coupling::Independent => mu * nu,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Coupling::Comonotone => "comonotone",
            Coupling::Independent => "independent",
        }
    }
}

impl std::str::FromStr for Coupling {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "comonotone" => Ok(Coupling::Comonotone),
            "independent" => Ok(Coupling::Independent),
            other => Err(validation(format!(
                "unknown coupling '{other}' (expected comonotone or independent)"
            ))),
        }
    }
}

fn snap(x: f64) -> f64 {
    if x < 0.0 && x > -FRECHET_SLACK {
        0.0
    } else {
        x
    }
}

/// Joint law of (X, Y) with `b = mu - a`, `c = nu - a`, `d = 1 + a - mu - nu`.
pub fn joint_from_params(params: &TwoPartyGameParams) -> Result<JointDistribution2x2> {
    params.check()?;
    let TwoPartyGameParams { mu, nu, a } = *params;
    let (lo, hi) = TwoPartyGameParams::frechet_bounds(mu, nu);
    let a = a.clamp(lo, hi);
    JointDistribution2x2::with_marginals(
        a,
        snap(mu - a),
        snap(nu - a),
        snap(1.0 + a - mu - nu),
        mu,
        nu,
    )
}

/// P1's channel: row `x` is the law of Y given X = x (row 0 = P1 cooperates).
pub fn transition_matrix_p1(j: &JointDistribution2x2) -> Result<TransitionMatrix> {
    conditional_rows(j.mu, j.a, j.nu)
}

/// P2's channel: row `y` is the law of X given Y = y (row 0 = P2 cooperates).
pub fn transition_matrix_p2(j: &JointDistribution2x2) -> Result<TransitionMatrix> {
    conditional_rows(j.nu, j.a, j.mu)
}

/// Rows `(a/g, 1 - a/g)` and `((o - a)/(1 - g), 1 - (o - a)/(1 - g))` for a given
/// conditioning marginal `g` and the other marginal `o`.
fn conditional_rows(given: f64, a: f64, other: f64) -> Result<TransitionMatrix> {
    if given <= 0.0 {
        return Err(Error::Conditioning(given));
    }
    if given >= 1.0 {
        return Err(Error::Conditioning(1.0 - given));
    }
    let r0 = (a / given).clamp(0.0, 1.0);
    let r1 = ((other - a) / (1.0 - given)).clamp(0.0, 1.0);
    TransitionMatrix::new(vec![Distribution::binary(r0)?, Distribution::binary(r1)?])
}
