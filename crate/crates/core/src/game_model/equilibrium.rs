use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};
use crate::info_theory::interior_grid;

use super::params::{Coupling, TwoPartyGameParams};
use super::utility::utility_pair;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EquilibriumReport {
    pub profile: TwoPartyGameParams,
    pub is_epsilon_nash: bool,
    pub epsilon: f64,
    pub utility_p1: f64,
    pub utility_p2: f64,
    /// Best improvement P1 can get by moving `mu` alone, clipped at 0.
    pub max_gain_p1: f64,
    pub max_gain_p2: f64,
    /// Grid point attaining P1's best deviation utility (smallest on ties).
    pub best_response_p1: f64,
    pub best_response_p2: f64,
    pub grid: usize,
}

/// ε-Nash check of `(mu, nu)` over unilateral deviations on an interior grid,
/// with the mutual-cooperation mass fixed by `coupling`.
pub fn check_epsilon_nash(
    mu: f64,
    nu: f64,
    coupling: Coupling,
    grid: usize,
    epsilon: f64,
) -> Result<EquilibriumReport> {
    let profile = TwoPartyGameParams::coupled(mu, nu, coupling);
    check_epsilon_nash_with(profile, grid, epsilon, |m, n| {
        utility_pair(&TwoPartyGameParams::coupled(m, n, coupling))
    })
}

/// Same check against an arbitrary utility map `(mu, nu) -> (u1, u2)`.
pub fn check_epsilon_nash_with<F>(
    profile: TwoPartyGameParams,
    grid: usize,
    epsilon: f64,
    utility: F,
) -> Result<EquilibriumReport>
where
    F: Fn(f64, f64) -> Result<(f64, f64)>,
{
    if grid < 3 {
        return Err(validation(format!(
            "equilibrium grid needs at least 3 points, got {grid}"
        )));
    }
    if epsilon.is_nan() || epsilon < 0.0 {
        return Err(validation(format!(
            "epsilon must be non-negative, got {epsilon}"
        )));
    }
    let TwoPartyGameParams { mu, nu, .. } = profile;
    let (u1, u2) = utility(mu, nu)?;

    let (best_mu, best_u1) = best_response(grid, |m| Ok(utility(m, nu)?.0))?;
    let (best_nu, best_u2) = best_response(grid, |n| Ok(utility(mu, n)?.1))?;
    let max_gain_p1 = (best_u1 - u1).max(0.0);
    let max_gain_p2 = (best_u2 - u2).max(0.0);

    Ok(EquilibriumReport {
        profile,
        is_epsilon_nash: max_gain_p1 <= epsilon && max_gain_p2 <= epsilon,
        epsilon,
        utility_p1: u1,
        utility_p2: u2,
        max_gain_p1,
        max_gain_p2,
        best_response_p1: best_mu,
        best_response_p2: best_nu,
        grid,
    })
}

/// First grid point of maximal value, scanning in increasing order.
fn best_response<F>(grid: usize, value: F) -> Result<(f64, f64)>
where
    F: Fn(f64) -> Result<f64>,
{
    let mut best = (f64::NAN, f64::NEG_INFINITY);
    for x in interior_grid(grid) {
        let v = value(x)?;
        if v > best.1 {
            best = (x, v);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn comonotone_high_cooperation_is_nash() {
        let r = check_epsilon_nash(0.99, 0.99, Coupling::Comonotone, 101, 1e-6).unwrap();
        assert!(r.is_epsilon_nash, "{r:?}");
        assert_eq!(r.max_gain_p1, 0.0);
        assert_eq!(r.profile.a, 0.99);
    }

    #[test]
    fn comonotone_low_p1_cooperation_is_not_nash() {
        let r = check_epsilon_nash(0.3, 0.99, Coupling::Comonotone, 101, 1e-6).unwrap();
        assert!(!r.is_epsilon_nash);
        assert!(r.max_gain_p1 > 0.0);
    }

    #[test]
    fn independence_game_is_constant_zero() {
        for &(m, n) in &[(0.1, 0.9), (0.5, 0.5), (0.3, 0.7)] {
            let r = check_epsilon_nash(m, n, Coupling::Independent, 21, 1e-9).unwrap();
            assert!(r.is_epsilon_nash);
            assert!(r.utility_p1 < 1e-12 && r.utility_p2 < 1e-12);
        }
    }

    #[test]
    fn grid_and_epsilon_validation() {
        assert!(check_epsilon_nash(0.5, 0.5, Coupling::Comonotone, 2, 1e-6).is_err());
        assert!(check_epsilon_nash(0.5, 0.5, Coupling::Comonotone, 11, -1.0).is_err());
    }
}
