//! Two-player game built on the direction mutual information.

mod equilibrium;
mod fairness;
mod params;
mod utility;

pub use equilibrium::{check_epsilon_nash, check_epsilon_nash_with, EquilibriumReport};
pub use fairness::{
    classify_capacities, classify_fairness, FairnessCase, FairnessCaseId, BALANCED_TOL,
};
pub use params::{
    joint_from_params, transition_matrix_p1, transition_matrix_p2, Coupling, TwoPartyGameParams,
};
pub use utility::{utility_general_p1, utility_general_p2, utility_pair};

use crate::info_theory::Distribution;

/// Mixed strategies of both players.
#[derive(Debug, Clone, PartialEq, serde::Serialize, serde::Deserialize)]
pub struct StrategyProfile {
    pub s1: Distribution,
    pub s2: Distribution,
}
