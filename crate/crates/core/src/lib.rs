//! Rational two-party secret exchange driven by direction entropy.
//!
//! The crate is organised bottom-up:
//!
//! * [`info_theory`]: entropy, direction entropy, mutual information (standard
//!   and signed "direction" variant) and channel capacity.
//! * [`game_model`]: the two-player game over cooperation probabilities, its
//!   transition matrices and utilities, ε-Nash checks and the fairness classifier.
//! * [`protocol`]: XOR n-of-n share generation and the three-phase exchange
//!   simulator with per-round direction-entropy accounting.
//! * [`harness`]: utility sweeps, capacity reports, Monte Carlo batches and
//!   entropy trajectories with CSV output.
//! * [`verify`]: a seeded self-check of the library invariants.

pub mod error;
pub mod game_model;
pub mod harness;
pub mod info_theory;
pub mod protocol;
pub mod units;
pub mod verify;

pub use error::{Error, FrechetBound, Result};
pub use game_model::{
    check_epsilon_nash, classify_fairness, joint_from_params, transition_matrix_p1,
    transition_matrix_p2, utility_general_p1, utility_general_p2, utility_pair, Coupling,
    EquilibriumReport, FairnessCase, FairnessCaseId, StrategyProfile, TwoPartyGameParams,
};
pub use info_theory::{
    channel_capacity, direction_capacity, direction_entropy, direction_mutual_information,
    mutual_information, shannon_entropy, CapacityResult, DirectionVector, Distribution,
    JointDistribution2x2, TransitionMatrix,
};
pub use protocol::{
    reconstruct, run_protocol, split_secret, Action, PlayerConfig, PlayerId, Policy,
    ProtocolTranscript, Secret, ShareSet, Termination,
};
pub use units::LogBase;
