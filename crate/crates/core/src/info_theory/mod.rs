//! Entropy, direction entropy, mutual information and channel capacity.

mod capacity;
mod measures;
mod types;

pub use capacity::{
    channel_capacity, direction_capacity, induced_joint, interior_grid, BlahutArimoto, BoundsStep,
    CapacityResult,
};
pub(crate) use measures::plog2_ratio;
pub use measures::{
    binary_entropy, channel_mutual_information, direction_entropy, direction_mi_terms,
    direction_mutual_information, mutual_information, shannon_entropy,
    signed_direction_mutual_information, surprisal_term,
};
pub use types::{
    DirectionVector, Distribution, JointDistribution2x2, TransitionMatrix, SIMPLEX_TOL,
};
