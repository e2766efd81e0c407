//! Capacities of both players' channels and the resulting fairness case.

use serde::Serialize;

use crate::error::Result;
use crate::game_model::{
    classify_fairness, joint_from_params, transition_matrix_p1, transition_matrix_p2, FairnessCase,
    TwoPartyGameParams, BALANCED_TOL,
};
use crate::info_theory::{channel_capacity, CapacityResult};

pub const DEFAULT_CAPACITY_TOL: f64 = 1e-9;
pub const DEFAULT_MAX_ITER: usize = 100_000;

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CapacityReport {
    pub params: TwoPartyGameParams,
    /// Capacity of P1's channel.
    pub m: CapacityResult,
    /// Capacity of P2's channel.
    pub n: CapacityResult,
    pub fairness: FairnessCase,
}

pub fn capacity_report(params: &TwoPartyGameParams) -> Result<CapacityReport> {
    capacity_report_with(params, DEFAULT_CAPACITY_TOL, DEFAULT_MAX_ITER)
}

pub fn capacity_report_with(
    params: &TwoPartyGameParams,
    tol: f64,
    max_iter: usize,
) -> Result<CapacityReport> {
    let joint = joint_from_params(params)?;
    let m = channel_capacity(&transition_matrix_p1(&joint)?, tol, max_iter)?;
    let n = channel_capacity(&transition_matrix_p2(&joint)?, tol, max_iter)?;
    let fairness = classify_fairness(&m, &n, BALANCED_TOL);
    Ok(CapacityReport {
        params: *params,
        m,
        n,
        fairness,
    })
}
