use serde::{Deserialize, Serialize};

use crate::info_theory::CapacityResult;

/// Default width of the BALANCED band, in bits.
pub const BALANCED_TOL: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum FairnessCaseId {
    /// P1's capacity exceeds P2's: P2 stops the exchange.
    P2Terminates,
    /// P2's capacity exceeds P1's: P1 stops the exchange.
    P1Terminates,
    Balanced,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct FairnessCase {
    pub case_id: FairnessCaseId,
    /// P1's capacity.
    pub c_of_q: f64,
    /// P2's capacity.
    pub d_of_p: f64,
}

pub fn classify_fairness(
    cap_p1: &CapacityResult,
    cap_p2: &CapacityResult,
    tol: f64,
) -> FairnessCase {
    classify_capacities(cap_p1.capacity, cap_p2.capacity, tol)
}

pub fn classify_capacities(c_of_q: f64, d_of_p: f64, tol: f64) -> FairnessCase {
    let case_id = if (c_of_q - d_of_p).abs() <= tol {
        FairnessCaseId::Balanced
    } else if c_of_q > d_of_p {
        FairnessCaseId::P2Terminates
    } else {
        FairnessCaseId::P1Terminates
    };
    FairnessCase {
        case_id,
        c_of_q,
        d_of_p,
    }
}
