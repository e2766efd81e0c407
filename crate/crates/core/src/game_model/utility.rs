use crate::error::{validation, Result};
use crate::info_theory::{
    direction_mutual_information, plog2_ratio, Distribution, TransitionMatrix,
};

use super::params::{joint_from_params, TwoPartyGameParams};

/// General utility of P1: `sum_j q_j sum_i A_ij log2(A_ij / p_i)`.
///
/// `A_ij = p(x = i | y = j)`, so `channel` has one row per outcome `j` of `s2`,
/// each row being a law over the outcomes of `s1`.
pub fn utility_general_p1(
    s1: &Distribution,
    s2: &Distribution,
    channel: &TransitionMatrix,
) -> Result<f64> {
    check_dims(channel, s2.len(), s1.len(), "s2", "s1")?;
    let mut total = 0.0;
    for (qj, row) in s2.probs().iter().zip(channel.rows()) {
        let mut inner = 0.0;
        for (&a_ij, &p_i) in row.probs().iter().zip(s1.probs()) {
            inner += plog2_ratio(a_ij, p_i)?;
        }
        total += qj * inner;
    }
    Ok(total)
}

/// General utility of P2: `sum_i p_i sum_j B_ji log2(B_ji / q_j)`.
///
/// `B_ji = p(y = j | x = i)`: `channel` has one row per outcome `i` of `s1`,
/// each a law over the outcomes of `s2`.
pub fn utility_general_p2(
    s1: &Distribution,
    s2: &Distribution,
    channel: &TransitionMatrix,
) -> Result<f64> {
    check_dims(channel, s1.len(), s2.len(), "s1", "s2")?;
    let mut total = 0.0;
    for (pi, row) in s1.probs().iter().zip(channel.rows()) {
        let mut inner = 0.0;
        for (&b_ji, &q_j) in row.probs().iter().zip(s2.probs()) {
            inner += plog2_ratio(b_ji, q_j)?;
        }
        total += pi * inner;
    }
    Ok(total)
}

fn check_dims(
    channel: &TransitionMatrix,
    rows: usize,
    cols: usize,
    row_name: &str,
    col_name: &str,
) -> Result<()> {
    if channel.n_inputs() != rows || channel.n_outputs() != cols {
        return Err(validation(format!(
            "channel is {}x{}, expected {rows}x{cols} (rows = |{row_name}|, columns = |{col_name}|)",
            channel.n_inputs(),
            channel.n_outputs()
        )));
    }
    Ok(())
}

/// Both players' utilities: the absolute direction mutual information of the
/// induced joint. The expanded forms for P1 and P2 are the same expression, so
/// the components are identical.
pub fn utility_pair(params: &TwoPartyGameParams) -> Result<(f64, f64)> {
    let joint = joint_from_params(params)?;
    let u1 = direction_mutual_information(&joint)?;
    let u2 = direction_mutual_information(&joint)?;
    Ok((u1, u2))
}
