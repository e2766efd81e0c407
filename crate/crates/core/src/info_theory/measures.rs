//! Entropy and mutual-information kernels, all in bits.

use crate::error::{domain, validation, Result};

use super::types::{DirectionVector, Distribution, JointDistribution2x2, TransitionMatrix};

/// `p * log2(p / q)` with `0 * log(0 / q) = 0`. A positive `p` against `q = 0` is undefined.
pub(crate) fn plog2_ratio(p: f64, q: f64) -> Result<f64> {
    if p == 0.0 {
        Ok(0.0)
    } else if q <= 0.0 {
        Err(domain(format!("p * log(p / q) with p = {p} and q = {q}")))
    } else {
        Ok(p * (p / q).log2())
    }
}

/// Self-information weighted by probability: `p * log2(1/p)`, zero at `p = 0`.
pub fn surprisal_term(p: f64) -> f64 {
    if p <= 0.0 {
        0.0
    } else {
        -p * p.log2()
    }
}

/// Shannon entropy `sum p_i log2(1/p_i)`.
pub fn shannon_entropy(p: &Distribution) -> f64 {
    p.probs().iter().map(|&pi| surprisal_term(pi)).sum()
}

/// Binary entropy `H2(p)`.
pub fn binary_entropy(p: f64) -> f64 {
    surprisal_term(p) + surprisal_term(1.0 - p)
}

/// Direction entropy: each event's information term carries its sign label.
pub fn direction_entropy(d: &DirectionVector, p: &Distribution) -> Result<f64> {
    if d.len() != p.len() {
        return Err(validation(format!(
            "direction vector has {} entries but distribution has {}",
            d.len(),
            p.len()
        )));
    }
    Ok(d.signs()
        .iter()
        .zip(p.probs())
        .map(|(&s, &pi)| f64::from(s) * surprisal_term(pi))
        .sum())
}

/// Standard mutual information of a 2x2 joint law.
pub fn mutual_information(j: &JointDistribution2x2) -> f64 {
    let px = j.marginal_x();
    let py = j.marginal_y();
    let cells = j.cells();
    let mut total = 0.0;
    for (x, row) in cells.iter().enumerate() {
        for (y, &pxy) in row.iter().enumerate() {
            // pxy <= min(px, py), so a positive cell never meets a zero marginal.
            total += plog2_ratio(pxy, px[x] * py[y]).unwrap_or(0.0);
        }
    }
    total.max(0.0)
}

/// The four terms of the direction mutual information, before signs are applied:
/// `[a log a/(mu nu), b log b/(mu(1-nu)), c log c/(nu(1-mu)), d log d/((1-mu)(1-nu))]`
/// with `b = mu - a`, `c = nu - a`, `d = 1 + a - mu - nu`.
pub fn direction_mi_terms(j: &JointDistribution2x2) -> Result<[f64; 4]> {
    let (mu, nu, a) = (j.mu, j.nu, j.a);
    if !(mu > 0.0 && mu < 1.0) || !(nu > 0.0 && nu < 1.0) {
        return Err(domain(format!(
            "direction mutual information needs mu, nu in (0,1); got mu = {mu}, nu = {nu}"
        )));
    }
    let b = (mu - a).max(0.0);
    let c = (nu - a).max(0.0);
    let d = (1.0 + a - mu - nu).max(0.0);
    Ok([
        plog2_ratio(a, mu * nu)?,
        plog2_ratio(b, mu * (1.0 - nu))?,
        plog2_ratio(c, nu * (1.0 - mu))?,
        plog2_ratio(d, (1.0 - mu) * (1.0 - nu))?,
    ])
}

/// Signed direction mutual information: the anti-diagonal terms enter with a minus sign.
pub fn signed_direction_mutual_information(j: &JointDistribution2x2) -> Result<f64> {
    let [t_a, t_b, t_c, t_d] = direction_mi_terms(j)?;
    Ok(t_a - t_b - t_c + t_d)
}

/// Absolute value of the signed direction mutual information.
pub fn direction_mutual_information(j: &JointDistribution2x2) -> Result<f64> {
    signed_direction_mutual_information(j).map(f64::abs)
}

/// `I(X;Y)` for input law `p` pushed through channel `w`.
pub fn channel_mutual_information(p: &Distribution, w: &TransitionMatrix) -> Result<f64> {
    if p.len() != w.n_inputs() {
        return Err(validation(format!(
            "input distribution has {} entries, channel has {} inputs",
            p.len(),
            w.n_inputs()
        )));
    }
    let q = output_distribution(p.probs(), w);
    let mut total = 0.0;
    for (i, &pi) in p.probs().iter().enumerate() {
        if pi == 0.0 {
            continue;
        }
        for (j, &wij) in w.rows()[i].probs().iter().enumerate() {
            total += pi * plog2_ratio(wij, q[j])?;
        }
    }
    Ok(total.max(0.0))
}

pub(crate) fn output_distribution(p: &[f64], w: &TransitionMatrix) -> Vec<f64> {
    let mut q = vec![0.0; w.n_outputs()];
    for (pi, row) in p.iter().zip(w.rows()) {
        for (qj, wij) in q.iter_mut().zip(row.probs()) {
            *qj += pi * wij;
        }
    }
    q
}
