//! Discrete memoryless channel capacity.

use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};

use super::measures::{direction_mutual_information, output_distribution};
use super::types::{Distribution, JointDistribution2x2, TransitionMatrix};

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CapacityResult {
    /// Capacity in bits.
    pub capacity: f64,
    pub argmax_input: Distribution,
    pub iterations: usize,
    /// Blahut–Arimoto: upper minus lower capacity bound, in bits.
    /// Grid search: spacing of the input grid.
    pub residual: f64,
}

/// Bounds produced by one Blahut–Arimoto update, in bits.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct BoundsStep {
    /// `I(p; W)` at the input law the step started from.
    pub mutual_information: f64,
    /// `log sum_i p_i exp(D_i)`, a lower bound on capacity.
    pub lower: f64,
    /// `max_i D_i`, an upper bound on capacity.
    pub upper: f64,
}

impl BoundsStep {
    pub fn gap(&self) -> f64 {
        (self.upper - self.lower).max(0.0)
    }
}

/// Alternating-maximization state for one channel.
///
/// Each call to [`BlahutArimoto::step`] computes `D_i = KL(W_i || q)` for the
/// current input law, reports the bounds, and then applies the multiplicative
/// update `p_i <- p_i exp(D_i) / Z`.
#[derive(Debug, Clone)]
pub struct BlahutArimoto<'w> {
    channel: &'w TransitionMatrix,
    input: Vec<f64>,
    divergence: Vec<f64>,
}

impl<'w> BlahutArimoto<'w> {
    pub fn new(channel: &'w TransitionMatrix) -> Self {
        let n = channel.n_inputs();
        BlahutArimoto {
            channel,
            input: vec![1.0 / n as f64; n],
            divergence: vec![0.0; n],
        }
    }

    pub fn input(&self) -> &[f64] {
        &self.input
    }

    /// One plain Blahut–Arimoto iteration: report bounds, then update with unit step.
    pub fn step(&mut self) -> BoundsStep {
        let bounds = self.evaluate();
        self.update(1.0);
        bounds
    }

    /// Bounds at the current input law; caches `D_i` for the next update.
    pub fn evaluate(&mut self) -> BoundsStep {
        let q = output_distribution(&self.input, self.channel);
        for (d, row) in self.divergence.iter_mut().zip(self.channel.rows()) {
            *d = row
                .probs()
                .iter()
                .zip(&q)
                .filter(|(&w, _)| w > 0.0)
                .map(|(&w, &qj)| w * (w / qj).ln())
                .sum();
        }

        let mi: f64 = self
            .input
            .iter()
            .zip(&self.divergence)
            .map(|(p, d)| p * d)
            .sum();
        let upper = self.max_divergence();
        let z: f64 = self
            .input
            .iter()
            .zip(&self.divergence)
            .map(|(p, d)| p * (d - upper).exp())
            .sum();
        let lower = upper + z.ln();

        BoundsStep {
            mutual_information: mi / std::f64::consts::LN_2,
            lower: lower / std::f64::consts::LN_2,
            upper: upper / std::f64::consts::LN_2,
        }
    }

    /// `p_i <- p_i exp(lambda D_i) / Z` using the divergences from the last
    /// [`evaluate`](Self::evaluate). `lambda = 1` is the classical update.
    pub fn update(&mut self, lambda: f64) {
        let upper = self.max_divergence();
        let weights: Vec<f64> = self
            .input
            .iter()
            .zip(&self.divergence)
            .map(|(&p, d)| {
                let w = p * (lambda * (d - upper)).exp();
                // Keep support: an input driven to exactly 0 could never return.
                if p > 0.0 {
                    w.max(SUPPORT_FLOOR)
                } else {
                    0.0
                }
            })
            .collect();
        let z: f64 = weights.iter().sum();
        for (p, w) in self.input.iter_mut().zip(weights) {
            *p = w / z;
        }
    }

    fn max_divergence(&self) -> f64 {
        self.divergence
            .iter()
            .copied()
            .fold(f64::NEG_INFINITY, f64::max)
    }

    fn set_input(&mut self, input: &[f64]) {
        self.input.copy_from_slice(input);
    }
}

const SUPPORT_FLOOR: f64 = 1e-300;

fn input_distribution(p: &[f64]) -> Distribution {
    // Renormalize against accumulated rounding before validating.
    let total: f64 = p.iter().sum();
    Distribution::new(p.iter().map(|x| (x / total).clamp(0.0, 1.0)).collect())
        .expect("Blahut–Arimoto keeps the input on the simplex")
}

const MAX_RELAXATION: f64 = 1e12;

/// Capacity of a discrete memoryless channel by Blahut–Arimoto.
///
/// Stops once the gap between the upper and lower capacity bounds is at most
/// `tol` bits. Running out of iterations yields [`Error::Convergence`] carrying
/// the best estimate reached.
pub fn channel_capacity(w: &TransitionMatrix, tol: f64, max_iter: usize) -> Result<CapacityResult> {
    if tol.is_nan() || tol <= 0.0 {
        return Err(validation(format!("tolerance must be positive, got {tol}")));
    }
    if max_iter == 0 {
        return Err(validation("max_iter must be at least 1"));
    }
    // Over-relaxed steps speed up nearly useless channels, where the unit step
    // contracts at a rate close to 1. A step that lowers I(p) is undone and the
    // step size shrinks; the bounds are valid for any input law.
    let mut ba = BlahutArimoto::new(w);
    let mut best = CapacityResult {
        capacity: 0.0,
        argmax_input: input_distribution(ba.input()),
        iterations: 0,
        residual: f64::INFINITY,
    };
    let (mut best_lower, mut best_upper) = (f64::NEG_INFINITY, f64::INFINITY);
    let mut lambda: f64 = 1.0;
    let mut previous: Option<(Vec<f64>, f64)> = None;
    for it in 1..=max_iter {
        let step = ba.evaluate();
        if let Some((input, mi)) = &previous {
            if step.mutual_information < *mi && lambda > 1.0 {
                ba.set_input(input);
                ba.evaluate();
                lambda = (lambda / 4.0).max(1.0);
                ba.update(lambda);
                continue;
            }
        }
        // Every input law certifies `lower <= C <= upper`; keep the tightest pair.
        if step.lower > best_lower {
            best_lower = step.lower;
            best.argmax_input = input_distribution(ba.input());
        }
        best_upper = best_upper.min(step.upper);
        best.capacity = best_lower.max(0.0);
        best.iterations = it;
        best.residual = (best_upper - best_lower).max(0.0);
        if best.residual <= tol {
            return Ok(best);
        }
        previous = Some((ba.input().to_vec(), step.mutual_information));
        ba.update(lambda);
        lambda = (lambda * 2.0).min(MAX_RELAXATION);
    }
    Err(Error::Convergence {
        residual: best.residual,
        tol,
        iterations: max_iter,
        best: Box::new(best),
    })
}

/// Points `k / (g + 1)` for `k = 1..=g`: a uniform grid strictly inside (0, 1).
pub fn interior_grid(points: usize) -> impl Iterator<Item = f64> + Clone {
    let denom = (points + 1) as f64;
    (1..=points).map(move |k| k as f64 / denom)
}

/// Joint law induced by feeding input law `(mu, 1 - mu)` through a 2x2 channel.
pub fn induced_joint(w: &TransitionMatrix, mu: f64) -> Result<JointDistribution2x2> {
    let a = mu * w.get(0, 0);
    let b = mu * w.get(0, 1);
    let c = (1.0 - mu) * w.get(1, 0);
    let d = (1.0 - mu) * w.get(1, 1);
    JointDistribution2x2::with_marginals(a, b, c, d, mu, a + c)
}

/// Maximize the direction mutual information over the input marginal of a 2x2 channel.
///
/// The signed objective is not concave in the input law, so this is an
/// exhaustive search over [`interior_grid`]. Grid points where the output is
/// deterministic carry no information and score 0.
pub fn direction_capacity(w: &TransitionMatrix, grid_points: usize) -> Result<CapacityResult> {
    if w.n_inputs() != 2 || w.n_outputs() != 2 {
        return Err(Error::UnsupportedShape {
            rows: w.n_inputs(),
            cols: w.n_outputs(),
        });
    }
    if grid_points < 3 {
        return Err(validation(format!(
            "direction capacity grid needs at least 3 points, got {grid_points}"
        )));
    }
    let mut best_value = f64::NEG_INFINITY;
    let mut best_mu = 0.5;
    for mu in interior_grid(grid_points) {
        let joint = induced_joint(w, mu)?;
        let value = if joint.nu <= 0.0 || joint.nu >= 1.0 {
            0.0
        } else {
            direction_mutual_information(&joint)?
        };
        if value > best_value {
            best_value = value;
            best_mu = mu;
        }
    }
    Ok(CapacityResult {
        capacity: best_value.max(0.0),
        argmax_input: Distribution::binary(best_mu)?,
        iterations: grid_points,
        residual: 1.0 / (grid_points + 1) as f64,
    })
}
