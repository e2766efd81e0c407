use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};

/// Tolerance applied to every simplex constraint.
pub const SIMPLEX_TOL: f64 = 1e-9;

/// A finite probability vector.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<f64>", into = "Vec<f64>")]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        if probs.is_empty() {
            return Err(validation("distribution must have at least one entry"));
        }
        for (i, &p) in probs.iter().enumerate() {
            if !(0.0..=1.0).contains(&p) {
                return Err(validation(format!(
                    "probability p[{i}] = {p} is outside [0, 1]"
                )));
            }
        }
        let total: f64 = probs.iter().sum();
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(validation(format!(
                "probabilities sum to {total}, expected 1"
            )));
        }
        Ok(Distribution { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(validation("distribution must have at least one entry"));
        }
        Ok(Distribution {
            probs: vec![1.0 / n as f64; n],
        })
    }

    /// `(p, 1 - p)`.
    pub fn binary(p: f64) -> Result<Self> {
        Distribution::new(vec![p, 1.0 - p])
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }

    /// True when all mass sits on a single outcome.
    pub fn is_degenerate(&self) -> bool {
        self.probs.iter().any(|&p| (p - 1.0).abs() <= SIMPLEX_TOL)
    }
}

impl TryFrom<Vec<f64>> for Distribution {
    type Error = crate::Error;

    fn try_from(probs: Vec<f64>) -> Result<Self> {
        Distribution::new(probs)
    }
}

impl From<Distribution> for Vec<f64> {
    fn from(d: Distribution) -> Self {
        d.probs
    }
}

/// Per-event sign labels: `+1` marks positive (cooperative) information, `-1` negative.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(try_from = "Vec<i8>", into = "Vec<i8>")]
pub struct DirectionVector {
    signs: Vec<i8>,
}

impl DirectionVector {
    pub fn new(signs: Vec<i8>) -> Result<Self> {
        if let Some((i, s)) = signs.iter().enumerate().find(|(_, &s)| s != 1 && s != -1) {
            return Err(validation(format!(
                "direction sign d[{i}] = {s} is not +1 or -1"
            )));
        }
        Ok(DirectionVector { signs })
    }

    pub fn all_positive(n: usize) -> Self {
        DirectionVector { signs: vec![1; n] }
    }

    pub fn all_negative(n: usize) -> Self {
        DirectionVector { signs: vec![-1; n] }
    }

    pub fn signs(&self) -> &[i8] {
        &self.signs
    }

    pub fn len(&self) -> usize {
        self.signs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.signs.is_empty()
    }

    pub fn flipped(&self) -> Self {
        DirectionVector {
            signs: self.signs.iter().map(|s| -s).collect(),
        }
    }
}

impl TryFrom<Vec<i8>> for DirectionVector {
    type Error = crate::Error;

    fn try_from(signs: Vec<i8>) -> Result<Self> {
        DirectionVector::new(signs)
    }
}

impl From<DirectionVector> for Vec<i8> {
    fn from(d: DirectionVector) -> Self {
        d.signs
    }
}

/// Joint law of two binary variables.
///
/// `a` is the mass of the cell where both variables take their *marked* outcome
/// (the one whose marginal probability is `mu` for X and `nu` for Y). In the game
/// model the marked outcome is "cooperate", so `a` is the probability of mutual
/// cooperation, `b` of (X marked, Y unmarked), `c` of (X unmarked, Y marked) and
/// `d` of neither.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct JointDistribution2x2 {
    pub a: f64,
    pub b: f64,
    pub c: f64,
    pub d: f64,
    pub mu: f64,
    pub nu: f64,
}

impl JointDistribution2x2 {
    /// Build from the four cells; marginals are derived.
    pub fn new(a: f64, b: f64, c: f64, d: f64) -> Result<Self> {
        Self::with_marginals(a, b, c, d, a + b, a + c)
    }

    /// Build from cells and explicitly supplied marginals, checking consistency.
    pub fn with_marginals(a: f64, b: f64, c: f64, d: f64, mu: f64, nu: f64) -> Result<Self> {
        for (name, v) in [("a", a), ("b", b), ("c", c), ("d", d)] {
            if !(0.0..=1.0).contains(&v) {
                return Err(validation(format!(
                    "joint cell {name} = {v} is outside [0, 1]"
                )));
            }
        }
        let total = a + b + c + d;
        if (total - 1.0).abs() > SIMPLEX_TOL {
            return Err(validation(format!(
                "joint cells sum to {total}, expected 1"
            )));
        }
        if !(0.0..=1.0).contains(&mu) || !(0.0..=1.0).contains(&nu) {
            return Err(validation(format!(
                "marginals mu = {mu}, nu = {nu} must lie in [0, 1]"
            )));
        }
        if (mu - (a + b)).abs() > SIMPLEX_TOL {
            return Err(validation(format!("mu = {mu} but a + b = {}", a + b)));
        }
        if (nu - (a + c)).abs() > SIMPLEX_TOL {
            return Err(validation(format!("nu = {nu} but a + c = {}", a + c)));
        }
        Ok(JointDistribution2x2 { a, b, c, d, mu, nu })
    }

    /// `[[a, b], [c, d]]`, rows indexed by X, columns by Y.
    pub fn cells(&self) -> [[f64; 2]; 2] {
        [[self.a, self.b], [self.c, self.d]]
    }

    pub fn marginal_x(&self) -> [f64; 2] {
        [self.mu, 1.0 - self.mu]
    }

    pub fn marginal_y(&self) -> [f64; 2] {
        [self.nu, 1.0 - self.nu]
    }

    /// The same law with the roles of X and Y exchanged.
    pub fn transposed(&self) -> Self {
        JointDistribution2x2 {
            a: self.a,
            b: self.c,
            c: self.b,
            d: self.d,
            mu: self.nu,
            nu: self.mu,
        }
    }
}

/// Discrete memoryless channel: row `i` is the law of the output given input `i`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct TransitionMatrix {
    rows: Vec<Distribution>,
}

impl TransitionMatrix {
    pub fn new(rows: Vec<Distribution>) -> Result<Self> {
        let Some(first) = rows.first() else {
            return Err(validation("transition matrix needs at least one row"));
        };
        let width = first.len();
        if let Some(i) = rows.iter().position(|r| r.len() != width) {
            return Err(validation(format!(
                "row {i} has length {}, expected {width}",
                rows[i].len()
            )));
        }
        Ok(TransitionMatrix { rows })
    }

    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let rows = rows
            .into_iter()
            .map(Distribution::new)
            .collect::<Result<Vec<_>>>()?;
        TransitionMatrix::new(rows)
    }

    /// Binary symmetric channel with the given crossover probability.
    pub fn binary_symmetric(crossover: f64) -> Result<Self> {
        TransitionMatrix::from_rows(vec![
            vec![1.0 - crossover, crossover],
            vec![crossover, 1.0 - crossover],
        ])
    }

    pub fn rows(&self) -> &[Distribution] {
        &self.rows
    }

    pub fn n_inputs(&self) -> usize {
        self.rows.len()
    }

    pub fn n_outputs(&self) -> usize {
        self.rows[0].len()
    }

    pub fn get(&self, input: usize, output: usize) -> f64 {
        self.rows[input].probs()[output]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn distribution_rejects_bad_input() {
        assert!(Distribution::new(vec![]).is_err());
        assert!(Distribution::new(vec![0.5, 0.6]).is_err());
        assert!(Distribution::new(vec![1.2, -0.2]).is_err());
        assert!(Distribution::new(vec![f64::NAN, 1.0]).is_err());
        assert!(Distribution::new(vec![0.5, 0.5 + 5e-10]).is_ok());
    }

    #[test]
    fn degenerate_detection() {
        assert!(Distribution::new(vec![1.0, 0.0]).unwrap().is_degenerate());
        assert!(!Distribution::uniform(3).unwrap().is_degenerate());
    }

    #[test]
    fn direction_vector_rejects_zero() {
        assert!(DirectionVector::new(vec![1, 0]).is_err());
        assert!(DirectionVector::new(vec![1, -1, 2]).is_err());
        assert_eq!(
            DirectionVector::new(vec![1, -1]).unwrap().flipped().signs(),
            &[-1, 1]
        );
    }

    #[test]
    fn joint_checks_marginals() {
        let j = JointDistribution2x2::new(0.4, 0.2, 0.1, 0.3).unwrap();
        assert!((j.mu - 0.6).abs() < 1e-15);
        assert!((j.nu - 0.5).abs() < 1e-15);
        assert!(JointDistribution2x2::with_marginals(0.4, 0.2, 0.1, 0.3, 0.5, 0.5).is_err());
        assert!(JointDistribution2x2::new(0.4, 0.2, 0.1, 0.4).is_err());
        assert!(JointDistribution2x2::new(-0.1, 0.5, 0.3, 0.3).is_err());
        let t = j.transposed();
        assert_eq!((t.b, t.c, t.mu, t.nu), (0.1, 0.2, j.nu, j.mu));
    }

    #[test]
    fn transition_matrix_rows_must_agree() {
        assert!(TransitionMatrix::from_rows(vec![vec![1.0], vec![0.5, 0.5]]).is_err());
        assert!(TransitionMatrix::from_rows(vec![]).is_err());
        let w = TransitionMatrix::binary_symmetric(0.1).unwrap();
        assert_eq!((w.n_inputs(), w.n_outputs()), (2, 2));
        assert_eq!(w.get(0, 1), 0.1);
    }

    #[test]
    fn distribution_serde_validates() {
        let ok: Distribution = serde_json::from_str("[0.25,0.75]").unwrap();
        assert_eq!(ok.probs(), &[0.25, 0.75]);
        assert!(serde_json::from_str::<Distribution>("[0.5,0.75]").is_err());
    }
}
