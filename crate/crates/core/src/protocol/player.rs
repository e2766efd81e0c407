use rand::Rng;
use serde::{Deserialize, Serialize};

use crate::error::{validation, Error, Result};
use crate::info_theory::surprisal_term;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum PlayerId {
    P1,
    P2,
}

impl PlayerId {
    pub fn other(self) -> PlayerId {
        match self {
            PlayerId::P1 => PlayerId::P2,
            PlayerId::P2 => PlayerId::P1,
        }
    }
}

impl std::fmt::Display for PlayerId {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            PlayerId::P1 => "P1",
            PlayerId::P2 => "P2",
        })
    }
}

impl std::str::FromStr for PlayerId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "P1" | "p1" | "1" => Ok(PlayerId::P1),
            "P2" | "p2" | "2" => Ok(PlayerId::P2),
            other => Err(Error::UnknownPlayer(other.to_string())),
        }
    }
}

/// C or D.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum Action {
    #[serde(rename = "C")]
    Cooperate,
    #[serde(rename = "D")]
    Defect,
}

impl Action {
    /// Direction label: `+1` for C, `-1` for D.
    pub fn direction(self) -> i8 {
        match self {
            Action::Cooperate => 1,
            Action::Defect => -1,
        }
    }
}

/// How a player picks C or D each round.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "kebab-case")]
pub enum Policy {
    /// Cooperate with the configured probability, independently each round.
    Probabilistic,
    AlwaysCooperate,
    AlwaysDefect,
    /// Cooperate before round `round` (1-based), defect at it.
    DefectAtRound {
        round: usize,
    },
    /// Defect at a round drawn uniformly from `1..=n` at the start of the run.
    DefectAtRandomRound,
}

impl Policy {
    pub fn is_probabilistic(self) -> bool {
        matches!(self, Policy::Probabilistic)
    }
}

impl std::fmt::Display for Policy {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Policy::Probabilistic => f.write_str("probabilistic"),
            Policy::AlwaysCooperate => f.write_str("cooperate"),
            Policy::AlwaysDefect => f.write_str("defect"),
            Policy::DefectAtRound { round } => write!(f, "defect-at:{round}"),
            Policy::DefectAtRandomRound => f.write_str("defect-at-random"),
        }
    }
}

impl std::str::FromStr for Policy {
    type Err = Error;

    /// `probabilistic`, `cooperate`, `defect`, `defect-at:K` or `defect-at-random`.
    fn from_str(s: &str) -> Result<Self> {
        match s {
            "probabilistic" => Ok(Policy::Probabilistic),
            "cooperate" | "always-cooperate" => Ok(Policy::AlwaysCooperate),
            "defect" | "always-defect" => Ok(Policy::AlwaysDefect),
            "defect-at-random" => Ok(Policy::DefectAtRandomRound),
            other => {
                let k = other
                    .strip_prefix("defect-at:")
                    .and_then(|k| k.parse::<usize>().ok())
                    .filter(|&k| k >= 1)
                    .ok_or_else(|| validation(format!("unknown policy '{other}'")))?;
                Ok(Policy::DefectAtRound { round: k })
            }
        }
    }
}

/// A player's behaviour: decision rule plus announced cooperation probability.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct PlayerConfig {
    pub policy: Policy,
    /// `mu` for P1, `nu` for P2; drives the per-round entropy increments.
    pub coop_prob: f64,
}

impl PlayerConfig {
    pub fn new(policy: Policy, coop_prob: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&coop_prob) {
            return Err(validation(format!(
                "cooperation probability {coop_prob} is outside [0, 1]"
            )));
        }
        if policy.is_probabilistic() && (coop_prob == 0.0 || coop_prob == 1.0) {
            return Err(Error::DegenerateProbability(coop_prob));
        }
        Ok(PlayerConfig { policy, coop_prob })
    }
}

/// Positive information carried by a C round: `p log2(1/p)`.
pub fn cooperation_increment(p: f64) -> f64 {
    surprisal_term(p)
}

/// Signed information carried by a D round: `-(1-p) log2(1/(1-p))`.
pub fn defection_information(p: f64) -> f64 {
    -surprisal_term(1.0 - p)
}

/// Result of applying one action to a player's entropy state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EntropyUpdate {
    /// Cumulative direction entropy after the action (C adds, D leaves unchanged).
    pub cumulative: f64,
    /// Amount added to the cumulative value.
    pub increment: f64,
    /// Signed information of this action (positive for C, negative for D).
    pub signed_info: f64,
    /// Running signed direction entropy after the action.
    pub signed_total: f64,
}

/// Mutable per-player protocol state.
#[derive(Debug, Clone)]
pub struct PlayerState {
    pub id: PlayerId,
    pub config: PlayerConfig,
    pub cumulative_dir_entropy: f64,
    /// Running sum of signed information over the direction history.
    pub signed_dir_entropy: f64,
    pub received_shares: Vec<Vec<u8>>,
    pub direction_history: Vec<i8>,
    defect_round: Option<usize>,
}

impl PlayerState {
    pub fn new(id: PlayerId, config: PlayerConfig) -> Self {
        let defect_round = match config.policy {
            Policy::DefectAtRound { round } => Some(round),
            _ => None,
        };
        PlayerState {
            id,
            config,
            cumulative_dir_entropy: 0.0,
            signed_dir_entropy: 0.0,
            received_shares: Vec::new(),
            direction_history: Vec::new(),
            defect_round,
        }
    }

    /// Draw the defection round for [`Policy::DefectAtRandomRound`].
    pub(crate) fn prepare<R: Rng>(&mut self, n: usize, rng: &mut R) {
        if let Policy::DefectAtRandomRound = self.config.policy {
            self.defect_round = Some(rng.gen_range(1..=n));
        }
    }

    pub(crate) fn decide<R: Rng>(&self, round: usize, rng: &mut R) -> Action {
        let cooperate = match self.config.policy {
            Policy::Probabilistic => rng.gen::<f64>() < self.config.coop_prob,
            Policy::AlwaysCooperate => true,
            Policy::AlwaysDefect => false,
            Policy::DefectAtRound { .. } | Policy::DefectAtRandomRound => {
                self.defect_round.is_none_or(|k| round < k)
            }
        };
        if cooperate {
            Action::Cooperate
        } else {
            Action::Defect
        }
    }

    /// Apply one action: C adds `p log2(1/p)` to the cumulative value, D leaves
    /// it unchanged and contributes `-(1-p) log2(1/(1-p))` to the signed total.
    pub fn update_direction_entropy(&mut self, action: Action) -> Result<EntropyUpdate> {
        let p = self.config.coop_prob;
        if self.config.policy.is_probabilistic() && (p <= 0.0 || p >= 1.0) {
            return Err(Error::DegenerateProbability(p));
        }
        let (increment, signed_info) = match action {
            Action::Cooperate => {
                let inc = cooperation_increment(p);
                (inc, inc)
            }
            Action::Defect => (0.0, defection_information(p)),
        };
        self.cumulative_dir_entropy += increment;
        self.signed_dir_entropy += signed_info;
        self.direction_history.push(action.direction());
        Ok(EntropyUpdate {
            cumulative: self.cumulative_dir_entropy,
            increment,
            signed_info,
            signed_total: self.signed_dir_entropy,
        })
    }
}

/// Send the next share iff the observed direction entropy did not drop.
pub fn decide_continue(h_now: f64, h_prev: f64) -> bool {
    h_now - h_prev >= 0.0
}
