use serde::{Deserialize, Serialize};

use crate::error::Result;

use super::player::{Action, PlayerConfig, PlayerId};
use super::sharing::Secret;

/// One player's move within a round.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct MoveRecord {
    pub actor: PlayerId,
    pub action: Action,
    /// 1-based index of the share transmitted, if any.
    pub share_sent: Option<usize>,
    pub direction: i8,
    /// Signed information of this move, i.e. the change in the actor's signed
    /// direction entropy observed by the counterparty.
    pub delta_h: f64,
    /// Whether the counterparty's continuation check passed after this move.
    pub counterparty_continues: bool,
    pub cumulative_p1: f64,
    pub cumulative_p2: f64,
    pub signed_p1: f64,
    pub signed_p2: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RoundRecord {
    pub round: usize,
    pub moves: Vec<MoveRecord>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "SCREAMING_SNAKE_CASE")]
pub enum Termination {
    Completed,
    TerminatedByP1,
    TerminatedByP2,
}

impl Termination {
    pub fn by(player: PlayerId) -> Self {
        match player {
            PlayerId::P1 => Termination::TerminatedByP1,
            PlayerId::P2 => Termination::TerminatedByP2,
        }
    }
}

/// Counterpart shares held by each player.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SharesHeld {
    pub p1: usize,
    pub p2: usize,
}

impl SharesHeld {
    pub fn gap(&self) -> usize {
        self.p1.abs_diff(self.p2)
    }
}

/// Secrets each player rebuilt: P1 rebuilds P2's secret and vice versa.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Reconstructed {
    pub p1: Option<Secret>,
    pub p2: Option<Secret>,
}

/// Complete record of one protocol execution.
///
/// Serialized field order is the declaration order below.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct ProtocolTranscript {
    pub n: usize,
    pub seed: u64,
    pub p1: PlayerConfig,
    pub p2: PlayerConfig,
    pub rounds: Vec<RoundRecord>,
    pub termination: Termination,
    pub shares_held: SharesHeld,
    pub reconstructed: Reconstructed,
}

impl ProtocolTranscript {
    pub fn moves(&self) -> impl Iterator<Item = &MoveRecord> {
        self.rounds.iter().flat_map(|r| r.moves.iter())
    }

    pub fn transmissions(&self) -> usize {
        self.moves().filter(|m| m.share_sent.is_some()).count()
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("transcript is always serializable")
    }

    pub fn from_json(s: &str) -> Result<Self> {
        serde_json::from_str(s)
            .map_err(|e| crate::error::validation(format!("bad transcript document: {e}")))
    }
}

/// Per-round cumulative direction entropy of `player`, one value per round record.
pub fn transcript_direction_entropy(t: &ProtocolTranscript, player: PlayerId) -> Vec<f64> {
    per_round(t, |m| match player {
        PlayerId::P1 => m.cumulative_p1,
        PlayerId::P2 => m.cumulative_p2,
    })
}

/// Per-round running signed direction entropy of `player`.
pub fn transcript_signed_direction_entropy(t: &ProtocolTranscript, player: PlayerId) -> Vec<f64> {
    per_round(t, |m| match player {
        PlayerId::P1 => m.signed_p1,
        PlayerId::P2 => m.signed_p2,
    })
}

/// Lookup by textual player id.
pub fn transcript_direction_entropy_for(t: &ProtocolTranscript, player: &str) -> Result<Vec<f64>> {
    Ok(transcript_direction_entropy(t, player.parse()?))
}

fn per_round(t: &ProtocolTranscript, pick: impl Fn(&MoveRecord) -> f64) -> Vec<f64> {
    t.rounds
        .iter()
        .filter_map(|r| r.moves.last().map(&pick))
        .collect()
}
