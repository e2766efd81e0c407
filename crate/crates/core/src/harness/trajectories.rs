//! Per-round direction-entropy series for the four pure action profiles.

use serde::Serialize;

use crate::error::{validation, Result};
use crate::protocol::{
    run_protocol, transcript_direction_entropy, transcript_signed_direction_entropy, Action,
    PlayerConfig, PlayerId, Policy, Secret, Termination,
};
use crate::units::LogBase;

use super::output::{csv_error, csv_writer, fmt_g6, run_id, RunMetadata};

/// One of (C,C), (C,D), (D,C), (D,D); first entry is P1's action.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub struct ActionProfile(pub Action, pub Action);

impl ActionProfile {
    pub const ALL: [ActionProfile; 4] = [
        ActionProfile(Action::Cooperate, Action::Cooperate),
        ActionProfile(Action::Cooperate, Action::Defect),
        ActionProfile(Action::Defect, Action::Cooperate),
        ActionProfile(Action::Defect, Action::Defect),
    ];

    pub fn label(self) -> String {
        let c = |a: Action| match a {
            Action::Cooperate => 'C',
            Action::Defect => 'D',
        };
        format!("{}{}", c(self.0), c(self.1))
    }
}

fn pure(action: Action, p: f64) -> Result<PlayerConfig> {
    let policy = match action {
        Action::Cooperate => Policy::AlwaysCooperate,
        Action::Defect => Policy::AlwaysDefect,
    };
    PlayerConfig::new(policy, p)
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectorySeries {
    pub profile: ActionProfile,
    pub player: PlayerId,
    /// Cumulative direction entropy after each recorded round.
    pub cumulative: Vec<f64>,
    /// Running signed direction entropy after each recorded round.
    pub signed: Vec<f64>,
    pub termination: Termination,
}

impl TrajectorySeries {
    pub fn final_cumulative(&self) -> f64 {
        self.cumulative.last().copied().unwrap_or(0.0)
    }

    pub fn final_signed(&self) -> f64 {
        self.signed.last().copied().unwrap_or(0.0)
    }
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct TrajectoryTable {
    pub n: usize,
    pub mu: f64,
    pub nu: f64,
    pub seed: u64,
    pub series: Vec<TrajectorySeries>,
    pub run_id: String,
}

/// Run every pure profile once with the same seed; two series (P1, P2) per profile.
pub fn entropy_trajectories(n: usize, mu: f64, nu: f64, seed: u64) -> Result<TrajectoryTable> {
    if n == 0 {
        return Err(validation("trajectories need at least one round"));
    }
    let s1 = Secret::new(b"trajectory-p1".to_vec())?;
    let s2 = Secret::new(b"trajectory-p2".to_vec())?;
    let mut series = Vec::with_capacity(8);
    for profile in ActionProfile::ALL {
        let t = run_protocol(
            &s1,
            &s2,
            n,
            pure(profile.0, mu)?,
            pure(profile.1, nu)?,
            seed,
        )?;
        for player in [PlayerId::P1, PlayerId::P2] {
            series.push(TrajectorySeries {
                profile,
                player,
                cumulative: transcript_direction_entropy(&t, player),
                signed: transcript_signed_direction_entropy(&t, player),
                termination: t.termination,
            });
        }
    }
    Ok(TrajectoryTable {
        n,
        mu,
        nu,
        seed,
        series,
        run_id: run_id(&("trajectories", n, mu, nu, seed)),
    })
}

pub const TRAJECTORY_COLUMNS: [&str; 5] = ["profile", "player", "round", "cumulative", "signed"];

impl TrajectoryTable {
    pub fn get(&self, profile: ActionProfile, player: PlayerId) -> &TrajectorySeries {
        self.series
            .iter()
            .find(|s| s.profile == profile && s.player == player)
            .expect("every profile has both players")
    }

    pub fn write_csv<W: std::io::Write>(&self, out: W, base: LogBase) -> Result<()> {
        let mut w = csv_writer(out);
        w.write_record(TRAJECTORY_COLUMNS).map_err(csv_error)?;
        for s in &self.series {
            for (k, (c, h)) in s.cumulative.iter().zip(&s.signed).enumerate() {
                w.write_record([
                    s.profile.label(),
                    s.player.to_string(),
                    (k + 1).to_string(),
                    fmt_g6(base.from_bits(*c)),
                    fmt_g6(base.from_bits(*h)),
                ])
                .map_err(csv_error)?;
            }
        }
        w.flush()
            .map_err(|e| validation(format!("csv output failed: {e}")))?;
        Ok(())
    }

    pub fn to_csv_string(&self, base: LogBase) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf, base).expect("in-memory csv");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn metadata(&self, base: LogBase) -> RunMetadata {
        let rows = self.series.iter().map(|s| s.cumulative.len()).sum();
        let finals: Vec<_> = self
            .series
            .iter()
            .map(|s| {
                serde_json::json!({
                    "profile": s.profile.label(),
                    "player": s.player.to_string(),
                    "final_cumulative": fmt_g6(base.from_bits(s.final_cumulative())),
                    "final_signed": fmt_g6(base.from_bits(s.final_signed())),
                    "termination": s.termination,
                })
            })
            .collect();
        RunMetadata {
            command: "trajectories".into(),
            run_id: self.run_id.clone(),
            log_base: base.value(),
            columns: TRAJECTORY_COLUMNS.iter().map(|s| s.to_string()).collect(),
            rows,
            details: serde_json::json!({
                "n": self.n, "mu": self.mu, "nu": self.nu, "seed": self.seed, "finals": finals,
            }),
        }
    }
}
