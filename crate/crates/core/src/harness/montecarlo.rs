//! Batches of seeded protocol runs.

use rand::{RngCore, SeedableRng};
use rand_chacha::ChaCha20Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{validation, Result};
use crate::game_model::{joint_from_params, Coupling, TwoPartyGameParams};
use crate::info_theory::mutual_information;
use crate::protocol::{run_protocol, PlayerConfig, ProtocolTranscript, Secret, SharesHeld};
use crate::units::LogBase;

use super::capacity::capacity_report;
use super::output::{csv_error, csv_writer, fmt_g6, run_id, RunMetadata};

/// Slack allowed when comparing per-round mutual information with capacity.
pub const CAPACITY_SLACK: f64 = 1e-6;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct MonteCarloConfig {
    pub trials: usize,
    pub n: usize,
    pub p1: PlayerConfig,
    pub p2: PlayerConfig,
    pub base_seed: u64,
    /// Length in bytes of the random secrets drawn for each trial.
    pub secret_len: usize,
    /// Joint law of the announced cooperation probabilities, for the capacity check.
    pub coupling: Coupling,
}

impl MonteCarloConfig {
    pub fn new(
        trials: usize,
        n: usize,
        p1: PlayerConfig,
        p2: PlayerConfig,
        base_seed: u64,
    ) -> Self {
        MonteCarloConfig {
            trials,
            n,
            p1,
            p2,
            base_seed,
            secret_len: 16,
            coupling: Coupling::default(),
        }
    }
}

/// Outcome of a single trial.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct TrialSummary {
    pub seed: u64,
    /// Counterpart shares received by each player.
    pub shares: SharesHeld,
    pub reconstructed_p1: bool,
    pub reconstructed_p2: bool,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MonteCarloStats {
    pub trials: usize,
    pub n: usize,
    /// Fraction of trials in which both players rebuilt the counterpart secret.
    pub reconstruction_rate: f64,
    pub mean_fairness_gap: f64,
    pub max_fairness_gap: usize,
    pub per_trial: Vec<TrialSummary>,
    /// Trials with `S > n`, plus one if the per-round mutual information of the
    /// announced joint exceeds `min(M, N)` by more than [`CAPACITY_SLACK`].
    pub capacity_bound_violations: usize,
    /// Trials where some player received more than `n * N` shares. Reported only.
    pub literal_bound_exceedances: usize,
    pub capacity_m: Option<f64>,
    pub capacity_n: Option<f64>,
    pub standard_mi: Option<f64>,
    pub run_id: String,
}

/// Per-trial secrets come from their own ChaCha20 stream so trial `i` is
/// reproducible from `base_seed + i` alone.
fn trial_secrets(seed: u64, len: usize) -> Result<(Secret, Secret)> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    rng.set_stream(u64::MAX);
    let mut s1 = vec![0u8; len];
    let mut s2 = vec![0u8; len];
    rng.fill_bytes(&mut s1);
    rng.fill_bytes(&mut s2);
    Ok((Secret::new(s1)?, Secret::new(s2)?))
}

pub fn run_trial(
    cfg: &MonteCarloConfig,
    index: usize,
) -> Result<(TrialSummary, ProtocolTranscript)> {
    let seed = cfg.base_seed.wrapping_add(index as u64);
    let (s1, s2) = trial_secrets(seed, cfg.secret_len)?;
    let t = run_protocol(&s1, &s2, cfg.n, cfg.p1, cfg.p2, seed)?;
    let summary = TrialSummary {
        seed,
        shares: t.shares_held,
        reconstructed_p1: t.reconstructed.p1.as_ref() == Some(&s2),
        reconstructed_p2: t.reconstructed.p2.as_ref() == Some(&s1),
    };
    Ok((summary, t))
}

/// Capacity figures for the announced probabilities; `None` when a marginal is
/// 0 or 1 and the conditional channel is undefined.
fn capacity_figures(cfg: &MonteCarloConfig) -> Result<(Option<f64>, Option<f64>, Option<f64>)> {
    let (mu, nu) = (cfg.p1.coop_prob, cfg.p2.coop_prob);
    let params = TwoPartyGameParams::coupled(mu, nu, cfg.coupling);
    let mi = mutual_information(&joint_from_params(&params)?);
    if mu <= 0.0 || mu >= 1.0 || nu <= 0.0 || nu >= 1.0 {
        return Ok((None, None, Some(mi)));
    }
    let report = capacity_report(&params)?;
    Ok((Some(report.m.capacity), Some(report.n.capacity), Some(mi)))
}

pub fn monte_carlo_runs(cfg: &MonteCarloConfig) -> Result<MonteCarloStats> {
    if cfg.trials == 0 {
        return Err(validation("monte carlo needs at least one trial"));
    }
    if cfg.secret_len == 0 {
        return Err(validation("secret length must be at least one byte"));
    }
    let per_trial: Vec<TrialSummary> = (0..cfg.trials)
        .into_par_iter()
        .map(|i| run_trial(cfg, i).map(|(s, _)| s))
        .collect::<Result<_>>()?;

    let (capacity_m, capacity_n, standard_mi) = capacity_figures(cfg)?;

    let n = cfg.n;
    let mut violations = per_trial
        .iter()
        .filter(|s| s.shares.p1 > n || s.shares.p2 > n)
        .count();
    if let (Some(m), Some(cap_n), Some(mi)) = (capacity_m, capacity_n, standard_mi) {
        if mi > m.min(cap_n) + CAPACITY_SLACK {
            violations += 1;
        }
    }
    let literal_bound_exceedances = match capacity_n {
        Some(cap_n) => {
            let limit = n as f64 * cap_n;
            per_trial
                .iter()
                .filter(|s| s.shares.p1.max(s.shares.p2) as f64 > limit + CAPACITY_SLACK)
                .count()
        }
        None => 0,
    };

    let both = per_trial
        .iter()
        .filter(|s| s.reconstructed_p1 && s.reconstructed_p2)
        .count();
    let gaps = per_trial.iter().map(|s| s.shares.gap());
    let total_gap: usize = gaps.clone().sum();

    Ok(MonteCarloStats {
        trials: cfg.trials,
        n,
        reconstruction_rate: both as f64 / cfg.trials as f64,
        mean_fairness_gap: total_gap as f64 / cfg.trials as f64,
        max_fairness_gap: gaps.max().unwrap_or(0),
        per_trial,
        capacity_bound_violations: violations,
        literal_bound_exceedances,
        capacity_m,
        capacity_n,
        standard_mi,
        run_id: run_id(&("montecarlo", cfg)),
    })
}

pub const MONTE_CARLO_COLUMNS: [&str; 6] = [
    "trial",
    "seed",
    "shares_p1",
    "shares_p2",
    "gap",
    "reconstructed_both",
];

impl MonteCarloStats {
    pub fn write_csv<W: std::io::Write>(&self, out: W) -> Result<()> {
        let mut w = csv_writer(out);
        w.write_record(MONTE_CARLO_COLUMNS).map_err(csv_error)?;
        for (i, s) in self.per_trial.iter().enumerate() {
            w.write_record([
                i.to_string(),
                s.seed.to_string(),
                s.shares.p1.to_string(),
                s.shares.p2.to_string(),
                s.shares.gap().to_string(),
                (s.reconstructed_p1 && s.reconstructed_p2).to_string(),
            ])
            .map_err(csv_error)?;
        }
        w.flush()
            .map_err(|e| validation(format!("csv output failed: {e}")))?;
        Ok(())
    }

    pub fn to_csv_string(&self) -> String {
        let mut buf = Vec::new();
        self.write_csv(&mut buf).expect("in-memory csv");
        String::from_utf8(buf).expect("csv is utf-8")
    }

    pub fn metadata(&self, cfg: &MonteCarloConfig, base: LogBase) -> RunMetadata {
        let conv = |x: Option<f64>| x.map(|v| fmt_g6(base.from_bits(v)));
        RunMetadata {
            command: "montecarlo".into(),
            run_id: self.run_id.clone(),
            log_base: base.value(),
            columns: MONTE_CARLO_COLUMNS.iter().map(|s| s.to_string()).collect(),
            rows: self.per_trial.len(),
            details: serde_json::json!({
                "config": cfg,
                "reconstruction_rate": fmt_g6(self.reconstruction_rate),
                "mean_fairness_gap": fmt_g6(self.mean_fairness_gap),
                "max_fairness_gap": self.max_fairness_gap,
                "capacity_bound_violations": self.capacity_bound_violations,
                "literal_bound_exceedances": self.literal_bound_exceedances,
                "capacity_m": conv(self.capacity_m),
                "capacity_n": conv(self.capacity_n),
                "standard_mi": conv(self.standard_mi),
            }),
        }
    }
}
