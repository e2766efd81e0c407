//! Small CSV tables for single-shot commands.

use crate::error::{validation, Result};
use crate::game_model::EquilibriumReport;
use crate::info_theory::CapacityResult;
use crate::protocol::ProtocolTranscript;
use crate::units::LogBase;

use super::output::{csv_error, csv_writer, fmt_g6};

pub const CAPACITY_COLUMNS: [&str; 5] =
    ["channel", "capacity", "argmax_p0", "iterations", "residual"];

pub const UTILITY_COLUMNS: [&str; 7] = ["mu", "nu", "a", "u1", "u2", "standard_mi", "signed_dmi"];

pub const EQUILIBRIUM_COLUMNS: [&str; 11] = [
    "mu",
    "nu",
    "a",
    "u1",
    "u2",
    "max_gain_p1",
    "max_gain_p2",
    "best_response_p1",
    "best_response_p2",
    "is_epsilon_nash",
    "direction_capacity_gap",
];

pub const TRANSCRIPT_COLUMNS: [&str; 11] = [
    "round",
    "actor",
    "action",
    "share_sent",
    "direction",
    "delta_h",
    "counterparty_continues",
    "cumulative_p1",
    "cumulative_p2",
    "signed_p1",
    "signed_p2",
];

fn render<const N: usize>(columns: [&str; N], rows: Vec<Vec<String>>) -> Result<String> {
    let mut w = csv_writer(Vec::new());
    w.write_record(columns).map_err(csv_error)?;
    for row in rows {
        w.write_record(row).map_err(csv_error)?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| validation(format!("csv output failed: {e}")))?;
    Ok(String::from_utf8(bytes).expect("csv is utf-8"))
}

/// One row per named channel.
pub fn capacity_csv(results: &[(&str, &CapacityResult)], base: LogBase) -> Result<String> {
    let rows = results
        .iter()
        .map(|(name, r)| {
            vec![
                name.to_string(),
                fmt_g6(base.from_bits(r.capacity)),
                fmt_g6(r.argmax_input.probs()[0]),
                r.iterations.to_string(),
                fmt_g6(r.residual),
            ]
        })
        .collect();
    render(CAPACITY_COLUMNS, rows)
}

/// `values` is `[mu, nu, a, u1, u2, standard_mi, signed_dmi]`, information in bits.
pub fn utility_csv(values: [f64; 7], base: LogBase) -> Result<String> {
    let row = values
        .iter()
        .enumerate()
        .map(|(i, &v)| fmt_g6(if i < 3 { v } else { base.from_bits(v) }))
        .collect();
    render(UTILITY_COLUMNS, vec![row])
}

pub fn equilibrium_csv(r: &EquilibriumReport, capacity_gap: f64, base: LogBase) -> Result<String> {
    let info = |x: f64| fmt_g6(base.from_bits(x));
    let row = vec![
        fmt_g6(r.profile.mu),
        fmt_g6(r.profile.nu),
        fmt_g6(r.profile.a),
        info(r.utility_p1),
        info(r.utility_p2),
        info(r.max_gain_p1),
        info(r.max_gain_p2),
        fmt_g6(r.best_response_p1),
        fmt_g6(r.best_response_p2),
        r.is_epsilon_nash.to_string(),
        info(capacity_gap),
    ];
    render(EQUILIBRIUM_COLUMNS, vec![row])
}

/// One row per move, in execution order.
pub fn transcript_csv(t: &ProtocolTranscript, base: LogBase) -> Result<String> {
    let info = |x: f64| fmt_g6(base.from_bits(x));
    let rows = t
        .rounds
        .iter()
        .flat_map(|r| r.moves.iter().map(move |m| (r.round, m)))
        .map(|(round, m)| {
            vec![
                round.to_string(),
                m.actor.to_string(),
                serde_json::to_value(m.action)
                    .ok()
                    .and_then(|v| v.as_str().map(str::to_string))
                    .unwrap_or_default(),
                m.share_sent.map(|s| s.to_string()).unwrap_or_default(),
                m.direction.to_string(),
                info(m.delta_h),
                m.counterparty_continues.to_string(),
                info(m.cumulative_p1),
                info(m.cumulative_p2),
                info(m.signed_p1),
                info(m.signed_p2),
            ]
        })
        .collect();
    render(TRANSCRIPT_COLUMNS, rows)
}
