//! Dispatch of a resolved [`RunConfig`] to the library.

use std::io::Write;
use std::path::{Path, PathBuf};

use rstc_core::game_model::{check_epsilon_nash, joint_from_params, transition_matrix_p1};
use rstc_core::harness::{
    capacity_csv, capacity_report_with, entropy_trajectories, equilibrium_csv, fmt_g6,
    monte_carlo_runs, run_id, sweep_utility_surface, transcript_csv, utility_csv, RunMetadata,
    SweepStatus, CAPACITY_COLUMNS, EQUILIBRIUM_COLUMNS, TRANSCRIPT_COLUMNS, UTILITY_COLUMNS,
};
use rstc_core::info_theory::{
    channel_capacity, direction_capacity, mutual_information, signed_direction_mutual_information,
    TransitionMatrix,
};
use rstc_core::verify::run_invariant_suite;
use rstc_core::{run_protocol, utility_pair, LogBase, Secret};

use crate::config::{CapacityTarget, Job, RunConfig};
use crate::error::{CliError, CliResult};

fn meta_path(out: &Path) -> PathBuf {
    let mut name = out.as_os_str().to_owned();
    name.push(".meta.json");
    PathBuf::from(name)
}

fn write_file(path: &Path, body: &str) -> CliResult<()> {
    std::fs::write(path, body).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })
}

/// Write the CSV and its metadata sidecar when an output path is configured.
fn emit(out: Option<&Path>, csv: &str, meta: &RunMetadata) -> CliResult<()> {
    if let Some(path) = out {
        write_file(path, csv)?;
        write_file(&meta_path(path), &(meta.to_json() + "\n"))?;
    }
    Ok(())
}

fn columns<const N: usize>(c: [&str; N]) -> Vec<String> {
    c.iter().map(|s| s.to_string()).collect()
}

pub fn execute(cfg: &RunConfig, stdout: &mut dyn Write) -> CliResult<()> {
    let base = cfg.log_base;
    let unit = if base == LogBase::BITS {
        "bits".to_string()
    } else {
        format!("log base {}", fmt_g6(base.value()))
    };
    let info = |bits: f64| fmt_g6(base.from_bits(bits));
    let out = cfg.out.as_deref();
    let io = |e: std::io::Error| CliError::Io {
        path: "stdout".into(),
        source: e,
    };

    match &cfg.job {
        Job::Capacity {
            target: CapacityTarget::Game(params),
            tol,
            max_iter,
        } => {
            let r = capacity_report_with(params, *tol, *max_iter)?;
            writeln!(stdout, "information unit: {unit}").map_err(io)?;
            writeln!(stdout, "M (P1 channel) = {}", info(r.m.capacity)).map_err(io)?;
            writeln!(stdout, "N (P2 channel) = {}", info(r.n.capacity)).map_err(io)?;
            writeln!(
                stdout,
                "fairness = {}",
                serde_json::to_value(r.fairness.case_id)
                    .unwrap()
                    .as_str()
                    .unwrap()
            )
            .map_err(io)?;
            let csv = capacity_csv(&[("p1", &r.m), ("p2", &r.n)], base)?;
            let meta = RunMetadata {
                command: "capacity".into(),
                run_id: run_id(&("capacity", params, tol, max_iter)),
                log_base: base.value(),
                columns: columns(CAPACITY_COLUMNS),
                rows: 2,
                details: serde_json::json!({ "params": params, "fairness": r.fairness, "tol": tol }),
            };
            emit(out, &csv, &meta)
        }
        Job::Capacity {
            target:
                CapacityTarget::Bsc {
                    crossover,
                    direction_grid,
                },
            tol,
            max_iter,
        } => {
            let w = TransitionMatrix::binary_symmetric(*crossover)?;
            let c = channel_capacity(&w, *tol, *max_iter)?;
            let d = direction_capacity(&w, *direction_grid)?;
            writeln!(stdout, "information unit: {unit}").map_err(io)?;
            writeln!(stdout, "capacity = {}", info(c.capacity)).map_err(io)?;
            writeln!(
                stdout,
                "direction capacity = {} at p = {}",
                info(d.capacity),
                fmt_g6(d.argmax_input.probs()[0])
            )
            .map_err(io)?;
            let csv = capacity_csv(&[("bsc", &c), ("bsc_direction", &d)], base)?;
            let meta = RunMetadata {
                command: "capacity".into(),
                run_id: run_id(&("capacity-bsc", crossover, direction_grid, tol, max_iter)),
                log_base: base.value(),
                columns: columns(CAPACITY_COLUMNS),
                rows: 2,
                details: serde_json::json!({ "crossover": crossover, "direction_grid": direction_grid, "tol": tol }),
            };
            emit(out, &csv, &meta)
        }
        Job::Utility(params) => {
            let (u1, u2) = utility_pair(params)?;
            let joint = joint_from_params(params)?;
            let mi = mutual_information(&joint);
            let signed = signed_direction_mutual_information(&joint)?;
            writeln!(stdout, "information unit: {unit}").map_err(io)?;
            writeln!(stdout, "u1 = {}", info(u1)).map_err(io)?;
            writeln!(stdout, "u2 = {}", info(u2)).map_err(io)?;
            writeln!(stdout, "standard_mi = {}", info(mi)).map_err(io)?;
            let csv = utility_csv([params.mu, params.nu, params.a, u1, u2, mi, signed], base)?;
            let meta = RunMetadata {
                command: "utility".into(),
                run_id: run_id(&("utility", params)),
                log_base: base.value(),
                columns: columns(UTILITY_COLUMNS),
                rows: 1,
                details: serde_json::json!({ "params": params }),
            };
            emit(out, &csv, &meta)
        }
        Job::Sweep(spec) => {
            let r = sweep_utility_surface(spec)?;
            writeln!(
                stdout,
                "rows = {}, skipped = {}, grid = {}",
                r.rows.len(),
                r.skipped_count,
                spec.grid_size()
            )
            .map_err(io)?;
            if r.status == SweepStatus::EmptyFeasibleGrid {
                writeln!(stdout, "warning: no feasible grid point").map_err(io)?;
            }
            writeln!(stdout, "run_id = {}", r.run_id).map_err(io)?;
            emit(out, &r.to_csv_string(base), &r.metadata(base))
        }
        Job::Run {
            n,
            p1,
            p2,
            seed,
            secret_p1,
            secret_p2,
        } => {
            let s1 = Secret::new(secret_p1.as_bytes().to_vec())?;
            let s2 = Secret::new(secret_p2.as_bytes().to_vec())?;
            let t = run_protocol(&s1, &s2, *n, *p1, *p2, *seed)?;
            let ok = |r: &Option<Secret>, want: &Secret| r.as_ref() == Some(want);
            writeln!(
                stdout,
                "termination = {}",
                serde_json::to_value(t.termination)
                    .unwrap()
                    .as_str()
                    .unwrap()
            )
            .map_err(io)?;
            writeln!(
                stdout,
                "shares held: p1 = {}, p2 = {}",
                t.shares_held.p1, t.shares_held.p2
            )
            .map_err(io)?;
            writeln!(
                stdout,
                "reconstructed: p1 = {}, p2 = {}",
                ok(&t.reconstructed.p1, &s2),
                ok(&t.reconstructed.p2, &s1)
            )
            .map_err(io)?;
            let csv = transcript_csv(&t, base)?;
            let meta = RunMetadata {
                command: "run".into(),
                run_id: run_id(&("run", n, p1, p2, seed, secret_p1, secret_p2)),
                log_base: base.value(),
                columns: columns(TRANSCRIPT_COLUMNS),
                rows: t.moves().count(),
                details: serde_json::json!({ "transcript": t }),
            };
            emit(out, &csv, &meta)
        }
        Job::MonteCarlo(mc) => {
            let s = monte_carlo_runs(mc)?;
            writeln!(stdout, "trials = {}, n = {}", s.trials, s.n).map_err(io)?;
            writeln!(
                stdout,
                "reconstruction_rate = {}",
                fmt_g6(s.reconstruction_rate)
            )
            .map_err(io)?;
            writeln!(
                stdout,
                "mean_fairness_gap = {}",
                fmt_g6(s.mean_fairness_gap)
            )
            .map_err(io)?;
            writeln!(stdout, "max_fairness_gap = {}", s.max_fairness_gap).map_err(io)?;
            writeln!(
                stdout,
                "capacity_bound_violations = {}",
                s.capacity_bound_violations
            )
            .map_err(io)?;
            emit(out, &s.to_csv_string(), &s.metadata(mc, base))
        }
        Job::Equilibrium {
            mu,
            nu,
            grid,
            epsilon,
            coupling,
        } => {
            let r = check_epsilon_nash(*mu, *nu, *coupling, *grid, *epsilon)?;
            let joint = joint_from_params(&r.profile)?;
            let dc = direction_capacity(&transition_matrix_p1(&joint)?, *grid)?;
            let gap = (r.utility_p1 - dc.capacity).abs();
            writeln!(stdout, "information unit: {unit}").map_err(io)?;
            writeln!(stdout, "epsilon-nash = {}", r.is_epsilon_nash).map_err(io)?;
            writeln!(
                stdout,
                "u1 = {}, u2 = {}",
                info(r.utility_p1),
                info(r.utility_p2)
            )
            .map_err(io)?;
            writeln!(
                stdout,
                "max gain: p1 = {}, p2 = {}",
                info(r.max_gain_p1),
                info(r.max_gain_p2)
            )
            .map_err(io)?;
            writeln!(stdout, "|u1 - direction capacity| = {}", info(gap)).map_err(io)?;
            let meta = RunMetadata {
                command: "equilibrium".into(),
                run_id: run_id(&("equilibrium", mu, nu, grid, epsilon, coupling)),
                log_base: base.value(),
                columns: columns(EQUILIBRIUM_COLUMNS),
                rows: 1,
                details: serde_json::json!({ "report": r, "direction_capacity": dc.capacity }),
            };
            emit(out, &equilibrium_csv(&r, gap, base)?, &meta)
        }
        Job::Verify { seed } => {
            let checks = run_invariant_suite(*seed);
            for c in &checks {
                let tag = if c.passed { "PASS" } else { "FAIL" };
                writeln!(stdout, "{tag} {} ({})", c.name, c.detail).map_err(io)?;
            }
            match checks.iter().filter(|c| !c.passed).count() {
                0 => Ok(()),
                failed => Err(CliError::Verify(failed)),
            }
        }
        Job::Trajectories { n, mu, nu, seed } => {
            let t = entropy_trajectories(*n, *mu, *nu, *seed)?;
            writeln!(stdout, "information unit: {unit}").map_err(io)?;
            for s in &t.series {
                writeln!(
                    stdout,
                    "{} {}: final cumulative = {}, final signed = {}",
                    s.profile.label(),
                    s.player,
                    info(s.final_cumulative()),
                    info(s.final_signed())
                )
                .map_err(io)?;
            }
            emit(out, &t.to_csv_string(base), &t.metadata(base))
        }
    }
}
