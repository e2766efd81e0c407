//! Flag definitions, the TOML config document, and resolution into a validated [`RunConfig`].

use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand};
use serde::de::DeserializeOwned;
use serde::{Deserialize, Serialize};

use rstc_core::harness::{AGrid, GridRange, Marginal, MonteCarloConfig, SweepSpec};
use rstc_core::{Coupling, LogBase, PlayerConfig, Policy, TwoPartyGameParams};

use crate::error::{CliError, CliResult};

#[derive(Debug, Parser)]
#[command(
    name = "rstc",
    version,
    about = "Direction-entropy secret exchange: capacities, utilities, sweeps, protocol runs"
)]
pub struct Cli {
    /// TOML config file. Flags given on the command line override its values.
    #[arg(long, global = true, value_name = "FILE")]
    pub config: Option<PathBuf>,

    /// Log base for reported information quantities: 2 (bits, default), e (nats), or any base > 0.
    #[arg(long, global = true, value_name = "BASE")]
    pub log_base: Option<String>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Channel capacities of both players (or of a binary symmetric channel) and the fairness case.
    Capacity(CapacityArgs),
    /// Utilities u1, u2 and the standard mutual information at one (mu, nu, a).
    Utility(UtilityArgs),
    /// Utility surface over the varying marginal and a, with the other marginal fixed.
    Sweep(SweepArgs),
    /// One protocol execution; writes the per-move table and the full transcript.
    Run(RunArgs),
    /// A batch of seeded protocol runs with fairness and capacity-bound statistics.
    Montecarlo(MonteCarloArgs),
    /// Epsilon-Nash check over unilateral deviations on a grid.
    Equilibrium(EquilibriumArgs),
    /// Run the seeded invariant suite; exits 1 if any check fails.
    Verify(VerifyArgs),
    /// Per-round direction entropy for the four pure action profiles.
    Trajectories(TrajectoryArgs),
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CapacityArgs {
    /// P1's cooperation probability.
    #[arg(long)]
    pub mu: Option<f64>,
    /// P2's cooperation probability.
    #[arg(long)]
    pub nu: Option<f64>,
    /// Mutual-cooperation probability; must satisfy the Fréchet bounds.
    #[arg(long)]
    pub a: Option<f64>,
    /// Derive `a` from the marginals instead: comonotone or independent.
    #[arg(long)]
    pub coupling: Option<String>,
    /// Evaluate a binary symmetric channel with this crossover probability instead.
    #[arg(long, conflicts_with_all = ["mu", "nu", "a", "coupling"])]
    pub crossover: Option<f64>,
    /// Stop when the capacity bounds are within this many bits [default: 1e-9].
    #[arg(long)]
    pub tol: Option<f64>,
    /// Iteration budget [default: 100000].
    #[arg(long)]
    pub max_iter: Option<usize>,
    /// Grid points for the direction capacity of a binary symmetric channel [default: 101].
    #[arg(long)]
    pub direction_grid: Option<usize>,
    /// CSV output path; metadata goes to `<out>.meta.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct UtilityArgs {
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    #[arg(long)]
    pub a: Option<f64>,
    /// Derive `a` from the marginals: comonotone or independent.
    #[arg(long)]
    pub coupling: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepArgs {
    /// Fixed marginal, e.g. `nu=0.5` or `mu=0.3`.
    #[arg(long)]
    pub fix: Option<String>,
    /// Step of the varying marginal [default: 0.1].
    #[arg(long)]
    pub step: Option<f64>,
    /// First value of the varying marginal [default: step].
    #[arg(long)]
    pub from: Option<f64>,
    /// Last value of the varying marginal [default: 1 - step].
    #[arg(long)]
    pub to: Option<f64>,
    /// How `a` is gridded: `fraction` of the Fréchet interval or `absolute` values [default: fraction].
    #[arg(long)]
    pub a_mode: Option<String>,
    /// First `a` grid value [default: a-step for fraction, 0 for absolute].
    #[arg(long)]
    pub a_from: Option<f64>,
    /// Last `a` grid value [default: 1 - a-step for fraction, 1 for absolute].
    #[arg(long)]
    pub a_to: Option<f64>,
    /// Step of the `a` grid [default: step].
    #[arg(long)]
    pub a_step: Option<f64>,
    /// Replace the `a` grid by a coupling: comonotone or independent.
    #[arg(long)]
    pub coupling: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunArgs {
    /// Number of shares per secret (rounds).
    #[arg(long)]
    pub n: Option<usize>,
    /// P1 policy: probabilistic, cooperate, defect, defect-at:K, defect-at-random [default: probabilistic].
    #[arg(long)]
    pub p1: Option<String>,
    /// P2 policy, same choices as --p1 [default: probabilistic].
    #[arg(long)]
    pub p2: Option<String>,
    /// P1's cooperation probability [default: 0.5].
    #[arg(long)]
    pub mu: Option<f64>,
    /// P2's cooperation probability [default: 0.5].
    #[arg(long)]
    pub nu: Option<f64>,
    /// Required: RNG seed for shares and policies.
    #[arg(long)]
    pub seed: Option<u64>,
    /// P1's secret as UTF-8 text [default: secret-of-p1].
    #[arg(long)]
    pub secret_p1: Option<String>,
    /// P2's secret as UTF-8 text [default: secret-of-p2].
    #[arg(long)]
    pub secret_p2: Option<String>,
    /// CSV of moves; the full transcript goes to `<out>.meta.json`.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct MonteCarloArgs {
    /// Number of trials [default: 100].
    #[arg(long)]
    pub trials: Option<usize>,
    /// Rounds per trial [default: 8].
    #[arg(long)]
    pub n: Option<usize>,
    /// P1 policy [default: probabilistic].
    #[arg(long)]
    pub p1: Option<String>,
    /// P2 policy [default: probabilistic].
    #[arg(long)]
    pub p2: Option<String>,
    /// P1's cooperation probability [default: 0.5].
    #[arg(long)]
    pub mu: Option<f64>,
    /// P2's cooperation probability [default: 0.5].
    #[arg(long)]
    pub nu: Option<f64>,
    /// Required: trial i uses seed + i.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Coupling of the announced probabilities for the capacity check [default: comonotone].
    #[arg(long)]
    pub coupling: Option<String>,
    /// Length of the random secrets in bytes [default: 16].
    #[arg(long)]
    pub secret_len: Option<usize>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EquilibriumArgs {
    #[arg(long)]
    pub mu: Option<f64>,
    #[arg(long)]
    pub nu: Option<f64>,
    /// Interior grid points k/(grid+1) for deviations [default: 101].
    #[arg(long)]
    pub grid: Option<usize>,
    /// Allowed unilateral gain in bits [default: 1e-6].
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// comonotone or independent [default: comonotone].
    #[arg(long)]
    pub coupling: Option<String>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifyArgs {
    /// Seed for the randomized checks [default: 0].
    #[arg(long)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Default, Args, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TrajectoryArgs {
    /// Rounds per run.
    #[arg(long)]
    pub n: Option<usize>,
    /// P1's announced cooperation probability [default: 0.5].
    #[arg(long)]
    pub mu: Option<f64>,
    /// P2's announced cooperation probability [default: 0.5].
    #[arg(long)]
    pub nu: Option<f64>,
    /// Required.
    #[arg(long)]
    pub seed: Option<u64>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
enum BaseSpec {
    Number(f64),
    Name(String),
}

/// The config document: an optional top-level `log_base` and one optional
/// table per command, whose keys are the command's long flags with `-` written as `_`.
#[derive(Debug, Default, Deserialize)]
#[serde(deny_unknown_fields)]
struct ConfigFile {
    log_base: Option<BaseSpec>,
    capacity: Option<CapacityArgs>,
    utility: Option<UtilityArgs>,
    sweep: Option<SweepArgs>,
    run: Option<RunArgs>,
    montecarlo: Option<MonteCarloArgs>,
    equilibrium: Option<EquilibriumArgs>,
    verify: Option<VerifyArgs>,
    trajectories: Option<TrajectoryArgs>,
}

#[derive(Debug, Clone, PartialEq)]
pub enum CapacityTarget {
    Game(TwoPartyGameParams),
    Bsc {
        crossover: f64,
        direction_grid: usize,
    },
}

#[derive(Debug, Clone, PartialEq)]
pub enum Job {
    Capacity {
        target: CapacityTarget,
        tol: f64,
        max_iter: usize,
    },
    Utility(TwoPartyGameParams),
    Sweep(SweepSpec),
    Run {
        n: usize,
        p1: PlayerConfig,
        p2: PlayerConfig,
        seed: u64,
        secret_p1: String,
        secret_p2: String,
    },
    MonteCarlo(MonteCarloConfig),
    Equilibrium {
        mu: f64,
        nu: f64,
        grid: usize,
        epsilon: f64,
        coupling: Coupling,
    },
    Verify {
        seed: u64,
    },
    Trajectories {
        n: usize,
        mu: f64,
        nu: f64,
        seed: u64,
    },
}

/// Fully resolved and validated invocation.
#[derive(Debug, Clone, PartialEq)]
pub struct RunConfig {
    pub job: Job,
    pub log_base: LogBase,
    pub out: Option<PathBuf>,
}

/// Overlay the flags that were given onto the file's table.
fn overlay<T: Serialize + DeserializeOwned>(file: Option<T>, flags: T) -> CliResult<T> {
    let Some(file) = file else { return Ok(flags) };
    let mut merged = serde_json::to_value(file).expect("args serialize");
    let flags = serde_json::to_value(flags).expect("args serialize");
    if let (Some(m), Some(f)) = (merged.as_object_mut(), flags.as_object()) {
        for (k, v) in f {
            if !v.is_null() {
                m.insert(k.clone(), v.clone());
            }
        }
    }
    serde_json::from_value(merged).map_err(|e| CliError::usage(format!("config: {e}")))
}

fn read_config(path: &Path) -> CliResult<ConfigFile> {
    let text = std::fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.display().to_string(),
        source,
    })?;
    toml::from_str(&text).map_err(|e| CliError::usage(format!("{}: {e}", path.display())))
}

fn parse_log_base(spec: &BaseSpec) -> CliResult<LogBase> {
    let value = match spec {
        BaseSpec::Number(x) => *x,
        BaseSpec::Name(s) => match s.as_str() {
            "e" | "nats" => std::f64::consts::E,
            "bits" => 2.0,
            other => other
                .parse()
                .map_err(|_| CliError::usage(format!("log_base: cannot parse '{other}'")))?,
        },
    };
    LogBase::new(value).map_err(|e| CliError::usage(format!("log_base: {e}")))
}

fn required<T>(v: Option<T>, key: &str) -> CliResult<T> {
    v.ok_or_else(|| CliError::usage(format!("{key}: required")))
}

fn probability(v: f64, key: &str) -> CliResult<f64> {
    if (0.0..=1.0).contains(&v) {
        Ok(v)
    } else {
        Err(CliError::usage(format!(
            "{key}: {v} is not a probability in [0, 1]"
        )))
    }
}

fn positive_count(v: usize, key: &str) -> CliResult<usize> {
    if v >= 1 {
        Ok(v)
    } else {
        Err(CliError::usage(format!("{key}: must be at least 1")))
    }
}

fn coupling(v: Option<&str>, key: &str) -> CliResult<Option<Coupling>> {
    v.map(|s| {
        s.parse()
            .map_err(|e| CliError::usage(format!("{key}: {e}")))
    })
    .transpose()
}

fn policy(v: Option<&str>, key: &str) -> CliResult<Policy> {
    v.unwrap_or("probabilistic")
        .parse()
        .map_err(|e| CliError::usage(format!("{key}: {e}")))
}

fn player(policy: Policy, p: f64, key: &str) -> CliResult<PlayerConfig> {
    PlayerConfig::new(policy, p).map_err(|e| CliError::usage(format!("{key}: {e}")))
}

/// `(mu, nu, a)` from explicit `a` or a coupling.
fn game_params(
    mu: Option<f64>,
    nu: Option<f64>,
    a: Option<f64>,
    coupling_name: Option<&str>,
) -> CliResult<TwoPartyGameParams> {
    let mu = probability(required(mu, "mu")?, "mu")?;
    let nu = probability(required(nu, "nu")?, "nu")?;
    let c = coupling(coupling_name, "coupling")?;
    let a = match (a, c) {
        (Some(_), Some(_)) => {
            return Err(CliError::usage("a: give either a or coupling, not both"))
        }
        (Some(a), None) => probability(a, "a")?,
        (None, Some(c)) => c.joint_mass(mu, nu),
        (None, None) => return Err(CliError::usage("a: required (or set coupling)")),
    };
    Ok(TwoPartyGameParams::new(mu, nu, a))
}

fn sweep_spec(s: &SweepArgs) -> CliResult<SweepSpec> {
    let fix = required(s.fix.as_deref(), "fix")?;
    let (name, value) = fix
        .split_once('=')
        .ok_or_else(|| CliError::usage(format!("fix: expected mu=<v> or nu=<v>, got '{fix}'")))?;
    let fixed = match name.trim() {
        "mu" => Marginal::Mu,
        "nu" => Marginal::Nu,
        other => return Err(CliError::usage(format!("fix: unknown marginal '{other}'"))),
    };
    let fixed_value: f64 = value
        .trim()
        .parse()
        .map_err(|_| CliError::usage(format!("fix: cannot parse '{value}'")))?;
    let step = s.step.unwrap_or(0.1);
    if !(step > 0.0 && step < 1.0) {
        return Err(CliError::usage(format!("step: {step} must lie in (0, 1)")));
    }
    let varying = GridRange::new(s.from.unwrap_or(step), s.to.unwrap_or(1.0 - step), step);
    let a_step = s.a_step.unwrap_or(step);
    let a_grid = match s.a_mode.as_deref().unwrap_or("fraction") {
        "fraction" => AGrid::Fraction(GridRange::new(
            s.a_from.unwrap_or(a_step),
            s.a_to.unwrap_or(1.0 - a_step),
            a_step,
        )),
        "absolute" => AGrid::Absolute(GridRange::new(
            s.a_from.unwrap_or(0.0),
            s.a_to.unwrap_or(1.0),
            a_step,
        )),
        other => {
            return Err(CliError::usage(format!(
                "a_mode: expected fraction or absolute, got '{other}'"
            )))
        }
    };
    let spec = SweepSpec {
        fixed,
        fixed_value,
        varying,
        a_grid,
        coupling: coupling(s.coupling.as_deref(), "coupling")?,
    };
    spec.validate()
        .map_err(|e| CliError::usage(format!("sweep: {e}")))?;
    Ok(spec)
}

pub fn resolve(cli: Cli) -> CliResult<RunConfig> {
    let file = match &cli.config {
        Some(path) => read_config(path)?,
        None => ConfigFile::default(),
    };
    let log_base = match (&cli.log_base, &file.log_base) {
        (Some(flag), _) => parse_log_base(&BaseSpec::Name(flag.clone()))?,
        (None, Some(spec)) => parse_log_base(spec)?,
        (None, None) => LogBase::BITS,
    };

    let (job, out) = match cli.command {
        Command::Capacity(flags) => {
            let c = overlay(file.capacity, flags)?;
            let target = match c.crossover {
                Some(eps) => {
                    if c.mu.is_some() || c.nu.is_some() || c.a.is_some() || c.coupling.is_some() {
                        return Err(CliError::usage(
                            "crossover: cannot be combined with mu, nu, a or coupling",
                        ));
                    }
                    CapacityTarget::Bsc {
                        crossover: probability(eps, "crossover")?,
                        direction_grid: c.direction_grid.unwrap_or(101),
                    }
                }
                None => CapacityTarget::Game(game_params(c.mu, c.nu, c.a, c.coupling.as_deref())?),
            };
            let tol = c.tol.unwrap_or(1e-9);
            if tol.is_nan() || tol <= 0.0 {
                return Err(CliError::usage(format!("tol: {tol} must be positive")));
            }
            let max_iter = positive_count(c.max_iter.unwrap_or(100_000), "max_iter")?;
            (
                Job::Capacity {
                    target,
                    tol,
                    max_iter,
                },
                c.out,
            )
        }
        Command::Utility(flags) => {
            let u = overlay(file.utility, flags)?;
            (
                Job::Utility(game_params(u.mu, u.nu, u.a, u.coupling.as_deref())?),
                u.out,
            )
        }
        Command::Sweep(flags) => {
            let s = overlay(file.sweep, flags)?;
            (Job::Sweep(sweep_spec(&s)?), s.out)
        }
        Command::Run(flags) => {
            let r = overlay(file.run, flags)?;
            let n = positive_count(required(r.n, "n")?, "n")?;
            let seed = required(r.seed, "seed")?;
            let mu = probability(r.mu.unwrap_or(0.5), "mu")?;
            let nu = probability(r.nu.unwrap_or(0.5), "nu")?;
            let secret_p1 = r.secret_p1.unwrap_or_else(|| "secret-of-p1".into());
            let secret_p2 = r.secret_p2.unwrap_or_else(|| "secret-of-p2".into());
            if secret_p1.is_empty() || secret_p2.is_empty() {
                return Err(CliError::usage("secret_p1/secret_p2: must not be empty"));
            }
            let job = Job::Run {
                n,
                p1: player(policy(r.p1.as_deref(), "p1")?, mu, "p1")?,
                p2: player(policy(r.p2.as_deref(), "p2")?, nu, "p2")?,
                seed,
                secret_p1,
                secret_p2,
            };
            (job, r.out)
        }
        Command::Montecarlo(flags) => {
            let m = overlay(file.montecarlo, flags)?;
            let seed = required(m.seed, "seed")?;
            let mu = probability(m.mu.unwrap_or(0.5), "mu")?;
            let nu = probability(m.nu.unwrap_or(0.5), "nu")?;
            let mut cfg = MonteCarloConfig::new(
                positive_count(m.trials.unwrap_or(100), "trials")?,
                positive_count(m.n.unwrap_or(8), "n")?,
                player(policy(m.p1.as_deref(), "p1")?, mu, "p1")?,
                player(policy(m.p2.as_deref(), "p2")?, nu, "p2")?,
                seed,
            );
            cfg.secret_len = positive_count(m.secret_len.unwrap_or(16), "secret_len")?;
            cfg.coupling = coupling(m.coupling.as_deref(), "coupling")?.unwrap_or_default();
            (Job::MonteCarlo(cfg), m.out)
        }
        Command::Equilibrium(flags) => {
            let e = overlay(file.equilibrium, flags)?;
            let epsilon = e.epsilon.unwrap_or(1e-6);
            if epsilon.is_nan() || epsilon < 0.0 {
                return Err(CliError::usage(format!(
                    "epsilon: {epsilon} must be non-negative"
                )));
            }
            let grid = e.grid.unwrap_or(101);
            if grid < 3 {
                return Err(CliError::usage("grid: must be at least 3"));
            }
            let job = Job::Equilibrium {
                mu: probability(required(e.mu, "mu")?, "mu")?,
                nu: probability(required(e.nu, "nu")?, "nu")?,
                grid,
                epsilon,
                coupling: coupling(e.coupling.as_deref(), "coupling")?.unwrap_or_default(),
            };
            (job, e.out)
        }
        Command::Verify(flags) => {
            let v = overlay(file.verify, flags)?;
            (
                Job::Verify {
                    seed: v.seed.unwrap_or(0),
                },
                None,
            )
        }
        Command::Trajectories(flags) => {
            let t = overlay(file.trajectories, flags)?;
            let job = Job::Trajectories {
                n: positive_count(required(t.n, "n")?, "n")?,
                mu: probability(t.mu.unwrap_or(0.5), "mu")?,
                nu: probability(t.nu.unwrap_or(0.5), "nu")?,
                seed: required(t.seed, "seed")?,
            };
            (job, t.out)
        }
    };
    Ok(RunConfig { job, log_base, out })
}
