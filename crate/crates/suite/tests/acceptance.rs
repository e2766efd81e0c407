//! Acceptance suite: one PASS/FAIL line per criterion, nonzero exit if any fails.
//!
//! Reference values are computed here independently of the library.

use std::path::Path;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;

use rstc_core::game_model::{
    check_epsilon_nash, joint_from_params, transition_matrix_p1, FairnessCaseId,
};
use rstc_core::harness::{
    capacity_report, monte_carlo_runs, sweep_utility_surface, AGrid, GridRange, Marginal,
    MonteCarloConfig, SweepSpec,
};
use rstc_core::info_theory::{
    channel_capacity, direction_capacity, mutual_information, TransitionMatrix,
};
use rstc_core::protocol::{
    reconstruct, run_protocol, split_secret, transcript_direction_entropy, PlayerConfig, PlayerId,
    Policy, Secret, Termination,
};
use rstc_core::{utility_pair, Coupling, TwoPartyGameParams};
use rstc_suite::{h2, mutual_information_2x2, BSC_CAPACITY};

struct Outcome {
    passed: bool,
    detail: String,
}

type Criterion = (&'static str, fn() -> Outcome);

fn outcome(passed: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        passed,
        detail: detail.into(),
    }
}

fn random_feasible(rng: &mut ChaCha20Rng) -> TwoPartyGameParams {
    let mu: f64 = rng.gen_range(0.001..0.999);
    let nu: f64 = rng.gen_range(0.001..0.999);
    let lo = (mu + nu - 1.0).max(0.0);
    let hi = mu.min(nu);
    TwoPartyGameParams::new(mu, nu, lo + rng.gen::<f64>() * (hi - lo))
}

fn capacity_correctness() -> Outcome {
    let start = Instant::now();
    let mut worst: f64 = 0.0;
    for (eps, frozen) in BSC_CAPACITY {
        let c = match TransitionMatrix::binary_symmetric(eps)
            .and_then(|w| channel_capacity(&w, 1e-9, 100_000))
        {
            Ok(c) => c.capacity,
            Err(e) => return outcome(false, format!("eps = {eps}: {e}")),
        };
        // The frozen table is rounded to 6 decimals.
        worst = worst
            .max((c - (1.0 - h2(eps))).abs())
            .max((c - frozen).abs() - 5e-7);
    }
    let elapsed = start.elapsed();
    outcome(
        worst <= 1e-5 && elapsed < Duration::from_secs(1),
        format!("max |C - (1 - H2)| = {worst:.2e}, runtime {elapsed:?}"),
    )
}

fn entropy_identities() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(2);
    let (mut neg, mut above, mut indep, mut oracle_gap) = (0, 0, 0.0f64, 0.0f64);
    for _ in 0..1000 {
        let p = random_feasible(&mut rng);
        let mi = mutual_information(&joint_from_params(&p).unwrap());
        oracle_gap = oracle_gap.max((mi - mutual_information_2x2(p.mu, p.nu, p.a)).abs());
        if mi < 0.0 {
            neg += 1;
        }
        if mi > h2(p.mu).min(h2(p.nu)) + 1e-9 {
            above += 1;
        }
        let j = joint_from_params(&TwoPartyGameParams::new(p.mu, p.nu, p.mu * p.nu)).unwrap();
        indep = indep.max(mutual_information(&j).abs());
    }
    outcome(
        neg == 0 && above == 0 && indep <= 1e-9 && oracle_gap <= 1e-12,
        format!("negative {neg}, above min entropy {above}, max |MI| on a = mu nu {indep:.2e}, max oracle gap {oracle_gap:.2e}"),
    )
}

fn utility_components_agree() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(3);
    let mut worst: f64 = 0.0;
    for _ in 0..10_000 {
        let p = random_feasible(&mut rng);
        match utility_pair(&p) {
            Ok((u1, u2)) => worst = worst.max((u1 - u2).abs() / u1.abs().max(1.0)),
            Err(e) => return outcome(false, format!("{p:?}: {e}")),
        }
    }
    outcome(
        worst <= f64::EPSILON,
        format!("max relative |u1 - u2| = {worst:.2e} over 10000 points"),
    )
}

/// Max over `a` of the utility of the player whose marginal varies.
fn peak_curve(fixed: Marginal, value: f64) -> Vec<(f64, f64)> {
    let spec = SweepSpec {
        fixed,
        fixed_value: value,
        varying: GridRange::new(0.05, 0.95, 0.05),
        a_grid: AGrid::Fraction(GridRange::new(0.0, 1.0, 0.001)),
        coupling: None,
    };
    sweep_utility_surface(&spec)
        .expect("valid sweep")
        .max_over_a()
}

fn surface_shape() -> Outcome {
    let mut passed = true;
    let mut notes = Vec::new();
    for fixed in [Marginal::Nu, Marginal::Mu] {
        for value in [0.3, 0.5, 0.7] {
            let curve = peak_curve(fixed, value);
            let at = |v: f64| {
                curve
                    .iter()
                    .find(|(x, _)| (x - v).abs() < 1e-9)
                    .map(|c| c.1)
                    .unwrap()
            };
            let upper: Vec<f64> = curve
                .iter()
                .filter(|(x, _)| *x > 0.549)
                .map(|c| c.1)
                .collect();
            let monotone = upper.windows(2).all(|w| w[1] >= w[0] - 1e-9);
            let rises = at(0.95) > at(0.3);
            let low_max = curve
                .iter()
                .filter(|(x, _)| *x < 0.5)
                .map(|c| c.1)
                .fold(0.0, f64::max);
            let low_ok = low_max < 1.5;
            passed &= monotone && rises && low_ok;
            let name = if fixed == Marginal::Nu { "nu" } else { "mu" };
            notes.push(format!(
                "{name}={value}: monotone on [0.55,0.95] {monotone}, f(0.55)={:.4} f(0.95)={:.4} f(0.3)={:.4}, low max {low_max:.4}",
                at(0.55),
                at(0.95),
                at(0.3)
            ));
        }
    }
    outcome(passed, notes.join("; "))
}

fn protocol_correctness() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(5);
    let (mut failures, mut xor_failures) = (0, 0);
    for i in 0..1000u64 {
        let n = 1 + (i % 16) as usize;
        let len = rng.gen_range(1..48);
        let s1 = Secret::new((0..len).map(|_| rng.gen()).collect()).unwrap();
        let s2 = Secret::new((0..len).map(|_| rng.gen()).collect()).unwrap();
        let p = PlayerConfig::new(Policy::AlwaysCooperate, rng.gen_range(0.01..0.99)).unwrap();
        let t = run_protocol(&s1, &s2, n, p, p, i).unwrap();
        if t.termination != Termination::Completed
            || t.reconstructed.p1.as_ref() != Some(&s2)
            || t.reconstructed.p2.as_ref() != Some(&s1)
        {
            failures += 1;
        }
        for s in [&s1, &s2] {
            if reconstruct(&split_secret(s, n, i).unwrap()).unwrap() != *s {
                xor_failures += 1;
            }
        }
    }
    outcome(
        failures == 0 && xor_failures == 0,
        format!(
            "reconstruction rate {:.3}, xor round-trip failures {xor_failures}",
            (1000 - failures) as f64 / 1000.0
        ),
    )
}

fn fairness() -> Outcome {
    let mut rng = ChaCha20Rng::seed_from_u64(6);
    let mut max_gap = 0;
    for i in 0..1000u64 {
        let n = rng.gen_range(1..=16);
        let k = rng.gen_range(1..=n);
        let attacker = PlayerConfig::new(
            Policy::DefectAtRound { round: k },
            rng.gen_range(0.05..0.95),
        )
        .unwrap();
        let honest_policy = if i % 3 == 0 {
            Policy::Probabilistic
        } else {
            Policy::AlwaysCooperate
        };
        let honest = PlayerConfig::new(honest_policy, rng.gen_range(0.05..0.95)).unwrap();
        let (p1, p2) = if i % 2 == 0 {
            (attacker, honest)
        } else {
            (honest, attacker)
        };
        let s = Secret::new(vec![i as u8, 1, 2]).unwrap();
        let t = run_protocol(&s, &s, n, p1, p2, i).unwrap();
        max_gap = max_gap.max(t.shares_held.gap());
    }
    // Equal marginals with random feasible a, Fréchet endpoints included.
    let mut unbalanced = Vec::new();
    for i in 0..200 {
        let mu: f64 = rng.gen_range(0.02..0.98);
        let (lo, hi) = ((2.0 * mu - 1.0).max(0.0), mu);
        let t = match i % 10 {
            0 => 0.0,
            1 => 1.0,
            _ => rng.gen::<f64>(),
        };
        let p = TwoPartyGameParams::new(mu, mu, lo + t * (hi - lo));
        match capacity_report(&p) {
            Ok(r) if r.fairness.case_id == FairnessCaseId::Balanced => {}
            Ok(r) => unbalanced.push(format!("{p:?} M-N={:.2e}", r.m.capacity - r.n.capacity)),
            Err(e) => unbalanced.push(format!("{p:?}: {e}")),
        }
    }
    outcome(
        max_gap <= 1 && unbalanced.is_empty(),
        format!(
            "max share advantage {max_gap}, non-balanced equal-marginal profiles {}{}",
            unbalanced.len(),
            unbalanced
                .first()
                .map(|s| format!(" (e.g. {s})"))
                .unwrap_or_default()
        ),
    )
}

fn cooperation_ordering() -> Outcome {
    let s = Secret::new(b"ordering".to_vec()).unwrap();
    let mut notes = Vec::new();
    let mut passed = true;
    for k in 1..=9 {
        let p = k as f64 / 10.0;
        let coop = PlayerConfig::new(Policy::AlwaysCooperate, p).unwrap();
        let defect = PlayerConfig::new(Policy::AlwaysDefect, p).unwrap();
        let seed = 100 + k;
        let last = |t: &_, who| *transcript_direction_entropy(t, who).last().unwrap();
        let both = run_protocol(&s, &s, 8, coop, coop, seed).unwrap();
        let p1_defects = run_protocol(&s, &s, 8, defect, coop, seed).unwrap();
        let p2_defects = run_protocol(&s, &s, 8, coop, defect, seed).unwrap();
        let ok = last(&both, PlayerId::P1) > last(&p1_defects, PlayerId::P1)
            && last(&both, PlayerId::P2) > last(&p2_defects, PlayerId::P2)
            && last(&p2_defects, PlayerId::P1) > last(&p2_defects, PlayerId::P2);
        passed &= ok;
        if !ok {
            notes.push(format!("p = {p}"));
        }
    }
    outcome(
        passed,
        if notes.is_empty() {
            "cooperator ahead for p = 0.1..0.9".into()
        } else {
            format!("violations at {}", notes.join(", "))
        },
    )
}

fn capacity_bound() -> Outcome {
    let configs = [
        (Policy::Probabilistic, Policy::Probabilistic, 0.5, 0.5),
        (Policy::Probabilistic, Policy::Probabilistic, 0.9, 0.6),
        (Policy::Probabilistic, Policy::Probabilistic, 0.2, 0.8),
        (
            Policy::AlwaysCooperate,
            Policy::DefectAtRandomRound,
            0.9,
            0.9,
        ),
        (Policy::DefectAtRandomRound, Policy::Probabilistic, 0.7, 0.3),
        (Policy::AlwaysCooperate, Policy::AlwaysCooperate, 0.99, 0.99),
    ];
    let mut total = 0;
    let mut runs = 0;
    for (i, (a, b, mu, nu)) in configs.into_iter().enumerate() {
        for coupling in [Coupling::Comonotone, Coupling::Independent] {
            for n in [1, 4, 16] {
                let mut cfg = MonteCarloConfig::new(
                    200,
                    n,
                    PlayerConfig::new(a, mu).unwrap(),
                    PlayerConfig::new(b, nu).unwrap(),
                    1000 * i as u64 + n as u64,
                );
                cfg.coupling = coupling;
                match monte_carlo_runs(&cfg) {
                    Ok(s) => total += s.capacity_bound_violations,
                    Err(e) => return outcome(false, e.to_string()),
                }
                runs += 1;
            }
        }
    }
    outcome(
        total == 0,
        format!("{total} violations over {runs} configurations"),
    )
}

fn equilibrium() -> Outcome {
    let pass = check_epsilon_nash(0.99, 0.99, Coupling::Comonotone, 101, 1e-6).unwrap();
    let fail = check_epsilon_nash(0.3, 0.99, Coupling::Comonotone, 101, 1e-6).unwrap();
    let joint = joint_from_params(&pass.profile).unwrap();
    let dc = direction_capacity(&transition_matrix_p1(&joint).unwrap(), 101).unwrap();
    outcome(
        pass.is_epsilon_nash && !fail.is_epsilon_nash,
        format!(
            "(0.99,0.99) nash {}, (0.3,0.99) nash {} (gains {:.4}, {:.4}); |u1 - direction capacity| = {:.6} (reported only)",
            pass.is_epsilon_nash,
            fail.is_epsilon_nash,
            fail.max_gain_p1,
            fail.max_gain_p2,
            (pass.utility_p1 - dc.capacity).abs()
        ),
    )
}

/// One full CLI invocation: parsing, config resolution, execution and file output.
fn run_cli(args: &[&str]) -> Result<(), String> {
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let argv = std::iter::once("rstc").chain(args.iter().copied());
    match rstc_cli::run(argv, &mut out, &mut err) {
        0 => Ok(()),
        code => Err(format!(
            "{args:?} exited {code}: {}",
            String::from_utf8_lossy(&err)
        )),
    }
}

fn same_bytes(a: &Path, b: &Path) -> bool {
    std::fs::read(a)
        .ok()
        .is_some_and(|x| Some(x) == std::fs::read(b).ok())
}

fn determinism() -> Outcome {
    let dir = tempfile::tempdir().expect("temp dir");
    let p = |name: &str| dir.path().join(name);
    let config = p("run.toml");
    std::fs::write(&config, "[run]\nn = 12\np1 = \"probabilistic\"\np2 = \"defect-at-random\"\nmu = 0.8\nnu = 0.7\nseed = 41\n")
        .expect("write config");
    let mut problems = Vec::new();
    for name in ["a", "b"] {
        let sweep = p(&format!("sweep_{name}.csv"));
        let run = p(&format!("run_{name}.csv"));
        if let Err(e) = run_cli(&[
            "sweep",
            "--fix",
            "nu=0.5",
            "--step",
            "0.1",
            "--out",
            sweep.to_str().unwrap(),
        ]) {
            problems.push(e);
        }
        if let Err(e) = run_cli(&[
            "--config",
            config.to_str().unwrap(),
            "run",
            "--out",
            run.to_str().unwrap(),
        ]) {
            problems.push(e);
        }
    }
    let pairs = [
        ("sweep_a.csv", "sweep_b.csv"),
        ("sweep_a.csv.meta.json", "sweep_b.csv.meta.json"),
        ("run_a.csv", "run_b.csv"),
        ("run_a.csv.meta.json", "run_b.csv.meta.json"),
    ];
    for (a, b) in pairs {
        if !same_bytes(&p(a), &p(b)) {
            problems.push(format!("{a} differs from {b}"));
        }
    }
    outcome(
        problems.is_empty(),
        if problems.is_empty() {
            "sweep and run outputs byte-identical".into()
        } else {
            problems.join("; ")
        },
    )
}

fn main() {
    let criteria: [Criterion; 10] = [
        (
            "capacity of binary symmetric channels",
            capacity_correctness,
        ),
        (
            "entropy and mutual information identities",
            entropy_identities,
        ),
        ("utility components agree", utility_components_agree),
        ("utility surface shape", surface_shape),
        ("protocol reconstruction", protocol_correctness),
        ("share advantage and balanced capacities", fairness),
        (
            "cooperator ends with more direction entropy",
            cooperation_ordering,
        ),
        ("capacity bound in Monte Carlo batches", capacity_bound),
        ("epsilon-Nash verdicts", equilibrium),
        ("determinism of sweep and run", determinism),
    ];
    let mut failed = 0;
    for (i, (name, check)) in criteria.iter().enumerate() {
        let start = Instant::now();
        let o = check();
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!(
            "{tag} criterion {}: {name} [{:.2?}] {}",
            i + 1,
            start.elapsed(),
            o.detail
        );
        failed += usize::from(!o.passed);
    }
    println!(
        "{} of {} criteria passed",
        criteria.len() - failed,
        criteria.len()
    );
    if failed > 0 {
        std::process::exit(1);
    }
}
