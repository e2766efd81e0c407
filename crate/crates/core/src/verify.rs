//! Seeded self-check of the library invariants, used by the `verify` command.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha20Rng;
use serde::Serialize;

use crate::game_model::{
    check_epsilon_nash, joint_from_params, utility_pair, Coupling, FairnessCaseId,
    TwoPartyGameParams,
};
use crate::harness::{capacity_report, monte_carlo_runs, MonteCarloConfig};
use crate::info_theory::{binary_entropy, channel_capacity, mutual_information, TransitionMatrix};
use crate::protocol::{reconstruct, run_protocol, split_secret, PlayerConfig, Policy, Secret};

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub passed: bool,
    pub detail: String,
}

fn check(name: &'static str, failures: usize, total: usize) -> Check {
    Check {
        name,
        passed: failures == 0,
        detail: format!("{failures} failures out of {total}"),
    }
}

fn random_params(rng: &mut ChaCha20Rng) -> TwoPartyGameParams {
    let mu = rng.gen_range(0.01..0.99);
    let nu = rng.gen_range(0.01..0.99);
    let (lo, hi) = TwoPartyGameParams::frechet_bounds(mu, nu);
    TwoPartyGameParams::new(mu, nu, lo + rng.gen::<f64>() * (hi - lo))
}

pub fn run_invariant_suite(seed: u64) -> Vec<Check> {
    let mut rng = ChaCha20Rng::seed_from_u64(seed);
    let mut out = Vec::new();

    let mut bad = 0;
    for k in 1..=9 {
        let eps = 0.05 * k as f64;
        let ok = TransitionMatrix::binary_symmetric(eps)
            .and_then(|w| channel_capacity(&w, 1e-9, 100_000))
            .map(|c| (c.capacity - (1.0 - binary_entropy(eps))).abs() <= 1e-5)
            .unwrap_or(false);
        bad += usize::from(!ok);
    }
    out.push(check("bsc capacity closed form", bad, 9));

    let total = 1000;
    let (mut bad_mi, mut bad_indep, mut bad_sym) = (0, 0, 0);
    for _ in 0..total {
        let p = random_params(&mut rng);
        let Ok(j) = joint_from_params(&p) else {
            bad_mi += 1;
            continue;
        };
        let mi = mutual_information(&j);
        if mi < 0.0 || mi > binary_entropy(p.mu).min(binary_entropy(p.nu)) + 1e-9 {
            bad_mi += 1;
        }
        let indep = TwoPartyGameParams::coupled(p.mu, p.nu, Coupling::Independent);
        match joint_from_params(&indep) {
            Ok(j) if mutual_information(&j).abs() <= 1e-9 => {}
            _ => bad_indep += 1,
        }
        match utility_pair(&p) {
            Ok((u1, u2)) if u1 == u2 => {}
            _ => bad_sym += 1,
        }
    }
    out.push(check("mutual information bounds", bad_mi, total));
    out.push(check(
        "independence gives zero information",
        bad_indep,
        total,
    ));
    out.push(check("utility symmetry", bad_sym, total));

    let mut bad_cap = 0;
    for _ in 0..50 {
        let p = random_params(&mut rng);
        let ok = match (capacity_report(&p), joint_from_params(&p)) {
            (Ok(r), Ok(j)) => {
                let mi = mutual_information(&j);
                mi <= r.m.capacity + 1e-6 && mi <= r.n.capacity + 1e-6
            }
            _ => false,
        };
        bad_cap += usize::from(!ok);
    }
    out.push(check(
        "mutual information below both capacities",
        bad_cap,
        50,
    ));

    let mut bad_bal = 0;
    for _ in 0..50 {
        let mu = rng.gen_range(0.05..0.95);
        let (lo, hi) = TwoPartyGameParams::frechet_bounds(mu, mu);
        let p = TwoPartyGameParams::new(mu, mu, lo + rng.gen::<f64>() * (hi - lo));
        let ok = capacity_report(&p)
            .map(|r| r.fairness.case_id == FairnessCaseId::Balanced)
            .unwrap_or(false);
        bad_bal += usize::from(!ok);
    }
    out.push(check("equal marginals are balanced", bad_bal, 50));

    let mut bad_xor = 0;
    for n in 1..=32 {
        let mut bytes = vec![0u8; 1 + n % 7];
        rng.fill(bytes.as_mut_slice());
        let secret = Secret::new(bytes).expect("non-empty");
        let ok = split_secret(&secret, n, rng.gen())
            .and_then(|s| reconstruct(&s))
            .map(|r| r == secret)
            .unwrap_or(false);
        bad_xor += usize::from(!ok);
    }
    out.push(check("xor sharing round trip", bad_xor, 32));

    let mut bad_gap = 0;
    let runs = 200;
    for i in 0..runs {
        let n = 1 + i % 12;
        let k = 1 + (i / 12) % n;
        let s1 = Secret::new(vec![1, 2, 3]).expect("non-empty");
        let s2 = Secret::new(vec![4, 5, 6]).expect("non-empty");
        let p1 = PlayerConfig::new(Policy::AlwaysCooperate, 0.8).expect("valid");
        let p2 = PlayerConfig::new(Policy::DefectAtRound { round: k }, 0.8).expect("valid");
        let ok = run_protocol(&s1, &s2, n, p1, p2, seed.wrapping_add(i as u64))
            .map(|t| t.shares_held.gap() <= 1)
            .unwrap_or(false);
        bad_gap += usize::from(!ok);
    }
    out.push(check("share advantage at most one", bad_gap, runs));

    let mc = MonteCarloConfig::new(
        100,
        8,
        PlayerConfig::new(Policy::Probabilistic, 0.7).expect("valid"),
        PlayerConfig::new(Policy::Probabilistic, 0.6).expect("valid"),
        seed,
    );
    out.push(match monte_carlo_runs(&mc) {
        Ok(s) => check(
            "monte carlo capacity bound",
            s.capacity_bound_violations,
            s.trials,
        ),
        Err(e) => Check {
            name: "monte carlo capacity bound",
            passed: false,
            detail: e.to_string(),
        },
    });

    let nash = check_epsilon_nash(0.99, 0.99, Coupling::Comonotone, 101, 1e-6);
    out.push(Check {
        name: "comonotone (0.99, 0.99) is epsilon-nash",
        passed: nash.as_ref().map(|r| r.is_epsilon_nash).unwrap_or(false),
        detail: match nash {
            Ok(r) => format!("max gains {:.3e}, {:.3e}", r.max_gain_p1, r.max_gain_p2),
            Err(e) => e.to_string(),
        },
    });

    out
}
