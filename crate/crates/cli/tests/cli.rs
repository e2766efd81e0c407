use std::process::{Command, Output};

fn rstc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_rstc"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn help_lists_every_command_and_flag() {
    let o = rstc(&["--help"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    for cmd in [
        "capacity",
        "utility",
        "sweep",
        "run",
        "montecarlo",
        "equilibrium",
        "verify",
        "trajectories",
    ] {
        assert!(text.contains(cmd), "{cmd} missing from help");
    }
    let o = rstc(&["run", "--help"]);
    assert_eq!(o.status.code(), Some(0));
    for flag in [
        "--n",
        "--p1",
        "--p2",
        "--mu",
        "--nu",
        "--seed",
        "--secret-p1",
        "--secret-p2",
        "--out",
        "--config",
        "--log-base",
    ] {
        assert!(stdout(&o).contains(flag), "{flag} missing from run --help");
    }
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(
        rstc(&["run", "--n", "0", "--seed", "1"]).status.code(),
        Some(2)
    );
    assert_eq!(rstc(&["run", "--n", "3"]).status.code(), Some(2));
    assert_eq!(rstc(&["capacity", "--mu", "abc"]).status.code(), Some(2));
    assert_eq!(
        rstc(&["capacity", "--crossover", "0.1", "--mu", "0.5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(rstc(&["frobnicate"]).status.code(), Some(2));
}

#[test]
fn domain_errors_exit_one() {
    let o = rstc(&["utility", "--mu", "0.5", "--nu", "0.5", "--a", "0.9"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&o.stderr).contains("infeasible"));
    let o = rstc(&[
        "capacity",
        "--mu",
        "0.6",
        "--nu",
        "0.5",
        "--a",
        "0.4",
        "--tol",
        "1e-15",
        "--max-iter",
        "2",
    ]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn utility_at_independence_is_zero() {
    let o = rstc(&["utility", "--mu", "0.5", "--nu", "0.5", "--a", "0.25"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(
        text.contains("u1 = 0\n") && text.contains("u2 = 0\n"),
        "{text}"
    );
}

#[test]
fn capacity_of_bsc_shaped_game() {
    let o = rstc(&["capacity", "--mu", "0.5", "--nu", "0.5", "--a", "0.45"]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    let m: f64 = text
        .lines()
        .find_map(|l| l.strip_prefix("M (P1 channel) = "))
        .unwrap()
        .parse()
        .unwrap();
    assert!((m - 0.531004).abs() < 1e-5);
    assert!(text.contains("fairness = BALANCED"));
}

#[test]
fn flags_override_config_file() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("c.toml");
    std::fs::write(
        &cfg,
        "log_base = \"e\"\n[run]\nn = 6\nseed = 1\np1 = \"cooperate\"\np2 = \"cooperate\"\n",
    )
    .unwrap();
    let out1 = dir.path().join("one.csv");
    let out7 = dir.path().join("seven.csv");
    let file_seed = rstc(&[
        "--config",
        cfg.to_str().unwrap(),
        "run",
        "--out",
        out1.to_str().unwrap(),
    ]);
    assert_eq!(file_seed.status.code(), Some(0));
    let flag_seed = rstc(&[
        "--config",
        cfg.to_str().unwrap(),
        "run",
        "--seed",
        "7",
        "--out",
        out7.to_str().unwrap(),
    ]);
    assert_eq!(flag_seed.status.code(), Some(0));
    let meta1 = std::fs::read_to_string(dir.path().join("one.csv.meta.json")).unwrap();
    let meta7 = std::fs::read_to_string(dir.path().join("seven.csv.meta.json")).unwrap();
    assert!(meta1.contains("\"seed\": 1"));
    assert!(meta7.contains("\"seed\": 7"));
    assert!(meta7.contains("\"log_base\": 2.718281828459045"));
}

#[test]
fn unknown_config_keys_are_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bad.toml");
    std::fs::write(&cfg, "[run]\nn = 3\nseed = 1\nrounds = 4\n").unwrap();
    let o = rstc(&["--config", cfg.to_str().unwrap(), "run"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("rounds"));
    std::fs::write(&cfg, "[nonsense]\nx = 1\n").unwrap();
    assert_eq!(
        rstc(&["--config", cfg.to_str().unwrap(), "verify"])
            .status
            .code(),
        Some(2)
    );
}

#[test]
fn sweep_writes_csv_and_sidecar() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("surface.csv");
    let o = rstc(&[
        "sweep",
        "--fix",
        "nu=0.5",
        "--step",
        "0.1",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&out).unwrap();
    assert!(csv.starts_with("mu,nu,a,u1,u2,standard_mi\n"));
    assert_eq!(csv.lines().count(), 82);
    let meta: serde_json::Value = serde_json::from_str(
        &std::fs::read_to_string(dir.path().join("surface.csv.meta.json")).unwrap(),
    )
    .unwrap();
    assert_eq!(meta["rows"], 81);
    assert_eq!(meta["details"]["skipped_count"], 0);
    // Nothing else is written.
    assert_eq!(std::fs::read_dir(dir.path()).unwrap().count(), 2);
}

#[test]
fn montecarlo_and_trajectories_outputs() {
    let dir = tempfile::tempdir().unwrap();
    let mc = dir.path().join("mc.csv");
    let o = rstc(&[
        "montecarlo",
        "--trials",
        "50",
        "--n",
        "8",
        "--p1",
        "cooperate",
        "--p2",
        "defect-at-random",
        "--mu",
        "0.9",
        "--nu",
        "0.9",
        "--seed",
        "3",
        "--out",
        mc.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = stdout(&o);
    assert!(text.contains("max_fairness_gap = 1"));
    assert!(text.contains("reconstruction_rate = 0"));
    assert_eq!(std::fs::read_to_string(&mc).unwrap().lines().count(), 51);

    let tr = dir.path().join("traj.csv");
    let o = rstc(&[
        "trajectories",
        "--n",
        "4",
        "--seed",
        "2",
        "--out",
        tr.to_str().unwrap(),
    ]);
    assert_eq!(o.status.code(), Some(0));
    let csv = std::fs::read_to_string(&tr).unwrap();
    assert!(csv.starts_with("profile,player,round,cumulative,signed\n"));
    assert!(csv.contains("\nDD,P1,1,0,"));
}

#[test]
fn equilibrium_and_verify() {
    let o = rstc(&[
        "equilibrium",
        "--mu",
        "0.99",
        "--nu",
        "0.99",
        "--grid",
        "101",
    ]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("epsilon-nash = true"));
    let o = rstc(&["equilibrium", "--mu", "0.3", "--nu", "0.99"]);
    assert!(stdout(&o).contains("epsilon-nash = false"));
    let o = rstc(&["verify", "--seed", "11"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(!stdout(&o).contains("FAIL"));
}

#[test]
fn nats_scale_reported_information() {
    let bits = stdout(&rstc(&["capacity", "--crossover", "0.1"]));
    let nats = stdout(&rstc(&[
        "--log-base",
        "e",
        "capacity",
        "--crossover",
        "0.1",
    ]));
    let value = |t: &str| -> f64 {
        t.lines()
            .find_map(|l| l.strip_prefix("capacity = "))
            .unwrap()
            .parse()
            .unwrap()
    };
    assert!((value(&nats) - value(&bits) * std::f64::consts::LN_2).abs() < 1e-5);
}
