use std::path::Path;
use std::process::{Command, Output};

fn agmx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_agmx"))
        .args(args)
        .env_remove("AGMX_SEED")
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited normally")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn path_str(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn help_exits_zero() {
    let out = agmx(&["--help"]);
    assert_eq!(code(&out), 0);
    assert!(stdout(&out).contains("Usage"));
}

#[test]
fn run_writes_trace_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.csv");
    let out = agmx(&[
        "run",
        "--problem",
        "laplacian2d",
        "--n",
        "39",
        "--method",
        "hnagpp",
        "--tol",
        "1e-8",
        "--seed",
        "42",
        "--out",
        path_str(&trace),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(&trace).unwrap();
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "k,f_gap,grad_norm,x_err_sq,y_err_sq,E,E_shifted"
    );
    assert!(lines.next().unwrap().starts_with("0,"));
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    for key in [
        "method",
        "kappa",
        "iterations",
        "status",
        "measured_rate",
        "theoretical_rate",
    ] {
        assert!(summary.get(key).is_some(), "missing {key}");
    }
    assert_eq!(summary["method"], "hnag");
    assert_eq!(summary["status"], "converged");
    assert_eq!(
        text.lines().count() as u64,
        summary["iterations"].as_u64().unwrap() + 2
    );
}

#[test]
fn unknown_method_is_a_usage_error() {
    let out = agmx(&["run", "--n", "5", "--method", "nosuch"]);
    assert_eq!(code(&out), 1);
    assert!(stderr(&out).contains("nosuch"));
}

#[test]
fn unknown_flag_is_rejected() {
    assert_eq!(code(&agmx(&["run", "--n", "5", "--bogus"])), 1);
    assert_eq!(
        code(&agmx(&["run", "--problem", "logistic", "--n", "5"])),
        1
    );
    assert_eq!(code(&agmx(&["run"])), 1);
}

#[test]
fn max_iter_exits_two() {
    let out = agmx(&["run", "--n", "19", "--method", "gd", "--max-iter", "10"]);
    assert_eq!(code(&out), 2);
    let summary: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(summary["status"], "max_iter");
}

#[test]
fn divergence_exits_three() {
    let out = agmx(&["run", "--n", "9", "--method", "hnag_box"]);
    assert_eq!(code(&out), 3);
    assert!(stderr(&out).contains("diverged"));
}

#[test]
fn compare_five_methods_deterministically() {
    let dir = tempfile::tempdir().unwrap();
    let a = dir.path().join("a.csv");
    let b = dir.path().join("b.csv");
    for p in [&a, &b] {
        let out = agmx(&["compare", "--n", "19", "--out", path_str(p)]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
    }
    let strip = |p: &Path| -> Vec<String> {
        std::fs::read_to_string(p)
            .unwrap()
            .lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f.remove(3); // runtime
                f.join(",")
            })
            .collect()
    };
    let (ra, rb) = (strip(&a), strip(&b));
    assert_eq!(ra, rb);
    assert_eq!(ra.len(), 6);
    assert_eq!(
        ra[0],
        "method,kappa,iterations,measured_rate,theoretical_rate"
    );
    let iterations: Vec<&str> = ra[1..]
        .iter()
        .map(|l| l.split(',').nth(2).unwrap())
        .collect();
    assert_eq!(iterations, ["1257", "211", "221", "160", "199"]);
}

#[test]
fn compare_needs_two_methods() {
    assert_eq!(
        code(&agmx(&["compare", "--n", "9", "--methods", "hnag"])),
        1
    );
}

#[test]
fn compare_json_parses() {
    let out = agmx(&[
        "compare",
        "--n",
        "9",
        "--methods",
        "hnag,nag",
        "--format",
        "json",
    ]);
    assert_eq!(code(&out), 0);
    let rows: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(rows.as_array().unwrap().len(), 2);
    assert_eq!(rows[1]["method"], "nag");
}

#[test]
fn compare_with_unstable_method_exits_three() {
    assert_eq!(
        code(&agmx(&[
            "compare",
            "--n",
            "9",
            "--methods",
            "hnag,hnag_box"
        ])),
        3
    );
}

#[test]
fn diagnose_theorem_passes() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("d.csv");
    let out = agmx(&[
        "diagnose",
        "--n",
        "39",
        "--theorem",
        "THM_HNAG_FUNCVAL",
        "--out",
        path_str(&report),
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = std::fs::read_to_string(&report).unwrap();
    assert_eq!(text.lines().next().unwrap(), "k,lhs,rhs,residual");
}

#[test]
fn diagnose_mismatch_is_a_usage_error() {
    let out = agmx(&[
        "diagnose",
        "--n",
        "9",
        "--theorem",
        "THM_HNAG_PLUS",
        "--method",
        "gd",
    ]);
    assert_eq!(code(&out), 1);
}

#[test]
fn diagnose_reports_the_violated_step() {
    // A negative tolerance demands max_violation ≤ −Ẽ₀, which no run meets,
    // so this exercises the failure path on an otherwise valid check.
    let out = agmx(&[
        "diagnose",
        "--n",
        "9",
        "--theorem",
        "PROP_QUADRATIC",
        "--rel-tol=-1",
    ]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("at step k ="));
}

#[test]
fn diagnose_sweep_on_logistic() {
    let out = agmx(&[
        "diagnose",
        "--problem",
        "logistic",
        "--d",
        "60",
        "--m",
        "10",
        "--sweep",
        "partial",
        "--mu-hat",
        "0.99",
        "--samples",
        "30",
    ]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    assert_eq!(stdout(&out).lines().count(), 31);
}

#[test]
fn seed_flag_beats_environment() {
    let run = |env: Option<&str>, flag: Option<&str>| {
        let mut cmd = Command::new(env!("CARGO_BIN_EXE_agmx"));
        cmd.args(["run", "--n", "9"]);
        cmd.env_remove("AGMX_SEED");
        if let Some(e) = env {
            cmd.env("AGMX_SEED", e);
        }
        if let Some(f) = flag {
            cmd.args(["--seed", f]);
        }
        let out = cmd.output().unwrap();
        assert_eq!(code(&out), 0);
        stdout(&out)
    };
    let from_env = run(Some("7"), None);
    assert_eq!(from_env, run(None, Some("7")));
    assert_eq!(run(Some("7"), Some("42")), run(None, None));
    assert_ne!(from_env, run(None, None));
}

#[test]
fn rates_catalog_and_fit() {
    let out = agmx(&["rates", "--kappa", "3150"]);
    assert_eq!(code(&out), 0);
    let text = stdout(&out);
    let hnag = text.lines().find(|l| l.starts_with("hnag,")).unwrap();
    let asym: f64 = hnag.split(',').nth(2).unwrap().parse().unwrap();
    assert!((asym - 0.95202).abs() < 1e-5);

    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.csv");
    assert_eq!(
        code(&agmx(&["run", "--n", "15", "--out", path_str(&trace)])),
        0
    );
    let out = agmx(&["rates", "--trace", path_str(&trace), "--format", "json"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let fit: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let rate = fit["rate"].as_f64().unwrap();
    assert!(rate > 0.0 && rate < 1.0);
    assert_eq!(code(&agmx(&["rates", "--kappa", "0.5"])), 1);
}
