use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

use jackvk::asymptotics::DiscreteMeasure;
use jackvk::jack::SymFun;
use jackvk::scalar::{parse_q, q};
use jackvk::shifted::ShiftedPoly;
use jackvk::Q;

fn jackvk(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jackvk")).args(args).output().expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json_of(o: &Output) -> Value {
    assert_eq!(o.status.code(), Some(0), "stderr: {}", stderr(o));
    serde_json::from_str(&stdout(o)).unwrap()
}

fn scratch(name: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("jackvk-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    dir.join(name)
}

fn det3(m: [[Q; 3]; 3]) -> Q {
    &m[0][0] * (&m[1][1] * &m[2][2] - &m[1][2] * &m[2][1]) - &m[0][1] * (&m[1][0] * &m[2][2] - &m[1][2] * &m[2][0])
        + &m[0][2] * (&m[1][0] * &m[2][1] - &m[1][1] * &m[2][0])
}

/// Bialternant `det(x_i^{λ_j+3−j}) / det(x_i^{3−j})`.
fn schur3(lambda: [i32; 3], x: &[Q; 3]) -> Q {
    let alt = |e: [i32; 3]| {
        det3(std::array::from_fn(|i| std::array::from_fn(|j| num_traits::pow(x[i].clone(), e[j] as usize))))
    };
    alt([lambda[0] + 2, lambda[1] + 1, lambda[2]]) / alt([2, 1, 0])
}

#[test]
fn jack_at_theta_one_is_schur() {
    let f = SymFun::from_json(&json_of(&jackvk(&["jack", "--lambda", "[2,1]", "--n", "3", "--theta", "1"]))).unwrap();
    let p = f.to_poly();
    for x in [[2, 3, 5], [-1, 4, 7], [1, -2, 3], [6, 11, -4]] {
        let x = x.map(q);
        assert_eq!(p.eval(&x), schur3([2, 1, 0], &x), "x = {x:?}");
    }
}

#[test]
fn cauchy_suite_exits_zero() {
    let args = ["identities", "--suite", "cauchy", "--n", "2", "--m", "2", "--theta", "1/2", "--degree", "4"];
    let v = json_of(&jackvk(&args));
    assert_eq!(v[0]["suite"], "cauchy");
    assert_eq!(v[0]["holds"], true);
    assert!(v[0]["cases"].as_u64().unwrap() > 0);
}

#[test]
fn every_suite_holds_on_a_small_family() {
    let v = json_of(&jackvk(&[
        "identities", "--suite", "all", "--n", "2", "--degree", "3", "--bound", "1", "--samples", "30", "--theta", "2",
    ]));
    let reports = v.as_array().unwrap();
    assert_eq!(reports.len(), 11);
    assert!(reports.iter().all(|r| r["holds"] == true), "{v}");
}

#[test]
fn converge_csv_decreases_for_row_sequence() {
    let cfg = scratch("row.json");
    std::fs::write(&cfg, r#"{"theta": "1/2", "sequence": {"type": "row", "c": 0.5}, "n_list": [50, 100, 200, 400]}"#)
        .unwrap();
    let o = jackvk(&["converge", "--config", cfg.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    let mut lines = text.lines();
    assert!(lines.next().unwrap().starts_with("# theta=1/2 k=1 seed=0"));
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    assert_eq!(header[..2], ["n", "sup_error"]);
    let sup: Vec<f64> = lines.map(|l| l.split(',').nth(1).unwrap().parse().unwrap()).collect();
    assert_eq!(sup.len(), 4);
    assert!(sup.windows(2).all(|w| w[1] < w[0]), "{sup:?}");
}

#[test]
fn converge_is_deterministic_across_modes_and_files() {
    let cfg = scratch("mixed.json");
    std::fs::write(
        &cfg,
        r#"{"theta": "1", "sequence": {"type": "mixed", "alpha_plus": 0.25, "alpha_minus": 0.5},
            "n_list": [20, 40], "grid": {"roots": 16, "random": 8, "seed": 5}}"#,
    )
    .unwrap();
    let cfg = cfg.to_str().unwrap();
    let a = jackvk(&["converge", "--config", cfg]);
    let b = jackvk(&["converge", "--config", cfg, "--sequential"]);
    assert_eq!(a.status.code(), Some(0), "{}", stderr(&a));
    assert_eq!(a.stdout, b.stdout);
    assert!(stdout(&a).starts_with("# theta=1 k=1 seed=5 grid_size=24\n"));

    let csv = scratch("mixed.csv");
    let summary = scratch("mixed-summary.json");
    let c = jackvk(&[
        "converge", "--config", cfg, "--output", csv.to_str().unwrap(), "--summary", summary.to_str().unwrap(),
    ]);
    assert_eq!(c.status.code(), Some(0));
    assert!(c.stdout.is_empty());
    assert_eq!(std::fs::read(&csv).unwrap(), a.stdout);
    let s: Value = serde_json::from_str(&std::fs::read_to_string(&summary).unwrap()).unwrap();
    assert_eq!(s["seed"], 5);
    assert_eq!(s["rows"].as_array().unwrap().len(), 2);
}

#[test]
fn json_outputs_round_trip() {
    let v = json_of(&jackvk(&["jack", "--lambda", "[3,1,-1]", "--theta", "2/3"]));
    assert_eq!(SymFun::from_json(&v).unwrap().to_json(), v);

    let v = json_of(&jackvk(&["jack", "--lambda", "[2,1]", "--n", "3", "--dual", "--theta", "1/2"]));
    assert_eq!(SymFun::from_json(&v).unwrap().to_json(), v);

    let v = json_of(&jackvk(&["pstar", "--mu", "[2,1]", "--n", "3", "--theta", "1/2"]));
    let f = ShiftedPoly::from_json(&v).unwrap();
    assert_eq!(f.to_json(), v);
    assert!(f.is_shifted_symmetric());

    let v = json_of(&jackvk(&["measure", "--lambda", "[2,0,-1]", "--theta", "1/2"]));
    let m = DiscreteMeasure::<Q>::from_json(&v).unwrap();
    assert_eq!(m.to_json(), v);
    assert_eq!(m.total_mass(), q(1));
}

#[test]
fn links_and_binomial_are_normalized() {
    let v = json_of(&jackvk(&["links", "--lambda", "[2,0,-1]", "--theta", "1/3"]));
    let total: Q = v["links"].as_array().unwrap().iter().map(|l| parse_q(l["weight"].as_str().unwrap()).unwrap()).sum();
    assert_eq!(total, q(1));

    let v = json_of(&jackvk(&["binomial", "--lambda", "[2,1,0]", "--k", "2", "--degree", "3", "--theta", "1/2"]));
    let first = &v["coefficients"][0];
    assert_eq!(first["mu"], serde_json::json!([]));
    assert_eq!(first["coef"], "1");
}

#[test]
fn psi_of_a_single_box() {
    let v = json_of(&jackvk(&["psi", "--lambda", "[1,0]", "--mu", "[0]", "--theta", "1/2"]));
    assert_eq!(v["psi"], "1");
    let v = json_of(&jackvk(&["psi", "--lambda", "[2,-1]", "--mu", "-1", "--theta", "1/2"]));
    assert_eq!(v["mu"], serde_json::json!([-1]));
    let o = jackvk(&["psi", "--lambda", "[2,0]", "--mu", "[3]", "--theta", "1/2"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("interlace"));
}

#[test]
fn csv_and_pretty_formats() {
    let o = jackvk(&["--format", "csv", "jack", "--lambda", "[1,1]", "--theta", "1"]);
    assert_eq!(stdout(&o), "exponent,coefficient\n1 1,1\n");
    let o = jackvk(&["pstar", "--mu", "[1]", "--n", "2", "--format", "pretty"]);
    assert!(stdout(&o).starts_with("P*_[1]"));
    let o = jackvk(&["links", "--lambda", "[1,0]", "--format", "csv"]);
    assert!(stdout(&o).starts_with("mu,weight\n[1],"));
    let o = jackvk(&["links", "--lambda", "[1,0,0]", "--format", "csv"]);
    assert!(stdout(&o).starts_with("mu,weight\n\"[1,0]\","));
}

#[test]
fn validation_errors_exit_one() {
    for (args, needle) in [
        (vec!["jack", "--lambda", "[2,1]", "--theta", "0"], "--theta"),
        (vec!["jack", "--lambda", "[2,1]", "--theta", "-1/2"], "--theta"),
        (vec!["jack", "--lambda", "[1,2]"], "--lambda"),
        (vec!["jack", "--lambda", "[2,a]"], "--lambda"),
        (vec!["jack", "--lambda", "[13]"], "12"),
        (vec!["jack", "--lambda", "[1]", "--n", "11"], "10"),
        (vec!["pstar", "--mu", "[1,-1]"], "--mu"),
        (vec!["identities", "--suite", "nonsense"], "--suite"),
        (vec!["converge", "--config", "/nonexistent/exp.json"], "--config"),
        (vec!["binomial", "--lambda", "[1,0]", "--k", "3"], "3"),
        (vec!["frobnicate"], "frobnicate"),
    ] {
        let o = jackvk(&args);
        assert_eq!(o.status.code(), Some(1), "{args:?}");
        assert!(stderr(&o).contains(needle), "{args:?}: {}", stderr(&o));
    }
}

#[test]
fn force_lifts_desk_scale_limits() {
    let o = jackvk(&["--force", "jack", "--lambda", "[13]"]);
    let f = SymFun::from_json(&json_of(&o)).unwrap();
    assert_eq!(f.coeff(&[13]), q(1));
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(jackvk(&["--help"]).status.code(), Some(0));
    assert_eq!(jackvk(&["--version"]).status.code(), Some(0));
    assert!(stdout(&jackvk(&["converge", "--help"])).contains("--config"));
}
