use std::path::Path;
use std::process::{Command, Output};

use hyperphi::io::{matrix_from_dump, FanDoc};
use hyperphi::report::Report;
use hyperphi_core::RingCtx;
use serde_json::Value;

fn run_env(args: &[&str], env: Option<&str>) -> Output {
    let mut cmd = Command::new(env!("CARGO_BIN_EXE_hyperphi"));
    cmd.args(args).env_remove("PADIC_BUDGET");
    if let Some(v) = env {
        cmd.env("PADIC_BUDGET", v);
    }
    cmd.output().expect("binary runs")
}

fn run(args: &[&str]) -> Output {
    run_env(args, None)
}

fn json_report(args: &[&str]) -> (Report, i32) {
    let mut full = args.to_vec();
    full.extend(["--format", "json"]);
    let out = run(&full);
    let text = String::from_utf8(out.stdout).unwrap();
    let report: Report =
        serde_json::from_str(&text).unwrap_or_else(|e| panic!("{e}: {text}\n{}", String::from_utf8_lossy(&out.stderr)));
    (report, out.status.code().unwrap())
}

fn passes(r: &Report, name: &str) -> bool {
    r.get_check(name).unwrap_or_else(|| panic!("missing check {name}")).pass
}

fn write_table(dir: &Path, name: &str, extra: &[&str]) -> String {
    let path = dir.join(name);
    let path = path.to_str().unwrap().to_string();
    let mut args = vec!["table", "--p", "2", "--k", "2", "--n", "2", "--out", &path];
    args.extend_from_slice(extra);
    assert_eq!(run(&args).status.code(), Some(0));
    path
}

#[test]
fn rank_prime_field_example() {
    let (r, code) = json_report(&["rank", "--p", "3", "--k", "1", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r.get_value("rank_W"), Some(&Value::from(4)));
    assert!(passes(&r, "rank_W_prime_field_formula"));
}

#[test]
fn rank_strict_planar_example() {
    let (r, code) = json_report(&["rank", "--p", "2", "--k", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(passes(&r, "rank_Wstar_lt_rank_W_planar"));
    assert!(r.all_pass);
}

#[test]
fn rank_over_budget_reports_partially_and_exits_3() {
    let (r, code) = json_report(&["rank", "--p", "2", "--k", "9", "--n", "3"]);
    assert_eq!(code, 3);
    assert!(r.budget_exceeded);
    assert_eq!(r.get_value("rank_W"), Some(&Value::Null));
    assert!(!r.omitted.is_empty());
}

#[test]
fn rank_csv_is_one_row_table() {
    let out = run(&["rank", "--p", "2", "--k", "2", "--n", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        String::from_utf8(out.stdout).unwrap(),
        "p,k,n,rank_W,rank_Wstar,dim_H,checks,failed\n2,2,2,7,6,9,10,0\n"
    );
}

#[test]
fn csv_is_refused_outside_rank_tables() {
    let out = run(&["bounds", "--p", "2", "--k", "2", "--n", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn sweep_lists_each_context() {
    let out = run(&["sweep", "--p", "2,3", "--k", "1,2", "--n", "2", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let rows: Vec<&str> = text.lines().collect();
    assert_eq!(rows.len(), 5);
    assert!(rows.contains(&"3,1,2,4,4,6,9,0"));
}

#[test]
fn verify_phi_suite_in_one_dimension() {
    let (r, code) = json_report(&["verify", "--suite", "phi", "--p", "2", "--k", "2", "--n", "1"]);
    assert_eq!(code, 0);
    for name in ["vandermonde_violations", "unit_derivative_leading_term_violations", "product_rule_violations"] {
        assert!(passes(&r, &format!("phi.{name}")), "{name}");
    }
}

#[test]
fn verify_factorization_suite() {
    let (r, code) = json_report(&["verify", "--suite", "factorization", "--p", "2", "--k", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(passes(&r, "factorization.h_eq_psi_b_phi_mismatches"));
    assert!(passes(&r, "factorization.b_zero_pattern_violations"));
}

#[test]
fn verify_geometry_suite_is_exhaustive_at_smallest_context() {
    let (r, code) = json_report(&["verify", "--suite", "geometry", "--p", "2", "--k", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert!(passes(&r, "geometry.fan_hyperplane_count_violations_scale_0"));
    assert_eq!(r.get_value("geometry.exhaustive_fans"), Some(&Value::from(256)));
    assert_eq!(r.get_value("geometry.sampled_fans"), None);
}

#[test]
fn unknown_suite_is_a_usage_error() {
    let out = run(&["verify", "--suite", "nope", "--p", "2", "--k", "2", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn invalid_context_is_a_usage_error() {
    let out = run(&["rank", "--p", "4", "--k", "1", "--n", "2"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn json_is_deterministic_apart_from_timing() {
    let args = ["verify", "--p", "2", "--k", "2", "--n", "3", "--seed", "11", "--samples", "40", "--format", "json"];
    let strip = |o: Output| {
        let mut v: Value = serde_json::from_slice(&o.stdout).unwrap();
        v.as_object_mut().unwrap().remove("timing");
        serde_json::to_string(&v).unwrap()
    };
    let a = strip(run(&args));
    let b = strip(run(&args));
    assert_eq!(a, b);
    assert!(a.contains("\"seed\":11"));
}

#[test]
fn json_output_round_trips() {
    let out = run(&["verify", "--suite", "incidence", "--p", "3", "--k", "1", "--n", "2", "--format", "json"]);
    let text = String::from_utf8(out.stdout).unwrap();
    let r: Report = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&r).unwrap() + "\n", text);
}

#[test]
fn phi21_is_not_a_member_and_fails_the_fan_screen() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_table(dir.path(), "phi21.json", &["--phi", "2,1"]);
    let (r, code) = json_report(&["member", "--fn", &f, "--fan-screen", "--p", "2", "--k", "2", "--n", "2"]);
    assert_eq!(code, 0);
    assert_eq!(r.get_value("member"), Some(&Value::Bool(false)));
    assert_eq!(r.get_value("degree"), Some(&Value::from(3)));
    let listed = r.get_value("fan_violations").unwrap().as_array().unwrap();
    assert!(!listed.is_empty());
    let ctx = RingCtx::new(2, 2, 2).unwrap();
    let worked = hyperphi_core::verify::worked_fan(&ctx).unwrap();
    let screened = r.get_value("fan_screen").unwrap()[0].clone();
    assert_eq!(screened["mode"], "exhaustive");
    assert_eq!(screened["violations"], screened["fans"]);
    for v in listed {
        assert_eq!(v["sum"], 1);
        let doc: FanDoc = serde_json::from_value(v["fan"].clone()).unwrap();
        assert_eq!(doc.to_fan(&ctx).unwrap().points.len(), worked.points.len());
    }
}

#[test]
fn hyperplane_indicator_is_a_member_with_certificate() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_table(dir.path(), "h.csv", &["--hyperplane", "1,1", "--level", "2"]);
    let (r, code) = json_report(&["member", "--fn", &f, "--fan-screen"]);
    assert_eq!(code, 0);
    assert_eq!(r.get_value("member"), Some(&Value::Bool(true)));
    assert!(!r.get_value("certificate").unwrap().as_array().unwrap().is_empty());
    assert!(passes(&r, "member_fan_violations"));
}

#[test]
fn member_rejects_bad_tables() {
    let dir = tempfile::tempdir().unwrap();
    let high = dir.path().join("high.json");
    let mut values = vec![0; 16];
    values[3] = 2;
    std::fs::write(&high, serde_json::json!({"p": 2, "k": 2, "n": 2, "values": values}).to_string()).unwrap();
    let out = run(&["member", "--fn", high.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("not below p"));

    let ok = write_table(dir.path(), "ok.json", &["--phi", "1,0"]);
    let out = run(&["member", "--fn", &ok, "--p", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("context mismatch"));

    let out = run(&["member", "--fn", dir.path().join("missing.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn expand_and_degree_of_a_phi_table() {
    let dir = tempfile::tempdir().unwrap();
    let f = write_table(dir.path(), "phi.json", &["--phi", "2,1"]);
    let (r, code) = json_report(&["expand", "--fn", &f]);
    assert_eq!(code, 0);
    assert_eq!(r.get_value("coefficients"), Some(&serde_json::json!([{"alpha": [2, 1], "coeff": 1}])));
    let (r, _) = json_report(&["degree", "--fn", &f]);
    assert_eq!(r.get_value("degree"), Some(&Value::from(3)));
}

#[test]
fn bounds_comparison() {
    let (r, code) = json_report(&["bounds", "--p", "2", "--k", "7", "--n", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r.get_value("trivial_bound"), Some(&Value::from(357760)));
    assert_eq!(r.get_value("fan_bound_below_trivial"), Some(&Value::Bool(true)));
    let (r, _) = json_report(&["bounds", "--p", "2", "--k", "2", "--n", "2"]);
    assert_eq!(r.get_value("trivial_bound"), Some(&Value::from(10)));
    assert_eq!(r.get_value("fan_bound"), Some(&Value::from(40)));
}

#[test]
fn fans_round_trip_through_json() {
    let (r, code) = json_report(&["fans", "--p", "2", "--k", "2", "--n", "3", "--samples", "5", "--seed", "3"]);
    assert_eq!(code, 0);
    assert_eq!(r.seed, Some(3));
    let ctx = RingCtx::new(2, 2, 3).unwrap();
    let fans: Vec<FanDoc> = serde_json::from_value(r.get_value("fans").unwrap().clone()).unwrap();
    assert_eq!(fans.len(), 5);
    for doc in fans {
        assert!(doc.plane.is_some());
        assert_eq!(FanDoc::from_fan(&doc.to_fan(&ctx).unwrap()), doc);
    }
    let out = run(&["fans", "--p", "2", "--k", "2", "--n", "2", "--scale", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn matrix_dump_matches_reported_rank() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("w.txt");
    let (r, code) =
        json_report(&["matrix", "--p", "3", "--k", "1", "--n", "2", "--kind", "w", "--out", path.to_str().unwrap()]);
    assert_eq!(code, 0);
    let m = matrix_from_dump(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!((m.rows(), m.cols()), (9, 9));
    assert_eq!(r.get_value("rank"), Some(&Value::from(m.rank())));
}

#[test]
fn budget_environment_variable() {
    let args = ["rank", "--p", "2", "--k", "2", "--n", "2"];
    assert_eq!(run_env(&args, Some("entries=10")).status.code(), Some(3));
    assert_eq!(run_env(&args, Some("plenty")).status.code(), Some(2));
    assert_eq!(run_env(&args, Some("entries=100000000")).status.code(), Some(0));
    let flagged = ["--max-entries", "10", "rank", "--p", "2", "--k", "2", "--n", "2"];
    assert_eq!(run(&flagged).status.code(), Some(3));
}

#[test]
fn help_exits_zero() {
    let out = run(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("member"));
}
