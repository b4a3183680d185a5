use std::process::{Command, Output};

use exposed_maps::io::read_matrix;
use exposed_maps::numlin::Matrix;
use exposed_maps_cli::report::{Status, VerificationReport};

fn expomap(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_expomap"))
        .args(args)
        .env_remove("SEED")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn robertson_family_check_passes() {
    let o = expomap(&["verify", "prop3-robertson-60"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("status: PASS\n"));
    assert!(out.contains("measured.family_rank: 60\n"));
}

#[test]
fn dn_table_csv() {
    let o = expomap(&["verify", "dn-table", "--n", "4,6,8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o), "n,Dn,bound,measured\n4,60,60,60\n6,196,210,196\n8,456,504,456\n");
}

#[test]
fn random_breuer_hall_four_is_exposed() {
    let o = expomap(&["verify", "bh-random-exposed", "--n", "4", "--seed", "7", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let r: VerificationReport = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(r.status, Status::Pass);
    assert_eq!(r.seed, 7);
    assert_eq!(r.measured["n4_irreducible"], serde_json::json!(true));
    assert_eq!(r.measured["n4_n_span_dim"], serde_json::json!(60));
    assert!(r.runtime_ms.is_none());
}

#[test]
fn random_breuer_hall_six_misses_strong_spanning() {
    let o = expomap(&["verify", "bh-random-exposed", "--n", "6"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stdout(&o).contains("measured.n6_n_span_dim: 196\n"));
}

#[test]
fn seed_from_environment() {
    let o = Command::new(env!("CARGO_BIN_EXE_expomap"))
        .args(["verify", "prop3-robertson-60"])
        .env("SEED", "11")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("seed: 11\n"));
    let o = Command::new(env!("CARGO_BIN_EXE_expomap"))
        .args(["verify", "prop3-robertson-60", "--seed", "12"])
        .env("SEED", "11")
        .output()
        .unwrap();
    assert!(stdout(&o).contains("seed: 12\n"));
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(expomap(&["verify", "example3"]).status.code(), Some(2));
    assert_eq!(expomap(&["verify"]).status.code(), Some(2));
    assert_eq!(expomap(&["span", "--map", "choi", "--kind", "N"]).status.code(), Some(2));
    assert_eq!(expomap(&["span", "--map", "transpose", "--kind", "Q"]).status.code(), Some(2));
    assert_eq!(
        expomap(&["span", "--map", "file:/nonexistent/m.json", "--kind", "N"]).status.code(),
        Some(2)
    );
    assert_eq!(
        expomap(&["map", "export", "--map", "robertson", "--out", "/nonexistent/dir/m.json"]).status.code(),
        Some(2)
    );
}

#[test]
fn span_examples() {
    let o = expomap(&["span", "--map", "transpose", "--kind", "N", "--n", "2"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("achieved_dim: 6\n") && out.contains("saturated: true\n"));

    let out = stdout(&expomap(&["span", "--map", "reduction", "--kind", "M", "--n", "2"]));
    assert!(out.contains("achieved_dim: 3\n") && out.contains("saturated: true\n"));

    let o = expomap(&["span", "--map", "breuer-hall", "--kind", "N", "--n", "6", "--seed", "1", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["achieved_dim"], 196);
    assert_eq!(v["kind"], "N");
}

#[test]
fn strict_budget_exhaustion_exits_three() {
    let args = ["span", "--map", "robertson", "--kind", "N", "--budget", "3"];
    assert_eq!(expomap(&args).status.code(), Some(0));
    let mut strict = args.to_vec();
    strict.push("--strict");
    assert_eq!(expomap(&strict).status.code(), Some(3));
    assert_eq!(
        expomap(&["verify", "robertson-strong-spanning", "--budget", "3", "--strict"]).status.code(),
        Some(3)
    );
    let o = expomap(&["verify", "robertson-strong-spanning", "--budget", "3"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("status: INCONCLUSIVE\n"));
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        vec!["verify", "all", "--format", "json"],
        vec!["span", "--map", "breuer-hall", "--kind", "M", "--n", "4", "--seed", "5"],
    ] {
        let a = expomap(&args);
        let b = expomap(&args);
        assert_eq!(a.stdout, b.stdout);
        assert!(!a.stdout.is_empty());
    }
}

#[test]
fn verify_all_is_ordered_and_passes() {
    let o = expomap(&["verify", "all", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let reports: Vec<VerificationReport> = serde_json::from_str(&stdout(&o)).unwrap();
    let names: Vec<&str> = reports.iter().map(|r| r.check_name.as_str()).collect();
    let mut sorted = names.clone();
    sorted.sort();
    assert_eq!(names, sorted);
    assert_eq!(names.len(), 10);
    assert!(reports.iter().all(|r| r.status == Status::Pass));
}

#[test]
fn timing_is_opt_in() {
    let out = stdout(&expomap(&["verify", "robertson-irreducible", "--timing"]));
    assert!(out.contains("runtime_ms: "));
}

#[test]
fn export_and_reload() {
    let dir = tempfile::tempdir().unwrap();
    let choi_path = dir.path().join("robertson-choi.json");
    let o = expomap(&["map", "export", "--map", "robertson", "--form", "choi", "--out", choi_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let choi = read_matrix(&choi_path).unwrap();
    assert_eq!((choi.rows(), choi.cols()), (16, 16));
    assert!(choi.hermiticity_deviation() <= 1e-15);

    let t_path = dir.path().join("transpose.json");
    expomap(&["map", "export", "--map", "transpose", "--n", "2", "--out", t_path.to_str().unwrap()]);
    let t = read_matrix(&t_path).unwrap();
    let swap = Matrix::<f64>::from_real(4, 4, &[
        1., 0., 0., 0., //
        0., 0., 1., 0., //
        0., 1., 0., 0., //
        0., 0., 0., 1.,
    ])
    .unwrap();
    assert_eq!(t, swap);

    // the Choi file read back as a map reproduces the Robertson N-span
    let spec = format!("file:{}", choi_path.display());
    let o = expomap(&["span", "--map", &spec, "--form", "choi", "--kind", "N"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("achieved_dim: 60\n"));
}
