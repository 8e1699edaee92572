use std::path::Path;
use std::process::Command;

use cliffordian::cli::{dispatch, load_function, LoadedFunction};
use cliffordian::solutions::{p_alpha, MultiIndex};
use cliffordian::Rational;
use serde_json::Value;

fn run(dir: &Path, out: &str, args: &[&str]) -> (i32, Value) {
    let path = dir.join(out);
    let mut argv = vec!["cliffordian"];
    argv.extend_from_slice(args);
    argv.extend_from_slice(&["--output", path.to_str().unwrap()]);
    let code = dispatch(argv);
    let doc = std::fs::read_to_string(&path)
        .ok()
        .map(|t| serde_json::from_str(&t).unwrap())
        .unwrap_or(Value::Null);
    (code, doc)
}

#[test]
fn palpha_then_verify() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc) = run(dir.path(), "p.json", &["palpha", "--m", "1", "--alpha", "1,1,0,0"]);
    assert_eq!(code, 0);
    assert_eq!(doc["schema_version"], 1);
    assert_eq!(doc["degree"], 1);
    assert_eq!(doc["holomorphic"], true);

    let loaded = load_function(&dir.path().join("p.json")).unwrap();
    let want = p_alpha::<Rational>(&MultiIndex::new(vec![1, 1, 0, 0]), 1).unwrap();
    assert_eq!(loaded, LoadedFunction::Polynomial(want));

    let input = dir.path().join("p.json");
    let (code, doc) = run(dir.path(), "v.json", &["verify", "--m", "1", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["residual_zero"], true);
}

#[test]
fn verify_rejects_non_solution() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("f.json");
    // x_0^2 is not holomorphic Cliffordian for m = 0
    std::fs::write(
        &input,
        r#"{"m":0,"terms":[{"exponents":[2,0],"coeff":{"m":0,"coeffs":[{"blade":"1","value":"1"}]}}]}"#,
    )
    .unwrap();
    let (code, doc) = run(dir.path(), "v.json", &["verify", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["residual_zero"], false);
    assert_eq!(doc["kind"], "polynomial");
}

#[test]
fn sbeta_round_trip_and_laurent_fit() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc) = run(dir.path(), "s.json", &["sbeta", "--m", "1", "--beta", "0,1,1,0"]);
    assert_eq!(code, 0);
    assert_eq!(doc["holomorphic"], true);
    let input = dir.path().join("s.json");
    let (code, doc) = run(dir.path(), "l.json", &["laurent-fit", "--input", input.to_str().unwrap()]);
    assert_eq!(code, 0);
    assert_eq!(doc["residual_zero"], true);
}

#[test]
fn taylor_fit_about_shifted_center() {
    let dir = tempfile::tempdir().unwrap();
    run(dir.path(), "p.json", &["palpha", "--alpha", "2,0,1,0"]);
    let input = dir.path().join("p.json");
    let (code, doc) = run(
        dir.path(),
        "t.json",
        &["taylor-fit", "--input", input.to_str().unwrap(), "--center", "1/2,0,-1,0"],
    );
    assert_eq!(code, 0);
    assert_eq!(doc["residual_zero"], true);
    assert!(!doc["coefficients"].as_array().unwrap().is_empty());
}

#[test]
fn same_seed_gives_identical_documents() {
    let dir = tempfile::tempdir().unwrap();
    let args = ["calibrate", "--m", "0", "--level", "8", "--max-order", "2", "--seed", "11"];
    let (a, _) = run(dir.path(), "a.json", &args);
    let (b, _) = run(dir.path(), "b.json", &args);
    assert_eq!((a, b), (0, 0));
    let ta = std::fs::read(dir.path().join("a.json")).unwrap();
    let tb = std::fs::read(dir.path().join("b.json")).unwrap();
    assert_eq!(ta, tb);
}

#[test]
fn config_file_supplies_defaults() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("run.toml");
    std::fs::write(&cfg, "m = 0\nseed = 99\nscalar = \"float\"\n").unwrap();
    let (code, doc) = run(dir.path(), "p.json", &["palpha", "--config", cfg.to_str().unwrap(), "--alpha", "1,1"]);
    assert_eq!(code, 0);
    assert_eq!(doc["m"], 0);
    assert_eq!(doc["seed"], 99);
    assert_eq!(doc["scalar"], "float");

    std::fs::write(&cfg, "m = 0\ncolour = \"red\"\n").unwrap();
    let (code, _) = run(dir.path(), "q.json", &["palpha", "--config", cfg.to_str().unwrap(), "--alpha", "1,1"]);
    assert_eq!(code, 2);
}

#[test]
fn space_check_reports_dimensions() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc) = run(dir.path(), "s.json", &["space-check", "--m", "0", "--d", "3"]);
    assert_eq!(code, 0);
    assert_eq!(doc["spans_equal"], true);
    assert_eq!(doc["kernel_dim"], doc["span_rank"]);
    let (code, _) = run(dir.path(), "t.json", &["space-check", "--m", "1", "--d", "3", "--matrix-limit", "100"]);
    assert_eq!(code, 4);
}

#[test]
fn cauchy_check_and_domain_errors() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc) = run(
        dir.path(),
        "c.json",
        &["cauchy-check", "--m", "1", "--alpha", "1,1,0,0", "--point", "0.1,0.2,0,0", "--level", "10"],
    );
    assert_eq!(code, 0);
    assert!(doc["defect"].as_f64().unwrap() < 1e-6);
    assert_eq!(doc["convention"], "mixed");
    let (code, _) = run(
        dir.path(),
        "d.json",
        &["cauchy-check", "--m", "1", "--alpha", "1,1,0,0", "--point", "2,0,0,0", "--level", "4"],
    );
    assert_eq!(code, 3);
}

#[test]
fn zeta_with_periods_file() {
    let dir = tempfile::tempdir().unwrap();
    let periods = dir.path().join("periods.toml");
    std::fs::write(&periods, "periods = [[\"1\", \"0\"], [\"1/4\", \"1\"]]\n").unwrap();
    let (code, doc) = run(
        dir.path(),
        "z.json",
        &["zeta", "--m", "0", "--periods", periods.to_str().unwrap(), "--x", "0.3,0.1", "--radius", "8"],
    );
    assert_eq!(code, 0);
    assert!(doc["tail_estimate"].as_f64().unwrap() > 0.0);
    assert_eq!(doc["value"]["m"], 0);

    let (code, doc) = run(
        dir.path(),
        "p.json",
        &["zeta-periodicity", "--m", "0", "--x", "0.3,0.1", "--radii", "6.1,12.2", "--order", "2"],
    );
    assert_eq!(code, 0);
    assert!(doc["decay_ratio"].as_f64().unwrap() < 1.0);

    std::fs::write(&periods, "periods = [[\"1\", \"0\"], [\"2\", \"0\"]]\n").unwrap();
    let (code, _) = run(
        dir.path(),
        "q.json",
        &["zeta", "--m", "0", "--periods", periods.to_str().unwrap(), "--x", "0.3,0.1", "--radius", "8"],
    );
    assert_eq!(code, 3);
}

#[test]
fn acceptance_subset() {
    let dir = tempfile::tempdir().unwrap();
    let (code, doc) = run(dir.path(), "a.json", &["acceptance", "--only", "5,10"]);
    assert_eq!(code, 0);
    assert_eq!(doc["passed_all"], true);
    assert_eq!(doc["criteria"].as_array().unwrap().len(), 2);
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_cliffordian");
    let dir = tempfile::tempdir().unwrap();
    let status = Command::new(bin).current_dir(dir.path()).args(["palpha", "--frobnicate"]).output().unwrap();
    assert_eq!(status.status.code(), Some(2));

    let out = Command::new(bin)
        .current_dir(dir.path())
        .args(["palpha", "--alpha", "1,0,0,0"])
        .env("CLIFFORDIAN_THREADS", "zero")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    let err: Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["category"], "parse");

    let out = Command::new(bin)
        .current_dir(dir.path())
        .args(["sbeta", "--beta", "0,0,0,0"])
        .env("CLIFFORDIAN_THREADS", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(3));

    let out = Command::new(bin).current_dir(dir.path()).args(["palpha", "--alpha", "1,0,0,0"]).output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(dir.path().join("palpha.json").exists());
}
