use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use tempfile::TempDir;

fn su2ca(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su2ca")).args(args).output().expect("binary should run")
}

fn su2ca_env(args: &[&str], key: &str, value: &str) -> Output {
    Command::new(env!("CARGO_BIN_EXE_su2ca")).args(args).env(key, value).output().expect("binary should run")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn write(dir: &TempDir, name: &str, text: &str) -> String {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p.display().to_string()
}

#[test]
fn verify_default_and_trivial_level() {
    let o = su2ca(&["verify", "--two-l-max", "8"]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out = stdout(&o);
    for suite in ["commutation", "unitarity", "plancherel"] {
        assert!(out.contains(suite), "missing {suite}");
    }
    assert_eq!(su2ca(&["verify", "--two-l-max", "0"]).status.code(), Some(0));
}

#[test]
fn verify_at_impossible_tolerance_fails() {
    let o = su2ca(&["verify", "--two-l-max", "8", "--tol", "1e-30"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("first failing check"));
}

#[test]
fn dims_corank2_kernel_column() {
    let o = su2ca(&["dims", "--preset", "corank2-paper", "--two-l-max", "8", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    let mut rdr = csv::Reader::from_reader(o.stdout.as_slice());
    assert_eq!(rdr.headers().unwrap().iter().collect::<Vec<_>>(), ["two_l", "bidegree", "ker", "ran", "quotient", "gap"]);
    let kers: Vec<usize> = rdr.records().map(|r| r.unwrap()).filter(|r| &r[1] == "(1,0)").map(|r| r[2].parse().unwrap()).collect();
    assert_eq!(kers[..5], [1, 4, 6, 8, 10]);
    assert_eq!(kers.len(), 9);
}

#[test]
fn dims_corank1_both_variants() {
    for variant in ["printed", "recomputed"] {
        let o = su2ca(&["dims", "--preset", "corank1-paper", "--constants", variant, "--two-l-max", "8", "--format", "json"]);
        assert_eq!(o.status.code(), Some(0));
        let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
        let totals = v["report"]["totals"].as_array().unwrap();
        let h01 = totals.iter().find(|t| t[0]["p"] == 0 && t[0]["q"] == 1).unwrap();
        assert_eq!(h01[1], 1);
        assert_eq!(v["discrepancies"][0]["key"], "b2,3");
    }
    let o = su2ca(&["dims", "--preset", "corank1-paper", "--constants", "printed"]);
    assert!(stdout(&o).contains("WARNING: printed constant b2,3 = -1"));
    let o = su2ca(&["dims", "--preset", "corank1-paper", "--format", "csv"]);
    assert!(stderr(&o).contains("b2,3"));
}

#[test]
fn dims_rejects_unknown_inputs() {
    assert_eq!(su2ca(&["dims", "--preset", "unknown"]).status.code(), Some(3));
    assert_eq!(su2ca(&["dims", "--preset", "corank2-paper", "--format", "xml"]).status.code(), Some(3));
    assert_eq!(su2ca(&["dims"]).status.code(), Some(3));
}

#[test]
fn gap_table() {
    let o = su2ca(&["gap", "--field", "dminus", "--s", "1/3", "--two-l-max", "40"]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("c_star = 0.8298265333662"));
    assert!(out.trim_end().ends_with("PASS"));

    let o = su2ca(&["gap", "--two-l-max", "1"]);
    let text = stdout(&o);
    let rows: Vec<&str> = text.lines().filter(|l| l.trim_start().starts_with('1')).collect();
    assert_eq!(rows.len(), 1);

    let o = su2ca(&["gap", "--s", "2", "--format", "json"]);
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert!(v["certificate"]["tail_slope"].as_f64().unwrap() < 0.0);
    assert_eq!(v["certificate"]["s"], "2");
}

#[test]
fn dprime_renderings() {
    let o = su2ca(&["dprime", "--preset", "corank2-paper"]);
    assert!(stdout(&o).contains("d′₍₁,₀₎(u₁,u₂) = (−∂₋u₁ − 2u₂, −∂₋u₂)"));
    let o = su2ca(&["dprime", "--preset", "corank1-paper", "--constants", "printed"]);
    assert!(stdout(&o).contains("(−∂₋u, −∂₀u − u)"));
    let o = su2ca(&["dprime", "--preset", "corank1-paper", "--constants", "recomputed"]);
    assert!(stdout(&o).contains("(−∂₋u, −∂₀u + u)"));
}

#[test]
fn dprime_from_frame_files() {
    let dir = TempDir::new().unwrap();
    let bad = write(
        &dir,
        "bad.json",
        r#"{"corank": 1, "vectors": [
            [{"re": 0, "im": 1}, {"re": -1, "im": 0}, {"re": 0, "im": 0}],
            [{"re": 0, "im": 1}, {"re": 1, "im": 0}, {"re": 0, "im": 0}],
            [{"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 0, "im": 1}]]}"#,
    );
    let o = su2ca(&["dprime", "--frame", &bad]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("not closed under the bracket"));

    let good = write(
        &dir,
        "good.json",
        r#"{"corank": 2, "vectors": [
            [{"re": 0, "im": 1}, {"re": 1, "im": 0}, {"re": 0, "im": 0}],
            [{"re": 0, "im": 1}, {"re": -1, "im": 0}, {"re": 0, "im": 0}],
            [{"re": 0, "im": 0}, {"re": 0, "im": 0}, {"re": 0, "im": 1}]]}"#,
    );
    let o = su2ca(&["dprime", "--frame", &good]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("(−∂₋u₁ − 2u₂, −∂₋u₂)"));
    assert_eq!(su2ca(&["dprime", "--frame", &good, "--constants", "printed"]).status.code(), Some(2));
    assert_eq!(su2ca(&["dprime", "--frame", "/nonexistent/frame.json"]).status.code(), Some(3));
    let junk = write(&dir, "junk.json", "{]");
    assert_eq!(su2ca(&["dims", "--frame", &junk]).status.code(), Some(3));
}

fn read_json(p: &Path) -> serde_json::Value {
    serde_json::from_str(&fs::read_to_string(p).unwrap()).unwrap()
}

#[test]
fn solve_examples() {
    let dir = TempDir::new().unwrap();
    let out = dir.path().join("u.json");
    let f = write(&dir, "f.json", r#"{"terms": [{"two_l": 1, "entries": [{"two_m": -1, "two_n": -1, "re": 0.5, "im": 2}]}]}"#);
    let o = su2ca(&["solve", "--input", &f, "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let u = read_json(&out);
    let e = &u["terms"][0]["entries"][0];
    assert_eq!((e["two_m"].as_i64(), e["two_n"].as_i64()), (Some(-1), Some(1)));
    assert_eq!((e["re"].as_f64(), e["im"].as_f64()), (Some(-0.5), Some(-2.0)));

    let zero = write(&dir, "zero.json", r#"{"terms": []}"#);
    let o = su2ca(&["solve", "--input", &zero, "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(read_json(&out)["terms"].as_array().unwrap().len(), 0);

    let top = write(&dir, "top.json", r#"{"terms": [{"two_l": 2, "entries": [{"two_m": 0, "two_n": 2, "re": 1, "im": 0}]}]}"#);
    let o = su2ca(&["solve", "--input", &top, "--output", out.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("(two_l=2, two_m=0, two_n=2)"));

    let bad = write(&dir, "bad.json", r#"{"terms": [{"two_l": 1, "entries": [{"two_m": 0, "two_n": 1, "re": 1, "im": 0}]}]}"#);
    assert_eq!(su2ca(&["solve", "--input", &bad, "--output", out.to_str().unwrap()]).status.code(), Some(3));
}

#[test]
fn solve_output_is_byte_stable_under_reload() {
    let dir = TempDir::new().unwrap();
    let f = write(
        &dir,
        "f.json",
        r#"{"terms": [{"two_l": 3, "entries": [{"two_m": 1, "two_n": -3, "re": 0.1, "im": -0.3},
            {"two_m": -1, "two_n": 1, "re": 1e-12, "im": 7}]}, {"two_l": 2, "entries": [{"two_m": 2, "two_n": 0, "re": 0.25, "im": 0}]}]}"#,
    );
    let u = dir.path().join("u.json");
    assert_eq!(su2ca(&["solve", "--input", &f, "--output", u.to_str().unwrap()]).status.code(), Some(0));
    let first = fs::read_to_string(&u).unwrap();
    let again = su2ca_cli::series_file::render_series(&su2ca_cli::series_file::read_series(&u).unwrap());
    assert_eq!(first, again);
    assert!(first.find("\"two_l\": 2").unwrap() < first.find("\"two_l\": 3").unwrap());
}

#[test]
fn thread_cap_does_not_change_output() {
    let args = ["dims", "--preset", "corank1-paper", "--two-l-max", "10", "--format", "csv"];
    let one = su2ca_env(&args, "SU2CA_THREADS", "1");
    let four = su2ca_env(&args, "SU2CA_THREADS", "4");
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(su2ca_env(&args, "SU2CA_THREADS", "0").status.code(), Some(3));
}
