use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn cyclic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cyclic")).args(args).output().expect("binary runs")
}

fn write_job(dir: &Path, name: &str, job: &str) -> String {
    let path = dir.join(name);
    std::fs::write(&path, job).unwrap();
    path.to_str().unwrap().to_string()
}

fn run_job(dir: &TempDir, job: &str, out: &str, extra: &[&str]) -> Output {
    let job = write_job(dir.path(), &format!("{out}.json"), job);
    let out = dir.path().join(out);
    let mut args = vec!["--job", &job, "--out", out.to_str().unwrap()];
    args.extend_from_slice(extra);
    cyclic(&args)
}

fn read_json(path: &Path) -> Value {
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

#[test]
fn check_cyclic_writes_a_verdict() {
    let dir = TempDir::new().unwrap();
    let job = r#"{"command": "check-cyclic", "space": {"kind": "hardy", "p": 2, "d": 2}, "family": ["z1 - 1", "z2 - 1"]}"#;
    let out = run_job(&dir, job, "a", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let v = read_json(&dir.path().join("a/verdict.json"));
    assert_eq!(v["verdict"]["status"], "jointly-cyclic");
    assert_eq!(v["verdict"]["hypothesis_met"], true);
}

#[test]
fn negative_verdicts_verify_and_tampering_is_caught() {
    let dir = TempDir::new().unwrap();
    let job = r#"{"command": "check-cyclic", "space": {"kind": "dirichlet-type", "t": 2, "d": 2}, "family": ["z1 - 1", "z2 - 1"]}"#;
    let out = run_job(&dir, job, "b", &[]);
    assert_eq!(out.status.code(), Some(0));
    let path = dir.path().join("b/verdict.json");
    let mut v = read_json(&path);
    assert_eq!(v["verdict"]["status"], "not-jointly-cyclic");
    let ok = cyclic(&["--verify", path.to_str().unwrap()]);
    assert_eq!(ok.status.code(), Some(0), "{}", String::from_utf8_lossy(&ok.stderr));
    assert!(String::from_utf8_lossy(&ok.stdout).contains("witness"));

    v["verdict"]["certificate"]["witness"]["point"][0] = serde_json::json!([0.5, 0.0]);
    let bad = dir.path().join("tampered.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    let rejected = cyclic(&["--verify", bad.to_str().unwrap()]);
    assert_eq!(rejected.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&rejected.stderr).contains("error[certificate]"));
}

#[test]
fn uncertain_verdicts_exit_with_two() {
    let dir = TempDir::new().unwrap();
    // ⟨z1, z2⟩ has a one-dimensional variety in three variables.
    let job = r#"{"command": "check-cyclic", "space": {"kind": "hardy", "p": 2, "d": 3}, "family": ["z1", "z2"]}"#;
    let out = run_job(&dir, job, "c", &[]);
    assert_eq!(out.status.code(), Some(2));
    let v = read_json(&dir.path().join("c/verdict.json"));
    assert_eq!(v["verdict"]["status"], "uncertain");
    assert_eq!(v["verdict"]["hypothesis_met"], false);
}

#[test]
fn scan_of_the_bergman_space_at_one() {
    let dir = TempDir::new().unwrap();
    let job = r#"{"command": "scan-maxdomain", "weight": {"kind": "constant", "c": 1}, "n": 0,
                  "schedule": [4, 8, 16, 24], "points": [[1, 0]], "precision": 40}"#;
    let out = run_job(&dir, job, "d", &[]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let csv = std::fs::read_to_string(dir.path().join("d/scan.csv")).unwrap();
    let rows: Vec<Vec<&str>> = csv.lines().skip(1).map(|l| l.split(',').collect()).collect();
    assert_eq!(rows.len(), 4);
    for row in rows {
        let n: f64 = row[2].parse().unwrap();
        let lambda: f64 = row[3].parse().unwrap();
        let exact = (n + 1.0) * (n + 2.0) / 2.0;
        assert!((lambda - exact).abs() < 1e-9 * exact, "N={n}: {lambda}");
    }
    let summary = read_json(&dir.path().join("d/summary.json"));
    assert_eq!(summary["points"][0]["classification"], "divergent");
}

#[test]
fn scan_output_is_identical_across_thread_counts() {
    let dir = TempDir::new().unwrap();
    let job = r#"{"command": "scan-maxdomain", "weight": {"kind": "closed-arc-set", "arcs": [{"center": 0, "half_width": 0.8}]},
                  "n": 2, "schedule": [4, 8, 12], "grid": {"count": 6}, "precision": 40}"#;
    let one = run_job(&dir, job, "t1", &["--threads", "1"]);
    let four = run_job(&dir, job, "t4", &["--threads", "4"]);
    assert_eq!(one.status.code(), four.status.code());
    for name in ["scan.csv", "summary.json"] {
        let a = std::fs::read(dir.path().join("t1").join(name)).unwrap();
        let b = std::fs::read(dir.path().join("t4").join(name)).unwrap();
        assert_eq!(a, b, "{name} differs");
    }
}

#[test]
fn gram_dump_is_hermitian_text() {
    let dir = TempDir::new().unwrap();
    let job = r#"{"command": "gram-dump", "weight": {"kind": "constant", "c": 1}, "n": 1, "degree_cap": 3}"#;
    let out = run_job(&dir, job, "g", &["--precision", "30"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    let g = read_json(&dir.path().join("g/gram.json"));
    assert_eq!(g["digits"], 30);
    let e = &g["entries"];
    // ‖z‖² = 1/2 + 1 in H_{1,1}.
    let re: f64 = e[1][1][0].as_str().unwrap().parse().unwrap();
    assert!((re - 1.5).abs() < 1e-25);
    assert_eq!(e[1][2][0], e[2][1][0]);
}

#[test]
fn catalog_info_reports_the_domain() {
    let dir = TempDir::new().unwrap();
    let job = r#"{"command": "catalog-info", "space": {"kind": "dirichlet-type", "t": 2, "d": 1}}"#;
    let out = run_job(&dir, job, "i", &[]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("ClosedPolydisk"));
    let info = read_json(&dir.path().join("i/catalog.json"));
    assert_eq!(info["maximal_domain"]["kind"], "closed-polydisk");
}

#[test]
fn errors_exit_with_one_and_a_category() {
    let dir = TempDir::new().unwrap();
    let cases = [
        (r#"{"command": "check-cyclic", "space": {"kind": "hardy", "p": 2, "d": 2}, "family": ["z1 +"]}"#, "error[job]"),
        (r#"{"command": "gram-dump", "weight": {"kind": "constant", "c": 1}, "n": 0, "degree": 3}"#, "error[job]"),
        (r#"{"command": "fly"}"#, "error[job]"),
        (
            r#"{"command": "check-cyclic", "space": {"kind": "dirichlet-type", "t": 0.5, "d": 3}, "family": ["z1 - 2"]}"#,
            "error[unsupported]",
        ),
    ];
    for (i, (job, tag)) in cases.iter().enumerate() {
        let out = run_job(&dir, job, &format!("e{i}"), &[]);
        assert_eq!(out.status.code(), Some(1), "{job}");
        assert!(String::from_utf8_lossy(&out.stderr).starts_with(tag), "{job}: {}", String::from_utf8_lossy(&out.stderr));
    }
    let missing = cyclic(&["--job", dir.path().join("nope.json").to_str().unwrap()]);
    assert_eq!(missing.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&missing.stderr).starts_with("error[io]"));
}

#[test]
fn reruns_are_byte_identical() {
    let dir = TempDir::new().unwrap();
    let job = r#"{"command": "check-cyclic", "space": {"kind": "dirichlet-type", "t": 0.75, "d": 2}, "family": ["1 - z1*z2"], "seed": 7}"#;
    run_job(&dir, job, "r1", &[]);
    run_job(&dir, job, "r2", &[]);
    let a = std::fs::read(dir.path().join("r1/verdict.json")).unwrap();
    let b = std::fs::read(dir.path().join("r2/verdict.json")).unwrap();
    assert_eq!(a, b);
    assert_eq!(read_json(&dir.path().join("r1/verdict.json"))["verdict"]["status"], "not-cyclic");
}

#[test]
fn verify_replays_the_groebner_certificate() {
    let dir = TempDir::new().unwrap();
    let job = r#"{"command": "check-cyclic", "space": {"kind": "hardy", "p": 2, "d": 2}, "family": ["z1^2 - 4", "z2 - z1"]}"#;
    let out = run_job(&dir, job, "gb", &[]);
    assert_eq!(out.status.code(), Some(0));
    let path = dir.path().join("gb/verdict.json");
    let mut v = read_json(&path);
    let ideal = &v["verdict"]["certificate"]["ideal"];
    assert_eq!(ideal["standard_monomials"].as_array().unwrap().len(), 2);
    assert_eq!(ideal["variety_points"].as_array().unwrap().len(), 2);
    assert_eq!(cyclic(&["--verify", path.to_str().unwrap()]).status.code(), Some(0));

    // Drop the constant term of the last basis element.
    let basis = v["verdict"]["certificate"]["ideal"]["basis"].as_array_mut().unwrap();
    basis.last_mut().unwrap().as_array_mut().unwrap().pop();
    let bad = dir.path().join("gb-tampered.json");
    std::fs::write(&bad, serde_json::to_string(&v).unwrap()).unwrap();
    assert_eq!(cyclic(&["--verify", bad.to_str().unwrap()]).status.code(), Some(1));
}
