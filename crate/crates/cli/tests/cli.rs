use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_shortedge"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/fixtures").join(name)
}

fn gen(dir: &Path, generator: &str, n: usize, seed: u64) -> PathBuf {
    let path = dir.join(format!("{generator}-{n}-{seed}.json"));
    let o = run(&[
        "gen",
        "--generator",
        generator,
        "--n",
        &n.to_string(),
        "--seed",
        &seed.to_string(),
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success(), "{}", stderr(&o));
    path
}

#[test]
fn gen_writes_complete_drawing_and_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("k8.json");
    let o = run(&["gen", "--generator", "convex", "--n", "8", "-o", path.to_str().unwrap()]);
    assert!(o.status.success());
    let d: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(d["vertices"].as_array().unwrap().len(), 8);
    assert_eq!(d["edges"].as_array().unwrap().len(), 28);

    let o = run(&["--json", "gen", "--generator", "convex", "--n", "6", "-o", path.to_str().unwrap()]);
    let summary: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(summary["crossings"], 15);
}

#[test]
fn gen_is_deterministic_per_seed() {
    let a = run(&["gen", "--generator", "random-geometric", "--n", "20", "--seed", "7"]);
    let b = run(&["gen", "--generator", "random-geometric", "--n", "20", "--seed", "7"]);
    let c = run(&["gen", "--generator", "random-geometric", "--n", "20", "--seed", "8"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
    assert_ne!(a.stdout, c.stdout);
}

#[test]
fn gen_rejects_bad_arguments() {
    assert_eq!(run(&["gen", "--generator", "convex", "--n", "2"]).status.code(), Some(2));
    assert_eq!(run(&["gen", "--generator", "spiral", "--n", "9"]).status.code(), Some(2));
}

#[test]
fn analyze_convex_k33_passes() {
    let dir = tempfile::tempdir().unwrap();
    let k33 = gen(dir.path(), "convex", 33, 0);
    let o = run(&["analyze", k33.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(report["passed"], true);
    assert_eq!(report["n"], 32);
    assert!(report["fallback"].is_null());
}

#[test]
fn analyze_non_simple_input_lists_violations() {
    let o = run(&["analyze", fixture("edge_through_vertex.json").to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stderr(&o).contains("passes through vertex 1"), "{}", stderr(&o));
}

#[test]
fn analyze_appends_csv_rows() {
    let dir = tempfile::tempdir().unwrap();
    let d = gen(dir.path(), "random-geometric", 36, 4);
    let csv = dir.path().join("rows.csv");
    for _ in 0..3 {
        let o = run(&["analyze", d.to_str().unwrap(), "--emit", "csv", "-o", csv.to_str().unwrap()]);
        assert!(o.status.success(), "{}", stderr(&o));
    }
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 4);
    assert!(lines[0].starts_with("schema,n,seed,generator"));
    let width = lines[0].split(',').count();
    assert!(lines[1..].iter().all(|l| l.split(',').count() == width && l.starts_with("v1,35,")));
}

#[test]
fn verify_convex_k17_passes() {
    let dir = tempfile::tempdir().unwrap();
    let k17 = gen(dir.path(), "convex", 17, 0);
    let o = run(&["--json", "verify", k17.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let out: Value = serde_json::from_str(&stdout(&o)).unwrap();
    let checks = out["checks"].as_array().unwrap();
    assert!(checks.iter().all(|c| c["passed"] == true));
    let shatter = checks.iter().find(|c| c["name"] == "shatter-m3-exact").unwrap();
    assert_eq!(shatter["bound"], 45.0);
}

#[test]
fn verify_random_drawing_runs_oracle_checks() {
    let dir = tempfile::tempdir().unwrap();
    let d = gen(dir.path(), "random-geometric", 40, 1);
    let o = run(&["verify", d.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = stdout(&o);
    for name in ["oracle-kappa", "oracle-phi", "oracle-classification", "max-kappa", "e4-straddles-split"] {
        assert!(text.contains(&format!("PASS {name}")), "{name} missing:\n{text}");
    }
}

#[test]
fn verify_flags_corrupted_matching() {
    use shortedge::drawing::{outer_face_vertex, relabel_ccw, triangle_family};
    use shortedge::{key_matching, Drawing, MatchConfig};

    let dir = tempfile::tempdir().unwrap();
    let path = gen(dir.path(), "random-geometric", 41, 3);
    let d = Drawing::from_json_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let l = relabel_ccw(&d, outer_face_vertex(&d, None).unwrap()).unwrap();
    let f = triangle_family(&d, &l).unwrap();
    let family_path = dir.path().join("family.json");
    std::fs::write(&family_path, f.to_json()).unwrap();

    let mut m = key_matching(&f, &MatchConfig::default()).unwrap();
    let good = dir.path().join("good.json");
    std::fs::write(&good, m.to_json()).unwrap();
    let o = run(&["verify", good.to_str().unwrap(), "--family", family_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let o = run(&["verify", good.to_str().unwrap(), "--drawing", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));

    *m.kappa.values_mut().next().unwrap() += 3;
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, m.to_json()).unwrap();
    let o = run(&["verify", bad.to_str().unwrap(), "--family", family_path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("kappa-consistency"), "{}", stderr(&o));

    assert_eq!(run(&["verify", bad.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn verify_family_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("f.json");
    std::fs::write(&path, r#"{"n": 4, "members": [{"key": [0, 0], "set": [0]}, {"key": [1, 0], "set": [1, 2]}]}"#).unwrap();
    let o = run(&["verify", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(stdout(&o).contains("PASS shatter-m2-exact: achieved 3 (bound 20)"));
    assert!(stdout(&o).contains("SKIP matching"));
    assert!(stdout(&o).contains("SKIP net-size-ratio"));
}

#[test]
fn sweep_rows_are_ordered_and_bounded() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("sweep.csv");
    let o = run(&["--jobs", "3", "sweep", "--n", "32,16,64", "--seeds", "5", "-o", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let text = std::fs::read_to_string(&csv).unwrap();
    let mut lines = text.lines();
    let header: Vec<&str> = lines.next().unwrap().split(',').collect();
    let col = |name: &str| header.iter().position(|h| *h == name).unwrap();
    let rows: Vec<Vec<String>> = lines.map(|l| l.split(',').map(String::from).collect()).collect();
    assert!(rows.iter().all(|r| r.len() == header.len()));

    let instances: Vec<&Vec<String>> = rows.iter().filter(|r| r[col("kind")] == "instance").collect();
    assert_eq!(instances.len(), 15);
    assert_eq!(rows.len(), 15 + 6);
    let keys: Vec<(usize, u64)> = instances
        .iter()
        .map(|r| (r[col("n")].parse().unwrap(), r[col("seed")].parse().unwrap()))
        .collect();
    let mut sorted = keys.clone();
    sorted.sort();
    assert_eq!(keys, sorted);
    for r in &instances {
        let crossings: f64 = r[col("crossings")].parse().unwrap();
        let bound: f64 = r[col("bound")].parse().unwrap();
        let oracle: f64 = r[col("oracle_min")].parse().unwrap();
        assert!(crossings <= bound && oracle <= crossings);
    }

    let serial = dir.path().join("serial.csv");
    run(&["sweep", "--n", "16,32,64", "--seeds", "5", "-o", serial.to_str().unwrap()]);
    let strip = |t: &str| -> Vec<String> {
        t.lines()
            .map(|l| {
                let mut f: Vec<&str> = l.split(',').collect();
                f[col("runtime_ms")] = "";
                f.join(",")
            })
            .collect()
    };
    assert_eq!(strip(&text), strip(&std::fs::read_to_string(&serial).unwrap()));
}

#[test]
fn constants_file_is_validated() {
    let dir = tempfile::tempdir().unwrap();
    let k = gen(dir.path(), "random-geometric", 24, 0);
    let good = dir.path().join("good.json");
    std::fs::write(&good, r#"{"c1": 0.5, "c2": 1.0, "c3": 3.0, "c4": 0.05, "min_n": 16}"#).unwrap();
    let o = run(&["--constants", good.to_str().unwrap(), "analyze", k.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    let report: Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert!(report["fallback"].is_null());

    for bad in [r#"{"c1": 0.5, "extra": 1}"#, r#"{"c3": 1.0}"#, "not json"] {
        std::fs::write(&good, bad).unwrap();
        let o = run(&["--constants", good.to_str().unwrap(), "analyze", k.to_str().unwrap()]);
        assert_eq!(o.status.code(), Some(2), "{bad}");
    }
}
