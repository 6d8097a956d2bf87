use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn mpkit(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mpkit")).args(args).output().expect("run mpkit")
}

fn p(path: &Path) -> &str {
    path.to_str().unwrap()
}

fn fixtures(dir: &Path) -> PathBuf {
    let out = dir.join("fx");
    let o = mpkit(&["fixtures", "--out", p(&out)]);
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    out
}

fn snapshot(dir: &Path) -> Vec<(PathBuf, Vec<u8>)> {
    let mut files = Vec::new();
    let mut stack = vec![dir.to_path_buf()];
    while let Some(d) = stack.pop() {
        for e in fs::read_dir(&d).unwrap() {
            let path = e.unwrap().path();
            if path.is_dir() {
                stack.push(path);
            } else {
                files.push((path.strip_prefix(dir).unwrap().to_path_buf(), fs::read(&path).unwrap()));
            }
        }
    }
    files.sort();
    files
}

#[test]
fn fixtures_are_byte_stable() {
    let (a, b) = (tempfile::tempdir().unwrap(), tempfile::tempdir().unwrap());
    let (fa, fb) = (fixtures(a.path()), fixtures(b.path()));
    let (sa, sb) = (snapshot(&fa), snapshot(&fb));
    assert_eq!(sa.len(), 4 * 7);
    assert_eq!(sa, sb);
}

#[test]
fn s3_validates_and_factorizes() {
    let dir = tempfile::tempdir().unwrap();
    let fx = fixtures(dir.path());
    let o = mpkit(&["validate-mp", "--mp", p(&fx.join("ex-s3/mp.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["report"]["valid"], true);
    assert_eq!(v["result"]["boxes"], 6);

    let o = mpkit(&["factorize", "--ambient", p(&fx.join("ex-s3/ambient.json"))]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    let list = v["result"]["factorizations"].as_array().unwrap();
    assert!(list.iter().any(|f| f["v"].as_array().unwrap().len() == 3 && f["h"].as_array().unwrap().len() == 2));

    let o = mpkit(&[
        "factorize",
        "--ambient",
        p(&fx.join("ex-s3/ambient.json")),
        "--factorization",
        p(&fx.join("ex-s3/factorization.json")),
    ]);
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn json_output_is_reproducible() {
    let dir = tempfile::tempdir().unwrap();
    let fx = fixtures(dir.path());
    let mp = fx.join("ex-k4/mp.json");
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for out in [&a, &b] {
        let o = mpkit(&["certify-equivalence", "--mp", p(&mp), "--seed", "5", "--out", p(out)]);
        assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    }
    let (ta, tb) = (fs::read_to_string(&a).unwrap(), fs::read_to_string(&b).unwrap());
    assert_eq!(ta.replace(p(&a), ""), tb.replace(p(&b), ""));
}

#[test]
fn certify_equivalence_passes_on_gpd6() {
    let dir = tempfile::tempdir().unwrap();
    let fx = fixtures(dir.path());
    let tsv = dir.path().join("tsv");
    let o = mpkit(&["certify-equivalence", "--mp", p(&fx.join("ex-gpd6/mp.json")), "--tsv-dir", p(&tsv)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["passed"], true);
    for side in ["rep", "rep_left", "bimodule", "group"] {
        assert!(fs::read_to_string(tsv.join(format!("{side}.tsv"))).unwrap().starts_with("i\tj\tk\tN"));
    }
}

#[test]
fn sweep_bound_zero_is_empty() {
    let dir = tempfile::tempdir().unwrap();
    let out = dir.path().join("summary.tsv");
    let o = mpkit(&["sweep", "--bound", "0", "--out", p(&out)]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(fs::read_to_string(&out).unwrap().lines().count(), 1);
}

#[test]
fn sweep_above_maximum_is_an_input_error() {
    let o = mpkit(&["sweep", "--bound", "1000"]);
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn injected_corrupted_pair_fails_the_sweep() {
    let dir = tempfile::tempdir().unwrap();
    let fx = fixtures(dir.path());
    let sigma = dir.path().join("bad_sigma.json");
    fs::write(&sigma, r#"[[0, 0, "1/2"]]"#).unwrap();
    let out = dir.path().join("summary.tsv");
    let o = mpkit(&[
        "sweep",
        "--bound",
        "4",
        "--inject",
        p(&fx.join("ex-s3/mp.json")),
        "--inject-sigma",
        p(&sigma),
        "--out",
        p(&out),
    ]);
    assert_eq!(o.status.code(), Some(1));
    let text = fs::read_to_string(&out).unwrap();
    let bad: Vec<&str> = text.lines().filter(|l| l.contains("\tFAIL\t")).collect();
    assert_eq!(bad.len(), 1, "{text}");
    assert!(bad[0].starts_with("injected:"));

    let o = mpkit(&["check-opext", "--mp", p(&fx.join("ex-s3/mp.json")), "--sigma", p(&sigma)]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn malformed_input_exits_with_two() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    fs::write(&bad, "{ not json").unwrap();
    assert_eq!(mpkit(&["validate", "--groupoid", p(&bad)]).status.code(), Some(2));
    assert_eq!(mpkit(&["validate", "--groupoid", p(&dir.path().join("missing.json"))]).status.code(), Some(2));
}

#[test]
fn corrupted_groupoid_fails_validation() {
    let dir = tempfile::tempdir().unwrap();
    let fx = fixtures(dir.path());
    let path = fx.join("ex-s3/ambient.json");
    let o = mpkit(&["validate", "--groupoid", p(&path)]);
    assert_eq!(o.status.code(), Some(0));

    let mut spec: serde_json::Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    let table = spec["compose"].as_array_mut().expect("compose table");
    let entry = table.iter_mut().find(|e| e[0] != e[1] && e[0] != 0 && e[1] != 0).unwrap();
    entry[2] = if entry[2] == 0 { 1.into() } else { 0.into() };
    let bad = dir.path().join("bad.json");
    fs::write(&bad, spec.to_string()).unwrap();
    let o = mpkit(&["validate", "--groupoid", p(&bad)]);
    assert_eq!(o.status.code(), Some(1), "{}", String::from_utf8_lossy(&o.stdout));
}

#[test]
fn solve_coboundary_on_trivial_target() {
    let dir = tempfile::tempdir().unwrap();
    let fx = fixtures(dir.path());
    let omega = dir.path().join("omega.json");
    fs::write(&omega, "[]").unwrap();
    let o = mpkit(&["solve-coboundary", "--groupoid", p(&fx.join("ex-s3/ambient.json")), "--target", p(&omega)]);
    assert_eq!(o.status.code(), Some(0), "{}", String::from_utf8_lossy(&o.stderr));
    let v: serde_json::Value = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(v["result"]["solved"], true);
}
