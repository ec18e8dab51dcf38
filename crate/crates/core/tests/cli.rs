use std::fs;
use std::path::Path;
use std::process::{Command, Output};

use lune::covering::dekster_radius;
use serde_json::Value;
use tempfile::TempDir;

fn lune(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_lune"))
        .args(args)
        .env_remove("LUNE_SEED")
        .output()
        .unwrap()
}

fn code(o: &Output) -> i32 {
    o.status.code().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn gen(dir: &TempDir, name: &str, shape: &[&str]) -> String {
    let path = dir.path().join(name);
    let path = path.to_str().unwrap().to_string();
    let mut args = vec!["gen"];
    args.extend_from_slice(shape);
    args.extend(["--out", &path]);
    let o = lune(&args);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    path
}

fn measure(path: &str) -> Value {
    let o = lune(&["measure", path, "--json"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    serde_json::from_str(&stdout(&o)).unwrap()
}

fn num(v: &Value, key: &str) -> f64 {
    key.split('.').fold(v, |v, k| &v[k]).as_f64().unwrap()
}

fn edge_kinds(path: &str) -> Vec<String> {
    let doc: Value = serde_json::from_str(&fs::read_to_string(path).unwrap()).unwrap();
    doc["data"]["edges"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["kind"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn gen_shapes() {
    let dir = TempDir::new().unwrap();
    let r = gen(&dir, "r.json", &["reuleaux", "--n", "3", "--w", "1.0"]);
    assert_eq!(edge_kinds(&r), ["circular_arc"; 3]);
    let q = gen(&dir, "q.json", &["quarter-disk", "--delta", "1.0"]);
    let mut kinds = edge_kinds(&q);
    kinds.sort();
    assert_eq!(kinds, ["circular_arc", "geodesic", "geodesic"]);
    assert_eq!(
        code(&lune(&[
            "gen",
            "reduced-ngon",
            "--n",
            "4",
            "--delta",
            "1.0"
        ])),
        2
    );
    assert_eq!(code(&lune(&["gen", "cap", "--rho", "2.0"])), 2);
}

#[test]
fn measure_known_bodies() {
    let dir = TempDir::new().unwrap();
    let r = measure(&gen(
        &dir,
        "r.json",
        &["reuleaux", "--n", "3", "--w", "1.0"],
    ));
    assert!((num(&r, "thickness") - 1.0).abs() <= 1e-6);
    assert!((num(&r, "diameter") - 1.0).abs() <= 1e-6);
    assert!((num(&r, "min_enclosing_cap.radius") - dekster_radius(1.0)).abs() <= 1e-6);
    assert_eq!(r["constant_width"]["holds"], Value::Bool(true));

    let c = measure(&gen(&dir, "c.json", &["cap", "--rho", "0.5"]));
    assert!((num(&c, "thickness") - 1.0).abs() <= 1e-6);
    assert!((num(&c, "diameter") - 1.0).abs() <= 1e-6);

    let delta = std::f64::consts::FRAC_PI_3.to_string();
    let q = measure(&gen(&dir, "q.json", &["quarter-disk", "--delta", &delta]));
    assert!((num(&q, "diameter") - 0.25f64.acos()).abs() <= 1e-6);
    assert!((num(&q, "thickness") - std::f64::consts::FRAC_PI_3).abs() <= 1e-6);
    assert_eq!(q["constant_width"]["holds"], Value::Bool(false));
}

#[test]
fn measure_text_and_byte_stability() {
    let dir = TempDir::new().unwrap();
    let a = gen(&dir, "a.json", &["reuleaux", "--n", "5", "--w", "2.0"]);
    let b = gen(&dir, "b.json", &["reuleaux", "--n", "5", "--w", "2.0"]);
    assert_eq!(fs::read(&a).unwrap(), fs::read(&b).unwrap());
    let text = stdout(&lune(&["measure", &a]));
    assert!(text
        .lines()
        .any(|l| l.starts_with("thickness ") && l.ends_with("2.00000000")));
    assert_eq!(
        stdout(&lune(&["measure", &a, "--json"])),
        stdout(&lune(&["measure", &b, "--json"]))
    );
}

#[test]
fn schema_errors() {
    let dir = TempDir::new().unwrap();
    let path = gen(&dir, "c.json", &["cap", "--rho", "0.5"]);
    let mut doc: Value = serde_json::from_str(&fs::read_to_string(&path).unwrap()).unwrap();
    doc["note"] = Value::String("hand edited".into());
    let extra = dir.path().join("extra.json");
    fs::write(&extra, doc.to_string()).unwrap();
    let extra = extra.to_str().unwrap();
    assert_eq!(code(&lune(&["measure", extra])), 3);
    assert_eq!(code(&lune(&["measure", extra, "--lenient"])), 0);

    doc["schema_version"] = Value::String("99".into());
    let bad = dir.path().join("bad.json");
    fs::write(&bad, doc.to_string()).unwrap();
    assert_eq!(
        code(&lune(&["measure", bad.to_str().unwrap(), "--lenient"])),
        3
    );
    assert_eq!(code(&lune(&["measure", "/nonexistent/body.json"])), 3);
}

fn records(o: &Output) -> Vec<Value> {
    stdout(o)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect()
}

#[test]
fn verify_all_passes() {
    let o = lune(&["verify"]);
    assert_eq!(code(&o), 0);
    let recs = records(&o);
    assert_eq!(recs.len(), 14);
    assert!(recs
        .iter()
        .all(|r| r["pass"] == Value::Bool(true) && r["seed"] == 1));
}

#[test]
fn verify_options() {
    let o = lune(&["verify", "--suite", "T_V_cover", "--cases", "20"]);
    assert_eq!(code(&o), 0);
    let recs = records(&o);
    assert_eq!(recs.len(), 1);
    assert_eq!(recs[0]["cases_run"], 20);
    assert_eq!(recs[0]["theorem_id"], "T_V_cover");
    assert_eq!(code(&lune(&["verify", "--suite", "T_bogus"])), 2);

    let seeded = Command::new(env!("CARGO_BIN_EXE_lune"))
        .args(["verify", "--suite", "T_I_strict", "--cases", "2"])
        .env("LUNE_SEED", "99")
        .output()
        .unwrap();
    assert_eq!(records(&seeded)[0]["seed"], 99);
}

fn write_config(dir: &Path, text: &str) -> String {
    let p = dir.join("lune.toml");
    fs::write(&p, text).unwrap();
    p.to_str().unwrap().to_string()
}

#[test]
fn config_tolerances() {
    let dir = TempDir::new().unwrap();
    let tight = write_config(
        dir.path(),
        "eps_alg = 1e-12\neps_opt = 1e-11\neps_claim = 1e-10\n",
    );
    assert_eq!(
        code(&lune(&[
            "--config", &tight, "verify", "--suite", "T_I_main"
        ])),
        1
    );
    let garbled = write_config(dir.path(), "eps_alg = [\n");
    assert_eq!(code(&lune(&["--config", &garbled, "verify"])), 3);
    let unordered = write_config(dir.path(), "eps_alg = 1e-3\neps_opt = 1e-7\n");
    assert_eq!(code(&lune(&["--config", &unordered, "verify"])), 2);
}

#[test]
fn plot_structure() {
    let dir = TempDir::new().unwrap();
    let r = gen(&dir, "r.json", &["reuleaux", "--n", "3", "--w", "1.0"]);
    let o = lune(&["plot", &r, "--with-cap", "--with-lune"]);
    assert_eq!(code(&o), 0);
    let svg = stdout(&o);
    assert!(svg.starts_with("<?xml"));
    assert!(svg.trim_end().ends_with("</svg>"));
    assert_eq!(svg.matches(r#"class="edge arc""#).count(), 3);
    assert_eq!(svg.matches(r#"class="lune-center""#).count(), 2);

    let p = gen(
        &dir,
        "p.json",
        &["reduced-ngon", "--n", "5", "--delta", "1.2"],
    );
    let out = dir.path().join("p.svg");
    let o = lune(&[
        "plot",
        &p,
        "--projection",
        "gnomonic",
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!(code(&o), 0);
    let svg = fs::read_to_string(out).unwrap();
    let edges: Vec<_> = svg
        .lines()
        .filter(|l| l.contains("edge geodesic"))
        .collect();
    assert_eq!(edges.len(), 5);
    assert!(edges.iter().all(|e| e.matches('L').count() == 1));
}
