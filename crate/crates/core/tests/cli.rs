use std::path::Path;
use std::process::{Command, Output};

fn bin() -> Command {
    let mut c = Command::new(env!("CARGO_BIN_EXE_alphasectors"));
    c.env_remove("ALPHASECTORS_TOL");
    c
}

fn write_spec(dir: &Path, name: &str, json: &str) -> String {
    let p = dir.join(name);
    std::fs::write(&p, json).unwrap();
    p.to_string_lossy().into_owned()
}

const FIG1: &str = r#"{"type":"rational","p":-1,"k":3,"a":[0.1,1,4],"b":[1,5]}"#;

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

#[test]
fn solve_writes_sorted_csv_svg_and_json() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "f.json", FIG1);
    let csv = dir.path().join("out.csv");
    let svg = dir.path().join("out.svg");
    let json = dir.path().join("out.json");
    let o = bin()
        .args(["solve", "--spec", &spec, "--alpha", "-1-1i", "--radius", "10", "--csv"])
        .arg(&csv)
        .arg("--svg")
        .arg(&svg)
        .arg("--json")
        .arg(&json)
        .output()
        .unwrap();
    assert!(o.status.success(), "{}", String::from_utf8_lossy(&o.stderr));
    let mut rdr = csv::Reader::from_path(&csv).unwrap();
    let header: Vec<String> = rdr.headers().unwrap().iter().map(String::from).collect();
    assert_eq!(header, ["index", "re", "im", "modulus", "sector", "boundary", "multiplicity", "residual"]);
    let rows: Vec<csv::StringRecord> = rdr.records().map(|r| r.unwrap()).collect();
    assert_eq!(rows.len(), 9);
    let moduli: Vec<f64> = rows.iter().map(|r| r[3].parse().unwrap()).collect();
    assert!(moduli.windows(2).all(|w| w[0] < w[1]));
    // 17 significant digits.
    assert!(rows[0][1].split('e').next().unwrap().trim_start_matches('-').len() == 18);
    let s = std::fs::read_to_string(&svg).unwrap();
    assert!(s.starts_with("<svg") && s.matches("<line").count() == 6);
    let j: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(j.as_array().unwrap().len(), 9);
}

#[test]
fn empty_alpha_set_gives_header_only() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "f.json", FIG1);
    let csv = dir.path().join("out.csv");
    let o = bin().args(["solve", "--spec", &spec, "--alpha", "-1-1i", "--radius", "0.01", "--csv"]).arg(&csv).output().unwrap();
    assert!(o.status.success());
    assert_eq!(std::fs::read_to_string(&csv).unwrap().trim(), "index,re,im,modulus,sector,boundary,multiplicity,residual");
}

#[test]
fn verify_reports_and_exit_codes() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "f.json", FIG1);
    let json = dir.path().join("r.json");
    let o = bin().args(["verify", "--spec", &spec, "--alpha", "-1-1i", "--theorem", "main", "--json"]).arg(&json).output().unwrap();
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(&json).unwrap()).unwrap();
    assert_eq!(r["passed"], true);
    assert_eq!(r["checks"]["sector-hop"], 8);

    // A coarse tolerance puts points on rays: the checks fail and the exit status says so.
    let o = bin()
        .env("ALPHASECTORS_TOL", "0.2")
        .args(["verify", "--spec", &spec, "--alpha", "-1-1i", "--theorem", "main"])
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(1), "{}", stdout(&o));

    // main2 needs a real direction.
    let o = bin().args(["verify", "--spec", &spec, "--alpha", "-1-1i", "--theorem", "main2"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));

    let o = bin().args(["verify", "--spec", &spec, "--alpha", "-1-1i", "--theorem", "first"]).output().unwrap();
    assert_eq!(o.status.code(), Some(0));
}

#[test]
fn invalid_specs_are_named() {
    let dir = tempfile::tempdir().unwrap();
    let bad = write_spec(dir.path(), "bad.json", r#"{"type":"rational","p":2,"k":4,"a":[1],"b":[2]}"#);
    let o = bin().args(["solve", "--spec", &bad, "--alpha", "1"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&o.stderr).contains("gcd"));
    let neg = write_spec(dir.path(), "neg.json", r#"{"type":"rational","p":1,"k":3,"a":[-1],"b":[2]}"#);
    let o = bin().args(["solve", "--spec", &neg, "--alpha", "1"]).output().unwrap();
    assert!(String::from_utf8_lossy(&o.stderr).contains("a[0]"));
    let typo = write_spec(dir.path(), "typo.json", "{\"type\":\"rational\",\n\"p\":1,\"k\":3,\"aa\":[1]}");
    let o = bin().args(["solve", "--spec", &typo, "--alpha", "1"]).output().unwrap();
    let err = String::from_utf8_lossy(&o.stderr);
    assert!(err.contains("aa") && err.contains("line 2"), "{err}");
    let o = bin().args(["solve", "--spec", &typo, "--alpha", "1+"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn census_and_predict() {
    let dir = tempfile::tempdir().unwrap();
    let spec = write_spec(dir.path(), "f.json", FIG1);
    let o = bin().args(["census", "--spec", &spec, "--alpha", "-1-1i", "--rin", "0.01", "--rout", "10"]).output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("census agrees"));
    let o = bin().args(["predict", "--spec", &spec, "--alpha", "-1-1i", "--current", "0"]).output().unwrap();
    assert!(o.status.success());
    assert!(stdout(&o).contains("next after Q_0: Q_3"));
}

#[test]
fn demos() {
    let dir = tempfile::tempdir().unwrap();
    for name in ["fig1", "fig2a", "fig2b", "fig3", "theta", "dexp"] {
        let o = bin().args(["demo", name, "--out"]).arg(dir.path()).output().unwrap();
        assert_eq!(o.status.code(), Some(0), "{name}: {}", stdout(&o));
    }
    assert!(dir.path().join("fig1_0.csv").exists() && dir.path().join("fig3_1.svg").exists());
    let r: serde_json::Value = serde_json::from_str(&std::fs::read_to_string(dir.path().join("fig1_0.json")).unwrap()).unwrap();
    assert_eq!(r["points"].as_array().unwrap().len(), 9);
    assert_eq!(r["census"]["agree"], true);
    let o = bin().args(["demo", "nope"]).output().unwrap();
    assert_eq!(o.status.code(), Some(2));
}
