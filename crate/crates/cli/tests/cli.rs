use std::fs;
use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;
use tempfile::TempDir;

fn pcx(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_pcx"))
        .args(args)
        .env_remove("PCX_MAX_DEGREE")
        .output()
        .expect("pcx runs")
}

fn json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).unwrap_or_else(|e| {
        panic!(
            "stdout is not JSON ({e}): {}\nstderr: {}",
            String::from_utf8_lossy(&out.stdout),
            String::from_utf8_lossy(&out.stderr)
        )
    })
}

fn write(dir: &TempDir, name: &str, text: &str) -> PathBuf {
    let p = dir.path().join(name);
    fs::write(&p, text).unwrap();
    p
}

fn s(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn builtin(name: &str) -> String {
    let p = Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("../core/scenarios")
        .join(format!("{name}.json"));
    fs::read_to_string(p).unwrap()
}

#[test]
fn builtin_scenario_passes() {
    let out = pcx(&["scenario", "run", "harmonic_oscillator_2d"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["passed"], true);
    assert_eq!(v["scenario"], "harmonic_oscillator_2d");
}

#[test]
fn all_builtins_pass() {
    let out = pcx(&["scenario", "run", "--all"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    let v = json(&out);
    let list = pcx(&["scenario", "list"]);
    let list = json(&list);
    let names: Vec<&str> = list
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    let ran: Vec<&str> = v["scenarios"]
        .as_array()
        .unwrap()
        .iter()
        .map(|r| r["scenario"].as_str().unwrap())
        .collect();
    assert_eq!(ran, names, "reports keep the listing order");
    assert_eq!(names.len(), 9);
}

#[test]
fn canonoid_free_particle() {
    let dir = TempDir::new().unwrap();
    // S = diag(0, 0, 1, 1), d = [[n, -l], [-l, m]] / (mn - l^2).
    let (m, l, n) = (2i64, 1i64, 3i64);
    let det = m * n - l * l;
    let sf = write(&dir, "s.json", "[[0,0,0,0],[0,0,0,0],[0,0,1,0],[0,0,0,1]]");
    let af = write(
        &dir,
        "a.json",
        &format!(
            r#"[[1,0,0,0],[0,1,0,0],[0,0,"{n}/{det}","{}/{det}"],[0,0,"{}/{det}","{m}/{det}"]]"#,
            -l, -l
        ),
    );
    let out = pcx(&["canonoid", "--S", s(&sf), "--A", s(&af)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["is_canonoid"], true);
    assert_eq!(v["is_canonical"], false);
    let c: Vec<Vec<String>> = serde_json::from_value(v["C"].clone()).unwrap();
    let expect = [
        ["0", "0", "0", "0"],
        ["0", "0", "0", "0"],
        ["0", "0", "2", "1"],
        ["0", "0", "1", "3"],
    ];
    assert_eq!(c, expect.map(|r| r.map(String::from).to_vec()).to_vec());
    assert_eq!(c[2][2], m.to_string());
    assert_eq!(c[2][3], l.to_string());
    assert_eq!(c[3][3], n.to_string());
}

#[test]
fn gamma_space_of_identity() {
    let dir = TempDir::new().unwrap();
    let sf = write(&dir, "s.json", "[[1,0],[0,1]]");
    let out = pcx(&["gamma-space", "--S", s(&sf)]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dimension"], 1);
}

#[test]
fn casimir_euler_has_one() {
    let out = pcx(&["casimir", "--scenario", "euler_so3.json", "--degree", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["basis"].as_array().unwrap().len(), 1);
}

#[test]
fn degree_env_var_sets_default() {
    let out = Command::new(env!("CARGO_BIN_EXE_pcx"))
        .args(["casimir", "--scenario", "euler_so3"])
        .env("PCX_MAX_DEGREE", "1")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["dimension"], 0);
    assert_eq!(json(&pcx(&["casimir", "--scenario", "euler_so3"]))["dimension"], 1);
}

#[test]
fn flipped_sign_in_expected_is_named() {
    let dir = TempDir::new().unwrap();
    let src = builtin("free_particle");
    let bad = src.replacen("[0, 0, 1, 3]]", "[0, 0, -1, 3]]", 1);
    assert_ne!(bad, src);
    let f = write(&dir, "bad.json", &bad);
    let out = pcx(&["scenario", "run", s(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["passed"], false);
    let failed: Vec<&Value> = v["outcomes"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|o| o["passed"] == false)
        .collect();
    assert_eq!(failed.len(), 1);
    assert_eq!(failed[0]["check"], "canonoid");
    assert_eq!(failed[0]["item"], "block_d");
    let m = &failed[0]["mismatches"][0];
    assert_eq!(m["field"], "C");
    assert_eq!(m["diff"][0]["row"], 3);
    assert_eq!(m["diff"][0]["col"], 2);
}

#[test]
fn flipped_sign_in_integral_fails_at_load() {
    let dir = TempDir::new().unwrap();
    let src = builtin("harmonic_oscillator_2d");
    let bad = src.replacen("q2*p1 - q1*p2", "q2*p1 + q1*p2", 1);
    assert_ne!(bad, src);
    let f = write(&dir, "bad.json", &bad);
    let out = pcx(&["scenario", "run", s(&f)]);
    assert_eq!(out.status.code(), Some(1));
    let v = json(&out);
    assert_eq!(v["error"], "invariant");
    assert_eq!(v["item"], "W1");
}

#[test]
fn usage_errors_exit_2() {
    let out = pcx(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(!out.stderr.is_empty());

    let out = pcx(&["casimir", "--scenario", "no_such_scenario"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());

    let dir = TempDir::new().unwrap();
    let f = write(&dir, "broken.json", "{\"schema\": 1, \"name\": ");
    let out = pcx(&["scenario", "run", s(&f)]);
    assert_eq!(out.status.code(), Some(2));

    let out = pcx(&[
        "poissonoid",
        "check",
        "--scenario",
        "euler_so3",
        "--transform",
        "missing",
    ]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing"));
}

#[test]
fn help_exits_0() {
    let out = pcx(&["--help"]);
    assert_eq!(out.status.code(), Some(0));
}

#[test]
fn poissonoid_check_euler() {
    let out = pcx(&[
        "poissonoid",
        "check",
        "--scenario",
        "euler_so3",
        "--transform",
        "rescaling",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["poissonoid"], true);
    assert_eq!(v["compatible"], true);
    // I = (1, 4, 9): first pushforward component (I2 - I3)/(I1 I2 I3) n2 n3.
    let (i1, i2, i3) = (1i64, 4i64, 9i64);
    let (num, den) = (i2 - i3, i1 * i2 * i3);
    assert_eq!(v["pushforward"][0], format!("{num}/{den}*m2*m3"));
}

#[test]
fn kirchhoff_certificate() {
    let out = pcx(&["kirchhoff", "--omega", "6,2,1", "--eps", "1", "--a", "1"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["det"], "-125/8");
    assert_eq!(v["passed"], true);
    let out = pcx(&["kirchhoff", "--omega", "6,2", "--eps", "1", "--a", "1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn compat_with_eta_tilde() {
    let dir = TempDir::new().unwrap();
    let eta = r#"[
      ["0", "-1*m3", "m2", "0", "0", "0"],
      ["m3", "0", "-1*m1", "4*p3", "0", "-4*p1"],
      ["-1*m2", "m1", "0", "-5*p2", "5*p1", "0"],
      ["0", "-4*p3", "5*p2", "0", "-5*m3", "4*m2"],
      ["0", "0", "-5*p1", "5*m3", "0", "0"],
      ["0", "4*p1", "0", "-4*m2", "0", "0"]
    ]"#;
    let f = write(&dir, "eta.json", eta);
    let out = pcx(&[
        "compat",
        "--scenario",
        "clebsch_kirchhoff",
        "--other",
        s(&f),
        "--hamiltonian",
        "-1/2*(p1^2 + p2^2 + p3^2)",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["is_poisson"], true);
    assert_eq!(v["compatible"], true);
    assert_eq!(v["hamiltonian_field"], true);

    let sch = pcx(&["schouten", "--scenario", "clebsch_kirchhoff", "--other", s(&f)]);
    assert_eq!(sch.status.code(), Some(0));
    assert_eq!(json(&sch)["zero"], true);

    // A wrong sign in one entry pair breaks the Jacobi identity.
    let bad = eta
        .replacen("\"4*p3\", \"0\", \"-4*p1\"", "\"-4*p3\", \"0\", \"-4*p1\"", 1)
        .replacen("[\"0\", \"-4*p3\", \"5*p2\"", "[\"0\", \"4*p3\", \"5*p2\"", 1);
    let g = write(&dir, "bad.json", &bad);
    let out = pcx(&["compat", "--scenario", "clebsch_kirchhoff", "--other", s(&g)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["is_poisson"], false);
}

#[test]
fn schouten_of_scenario_structure() {
    let out = pcx(&["schouten", "--scenario", "manakov_so4"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["nonzero_entries"].as_array().unwrap().len(), 0);
}

#[test]
fn hamiltonize_recovers_energy() {
    let out = pcx(&["hamiltonize", "--scenario", "oscillator_1d"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["K"], "1/2*q1^2 + 1/2*p1^2");

    let dir = TempDir::new().unwrap();
    // Dilation is not Hamiltonian for the standard structure.
    let f = write(&dir, "x.json", r#"["q1", "p1"]"#);
    let out = pcx(&["hamiltonize", "--scenario", "oscillator_1d", "--field", s(&f)]);
    assert_eq!(out.status.code(), Some(1));
    assert_eq!(json(&out)["status"], "infeasible");
}

#[test]
fn whittaker_theta_file() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "theta.json", r#"["-1*p1 + q2", "q2", "q1 + p2", "p2"]"#);
    let out = pcx(&["whittaker", "--scenario", "harmonic_oscillator_2d", "--theta", s(&f)]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["absolute"], true);
    let k = v["K"].as_str().unwrap();
    assert!(k.contains("q1*p2") || k.contains("p2*q1"), "{k}");
}

#[test]
fn symmetry_and_master_generator() {
    let dir = TempDir::new().unwrap();
    let f = write(&dir, "xi.json", r#"["q1", "0", "0", "0"]"#);
    let out = pcx(&[
        "symmetry",
        "--scenario",
        "free_particle",
        "--xi",
        s(&f),
        "--max-degree",
        "4",
    ]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json(&out)["degree"], 1);

    let out = pcx(&["master-gen", "--scenario", "free_particle", "--T", "q1^2", "--m", "4"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["constants_degree"], 2);
    assert_eq!(v["hamiltonian_degree"], 2);
}

#[test]
fn integrate_report_and_csv() {
    let out = pcx(&[
        "integrate",
        "--scenario",
        "euler_so3",
        "--x0",
        "1,0.5,-0.25",
        "--t-end",
        "5",
        "--step",
        "0.001",
        "--tolerance",
        "1e-9",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    assert_eq!(v["steps"], 5000);
    assert!(v["max_drift"].as_f64().unwrap() < 1e-9);
    let names: Vec<&str> = v["drift"]
        .as_array()
        .unwrap()
        .iter()
        .map(|e| e["name"].as_str().unwrap())
        .collect();
    assert_eq!(names, ["H", "C"]);

    let out = pcx(&[
        "integrate",
        "--scenario",
        "oscillator_1d",
        "--x0",
        "1,0",
        "--t-end",
        "1",
        "--step",
        "0.5",
        "--csv",
        "-",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "t,q1,p1");
    assert_eq!(lines.len(), 4);

    // Momenta of a free particle are linear in time under RK4, so exact.
    let out = pcx(&[
        "integrate",
        "--scenario",
        "free_particle",
        "--x0",
        "0,0,1,0",
        "--t-end",
        "1",
        "--step",
        "0.1",
        "--invariants",
        "P1,P2",
        "--tolerance",
        "0",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let out = pcx(&[
        "integrate",
        "--scenario",
        "free_particle",
        "--x0",
        "0,0,1,0",
        "--t-end",
        "1",
        "--step",
        "0.1",
        "--invariants",
        "nope",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn output_is_deterministic() {
    let a = pcx(&["scenario", "run", "--all"]);
    let b = pcx(&["scenario", "run", "--all"]);
    assert_eq!(a.stdout, b.stdout);
    let pretty = pcx(&["--format", "pretty", "scenario", "run", "euler_so3"]);
    assert!(String::from_utf8_lossy(&pretty.stdout).contains("\n  \"outcomes\""));
}
