use cellfill_cli::run;
use serde_json::Value;
use std::path::PathBuf;
use std::process::Command;

fn data(name: &str) -> String {
    let p: PathBuf = [env!("CARGO_MANIFEST_DIR"), "..", "..", "data", name]
        .iter()
        .collect();
    p.to_string_lossy().into_owned()
}

fn json(args: &[&str]) -> (i32, Value) {
    let argv: Vec<&str> = std::iter::once("cellfill")
        .chain(args.iter().copied())
        .collect();
    let (code, out) = run(argv);
    (code, serde_json::from_str(&out).unwrap_or(Value::Null))
}

#[test]
fn rho_on_rp2_both_rings() {
    let (code, v) = json(&["rho", "--complex", &data("rp2.cx"), "--ring", "both"]);
    assert_eq!(code, 0);
    assert_eq!(v["rho_real"], "2");
    assert_eq!(v["rho_integer"], "2");
}

#[test]
fn non_boundary_is_a_domain_error() {
    let (code, v) = json(&[
        "fill",
        "--complex",
        &data("rp2.cx"),
        "--target",
        r#"{"degree":1,"coeffs":{"a":1}}"#,
        "--ring",
        "int",
    ]);
    assert_eq!(code, 1);
    assert_eq!(v["error"]["code"], "NOT_A_BOUNDARY");
    let (code, v) = json(&[
        "fill",
        "--complex",
        &data("rp2.cx"),
        "--target",
        r#"{"degree":1,"coeffs":{"a":1}}"#,
        "--ring",
        "real",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["value"], "1/2");
}

#[test]
fn malformed_invocations_exit_2() {
    assert_eq!(json(&["frobnicate"]).0, 2);
    assert_eq!(json(&["rho"]).0, 2);
    let (code, v) = json(&["rho", "--complex", &data("rp2.cx"), "--dim-cap", "0"]);
    assert_eq!(code, 2);
    assert_eq!(v["error"]["code"], "USAGE_ERROR");
}

#[test]
fn missing_and_malformed_inputs() {
    let (code, v) = json(&["homology", "--complex", "/nonexistent/x.cx"]);
    assert_eq!((code, v["error"]["code"].as_str()), (1, Some("IO_ERROR")));
    let (code, v) = json(&["pdcheck", "--tri", &data("rp2.cx")]);
    assert_eq!(
        (code, v["error"]["code"].as_str()),
        (1, Some("MALFORMED_SYNTAX"))
    );
}

#[test]
fn out_flag_writes_the_report() {
    let dir = std::env::temp_dir().join(format!("cellfill-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out = dir.join("h.json");
    let (code, stdout) = run([
        "cellfill",
        "homology",
        "--complex",
        &data("torus.cx"),
        "--out",
        out.to_str().unwrap(),
    ]);
    assert_eq!((code, stdout.as_str()), (0, ""));
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&out).unwrap()).unwrap();
    assert_eq!(v["homology"][1]["betti"], 2);
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn homology_reads_triangulations_and_presentations() {
    let (_, v) = json(&["homology", "--complex", &data("t3.tri")]);
    let b: Vec<u64> = (0..4)
        .map(|i| v["homology"][i]["betti"].as_u64().unwrap())
        .collect();
    assert_eq!(b, [1, 3, 3, 1]);
    let (_, v) = json(&["homology", "--complex", &data("genus2.pres")]);
    assert_eq!(v["chi"], -2);
}

#[test]
fn cap_profile_from_environment() {
    let bin = env!("CARGO_BIN_EXE_cellfill");
    let out = Command::new(bin)
        .args(["systole", "--complex", &data("grid9.cx")])
        .env("CELLFILL_CAPS", r#"{"loop_cap": 9}"#)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["length"], 9);
    let out = Command::new(bin)
        .args(["systole", "--complex", &data("grid9.cx")])
        .env("CELLFILL_CAPS", "nonsense")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn pdcheck_reports_injected_fault() {
    let (code, v) = json(&[
        "pdcheck",
        "--tri",
        &data("s3.tri"),
        "--flip",
        "2:0",
        "--samples",
        "5",
    ]);
    assert_eq!(code, 0);
    assert_eq!(v["squares_commute"], false);
    assert!(v["first_failure"]["degree"].is_u64());
}
