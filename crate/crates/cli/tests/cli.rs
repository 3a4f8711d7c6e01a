//! End-to-end tests of the `hg` binary: exit codes, golden CSV headers, file
//! round-trips.

use std::path::Path;
use std::process::{Command, Output};

fn hg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn family_check_roundtrip_matrix() {
    let dir = tempfile::tempdir().unwrap();
    let cases: Vec<(String, Vec<String>)> = vec![
        (
            "dr-03-8",
            vec!["family", "dunkl-ramirez", "--a", "0.3", "--N", "8"],
        ),
        (
            "dr-05-16",
            vec!["family", "dunkl-ramirez", "--a", "0.5", "--N", "16"],
        ),
        ("s3", vec!["family", "conjugacy", "--group", "S3"]),
        ("s4", vec!["family", "conjugacy", "--group", "S4"]),
        ("d4", vec!["family", "conjugacy", "--group", "D4"]),
        ("q8", vec!["family", "conjugacy", "--group", "Q8"]),
        ("z6", vec!["family", "conjugacy", "--group", "Z6"]),
    ]
    .into_iter()
    .map(|(name, args)| {
        (
            name.to_string(),
            args.into_iter().map(String::from).collect(),
        )
    })
    .collect();

    for (name, args) in cases {
        let path = dir.path().join(format!("{name}.json"));
        let mut full: Vec<&str> = args.iter().map(String::as_str).collect();
        full.push("-o");
        let path_str = path.to_str().unwrap();
        full.push(path_str);
        let out = hg(&full);
        assert!(
            out.status.success(),
            "{name}: {}",
            String::from_utf8_lossy(&out.stderr)
        );

        let check = hg(&["check", path_str]);
        assert_eq!(check.status.code(), Some(0), "{name} check failed");
        assert!(stdout(&check).contains("PASS"));
    }
}

#[test]
fn check_rejects_broken_tables_with_exit_1() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.json");
    std::fs::write(
        &path,
        r#"{"name": "bad", "size": 2, "identity": 0, "involution": [0, 1],
           "tensor": [
             {"x": 0, "y": 0, "entries": [{"z": 0, "p": 1.0}]},
             {"x": 0, "y": 1, "entries": [{"z": 1, "p": 1.0}]},
             {"x": 1, "y": 1, "entries": [{"z": 0, "p": 0.9}]}
           ]}"#,
    )
    .unwrap();
    let out = hg(&["check", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL"));

    // Parse errors also exit 1 and name the offending field.
    let mangled = dir.path().join("mangled.json");
    std::fs::write(&mangled, r#"{"name": "x", "size": 2}"#).unwrap();
    let out = hg(&["check", mangled.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("missing field"));
}

#[test]
fn unknown_flags_exit_2() {
    let out = hg(&["check", "--frobnicate", "x.json"]);
    assert_eq!(out.status.code(), Some(2));
    let out = hg(&["amenability"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn dual_csv_schema_and_s3_plancherel() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s3.json");
    let out = hg(&[
        "family",
        "conjugacy",
        "--group",
        "S3",
        "-o",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());

    let out = hg(&["dual", path.to_str().unwrap()]);
    assert!(out.status.success());
    let text = stdout(&out);
    let mut lines = text.lines();
    assert_eq!(
        lines.next().unwrap(),
        "index,plancherel_weight,norm_sq,residual,re:alpha(0),im:alpha(0),re:alpha(1),im:alpha(1),re:alpha(2),im:alpha(2)"
    );
    let mut weights: Vec<f64> = lines
        .map(|line| line.split(',').nth(1).unwrap().parse().unwrap())
        .collect();
    weights.sort_by(|a, b| a.partial_cmp(b).unwrap());
    assert_eq!(weights.len(), 3);
    assert!((weights[0] - 1.0).abs() < 1e-9);
    assert!((weights[1] - 1.0).abs() < 1e-9);
    assert!((weights[2] - 4.0).abs() < 1e-9);
}

#[test]
fn dual_output_is_deterministic() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("dr.json");
    assert!(hg(&[
        "family",
        "dunkl-ramirez",
        "--a",
        "0.4",
        "--N",
        "8",
        "-o",
        path.to_str().unwrap()
    ])
    .status
    .success());
    let a = stdout(&hg(&["dual", path.to_str().unwrap(), "--seed", "42"]));
    let b = stdout(&hg(&["dual", path.to_str().unwrap(), "--seed", "42"]));
    assert_eq!(a, b);
}

#[test]
fn amenability_verdicts() {
    let out = hg(&["amenability", "--family", "chebyshev"]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["verdict"], "Amenable");

    let out = hg(&[
        "amenability",
        "--family",
        "jacobi",
        "--alpha",
        "0",
        "--beta",
        "0",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["verdict"], "NotAmenable");
    assert_eq!(json["witness"]["description"], "h(n)=2n+1");

    let out = hg(&[
        "amenability",
        "--family",
        "dunkl-ramirez",
        "--a",
        "0.4",
        "--horizon",
        "48",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["verdict"], "NotAmenable");

    let out = hg(&[
        "amenability",
        "--family",
        "jacobi",
        "--alpha",
        "0",
        "--beta",
        "0",
        "--at",
        "0.3",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["verdict"], "NotAlphaLeftAmenable");

    let out = hg(&[
        "amenability",
        "--family",
        "dunkl-ramirez-dual",
        "--a",
        "0.4",
    ]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["verdict"], "NotAmenable");
}

#[test]
fn diagonal_csv_schema() {
    let out = hg(&[
        "diagonal",
        "--family",
        "chebyshev",
        "--stages",
        "4,8",
        "--kernel",
        "fejer",
    ]);
    assert!(out.status.success());
    let text = stdout(&out);
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "stage,norm,sup_coeff,pi_Mn_residual");
    assert_eq!(lines.len(), 3);
    assert!(lines[1].starts_with("4,"));
    assert!(lines[2].starts_with("8,"));

    // file mode on a tiny table
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z4.json");
    assert!(hg(&[
        "family",
        "conjugacy",
        "--group",
        "Z4",
        "-o",
        path.to_str().unwrap()
    ])
    .status
    .success());
    let out = hg(&["diagonal", path.to_str().unwrap(), "--stages", "3"]);
    assert!(out.status.success());
    assert!(stdout(&out).lines().count() == 2);
}

#[test]
fn ideals_summary() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("s4.json");
    assert!(hg(&[
        "family",
        "conjugacy",
        "--group",
        "S4",
        "-o",
        path.to_str().unwrap()
    ])
    .status
    .success());
    let out = hg(&["ideals", path.to_str().unwrap(), "--subset", "1,3"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("minimal ideals: 5"), "{text}");
    assert!(text.contains("hull matches subset: true"), "{text}");
}

#[test]
fn jacobi_family_report() {
    let out = hg(&[
        "family", "jacobi", "--alpha", "0", "--beta", "0", "--N", "12",
    ]);
    assert!(out.status.success());
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["family"], "jacobi");
    // Legendre h(1) = 3 by both routes.
    assert!((json["haar_quadrature"][1].as_f64().unwrap() - 3.0).abs() < 1e-9);
    assert!((json["haar_closed_form"][1].as_f64().unwrap() - 3.0).abs() < 1e-12);

    let out = hg(&["family", "chebyshev", "--N", "8"]);
    let json: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(json["family"], "chebyshev");
    assert!(json["haar_closed_form"].is_null());
    assert!((json["haar_quadrature"][3].as_f64().unwrap() - 2.0).abs() < 1e-9);
}

#[test]
fn conjugacy_from_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("z3.csv");
    std::fs::write(&csv, "0,1,2\n1,2,0\n2,0,1\n").unwrap();
    let json = dir.path().join("z3.json");
    let out = hg(&[
        "family",
        "conjugacy",
        "--group-csv",
        csv.to_str().unwrap(),
        "-o",
        json.to_str().unwrap(),
    ]);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    assert!(Path::new(&json).exists());
    assert!(hg(&["check", json.to_str().unwrap()]).status.success());

    // A non-group CSV is rejected with exit 1.
    let bad = dir.path().join("bad.csv");
    std::fs::write(&bad, "0,0\n0,0\n").unwrap();
    let out = hg(&["family", "conjugacy", "--group-csv", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}
