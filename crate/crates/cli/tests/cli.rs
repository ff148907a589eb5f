use std::path::Path;
use std::process::{Command, Output};

use toeplitz_cli::SpectrumReport;
use toeplitz_core::spectral::eigenvalue_sequence;
use toeplitz_core::{EigenvalueSequence, Orders, TruncatedOperator, Weight};

fn toeplitz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_toeplitz"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    let mut r = csv::Reader::from_reader(text.as_bytes());
    r.records()
        .map(|rec| rec.unwrap().iter().map(String::from).collect())
        .collect()
}

fn close(got: &str, want: f64) -> bool {
    (got.parse::<f64>().unwrap() - want).abs() < 1e-12
}

#[test]
fn eigens_radial_square_rows() {
    let o = toeplitz(&[
        "eigens",
        "--symbol",
        "radial:pow(2)",
        "--n",
        "1",
        "--alpha",
        "0",
        "--max-degree",
        "2",
    ]);
    assert!(o.status.success(), "{o:?}");
    let text = stdout(&o);
    assert!(text.starts_with("degree,value,multiplicity\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 3);
    for (row, want) in rows.iter().zip([0.5, 2.0 / 3.0, 0.75]) {
        assert!(close(&row[1], want), "{row:?}");
        assert_eq!(row[2], "1");
    }
}

#[test]
fn eigens_constant_is_one_everywhere() {
    let o = toeplitz(&[
        "eigens",
        "--symbol",
        "seprad:const(1)*const(1)*const(1)",
        "--n",
        "3",
        "--max-degree",
        "3",
        "--alpha",
        "1.5",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("m1,m2,m3,degree,value\n"));
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 20);
    assert!(rows.iter().all(|r| close(&r[4], 1.0)));
}

#[test]
fn eigens_first_axis_square_at_origin() {
    let o = toeplitz(&[
        "eigens",
        "--symbol",
        "seprad:pow(2)*const(1)",
        "--n",
        "2",
        "--max-degree",
        "3",
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    assert_eq!(&rows[0][..3], ["0", "0", "0"]);
    assert!(close(&rows[0][3], 1.0 / 3.0));
    // m = (2,1): (m1 + 1) / (n + |m| + α + 1) = 3/6
    let row = rows.iter().find(|r| r[0] == "2" && r[1] == "1").unwrap();
    assert!(close(&row[3], 0.5));
}

#[test]
fn json_round_trips_bit_exactly() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("seq.json");
    let o = toeplitz(&[
        "eigens",
        "--symbol",
        "radial:step(0.7,1,0)",
        "--n",
        "2",
        "--alpha",
        "-0.5",
        "--max-degree",
        "5",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(o.status.success());
    assert!(o.stdout.is_empty());
    let back: EigenvalueSequence =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    let a = toeplitz_cli::parse_symbol("radial:step(0.7,1,0)").unwrap();
    let direct = eigenvalue_sequence(
        &a,
        &Weight::new(-0.5, 2).unwrap(),
        5,
        &Orders {
            angular: Some(14),
            ..Orders::default()
        },
    )
    .unwrap();
    assert_eq!(back, direct);
}

#[test]
fn csv_values_round_trip() {
    let o = toeplitz(&[
        "eigens",
        "--symbol",
        "radial:poly(1,-0.5,0.25)",
        "--n",
        "3",
        "--alpha",
        "2.5",
        "--max-degree",
        "4",
    ]);
    let a = toeplitz_cli::parse_symbol("radial:poly(1,-0.5,0.25)").unwrap();
    let direct =
        eigenvalue_sequence(&a, &Weight::new(2.5, 3).unwrap(), 4, &Orders::default()).unwrap();
    let per = direct.per_degree.unwrap();
    for (k, row) in csv_rows(&stdout(&o)).iter().enumerate() {
        assert_eq!(row[1].parse::<f64>().unwrap().to_bits(), per[k].to_bits());
    }
}

#[test]
fn outputs_are_byte_identical_across_runs() {
    let dir = tempfile::tempdir().unwrap();
    let run = |name: &str| {
        let p = dir.path().join(name);
        let o = toeplitz(&[
            "matrix",
            "--symbol",
            "seprad:step(0.6,1,0)*pow(1.5)",
            "--n",
            "2",
            "--max-degree",
            "3",
            "--method",
            "oracle",
            "--format",
            "json",
            "--out",
            p.to_str().unwrap(),
        ]);
        assert!(o.status.success(), "{o:?}");
        std::fs::read(p).unwrap()
    };
    assert_eq!(run("a.json"), run("b.json"));
}

#[test]
fn matrix_identity_and_layout() {
    let o = toeplitz(&[
        "matrix",
        "--symbol",
        "radial:const(1)",
        "--n",
        "2",
        "--max-degree",
        "1",
    ]);
    assert!(o.status.success());
    let text = stdout(&o);
    assert!(text.starts_with("row,m1,m2,degree,c0,c1,c2\n"));
    let rows = csv_rows(&text);
    let labels: Vec<&[String]> = rows.iter().map(|r| &r[..4]).collect();
    assert_eq!(
        labels,
        [
            ["0", "0", "0", "0"],
            ["1", "1", "0", "1"],
            ["2", "0", "1", "1"]
        ]
    );
    for (i, row) in rows.iter().enumerate() {
        for j in 0..3 {
            assert!(
                close(&row[4 + j], if i == j { 1.0 } else { 0.0 }),
                "{row:?}"
            );
        }
    }
}

#[test]
fn oracle_matrix_matches_diagonal_and_blocks() {
    let o = toeplitz(&[
        "matrix",
        "--symbol",
        "radial:pow(2)",
        "--n",
        "2",
        "--max-degree",
        "4",
        "--method",
        "oracle",
        "--format",
        "json",
    ]);
    assert!(o.status.success());
    let stderr = String::from_utf8(o.stderr.clone()).unwrap();
    assert!(stderr.contains("max |oracle - diagonal|"), "{stderr}");
    let op: TruncatedOperator = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(op.dim(), 15);
    assert!(op.max_offdiag_where(|a, b| a.degree() != b.degree()) <= 1e-8);
    assert!(op.max_offdiag() <= 1e-8);
}

#[test]
fn spectrum_rows_and_multiplicities() {
    let o = toeplitz(&[
        "spectrum",
        "--symbol",
        "radial:const(1)",
        "--n",
        "2",
        "--max-degree",
        "2",
    ]);
    assert!(o.status.success());
    let rows = csv_rows(&stdout(&o));
    let got: Vec<(String, String)> = rows.iter().map(|r| (r[0].clone(), r[2].clone())).collect();
    assert_eq!(
        got,
        [("0", "1"), ("1", "2"), ("2", "3")].map(|(a, b)| (a.into(), b.into()))
    );
    assert!(rows.iter().all(|r| close(&r[1], 1.0)));

    let o = toeplitz(&[
        "spectrum",
        "--symbol",
        "radial:pow(2)",
        "--n",
        "3",
        "--max-degree",
        "3",
        "--format",
        "json",
    ]);
    let report: SpectrumReport = serde_json::from_slice(&o.stdout).unwrap();
    assert_eq!(report.entries[2].multiplicity, 6);

    let o = toeplitz(&[
        "spectrum",
        "--symbol",
        "radial:pow(2)",
        "--n",
        "1",
        "--max-degree",
        "5",
    ]);
    assert!(csv_rows(&stdout(&o)).iter().all(|r| r[2] == "1"));
}

#[test]
fn spectrum_rejects_separately_radial_symbol() {
    let o = toeplitz(&["spectrum", "--symbol", "seprad:pow(2)*const(1)", "--n", "2"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(o.stdout.is_empty());
}

#[test]
fn usage_errors_exit_two_with_diagnostics() {
    let o = toeplitz(&["eigens", "--symbol", "radial:pow(2"]);
    assert_eq!(o.status.code(), Some(2));
    let diag: serde_json::Value = serde_json::from_slice(&o.stderr).unwrap();
    assert_eq!(diag["error"], "parse");
    assert!(diag["message"].as_str().unwrap().contains("position 12"));

    for args in [
        &["eigens", "--symbol", "seprad:pow(2)", "--n", "2"][..],
        &["eigens", "--symbol", "radial:pow(2)", "--alpha", "-1"],
        &["eigens", "--symbol", "radial:pow(2)", "--simplex-N", "0"],
        &["eigens", "--symbol", "radial:pow(2)", "--format", "xml"],
        &["verify", "--mc-samples", "10"],
    ] {
        assert_eq!(toeplitz(args).status.code(), Some(2), "{args:?}");
    }
}

fn verify_report(args: &[&str]) -> (Option<i32>, serde_json::Value) {
    let mut all = vec!["verify", "--format", "json"];
    all.extend_from_slice(args);
    let o = toeplitz(&all);
    (o.status.code(), serde_json::from_slice(&o.stdout).unwrap())
}

fn failed_checks(report: &serde_json::Value) -> Vec<String> {
    report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect()
}

#[test]
fn verify_default_config_passes() {
    let (code, report) = verify_report(&[]);
    assert_eq!(failed_checks(&report), Vec::<String>::new());
    assert_eq!(code, Some(0));
    assert_eq!(report["passed"], true);
    assert!(report["checks"].as_array().unwrap().len() >= 20);
}

#[test]
fn verify_singular_weight_passes() {
    let (code, report) = verify_report(&["--alpha", "-0.5"]);
    assert_eq!(failed_checks(&report), Vec::<String>::new());
    assert_eq!(code, Some(0));
}

#[test]
fn verify_with_symbol_adds_checks() {
    let (code, report) = verify_report(&[
        "--n",
        "3",
        "--max-degree",
        "3",
        "--symbol",
        "radial:step(0.5,1,-1)",
    ]);
    assert_eq!(code, Some(0), "{:?}", failed_checks(&report));
    let names: Vec<&str> = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"symbol_radial_constancy"));
    assert!(names.contains(&"symbol_off_diagonal"));
}

#[test]
fn verify_tiny_radial_order_fails_convergence() {
    let (code, report) = verify_report(&["--radial-N", "2"]);
    assert_eq!(code, Some(1));
    assert!(failed_checks(&report).contains(&"radial_refinement".to_string()));
    let check = report["checks"]
        .as_array()
        .unwrap()
        .iter()
        .find(|c| c["name"] == "radial_refinement")
        .unwrap();
    assert!(check["residual"].as_f64().unwrap() > 1e-10);
    assert!(check["detail"].as_str().unwrap().contains("N=2"));
}

#[test]
fn verify_csv_lists_every_check() {
    let dir = tempfile::tempdir().unwrap();
    let p = dir.path().join("report.csv");
    let o = toeplitz(&["verify", "--n", "1", "--out", p.to_str().unwrap()]);
    assert!(o.status.success());
    let text = std::fs::read_to_string(Path::new(&p)).unwrap();
    let rows = csv_rows(&text);
    assert!(text.starts_with("check,passed,residual,limit,detail\n"));
    assert!(rows.iter().all(|r| r[1] == "true"));
}
