use std::process::{Command, Output};

fn mrd3(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_mrd3"))
        .args(args)
        .output()
        .expect("spawn mrd3")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).expect("utf-8")
}

#[test]
fn census_q2_json() {
    let o = mrd3(&["census", "--q", "2", "--format", "json", "--no-timings"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["q"], 2);
    assert_eq!(v["counts"]["t_hat"], "192");
    assert_eq!(v["counts"]["t_total"], "788035");
    assert_eq!(v["proportion"]["num"], "192");
    assert_eq!(v["proportion"]["den"], "788035");
    assert_eq!(v["classes"]["field"], "2");
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true && c["millis"] == 0));
}

#[test]
fn output_is_deterministic_across_worker_counts() {
    let args = |w: &'static str| {
        [
            "--workers",
            w,
            "census",
            "--q",
            "2,3",
            "--format",
            "json",
            "--no-timings",
        ]
    };
    let a = mrd3(&args("1"));
    let b = mrd3(&args("3"));
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let e1 = mrd3(&["--workers", "1", "enumerate", "--q", "3", "--format", "csv"]);
    let e2 = mrd3(&[
        "--workers",
        "2",
        "enumerate",
        "--q",
        "3",
        "--format",
        "csv",
        "--mode",
        "brute",
    ]);
    assert_eq!(e1.stdout, e2.stdout);
}

#[test]
fn formula_matches_census() {
    let c = mrd3(&["census", "--q", "3", "--format", "json", "--no-timings"]);
    let f = mrd3(&["formula", "--q", "3", "--format", "json", "--no-timings"]);
    let c: serde_json::Value = serde_json::from_str(&stdout(&c)).unwrap();
    let f: serde_json::Value = serde_json::from_str(&stdout(&f)).unwrap();
    for key in ["s_formula", "s_prime", "s_dblprime", "t_hat", "t_total"] {
        assert_eq!(c["counts"][key], f["counts"][key], "{key}");
    }
    assert_eq!(c["proportion"], f["proportion"]);
    assert_eq!(c["classes"], f["classes"]);
}

#[test]
fn formula_large_q() {
    let o = mrd3(&["formula", "--q", "4096", "--format", "csv"]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).lines().nth(1).unwrap().starts_with("4096,,,"));
}

#[test]
fn verify_parametrization_q3() {
    let o = mrd3(&["verify", "--suite", "parametrization", "--q", "3"]);
    assert_eq!(o.status.code(), Some(0), "{}", stdout(&o));
    assert!(stdout(&o).contains("[PASS] parametrization.set_equality[q=3]"));
}

#[test]
fn inspect_field_triple() {
    // f = x^3 + x + 1, Z = C_f^2
    let o = mrd3(&[
        "inspect",
        "--q",
        "2",
        "--f",
        "1,1,0",
        "--z",
        "0,0,1;1,1,0;0,1,1",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.contains("MRD: yes"), "{out}");
    assert!(out.contains("class: field"), "{out}");
    assert!(out.contains("self-dual"), "{out}");
}

#[test]
fn inspect_non_mrd() {
    let o = mrd3(&[
        "inspect",
        "--q",
        "3",
        "--f",
        "1,2,0",
        "--z",
        "0,0,0;0,0,0",
        "--format",
        "json",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["mrd"], false);
    assert_eq!(v["class"], serde_json::Value::Null);
}

#[test]
fn enumerate_csv_layout() {
    let o = mrd3(&["enumerate", "--q", "2", "--format", "csv"]);
    let out = stdout(&o);
    let lines: Vec<&str> = out.lines().collect();
    assert!(lines[0].starts_with("# q=2"));
    assert_eq!(lines[2], "a,b,c,z12,z13,z22,z23,z32,z33,class");
    assert_eq!(lines.len(), 5);
    assert!(lines[3..].iter().all(|l| l.ends_with(",field")));
}

#[test]
fn irreducibles_q2() {
    let o = mrd3(&["irreducibles", "--q", "2", "--format", "csv"]);
    let out = stdout(&o);
    assert!(out.contains("x^3 + x + 1,1,1,0"));
    assert!(out.contains("x^3 + x^2 + 1,1,0,1"));
}

#[test]
fn usage_errors_exit_2() {
    for args in [
        vec!["census", "--q", "6"],
        vec!["census", "--q", "128"],
        vec!["verify", "--suite", "nonsense", "--q", "2"],
        vec!["verify", "--suite", "orbits", "--q", "3"],
        vec!["inspect", "--q", "2", "--f", "1,1", "--z", "0,0,1;1,1,0"],
        vec![
            "inspect",
            "--q",
            "2",
            "--f",
            "1,1,0",
            "--z",
            "1,0,0;1,1,0;0,1,1",
        ],
        vec!["census", "--q", "2", "--workers", "0"],
        vec!["census", "--q", "2", "--out", "/nonexistent-dir/x.json"],
    ] {
        assert_eq!(mrd3(&args).status.code(), Some(2), "{args:?}");
    }
}
