use std::process::{Command, Output};

fn eulerian(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_eulerian"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = eulerian(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

#[test]
fn two_point_csv() {
    assert_eq!(
        stdout(&["two-point", "--k", "3", "--order", "5"]),
        "n,coefficient\n1,0\n2,1\n3,8\n4,55\n5,368\n"
    );
}

#[test]
fn series_routes_agree() {
    let args = |route| {
        [
            "series", "--kind", "r", "--k", "4", "--order", "9", "--route", route,
        ]
    };
    let classical = stdout(&args("classical"));
    assert_eq!(classical, stdout(&args("kernel")));
    assert_eq!(classical, stdout(&args("closed")));
}

#[test]
fn h4_json() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "series", "--kind", "h4", "--order", "6", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(v["variable"], "G");
    assert_eq!(
        v["coefficients"],
        serde_json::json!(["0", "1", "0", "1", "3", "9", "31"])
    );
}

#[test]
fn hull_dist_rescaled_columns() {
    let text = stdout(&["hull-dist", "--d", "4", "--pmax", "3", "--rescaled"]);
    let mut lines = text.lines();
    assert_eq!(
        lines.next(),
        Some("p,probability,exact,L,scaled_density,limit_density")
    );
    assert_eq!(lines.count(), 3);
}

#[test]
fn finite_k_distribution_sums_below_one() {
    let v: serde_json::Value = serde_json::from_str(&stdout(&[
        "hull-dist",
        "--d",
        "3",
        "--k",
        "6",
        "--pmax",
        "30",
        "--format",
        "json",
    ]))
    .unwrap();
    let mass = v["mass"].as_f64().unwrap();
    assert!(mass < 1.0 && mass > 0.99, "{mass}");
}

#[test]
fn hull_mean_exact_values() {
    let text = stdout(&["hull-mean", "--d", "2,3"]);
    assert!(text.contains(",105/32\n"), "{text}");
    let at_one = stdout(&["hull-mean", "--d", "3", "--k", "5", "--alpha", "1"]);
    assert_eq!(at_one, "d,k,value,exact\n3,5,1,\n");
}

#[test]
fn scaling_density_grid() {
    let text = stdout(&[
        "scaling", "--law", "density", "--l-max", "1", "--points", "3",
    ]);
    assert_eq!(text.lines().count(), 4);
    assert!(text.starts_with("L,density\n0,"));
}

#[test]
fn enumerate_counts() {
    let v: serde_json::Value =
        serde_json::from_str(&stdout(&["enumerate", "--faces", "3", "--format", "json"])).unwrap();
    assert_eq!(v["count"], 12);
    assert_eq!(v["maps"].as_array().unwrap().len(), 12);
}

#[test]
fn verify_passes_and_writes_file() {
    let dir = std::env::temp_dir().join(format!("eulerian-verify-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("ledger.json");
    let out = eulerian(&[
        "verify",
        "--suite",
        "closed-form,oracle",
        "--orders",
        "4",
        "--format",
        "json",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let v: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["status"] == "pass"));
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn usage_errors_exit_two() {
    assert_eq!(eulerian(&["two-point", "--k", "0"]).status.code(), Some(2));
    assert_eq!(
        eulerian(&["hull-mean", "--d", "7", "--k", "5"])
            .status
            .code(),
        Some(2)
    );
    assert_eq!(eulerian(&["bogus"]).status.code(), Some(2));
}
