use std::process::{Command, Output};

use gammakit::exactalg::{c, parse_poly, v, MultiPoly, Var};
use gammakit::families::{family, Family, FamilySpec};
use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gammakit"))
        .args(args)
        .env_remove("GAMMAKIT_MAX_ELEMENTS")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = run(args);
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    String::from_utf8(out.stdout).unwrap()
}

fn code(args: &[&str]) -> i32 {
    run(args).status.code().unwrap()
}

fn table_json(name: &str, max_n: usize) -> Value {
    serde_json::from_str(&stdout(&["table", "--table", name, "--max-n", &max_n.to_string()])).unwrap()
}

fn entry(doc: &Value, n: u64, i: u64, j: Option<u64>) -> Option<&str> {
    doc["entries"].as_array().unwrap().iter().find_map(|e| {
        (e["n"] == n && e["i"] == i && e["j"].as_u64() == j).then(|| e["value"].as_str().unwrap())
    })
}

#[test]
fn poly_examples() {
    assert_eq!(stdout(&["poly", "--family", "A_xys", "--n", "2"]), "s + y\n");
    assert_eq!(stdout(&["poly", "--family", "dB_xq", "--n", "1"]), "q\n");
    assert_eq!(stdout(&["poly", "--family", "Phi", "--n", "0"]), "0\n");
}

#[test]
fn poly_oracle_agrees() {
    let fast = stdout(&["poly", "--family", "d_nr", "--r", "2", "--n", "4"]);
    let slow = stdout(&["poly", "--family", "d_nr", "--r", "2", "--n", "4", "--oracle"]);
    assert_eq!(fast, slow);
}

#[test]
fn usage_errors_exit_2() {
    assert_eq!(code(&["poly", "--family", "nope", "--n", "1"]), 2);
    assert_eq!(code(&["poly", "--family", "d_nr", "--n", "1"]), 2);
    assert_eq!(code(&["table", "--table", "nope", "--max-n", "1"]), 2);
    assert_eq!(code(&["verify", "--suite", "nope"]), 2);
    assert_eq!(code(&["verify", "--max-n", "-1"]), 2);
    assert_eq!(code(&["--threads", "0", "list"]), 2);
}

#[test]
fn bounds_exit_3() {
    assert_eq!(code(&["poly", "--family", "B_x", "--n", "8", "--oracle"]), 3);
    assert_eq!(code(&["table", "--table", "W", "--max-n", "10"]), 3);
    let capped = Command::new(env!("CARGO_BIN_EXE_gammakit"))
        .args(["verify", "--suite", "identities", "--max-n", "5"])
        .env("GAMMAKIT_MAX_ELEMENTS", "100")
        .output()
        .unwrap();
    assert_eq!(capped.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&capped.stdout).contains("SKIP"));
}

#[test]
fn bound_override_lifts_rank_limit() {
    let out = stdout(&["--bound-override", "table", "--table", "S", "--max-n", "10", "--format", "csv"]);
    assert!(out.lines().any(|l| l.starts_with("10,")));
}

#[test]
fn gamma_tables() {
    let g = table_json("gamma", 3);
    assert_eq!(g["schema_version"], "1");
    assert_eq!(g["name"], "gamma");
    assert_eq!(entry(&g, 2, 0, Some(1)), Some("1"));
    let b = table_json("b_of_p", 2);
    assert_eq!(entry(&b, 1, 1, Some(0)), Some("p"));
}

#[test]
fn peak_triangle_expands_eulerian() {
    // 2^(n-1) A_n(x) = sum_i 4^i W(n,i) x^i (1+x)^(n-1-2i) at n = 4.
    let w = table_json("W", 4);
    let x = v(Var::X);
    let one_x = &c(1) + &x;
    let rhs: MultiPoly = (0..=1u32)
        .map(|i| {
            let count: i64 = entry(&w, 4, i as u64, None).unwrap().parse().unwrap();
            &c(count * 4i64.pow(i)) * &(&x.pow(i) * &one_x.pow(3 - 2 * i))
        })
        .sum();
    let a4 = family(&FamilySpec::new(Family::AX), 4).unwrap();
    assert_eq!(a4.scale_int(8), rhs);
}

#[test]
fn csv_layout() {
    let out = stdout(&["table", "--table", "f_minus", "--max-n", "2", "--format", "csv"]);
    let mut lines = out.lines();
    assert_eq!(lines.next(), Some("n,i,j,value"));
    assert!(out.contains("2,0,0,q^2\n"));
    let q = stdout(&["table", "--table", "Q", "--max-n", "2", "--format", "csv"]);
    assert!(q.contains("2,0,,1\n") && q.contains("2,1,,1\n"));
}

#[test]
fn table_values_are_canonical_text() {
    let fp = table_json("f_plus", 3);
    let v = entry(&fp, 3, 0, Some(1)).unwrap();
    assert_eq!(v, parse_poly("1 + 3q + 3q^2").unwrap().to_string());
}

#[test]
fn verify_examples() {
    assert_eq!(code(&["verify", "--suite", "gamma", "--max-n", "6"]), 0);
    assert_eq!(code(&["verify", "--suite", "identities", "--max-n", "1"]), 0);
    let bij = stdout(&["verify", "--suite", "bijection", "--max-n", "6"]);
    assert!(bij.contains("instances checked"));
    assert!(!bij.contains("FAIL"));
}

#[test]
fn verify_json_report() {
    let doc: Value = serde_json::from_str(&stdout(&["verify", "--suite", "grammar", "--max-n", "3", "--json"])).unwrap();
    assert_eq!(doc["schema_version"], "1");
    assert_eq!(doc["suite"], "grammar");
    let results = doc["results"].as_array().unwrap();
    assert!(!results.is_empty());
    assert!(results.iter().all(|r| r["status"] == "pass" && r["suite"] == "grammar"));
}

#[test]
fn list_names_everything() {
    let out = stdout(&["list"]);
    for name in ["A_xys", "f_minus", "Pstar", "identities:oracle:d_nr", "bijection:derangement_maps:phi3"] {
        assert!(out.contains(name), "{name}");
    }
}
