use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_hforms"))
        .args(args)
        .env_remove("HFORMS_BUDGET")
        .output()
        .expect("spawn hforms")
}

fn json(args: &[&str]) -> (Value, i32) {
    let out = run(args);
    let v = serde_json::from_slice(&out.stdout)
        .unwrap_or_else(|e| panic!("{args:?}: {e}: {}", String::from_utf8_lossy(&out.stderr)));
    (v, out.status.code().unwrap())
}

#[test]
fn level_of_f29() {
    let (v, code) = json(&["level", "--p", "29", "--d", "4"]);
    assert_eq!(code, 0);
    assert_eq!(v["s"], 3);
    let terms: Vec<u64> = serde_json::from_value(v["witness"].clone()).unwrap();
    assert_eq!(terms.len(), 3);
    assert_eq!(terms.iter().map(|x| x.pow(4)).sum::<u64>() % 29, 28);
}

#[test]
fn udiag_of_f7() {
    let (v, code) = json(&["udiag", "--p", "7", "--d", "6"]);
    assert_eq!(code, 0);
    assert_eq!(v["u_diag"], 6);
}

#[test]
fn padic_verdict_and_invariant() {
    let (v, code) = json(&["padic", "--p", "5", "--d", "4", "--coeffs", "1@0,1@1"]);
    assert_eq!(code, 0);
    assert_eq!(v["isotropic"], false);
    let (v, _) = json(&["padic", "--p", "5", "--d", "4", "--coeffs", "1@0,4@4"]);
    assert_eq!(v["isotropic"], true);
    let (v, _) = json(&["padic", "--p", "5", "--d", "4"]);
    assert_eq!(v["u_diag"], 16);
    let (v, _) = json(&["padic", "--p", "7", "--tower", "2", "--d", "4", "--coeffs", "1@(0,0),3@(1,0)"]);
    assert_eq!(v["isotropic"], false);
}

#[test]
fn wild_case_is_an_input_error() {
    let out = run(&["padic", "--p", "5", "--d", "5", "--coeffs", "1@0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(String::from_utf8_lossy(&out.stderr).contains("divides the degree"));
}

#[test]
fn bad_input_exits_one() {
    for args in [
        &["isotropy", "--p", "7", "--d", "3", "--coeffs", "1,x"][..],
        &["level", "--p", "6", "--d", "2"],
        &["table", "--d", "4", "--q-range", "9..2"],
        &["level", "--p", "7"],
        &["construct", "no-such-recipe", "--p", "3"],
    ] {
        assert_eq!(run(args).status.code(), Some(1), "{args:?}");
    }
}

#[test]
fn budget_exhaustion_exits_two() {
    let poly = "x1^3+x2^3+x3^3+x4^3+x5^3+x6^3+x7^3+x8^3+x9^3+x10^3";
    let (v, code) = json(&["isotropy", "--p", "7", "--poly", poly, "--budget-evals", "100"]);
    assert_eq!(code, 2);
    assert_eq!(v["outcome"], "undecided");
    let out = Command::new(env!("CARGO_BIN_EXE_hforms"))
        .args(["isotropy", "--p", "7", "--poly", poly])
        .env("HFORMS_BUDGET", "100")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));
    // with enough budget the same query is decided
    let (v, code) = json(&["isotropy", "--p", "7", "--poly", "x1^3+x2^3+x3^3+x4^3"]);
    assert_eq!((code, v["isotropic"].clone()), (0, Value::Bool(true)));
}

#[test]
fn table_header_and_cells_match_single_queries() {
    let out = run(&["table", "--d", "4", "--q-range", "2..13", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    let text = String::from_utf8(out.stdout).unwrap();
    let mut lines = text.lines();
    assert_eq!(lines.next(), Some("q,d,gcd,s_d,u_diag,waring,kneser_bound"));
    let qs: Vec<u64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
    // inclusive range, prime powers only
    assert_eq!(qs, vec![2, 3, 4, 5, 7, 8, 9, 11, 13]);

    let (rows, _) = json(&["table", "--d", "3..6", "--q-range", "25..29"]);
    for row in rows.as_array().unwrap() {
        let q = row["q"].as_u64().unwrap();
        let d = row["d"].to_string();
        let (p, f) = match q {
            25 => ("5", "2"),
            27 => ("3", "3"),
            29 => ("29", "1"),
            _ => panic!("q = {q} should not be listed"),
        };
        let (s, _) = json(&["level", "--p", p, "--f", f, "--d", &d]);
        let (u, _) = json(&["udiag", "--p", p, "--f", f, "--d", &d]);
        let (w, _) = json(&["waring", "--p", p, "--f", f, "--d", &d]);
        assert_eq!(row["s_d"], s["s"]);
        assert_eq!(row["u_diag"], u["u_diag"]);
        assert_eq!(row["waring"], w["waring"]);
        assert_eq!(row["kneser_bound"], u["bound_used"]);
    }
}

#[test]
fn table_columns_subset() {
    let out = run(&["table", "--d", "6", "--q-range", "7..7", "--columns", "u_diag,q", "--format", "csv"]);
    assert_eq!(String::from_utf8(out.stdout).unwrap(), "q,u_diag\n7,6\n");
    assert_eq!(run(&["table", "--d", "6", "--q-range", "7", "--columns", "bogus"]).status.code(), Some(1));
}

#[test]
fn bounds_table_lists_tightest() {
    let (v, code) = json(&["bounds", "--p", "5", "--d", "3"]);
    assert_eq!(code, 0);
    let entries = v["entries"].as_array().unwrap();
    let get = |name: &str| entries.iter().find(|e| e["name"] == name).unwrap().clone();
    assert_eq!(get("kneser_no_roots")["value"], 3);
    assert_eq!(get("joly")["value"], 9);
    assert_eq!(get("springer")["value"], 3);
    assert!(v["tightest"].is_string());
}

#[test]
fn constructions_report_certificates() {
    let cases: [&[&str]; 6] = [
        &["construct", "norm-form", "--p", "3", "--d", "3"],
        &["construct", "tensor-lift", "--p", "7", "--d", "6", "--coeffs", "1,1,1,1,1,1"],
        &["construct", "prime-lift", "--p", "2", "--d", "2"],
        &["construct", "compose", "--p", "3", "--poly", "x1^2+x2^2"],
        &["construct", "power", "--p", "3", "--poly", "x1^2+x2^2", "--m", "2"],
        &["construct", "iterated-laurent", "--p", "5", "--d", "4", "--n", "2"],
    ];
    let dims = [3, 36, 4, 4, 2, 16];
    for (args, dim) in cases.iter().zip(dims) {
        let (v, code) = json(args);
        assert_eq!(code, 0, "{args:?}");
        assert_eq!(v["holds"], true, "{args:?}");
        assert_eq!(v["dim"], dim, "{args:?}");
    }
}

#[test]
fn verify_flags_only_the_f25_entry() {
    let (v, code) = json(&["verify"]);
    let entries = v["entries"].as_array().unwrap();
    let mismatches: Vec<&Value> = entries.iter().filter(|e| e["status"] == "mismatch").collect();
    assert_eq!(mismatches.len(), 1);
    assert_eq!(mismatches[0]["description"], "u_diag(4,F_25)");
    assert_eq!(mismatches[0]["computed"], "2");
    // a mismatch makes the run fail
    assert_eq!(code, 1);
    let noted: Vec<&Value> = entries.iter().filter(|e| e["status"] == "discrepancy-noted").collect();
    assert_eq!(noted.len(), 1);
    assert!(noted[0]["note"].is_string());
    assert!(entries.iter().all(|e| e["provenance"].as_str().is_some_and(|s| !s.is_empty())));
    let s8 = entries.iter().find(|e| e["query"] == "level --p 29 --d 8").unwrap();
    assert_eq!(s8["status"], "match");
}

#[test]
fn output_is_deterministic() {
    for args in [
        &["table", "--d", "2..6", "--q-range", "2..32"][..],
        &["isotropy", "--p", "5", "--poly", "x1^3 + 2*x2^3 + x1*x2*x3 + 3*x3^3"],
        &["verify", "--format", "csv"],
    ] {
        let a = run(args).stdout;
        let b = run(args).stdout;
        assert_eq!(a, b, "{args:?}");
    }
}
