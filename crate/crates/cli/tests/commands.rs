use std::io::{Cursor, Write};
use std::process::{Command, Stdio};

use monolat_cli::{run_command, Outcome};
use serde_json::{json, Value};

fn run(args: &[&str], stdin: &str) -> Outcome {
    let argv: Vec<String> = std::iter::once("monolat").chain(args.iter().copied()).map(String::from).collect();
    run_command(&argv, &mut Cursor::new(stdin.as_bytes().to_vec()))
}

fn result(o: &Outcome) -> Value {
    let v: Value = serde_json::from_str(&o.stdout).expect("stdout is JSON");
    v["result"].clone()
}

fn temp_file(name: &str, contents: &str) -> String {
    let dir = std::env::temp_dir().join(format!("monolat-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    std::fs::write(&path, contents).unwrap();
    path.display().to_string()
}

#[test]
fn witness_pipeline_through_binary() {
    let exe = env!("CARGO_BIN_EXE_monolat");
    let build = Command::new(exe).args(["build", "witness"]).output().unwrap();
    assert!(build.status.success());
    let mut certify =
        Command::new(exe).args(["certify", "-"]).stdin(Stdio::piped()).stdout(Stdio::piped()).spawn().unwrap();
    certify.stdin.take().unwrap().write_all(&build.stdout).unwrap();
    let out = certify.wait_with_output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    let r = &v["result"];
    assert_eq!(r["generates"], json!(true));
    assert_eq!(r["single_orbit"], json!("connected"));
    assert!(r["witness"].is_object());
    assert_eq!(r["exhausted"], json!(true));
    assert_eq!(r["all_checks_pass"], json!(true));
}

#[test]
fn sp_gen_report() {
    let o = run(&["sp-gen", "--q", "1", "--p", "2"], "");
    assert_eq!(o.exit_code, 0);
    let r = result(&o);
    assert_eq!(r["order"], json!(6));
    assert_eq!(r["expected"], json!(6));
    assert_eq!(r["match"], json!(true));
    assert_eq!(result(&run(&["sp-gen", "--q", "1", "--p", "3"], ""))["order"], json!(24));
}

#[test]
fn e8_certificate_has_no_witness() {
    let e8 = run(&["build", "e8"], "");
    let o = run(&["certify", "-"], &e8.stdout);
    assert_eq!(o.exit_code, 0);
    let r = result(&o);
    assert_eq!(r["generates"], json!(true));
    assert_eq!(r["single_orbit"], json!("connected"));
    assert_eq!(r["witness"], Value::Null);
}

#[test]
fn certify_reads_plain_lattice_files() {
    let text = "lattice v1\nrank 2\ngram\n-2 1\n1 -2\nvec a 1 0\nvec b 0 1\n";
    let r = result(&run(&["certify", "-"], text));
    assert_eq!(r["orbit_size"], json!(6));
    assert_eq!(r["span"], json!({ "rank": 2, "index": 1 }));
}

#[test]
fn marked_f_is_not_a_seed() {
    let text = "lattice v1\nrank 2\ngram\n-2 0\n0 0\nvec d 1 0\nvec f 0 1\n";
    let r = result(&run(&["certify", "-"], text));
    assert_eq!(r["seed_count"], json!(1));
    assert_eq!(r["generates"], json!(false));
    assert_eq!(r["span"]["index"], Value::Null);
}

#[test]
fn build_reports() {
    let r = result(&run(&["build", "annulus", "--g", "2"], ""));
    assert_eq!(r["s_plus_dot_s_minus"], json!(2));
    assert_eq!(r["sum_square"], json!(0));
    let r = result(&run(&["build", "milnorJ", "--chi", "1"], ""));
    assert_eq!(r["lattice"]["signature"], json!({ "positive": 0, "zero": 2, "negative": 8 }));
    assert_eq!(r["signature_match"], json!(true));
    assert_eq!(r["quotient"]["determinant"], json!(1));
    let r = result(&run(&["build", "diagonal", "-2", "0", "0", "0"], ""));
    assert_eq!(r["lattice"]["gram"][0], json!([-2, 0, 0, 0]));
    let r = result(&run(&["build", "witness"], ""));
    assert_eq!(r["matches_diagram"], json!(true));
    assert_eq!(r["vectors"].as_array().unwrap().len(), 14);
}

#[test]
fn spinor_of_minus_identity() {
    let lattice = temp_file("u_m2.txt", "lattice v1\nrank 3\ngram\n0 1 0\n1 0 0\n0 0 -2\n");
    let neg = temp_file("neg.txt", "matrix v1\nrank 3\nrows\n-1 0 0\n0 -1 0\n0 0 -1\n");
    let r = result(&run(&["spinor", &lattice, "--matrix", &neg], ""));
    assert_eq!(r["spinor_norm"], json!("-1"));
    assert_eq!(r["in_o_prime"], json!(false));
    assert_eq!(r["in_o_prime_f"], Value::Null);

    let with_f = temp_file("u_m2_f.txt", "lattice v1\nrank 3\ngram\n0 1 0\n1 0 0\n0 0 -2\nvec f 1 0 0\n");
    let flip = temp_file("flip.txt", "matrix v1\nrank 3\nrows\n1 0 0\n0 1 0\n0 0 -1\n");
    let r = result(&run(&["spinor", &with_f, "--matrix", &flip], ""));
    assert_eq!(r["spinor_norm"], json!("+1"));
    assert_eq!(r["fixes_f"], json!(true));
    assert_eq!(r["in_o_prime_f"], json!(true));
    assert_eq!(r["factorization"]["length"], json!(1));
    assert_eq!(r["factorization"]["positive_count"], json!(0));
}

#[test]
fn jscan_writes_csv() {
    let csv = temp_file("scan.csv", "");
    let o = run(&["jscan", "--chi", "1", "--radius", "0.1", "--samples", "25", "--seed", "1", "--csv", &csv], "");
    assert_eq!(o.exit_code, 0);
    let r = result(&o);
    assert_eq!(r["degree"], json!(12));
    assert_eq!(r["residuals_below_tol"], json!(true));
    let min: f64 = r["min_nonzero_modulus"].as_str().unwrap().parse().unwrap();
    assert!(min > 0.5);
    let text = std::fs::read_to_string(&csv).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines[0], "lambda_re,lambda_im,u_re,u_im,min_modulus,max_bounded_modulus,pole_flag");
    assert_eq!(lines.len(), 26);
}

#[test]
fn exit_codes() {
    assert_eq!(run(&["certify", "/nonexistent/lattice"], "").exit_code, 2);
    let asym = run(&["certify", "-"], "lattice v1\nrank 2\ngram\n0 1\n2 0\nvec a 1 0\n");
    assert_eq!(asym.exit_code, 2);
    assert_eq!(result(&asym)["error"]["kind"], json!("NotSymmetric"));
    let not_root = run(&["certify", "-"], "lattice v1\nrank 1\ngram\n-4\nvec a 1\n");
    assert_eq!(not_root.exit_code, 2);
    assert_eq!(run(&["certify", "-"], "lattice v1\nrank 1\ngram\n-2\n").exit_code, 2);
    assert_eq!(run(&["sp-gen", "--q", "1", "--p", "4"], "").exit_code, 2);
    assert_eq!(run(&["sp-gen", "--q", "2", "--p", "2", "--limit", "10"], "").exit_code, 3);
    assert_eq!(run(&["jscan", "--chi", "0", "--radius", "0.1", "--samples", "5", "--seed", "1"], "").exit_code, 2);
    assert_eq!(run(&["bogus"], "").exit_code, 2);
    assert_eq!(run(&["--help"], "").exit_code, 0);

    let witness = run(&["build", "witness"], "").stdout;
    let o = run(&["certify", "-", "--height", "2", "--max-size", "300"], &witness);
    assert_eq!(o.exit_code, 3);
    assert_eq!(result(&o)["exhausted"], json!(false));
}

#[test]
fn parse_errors_carry_line_numbers() {
    let o = run(&["certify", "-"], "lattice v1\nrank 2\ngram\n0 1\n1\n");
    assert_eq!(o.exit_code, 2);
    let msg = result(&o)["error"]["message"].as_str().unwrap().to_string();
    assert!(msg.contains("line 5"), "{msg}");
}
