//! Command-line front end for `monolat`.
//!
//! Every subcommand prints one JSON report of the form
//! `{command, inputs, result, budget, version}` on standard output. Numbers
//! in reports are exact integers; floating-point and rational quantities are
//! strings. Exit status is 0 on success, 2 on invalid input and 3 when a
//! search budget ran out before the computation finished.

use std::io::Read;
use std::path::PathBuf;

use clap::{Parser, Subcommand};
use num_bigint::BigInt;
use serde_json::{json, Value};

use monolat::builders::{torus_classes, WITNESS_E8_NODES};
use monolat::format::{parse_lattice_file, parse_matrix_file, serialize_lattice_file, LatticeFile};
use monolat::jfamily::{scan_polydisc, DEFAULT_RESIDUAL_TOL, POLE_TOL};
use monolat::spinor::o_prime_f_report;
use monolat::symplectic::{closure_mod_p_bounded, sp_order, standard_generators, DEFAULT_CLOSURE_LIMIT};
use monolat::{
    annulus_pair, bp_signature, certify_cvl, diagonal_lattice, diagram_paper, e8, matches_diagram, milnor_j,
    standard_symplectic, torus_block, transvection, witness_six, Connectivity, Lattice, LatticeVector, OrbitBudget,
    Signature, SpinorNorm,
};

pub const VERSION: &str = env!("CARGO_PKG_VERSION");

pub const EXIT_OK: u8 = 0;
pub const EXIT_INVALID: u8 = 2;
pub const EXIT_BUDGET: u8 = 3;

#[derive(Debug, Parser)]
#[command(name = "monolat", version, about = "Lattice and monodromy certificates")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Build a named lattice and print it
    Build {
        #[command(subcommand)]
        target: BuildTarget,
    },
    /// Certify a complete vanishing lattice from a lattice file ("-" for stdin)
    Certify {
        file: String,
        #[arg(long, default_value_t = OrbitBudget::default().height_bound)]
        height: u64,
        #[arg(long = "max-size", default_value_t = OrbitBudget::default().max_size)]
        max_size: usize,
    },
    /// Spinor norm and O'_f membership of an isometry
    Spinor {
        file: String,
        #[arg(long)]
        matrix: String,
    },
    /// Order of the transvection group of the standard form mod p
    #[command(name = "sp-gen")]
    SpGen {
        #[arg(long)]
        q: usize,
        #[arg(long)]
        p: u64,
        #[arg(long, default_value_t = DEFAULT_CLOSURE_LIMIT)]
        limit: usize,
    },
    /// Branch-value scan of the j-function family over a polydisc
    Jscan {
        #[arg(long)]
        chi: u32,
        #[arg(long)]
        radius: f64,
        #[arg(long)]
        samples: usize,
        #[arg(long)]
        seed: u64,
        /// Write one CSV row per sample to this path
        #[arg(long)]
        csv: Option<PathBuf>,
    },
}

#[derive(Debug, Subcommand)]
enum BuildTarget {
    /// Diagonal Gram matrix, e.g. `diagonal -2 0 0`
    Diagonal {
        #[arg(required = true, allow_negative_numbers = true, value_delimiter = ',')]
        entries: Vec<i64>,
    },
    E8,
    /// Hyperbolic block U^q
    Torus {
        #[arg(long, default_value_t = 1)]
        q: usize,
    },
    /// ⟨−2⟩ ⊕ 0^{2g+1} with the classes s₊, s₋
    Annulus {
        #[arg(long, default_value_t = 0)]
        g: usize,
    },
    /// Milnor lattice of J_{2χ}
    #[command(name = "milnorJ")]
    MilnorJ {
        #[arg(long, default_value_t = 1)]
        chi: usize,
    },
    /// E8 ⊕ U² with its simple roots and the six-root witness
    Witness,
}

/// Captured result of one invocation.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub exit_code: u8,
    pub stdout: String,
    pub stderr: String,
}

#[derive(Debug)]
enum Failure {
    Core(monolat::Error),
    Input(String),
}

impl From<monolat::Error> for Failure {
    fn from(e: monolat::Error) -> Self {
        Failure::Core(e)
    }
}

impl Failure {
    fn exit_code(&self) -> u8 {
        match self {
            Failure::Core(monolat::Error::BudgetExceeded { .. }) => EXIT_BUDGET,
            _ => EXIT_INVALID,
        }
    }

    fn to_json(&self) -> Value {
        match self {
            Failure::Core(e) => json!({ "error": { "kind": error_kind(e), "message": e.to_string() } }),
            Failure::Input(m) => json!({ "error": { "kind": "input", "message": m } }),
        }
    }
}

fn error_kind(e: &monolat::Error) -> String {
    let debug = format!("{e:?}");
    debug.split(|c: char| !c.is_alphanumeric()).next().unwrap_or("error").to_string()
}

struct Report {
    command: &'static str,
    inputs: Value,
    result: Value,
    budget: Value,
    exit_code: u8,
}

impl Report {
    fn render(&self) -> String {
        let v = json!({
            "command": self.command,
            "inputs": self.inputs,
            "result": self.result,
            "budget": self.budget,
            "version": VERSION,
        });
        let mut s = serde_json::to_string_pretty(&v).expect("reports serialize");
        s.push('\n');
        s
    }
}

/// Runs one invocation; `args[0]` is the program name.
pub fn run_command(args: &[String], stdin: &mut dyn Read) -> Outcome {
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return match e.kind() {
                clap::error::ErrorKind::DisplayHelp | clap::error::ErrorKind::DisplayVersion => {
                    Outcome { exit_code: EXIT_OK, stdout: text, stderr: String::new() }
                }
                _ => Outcome { exit_code: EXIT_INVALID, stdout: String::new(), stderr: text },
            };
        }
    };
    let (command, inputs) = describe(&cli.command);
    let report = match execute(cli.command, stdin) {
        Ok(r) => r,
        Err(f) => Report { command, inputs, result: f.to_json(), budget: Value::Null, exit_code: f.exit_code() },
    };
    let stderr = match report.exit_code {
        EXIT_OK => String::new(),
        _ => match report.result.pointer("/error/message") {
            Some(Value::String(m)) => format!("monolat {}: {m}\n", report.command),
            _ => format!("monolat {}: search budget exhausted\n", report.command),
        },
    };
    Outcome { exit_code: report.exit_code, stdout: report.render(), stderr }
}

fn describe(command: &Command) -> (&'static str, Value) {
    match command {
        Command::Build { target } => ("build", build_inputs(target)),
        Command::Certify { file, height, max_size } => {
            ("certify", json!({ "file": file, "height": height, "max_size": max_size }))
        }
        Command::Spinor { file, matrix } => ("spinor", json!({ "file": file, "matrix": matrix })),
        Command::SpGen { q, p, .. } => ("sp-gen", json!({ "q": q, "p": p })),
        Command::Jscan { chi, radius, samples, seed, csv } => (
            "jscan",
            json!({
                "chi": chi,
                "radius": float(*radius),
                "samples": samples,
                "seed": seed,
                "csv": csv.as_ref().map(|p| p.display().to_string()),
            }),
        ),
    }
}

fn build_inputs(target: &BuildTarget) -> Value {
    match target {
        BuildTarget::Diagonal { entries } => json!({ "target": "diagonal", "entries": entries }),
        BuildTarget::E8 => json!({ "target": "e8" }),
        BuildTarget::Torus { q } => json!({ "target": "torus", "q": q }),
        BuildTarget::Annulus { g } => json!({ "target": "annulus", "g": g }),
        BuildTarget::MilnorJ { chi } => json!({ "target": "milnorJ", "chi": chi }),
        BuildTarget::Witness => json!({ "target": "witness" }),
    }
}

fn execute(command: Command, stdin: &mut dyn Read) -> Result<Report, Failure> {
    let (name, inputs) = describe(&command);
    let mut report = match command {
        Command::Build { target } => build(target)?,
        Command::Certify { file, height, max_size } => {
            certify(&read_input(&file, stdin)?, OrbitBudget { height_bound: height, max_size })?
        }
        Command::Spinor { file, matrix } => {
            if file == "-" && matrix == "-" {
                return Err(Failure::Input("only one input may be read from stdin".into()));
            }
            let lattice_text = read_input(&file, stdin)?;
            let matrix_text = read_input(&matrix, stdin)?;
            spinor(&lattice_text, &matrix_text)?
        }
        Command::SpGen { q, p, limit } => sp_gen(q, p, limit)?,
        Command::Jscan { chi, radius, samples, seed, csv } => jscan(chi, radius, samples, seed, csv)?,
    };
    report.command = name;
    report.inputs = inputs;
    Ok(report)
}

fn read_input(path: &str, stdin: &mut dyn Read) -> Result<String, Failure> {
    let mut text = String::new();
    if path == "-" {
        stdin.read_to_string(&mut text).map_err(|e| Failure::Input(format!("stdin: {e}")))?;
    } else {
        text = std::fs::read_to_string(path).map_err(|e| Failure::Input(format!("{path}: {e}")))?;
    }
    Ok(text)
}

/// Accepts a lattice file, or a `build` report carrying one.
fn lattice_source(text: &str) -> Result<LatticeFile, Failure> {
    if text.trim_start().starts_with('{') {
        let v: Value = serde_json::from_str(text).map_err(|e| Failure::Input(format!("invalid JSON: {e}")))?;
        let inner = v
            .pointer("/result/lattice_file")
            .and_then(Value::as_str)
            .ok_or_else(|| Failure::Input("JSON input has no result.lattice_file".into()))?;
        return Ok(parse_lattice_file(inner)?);
    }
    Ok(parse_lattice_file(text)?)
}

fn ok_report(result: Value, budget: Value) -> Report {
    Report { command: "", inputs: Value::Null, result, budget, exit_code: EXIT_OK }
}

fn float(x: f64) -> String {
    format!("{x}")
}

fn big(x: &BigInt) -> Value {
    i64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn wide(x: u128) -> Value {
    u64::try_from(x).map_or_else(|_| Value::String(x.to_string()), Value::from)
}

fn signature_json(s: Signature) -> Value {
    json!({ "positive": s.positive, "zero": s.zero, "negative": s.negative })
}

fn lattice_json(l: &Lattice) -> Value {
    json!({
        "label": l.label(),
        "rank": l.rank(),
        "even": l.is_even(),
        "determinant": big(&l.determinant()),
        "signature": signature_json(l.signature()),
        "gram": l.gram(),
    })
}

fn vectors_json(vectors: &[(String, LatticeVector)]) -> Value {
    vectors.iter().map(|(name, v)| json!({ "name": name, "coords": v.coords() })).collect()
}

fn build(target: BuildTarget) -> Result<Report, Failure> {
    let mut extra = serde_json::Map::new();
    let file = match target {
        BuildTarget::Diagonal { entries } => LatticeFile::new(diagonal_lattice(&entries)?),
        BuildTarget::E8 => {
            let l = e8();
            let roots: Vec<_> = (0..8).map(|i| l.basis_vector(i)).collect();
            roots.into_iter().enumerate().fold(LatticeFile::new(l), |f, (i, v)| f.with_vector(format!("n{}", i + 1), v))
        }
        BuildTarget::Torus { q } => LatticeFile::new(torus_block(q)?),
        BuildTarget::Annulus { g } => {
            let a = annulus_pair(g);
            let sum = &a.s_plus + &a.s_minus;
            extra.insert("s_plus_dot_s_minus".into(), a.lattice.inner(&a.s_plus, &a.s_minus)?.into());
            extra.insert("sum_square".into(), a.lattice.square(&sum)?.into());
            LatticeFile::new(a.lattice).with_vector("s_plus", a.s_plus).with_vector("s_minus", a.s_minus)
        }
        BuildTarget::MilnorJ { chi } => {
            let l = milnor_j(chi)?;
            let expected = bp_signature(2, 3, 6 * chi as i64)?;
            let (quotient, split) = l.modulo_radical()?;
            extra.insert("bp_signature".into(), signature_json(expected));
            extra.insert("signature_match".into(), (l.signature() == expected).into());
            extra.insert("radical_rank".into(), split.kernel.len().into());
            extra.insert(
                "quotient".into(),
                json!({
                    "rank": quotient.rank(),
                    "even": quotient.is_even(),
                    "determinant": big(&quotient.determinant()),
                    "signature": signature_json(quotient.signature()),
                }),
            );
            LatticeFile::new(l)
        }
        BuildTarget::Witness => {
            let w = witness_six();
            extra.insert("witness_gram".into(), w.ambient.gram_of(&w.vectors)?.into());
            extra.insert("matches_diagram".into(), matches_diagram(&w.ambient, &w.vectors, &diagram_paper())?.into());
            extra.insert("e8_nodes".into(), WITNESS_E8_NODES.iter().map(|n| n + 1).collect::<Vec<_>>().into());
            let t = torus_classes();
            extra.insert(
                "torus_classes".into(),
                json!({
                    "t1_plus": t.t1_plus.coords(),
                    "t2_minus": t.t2_minus.coords(),
                    "t1_minus": t.t1_minus.coords(),
                    "t2_plus": t.t2_plus.coords(),
                }),
            );
            let mut file = LatticeFile::new(w.ambient.clone());
            for (i, v) in w.e8_simple_roots().into_iter().enumerate() {
                file = file.with_vector(format!("n{}", i + 1), v);
            }
            for (i, v) in w.vectors.iter().enumerate() {
                file = file.with_vector(format!("w{}", i + 1), v.clone());
            }
            file
        }
    };
    let mut result = serde_json::Map::new();
    result.insert("lattice".into(), lattice_json(&file.lattice));
    result.insert("vectors".into(), vectors_json(&file.vectors));
    result.extend(extra);
    result.insert("lattice_file".into(), serialize_lattice_file(&file).into());
    Ok(ok_report(Value::Object(result), Value::Null))
}

fn certify(text: &str, budget: OrbitBudget) -> Result<Report, Failure> {
    let file = lattice_source(text)?;
    let seeds: Vec<LatticeVector> =
        file.vectors.iter().filter(|(name, _)| name != "f").map(|(_, v)| v.clone()).collect();
    if seeds.is_empty() {
        return Err(Failure::Input("lattice file has no seed vectors".into()));
    }
    let l = &file.lattice;
    let cert = certify_cvl(l, &seeds, budget)?;
    let (single_orbit, components) = match cert.single_orbit {
        Connectivity::Connected => ("connected", Value::Null),
        Connectivity::Inconclusive { components } => ("inconclusive", components.into()),
    };
    let witness = match &cert.witness {
        Some(w) => json!({
            "vectors": w.iter().map(LatticeVector::coords).collect::<Vec<_>>(),
            "gram": l.gram_of(w)?,
        }),
        None => Value::Null,
    };
    let result = json!({
        "rank": l.rank(),
        "seed_count": seeds.len(),
        "generates": cert.generates,
        "span": { "rank": cert.span.rank, "index": cert.span.index.as_ref().map(big) },
        "single_orbit": single_orbit,
        "components": components,
        "witness": witness,
        "orbit_size": cert.orbit_size,
        "exhausted": cert.exhausted,
        "all_checks_pass": cert.all_checks_pass(),
    });
    let usage = json!({
        "height_bound": cert.budget.height_bound,
        "max_size": cert.budget.max_size,
        "processed": cert.budget.processed,
        "discarded_by_height": cert.budget.discarded_by_height,
    });
    let mut report = ok_report(result, usage);
    if !cert.exhausted {
        report.exit_code = EXIT_BUDGET;
    }
    Ok(report)
}

fn spinor(lattice_text: &str, matrix_text: &str) -> Result<Report, Failure> {
    let file = lattice_source(lattice_text)?;
    let m = parse_matrix_file(matrix_text)?;
    let l = &file.lattice;
    let f = file.vector("f").cloned();
    let probe = f.clone().unwrap_or_else(|| LatticeVector::zero(l.rank()));
    let rep = o_prime_f_report(l, &m, &probe)?;
    let norm = rep.spinor_norm.map(|n| match n {
        SpinorNorm::Plus => "+1",
        SpinorNorm::Minus => "-1",
    });
    let factorization = rep.factorization.as_ref().map(|fac| {
        json!({
            "length": fac.len(),
            "positive_count": fac.positive_count(),
            "squares": fac.squares.iter().map(monolat::exact::format_rational).collect::<Vec<_>>(),
        })
    });
    let in_o_prime = rep.preserves_form && rep.spinor_norm == Some(SpinorNorm::Plus);
    let result = json!({
        "rank": l.rank(),
        "f": f.as_ref().map(LatticeVector::coords),
        "preserves_form": rep.preserves_form,
        "fixes_f": f.as_ref().map(|_| rep.fixes_f),
        "spinor_norm": norm,
        "reduced_mod_radical": rep.reduced_mod_radical,
        "factorization": factorization,
        "in_o_prime": in_o_prime,
        "in_o_prime_f": f.as_ref().map(|_| rep.member()),
    });
    Ok(ok_report(result, Value::Null))
}

fn sp_gen(q: usize, p: u64, limit: usize) -> Result<Report, Failure> {
    let space = standard_symplectic(q)?;
    let directions = standard_generators(q)?;
    let gens = directions.iter().map(|v| transvection(&space, v)).collect::<monolat::Result<Vec<_>>>()?;
    let order = closure_mod_p_bounded(&space, &gens, p, limit)?;
    let expected = u32::try_from(q).ok().and_then(|q| sp_order(q, p));
    let result = json!({
        "order": order,
        "expected": expected.map(wide),
        "match": expected == Some(order as u128),
        "generators": directions.iter().map(LatticeVector::coords).collect::<Vec<_>>(),
    });
    Ok(ok_report(result, json!({ "limit": limit })))
}

fn jscan(chi: u32, radius: f64, samples: usize, seed: u64, csv_path: Option<PathBuf>) -> Result<Report, Failure> {
    let summary = scan_polydisc(chi, radius, samples, seed)?;
    if let Some(path) = &csv_path {
        write_csv(path, &summary.rows).map_err(|e| Failure::Input(format!("{}: {e}", path.display())))?;
    }
    let degree = 12 * chi as u64;
    let result = json!({
        "degree": degree,
        "multiplicity_at_infinity": degree,
        "min_nonzero_modulus": float(summary.min_nonzero_modulus),
        "max_bounded_modulus": float(summary.max_bounded_modulus),
        "pole_count": summary.pole_count,
        "max_residual": float(summary.max_residual),
        "residuals_below_tol": summary.max_residual < DEFAULT_RESIDUAL_TOL,
    });
    let budget = json!({
        "samples": samples,
        "residual_tol": float(DEFAULT_RESIDUAL_TOL),
        "pole_tol": float(POLE_TOL),
    });
    Ok(ok_report(result, budget))
}

fn write_csv(path: &std::path::Path, rows: &[monolat::jfamily::ScanRow]) -> Result<(), csv::Error> {
    let mut w = csv::Writer::from_path(path)?;
    w.write_record(["lambda_re", "lambda_im", "u_re", "u_im", "min_modulus", "max_bounded_modulus", "pole_flag"])?;
    for r in rows {
        w.write_record([
            float(r.lambda.re),
            float(r.lambda.im),
            float(r.u.re),
            float(r.u.im),
            float(r.min_modulus),
            float(r.max_bounded_modulus),
            u8::from(r.pole).to_string(),
        ])?;
    }
    w.flush()?;
    Ok(())
}
