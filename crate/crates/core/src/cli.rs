//! The `linv` command line.

use std::io::Write;
use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use crate::characters::{classify_pair, Character};
use crate::cohomology::{dual_l_inv, l_inv, orthogonal, tate_pair};
use crate::deformation::{DeformationContext, DeformationElement};
use crate::error::{Error, Result};
use crate::family::{scenario_generate, tate_l_invariant, tate_l_invariant_class, theorem_verify, ScenarioParams};
use crate::literal::{
    character_from_value, homomorphism_from_value, kummer_from_value, parse_relaxed, scalar_from_value,
    scenario_from_json, RingLiteral,
};
use crate::padic::{Field, FieldElement};

pub const EXIT_OK: i32 = 0;
pub const EXIT_INPUT: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Text,
    Json,
}

#[derive(Debug, Parser)]
#[command(name = "linv", version, about = "p-adic L-invariants, dual L-invariants and first-order families of characters")]
pub struct Cli {
    #[command(flatten)]
    pub config: CliConfig,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct CliConfig {
    /// Odd prime p.
    #[arg(long, global = true, default_value_t = 5)]
    pub p: u64,
    /// Degree of the unramified coefficient field E over Q_p.
    #[arg(long, global = true, default_value_t = 1)]
    pub degree: usize,
    /// Monic modulus for E, low coefficients first (e.g. 2,0,1).
    #[arg(long, global = true, value_delimiter = ',', allow_hyphen_values = true)]
    pub poly: Option<Vec<i64>>,
    /// Working precision N (at least 8).
    #[arg(long, global = true, env = "LINV_PRECISION", default_value_t = 50)]
    pub precision: u32,
    /// Largest twist k recognized by the case classifier.
    #[arg(long, global = true, default_value_t = 100)]
    pub kmax: u64,
    #[arg(long, global = true, value_enum, default_value_t = Format::Text)]
    pub format: Format,
}

impl CliConfig {
    pub fn field(&self) -> Result<Field> {
        if self.precision < 8 {
            return Err(Error::InvalidPrecision(self.precision));
        }
        Field::new(self.p, self.degree, self.poly.as_deref(), self.precision)
    }
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Tate-curve L-invariant log_p(q)/ord_p(q).
    Tate {
        /// A nonzero rational literal, or a Kummer class {a, b}.
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// Classify a pair of E-valued characters as first, second(k) or third(k).
    Classify {
        #[arg(long, allow_hyphen_values = true)]
        delta0: String,
        #[arg(long, allow_hyphen_values = true)]
        eta0: String,
    },
    /// Verify the differential relation on scenario files or generated scenarios.
    Verify {
        /// Scenario JSON file.
        path: Option<PathBuf>,
        #[arg(long)]
        random: bool,
        #[arg(long, default_value_t = 1)]
        count: u64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        /// dim m for generated scenarios.
        #[arg(long, default_value_t = 1)]
        r: usize,
        /// Twist k for generated scenarios.
        #[arg(long, default_value_t = 0)]
        k: u32,
    },
    /// Character algebra.
    Char {
        /// Read characters over B = E ⊕ E^r instead of E.
        #[arg(long)]
        r: Option<usize>,
        #[command(subcommand)]
        op: CharOp,
    },
    /// L-invariants and the pairing on literals.
    Linv {
        #[command(subcommand)]
        op: LinvOp,
    },
}

#[derive(Debug, Subcommand)]
pub enum CharOp {
    Mul {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        b: String,
    },
    Inv {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    Pow {
        #[arg(allow_hyphen_values = true)]
        a: String,
        #[arg(allow_hyphen_values = true)]
        n: i64,
    },
    Weight {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
    /// Split a B-valued character into δ₀ and δ₁.
    Decompose {
        #[arg(allow_hyphen_values = true)]
        a: String,
    },
}

#[derive(Debug, Subcommand)]
pub enum LinvOp {
    /// L(q) for a Kummer class {a, b}.
    L {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
    },
    /// L*(h) for a homomorphism {at_p, at_gamma}.
    Dual {
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
    /// ⟨q, h⟩ and whether q and h are orthogonal.
    Pair {
        #[arg(long, allow_hyphen_values = true)]
        q: String,
        #[arg(long, allow_hyphen_values = true)]
        h: String,
    },
}

/// Output of one command: lines for text mode and a JSON value.
struct Output {
    text: Vec<String>,
    json: Value,
    code: i32,
}

impl Output {
    fn ok(text: Vec<String>, json: Value) -> Self {
        Output { text, json, code: EXIT_OK }
    }
}

fn annotate(field: &Field) -> String {
    format!("(N = {}, certified mod p^{})", field.precision(), field.certified_precision())
}

fn exit_code(e: &Error) -> i32 {
    match e {
        Error::InconsistentScenario(_) | Error::WrongCase(_) | Error::CrystallineSpecialization => EXIT_VERIFY,
        _ => EXIT_INPUT,
    }
}

fn error_name(e: &Error) -> &'static str {
    match e {
        Error::InconsistentScenario(_) => "inconsistent-scenario",
        Error::WrongCase(_) => "wrong-case",
        Error::CrystallineSpecialization => "crystalline-specialization",
        Error::ZeroValuation => "zero-valuation",
        Error::Parse(_) => "parse",
        Error::Io(_) => "io",
        _ => "error",
    }
}

fn cmd_tate(cfg: &CliConfig, q: &str) -> Result<Output> {
    let field = cfg.field()?;
    let v = parse_relaxed(q)?;
    let l = if v.is_object() {
        tate_l_invariant_class(&kummer_from_value(&field, &v)?)?
    } else {
        tate_l_invariant(&field, &scalar_from_value(field.qp(), &v)?)?
    };
    Ok(Output::ok(
        vec![format!("L = {l}"), annotate(&field)],
        json!({ "l_invariant": l.to_string(), "precision": field.precision(), "certified_precision": field.certified_precision() }),
    ))
}

fn cmd_classify(cfg: &CliConfig, delta0: &str, eta0: &str) -> Result<Output> {
    let field = cfg.field()?;
    let d: Character<FieldElement> = character_from_value(&field, &parse_relaxed(delta0)?)?;
    let e: Character<FieldElement> = character_from_value(&field, &parse_relaxed(eta0)?)?;
    let case = classify_pair(&d, &e, cfg.kmax)?;
    Ok(Output::ok(vec![case.to_string()], json!({ "case": case.to_string() })))
}

fn cmd_verify(cfg: &CliConfig, path: Option<&PathBuf>, random: bool, count: u64, seed: u64, r: usize, k: u32) -> Result<Output> {
    let mut scenarios = Vec::new();
    match (path, random) {
        (Some(path), false) => {
            let text = std::fs::read_to_string(path).map_err(|e| Error::Io(format!("{}: {e}", path.display())))?;
            let mut s = scenario_from_json(&text)?;
            if s.label.is_empty() {
                s.label = path.display().to_string();
            }
            scenarios.push(Ok(s.with_k_max(cfg.kmax)));
        }
        (None, true) => {
            cfg.field()?;
            let params = ScenarioParams {
                p: cfg.p,
                degree: cfg.degree,
                r,
                k,
                precision: cfg.precision,
                ..Default::default()
            };
            for i in 0..count {
                scenarios.push(scenario_generate(seed.wrapping_add(i), &params).map(|s| s.with_k_max(cfg.kmax)));
            }
        }
        _ => return Err(Error::InvalidArgument("give either a scenario path or --random".into())),
    }
    let mut text = Vec::new();
    let mut reports = Vec::new();
    let mut passed = 0;
    let mut code = EXIT_OK;
    for s in scenarios {
        let label = s.as_ref().map(|s| s.label.clone()).unwrap_or_default();
        match s.and_then(|s| theorem_verify(&s)) {
            Ok(report) => {
                if report.pass {
                    passed += 1;
                } else {
                    code = code.max(EXIT_VERIFY);
                }
                text.push(report.to_string());
                reports.push(serde_json::to_value(&report).expect("report serializes"));
            }
            Err(e) => {
                code = code.max(exit_code(&e));
                text.push(format!("scenario {label}: {}: {e}", error_name(&e)));
                reports.push(json!({ "label": label, "error": error_name(&e), "message": e.to_string() }));
            }
        }
    }
    text.push(format!("{passed}/{} scenarios passed", reports.len()));
    Ok(Output { text, json: json!({ "reports": reports, "passed": passed }), code })
}

fn char_ops<R: RingLiteral>(ctx: &R::Context, op: &CharOp, field: &Field) -> Result<Output>
{
    let parse = |s: &str| character_from_value::<R>(ctx, &parse_relaxed(s)?);
    let show = |c: &Character<R>| Output::ok(vec![c.to_string(), annotate(field)], json!({ "character": c.to_string() }));
    match op {
        CharOp::Mul { a, b } => Ok(show(&parse(a)?.mul(&parse(b)?)?)),
        CharOp::Inv { a } => Ok(show(&parse(a)?.inv()?)),
        CharOp::Pow { a, n } => Ok(show(&parse(a)?.pow(*n)?)),
        CharOp::Weight { a } => {
            let w = parse(a)?.weight()?;
            Ok(Output::ok(vec![format!("wt = {w}"), annotate(field)], json!({ "weight": w.to_string() })))
        }
        CharOp::Decompose { .. } => Err(Error::InvalidArgument("decompose needs a B-valued character (pass --r)".into())),
    }
}

fn cmd_char(cfg: &CliConfig, r: Option<usize>, op: &CharOp) -> Result<Output> {
    let field = cfg.field()?;
    match r {
        None => char_ops::<FieldElement>(&field, op, &field),
        Some(r) => {
            let ctx = DeformationContext::new(field.clone(), r)?;
            if let CharOp::Decompose { a } = op {
                let c: Character<DeformationElement> = character_from_value(&ctx, &parse_relaxed(a)?)?;
                let (body, tangent) = c.decompose()?;
                return Ok(Output::ok(
                    vec![format!("delta0 = {body}"), format!("delta1 = {tangent}"), annotate(&field)],
                    json!({ "delta0": body.to_string(), "delta1": tangent.to_string() }),
                ));
            }
            char_ops::<DeformationElement>(&ctx, op, &field)
        }
    }
}

fn cmd_linv(cfg: &CliConfig, op: &LinvOp) -> Result<Output> {
    let field = cfg.field()?;
    match op {
        LinvOp::L { q } => {
            let l = l_inv(&kummer_from_value(&field, &parse_relaxed(q)?)?)?;
            Ok(Output::ok(vec![format!("L = {l}"), annotate(&field)], json!({ "l_invariant": l })))
        }
        LinvOp::Dual { h } => {
            let l = dual_l_inv(&homomorphism_from_value(&field, &parse_relaxed(h)?)?)?;
            Ok(Output::ok(vec![format!("L* = {l}"), annotate(&field)], json!({ "dual_l_invariant": l })))
        }
        LinvOp::Pair { q, h } => {
            let q = kummer_from_value(&field, &parse_relaxed(q)?)?;
            let h = homomorphism_from_value(&field, &parse_relaxed(h)?)?;
            let value = tate_pair(&q, &h)?;
            let orth = orthogonal(&q, &h).ok();
            let mut text = vec![format!("<q, h> = {value}")];
            if let Some(o) = orth {
                text.push(format!("orthogonal: {o}"));
            }
            text.push(annotate(&field));
            Ok(Output::ok(text, json!({ "pairing": value.to_string(), "orthogonal": orth })))
        }
    }
}

/// Run a parsed command, writing the result to `out` and diagnostics to
/// `err`. Returns the exit code.
pub fn run(cli: &Cli, out: &mut dyn Write, err: &mut dyn Write) -> i32 {
    let cfg = &cli.config;
    let result = match &cli.command {
        Command::Tate { q } => cmd_tate(cfg, q),
        Command::Classify { delta0, eta0 } => cmd_classify(cfg, delta0, eta0),
        Command::Verify { path, random, count, seed, r, k } => cmd_verify(cfg, path.as_ref(), *random, *count, *seed, *r, *k),
        Command::Char { r, op } => cmd_char(cfg, *r, op),
        Command::Linv { op } => cmd_linv(cfg, op),
    };
    match result {
        Ok(output) => {
            let written = match cfg.format {
                Format::Text => writeln!(out, "{}", output.text.join("\n")),
                Format::Json => writeln!(out, "{}", serde_json::to_string_pretty(&output.json).expect("json")),
            };
            if written.is_err() {
                return EXIT_INPUT;
            }
            output.code
        }
        Err(e) => {
            let _ = match cfg.format {
                Format::Text => writeln!(err, "error: {}: {e}", error_name(&e)),
                Format::Json => writeln!(err, "{}", json!({ "error": error_name(&e), "message": e.to_string() })),
            };
            exit_code(&e)
        }
    }
}

/// Entry point for the `linv` binary.
pub fn main() -> i32 {
    env_logger::Builder::from_env(env_logger::Env::default().default_filter_or("warn")).init();
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { EXIT_INPUT } else { EXIT_OK };
        }
    };
    run(&cli, &mut std::io::stdout().lock(), &mut std::io::stderr().lock())
}
