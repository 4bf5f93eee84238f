//! `polylog`: inspect catalog equations, verify them symbolically and
//! numerically, evaluate polylogarithms and run the acceptance suite.
//!
//! Exit codes: 0 when every requested check passes, 1 when one fails,
//! 2 on usage errors, 3 on internal errors.

use std::process::ExitCode;
use std::time::Instant;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::{json, Value};

use polylog_core::catalog::{
    self, build, check_22_to_34_substitution, check_34_from_wojtkowiak, check_gamma21_identity,
    check_gprime_correspondence, check_group_orders, check_orbit_sizes, check_q_equations,
    check_sym_matches_goncharov22, check_xi7_explicit_vs_symmetric, check_xi7_multiplicities, check_xi7_term_count,
    check_xi7_weights, verify_fourlog_numeric, verify_numeric, CheckReport, EquationSpec, NumericOptions,
};
use polylog_core::numeric::{cl_m, li_m, poly_roots, BigComplex, ClArg, PrecisionPolicy};
use polylog_core::proof::proof_report;
use polylog_core::ratfunc::{coeffs_in, parse_poly};
use polylog_core::report::{criteria, run_criterion, CheckVerdict, RunReport};
use polylog_core::symbol::{kernel_test, KernelTestConfig};
use polylog_core::Error;

const DEFAULT_SEED: &str = "20240611";

#[derive(Parser)]
#[command(name = "polylog", version, about = "Verify functional equations of polylogarithms")]
struct Cli {
    /// Worker threads for parallel verification (default: all cores).
    #[arg(long, global = true)]
    jobs: Option<usize>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Mode {
    Symbolic,
    Numeric,
    Both,
}

#[derive(Subcommand)]
enum Command {
    /// List catalog equations.
    List {
        #[arg(long)]
        json: bool,
    },
    /// Print one catalog equation.
    Show {
        equation: String,
        #[arg(long)]
        json: bool,
    },
    /// Run the kernel test and/or numerical vanishing on an equation.
    Verify {
        #[arg(long)]
        equation: String,
        #[arg(long, value_enum, default_value = "both")]
        mode: Mode,
        /// Numeric sample points.
        #[arg(long, default_value_t = 20)]
        points: usize,
        /// Kernel-test specializations.
        #[arg(long, default_value_t = 10)]
        trials: usize,
        /// Dual functionals per specialization.
        #[arg(long, default_value_t = 5)]
        functionals: usize,
        /// Height bound for random rational specializations.
        #[arg(long, default_value_t = KernelTestConfig::DEFAULT_HEIGHT)]
        height: u32,
        /// Working precision in decimal digits.
        #[arg(long, default_value_t = 50)]
        precision: u32,
        #[arg(long, env = "POLYLOG_SEED", default_value = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the one-valued polylogarithm CL_m(z).
    EvalCl {
        #[arg(long)]
        m: u32,
        /// Complex literal such as `0.5`, `1/3-2i` or `0+1i`.
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 50)]
        precision: u32,
        #[arg(long)]
        json: bool,
    },
    /// Evaluate the principal branch of Li_m(z).
    EvalLi {
        #[arg(long)]
        m: u32,
        #[arg(long, allow_hyphen_values = true)]
        z: String,
        #[arg(long, default_value_t = 50)]
        precision: u32,
        #[arg(long)]
        json: bool,
    },
    /// Roots of a univariate polynomial, given as an expression with
    /// rational coefficients or as complex coefficients from low to high degree.
    Roots {
        #[arg(long, conflicts_with = "coeff", allow_hyphen_values = true)]
        poly: Option<String>,
        #[arg(long, allow_hyphen_values = true)]
        coeff: Vec<String>,
        #[arg(long, default_value_t = 50)]
        precision: u32,
        #[arg(long)]
        json: bool,
    },
    /// Run one structural check.
    Check {
        #[arg(long)]
        name: String,
        #[arg(long, env = "POLYLOG_SEED", default_value = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
    /// Run the acceptance suite.
    Report {
        /// Run every criterion (required; kept explicit because the run takes minutes).
        #[arg(long, required = true)]
        all: bool,
        #[arg(long, env = "POLYLOG_SEED", default_value = DEFAULT_SEED)]
        seed: u64,
        #[arg(long)]
        json: bool,
    },
}

/// Errors that end the process, split by exit code.
enum Failure {
    Usage(String),
    Internal(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        match e {
            Error::Unknown { .. } | Error::Parse { .. } => Failure::Usage(e.to_string()),
            other => Failure::Internal(other.to_string()),
        }
    }
}

type Outcome = Result<bool, Failure>;

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    if let Some(j) = cli.jobs {
        if j == 0 {
            eprintln!("error: --jobs must be at least 1");
            return ExitCode::from(2);
        }
        if let Err(e) = rayon::ThreadPoolBuilder::new().num_threads(j).build_global() {
            eprintln!("error: {e}");
            return ExitCode::from(3);
        }
    }
    match run(cli.command) {
        Ok(true) => ExitCode::SUCCESS,
        Ok(false) => ExitCode::from(1),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            ExitCode::from(2)
        }
        Err(Failure::Internal(m)) => {
            eprintln!("internal error: {m}");
            ExitCode::from(3)
        }
    }
}

fn command_echo() -> Vec<String> {
    std::env::args().skip(1).collect()
}

fn policy(precision: u32) -> Result<PrecisionPolicy, Failure> {
    PrecisionPolicy::new(precision).map_err(|e| Failure::Usage(e.to_string()))
}

fn print_json(v: &Value) {
    println!("{}", serde_json::to_string_pretty(v).expect("json renders"));
}

fn run(cmd: Command) -> Outcome {
    match cmd {
        Command::List { json } => list(json),
        Command::Show { equation, json } => show(&equation, json),
        Command::Verify { equation, mode, points, trials, functionals, height, precision, seed, json } => {
            let cfg = KernelTestConfig { height, ..KernelTestConfig::new(0, trials, functionals, seed) };
            verify(&equation, mode, points, cfg, &policy(precision)?, json)
        }
        Command::EvalCl { m, z, precision, json } => eval(m, &z, precision, json, true),
        Command::EvalLi { m, z, precision, json } => eval(m, &z, precision, json, false),
        Command::Roots { poly, coeff, precision, json } => roots(poly.as_deref(), &coeff, precision, json),
        Command::Check { name, seed, json } => check(&name, seed, json),
        Command::Report { all: _, seed, json } => report(seed, json),
    }
}

fn list(json: bool) -> Outcome {
    let mut rows = Vec::new();
    for name in catalog::NAMES {
        let e = build(name)?;
        rows.push(json!({
            "name": e.name,
            "weight": e.weight,
            "variables": e.variables,
            "classes": e.class_count(),
            "is_equation": e.is_equation,
        }));
        if !json {
            let kind = if e.is_equation { "" } else { "  (not an equation on its own)" };
            println!("{:<22} weight {}  {:>3} classes{kind}", e.name, e.weight, e.class_count());
        }
    }
    if json {
        print_json(&Value::Array(rows));
    }
    Ok(true)
}

fn show(name: &str, json: bool) -> Outcome {
    let e = build(name)?;
    if json {
        print_json(&e.to_json());
        return Ok(true);
    }
    println!("{}  (weight {}, variables {})", e.name, e.weight, e.variables.join(", "));
    if !e.anchor.is_empty() {
        println!("  {}", e.anchor);
    }
    for c in &e.constraints {
        println!("  constraint: {c}");
    }
    for (c, f) in e.sum.terms() {
        println!("  {c:>8} [{f}]");
    }
    Ok(true)
}

fn fourlog_n(e: &EquationSpec) -> Option<usize> {
    e.binding.map(|b| b.n)
}

fn verify(name: &str, mode: Mode, points: usize, cfg: KernelTestConfig, policy: &PrecisionPolicy, json: bool) -> Outcome {
    let e = build(name)?;
    let mut report = RunReport::new(command_echo(), cfg.seed, Some(policy));
    let tol_digits = policy.digits - policy.slack;
    if mode != Mode::Numeric {
        let start = Instant::now();
        let v = match fourlog_n(&e) {
            // Root placeholders are not free variables; the symbolic side is
            // the exact log-symbol computation.
            Some(n) => {
                let r = proof_report(n)?;
                CheckVerdict::new("log-symbol-algebra", r.all_pass(), r.to_json())
            }
            None => {
                let kcfg = KernelTestConfig { m: e.weight, ..cfg };
                CheckVerdict::from_kernel("kernel-test", &kernel_test(&e.sum, &kcfg)?)
            }
        };
        report.push(v, start.elapsed().as_secs_f64());
    }
    if mode != Mode::Symbolic {
        let start = Instant::now();
        let opts = NumericOptions::new(points, cfg.seed, tol_digits);
        let v = match fourlog_n(&e) {
            Some(n) => verify_fourlog_numeric(n, &opts, policy)?,
            None => verify_numeric(&e, &opts, policy)?,
        };
        report.push(CheckVerdict::from_numeric("numeric", &v), start.elapsed().as_secs_f64());
    }
    emit(&report, json);
    Ok(report.passed)
}

fn emit(report: &RunReport, json: bool) {
    if json {
        print_json(&report.to_json());
    } else {
        print!("{}", report.to_text());
    }
}

fn parse_complex(s: &str, digits: u32) -> Result<BigComplex, Failure> {
    BigComplex::parse(s, digits).map_err(|e| Failure::Usage(e.to_string()))
}

fn eval(m: u32, z: &str, precision: u32, json: bool, one_valued: bool) -> Outcome {
    let p = policy(precision)?;
    let zc = parse_complex(z, precision)?;
    let v = if one_valued { cl_m(m, &ClArg::Finite(zc), &p) } else { li_m(m, &zc, &p) }
        .map_err(|e| Failure::Usage(e.to_string()))?;
    let text = complex_text(&v, precision as usize);
    if json {
        print_json(&json!({ "function": if one_valued { "CL" } else { "Li" }, "m": m, "z": z, "precision": precision, "value": text }));
    } else {
        println!("{text}");
    }
    Ok(true)
}

fn roots(poly: Option<&str>, coeff: &[String], precision: u32, json: bool) -> Outcome {
    let p = policy(precision)?;
    let coeffs: Vec<BigComplex> = match poly {
        Some(expr) => {
            let f = parse_poly(expr)?;
            let vars = f.vars();
            if vars.len() > 1 {
                return Err(Failure::Usage(format!("expected one variable, found {}", vars.join(", "))));
            }
            let cs = match vars.first() {
                Some(v) => coeffs_in(&f, v),
                None => vec![f.clone()],
            };
            cs.iter()
                .map(|c| {
                    let q = c.constant_value().unwrap_or_default();
                    BigComplex::from_rational(&q, precision)
                })
                .collect()
        }
        None if !coeff.is_empty() => coeff.iter().map(|c| parse_complex(c, precision)).collect::<Result<_, _>>()?,
        None => return Err(Failure::Usage("give --poly or at least two --coeff values".into())),
    };
    let rs = poly_roots(&coeffs, &p).map_err(|e| match e {
        Error::Domain(m) => Failure::Usage(m),
        other => other.into(),
    })?;
    let texts: Vec<String> = rs.iter().map(|r| complex_text(r, precision as usize)).collect();
    if json {
        print_json(&json!({ "precision": precision, "roots": texts }));
    } else {
        for t in texts {
            println!("{t}");
        }
    }
    Ok(true)
}

/// Rewrites `d.ddd…e<k>` in positional notation when `-12 <= k < 40`.
fn positional(s: &str) -> String {
    let (sign, body) = match s.strip_prefix('-') {
        Some(b) => ("-", b),
        None => ("", s),
    };
    let Some((mant, exp)) = body.split_once('e') else { return s.to_string() };
    let Ok(exp) = exp.parse::<i64>() else { return s.to_string() };
    if !(-12..40).contains(&exp) {
        return s.to_string();
    }
    let digits: String = mant.chars().filter(|c| c.is_ascii_digit()).collect();
    let point = mant.find('.').unwrap_or(mant.len()) as i64 + exp;
    let out = if point <= 0 {
        format!("0.{}{digits}", "0".repeat((-point) as usize))
    } else if point as usize >= digits.len() {
        format!("{digits}{}", "0".repeat(point as usize - digits.len()))
    } else {
        format!("{}.{}", &digits[..point as usize], &digits[point as usize..])
    };
    format!("{sign}{out}")
}

fn complex_text(z: &BigComplex, digits: usize) -> String {
    let raw = z.to_string_digits(digits);
    // Split "re+imi" at the sign between the parts, skipping exponent signs.
    let bytes = raw.as_bytes();
    let split = (1..bytes.len()).find(|&k| matches!(bytes[k], b'+' | b'-') && bytes[k - 1] != b'e');
    match (split, raw.strip_suffix('i')) {
        (Some(k), Some(_)) => {
            let (re, im) = (&raw[..k], &raw[k..raw.len() - 1]);
            let im_text = positional(im.trim_start_matches('+'));
            let sep = if im_text.starts_with('-') { "" } else { "+" };
            format!("{}{sep}{im_text}i", positional(re))
        }
        (None, Some(im)) => format!("{}i", positional(im)),
        _ => positional(&raw),
    }
}

/// Names accepted by `check --name`, besides `proof-algebra-n<k>`.
const CHECKS: [&str; 11] = [
    "xi7-term-count",
    "xi7-weights",
    "xi7-multiplicities",
    "xi7-explicit-vs-symmetric",
    "group-orders",
    "orbit-sizes",
    "gprime-correspondence",
    "q-equations",
    "sub-22-to-34",
    "wojt-34-match",
    "gamma21",
];

fn run_check(name: &str, seed: u64) -> Result<CheckVerdict, Failure> {
    let r: CheckReport = match name {
        "xi7-term-count" => check_xi7_term_count()?,
        "xi7-weights" => check_xi7_weights()?,
        "xi7-multiplicities" => check_xi7_multiplicities()?,
        "xi7-explicit-vs-symmetric" => check_xi7_explicit_vs_symmetric()?,
        "group-orders" => check_group_orders()?,
        "orbit-sizes" => check_orbit_sizes()?,
        "gprime-correspondence" => check_gprime_correspondence()?,
        "sym-matches-goncharov22" => check_sym_matches_goncharov22()?,
        "q-equations" => check_q_equations()?,
        "sub-22-to-34" => check_22_to_34_substitution()?,
        "wojt-34-match" => check_34_from_wojtkowiak()?,
        "gamma21" => check_gamma21_identity(seed)?,
        other => {
            let n = other.strip_prefix("proof-algebra-n").and_then(|k| k.parse::<usize>().ok());
            return match n {
                Some(n) if n >= 2 => {
                    let r = proof_report(n)?;
                    Ok(CheckVerdict::new(other, r.all_pass(), r.to_json()))
                }
                _ => Err(Failure::Usage(format!(
                    "unknown check {other}; expected one of {}, sym-matches-goncharov22 or proof-algebra-n<k>",
                    CHECKS.join(", ")
                ))),
            };
        }
    };
    Ok(CheckVerdict::from_check(&r))
}

fn check(name: &str, seed: u64, json: bool) -> Outcome {
    let start = Instant::now();
    let v = run_check(name, seed)?;
    let mut report = RunReport::new(command_echo(), seed, None);
    report.push(v.clone(), start.elapsed().as_secs_f64());
    if json {
        print_json(&report.to_json());
        return Ok(report.passed);
    }
    if name == "xi7-term-count" {
        if let Some(n) = v.details["facts"]["explicit_classes"].as_u64() {
            println!("{n}");
        }
    }
    print_facts(&v.details);
    print!("{}", report.to_text());
    Ok(report.passed)
}

fn print_facts(details: &Value) {
    if let Some(facts) = details.get("facts").and_then(Value::as_object) {
        for (k, v) in facts {
            println!("  {k} = {v}");
        }
    } else if let Some(obj) = details.as_object() {
        for (k, v) in obj {
            if !v.is_object() && !v.is_array() {
                println!("  {k} = {v}");
            }
        }
    }
}

fn report(seed: u64, json: bool) -> Outcome {
    let mut report = RunReport::new(command_echo(), seed, None);
    for c in criteria() {
        let r = run_criterion(&c, seed);
        if !json {
            println!("{}", r.line());
        }
        report.push(r.to_verdict(), r.seconds);
    }
    if json {
        print_json(&report.to_json());
    } else {
        println!("{}", if report.passed { "all criteria passed" } else { "some criteria failed" });
    }
    Ok(report.passed)
}

#[cfg(test)]
mod tests {
    use super::positional;

    #[test]
    fn positional_notation() {
        assert_eq!(positional("9.15e-1"), "0.915");
        assert_eq!(positional("-1.25e2"), "-125");
        assert_eq!(positional("1.5e0"), "1.5");
        assert_eq!(positional("1.5e3"), "1500");
        assert_eq!(positional("2.0e-70"), "2.0e-70");
        assert_eq!(positional("0"), "0");
    }
}
