//! The `hilbert-lambda` command line.
//!
//! Exit codes: 0 Hilbert polynomial / success, 1 not a Hilbert polynomial,
//! 2 usage or parse error. In stdin batch mode the exit code is the largest
//! per-line code and output lines follow input order.

mod args;

use std::ffi::OsString;
use std::io::{self, BufRead, Write};

use clap::Parser;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::ToPrimitive;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde_json::{json, Value};

pub use args::{CliConfig, Command, EngineKind, Format};

use crate::benchmark::compare_engines;
use crate::exec::{map_ordered, Execution};
use crate::partition::{build_hilbert, random_partition, Partition};
use crate::polynomial::{parse_polynomial, ParseError};
use crate::recovery::{DeltaEngine, NaiveEngine, RecoveryError, RecoveryOutcome, TraceStep};

pub const EXIT_HILBERT: i32 = 0;
pub const EXIT_NOT_HILBERT: i32 = 1;
pub const EXIT_USAGE: i32 = 2;

/// Runs the CLI with explicit streams and returns the process exit code.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let config = match CliConfig::try_parse_from(args) {
        Ok(config) => config,
        Err(e) => {
            let rendered = e.render().to_string();
            return if e.use_stderr() {
                let _ = write!(err, "{rendered}");
                EXIT_USAGE
            } else {
                let _ = write!(out, "{rendered}");
                EXIT_HILBERT
            };
        }
    };
    let result = match &config.command {
        Command::Recover { polynomial } => cmd_recover(&config, polynomial.as_deref(), stdin, out, err),
        Command::Check { polynomial } => cmd_check(&config, polynomial.as_deref(), stdin, out, err),
        Command::Build { partition } => cmd_build(&config, partition, out, err),
        Command::Random {
            max_part,
            max_len,
            count,
        } => cmd_random(&config, *max_part as usize, *max_len as usize, *count, out, err),
        Command::Bench { degree, reps } => cmd_bench(&config, *degree as usize, *reps as usize, out, err),
    };
    result.unwrap_or_else(|e| {
        let _ = writeln!(err, "error: {e}");
        EXIT_USAGE
    })
}

#[derive(Debug)]
enum ItemError {
    Parse(ParseError),
    Recovery(RecoveryError),
}

#[derive(Debug)]
struct Evaluated {
    input: String,
    result: Result<(RecoveryOutcome, Vec<TraceStep>), ItemError>,
}

impl Evaluated {
    fn exit_code(&self) -> i32 {
        match &self.result {
            Ok((outcome, _)) if outcome.is_hilbert() => EXIT_HILBERT,
            Ok(_) => EXIT_NOT_HILBERT,
            Err(_) => EXIT_USAGE,
        }
    }

    fn error_message(&self) -> Option<String> {
        match &self.result {
            Err(ItemError::Parse(e)) => Some(e.to_string()),
            Err(ItemError::Recovery(e)) => Some(e.to_string()),
            Ok(_) => None,
        }
    }
}

fn evaluate(config: &CliConfig, input: &str) -> Evaluated {
    let result = parse_polynomial(input)
        .map_err(ItemError::Parse)
        .and_then(|p| match config.engine {
            EngineKind::Delta => {
                let engine = DeltaEngine {
                    trace: config.verbose,
                    ..DeltaEngine::default()
                };
                engine
                    .run(&p)
                    .map(|report| (report.outcome, report.trace))
                    .map_err(ItemError::Recovery)
            }
            EngineKind::Naive => Ok((NaiveEngine::new(config.r_max as usize).run(&p), Vec::new())),
        });
    Evaluated {
        input: input.to_string(),
        result,
    }
}

/// Polynomials to process: the argument, or stdin lines when absent or "-".
fn inputs(arg: Option<&str>, stdin: &mut dyn BufRead) -> io::Result<(Vec<String>, bool)> {
    match arg {
        Some(text) if text != "-" => Ok((vec![text.to_string()], false)),
        _ => {
            let mut lines = Vec::new();
            for line in stdin.lines() {
                let line = line?;
                if !line.trim().is_empty() {
                    lines.push(line.trim().to_string());
                }
            }
            Ok((lines, true))
        }
    }
}

fn ambient_note(config: &CliConfig, lambda: &Partition) -> Option<String> {
    let n = config.ambient?;
    Some(match lambda.largest() {
        Some(top) if top as u64 > n => format!("ambient n = {n}: λ_1 = {top} exceeds n"),
        Some(top) => format!("ambient n = {n}: λ_1 = {top} <= n"),
        None => format!("ambient n = {n}: empty λ"),
    })
}

fn summary(config: &CliConfig, item: &Evaluated) -> String {
    match &item.result {
        Ok((RecoveryOutcome::Success { lambda, .. }, _)) => match ambient_note(config, lambda) {
            Some(note) => format!("λ = {lambda}\t{note}"),
            None => format!("λ = {lambda}"),
        },
        Ok((RecoveryOutcome::NotHilbert(reason), _)) => format!("not a Hilbert polynomial: {reason}"),
        Err(_) => format!("error: {}", item.error_message().unwrap_or_default()),
    }
}

fn bigint_json(v: &BigInt) -> Value {
    match v.to_i64() {
        Some(small) => json!(small),
        None => json!(v.to_string()),
    }
}

fn rational_json(v: &BigRational) -> String {
    format!("{}/{}", v.numer(), v.denom())
}

fn lambda_json(lambda: &Partition) -> (Value, Value) {
    let exp: Vec<Value> = lambda
        .to_exponent_form()
        .pairs()
        .iter()
        .map(|&(v, m)| json!([v, m]))
        .collect();
    (json!(lambda.parts()), Value::Array(exp))
}

fn recover_json(config: &CliConfig, item: &Evaluated) -> Value {
    let mut record = json!({
        "input": item.input,
        "hilbert": false,
        "lambda_flat": [],
        "lambda_exp": [],
        "reason": null,
    });
    match &item.result {
        Ok((outcome, trace)) => {
            if let Some(lambda) = outcome.partition() {
                let (flat, exp) = lambda_json(lambda);
                record["hilbert"] = json!(true);
                record["lambda_flat"] = flat;
                record["lambda_exp"] = exp;
                record["warnings"] = json!(outcome.warnings());
                if let Some(n) = config.ambient {
                    record["ambient"] = json!(n);
                    record["ambient_ok"] = json!(lambda.largest().is_none_or(|top| top as u64 <= n));
                }
            }
            if let Some(reason) = outcome.reason() {
                record["reason"] = json!(reason.to_string());
            }
            if config.verbose && config.engine == EngineKind::Delta {
                let steps: Vec<Value> = trace
                    .iter()
                    .map(|t| json!({"m": t.m, "r": bigint_json(&t.r), "s": t.s, "e": t.e}))
                    .collect();
                record["trace"] = Value::Array(steps);
            }
        }
        Err(_) => {
            record["reason"] = json!(item.error_message());
            record["error"] = json!(true);
        }
    }
    record
}

fn report_single_error(item: &Evaluated, err: &mut dyn Write) -> io::Result<()> {
    match &item.result {
        Err(ItemError::Parse(e)) => {
            writeln!(err, "error: {e}")?;
            for line in e.caret(&item.input).lines() {
                writeln!(err, "  {line}")?;
            }
        }
        Err(ItemError::Recovery(e)) => writeln!(err, "error: {e}")?,
        Ok(_) => {}
    }
    Ok(())
}

fn cmd_recover(
    config: &CliConfig,
    arg: Option<&str>,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let (lines, batch) = inputs(arg, stdin)?;
    let items = map_ordered(&lines, Execution::Parallel, |line| evaluate(config, line));
    for item in &items {
        match config.format {
            Format::Json => writeln!(out, "{}", recover_json(config, item))?,
            Format::Text if batch => writeln!(out, "{}\t{}", item.input, summary(config, item))?,
            Format::Text => {
                if let Ok((outcome, trace)) = &item.result {
                    if config.verbose {
                        for (k, t) in trace.iter().enumerate() {
                            let residual: Vec<String> = t.residual.iter().map(ToString::to_string).collect();
                            writeln!(
                                out,
                                "pass {}: m = {}, r = {}, s = {}, e = {}, residual = ({})",
                                k + 1,
                                t.m,
                                t.r,
                                t.s,
                                t.e,
                                residual.join(", ")
                            )?;
                        }
                    }
                    for w in outcome.warnings() {
                        writeln!(err, "warning: {w}")?;
                    }
                    if let Some(lambda) = outcome.partition() {
                        writeln!(out, "λ = {lambda}")?;
                        if let Some(note) = ambient_note(config, lambda) {
                            writeln!(out, "{note}")?;
                        }
                    } else {
                        writeln!(out, "{}", summary(config, item))?;
                    }
                } else {
                    report_single_error(item, err)?;
                }
            }
        }
    }
    Ok(items.iter().map(Evaluated::exit_code).max().unwrap_or(EXIT_HILBERT))
}

fn cmd_check(
    config: &CliConfig,
    arg: Option<&str>,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let (lines, batch) = inputs(arg, stdin)?;
    let items = map_ordered(&lines, Execution::Parallel, |line| evaluate(config, line));
    for item in &items {
        let status = match item.exit_code() {
            EXIT_HILBERT => "hilbert",
            EXIT_NOT_HILBERT => "not-hilbert",
            _ => "error",
        };
        match config.format {
            Format::Json if batch || config.verbose => {
                let reason = item
                    .result
                    .as_ref()
                    .ok()
                    .and_then(|(o, _)| o.reason().map(ToString::to_string))
                    .or_else(|| item.error_message());
                writeln!(out, "{}", json!({"input": item.input, "hilbert": item.exit_code() == 0, "reason": reason}))?;
            }
            Format::Text if batch => writeln!(out, "{}\t{status}", item.input)?,
            Format::Text if config.verbose => writeln!(out, "{}", summary(config, item))?,
            _ => {}
        }
        if !batch {
            report_single_error(item, err)?;
        }
    }
    Ok(items.iter().map(Evaluated::exit_code).max().unwrap_or(EXIT_HILBERT))
}

fn cmd_build(config: &CliConfig, text: &str, out: &mut dyn Write, err: &mut dyn Write) -> io::Result<i32> {
    let lambda: Partition = match text.parse() {
        Ok(lambda) => lambda,
        Err(e) => {
            writeln!(err, "error: invalid partition {text:?}: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    let p = build_hilbert(&lambda);
    match config.format {
        Format::Text => writeln!(out, "{p}")?,
        Format::Json => {
            let (flat, exp) = lambda_json(&lambda);
            let coeffs: Vec<String> = p.coeffs().iter().map(rational_json).collect();
            writeln!(
                out,
                "{}",
                json!({
                    "lambda_flat": flat,
                    "lambda_exp": exp,
                    "polynomial": p.to_string(),
                    "coefficients": coeffs,
                })
            )?;
        }
    }
    Ok(EXIT_HILBERT)
}

fn cmd_random(
    config: &CliConfig,
    max_part: usize,
    max_len: usize,
    count: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    let seed = config.seed.unwrap_or_else(rand::random);
    if config.verbose {
        writeln!(err, "seed: {seed}")?;
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..count {
        let lambda = match random_partition(&mut rng, max_part, max_len) {
            Ok(lambda) => lambda,
            Err(e) => {
                writeln!(err, "error: {e}")?;
                return Ok(EXIT_USAGE);
            }
        };
        let p = build_hilbert(&lambda);
        match config.format {
            Format::Text => writeln!(out, "λ = {lambda}\tp = {p}")?,
            Format::Json => {
                let (flat, exp) = lambda_json(&lambda);
                writeln!(
                    out,
                    "{}",
                    json!({"seed": seed, "lambda_flat": flat, "lambda_exp": exp, "polynomial": p.to_string()})
                )?;
            }
        }
    }
    Ok(EXIT_HILBERT)
}

fn cmd_bench(
    config: &CliConfig,
    degree: usize,
    reps: usize,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> io::Result<i32> {
    // sequential naive engine keeps the timings comparable
    let cmp = match compare_engines(degree, reps, Execution::Sequential) {
        Ok(cmp) => cmp,
        Err(e) => {
            writeln!(err, "error: {e}")?;
            return Ok(EXIT_USAGE);
        }
    };
    match config.format {
        Format::Text => {
            writeln!(out, "λ = {}", cmp.lambda)?;
            writeln!(out, "p = {}", cmp.polynomial)?;
            writeln!(out, "delta: mean {:?} over {} reps", cmp.delta_mean, cmp.reps)?;
            writeln!(
                out,
                "naive: mean {:?} over {} reps (r-max {})",
                cmp.naive_mean, cmp.reps, cmp.r_max
            )?;
            writeln!(out, "naive/delta ratio: {:.2}", cmp.ratio())?;
        }
        Format::Json => writeln!(
            out,
            "{}",
            json!({
                "degree": cmp.degree,
                "reps": cmp.reps,
                "lambda": cmp.lambda.to_string(),
                "polynomial": cmp.polynomial.to_string(),
                "delta_mean_ns": cmp.delta_mean.as_nanos() as u64,
                "naive_mean_ns": cmp.naive_mean.as_nanos() as u64,
                "r_max": cmp.r_max,
                "ratio": cmp.ratio(),
                "agree": true,
            })
        )?,
    }
    Ok(EXIT_HILBERT)
}
