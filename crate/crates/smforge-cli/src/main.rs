// SPDX-License-Identifier: Apache-2.0
//! `smforge`: command-line front end for the certified pipelines.
//!
//! Exit codes: 0 on full success, 1 when any outcome is inconclusive or a
//! computation fails, 2 on usage and validation errors.

mod word;

use clap::{Args, Parser, Subcommand};
use serde_json::{json, Value};
use smforge::elimination::{self, EliminationError, EliminationReport, Outcome, Summary};
use smforge::forms::{enumerate_forms, Discriminant};
use smforge::modular::{self, class_polynomial, class_polynomial_cached, CACHE_ENV};
use smforge::numberfield::{
    mult_independent, Family, FieldElement, GaloisFrame, Independence, IndependenceProof,
    NumberField,
};
use smforge::y0::{on_y02, Surd};
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use thiserror::Error;
use word::{ratio_text, ElementSpec};

#[derive(Debug, Parser)]
#[command(
    name = "smforge",
    version,
    about = "Certified computations with singular moduli"
)]
struct Cli {
    #[command(flatten)]
    config: RunConfig,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Args)]
struct RunConfig {
    /// Emit JSON instead of the plain-text summary.
    #[arg(long, global = true)]
    json: bool,
    /// Working precision in bits; raised automatically where needed.
    #[arg(long, global = true, default_value_t = 256, value_parser = clap::value_parser!(u32).range(64..))]
    prec: u32,
    /// Class-polynomial cache directory. Overrides SMFORGE_CACHE.
    #[arg(long, global = true)]
    cache: Option<PathBuf>,
    /// Directory receiving one JSON file per elimination report.
    #[arg(long, global = true)]
    outdir: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Reduced forms of a discriminant.
    Forms {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Hilbert class polynomial of a discriminant.
    Hilbert {
        #[arg(long, allow_hyphen_values = true)]
        disc: i64,
    },
    /// Decide whether `(j(τ), j(τ′))` lies on Y₀(2).
    Y0 {
        #[arg(long, allow_hyphen_values = true)]
        tau: String,
        #[arg(long, allow_hyphen_values = true)]
        tau2: String,
    },
    /// Multiplicative independence of two elements built from singular moduli.
    Indep {
        #[arg(long, allow_hyphen_values = true)]
        alpha: String,
        #[arg(long, allow_hyphen_values = true)]
        beta: String,
    },
    /// Run an elimination pipeline.
    Eliminate {
        #[command(subcommand)]
        which: Pipeline,
    },
    /// Run every pipeline and compare with the published survivor list.
    Verify {
        #[command(subcommand)]
        what: VerifyTarget,
    },
}

#[derive(Debug, Subcommand)]
enum Pipeline {
    /// Linear equations `A x^m + B y^n + C = 0`.
    Linear {
        /// Smallest `|Δ′|` considered.
        #[arg(long)]
        min: Option<i64>,
        /// Largest `|Δ′|` considered; values of 1024 or more include the
        /// uniform family argument.
        #[arg(long)]
        max: Option<i64>,
    },
    /// Multiplicative relations `x^m y^n ∈ Q^×`.
    Mult,
}

#[derive(Debug, Subcommand)]
enum VerifyTarget {
    Paper,
}

#[derive(Debug, Error)]
enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Runtime(String),
}

impl CliError {
    fn code(&self) -> u8 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Runtime(_) => 1,
        }
    }
}

impl From<EliminationError> for CliError {
    fn from(e: EliminationError) -> CliError {
        match e {
            EliminationError::Precondition(m) => CliError::Usage(m),
            other => CliError::Runtime(other.to_string()),
        }
    }
}

fn discriminant(value: i64) -> Result<Discriminant, CliError> {
    Discriminant::new(value).map_err(|e| CliError::Usage(e.to_string()))
}

fn print_json(v: &impl serde::Serialize) -> Result<(), CliError> {
    let text = serde_json::to_string_pretty(v).map_err(|e| CliError::Runtime(e.to_string()))?;
    let mut out = std::io::stdout().lock();
    match writeln!(out, "{text}") {
        // A closed pipe (`smforge ... | head`) is not a failure of the run.
        Err(e) if e.kind() == std::io::ErrorKind::BrokenPipe => Ok(()),
        other => other.map_err(|e| CliError::Runtime(e.to_string())),
    }
}

/// Write `report` to `<dir>/<case>_<Δ>_<Δ′>.json` through a temporary file
/// in the same directory, so readers never see a partial file.
fn emit_report(report: &EliminationReport, dir: &Path) -> Result<PathBuf, CliError> {
    let io = |e: std::io::Error| CliError::Runtime(format!("{}: {e}", dir.display()));
    std::fs::create_dir_all(dir).map_err(io)?;
    let path = dir.join(report.file_name());
    let mut body =
        serde_json::to_vec_pretty(report).map_err(|e| CliError::Runtime(e.to_string()))?;
    body.push(b'\n');
    let mut tmp = tempfile::NamedTempFile::new_in(dir).map_err(io)?;
    tmp.write_all(&body).map_err(io)?;
    tmp.persist(&path).map_err(|e| io(e.error))?;
    Ok(path)
}

fn forms(cfg: &RunConfig, disc: i64) -> Result<u8, CliError> {
    let list = enumerate_forms(discriminant(disc)?);
    if cfg.json {
        print_json(&list)?;
    } else {
        for f in &list {
            println!("{} {} {}", f.a, f.b, f.c);
        }
    }
    Ok(0)
}

fn hilbert(cfg: &RunConfig, disc: i64) -> Result<u8, CliError> {
    let d = discriminant(disc)?;
    let poly = if modular::cache_dir().is_some() {
        class_polynomial_cached(d, None)
    } else {
        class_polynomial(d, cfg.prec)
    }
    .map_err(|e| CliError::Runtime(e.to_string()))?;
    if cfg.json {
        print_json(&poly)?;
    } else {
        print!("{}", poly.to_cache_string());
    }
    Ok(0)
}

fn y0(cfg: &RunConfig, tau: &str, tau2: &str) -> Result<u8, CliError> {
    let parse = |s: &str| {
        s.parse::<Surd>()
            .map_err(|e| CliError::Usage(e.to_string()))
    };
    let (t, t2) = (parse(tau)?, parse(tau2)?);
    let witness = on_y02(&t, &t2);
    if cfg.json {
        print_json(&json!({ "on_y02": witness.is_some(), "witness": witness }))?;
    } else {
        match witness {
            Some(w) => println!("on Y0(2): {w:?}"),
            None => println!("not on Y0(2)"),
        }
    }
    Ok(0)
}

/// Build both elements in one number field. The first discriminant named
/// supplies the `x` family and the second, if any, the `y` family.
fn indep_elements(
    alpha: &ElementSpec,
    beta: &ElementSpec,
) -> Result<(FieldElement, FieldElement), CliError> {
    let mut discs = alpha.discs();
    for d in beta.discs() {
        if !discs.contains(&d) {
            discs.push(d);
        }
    }
    if discs.len() > 2 {
        return Err(CliError::Usage(
            "the two elements involve more than two discriminants".into(),
        ));
    }
    let ds = discs
        .iter()
        .map(|&d| discriminant(d))
        .collect::<Result<Vec<_>, _>>()?;
    let runtime = |e: smforge::numberfield::FieldError| CliError::Runtime(e.to_string());
    let frame = match ds.as_slice() {
        [] => None,
        [d] => Some(GaloisFrame::single(*d)),
        [dx, dy] => Some(elimination::pair_frame(*dx, *dy)?),
        _ => unreachable!(),
    };
    let build = |spec: &ElementSpec,
                 field_and_labels: Option<&(std::sync::Arc<NumberField>, Vec<_>)>| {
        let Some((field, labels)) = field_and_labels else {
            let q = NumberField::rationals();
            return Ok(FieldElement::from_rational(&q, spec.constant.clone()));
        };
        let frame = frame.as_ref().expect("letters imply a frame");
        let mut word = Vec::new();
        for l in &spec.letters {
            let fam = if l.disc == discs[0] {
                Family::X
            } else {
                Family::Y
            };
            let h = if fam == Family::X {
                frame.x.group.order()
            } else {
                frame.y.group.order()
            };
            if l.index >= h {
                return Err(CliError::Usage(format!(
                    "j({},{}): index must be below h = {h}",
                    l.disc, l.index
                )));
            }
            word.push((fam, l.index, l.exp));
        }
        Ok(frame
            .exact_word(field, labels, &word)
            .map_err(runtime)?
            .scale(&spec.constant))
    };
    let exact = frame
        .as_ref()
        .map(|f| f.exact_field())
        .transpose()
        .map_err(runtime)?;
    Ok((build(alpha, exact.as_ref())?, build(beta, exact.as_ref())?))
}

fn indep(cfg: &RunConfig, alpha: &str, beta: &str) -> Result<u8, CliError> {
    let parse = |s: &str| {
        s.parse::<ElementSpec>()
            .map_err(|e| CliError::Usage(e.to_string()))
    };
    let (a, b) = (parse(alpha)?, parse(beta)?);
    let (x, y) = indep_elements(&a, &b)?;
    let verdict = mult_independent(&x, &y).map_err(|e| CliError::Runtime(e.to_string()))?;
    let mut out = json!({
        "status": verdict.status(),
        "prime": Value::Null,
        "valuations": Value::Null,
        "ratio": Value::Null,
        "zeta_checked": false,
    });
    match &verdict {
        Independence::Independent(IndependenceProof::CommonPrime { certificate, k, l }) => {
            out["prime"] = json!(certificate.prime);
            out["valuations"] = json!([certificate.v_alpha, certificate.v_beta]);
            out["ratio"] = json!(ratio_text(*k, *l));
            out["zeta_checked"] = json!(true);
        }
        Independence::Independent(IndependenceProof::OneSidedPrime {
            prime,
            v_alpha,
            v_beta,
            ..
        }) => {
            out["prime"] = json!(prime);
            out["valuations"] = json!([v_alpha, v_beta]);
            out["zeta_checked"] = json!(true);
        }
        Independence::Independent(IndependenceProof::LogDeterminant(ld)) => {
            out["log_determinant"] = json!([ld.lower, ld.upper]);
        }
        Independence::Dependent(dep) => {
            out["ratio"] = json!(ratio_text(dep.k, dep.l));
            out["zeta_checked"] = json!(true);
            out["zeta_order"] = json!(dep.zeta_order);
        }
        Independence::Inconclusive(why) => out["reason"] = json!(why),
    }
    if cfg.json {
        print_json(&out)?;
    } else {
        println!("{}", verdict.status());
        for key in ["prime", "valuations", "ratio", "zeta_order", "reason"] {
            if let Some(v) = out.get(key).filter(|v| !v.is_null()) {
                println!("  {key}: {v}");
            }
        }
    }
    Ok(match verdict {
        Independence::Inconclusive(_) => 1,
        _ => 0,
    })
}

fn summary_lines(label: &str, s: &Summary) {
    println!("{label}: {} eliminated", s.eliminated);
    let pairs = |v: &[[i64; 2]]| {
        v.iter()
            .map(|[a, b]| format!("({a},{b})"))
            .collect::<Vec<_>>()
            .join(", ")
    };
    println!(
        "  survivors: {}",
        if s.survivors.is_empty() {
            "none".into()
        } else {
            pairs(&s.survivors)
        }
    );
    if !s.inconclusive.is_empty() {
        println!("  inconclusive: {}", pairs(&s.inconclusive));
    }
    for e in &s.errors {
        println!("  error: {e}");
    }
}

/// Persist and print a batch; returns its summary.
fn publish(
    cfg: &RunConfig,
    label: &str,
    results: &[Result<EliminationReport, EliminationError>],
    quiet: bool,
) -> Result<Summary, CliError> {
    let reports: Vec<&EliminationReport> = results.iter().filter_map(|r| r.as_ref().ok()).collect();
    if let Some(dir) = &cfg.outdir {
        for r in &reports {
            emit_report(r, dir)?;
        }
    }
    let summary = Summary::of(results);
    if quiet {
        return Ok(summary);
    }
    if cfg.json {
        print_json(&reports)?;
        for e in results.iter().filter_map(|r| r.as_ref().err()) {
            eprintln!("error: {e}");
        }
    } else {
        for r in &reports {
            let tag = match r.outcome {
                Outcome::Eliminated => "eliminated",
                Outcome::Survivor => "survivor",
                Outcome::Inconclusive => "inconclusive",
            };
            println!(
                "{:<24} {:>6} {:>6}  {tag}",
                r.case.name(),
                r.discs[0],
                r.discs[1]
            );
        }
        summary_lines(label, &summary);
    }
    Ok(summary)
}

fn eliminate(cfg: &RunConfig, which: &Pipeline) -> Result<u8, CliError> {
    let summary = match which {
        Pipeline::Linear { min, max } => {
            let (min, max) = (min.unwrap_or(0), max.unwrap_or(i64::MAX));
            if min < 0 || max < min {
                return Err(CliError::Usage(format!(
                    "need 0 ≤ --min ≤ --max, got {min} and {max}"
                )));
            }
            publish(
                cfg,
                "linear",
                &elimination::eliminate_linear(min, max, cfg.prec),
                false,
            )?
        }
        Pipeline::Mult => publish(cfg, "mult", &elimination::eliminate_mult(cfg.prec), false)?,
    };
    Ok(if summary.complete() { 0 } else { 1 })
}

/// Survivors of the linear equation allowed by the main theorem.
const LINEAR_SURVIVORS: [[i64; 2]; 2] = [[-92, -23], [-124, -31]];

fn verify_paper(cfg: &RunConfig) -> Result<u8, CliError> {
    let linear = publish(
        cfg,
        "linear",
        &elimination::eliminate_linear(0, i64::MAX, cfg.prec),
        true,
    )?;
    let mult = publish(cfg, "mult", &elimination::eliminate_mult(cfg.prec), true)?;
    let mut found = linear.survivors.clone();
    found.sort_unstable();
    let mut expected = LINEAR_SURVIVORS.to_vec();
    expected.sort_unstable();
    let matches = found == expected && mult.survivors.is_empty();
    let complete = linear.complete() && mult.complete();
    if cfg.json {
        print_json(&json!({
            "linear": linear,
            "mult": mult,
            "complete": complete,
            "matches_theorem": matches,
        }))?;
    } else {
        summary_lines("linear", &linear);
        summary_lines("mult", &mult);
        println!(
            "survivors {} the theorem; {}",
            if matches { "match" } else { "do not match" },
            if complete {
                "every case certified"
            } else {
                "some cases inconclusive"
            }
        );
    }
    Ok(if complete && matches { 0 } else { 1 })
}

fn run(cli: &Cli) -> Result<u8, CliError> {
    let cfg = &cli.config;
    match &cli.command {
        Command::Forms { disc } => forms(cfg, *disc),
        Command::Hilbert { disc } => hilbert(cfg, *disc),
        Command::Y0 { tau, tau2 } => y0(cfg, tau, tau2),
        Command::Indep { alpha, beta } => indep(cfg, alpha, beta),
        Command::Eliminate { which } => eliminate(cfg, which),
        Command::Verify {
            what: VerifyTarget::Paper,
        } => verify_paper(cfg),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    // The library reads the cache location from the environment, so the
    // flag is applied there before any work starts.
    if let Some(dir) = &cli.config.cache {
        std::env::set_var(CACHE_ENV, dir);
    }
    match run(&cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("smforge: {e}");
            ExitCode::from(e.code())
        }
    }
}
