//! Command-line front end. The `qline` binary is a thin wrapper over [`main_with_args`].

use std::ffi::OsString;
use std::fs;
use std::io::{self, Write};
use std::path::{Path, PathBuf};
use std::sync::Arc;

use clap::{Parser, Subcommand, ValueEnum};
use serde_json::json;

use crate::analysis::{analyze, AnalysisOptions};
use crate::error::Error;
use crate::families::{make_t, make_z, TParams, ZParams};
use crate::flexline::segre_compose;
use crate::galois::{FieldCtx, Fq};
use crate::mpoly::{parse_poly, MPoly, Mono, PolyRing};
use crate::verify::{verify_paper, Status};

pub const EXIT_OK: i32 = 0;
pub const EXIT_USAGE: i32 = 1;
pub const EXIT_MATH: i32 = 2;
pub const EXIT_VERIFY: i32 = 3;

#[derive(Parser, Debug)]
#[command(
    name = "qline",
    version,
    about = "Quartic surfaces containing a line, over finite fields"
)]
pub struct Cli {
    /// Characteristic of the base field.
    #[arg(long, global = true, default_value_t = 10007)]
    pub prime: u64,
    /// Seed for every random choice (extension moduli, generic coordinates).
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Write the JSON result here instead of stdout.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Subcommand, Debug)]
pub enum Command {
    /// Full analysis of a quartic and a line on it.
    Analyze {
        /// Quartic in x1..x4, or a file containing it.
        #[arg(long)]
        quartic: String,
        /// Two linear forms `l1;l2` cutting out the line.
        #[arg(long, default_value = "x3;x4")]
        line: String,
        /// Include per-stage wall-clock timings (makes output nondeterministic).
        #[arg(long)]
        timings: bool,
    },
    /// Build `S + L1·L2·L3·L4` from a ruled quartic and four planes through `V(x3, x4)`.
    Compose {
        /// Ruled quartic, or a file containing it.
        #[arg(long)]
        ruled: String,
        /// Four linear forms separated by `;`.
        #[arg(long)]
        planes: String,
        /// Also analyze the result.
        #[arg(long)]
        analyze: bool,
    },
    /// Build and analyze a member of one of the explicit families.
    Family {
        #[arg(long, value_enum)]
        name: FamilyName,
        #[arg(long)]
        q: Option<String>,
        #[arg(long)]
        g: Option<String>,
        #[arg(long)]
        a: Option<String>,
        #[arg(long)]
        b: Option<String>,
        #[arg(long)]
        c: Option<String>,
    },
    /// Run the acceptance suite and print one row per criterion.
    VerifyPaper,
}

#[derive(Clone, Copy, Debug, ValueEnum)]
pub enum FamilyName {
    #[value(name = "Z", alias = "z")]
    Z,
    #[value(name = "T", alias = "t")]
    T,
}

enum Failure {
    Usage(String),
    Math(Error),
    Verify(String),
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        Failure::Math(e)
    }
}

fn usage(e: Error) -> Failure {
    Failure::Usage(e.to_string())
}

fn text_or_file(s: &str) -> Result<String, Failure> {
    let p = Path::new(s);
    if p.is_file() {
        fs::read_to_string(p).map_err(|e| Failure::Usage(format!("{s}: {e}")))
    } else {
        Ok(s.to_string())
    }
}

fn poly(text: &str, ctx: &Arc<FieldCtx>) -> Result<MPoly, Failure> {
    parse_poly(text.trim(), &PolyRing::space(ctx)).map_err(usage)
}

fn forms(text: &str, n: usize, ctx: &Arc<FieldCtx>) -> Result<Vec<MPoly>, Failure> {
    let parts: Vec<&str> = text
        .split(';')
        .map(str::trim)
        .filter(|s| !s.is_empty())
        .collect();
    if parts.len() != n {
        return Err(Failure::Usage(format!(
            "expected {n} forms separated by ';', got {}",
            parts.len()
        )));
    }
    parts.iter().map(|p| poly(p, ctx)).collect()
}

fn scalar(text: &Option<String>, name: &str, ctx: &Arc<FieldCtx>) -> Result<Fq, Failure> {
    let t = text
        .as_deref()
        .ok_or_else(|| Failure::Usage(format!("--{name} is required")))?;
    let f = poly(t, ctx)?;
    if !f.is_constant() {
        return Err(Failure::Usage(format!("--{name} must be a field element")));
    }
    Ok(f.coeff(&Mono::one()))
}

fn required(text: &Option<String>, name: &str, ctx: &Arc<FieldCtx>) -> Result<MPoly, Failure> {
    poly(
        text.as_deref()
            .ok_or_else(|| Failure::Usage(format!("--{name} is required")))?,
        ctx,
    )
}

fn to_json<T: serde::Serialize>(v: &T) -> String {
    serde_json::to_string_pretty(v).expect("report serializes")
}

fn analysis_json(f: &MPoly, l1: &MPoly, l2: &MPoly, timings: bool) -> Result<String, Failure> {
    let opts = AnalysisOptions {
        timings,
        ..AnalysisOptions::default()
    };
    Ok(to_json(&analyze(f, l1, l2, &opts)?.report()))
}

fn execute(cli: &Cli) -> Result<String, Failure> {
    if let Command::VerifyPaper = cli.command {
        let rows = verify_paper(cli.prime, cli.seed).map_err(usage)?;
        for r in &rows {
            eprintln!("{r}");
        }
        let out = to_json(
            &json!({ "schema": 1, "prime": cli.prime, "seed": cli.seed, "criteria": rows }),
        );
        if rows.iter().any(|r| r.status == Status::Fail) {
            return Err(Failure::Verify(out));
        }
        return Ok(out);
    }
    let ctx = FieldCtx::prime_seeded(cli.prime, cli.seed).map_err(usage)?;
    match &cli.command {
        Command::Analyze {
            quartic,
            line,
            timings,
        } => {
            let f = poly(&text_or_file(quartic)?, &ctx)?;
            let l = forms(line, 2, &ctx)?;
            analysis_json(&f, &l[0], &l[1], *timings)
        }
        Command::Compose {
            ruled,
            planes,
            analyze,
        } => {
            let s = poly(&text_or_file(ruled)?, &ctx)?;
            let planes = forms(planes, 4, &ctx)?;
            let x = segre_compose(&s, &planes)?;
            if *analyze {
                let l = forms("x3;x4", 2, &ctx)?;
                return analysis_json(x.f(), &l[0], &l[1], false);
            }
            Ok(to_json(
                &json!({ "schema": 1, "quartic": x.f().to_string(), "second_kind": true }),
            ))
        }
        Command::Family {
            name,
            q,
            g,
            a,
            b,
            c,
        } => {
            let x = match name {
                FamilyName::Z => make_z(&ZParams {
                    q: required(q, "q", &ctx)?,
                    g: required(g, "g", &ctx)?,
                })?,
                FamilyName::T => make_t(&TParams {
                    a: scalar(a, "a", &ctx)?,
                    b: scalar(b, "b", &ctx)?,
                    c: scalar(c, "c", &ctx)?,
                    g: required(g, "g", &ctx)?,
                })?,
            };
            let l = forms("x3;x4", 2, &ctx)?;
            analysis_json(x.f(), &l[0], &l[1], false)
        }
        Command::VerifyPaper => unreachable!(),
    }
}

fn emit(out: &Option<PathBuf>, text: &str) -> Result<(), String> {
    match out {
        Some(p) => fs::write(p, format!("{text}\n")).map_err(|e| format!("{}: {e}", p.display())),
        None => {
            let _ = writeln!(io::stdout().lock(), "{text}");
            Ok(())
        }
    }
}

/// Parses `args` (including the program name), runs the command and returns
/// the process exit code.
pub fn main_with_args<I, T>(args: I) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let _ = e.print();
            return code;
        }
    };
    let (text, code) = match execute(&cli) {
        Ok(t) => (t, EXIT_OK),
        Err(Failure::Usage(m)) => {
            eprintln!("error: {m}");
            return EXIT_USAGE;
        }
        Err(Failure::Math(e)) => {
            eprintln!("error: {e}");
            return EXIT_MATH;
        }
        Err(Failure::Verify(t)) => (t, EXIT_VERIFY),
    };
    if let Err(m) = emit(&cli.out, &text) {
        eprintln!("error: {m}");
        return EXIT_USAGE;
    }
    code
}
