//! Command-line front end.
//!
//! Exit codes: 0 success, 1 a check failed, 2 bad input or usage.

use std::ffi::OsString;
use std::fmt;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use clap::{Parser, Subcommand, ValueEnum};
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{Signed, Zero};
use serde_json::json;

use crate::analysis::{
    genus_and_puncture, growth_table, index_sum_check, singularity_indices, verify, AnalysisError,
    Suite, GROWTH_CSV_HEADER,
};
use crate::document::{format_version_from_env, MapDocument};
use crate::families::{Family, FamilySpec};
use crate::graphmap::GraphError;
use crate::spectral::transition_matrix;

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILED: u8 = 1;
pub const EXIT_USAGE: u8 = 2;

#[derive(Debug, Parser)]
#[command(name = "trackrate", version, about = "Train track maps with growth rates tending to 1")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Write a family member as a JSON document.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        param: usize,
        #[arg(long)]
        out: PathBuf,
    },
    /// Run checks on a JSON document.
    Verify {
        path: PathBuf,
        #[arg(long, value_enum, default_value = "all")]
        suite: SuiteArg,
    },
    /// Characteristic polynomial of the transition matrix, constant term first.
    Charpoly { path: PathBuf },
    /// Certified growth rates of the converging family.
    Growth {
        /// Inclusive range `A..B` with `1 <= A <= B`.
        #[arg(long)]
        k_range: KRange,
        /// Enclosure width, e.g. `1e-12`, `0.001` or `1/1000`.
        #[arg(long, default_value = "1e-12")]
        tol: Tolerance,
        #[arg(long, value_enum, default_value = "csv")]
        format: OutputFormat,
    },
    /// Singularity index at every vertex of a train track map.
    Indices { path: PathBuf },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    #[value(name = "brinkmann", alias = "converging")]
    Converging,
    Periodic,
    Pv,
}

impl From<FamilyArg> for Family {
    fn from(f: FamilyArg) -> Family {
        match f {
            FamilyArg::Converging => Family::Converging,
            FamilyArg::Periodic => Family::Periodic,
            FamilyArg::Pv => Family::Pv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SuiteArg {
    All,
    Traintrack,
    Primitive,
    Sigma,
    Indices,
    Charpoly,
}

impl From<SuiteArg> for Suite {
    fn from(s: SuiteArg) -> Suite {
        match s {
            SuiteArg::All => Suite::All,
            SuiteArg::Traintrack => Suite::TrainTrack,
            SuiteArg::Primitive => Suite::Primitive,
            SuiteArg::Sigma => Suite::Sigma,
            SuiteArg::Indices => Suite::Indices,
            SuiteArg::Charpoly => Suite::Charpoly,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum OutputFormat {
    Csv,
    Json,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct KRange {
    pub start: usize,
    pub end: usize,
}

impl FromStr for KRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let (a, b) = s.split_once("..").ok_or_else(|| format!("expected A..B, got `{s}`"))?;
        let parse = |t: &str| t.trim().parse::<usize>().map_err(|e| format!("`{t}`: {e}"));
        let (start, end) = (parse(a)?, parse(b)?);
        if start == 0 || start > end {
            return Err(format!("need 1 <= A <= B, got {start}..{end}"));
        }
        Ok(KRange { start, end })
    }
}

/// A positive exact rational written as a decimal, in scientific notation or as `p/q`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Tolerance(pub BigRational);

impl FromStr for Tolerance {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let value = parse_exact(s.trim()).ok_or_else(|| format!("not a number: `{s}`"))?;
        if !value.is_positive() {
            return Err(format!("tolerance must be positive, got `{s}`"));
        }
        Ok(Tolerance(value))
    }
}

fn parse_exact(s: &str) -> Option<BigRational> {
    if let Some((p, q)) = s.split_once('/') {
        let (p, q) = (p.parse::<BigInt>().ok()?, q.parse::<BigInt>().ok()?);
        return (!q.is_zero()).then(|| BigRational::new(p, q));
    }
    let (mantissa, exponent) = match s.find(['e', 'E']) {
        Some(i) => (&s[..i], s[i + 1..].parse::<i32>().ok()?),
        None => (s, 0),
    };
    let (int, frac) = mantissa.split_once('.').unwrap_or((mantissa, ""));
    let digits = format!("{int}{frac}");
    if digits.is_empty() || digits == "-" || digits == "+" {
        return None;
    }
    let n: BigInt = digits.parse().ok()?;
    let shift = exponent - i32::try_from(frac.len()).ok()?;
    let scale = num_traits::pow::pow(BigInt::from(10), shift.unsigned_abs() as usize);
    Some(if shift >= 0 { BigRational::from_integer(n * scale) } else { BigRational::new(n, scale) })
}

/// What went wrong, with the exit code it maps to.
#[derive(Debug)]
struct Failure {
    code: u8,
    message: String,
}

impl Failure {
    fn usage(message: impl fmt::Display) -> Self {
        Failure { code: EXIT_USAGE, message: message.to_string() }
    }

    fn check(message: impl fmt::Display) -> Self {
        Failure { code: EXIT_FAILED, message: message.to_string() }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> u8
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_USAGE } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() { err.write_all(text.as_bytes()) } else { out.write_all(text.as_bytes()) };
            return code;
        }
    };
    match execute(cli.command, out) {
        Ok(code) => code,
        Err(f) => {
            let _ = writeln!(err, "trackrate: {}", f.message);
            f.code
        }
    }
}

fn execute(command: Command, out: &mut dyn Write) -> Result<u8, Failure> {
    let format_version = format_version_from_env().map_err(Failure::usage)?;
    let io = |e: std::io::Error| Failure::usage(e);
    match command {
        Command::Generate { family, param, out: path } => {
            let spec = FamilySpec::new(family.into(), param).map_err(Failure::usage)?;
            let member = spec.build().map_err(Failure::usage)?;
            std::fs::write(&path, MapDocument::from_member(&member).to_json())
                .map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
            writeln!(out, "wrote {} ({} {param}, format {format_version})", path.display(), spec.family())
                .map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Verify { path, suite } => {
            let doc = load(&path)?;
            let report = verify(&doc.map, doc.boundary(), suite.into());
            write!(out, "{report}").map_err(io)?;
            let passed = report.passed();
            writeln!(out, "result: {}", if passed { "pass" } else { "fail" }).map_err(io)?;
            Ok(if passed { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Charpoly { path } => {
            let doc = load(&path)?;
            let chi = transition_matrix(&doc.map).char_poly();
            writeln!(out, "{}", chi.to_coefficient_list()).map_err(io)?;
            Ok(EXIT_OK)
        }
        Command::Growth { k_range, tol, format } => {
            let ks: Vec<usize> = (k_range.start..=k_range.end).collect();
            let table = growth_table(&ks, &tol.0).map_err(|e| match e {
                AnalysisError::ClosedFormMismatch(_) => Failure::check(e),
                other => Failure::usage(other),
            })?;
            match format {
                OutputFormat::Csv => {
                    writeln!(out, "{GROWTH_CSV_HEADER}").map_err(io)?;
                    for r in &table {
                        writeln!(out, "{}", r.csv_row()).map_err(io)?;
                    }
                }
                OutputFormat::Json => {
                    let rows: Vec<_> = table
                        .iter()
                        .map(|r| {
                            json!({
                                "k": r.k,
                                "lambda_lo": r.enclosure.lo().to_string(),
                                "lambda_hi": r.enclosure.hi().to_string(),
                                "residual": r.residual.to_string(),
                                "residual_lo": r.residual_lo.to_string(),
                                "residual_hi": r.residual_hi.to_string(),
                                "inverse_bound_ok": r.inverse_bound_ok,
                            })
                        })
                        .collect();
                    let doc = json!({
                        "format_version": format_version,
                        "tol": tol.0.to_string(),
                        "rows": rows,
                    });
                    let text = serde_json::to_string_pretty(&doc).expect("strings and integers serialize");
                    writeln!(out, "{text}").map_err(io)?;
                }
            }
            let ok = table.iter().all(|r| r.residual_brackets_root() && r.inverse_bound_ok);
            Ok(if ok { EXIT_OK } else { EXIT_FAILED })
        }
        Command::Indices { path } => {
            let doc = load(&path)?;
            let table = singularity_indices(&doc.map).map_err(|e| match e {
                AnalysisError::Graph(GraphError::NotTrainTrack(_)) => Failure::check(e),
                other => Failure::usage(other),
            })?;
            writeln!(out, "{table}").map_err(io)?;
            let genus = genus_and_puncture(doc.map.graph()).ok().and_then(|c| c.genus);
            match genus {
                Some(g) => {
                    let ok = index_sum_check(&table, g);
                    writeln!(out, "genus {g}: sum {} = 2 - 2*{g}: {ok}", table.sum()).map_err(io)?;
                    Ok(if ok { EXIT_OK } else { EXIT_FAILED })
                }
                None => {
                    writeln!(out, "odd rank: no genus to compare with").map_err(io)?;
                    Ok(EXIT_OK)
                }
            }
        }
    }
}

fn load(path: &Path) -> Result<MapDocument, Failure> {
    let text = std::fs::read_to_string(path).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))?;
    MapDocument::parse(&text).map_err(|e| Failure::usage(format!("{}: {e}", path.display())))
}
