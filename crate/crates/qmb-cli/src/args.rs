use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use num_complex::Complex;
use qmb::contour::DEFAULT_EPS_QUAD;

#[derive(Debug, Parser)]
#[command(name = "qmb", version, about = "Evaluate q-series primitives and numerically check the identity catalog")]
pub struct Cli {
    /// Print the catalog (id, kind, free parameters, anchor quote) and exit.
    #[arg(long)]
    pub list: bool,
    /// Restrict --list to ids matching this glob.
    #[arg(long, default_value = "*")]
    pub id: String,
    #[command(subcommand)]
    pub command: Option<Command>,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Evaluate a single primitive and print its value.
    Eval(EvalArgs),
    /// Check catalog identities at sampled parameter points.
    Check(RunArgs),
    /// Check identities while stepping one free parameter.
    Sweep(SweepArgs),
    /// Summarize a JSON-lines report per id.
    Report(ReportArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Function {
    Theta,
    Qpoch,
    Qgamma,
    PartialTheta,
    Qbinomial,
}

#[derive(Debug, Args)]
pub struct EvalArgs {
    pub function: Function,
    /// Base, as `re`, `re+imi` or `imi`.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub q: Complex<f64>,
    /// Argument of theta and partial theta.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub z: Option<Complex<f64>>,
    /// Parameter of the q-shifted factorial.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub a: Option<Complex<f64>>,
    /// Length of the q-shifted factorial (infinite if omitted), or the top of
    /// the q-binomial coefficient.
    #[arg(long)]
    pub n: Option<usize>,
    #[arg(long)]
    pub k: Option<usize>,
    /// Argument of the q-gamma function.
    #[arg(long, allow_hyphen_values = true, value_parser = parse_complex)]
    pub x: Option<Complex<f64>>,
    #[arg(long, default_value = "binary64")]
    pub precision: String,
}

#[derive(Debug, Clone, Args)]
pub struct RunArgs {
    /// Glob over catalog ids.
    #[arg(long, default_value = "*")]
    pub id: String,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Sampled points per id.
    #[arg(long, default_value_t = 20, value_parser = clap::value_parser!(u64).range(1..))]
    pub count: u64,
    #[arg(long, default_value_t = 1e-8)]
    pub tol: f64,
    #[arg(long, default_value_t = DEFAULT_EPS_QUAD)]
    pub eps_quad: f64,
    /// binary64 or extended; the QMB_PRECISION environment variable wins.
    #[arg(long, default_value = "binary64")]
    pub precision: String,
    /// Write the report here instead of standard output.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Worker threads; output order does not depend on it.
    #[arg(long, default_value_t = 1, value_parser = clap::value_parser!(u64).range(1..))]
    pub jobs: u64,
    /// Draw q from the complex annulus instead of the positive axis.
    #[arg(long)]
    pub complex_q: bool,
    /// Print the matching catalog entries and exit.
    #[arg(long)]
    pub list: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Free {
    H,
    Sigma,
}

#[derive(Debug, Args)]
pub struct SweepArgs {
    #[command(flatten)]
    pub run: RunArgs,
    /// The free parameter to step.
    #[arg(long, value_enum, default_value = "h")]
    pub free: Free,
    /// Values per sampled point.
    #[arg(long, default_value_t = 5, value_parser = clap::value_parser!(u64).range(1..))]
    pub points: u64,
}

#[derive(Debug, Args)]
pub struct ReportArgs {
    /// Report to read; standard input if omitted.
    #[arg(long = "in")]
    pub input: Option<PathBuf>,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

/// Parses `re`, `imi`, `re+imi` or `re-imi`.
pub fn parse_complex(s: &str) -> Result<Complex<f64>, String> {
    let t = s.trim();
    let bad = || format!("cannot read {s:?} as a complex number");
    let Some(body) = t.strip_suffix('i') else {
        return t.parse::<f64>().map(|re| Complex::new(re, 0.0)).map_err(|_| bad());
    };
    // Split at the last sign that is not an exponent sign or the leading sign.
    let split = body
        .char_indices()
        .skip(1)
        .filter(|&(i, c)| (c == '+' || c == '-') && !matches!(body.as_bytes()[i - 1], b'e' | b'E'))
        .map(|(i, _)| i)
        .last();
    let im_of = |x: &str| match x {
        "" | "+" => Ok(1.0),
        "-" => Ok(-1.0),
        _ => x.parse::<f64>().map_err(|_| bad()),
    };
    match split {
        Some(i) => Ok(Complex::new(body[..i].parse::<f64>().map_err(|_| bad())?, im_of(&body[i..])?)),
        None => Ok(Complex::new(0.0, im_of(body)?)),
    }
}
