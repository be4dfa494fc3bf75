use std::collections::HashMap;
use std::fs::File;
use std::io::{self, BufRead, BufReader, BufWriter, Write};
use std::path::Path;

use clap::ValueEnum;
use glob::Pattern;
use num_complex::Complex;
use qmb::identities::{
    catalog, check, sigma_values, sweep_free, Bound, CheckOptions, CheckReport, IdentityDescriptor, Kind,
    Precision, Status,
};
use qmb::sampler::{sample_stats, SampleConfig};
use qseries::{
    from_c64, partial_theta, qbinomial, qgamma, qpoch, qpoch_inf, theta, to_c64, Extended, PartialThetaRep, QBase,
    QError, Real,
};
use rayon::prelude::*;
use thiserror::Error;

use crate::args::{Cli, Command, EvalArgs, Free, Function, ReportArgs, RunArgs, SweepArgs};
use crate::jsonl::{self, Summary};

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{0}")]
    Internal(String),
}

impl CliError {
    pub fn status(&self) -> i32 {
        match self {
            CliError::Usage(_) => 2,
            CliError::Internal(_) => 1,
        }
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Internal(format!("I/O error: {e}"))
    }
}

type Result<T> = std::result::Result<T, CliError>;

/// Runs the parsed command line and returns the process status.
pub fn run(cli: Cli) -> Result<i32> {
    if cli.list {
        return list(&cli.id, None).map(|_| 0);
    }
    match cli.command {
        None => Err(CliError::Usage("a command (eval, check, sweep, report) or --list is required".into())),
        Some(Command::Eval(a)) => eval(&a).map(|_| 0),
        Some(Command::Check(a)) if a.list => list(&a.id, a.out.as_deref()).map(|_| 0),
        Some(Command::Check(a)) => run_check(&a),
        Some(Command::Sweep(a)) => run_sweep(&a),
        Some(Command::Report(a)) => run_report(&a),
    }
}

/// `--precision`, overridden by a non-empty `QMB_PRECISION`.
pub fn precision(flag: &str) -> Result<Precision> {
    let env = std::env::var("QMB_PRECISION").ok().filter(|s| !s.is_empty());
    let name = env.as_deref().unwrap_or(flag);
    Precision::parse(name).ok_or_else(|| CliError::Usage(format!("unknown precision {name:?} (binary64 or extended)")))
}

fn matching(glob: &str) -> Result<Vec<IdentityDescriptor>> {
    let pat = Pattern::new(glob).map_err(|e| CliError::Usage(format!("bad --id glob {glob:?}: {e}")))?;
    let out: Vec<_> = catalog().into_iter().filter(|d| pat.matches(d.id)).collect();
    if out.is_empty() {
        return Err(CliError::Usage(format!("--id {glob:?} matches no catalog entry (see qmb --list)")));
    }
    Ok(out)
}

fn sink(out: Option<&Path>) -> Result<Box<dyn Write>> {
    Ok(match out {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn list(glob: &str, out: Option<&Path>) -> Result<()> {
    let mut w = sink(out)?;
    for d in matching(glob)? {
        let kind = if d.kind == Kind::Integral { "integral" } else { "sum" };
        let free: Vec<_> = d.free.iter().map(|f| jsonl::string(f)).collect();
        writeln!(
            w,
            "{{\"id\":{},\"kind\":\"{kind}\",\"free\":[{}],\"anchor\":{}}}",
            jsonl::string(d.id),
            free.join(","),
            jsonl::string(d.anchor)
        )?;
    }
    w.flush()?;
    Ok(())
}

fn eval_in<T: Real>(a: &EvalArgs) -> Result<Complex<f64>> {
    let need = |v: Option<Complex<f64>>, name: &str| {
        v.map(from_c64::<T>).ok_or_else(|| CliError::Usage(format!("{:?} needs --{name}", a.function)))
    };
    let lib = |e: QError| CliError::Internal(format!("{}: {e}", e.kind()));
    let q = QBase::<T>::new(from_c64(a.q)).map_err(|e| CliError::Usage(format!("bad --q: {e}")))?;
    let v = match a.function {
        Function::Theta => theta(need(a.z, "z")?, &q).map_err(lib)?,
        Function::Qpoch => {
            let x = need(a.a, "a")?;
            match a.n {
                Some(n) => qpoch(x, &q, n),
                None => qpoch_inf(x, &q).map_err(lib)?,
            }
        }
        Function::Qgamma => qgamma(need(a.x, "x")?, &q).map_err(lib)?,
        Function::PartialTheta => partial_theta(need(a.z, "z")?, &q, PartialThetaRep::Sum).map_err(lib)?,
        Function::Qbinomial => {
            let n = a.n.ok_or_else(|| CliError::Usage("qbinomial needs --n".into()))?;
            let k = a.k.ok_or_else(|| CliError::Usage("qbinomial needs --k".into()))?;
            qbinomial(n, k, &q).map_err(lib)?
        }
    };
    Ok(to_c64(v))
}

fn eval(a: &EvalArgs) -> Result<()> {
    let v = match precision(&a.precision)? {
        Precision::Binary64 => eval_in::<f64>(a)?,
        Precision::Extended => eval_in::<Extended>(a)?,
    };
    let name = a.function.to_possible_value().expect("no skipped variants");
    println!("{{\"function\":{},\"value\":{}}}", jsonl::string(name.get_name()), jsonl::pair(v));
    Ok(())
}

fn options(a: &RunArgs) -> Result<CheckOptions> {
    if !(a.tol > 0.0) {
        return Err(CliError::Usage("--tol must be positive".into()));
    }
    if !(a.eps_quad > 0.0) {
        return Err(CliError::Usage("--eps-quad must be positive".into()));
    }
    Ok(CheckOptions { tol: a.tol, eps_quad: a.eps_quad, precision: precision(&a.precision)? })
}

fn pool(jobs: u64) -> Result<rayon::ThreadPool> {
    rayon::ThreadPoolBuilder::new()
        .num_threads(jobs as usize)
        .build()
        .map_err(|e| CliError::Internal(format!("thread pool: {e}")))
}

fn sample_cfg(a: &RunArgs) -> SampleConfig {
    SampleConfig { seed: a.seed, complex_q: a.complex_q, ..Default::default() }
}

/// A placeholder report for a point that could not be produced at all.
fn unsampled(id: &str, why: String) -> CheckReport {
    CheckReport {
        id: id.into(),
        params: Bound::new(),
        lhs: None,
        rhs: None,
        abs_residual: None,
        rel_residual: None,
        n_terms: 0,
        n_nodes: 0,
        status: Status::Skipped(why),
    }
}

/// Sampled points per id, or the reason sampling gave up.
fn sample_all(descs: &[IdentityDescriptor], cfg: &SampleConfig, count: usize) -> Vec<std::result::Result<Vec<Bound>, String>> {
    descs
        .par_iter()
        .map(|d| sample_stats(d, cfg, count).map(|s| s.points).map_err(|e| format!("{}: {e}", e.kind())))
        .collect()
}

/// The report lines and summary of a `check` run.
pub fn check_lines(a: &RunArgs) -> Result<(Vec<String>, Summary)> {
    let opts = options(a)?;
    let descs = matching(&a.id)?;
    let cfg = sample_cfg(a);
    let pool = pool(a.jobs)?;
    let lines = pool.install(|| {
        let sampled = sample_all(&descs, &cfg, a.count as usize);
        let mut tasks = Vec::new();
        for (d, pts) in descs.iter().zip(&sampled) {
            match pts {
                Ok(pts) => tasks.extend(pts.iter().enumerate().map(|(i, b)| (d, i, Ok(b)))),
                Err(why) => tasks.push((d, 0, Err(why))),
            }
        }
        tasks
            .par_iter()
            .map(|&(d, i, b)| {
                let r = match b {
                    Ok(b) => check(d, b, &opts),
                    Err(why) => unsampled(d.id, why.clone()),
                };
                (r.status.name(), jsonl::record(&r, a.seed, i))
            })
            .collect::<Vec<_>>()
    });
    let mut summary = Summary::default();
    let mut out = Vec::with_capacity(lines.len());
    for (status, line) in lines {
        summary.add(status);
        out.push(line);
    }
    Ok((out, summary))
}

fn emit(out: Option<&Path>, lines: &[String], tail: &str) -> Result<()> {
    let mut w = sink(out)?;
    for l in lines {
        writeln!(w, "{l}")?;
    }
    writeln!(w, "{tail}")?;
    w.flush()?;
    Ok(())
}

fn run_check(a: &RunArgs) -> Result<i32> {
    let (lines, summary) = check_lines(a)?;
    emit(a.out.as_deref(), &lines, &summary.line())?;
    Ok(if summary.fail == 0 { 0 } else { 3 })
}

/// Values of the free parameter for one sampled point.
fn sweep_values(d: &IdentityDescriptor, b: &Bound, free: Free, k: usize) -> std::result::Result<Vec<Complex<f64>>, String> {
    match free {
        Free::H => {
            let step = 2.0 * std::f64::consts::PI / k as f64;
            Ok((0..k).map(|j| Complex::from_polar(1.0, 0.3 + step * j as f64)).collect())
        }
        Free::Sigma => sigma_values(d, b, k).map_err(|e| format!("{}: {e}", e.kind())),
    }
}

/// The report lines, summary and largest left-side spread of a `sweep` run.
pub fn sweep_lines(a: &SweepArgs) -> Result<(Vec<String>, Summary, f64)> {
    let opts = options(&a.run)?;
    let name = match a.free {
        Free::H => "h",
        Free::Sigma => "sigma",
    };
    let descs: Vec<_> = matching(&a.run.id)?.into_iter().filter(|d| d.free.contains(&name)).collect();
    if descs.is_empty() {
        return Err(CliError::Usage(format!("no entry matching {:?} has the free parameter {name}", a.run.id)));
    }
    let cfg = sample_cfg(&a.run);
    let k = a.points as usize;
    let pool = pool(a.run.jobs)?;
    let groups = pool.install(|| {
        let sampled = sample_all(&descs, &cfg, a.run.count as usize);
        let mut tasks = Vec::new();
        for (d, pts) in descs.iter().zip(&sampled) {
            match pts {
                Ok(pts) => tasks.extend(pts.iter().enumerate().map(|(i, b)| (d, i, Ok(b)))),
                Err(why) => tasks.push((d, 0, Err(why))),
            }
        }
        tasks
            .par_iter()
            .map(|(d, i, b)| {
                // Point i owns the indices i·k .. (i+1)·k.
                let (reports, spread) = sweep_point(d, *b, name, a.free, k, &opts);
                (reports, spread, i * k)
            })
            .collect::<Vec<_>>()
    });
    let mut summary = Summary::default();
    let mut spread = 0.0f64;
    let mut out = Vec::new();
    for (reports, s, base) in groups {
        spread = spread.max(s);
        for (j, r) in reports.iter().enumerate() {
            summary.add(r.status.name());
            out.push(jsonl::record(r, a.run.seed, base + j));
        }
    }
    Ok((out, summary, spread))
}

/// The sweep at one sampled point and its left-side spread.
fn sweep_point(
    d: &IdentityDescriptor,
    b: std::result::Result<&Bound, &String>,
    name: &str,
    free: Free,
    k: usize,
    opts: &CheckOptions,
) -> (Vec<CheckReport>, f64) {
    let b = match b {
        Ok(b) => b,
        Err(why) => return (vec![unsampled(d.id, why.clone())], 0.0),
    };
    let vals = match sweep_values(d, b, free, k) {
        Ok(v) => v,
        Err(why) => {
            let mut r = unsampled(d.id, why);
            r.params = b.clone();
            return (vec![r], 0.0);
        }
    };
    match sweep_free(d, b, name, &vals, opts) {
        Ok(s) => (s.reports, s.lhs_spread.unwrap_or(0.0)),
        Err(e) => (vec![unsampled(d.id, format!("{}: {e}", e.kind()))], 0.0),
    }
}

fn run_sweep(a: &SweepArgs) -> Result<i32> {
    let (lines, summary, spread) = sweep_lines(a)?;
    let tail = format!(
        "{{\"summary\":{{\"total\":{},\"pass\":{},\"fail\":{},\"skipped\":{},\"max_lhs_spread\":{}}}}}",
        summary.total,
        summary.pass,
        summary.fail,
        summary.skipped,
        jsonl::num(spread)
    );
    emit(a.run.out.as_deref(), &lines, &tail)?;
    Ok(if summary.fail == 0 && spread < a.run.tol { 0 } else { 3 })
}

#[derive(Default)]
struct IdStats {
    summary: Summary,
    worst: f64,
}

fn run_report(a: &ReportArgs) -> Result<i32> {
    let reader: Box<dyn BufRead> = match &a.input {
        Some(p) => Box::new(BufReader::new(
            File::open(p).map_err(|e| CliError::Usage(format!("cannot open {}: {e}", p.display())))?,
        )),
        None => Box::new(BufReader::new(io::stdin().lock())),
    };
    let mut order: Vec<String> = Vec::new();
    let mut stats: HashMap<String, IdStats> = HashMap::new();
    for (n, line) in reader.lines().enumerate() {
        let line = line?;
        if line.trim().is_empty() {
            continue;
        }
        let v: serde_json::Value = serde_json::from_str(&line)
            .map_err(|e| CliError::Usage(format!("line {}: not JSON: {e}", n + 1)))?;
        if v.get("summary").is_some() {
            continue;
        }
        let (Some(id), Some(status)) = (v["id"].as_str(), v["status"].as_str()) else {
            return Err(CliError::Usage(format!("line {}: missing id or status", n + 1)));
        };
        if !stats.contains_key(id) {
            order.push(id.to_string());
        }
        let s = stats.entry(id.to_string()).or_default();
        s.summary.add(status);
        if let Some(r) = v["rel_residual"].as_f64() {
            s.worst = s.worst.max(r);
        }
    }
    let mut total = Summary::default();
    let mut lines = Vec::new();
    for id in &order {
        let s = &stats[id];
        let m = s.summary;
        total.total += m.total;
        total.pass += m.pass;
        total.fail += m.fail;
        total.skipped += m.skipped;
        lines.push(format!(
            "{{\"id\":{},\"total\":{},\"pass\":{},\"fail\":{},\"skipped\":{},\"worst_rel_residual\":{}}}",
            jsonl::string(id),
            m.total,
            m.pass,
            m.fail,
            m.skipped,
            jsonl::num(s.worst)
        ));
    }
    emit(a.out.as_deref(), &lines, &total.line())?;
    Ok(if total.fail == 0 { 0 } else { 3 })
}
