//! `ramlip`: run identity checks, parameter grids and asymptotic order fits.

mod report;
mod values;

use clap::{Args, Parser, Subcommand, ValueEnum};
use ramlip_core::asymptotics::{sigma2m_report, wright_report, AsymptoticReport};
use ramlip_core::identities::{check_or_record, grid_points, list_identities, resolve_params, IdentityId, Params};
use ramlip_core::{ComplexValue, PrecisionConfig};
use rayon::prelude::*;
use report::ReportRow;
use serde::Serialize;
use std::collections::hash_map::DefaultHasher;
use std::hash::{Hash, Hasher};
use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;
use std::time::Instant;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] ramlip_core::Error),
    #[error("i/o: {0}")]
    Io(#[from] std::io::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("csv: {0}")]
    Csv(#[from] csv::Error),
}

#[derive(Parser, Debug)]
#[command(name = "ramlip", version, about = "Numerical checks of Ramanujan-type transformation formulas")]
struct Cli {
    /// List identity ids with their parameters and exit.
    #[arg(long)]
    list: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Check one identity at one parameter point.
    Check(Opts),
    /// Check one identity over the cartesian product of parameter lists.
    Grid(Opts),
    /// Fit the truncation-error order of an asymptotic expansion (ids: SIGMA_2M, WRIGHT).
    Asym(Opts),
    /// List identity ids with their parameters.
    List(ListOpts),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Args, Debug)]
struct ListOpts {
    #[arg(long, value_enum)]
    format: Option<Format>,
}

#[derive(Args, Debug, Default)]
struct Opts {
    #[arg(long)]
    id: Option<String>,
    /// Flat `key = value` file with parameter lists and options; flags take precedence.
    #[arg(long, alias = "config")]
    grid_file: Option<PathBuf>,
    /// Relative tolerance overriding the identity default (order tolerance for `asym`).
    #[arg(long)]
    tol: Option<f64>,
    #[arg(long)]
    out: Option<PathBuf>,
    #[arg(long, value_enum)]
    format: Option<Format>,
    #[arg(long)]
    jobs: Option<usize>,
    /// Omit wall-clock times so reports are reproducible byte for byte.
    #[arg(long)]
    no_timing: bool,
    #[arg(long)]
    m: Option<String>,
    #[arg(long)]
    a: Option<String>,
    #[arg(long)]
    s: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    y: Option<String>,
    #[arg(long)]
    z: Option<String>,
    #[arg(long)]
    w: Option<String>,
    #[arg(long)]
    u: Option<String>,
    #[arg(long)]
    tau: Option<String>,
    #[arg(long)]
    x: Option<String>,
    #[arg(long)]
    r: Option<String>,
}

const PARAM_NAMES: [&str; 12] = ["m", "a", "s", "alpha", "beta", "y", "z", "w", "u", "tau", "x", "r"];

/// Options after merging the file and the flags.
#[derive(Debug, Default, Hash)]
struct RunConfig {
    command: &'static str,
    id: Option<String>,
    /// In flag order.
    params: Vec<(String, String)>,
    tol: Option<String>,
    out: Option<PathBuf>,
    format: Option<String>,
    jobs: usize,
    timing: bool,
}

impl RunConfig {
    fn build(command: &'static str, o: Opts) -> Result<Self, CliError> {
        let mut file: Vec<(String, String)> = match &o.grid_file {
            Some(p) => values::read_flat_file(p)?,
            None => Vec::new(),
        };
        let mut take = |k: &str| file.iter().position(|(key, _)| key == k).map(|i| file.remove(i).1);
        let flag_params = [&o.m, &o.a, &o.s, &o.alpha, &o.beta, &o.y, &o.z, &o.w, &o.u, &o.tau, &o.x, &o.r];
        let mut params = Vec::new();
        for (name, flag) in PARAM_NAMES.iter().zip(flag_params) {
            let from_file = take(name);
            if let Some(v) = flag.clone().or(from_file) {
                params.push((name.to_string(), v));
            }
        }
        let id = o.id.or_else(|| take("id"));
        let tol = o.tol.map(|t| t.to_string()).or_else(|| take("tol"));
        let out = o.out.or_else(|| take("out").map(PathBuf::from));
        let format = o
            .format
            .map(|f| if f == Format::Json { "json".to_string() } else { "csv".to_string() })
            .or_else(|| take("format"));
        let jobs = match o.jobs.map(|j| j.to_string()).or_else(|| take("jobs")) {
            Some(j) => j.parse::<usize>().map_err(|_| CliError::Usage(format!("invalid --jobs '{j}'")))?,
            None => 1,
        };
        if jobs < 1 {
            return Err(CliError::Usage("--jobs must be at least 1".into()));
        }
        let no_timing = o.no_timing || take("no_timing").is_some_and(|v| v == "true" || v == "1");
        if let Some((k, _)) = file.first() {
            return Err(CliError::Usage(format!("unknown key '{k}' in {}", o.grid_file.unwrap().display())));
        }
        Ok(RunConfig { command, id, params, tol, out, format, jobs, timing: !no_timing })
    }

    fn run_id(&self) -> String {
        let mut h = DefaultHasher::new();
        self.command.hash(&mut h);
        self.id.hash(&mut h);
        self.params.hash(&mut h);
        self.tol.hash(&mut h);
        format!("{:016x}", h.finish())
    }

    fn identity(&self) -> Result<IdentityId, CliError> {
        let id = self.id.as_deref().ok_or_else(|| CliError::Usage("--id is required".into()))?;
        id.parse::<IdentityId>().map_err(|e| CliError::Usage(e.to_string()))
    }

    fn tolerance(&self) -> Result<Option<f64>, CliError> {
        match &self.tol {
            None => Ok(None),
            Some(t) => match t.parse::<f64>() {
                Ok(v) if v > 0.0 => Ok(Some(v)),
                _ => Err(CliError::Usage(format!("--tol must be a positive number, got '{t}'"))),
            },
        }
    }

    fn format(&self, default: Format) -> Result<Format, CliError> {
        match self.format.as_deref() {
            None => Ok(default),
            Some("json") => Ok(Format::Json),
            Some("csv") => Ok(Format::Csv),
            Some(f) => Err(CliError::Usage(format!("format must be json or csv, got '{f}'"))),
        }
    }

    fn grid(&self) -> Result<Vec<(String, Vec<ComplexValue>)>, CliError> {
        self.params.iter().map(|(k, v)| Ok((k.clone(), values::parse_list(v)?))).collect()
    }

    fn sink(&self) -> Result<Box<dyn Write>, CliError> {
        Ok(match &self.out {
            Some(p) => Box::new(std::io::BufWriter::new(std::fs::File::create(p)?)),
            None => Box::new(std::io::stdout().lock()),
        })
    }
}

fn evaluate_points(cfg: &RunConfig, id: IdentityId, points: &[Params]) -> Result<Vec<ReportRow>, CliError> {
    let tol = cfg.tolerance()?;
    for p in points {
        resolve_params(id, p)?;
    }
    let precision = PrecisionConfig::default();
    let run_id = cfg.run_id();
    let eval = |p: &Params| {
        let t = Instant::now();
        let mut r = check_or_record(id, p, &precision);
        if let Some(tol) = tol {
            r = r.regrade(tol);
        }
        let ms = cfg.timing.then(|| t.elapsed().as_secs_f64() * 1e3);
        ReportRow::new(&run_id, &r, ms)
    };
    if cfg.jobs == 1 {
        return Ok(points.iter().map(eval).collect());
    }
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(cfg.jobs)
        .build()
        .map_err(|e| CliError::Usage(format!("cannot start {} worker threads: {e}", cfg.jobs)))?;
    Ok(pool.install(|| points.par_iter().map(eval).collect()))
}

fn emit_rows(cfg: &RunConfig, rows: &[ReportRow], single: bool, default: Format) -> Result<(), CliError> {
    let mut out = cfg.sink()?;
    match cfg.format(default)? {
        Format::Json if single => serde_json::to_writer_pretty(&mut out, &rows[0])?,
        Format::Json => serde_json::to_writer_pretty(&mut out, rows)?,
        Format::Csv => report::write_csv(rows, &mut out)?,
    }
    if cfg.format(default)? == Format::Json {
        writeln!(out)?;
    }
    out.flush()?;
    Ok(())
}

fn verdict(rows: &[ReportRow]) -> ExitCode {
    if rows.iter().any(|r| r.status == "fail") {
        ExitCode::from(2)
    } else {
        ExitCode::SUCCESS
    }
}

fn cmd_check(cfg: RunConfig) -> Result<ExitCode, CliError> {
    let id = cfg.identity()?;
    let mut point = Params::new();
    for (k, v) in &cfg.params {
        let vals = values::parse_list(v)?;
        if vals.len() != 1 {
            return Err(CliError::Usage(format!("check takes one value per parameter; use grid for '{k} = {v}'")));
        }
        point.insert(k.clone(), vals[0]);
    }
    let rows = evaluate_points(&cfg, id, &[point])?;
    emit_rows(&cfg, &rows, true, Format::Json)?;
    Ok(verdict(&rows))
}

fn cmd_grid(cfg: RunConfig) -> Result<ExitCode, CliError> {
    let id = cfg.identity()?;
    let points = grid_points(&cfg.grid()?);
    if points.is_empty() {
        return Err(CliError::Usage("grid is empty".into()));
    }
    let rows = evaluate_points(&cfg, id, &points)?;
    emit_rows(&cfg, &rows, false, Format::Csv)?;
    Ok(verdict(&rows))
}

#[derive(Serialize)]
struct AsymOutput {
    run_id: String,
    identity: &'static str,
    #[serde(flatten)]
    report: AsymptoticReport,
    #[serde(skip_serializing_if = "Option::is_none")]
    constant_integral: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    constant_regression: Option<f64>,
    exponent_tolerance: f64,
    status: &'static str,
}

fn cmd_asym(cfg: RunConfig) -> Result<ExitCode, CliError> {
    let id = cfg.id.clone().ok_or_else(|| CliError::Usage("--id is required (SIGMA_2M or WRIGHT)".into()))?;
    let grid = cfg.grid()?;
    let get = |name: &str| grid.iter().find(|(k, _)| k == name).map(|(_, v)| v.clone());
    let int = |name: &str, default: Option<usize>| -> Result<usize, CliError> {
        match get(name) {
            Some(v) if v.len() == 1 && v[0].im == 0.0 && v[0].re >= 0.0 && v[0].re.fract() == 0.0 => Ok(v[0].re as usize),
            Some(_) => Err(CliError::Usage(format!("--{name} must be one nonnegative integer"))),
            None => default.ok_or_else(|| CliError::Usage(format!("--{name} is required"))),
        }
    };
    let reals = |name: &str| -> Result<Vec<f64>, CliError> {
        let v = get(name).ok_or_else(|| CliError::Usage(format!("--{name} is required")))?;
        v.iter()
            .map(|z| if z.im == 0.0 { Ok(z.re) } else { Err(CliError::Usage(format!("--{name} takes real values"))) })
            .collect()
    };
    let precision = PrecisionConfig::default();
    let (identity, report, consts, default_tol) = match id.as_str() {
        "SIGMA_2M" => {
            let rep = sigma2m_report(int("m", None)?, int("r", Some(0))?, &reals("y")?, &precision)?;
            ("SIGMA_2M", rep, None, 0.5)
        }
        "WRIGHT" => {
            let w = wright_report(int("r", Some(2))?, &reals("x")?, &precision)?;
            ("WRIGHT", w.report, Some((w.constant_integral, w.constant_regression)), 0.7)
        }
        other => return Err(CliError::Usage(format!("unknown asymptotic id '{other}'; valid ids: SIGMA_2M, WRIGHT"))),
    };
    let tol = cfg.tolerance()?.unwrap_or(default_tol);
    let pass = report.exponent_gap() <= tol && consts.is_none_or(|(a, b): (f64, f64)| (a - b).abs() <= 1e-4);
    let out = AsymOutput {
        run_id: cfg.run_id(),
        identity,
        report,
        constant_integral: consts.map(|c| c.0),
        constant_regression: consts.map(|c| c.1),
        exponent_tolerance: tol,
        status: if pass { "pass" } else { "fail" },
    };
    if cfg.format(Format::Json)? == Format::Csv {
        return Err(CliError::Usage("asym reports are JSON only".into()));
    }
    let mut sink = cfg.sink()?;
    serde_json::to_writer_pretty(&mut sink, &out)?;
    writeln!(sink)?;
    sink.flush()?;
    Ok(if pass { ExitCode::SUCCESS } else { ExitCode::from(2) })
}

fn cmd_list(format: Option<Format>) -> Result<ExitCode, CliError> {
    let list = list_identities();
    let mut out = std::io::stdout().lock();
    match format {
        Some(Format::Json) => {
            serde_json::to_writer_pretty(&mut out, &list)?;
            writeln!(out)?;
        }
        Some(Format::Csv) => return Err(CliError::Usage("list supports json or plain text".into())),
        None => {
            for info in list {
                let params: Vec<String> = info
                    .params
                    .iter()
                    .map(|p| match p.default {
                        Some(d) => format!("{}={d}", p.name),
                        None => p.name.to_string(),
                    })
                    .collect();
                writeln!(
                    out,
                    "{:<15} tol {:<6.0e} params [{}]  {}; {}",
                    info.id.as_str(),
                    info.tolerance,
                    params.join(", "),
                    info.hypotheses,
                    info.anchor
                )?;
            }
        }
    }
    Ok(ExitCode::SUCCESS)
}

fn run(cli: Cli) -> Result<ExitCode, CliError> {
    if cli.list {
        return cmd_list(None);
    }
    match cli.command {
        None => Err(CliError::Usage("a command is required: check, grid, asym or list".into())),
        Some(Command::List(o)) => cmd_list(o.format),
        Some(Command::Check(o)) => cmd_check(RunConfig::build("check", o)?),
        Some(Command::Grid(o)) => cmd_grid(RunConfig::build("grid", o)?),
        Some(Command::Asym(o)) => cmd_asym(RunConfig::build("asym", o)?),
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return if e.use_stderr() { ExitCode::from(1) } else { ExitCode::SUCCESS };
        }
    };
    match run(cli) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(1)
        }
    }
}
