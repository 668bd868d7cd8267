//! Command-line front end: exact and asymptotic tables as CSV or JSON, plus the
//! acceptance suite.
//!
//! Every table is written with a header row and accompanied by a JSON sidecar
//! holding the fully resolved configuration (`<out>.config.json`, or stderr when
//! the table goes to stdout).

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use anyhow::{anyhow, bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use discrete_ensemble::asympt::{
    edge_scaling_check, finite_n_vs_limit, limit_curves, sine_kernel_check, small_weight_bridge,
    small_weight_expansion_check, solve_resolvent_grid, AtomicMeasure, EdgeOptions, LimitShape, ResolventOptions,
};
use discrete_ensemble::oracle::{estimate_density, mcmc_sample, McmcConfig};
use discrete_ensemble::validation::{run_all, Level, EDGE_MARGIN};
use discrete_ensemble::{Alphas, EnsembleError, Ensemble};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

#[derive(Parser, Debug)]
#[command(name = "discrete-ensemble", version, about = "Exact and asymptotic statistics of a discrete-level character ensemble")]
struct Cli {
    #[command(subcommand)]
    command: Command,

    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,

    /// Output file; stdout when omitted.
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Worker threads for table fills.
    #[arg(long, env = "DISCRETE_ENSEMBLE_THREADS", global = true)]
    threads: Option<usize>,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, ValueEnum, Serialize)]
#[serde(rename_all = "lowercase")]
enum LevelArg {
    Quick,
    Full,
}

#[derive(Args, Debug, Clone, Serialize)]
struct AlphaArgs {
    /// Common alpha for all levels (requires --n).
    #[arg(long)]
    alpha: Option<f64>,
    /// Comma-separated alphas, one per level.
    #[arg(long, value_delimiter = ',', num_args = 1..)]
    alphas: Option<Vec<f64>>,
    /// JSON file with either {"alphas": [...]} or {"alpha": x, "n": N}.
    #[arg(long)]
    alpha_file: Option<PathBuf>,
    /// Number of levels.
    #[arg(long)]
    n: Option<usize>,
}

#[derive(Subcommand, Debug)]
enum Command {
    /// Exact one-point density ρ(p).
    Density {
        #[command(flatten)]
        alpha: AlphaArgs,
        /// Largest site; chosen automatically from the decay of ρ when omitted.
        #[arg(long)]
        pmax: Option<usize>,
    },
    /// Correlation kernel over a window.
    Kernel {
        #[command(flatten)]
        alpha: AlphaArgs,
        /// p0:p1,q0:q1 (inclusive).
        #[arg(long)]
        window: String,
    },
    /// Connected pair correlator over a window.
    Pair {
        #[command(flatten)]
        alpha: AlphaArgs,
        /// p0:p1,q0:q1 (inclusive).
        #[arg(long)]
        window: String,
    },
    /// Finite-N occupation against the large-N limit shape, or the resolvent density on a σ grid.
    LimitShape {
        #[command(flatten)]
        alpha: AlphaArgs,
        #[arg(long)]
        pmax: Option<usize>,
        /// lo:hi:steps; switches to the resolvent solver for arbitrary alphas.
        #[arg(long)]
        sigma_grid: Option<String>,
        /// Residual tolerance of the resolvent root.
        #[arg(long, default_value_t = 1e-10)]
        tolerance: f64,
    },
    /// Upper-edge profiles and their collapse between N/2 and N.
    Edge {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 128)]
        n: usize,
    },
    /// Bulk pair correlations against the sine-kernel prediction.
    Sine {
        #[arg(long)]
        alpha: f64,
        #[arg(long, default_value_t = 128)]
        n: usize,
        /// Centre site; defaults to the density plateau of the bulk.
        #[arg(long)]
        center: Option<usize>,
        #[arg(long, default_value_t = 5)]
        max_separation: usize,
    },
    /// Small-weight limit α = 1 − ρ/N: finite-N bridge and two-term expansion.
    SmallWeights {
        #[arg(long, default_value_t = 0.5)]
        rho: f64,
        #[arg(long, default_value_t = 200)]
        n: usize,
        #[arg(long, default_value_t = 10)]
        pmax: usize,
    },
    /// Metropolis estimate of ρ(p) with jackknife error bars.
    Sample {
        #[command(flatten)]
        alpha: AlphaArgs,
        #[arg(long, default_value_t = 1_000_000)]
        steps: u64,
        #[arg(long, default_value_t = 20261016)]
        seed: u64,
        #[arg(long)]
        pmax: Option<usize>,
    },
    /// Run the acceptance suite and report one row per criterion.
    Validate {
        #[arg(long, value_enum, default_value_t = LevelArg::Quick)]
        level: LevelArg,
    },
}

/// Why a run stopped; maps onto the exit code.
#[derive(Debug)]
enum Failure {
    Config(anyhow::Error),
    Numeric(anyhow::Error),
    Validation(usize),
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        match e.downcast_ref::<EnsembleError>() {
            Some(
                EnsembleError::Domain { .. }
                | EnsembleError::BudgetExceeded { .. }
                | EnsembleError::NonConvergence { .. }
                | EnsembleError::Calibration(_),
            ) => Failure::Numeric(e),
            _ => Failure::Config(e),
        }
    }
}

impl From<EnsembleError> for Failure {
    fn from(e: EnsembleError) -> Self {
        anyhow::Error::new(e).into()
    }
}

#[derive(Clone, Debug)]
enum Cell {
    Int(i64),
    Float(f64),
    Text(String),
    Bool(bool),
}

impl Cell {
    fn csv(&self) -> String {
        match self {
            Cell::Int(v) => v.to_string(),
            Cell::Float(v) => format!("{v:.16e}"),
            Cell::Text(s) => s.clone(),
            Cell::Bool(b) => b.to_string(),
        }
    }

    fn json(&self) -> Value {
        match self {
            Cell::Int(v) => json!(v),
            Cell::Float(v) if v.is_finite() => json!(v),
            Cell::Float(v) => json!(v.to_string()),
            Cell::Text(s) => json!(s),
            Cell::Bool(b) => json!(b),
        }
    }
}

fn int(v: usize) -> Cell {
    Cell::Int(v as i64)
}

struct Table {
    columns: Vec<&'static str>,
    rows: Vec<Vec<Cell>>,
    /// Headline numbers, written to the sidecar.
    summary: Value,
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct AlphaFile {
    alphas: Option<Vec<f64>>,
    alpha: Option<f64>,
    n: Option<usize>,
}

#[derive(Serialize)]
struct ResolvedAlphas {
    source: &'static str,
    n: usize,
    /// Set when all alphas coincide; `values` is then omitted.
    #[serde(skip_serializing_if = "Option::is_none")]
    alpha: Option<f64>,
    #[serde(skip_serializing_if = "Option::is_none")]
    values: Option<Vec<f64>>,
}

fn resolve_alphas(args: &AlphaArgs) -> Result<(Alphas, ResolvedAlphas), Failure> {
    let given = [args.alpha.is_some(), args.alphas.is_some(), args.alpha_file.is_some()];
    if given.iter().filter(|&&g| g).count() != 1 {
        return Err(Failure::Config(anyhow!("give exactly one of --alpha, --alphas, --alpha-file")));
    }
    let (spec, source) = if let Some(a) = args.alpha {
        let n = args.n.ok_or_else(|| Failure::Config(anyhow!("--alpha needs --n")))?;
        (Alphas::equal(a, n)?, "alpha")
    } else if let Some(v) = &args.alphas {
        if let Some(n) = args.n {
            if n != v.len() {
                return Err(Failure::Config(anyhow!("--n {n} disagrees with {} alphas", v.len())));
            }
        }
        (Alphas::new(v.clone())?, "alphas")
    } else {
        let path = args.alpha_file.as_ref().expect("checked above");
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading {}", path.display()))
            .map_err(Failure::Config)?;
        let file: AlphaFile = serde_json::from_str(&text)
            .with_context(|| format!("parsing {}", path.display()))
            .map_err(Failure::Config)?;
        let spec = match (file.alphas, file.alpha, file.n) {
            (Some(v), None, None) => Alphas::new(v)?,
            (None, Some(a), Some(n)) => Alphas::equal(a, n)?,
            _ => {
                return Err(Failure::Config(anyhow!(
                    "{}: use either {{\"alphas\": [..]}} or {{\"alpha\": x, \"n\": N}}",
                    path.display()
                )))
            }
        };
        if args.n.is_some_and(|n| n != spec.count()) {
            return Err(Failure::Config(anyhow!("--n disagrees with {}", path.display())));
        }
        (spec, "alpha-file")
    };
    let alpha = spec.common_value().copied();
    let values = alpha.is_none().then(|| spec.values().to_vec());
    let n = spec.count();
    Ok((spec, ResolvedAlphas { source, n, alpha, values }))
}

fn parse_range(s: &str) -> anyhow::Result<(usize, usize)> {
    let (a, b) = s.split_once(':').ok_or_else(|| anyhow!("range `{s}` is not lo:hi"))?;
    let (a, b): (usize, usize) = (a.trim().parse()?, b.trim().parse()?);
    if b < a {
        bail!("range `{s}` is empty");
    }
    Ok((a, b))
}

type Window = ((usize, usize), (usize, usize));

fn parse_window(s: &str) -> Result<Window, Failure> {
    let (p, q) = s.split_once(',').ok_or_else(|| Failure::Config(anyhow!("window `{s}` is not p0:p1,q0:q1")))?;
    Ok((parse_range(p).map_err(Failure::Config)?, parse_range(q).map_err(Failure::Config)?))
}

fn parse_grid(s: &str) -> Result<Vec<f64>, Failure> {
    let parts: Vec<&str> = s.split(':').collect();
    let bad = || Failure::Config(anyhow!("sigma grid `{s}` is not lo:hi:steps with 0 < lo < hi, steps >= 2"));
    let [lo, hi, steps] = parts.as_slice() else { return Err(bad()) };
    let lo: f64 = lo.trim().parse().map_err(|_| bad())?;
    let hi: f64 = hi.trim().parse().map_err(|_| bad())?;
    let steps: usize = steps.trim().parse().map_err(|_| bad())?;
    if !(lo > 0.0 && hi > lo && steps >= 2) {
        return Err(bad());
    }
    Ok((0..steps).map(|i| lo + (hi - lo) * i as f64 / (steps - 1) as f64).collect())
}

fn equal_alpha(spec: &Alphas, what: &str) -> Result<f64, Failure> {
    spec.common_value().copied()
        .ok_or_else(|| Failure::Config(anyhow!("{what} needs equal alphas (--alpha with --n)")))
}

fn density_table(args: &AlphaArgs, pmax: Option<usize>) -> Result<(Table, Value), Failure> {
    let (spec, resolved) = resolve_alphas(args)?;
    let n = spec.count() as f64;
    let prof = Ensemble::new(spec).density_profile(pmax)?;
    let rows = prof
        .values
        .iter()
        .enumerate()
        .map(|(p, &r)| vec![int(p), Cell::Float(r), Cell::Float(n * r)])
        .collect();
    let summary = json!({ "total_mass": prof.total_mass(), "tail_mass": prof.tail_mass, "p_max": prof.p_max() });
    Ok((Table { columns: vec!["p", "rho", "n_rho"], rows, summary }, json!({ "alphas": resolved, "pmax": pmax })))
}

fn kernel_table(args: &AlphaArgs, window: &str, pair: bool) -> Result<(Table, Value), Failure> {
    let (spec, resolved) = resolve_alphas(args)?;
    let (pr, qr) = parse_window(window)?;
    let e = Ensemble::new(spec);
    let points: Vec<(usize, usize)> = (pr.0..=pr.1).flat_map(|p| (qr.0..=qr.1).map(move |q| (p, q))).collect();
    let values: Vec<f64> = points
        .par_iter()
        .map(|&(p, q)| if pair { e.pair_correlator(p, q) } else { e.kernel(p, q) })
        .collect();
    let rows = points.iter().zip(&values).map(|(&(p, q), &v)| vec![int(p), int(q), Cell::Float(v)]).collect();
    let name = if pair { "pair" } else { "kernel" };
    let config = json!({ "alphas": resolved, "window": { "p": pr, "q": qr } });
    Ok((Table { columns: vec!["p", "q", name], rows, summary: Value::Null }, config))
}

fn limit_shape_table(
    args: &AlphaArgs,
    pmax: Option<usize>,
    grid: Option<&str>,
    tolerance: f64,
) -> Result<(Table, Value), Failure> {
    let (spec, resolved) = resolve_alphas(args)?;
    if let Some(g) = grid {
        let sigmas = parse_grid(g)?;
        let opts = ResolventOptions { residual_tol: tolerance, ..ResolventOptions::default() };
        let sols = solve_resolvent_grid(&sigmas, &AtomicMeasure::from_alphas(&spec), &opts)?;
        let closed = spec.common_value().map(|&a| LimitShape::new(a)).transpose()?;
        let mut sup = 0.0f64;
        let rows = sols
            .iter()
            .map(|s| {
                let c = closed.as_ref().map_or(f64::NAN, |sh| sh.density(s.sigma));
                if c.is_finite() {
                    sup = sup.max((c - s.density).abs());
                }
                vec![Cell::Float(s.sigma), Cell::Float(s.density), Cell::Float(c), Cell::Float(s.residual)]
            })
            .collect();
        let summary = json!({ "closed_form_sup_difference": closed.as_ref().map(|_| sup) });
        let config = json!({ "alphas": resolved, "sigma_grid": g, "tolerance": tolerance });
        return Ok((Table { columns: vec!["sigma", "rho", "rho_closed", "residual"], rows, summary }, config));
    }
    let alpha = equal_alpha(&spec, "limit-shape without --sigma-grid")?;
    let n = spec.count();
    let shape = LimitShape::new(alpha)?;
    let pmax = pmax.unwrap_or(((shape.a() + 0.25) * n as f64).ceil() as usize);
    let curves = limit_curves(alpha, n, pmax)?;
    let sup_all = curves.iter().map(|c| (c.finite - c.limit).abs()).fold(0.0, f64::max);
    let bulk = finite_n_vs_limit(alpha, &[n], EDGE_MARGIN)?;
    let rows = curves
        .iter()
        .map(|c| vec![int(c.p), Cell::Float(c.sigma), Cell::Float(c.finite), Cell::Float(c.limit)])
        .collect();
    let summary = json!({
        "sup_norm_bulk": bulk.rows[0].sup_norm,
        "bulk_window": bulk.window,
        "sup_norm_all_sites": sup_all,
        "a": shape.a(),
        "b": shape.b(),
    });
    let config = json!({ "alphas": resolved, "pmax": pmax, "margin": EDGE_MARGIN });
    Ok((Table { columns: vec!["p", "sigma", "finite_n", "asymptotic"], rows, summary }, config))
}

fn edge_table(alpha: f64, n: usize) -> Result<(Table, Value), Failure> {
    if n < 4 {
        return Err(Failure::Config(anyhow!("--n must be at least 4 for an edge comparison")));
    }
    let r = edge_scaling_check(alpha, &[n / 2, n], &EdgeOptions::default())?;
    let rows = r
        .profiles
        .iter()
        .flat_map(|pr| pr.xs.iter().zip(&pr.gs).map(move |(&x, &g)| vec![int(pr.n), Cell::Float(x), Cell::Float(g)]))
        .collect();
    let summary = json!({ "exponent": r.fit, "collapse": r.collapse, "max_collapse": r.max_collapse, "scaling_integral": r.scaling });
    let config = json!({ "alpha": alpha, "sizes": [n / 2, n] });
    Ok((Table { columns: vec!["n", "x", "g"], rows, summary }, config))
}

fn sine_table(alpha: f64, n: usize, center: Option<usize>, smax: usize) -> Result<(Table, Value), Failure> {
    if smax == 0 {
        return Err(Failure::Config(anyhow!("--max-separation must be positive")));
    }
    let seps: Vec<usize> = (1..=smax).collect();
    let r = sine_kernel_check(alpha, n, center, &seps)?;
    let rows = r
        .rows
        .iter()
        .map(|x| {
            vec![
                int(x.separation),
                Cell::Float(x.exact),
                Cell::Float(x.prediction),
                Cell::Float(x.ratio),
                Cell::Float(x.shape_deviation),
            ]
        })
        .collect();
    let summary = json!({
        "center": r.center,
        "rho_bar": r.rho_bar,
        "reference_separation": r.reference_separation,
        "max_shape_deviation": r.max_shape_deviation,
    });
    let config = json!({ "alpha": alpha, "n": n, "center": center, "max_separation": smax });
    Ok((Table { columns: vec!["separation", "exact", "prediction", "ratio", "shape_deviation"], rows, summary }, config))
}

fn small_weight_table(rho: f64, n: usize, pmax: usize) -> Result<(Table, Value), Failure> {
    let bridge = small_weight_bridge(rho, n, pmax)?;
    let expansion = small_weight_expansion_check(rho, pmax);
    let rows = bridge
        .rows
        .iter()
        .zip(&expansion)
        .map(|(b, e)| {
            vec![
                int(b.p),
                Cell::Float(b.finite),
                Cell::Float(b.limit),
                Cell::Float(b.difference),
                Cell::Float(e.expansion),
                Cell::Float(e.difference),
            ]
        })
        .collect();
    let summary = json!({
        "max_bridge_difference": bridge.max_difference,
        "max_expansion_difference": expansion.iter().map(|e| e.difference).fold(0.0, f64::max),
    });
    let config = json!({ "rho": rho, "n": n, "pmax": pmax });
    let columns = vec!["p", "n_rho_finite", "limit", "bridge_difference", "expansion", "expansion_difference"];
    Ok((Table { columns, rows, summary }, config))
}

fn sample_table(args: &AlphaArgs, steps: u64, seed: u64, pmax: Option<usize>) -> Result<(Table, Value), Failure> {
    let (spec, resolved) = resolve_alphas(args)?;
    let chain = mcmc_sample(&spec, &McmcConfig::new(steps, seed))?;
    let est = estimate_density(&chain);
    let pmax = pmax.unwrap_or(est.mean.len().saturating_sub(1));
    let exact = Ensemble::new(spec).density_values(pmax);
    let rows = (0..=pmax)
        .map(|p| {
            let mean = est.mean.get(p).copied().unwrap_or(0.0);
            let err = est.stderr.get(p).copied().unwrap_or(0.0);
            let usable = est.entry_usable.get(p).copied().unwrap_or(false);
            let z = if usable { (mean - exact[p]) / err } else { f64::NAN };
            vec![int(p), Cell::Float(mean), Cell::Float(err), Cell::Bool(usable), Cell::Float(exact[p]), Cell::Float(z)]
        })
        .collect();
    let summary = json!({
        "acceptance_rate": chain.acceptance_rate(),
        "recorded": chain.recorded(),
        "burn_in": chain.burn_in,
        "error_bars_usable": est.usable,
    });
    let config = json!({ "alphas": resolved, "steps": steps, "seed": seed, "pmax": pmax });
    let columns = vec!["p", "rho_mcmc", "stderr", "stderr_usable", "rho_exact", "z"];
    Ok((Table { columns, rows, summary }, config))
}

fn validate_table(level: LevelArg) -> (Table, Value, usize) {
    let level = match level {
        LevelArg::Quick => Level::Quick,
        LevelArg::Full => Level::Full,
    };
    let reports = run_all(level);
    for r in &reports {
        eprintln!("{}", r.line());
    }
    let failed = reports.iter().filter(|r| !r.passed).count();
    let rows = reports
        .iter()
        .map(|r| {
            vec![
                Cell::Text(r.id.clone()),
                Cell::Text(r.title.clone()),
                Cell::Bool(r.passed),
                Cell::Float(r.metric),
                Cell::Float(r.tolerance),
                Cell::Text(r.detail.clone()),
            ]
        })
        .collect();
    let summary = json!({ "criteria": reports.len(), "failed": failed });
    let columns = vec!["id", "title", "passed", "metric", "tolerance", "detail"];
    (Table { columns, rows, summary }, json!({ "level": level }), failed)
}

fn write_table(table: &Table, format: Format, out: &mut dyn Write) -> anyhow::Result<()> {
    match format {
        Format::Csv => {
            let mut w = csv::Writer::from_writer(out);
            w.write_record(&table.columns)?;
            for row in &table.rows {
                w.write_record(row.iter().map(Cell::csv))?;
            }
            w.flush()?;
        }
        Format::Json => {
            let rows: Vec<Value> = table
                .rows
                .iter()
                .map(|row| {
                    Value::Object(table.columns.iter().zip(row).map(|(c, v)| (c.to_string(), v.json())).collect())
                })
                .collect();
            serde_json::to_writer_pretty(&mut *out, &rows)?;
            writeln!(out)?;
        }
    }
    Ok(())
}

fn sidecar_path(out: &Path) -> PathBuf {
    let mut s = out.as_os_str().to_owned();
    s.push(".config.json");
    PathBuf::from(s)
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Density { .. } => "density",
        Command::Kernel { .. } => "kernel",
        Command::Pair { .. } => "pair",
        Command::LimitShape { .. } => "limit-shape",
        Command::Edge { .. } => "edge",
        Command::Sine { .. } => "sine",
        Command::SmallWeights { .. } => "small-weights",
        Command::Sample { .. } => "sample",
        Command::Validate { .. } => "validate",
    }
}

fn run(cli: &Cli) -> Result<(), Failure> {
    if let Some(t) = cli.threads {
        if t == 0 {
            return Err(Failure::Config(anyhow!("--threads must be positive")));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(t)
            .build_global()
            .map_err(|e| Failure::Config(anyhow!("thread pool: {e}")))?;
    }
    let mut failed = 0;
    let (table, params) = match &cli.command {
        Command::Density { alpha, pmax } => density_table(alpha, *pmax)?,
        Command::Kernel { alpha, window } => kernel_table(alpha, window, false)?,
        Command::Pair { alpha, window } => kernel_table(alpha, window, true)?,
        Command::LimitShape { alpha, pmax, sigma_grid, tolerance } => {
            limit_shape_table(alpha, *pmax, sigma_grid.as_deref(), *tolerance)?
        }
        Command::Edge { alpha, n } => edge_table(*alpha, *n)?,
        Command::Sine { alpha, n, center, max_separation } => sine_table(*alpha, *n, *center, *max_separation)?,
        Command::SmallWeights { rho, n, pmax } => small_weight_table(*rho, *n, *pmax)?,
        Command::Sample { alpha, steps, seed, pmax } => sample_table(alpha, *steps, *seed, *pmax)?,
        Command::Validate { level } => {
            let (t, p, f) = validate_table(*level);
            failed = f;
            (t, p)
        }
    };
    let sidecar = json!({
        "tool": env!("CARGO_PKG_NAME"),
        "version": env!("CARGO_PKG_VERSION"),
        "command": command_name(&cli.command),
        "format": cli.format,
        "threads": cli.threads,
        "parameters": params,
        "summary": table.summary,
    });
    let io_err = |e: anyhow::Error| Failure::Config(e);
    match &cli.out {
        Some(path) => {
            let f = File::create(path).with_context(|| format!("creating {}", path.display())).map_err(io_err)?;
            let mut w = BufWriter::new(f);
            write_table(&table, cli.format, &mut w).map_err(io_err)?;
            w.flush().context("flushing output").map_err(io_err)?;
            let side = sidecar_path(path);
            let text = serde_json::to_string_pretty(&sidecar).context("encoding sidecar").map_err(io_err)?;
            std::fs::write(&side, text + "\n").with_context(|| format!("writing {}", side.display())).map_err(io_err)?;
        }
        None => {
            let stdout = io::stdout();
            let mut lock = stdout.lock();
            write_table(&table, cli.format, &mut lock).map_err(io_err)?;
            eprintln!("{}", serde_json::to_string(&sidecar).unwrap_or_default());
        }
    }
    if failed > 0 {
        return Err(Failure::Validation(failed));
    }
    Ok(())
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Config(e)) => {
            eprintln!("error: {e:#}");
            ExitCode::from(2)
        }
        Err(Failure::Numeric(e)) => {
            let diag = json!({ "error": "numeric", "command": command_name(&cli.command), "message": format!("{e:#}") });
            eprintln!("{diag}");
            ExitCode::from(1)
        }
        Err(Failure::Validation(n)) => {
            eprintln!("{n} criterion(s) failed");
            ExitCode::from(1)
        }
    }
}
