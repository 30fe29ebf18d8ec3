//! Command-line front end: one subcommand per library capability, with
//! machine-readable JSON (default) or CSV output on stdout.
//!
//! Exit status: 0 on success, 1 when a validation/table run has failing
//! rows, 2 on argument or domain errors.

mod output;

use anyhow::Context;
use clap::{Parser, Subcommand, ValueEnum};
use output::{num, opt_num, CsvTable, Envelope};
use serde::Serialize;
use serde_json::json;
use sinctrunc::bounds::{
    cp_constant, feasibility_threshold, l2_truncation_bound, pp_constant, truncation_constant,
    SamplingGeometry, TruncationConfig,
};
use sinctrunc::extrema::{
    classify_half_point, pstar_lower_bound, pstar_upper_bound, scan_max, sharpness_threshold,
    solve_pstar,
};
use sinctrunc::harness::{
    campaign_plan, default_figures, figure_data, rate_fit, reproduce_cn_table,
    reproduce_pstar_table, reproduce_threshold_table, run_campaign_cell, CampaignConfig,
    CampaignReport, RateFit, TableReport,
};
use sinctrunc::restore::{
    default_corpus, low_discrepancy_probes, make_signal, measure_error, truncated_wks,
    BandlimitedSignal,
};
use sinctrunc::sincsum::{h_sum, PowerSumParams};
use sinctrunc::specfun::{incomplete_lambda, LambdaQuery};
use std::path::PathBuf;
use std::process::ExitCode;

#[derive(Parser)]
#[command(name = "sinctrunc", version, about = "Truncation-error bounds for cardinal-series sampling restoration", long_about = None)]
struct Cli {
    #[command(subcommand)]
    command: Command,

    /// Output format for results on stdout
    #[arg(long, global = true, value_enum, default_value_t = Format::Json)]
    format: Format,

    /// Write the output to this file instead of stdout
    #[arg(long, global = true)]
    out: Option<PathBuf>,

    /// Absolute tolerance for series evaluations and solvers
    #[arg(long, global = true, default_value_t = 1e-12)]
    tol: f64,

    /// Seed for probe generation and random corpus draws
    #[arg(long, global = true, default_value_t = 0)]
    seed: u64,

    /// Worker threads for `validate` and `tables` (default: all cores)
    #[arg(long, global = true)]
    jobs: Option<usize>,

    /// Signal corpus file: one `<kind> key=value ...` descriptor per line
    #[arg(long, global = true)]
    signals: Option<PathBuf>,
}

#[derive(Copy, Clone, ValueEnum)]
enum Format {
    Json,
    Csv,
}

#[derive(Subcommand)]
enum Command {
    /// Solve for the critical exponent p* at truncation size N
    Pstar {
        #[arg(long)]
        n: u32,
    },
    /// Classify x = 1/2 as local max/min of the tail sum at exponent p
    Classify {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        n: u32,
    },
    /// Evaluate the tail sinc power sum at a point
    Hsum {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        n: u32,
        #[arg(long)]
        x: f64,
    },
    /// Locate the global maximum of the tail sum on [1/2, 1)
    Scan {
        #[arg(long)]
        p: f64,
        #[arg(long)]
        n: u32,
        #[arg(long, default_value_t = 4096)]
        points: u32,
    },
    /// Evaluate the incomplete Lambda function λ(s;a)
    Lambda {
        #[arg(long)]
        s: f64,
        #[arg(long, default_value_t = 0.0)]
        a: f64,
    },
    /// Universal truncation constant and companion bounds
    Bound {
        /// Per-axis truncation sizes, comma separated
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long)]
        q: f64,
        /// Replicate a single N over d axes
        #[arg(long)]
        d: Option<usize>,
    },
    /// Reconstruct corpus signals and measure the restoration error
    Reconstruct {
        /// Per-axis truncation sizes, comma separated
        #[arg(long, value_delimiter = ',')]
        n: Vec<u32>,
        #[arg(long, default_value_t = 1)]
        d: usize,
        /// Evaluate at this point instead of sweeping probes
        #[arg(long, value_delimiter = ',')]
        x: Option<Vec<f64>>,
        #[arg(long, default_value_t = 1000)]
        probes: usize,
    },
    /// Run the bound-validation campaign over (signal, N, q) cells
    Validate {
        /// Truncation sizes to sweep, comma separated
        #[arg(long, value_delimiter = ',')]
        n: Option<Vec<u32>>,
        /// Hölder exponents to sweep, comma separated
        #[arg(long, value_delimiter = ',')]
        q: Option<Vec<f64>>,
        /// Dimensions to cover, comma separated
        #[arg(long, value_delimiter = ',')]
        d: Option<Vec<usize>>,
        #[arg(long, default_value_t = 1000)]
        probes: usize,
    },
    /// Reproduce the reference tables and rate fits
    Tables,
    /// Emit tail-sum series data for plotting
    Figure {
        #[arg(long)]
        p: Option<f64>,
        #[arg(long)]
        n: Option<u32>,
        #[arg(long, default_value_t = 1200)]
        points: u32,
        /// Plot range `lo,hi` (default 0,3)
        #[arg(long, value_delimiter = ',')]
        range: Option<Vec<f64>>,
    },
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(&cli) {
        Ok(all_pass) => {
            if all_pass {
                ExitCode::SUCCESS
            } else {
                ExitCode::from(1)
            }
        }
        Err(err) => {
            eprintln!("error: {err:#}");
            ExitCode::from(2)
        }
    }
}

/// Dispatches the subcommand; returns whether every validation row passed.
fn run(cli: &Cli) -> anyhow::Result<bool> {
    let command_echo = std::env::args().collect::<Vec<_>>().join(" ");
    let (config, results, table, all_pass) = dispatch(cli)?;
    let envelope = Envelope::new(command_echo, config, cli.seed, results);
    let body = match cli.format {
        Format::Json => envelope.to_json()?,
        Format::Csv => envelope.to_csv(&table),
    };
    match &cli.out {
        Some(path) => std::fs::write(path, body.as_bytes())
            .with_context(|| format!("writing {}", path.display()))?,
        None => println!("{body}"),
    }
    Ok(all_pass)
}

type Dispatched = (serde_json::Value, serde_json::Value, CsvTable, bool);

fn to_value<T: Serialize>(value: &T) -> anyhow::Result<serde_json::Value> {
    Ok(serde_json::to_value(value)?)
}

fn dispatch(cli: &Cli) -> anyhow::Result<Dispatched> {
    match &cli.command {
        Command::Pstar { n } => {
            let root = solve_pstar(*n, cli.tol)?;
            #[derive(Serialize)]
            struct Payload {
                n: u32,
                value: f64,
                bracket_lower: f64,
                bracket_upper: f64,
                residual: f64,
                sharpness_threshold: f64,
            }
            let payload = Payload {
                n: *n,
                value: root.value,
                bracket_lower: pstar_lower_bound(*n)?,
                bracket_upper: pstar_upper_bound(*n)?,
                residual: root.residual,
                sharpness_threshold: sharpness_threshold(*n),
            };
            let table = CsvTable {
                header: vec!["n", "value", "bracket_lower", "bracket_upper", "residual"],
                rows: vec![vec![
                    n.to_string(),
                    num(payload.value),
                    num(payload.bracket_lower),
                    num(payload.bracket_upper),
                    num(payload.residual),
                ]],
            };
            Ok((
                json!({"n": n, "tol": cli.tol}),
                to_value(&payload)?,
                table,
                true,
            ))
        }
        Command::Classify { p, n } => {
            let report = classify_half_point(*p, *n)?;
            let table = CsvTable {
                header: vec!["p", "n", "abscissa", "value", "kind", "second_derivative"],
                rows: vec![vec![
                    num(*p),
                    n.to_string(),
                    num(report.abscissa),
                    num(report.value),
                    format!("{:?}", report.kind),
                    num(report.second_derivative),
                ]],
            };
            Ok((json!({"p": p, "n": n}), to_value(&report)?, table, true))
        }
        Command::Hsum { p, n, x } => {
            let eval = h_sum(&PowerSumParams::new(*p, *n, cli.tol)?, *x)?;
            let table = CsvTable {
                header: vec!["p", "n", "x", "value", "tail_bound", "terms_used"],
                rows: vec![vec![
                    num(*p),
                    n.to_string(),
                    num(*x),
                    num(eval.value),
                    num(eval.tail_bound),
                    eval.terms_used.to_string(),
                ]],
            };
            Ok((
                json!({"p": p, "n": n, "x": x, "tol": cli.tol}),
                to_value(&eval)?,
                table,
                true,
            ))
        }
        Command::Scan { p, n, points } => {
            let report = scan_max(*p, *n, *points)?;
            let table = CsvTable {
                header: vec!["p", "n", "grid_points", "abscissa", "value", "kind"],
                rows: vec![vec![
                    num(*p),
                    n.to_string(),
                    points.to_string(),
                    num(report.abscissa),
                    num(report.value),
                    format!("{:?}", report.kind),
                ]],
            };
            Ok((
                json!({"p": p, "n": n, "points": points}),
                to_value(&report)?,
                table,
                true,
            ))
        }
        Command::Lambda { s, a } => {
            let eval = incomplete_lambda(&LambdaQuery::new(*s, *a, cli.tol)?)?;
            let table = CsvTable {
                header: vec!["s", "a", "value", "tail_bound", "terms_used"],
                rows: vec![vec![
                    num(*s),
                    num(*a),
                    num(eval.value),
                    num(eval.tail_bound),
                    eval.terms_used.to_string(),
                ]],
            };
            Ok((
                json!({"s": s, "a": a, "tol": cli.tol}),
                to_value(&eval)?,
                table,
                true,
            ))
        }
        Command::Bound { n, q, d } => {
            let ns = expand_ns(n, *d)?;
            let dims = ns.len();
            let cfg = TruncationConfig::new(&ns, *q)?;
            let p = cfg.holder_p();
            #[derive(Serialize)]
            struct Payload {
                ns: Vec<u32>,
                d: usize,
                q: f64,
                p: f64,
                feasibility_threshold: f64,
                truncation_constant: f64,
                l2_bound: f64,
                cp_constant: f64,
                pp_constant: f64,
            }
            let n_min = *ns.iter().min().expect("non-empty");
            let payload = Payload {
                ns: ns.clone(),
                d: dims,
                q: *q,
                p,
                feasibility_threshold: feasibility_threshold(n_min),
                truncation_constant: truncation_constant(&cfg)?,
                l2_bound: l2_truncation_bound(&ns)?,
                cp_constant: cp_constant(p)?,
                pp_constant: pp_constant(&SamplingGeometry::regular(dims)?, *q)?,
            };
            let table = CsvTable {
                header: vec![
                    "ns",
                    "d",
                    "q",
                    "p",
                    "truncation_constant",
                    "l2_bound",
                    "cp_constant",
                    "pp_constant",
                ],
                rows: vec![vec![
                    join_ns(&ns),
                    dims.to_string(),
                    num(*q),
                    num(p),
                    num(payload.truncation_constant),
                    num(payload.l2_bound),
                    num(payload.cp_constant),
                    num(payload.pp_constant),
                ]],
            };
            Ok((json!({"ns": ns, "q": q}), to_value(&payload)?, table, true))
        }
        Command::Reconstruct { n, d, x, probes } => {
            let ns = expand_ns(n, Some(*d))?;
            let signals = load_corpus(cli, ns.len())?;
            #[derive(Serialize)]
            struct Row {
                signal: String,
                ns: Vec<u32>,
                probes: usize,
                sup_error: f64,
                point: Option<Vec<f64>>,
                reference: Option<f64>,
                reconstructed: Option<f64>,
            }
            let mut rows = Vec::new();
            for sig in &signals {
                match x {
                    Some(point) => {
                        let y = truncated_wks(sig, point, &ns)?;
                        let f = sig.evaluate(point);
                        rows.push(Row {
                            signal: sig.label().into(),
                            ns: ns.clone(),
                            probes: 1,
                            sup_error: (f - y).abs(),
                            point: Some(point.clone()),
                            reference: Some(f),
                            reconstructed: Some(y),
                        });
                    }
                    None => {
                        let pts = low_discrepancy_probes(ns.len(), *probes, cli.seed, -2.0, 2.0)?;
                        rows.push(Row {
                            signal: sig.label().into(),
                            ns: ns.clone(),
                            probes: *probes,
                            sup_error: measure_error(sig, &pts, &ns)?,
                            point: None,
                            reference: None,
                            reconstructed: None,
                        });
                    }
                }
            }
            let table = CsvTable {
                header: vec!["signal", "ns", "probes", "sup_error"],
                rows: rows
                    .iter()
                    .map(|r| {
                        vec![
                            r.signal.clone(),
                            join_ns(&r.ns),
                            r.probes.to_string(),
                            num(r.sup_error),
                        ]
                    })
                    .collect(),
            };
            Ok((
                json!({"ns": ns, "d": d, "probes": probes, "x": x}),
                to_value(&rows)?,
                table,
                true,
            ))
        }
        Command::Validate { n, q, d, probes } => {
            let dims = d.clone().unwrap_or_else(|| vec![1, 2]);
            let mut signals = Vec::new();
            for &dim in &dims {
                signals.extend(load_corpus(cli, dim)?);
            }
            let config = CampaignConfig {
                ns: n.clone().unwrap_or_else(|| (1..=8).collect()),
                qs: q.clone().unwrap_or_else(|| vec![1.03, 1.2, 2.0, 3.0]),
                probes: *probes,
                seed: cli.seed,
                ..CampaignConfig::default()
            };
            let report = run_campaign_parallel(&signals, &config, cli.jobs)?;
            let all_pass = report.all_pass();
            let table = campaign_csv(&report);
            Ok((
                json!({"ns": config.ns, "qs": config.qs, "dims": dims, "probes": probes}),
                to_value(&report)?,
                table,
                all_pass,
            ))
        }
        Command::Tables => {
            let pstar = reproduce_pstar_table()?;
            let threshold = reproduce_threshold_table();
            let cn = reproduce_cn_table()?;
            let rates = vec![
                rate_fit(2.0, 1, &[4, 8, 16, 32, 64])?,
                rate_fit(3.0, 1, &[4, 8, 16, 32, 64])?,
            ];
            let all_pass = pstar.all_pass() && threshold.all_pass() && cn.all_pass();
            #[derive(Serialize)]
            struct Payload {
                pstar: TableReport,
                threshold: TableReport,
                cn: TableReport,
                rates: Vec<RateFit>,
                all_pass: bool,
            }
            let payload = Payload {
                pstar,
                threshold,
                cn,
                rates,
                all_pass,
            };
            let mut rows = Vec::new();
            for report in [&payload.pstar, &payload.threshold, &payload.cn] {
                for row in &report.rows {
                    rows.push(vec![
                        report.table.clone(),
                        row.label.clone(),
                        num(row.computed),
                        num(row.reference),
                        num(row.deviation),
                        row.pass.to_string(),
                    ]);
                }
            }
            for fit in &payload.rates {
                rows.push(vec![
                    format!("rate(q={})", fit.q),
                    format!("d={}", fit.d),
                    num(fit.slope),
                    num(-1.0 / fit.q),
                    num((fit.slope + 1.0 / fit.q).abs()),
                    String::from("-"),
                ]);
            }
            let table = CsvTable {
                header: vec![
                    "table",
                    "label",
                    "computed",
                    "reference",
                    "deviation",
                    "pass",
                ],
                rows,
            };
            Ok((json!({}), to_value(&payload)?, table, all_pass))
        }
        Command::Figure {
            p,
            n,
            points,
            range,
        } => {
            let range = match range {
                None => (0.0, 3.0),
                Some(r) if r.len() == 2 => (r[0], r[1]),
                Some(r) => anyhow::bail!("--range takes exactly two values, got {}", r.len()),
            };
            let series = match (p, n) {
                (Some(p), Some(n)) => vec![figure_data(*p, *n, range, *points)?],
                (None, None) => default_figures(*points)?,
                _ => anyhow::bail!("--p and --n must be given together"),
            };
            let mut rows = Vec::new();
            for s in &series {
                for &(x, v) in &s.points {
                    rows.push(vec![num(s.p), s.n.to_string(), num(x), num(v)]);
                }
            }
            let table = CsvTable {
                header: vec!["p", "n", "x", "value"],
                rows,
            };
            Ok((
                json!({"p": p, "n": n, "points": points, "range": [range.0, range.1]}),
                to_value(&series)?,
                table,
                true,
            ))
        }
    }
}

/// `--n 2,3` is taken verbatim; `--n 2 --d 3` replicates over axes.
fn expand_ns(n: &[u32], d: Option<usize>) -> anyhow::Result<Vec<u32>> {
    anyhow::ensure!(!n.is_empty(), "--n requires at least one value");
    match d {
        None => Ok(n.to_vec()),
        Some(d) => {
            anyhow::ensure!(d >= 1, "--d must be at least 1");
            if n.len() == d {
                Ok(n.to_vec())
            } else if n.len() == 1 {
                Ok(vec![n[0]; d])
            } else {
                anyhow::bail!("--n has {} values but --d is {d}", n.len())
            }
        }
    }
}

fn join_ns(ns: &[u32]) -> String {
    ns.iter()
        .map(|v| v.to_string())
        .collect::<Vec<_>>()
        .join(";")
}

/// Corpus from `--signals` (one descriptor per line, `#` comments) or the
/// built-in default.
fn load_corpus(cli: &Cli, d: usize) -> anyhow::Result<Vec<BandlimitedSignal>> {
    match &cli.signals {
        None => Ok(default_corpus(d, cli.seed)?),
        Some(path) => {
            let text = std::fs::read_to_string(path)
                .with_context(|| format!("reading {}", path.display()))?;
            let mut signals = Vec::new();
            for line in text.lines() {
                let line = line.trim();
                if line.is_empty() || line.starts_with('#') {
                    continue;
                }
                signals.push(make_signal(line, d)?);
            }
            anyhow::ensure!(!signals.is_empty(), "no signals in {}", path.display());
            Ok(signals)
        }
    }
}

/// Plans the campaign, then measures the cells on a worker pool; results
/// keep plan order, so the report is identical to the sequential one.
fn run_campaign_parallel(
    signals: &[BandlimitedSignal],
    config: &CampaignConfig,
    jobs: Option<usize>,
) -> anyhow::Result<CampaignReport> {
    use rayon::prelude::*;
    let (cells, skipped) = campaign_plan(signals, config)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(jobs.unwrap_or_default())
        .build()
        .context("building worker pool")?;
    let results: Result<Vec<_>, sinctrunc::Error> = pool.install(|| {
        cells
            .par_iter()
            .map(|cell| run_campaign_cell(signals, cell, config))
            .collect()
    });
    Ok(CampaignReport {
        seed: config.seed,
        probes: config.probes,
        cells: results?,
        skipped,
    })
}

fn campaign_csv(report: &CampaignReport) -> CsvTable {
    let mut rows = Vec::new();
    for cell in &report.cells {
        rows.push(vec![
            cell.cell.signal.clone(),
            cell.cell.d.to_string(),
            cell.cell.n.to_string(),
            num(cell.cell.q),
            num(cell.cell.norm_q),
            num(cell.cell.bound),
            opt_num(cell.cell.l2_bound),
            num(cell.measured),
            num(cell.margin),
            cell.pass.to_string(),
            String::new(),
        ]);
    }
    for skip in &report.skipped {
        rows.push(vec![
            skip.signal.clone(),
            skip.d.to_string(),
            skip.n.to_string(),
            num(skip.q),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::new(),
            String::from("skipped"),
            skip.reason.clone(),
        ]);
    }
    CsvTable {
        header: vec![
            "signal", "d", "n", "q", "norm_q", "bound", "l2_bound", "measured", "margin", "pass",
            "reason",
        ],
        rows,
    }
}
