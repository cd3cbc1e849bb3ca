#![allow(clippy::neg_cmp_op_on_partial_ord)]

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand};
use hyperclean::cleaning::{derive_parameters, run_weighted_cleaning, TieBreak};
use hyperclean::harness::{generate, run_experiment, to_csv, ExperimentConfig, FamilySpec};
use hyperclean::hypergraph::{read_uhg, write_uhg};
use hyperclean::independent::{solver_registry, transfer_alpha, TransferOptions};
use hyperclean::nearly_log::{classify, ProbeConfig};
use hyperclean::weighted::read_weights;
use hyperclean::{CandidateFunction, UniformHypergraph};
use serde_json::Value;
use std::fs::{self, File};
use std::io::{BufReader, BufWriter, Write};
use std::path::{Path, PathBuf};

#[derive(Parser)]
#[command(
    name = "hyperclean",
    version,
    about = "Degree cleaning and independent sets in uniform hypergraphs"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify a growth function against the nearly-logarithmic conditions.
    CheckFn(CheckFnArgs),
    /// Run degree cleaning on a hypergraph and write the transcript.
    Clean(CleanArgs),
    /// Find and certify an independent set.
    Alpha(AlphaArgs),
    /// Run a sweep described by a TOML config.
    Experiment(ExperimentArgs),
    /// Sample an instance from a generator family.
    Gen(GenArgs),
}

#[derive(Args)]
struct CheckFnArgs {
    #[arg(long = "fn")]
    function: String,
    /// Slack of the windowed condition.
    #[arg(long, default_value_t = 0.1)]
    eps: f64,
    /// Window exponents, comma separated.
    #[arg(long, value_delimiter = ',', default_values_t = vec![0.0, 1.0, 2.0])]
    m: Vec<f64>,
    #[arg(long)]
    lambda: Option<f64>,
    /// Probe exponents `k` for `x = 10^k`, comma separated.
    #[arg(long, value_delimiter = ',')]
    decades: Option<Vec<i32>>,
}

#[derive(Args)]
struct SchedulingArgs {
    #[arg(long = "fn", default_value = "log")]
    function: String,
    #[arg(long, default_value_t = 0.5)]
    eps0: f64,
    #[arg(long)]
    eta: Option<f64>,
}

#[derive(Args)]
struct CleanArgs {
    #[arg(long)]
    input: PathBuf,
    #[command(flatten)]
    sched: SchedulingArgs,
    /// One positive rational per vertex; switches to weighted cleaning.
    #[arg(long)]
    weights: Option<PathBuf>,
    /// Maximum-degree delegate used for the bound chain when the run stops on S3.
    #[arg(long, default_value = "greedy")]
    delegate: String,
    #[arg(long)]
    out: PathBuf,
}

#[derive(Args)]
struct AlphaArgs {
    #[arg(long)]
    input: PathBuf,
    /// `exact[:cap]`, `enumerate`, `random:<seed>`, `greedy` or `transfer`.
    #[arg(long, default_value = "exact")]
    method: String,
    #[command(flatten)]
    sched: SchedulingArgs,
    #[arg(long, default_value = "greedy")]
    delegate: String,
}

#[derive(Args)]
struct ExperimentArgs {
    #[arg(long)]
    config: PathBuf,
    #[arg(long)]
    out: PathBuf,
    /// Also write the full report (rows and medians) as JSON.
    #[arg(long)]
    json: Option<PathBuf>,
}

#[derive(Args)]
struct GenArgs {
    #[arg(long)]
    family: String,
    #[arg(long)]
    n: usize,
    /// Target average degree.
    #[arg(long)]
    d: f64,
    /// Rank; edges have `r + 1` vertices.
    #[arg(long, default_value_t = 1)]
    r: usize,
    #[arg(long, default_value_t = 0)]
    seed: u64,
    #[arg(long)]
    out: PathBuf,
}

fn load(path: &Path) -> Result<UniformHypergraph> {
    let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    read_uhg(BufReader::new(file)).with_context(|| format!("reading {}", path.display()))
}

fn write_json(path: &Path, value: &Value) -> Result<()> {
    let mut out =
        BufWriter::new(File::create(path).with_context(|| format!("creating {}", path.display()))?);
    serde_json::to_writer_pretty(&mut out, value)?;
    writeln!(out)?;
    Ok(())
}

fn check_fn(args: CheckFnArgs) -> Result<()> {
    let f = CandidateFunction::parse(&args.function)?;
    let mut cfg = ProbeConfig {
        pairs: args.m.iter().map(|&m| (args.eps, m)).collect(),
        ..ProbeConfig::default()
    };
    if let Some(lambda) = args.lambda {
        if !(lambda > 1.0) {
            bail!("--lambda must exceed 1");
        }
        cfg.lambda = lambda;
    }
    if let Some(decades) = args.decades {
        if decades.len() < 2 {
            bail!("--decades needs at least two probes");
        }
        cfg.decades = decades;
    }
    println!("{}", serde_json::to_string_pretty(&classify(&f, &cfg))?);
    Ok(())
}

fn clean(args: CleanArgs) -> Result<()> {
    let h = load(&args.input)?;
    let f = CandidateFunction::parse(&args.sched.function)?;
    let params = derive_parameters(args.sched.eps0, h.rank(), args.sched.eta)?;
    if let Some(path) = &args.weights {
        let file = File::open(path).with_context(|| format!("opening {}", path.display()))?;
        let w = read_weights(BufReader::new(file))?;
        let t = run_weighted_cleaning(&h, &w, &f, &params, TieBreak::default())?;
        return write_json(&args.out, &serde_json::to_value(&t)?);
    }
    let delegate = solver_registry().build(&args.delegate)?;
    let report = transfer_alpha(
        &h,
        &f,
        &params,
        delegate.as_ref(),
        &TransferOptions::default(),
    )?;
    let mut value = serde_json::to_value(&report.transcript)?;
    if let Value::Object(map) = &mut value {
        map.insert(
            "bound_chain".into(),
            serde_json::to_value(&report.bound_chain)?,
        );
        map.insert(
            "independent_set".into(),
            serde_json::to_value(&report.certificate)?,
        );
    }
    write_json(&args.out, &value)
}

fn alpha(args: AlphaArgs) -> Result<()> {
    let h = load(&args.input)?;
    let value = if args.method == "transfer" {
        let f = CandidateFunction::parse(&args.sched.function)?;
        let params = derive_parameters(args.sched.eps0, h.rank(), args.sched.eta)?;
        let delegate = solver_registry().build(&args.delegate)?;
        let report = transfer_alpha(
            &h,
            &f,
            &params,
            delegate.as_ref(),
            &TransferOptions::default(),
        )?;
        let mut value = serde_json::to_value(&report.certificate)?;
        if let Value::Object(map) = &mut value {
            map.insert(
                "bound_chain".into(),
                serde_json::to_value(&report.bound_chain)?,
            );
        }
        value
    } else {
        let solver = solver_registry().build(&args.method)?;
        serde_json::to_value(solver.solve(&h)?)?
    };
    println!("{}", serde_json::to_string_pretty(&value)?);
    Ok(())
}

fn experiment(args: ExperimentArgs) -> Result<()> {
    let text = fs::read_to_string(&args.config)
        .with_context(|| format!("reading {}", args.config.display()))?;
    let cfg = ExperimentConfig::parse(&text)?;
    let report = run_experiment(&cfg)?;
    fs::write(&args.out, to_csv(&report))
        .with_context(|| format!("writing {}", args.out.display()))?;
    if let Some(path) = &args.json {
        write_json(path, &serde_json::to_value(&report)?)?;
    }
    Ok(())
}

fn gen(args: GenArgs) -> Result<()> {
    let h = generate(&FamilySpec {
        family: args.family,
        n: args.n,
        target_d: args.d,
        r: args.r,
        seed: args.seed,
    })?;
    let file =
        File::create(&args.out).with_context(|| format!("creating {}", args.out.display()))?;
    let mut out = BufWriter::new(file);
    write_uhg(&h, &mut out)?;
    out.flush()?;
    Ok(())
}

fn main() -> Result<()> {
    match Cli::parse().command {
        Command::CheckFn(a) => check_fn(a),
        Command::Clean(a) => clean(a),
        Command::Alpha(a) => alpha(a),
        Command::Experiment(a) => experiment(a),
        Command::Gen(a) => gen(a),
    }
}
