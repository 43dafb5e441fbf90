//! Command-line front end.

use std::io::{self, Write};
use std::path::PathBuf;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use tspevo::engine::{run, DrawGranularity};
use tspevo::{CrossoverChoice, GaConfig, Metric, MutationChoice, Replacement};

use crate::experiment::{load_instances, run_grid, ExperimentSpec, Preset, TableId};
use crate::instances::{load_instance, resolve, tsplib_dir};
use crate::oracle::{brute_force_optimal, held_karp};
use crate::report::{fmt_cost, write_convergence, write_convergence_csv, write_results, write_usage_csv};
use crate::validate::{run_suite, SuiteOptions};

#[derive(Debug, Parser)]
#[command(name = "tspevo", version, about = "Genetic algorithm experiments on TSPLIB instances")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Single GA run; writes the convergence CSV.
    Run(RunArgs),
    /// Runs a table preset over several seeds; writes the result table CSV.
    Bench(BenchArgs),
    /// Exact optimum of a small instance by enumeration.
    Oracle(OracleArgs),
    /// Checks that every operator returns valid tours on random inputs.
    Validate(ValidateArgs),
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum MetricArg {
    Rounded,
    Raw,
}

impl From<MetricArg> for Metric {
    fn from(m: MetricArg) -> Self {
        match m {
            MetricArg::Rounded => Metric::RoundedEuc2d,
            MetricArg::Raw => Metric::RawEuc2d,
        }
    }
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum ReplacementArg {
    Elitist,
    Generational,
}

#[derive(Debug, Clone, Copy, ValueEnum)]
pub enum DrawArg {
    PerInvocation,
    PerGeneration,
}

#[derive(Debug, Args)]
pub struct RunArgs {
    /// TSPLIB file, or an instance name looked up in $TSPLIB_DIR.
    #[arg(long)]
    pub instance: String,
    /// sbc, sac, cowgc, cowlrgc, collision, pmx or modified.
    #[arg(long, default_value = "sbc")]
    pub crossover: CrossoverChoice,
    /// none, sbm, sam or a single mutation name.
    #[arg(long, default_value = "exchange")]
    pub mutation: MutationChoice,
    #[arg(long, default_value_t = 0.83)]
    pub pc: f64,
    #[arg(long, default_value_t = 0.02)]
    pub pm: f64,
    #[arg(long, default_value_t = 100)]
    pub pop: usize,
    #[arg(long, default_value_t = 2000)]
    pub gens: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, default_value_t = 2)]
    pub tournament: usize,
    #[arg(long, value_enum, default_value = "rounded")]
    pub metric: MetricArg,
    #[arg(long, value_enum, default_value = "elitist")]
    pub replacement: ReplacementArg,
    /// When SAC/SAM draw their operator.
    #[arg(long, value_enum, default_value = "per-invocation")]
    pub draw: DrawArg,
    /// Convergence CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Operator usage CSV path.
    #[arg(long)]
    pub usage: Option<PathBuf>,
}

#[derive(Debug, Args)]
pub struct BenchArgs {
    /// 3.1, 3.2, 4.1, 4.2 or 5.1.
    #[arg(long)]
    pub table: TableId,
    #[arg(long, default_value_t = 5)]
    pub runs: usize,
    /// Multiplies the preset's generation count.
    #[arg(long, default_value_t = 1.0)]
    pub scale: f64,
    /// Overrides the preset's population size.
    #[arg(long)]
    pub pop: Option<usize>,
    /// Comma-separated instance names replacing the preset's list.
    #[arg(long, value_delimiter = ',')]
    pub instances: Option<Vec<String>>,
    /// Leave out instances that cannot be loaded instead of failing.
    #[arg(long)]
    pub skip_missing: bool,
    /// Seeds are seed, seed+1, ..., seed+runs-1.
    #[arg(long, default_value_t = 1)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "rounded")]
    pub metric: MetricArg,
    /// Directory holding the instances (default: $TSPLIB_DIR or data/tsplib).
    #[arg(long)]
    pub tsplib_dir: Option<PathBuf>,
    /// Result table CSV path; stdout when absent.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Also write one convergence CSV per run into this directory.
    #[arg(long)]
    pub convergence_dir: Option<PathBuf>,
    /// Worker threads (0 = all cores).
    #[arg(long, default_value_t = 0)]
    pub threads: usize,
}

#[derive(Debug, Args)]
pub struct OracleArgs {
    #[arg(long)]
    pub instance: String,
    #[arg(long, value_enum, default_value = "rounded")]
    pub metric: MetricArg,
}

#[derive(Debug, Args)]
pub struct ValidateArgs {
    #[arg(long, default_value_t = 10_000)]
    pub trials: usize,
    #[arg(long, default_value_t = 4)]
    pub min_n: usize,
    #[arg(long, default_value_t = 60)]
    pub max_n: usize,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
}

pub fn execute(cli: Cli) -> Result<()> {
    match cli.command {
        Command::Run(a) => cmd_run(a),
        Command::Bench(a) => cmd_bench(a),
        Command::Oracle(a) => cmd_oracle(a),
        Command::Validate(a) => cmd_validate(a),
    }
}

fn cmd_run(a: RunArgs) -> Result<()> {
    let metric: Metric = a.metric.into();
    let inst = load_instance(&resolve(&a.instance, &tsplib_dir()), metric)?;
    let cfg = GaConfig {
        population_size: a.pop,
        max_generations: a.gens,
        crossover_rate: a.pc,
        mutation_rate: a.pm,
        crossover: a.crossover,
        mutation: a.mutation,
        tournament_size: a.tournament,
        seed: a.seed,
        metric,
        replacement: match a.replacement {
            ReplacementArg::Elitist => Replacement::Elitist,
            ReplacementArg::Generational => Replacement::GenerationalElite,
        },
        draw: match a.draw {
            DrawArg::PerInvocation => DrawGranularity::PerInvocation,
            DrawArg::PerGeneration => DrawGranularity::PerGeneration,
        },
        log_operators: a.usage.is_some(),
        ..GaConfig::default()
    };
    let result = run(&cfg, &inst).context("invalid configuration")?;
    match &a.out {
        Some(path) => write_convergence_csv(&result.history, path)?,
        None => write_convergence(&result.history, io::stdout().lock())?,
    }
    if let Some(path) = &a.usage {
        write_usage_csv(&result.usage, path)?;
    }
    eprintln!("best {} tour {}", fmt_cost(result.best.cost()), result.best.tour());
    Ok(())
}

fn cmd_bench(a: BenchArgs) -> Result<()> {
    if a.scale.is_nan() || a.scale <= 0.0 {
        bail!("--scale must be positive");
    }
    let mut preset = Preset::new(a.table).scaled(a.scale);
    if let Some(p) = a.pop {
        preset.population = p;
    }
    if let Some(list) = a.instances {
        preset.instances = list;
    }
    let mut spec = ExperimentSpec::new(preset, a.runs);
    spec.base_seed = a.seed;
    spec.metric = a.metric.into();
    spec.convergence_dir = a.convergence_dir;
    let dir = a.tsplib_dir.unwrap_or_else(tsplib_dir);
    let instances = load_instances(&spec, &dir, a.skip_missing)?;
    let pool = rayon::ThreadPoolBuilder::new().num_threads(a.threads).build()?;
    let rows = pool.install(|| run_grid(&spec, &instances))?;
    match &a.out {
        Some(path) => crate::report::write_results_csv(&rows, path)?,
        None => write_results(&rows, io::stdout().lock())?,
    }
    Ok(())
}

fn cmd_oracle(a: OracleArgs) -> Result<()> {
    let inst = load_instance(&resolve(&a.instance, &tsplib_dir()), a.metric.into())?;
    let (tour, cost) = brute_force_optimal(&inst)?;
    let dp = held_karp(&inst)?;
    if dp != cost {
        bail!("enumeration gives {cost} but the subset dynamic program gives {dp}");
    }
    let mut out = io::stdout().lock();
    writeln!(out, "cost {}", fmt_cost(cost))?;
    writeln!(out, "tour {tour}")?;
    Ok(())
}

fn cmd_validate(a: ValidateArgs) -> Result<()> {
    if a.min_n < 4 || a.min_n > a.max_n {
        bail!("need 4 <= --min-n <= --max-n");
    }
    let reports = run_suite(&SuiteOptions {
        trials: a.trials,
        min_n: a.min_n,
        max_n: a.max_n,
        seed: a.seed,
    });
    let mut out = io::stdout().lock();
    let mut failed = 0;
    for r in &reports {
        let status = if r.passed() { "ok" } else { "FAIL" };
        writeln!(out, "{:<10} {:>6} trials {:>6} invalid  {status}", r.operator, r.trials, r.failures)?;
        if let Some(f) = &r.first_failure {
            writeln!(out, "    {f}")?;
        }
        failed += usize::from(!r.passed());
    }
    if failed > 0 {
        bail!("{failed} operator(s) produced invalid tours");
    }
    Ok(())
}
