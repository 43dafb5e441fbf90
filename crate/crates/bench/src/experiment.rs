//! Experiment presets and the parallel run grid.

use std::fmt;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use anyhow::{bail, ensure, Context, Result};
use rayon::prelude::*;
use tspevo::engine::run;
use tspevo::{
    ConvergenceRecord, CrossoverChoice, CrossoverId, GaConfig, Instance64, Metric, MutationChoice,
    MutationId,
};

use crate::instances::{known_optimum, load_instance, resolve};
use crate::report::{write_convergence_csv, ResultRow};

/// One operator combination of a table.
#[derive(Debug, Clone, PartialEq)]
pub struct Column {
    pub label: String,
    pub crossover: CrossoverChoice,
    pub mutation: MutationChoice,
}

impl Column {
    fn new(label: &str, crossover: CrossoverChoice, mutation: MutationChoice) -> Self {
        Self {
            label: label.to_string(),
            crossover,
            mutation,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum TableId {
    T3_1,
    T3_2,
    T4_1,
    T4_2,
    T5_1,
}

impl TableId {
    pub const ALL: [TableId; 5] = [TableId::T3_1, TableId::T3_2, TableId::T4_1, TableId::T4_2, TableId::T5_1];

    pub fn name(self) -> &'static str {
        match self {
            TableId::T3_1 => "3.1",
            TableId::T3_2 => "3.2",
            TableId::T4_1 => "4.1",
            TableId::T4_2 => "4.2",
            TableId::T5_1 => "5.1",
        }
    }
}

impl fmt::Display for TableId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for TableId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        TableId::ALL
            .into_iter()
            .find(|t| t.name() == s)
            .ok_or_else(|| format!("unknown table `{s}` (expected 3.1, 3.2, 4.1, 4.2 or 5.1)"))
    }
}

/// Instances too slow for desk runs; only used when asked for by name.
pub const HEAVY_INSTANCES: &[&str] = &["rat783"];

const CHAPTER_3_4_INSTANCES: &[&str] = &[
    "rat783", "a280", "u159", "ch130", "bier127", "kroA100", "pr76", "berlin52", "att48", "eil51",
    "pr144",
];

const CHAPTER_5_INSTANCES: &[&str] = &[
    "rat783", "a280", "u159", "ch130", "bier127", "kroA100", "pr76", "berlin52", "att48", "eil51",
];

/// Parameters and columns of one published table.
#[derive(Debug, Clone, PartialEq)]
pub struct Preset {
    pub table: TableId,
    pub population: usize,
    pub generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub instances: Vec<String>,
    pub columns: Vec<Column>,
}

impl Preset {
    pub fn new(table: TableId) -> Self {
        use CrossoverChoice as X;
        use MutationChoice as M;
        let crossover_columns = || {
            vec![
                Column::new("SBC", X::Sbc, M::None),
                Column::new("SAC", X::Sac, M::None),
                Column::new("Collision", X::Single(CrossoverId::Collision), M::None),
                Column::new("PMX", X::Single(CrossoverId::Pmx), M::None),
                Column::new("Modified", X::Single(CrossoverId::Modified), M::None),
            ]
        };
        // the crossover never fires at rate 0; Modified is only a placeholder
        let idle = X::Single(CrossoverId::Modified);
        let mutation_columns = || {
            vec![
                Column::new("SBM", idle, M::Sbm),
                Column::new("SAM", idle, M::Sam),
                Column::new("Rearrangement", idle, M::Single(MutationId::Rearrangement)),
                Column::new("Exchange", idle, M::Single(MutationId::Exchange)),
            ]
        };
        let names = |list: &[&str]| -> Vec<String> {
            list.iter()
                .filter(|n| !HEAVY_INSTANCES.contains(n))
                .map(|n| n.to_string())
                .collect()
        };
        match table {
            TableId::T3_1 | TableId::T3_2 => Self {
                table,
                population: if table == TableId::T3_1 { 200 } else { 100 },
                generations: 8000,
                crossover_rate: 1.0,
                mutation_rate: 0.0,
                instances: names(CHAPTER_3_4_INSTANCES),
                columns: crossover_columns(),
            },
            TableId::T4_1 | TableId::T4_2 => Self {
                table,
                population: if table == TableId::T4_1 { 200 } else { 100 },
                generations: 8000,
                crossover_rate: 0.0,
                mutation_rate: 1.0,
                instances: names(CHAPTER_3_4_INSTANCES),
                columns: mutation_columns(),
            },
            TableId::T5_1 => {
                let mutations = [
                    ("Exchange", M::Single(MutationId::Exchange)),
                    ("SBM", M::Sbm),
                    ("SAM", M::Sam),
                ];
                let crossovers = [
                    ("Modified", X::Single(CrossoverId::Modified)),
                    ("Collision", X::Single(CrossoverId::Collision)),
                    ("SBC", X::Sbc),
                    ("SAC", X::Sac),
                ];
                let mut columns = Vec::new();
                for (mlabel, m) in mutations {
                    for (xlabel, x) in crossovers {
                        columns.push(Column::new(&format!("{mlabel}+{xlabel}"), x, m));
                    }
                }
                Self {
                    table,
                    population: 100,
                    generations: 1600,
                    crossover_rate: 1.0,
                    mutation_rate: 1.0,
                    instances: names(CHAPTER_5_INSTANCES),
                    columns,
                }
            }
        }
    }

    /// Shrinks the generation budget, keeping at least one generation.
    pub fn scaled(mut self, scale: f64) -> Self {
        assert!(scale > 0.0, "scale must be positive");
        self.generations = ((self.generations as f64 * scale).round() as usize).max(1);
        self
    }
}

/// A fully specified grid: instances x columns x seeds.
#[derive(Debug, Clone)]
pub struct ExperimentSpec {
    pub preset: Preset,
    pub runs: usize,
    pub base_seed: u64,
    pub metric: Metric,
    pub tournament_size: usize,
    /// Where per-run convergence CSVs go, if anywhere.
    pub convergence_dir: Option<PathBuf>,
}

impl ExperimentSpec {
    pub fn new(preset: Preset, runs: usize) -> Self {
        Self {
            preset,
            runs,
            base_seed: 1,
            metric: Metric::RoundedEuc2d,
            tournament_size: 2,
            convergence_dir: None,
        }
    }

    pub fn config(&self, column: &Column, seed: u64) -> GaConfig {
        GaConfig {
            population_size: self.preset.population,
            max_generations: self.preset.generations,
            crossover_rate: self.preset.crossover_rate,
            mutation_rate: self.preset.mutation_rate,
            crossover: column.crossover,
            mutation: column.mutation,
            tournament_size: self.tournament_size,
            seed,
            metric: self.metric,
            ..GaConfig::default()
        }
    }

    fn seeds(&self) -> impl Iterator<Item = u64> + '_ {
        (0..self.runs as u64).map(move |r| self.base_seed + r)
    }
}

/// Loads every instance of the preset from `dir`. Missing or unreadable
/// files are an error unless `skip_missing`, in which case they are
/// reported on stderr and left out.
pub fn load_instances(spec: &ExperimentSpec, dir: &Path, skip_missing: bool) -> Result<Vec<Instance64>> {
    let mut out = Vec::new();
    for name in &spec.preset.instances {
        let path = resolve(name, dir);
        match load_instance(&path, spec.metric) {
            Ok(inst) => out.push(inst),
            Err(e) if skip_missing => eprintln!("skipping {name}: {e:#}"),
            Err(e) => return Err(e).context(format!(
                "instance {name} unavailable (use --instances to pick others or --skip-missing)"
            )),
        }
    }
    ensure!(!out.is_empty(), "no instances to run");
    Ok(out)
}

fn convergence_file(dir: &Path, table: TableId, inst: &str, column: &str, seed: u64) -> PathBuf {
    let column: String = column
        .chars()
        .map(|c| if c.is_ascii_alphanumeric() { c } else { '_' })
        .collect();
    dir.join(format!("t{}_{inst}_{column}_seed{seed}.csv", table.name().replace('.', "_")))
}

/// Runs the whole grid in parallel. Rows come back in instance-major,
/// column-minor order and each run depends only on its own seed, so the
/// result does not depend on scheduling.
pub fn run_grid(spec: &ExperimentSpec, instances: &[Instance64]) -> Result<Vec<ResultRow>> {
    ensure!(spec.runs >= 1, "runs must be at least 1");
    for c in &spec.preset.columns {
        spec.config(c, 0).validate().with_context(|| format!("column {}", c.label))?;
    }
    if let Some(dir) = &spec.convergence_dir {
        std::fs::create_dir_all(dir).with_context(|| format!("cannot create {}", dir.display()))?;
    }
    let cells: Vec<(usize, usize, u64)> = (0..instances.len())
        .flat_map(|i| {
            (0..spec.preset.columns.len()).flat_map(move |c| spec.seeds().map(move |s| (i, c, s)))
        })
        .collect();
    let outcomes: Vec<Result<f64>> = cells
        .par_iter()
        .map(|&(i, c, seed)| {
            let inst = &instances[i];
            let column = &spec.preset.columns[c];
            let result = run(&spec.config(column, seed), inst)?;
            if let Some(dir) = &spec.convergence_dir {
                let path = convergence_file(dir, spec.preset.table, inst.name(), &column.label, seed);
                write_convergence_csv(&result.history, &path)?;
            }
            Ok(result.best.cost())
        })
        .collect();
    let mut costs = outcomes.into_iter();
    let mut rows = Vec::new();
    for inst in instances {
        for column in &spec.preset.columns {
            let best_costs = (0..spec.runs)
                .map(|_| costs.next().expect("one outcome per cell"))
                .collect::<Result<Vec<f64>>>()?;
            let optimum = match spec.metric {
                Metric::RoundedEuc2d => known_optimum(inst.name(), inst.len()),
                _ => None,
            };
            rows.push(ResultRow {
                table: spec.preset.table.name().to_string(),
                instance: inst.name().to_string(),
                n: inst.len(),
                column: column.label.clone(),
                crossover: column.crossover.name().to_string(),
                mutation: column.mutation.name().to_string(),
                population: spec.preset.population,
                generations: spec.preset.generations,
                best_costs,
                optimum,
            });
        }
    }
    Ok(rows)
}

/// Best-cost sequence must never rise.
pub fn check_monotone(history: &[ConvergenceRecord<f64>]) -> Result<()> {
    for w in history.windows(2) {
        if w[1].best_cost > w[0].best_cost {
            bail!(
                "best cost rose from {} to {} at generation {}",
                w[0].best_cost,
                w[1].best_cost,
                w[1].generation
            );
        }
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instances::synthetic_instance;

    #[test]
    fn preset_shapes() {
        let t31 = Preset::new(TableId::T3_1);
        assert_eq!((t31.population, t31.generations), (200, 8000));
        assert_eq!(t31.columns.len(), 5);
        assert_eq!(t31.instances.len(), 10);
        assert!(!t31.instances.iter().any(|n| n == "rat783"));
        assert_eq!(Preset::new(TableId::T3_2).population, 100);
        let t41 = Preset::new(TableId::T4_1);
        assert_eq!((t41.crossover_rate, t41.mutation_rate), (0.0, 1.0));
        assert_eq!(t41.columns.len(), 4);
        let t51 = Preset::new(TableId::T5_1).scaled(0.1);
        assert_eq!((t51.population, t51.generations), (100, 160));
        assert_eq!(t51.columns.len(), 12);
        assert_eq!(t51.columns[0].label, "Exchange+Modified");
        assert_eq!(t51.columns[11].label, "SAM+SAC");
        assert_eq!(t51.instances.len(), 9);
    }

    #[test]
    fn table_names_parse() {
        for t in TableId::ALL {
            assert_eq!(t.name().parse::<TableId>(), Ok(t));
        }
        assert!("3.3".parse::<TableId>().is_err());
    }

    #[test]
    fn grid_is_ordered_and_reproducible() {
        let mut preset = Preset::new(TableId::T5_1).scaled(0.005);
        preset.population = 12;
        preset.columns.truncate(3);
        let insts = vec![
            synthetic_instance("s1", 12, 1, Metric::RoundedEuc2d),
            synthetic_instance("s2", 9, 2, Metric::RoundedEuc2d),
        ];
        let spec = ExperimentSpec::new(preset, 3);
        let a = run_grid(&spec, &insts).unwrap();
        let b = run_grid(&spec, &insts).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.len(), 6);
        assert_eq!(a[0].instance, "s1");
        assert_eq!(a[3].instance, "s2");
        assert!(a.iter().all(|r| r.best_costs.len() == 3 && r.optimum.is_none()));
        let single = run(&spec.config(&spec.preset.columns[1], 2), &insts[1]).unwrap();
        assert_eq!(a[4].best_costs[1], single.best.cost());
    }

    #[test]
    fn monotone_check() {
        let rec = |g, b| ConvergenceRecord { generation: g, best_cost: b, mean_cost: b };
        assert!(check_monotone(&[rec(1, 5.0), rec(2, 5.0), rec(3, 4.0)]).is_ok());
        assert!(check_monotone(&[rec(1, 5.0), rec(2, 6.0)]).is_err());
    }
}
