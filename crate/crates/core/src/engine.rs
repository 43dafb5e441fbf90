//! The generational loop.
//!
//! Each generation produces `floor(pc * P)` crossover offspring from
//! tournament-selected couples, then `floor(pm * P)` mutants of individuals
//! drawn from those offspring (or from the population when there are none),
//! and finally keeps the best `P` of parents and children together.

use std::collections::HashSet;
use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;
use thiserror::Error;

use crate::crossover::{apply_crossover, CrossoverId};
use crate::instance::{Instance, Metric};
use crate::mutation::{apply_mutation, MutationId};
use crate::rng::{RunStreams, Stream};
use crate::scalar::Scalar;
use crate::strategy::{sac, sam, sbc, sbm, CrossoverPortfolio, MutationPortfolio};
use crate::tour::{EvaluatedTour, Tour};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum CrossoverChoice {
    Single(CrossoverId),
    Sbc,
    Sac,
}

impl CrossoverChoice {
    pub fn name(self) -> &'static str {
        match self {
            CrossoverChoice::Single(id) => id.name(),
            CrossoverChoice::Sbc => "sbc",
            CrossoverChoice::Sac => "sac",
        }
    }
}

impl fmt::Display for CrossoverChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CrossoverChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "sbc" => Ok(CrossoverChoice::Sbc),
            "sac" => Ok(CrossoverChoice::Sac),
            other => other.parse().map(CrossoverChoice::Single),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum MutationChoice {
    None,
    Single(MutationId),
    Sbm,
    Sam,
}

impl MutationChoice {
    pub fn name(self) -> &'static str {
        match self {
            MutationChoice::None => "none",
            MutationChoice::Single(id) => id.name(),
            MutationChoice::Sbm => "sbm",
            MutationChoice::Sam => "sam",
        }
    }
}

impl fmt::Display for MutationChoice {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MutationChoice {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s.to_ascii_lowercase().as_str() {
            "none" => Ok(MutationChoice::None),
            "sbm" => Ok(MutationChoice::Sbm),
            "sam" => Ok(MutationChoice::Sam),
            other => other.parse().map(MutationChoice::Single),
        }
    }
}

/// How survivors are chosen at the end of a generation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Replacement {
    /// Parents and children compete; the best `P` survive.
    #[default]
    Elitist,
    /// Children replace the parents except for the single best parent.
    GenerationalElite,
}

/// When SAM/SAC draw their operator.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum DrawGranularity {
    #[default]
    PerInvocation,
    PerGeneration,
}

#[derive(Debug, Error, PartialEq)]
pub enum ConfigError {
    #[error("population size must be at least 2, got {0}")]
    Population(usize),
    #[error("max generations must be at least 1")]
    Generations,
    #[error("{name} must lie in [0, 1], got {value}")]
    Rate { name: &'static str, value: f64 },
    #[error("tournament size {k} must be in 2..={population}")]
    Tournament { k: usize, population: usize },
}

/// Every parameter of one run.
#[derive(Debug, Clone, PartialEq)]
pub struct GaConfig {
    pub population_size: usize,
    pub max_generations: usize,
    pub crossover_rate: f64,
    pub mutation_rate: f64,
    pub crossover: CrossoverChoice,
    pub mutation: MutationChoice,
    pub tournament_size: usize,
    pub seed: u64,
    /// Distance convention applied to coordinate instances before the run.
    pub metric: Metric,
    pub replacement: Replacement,
    pub draw: DrawGranularity,
    pub crossover_portfolio: CrossoverPortfolio,
    pub mutation_portfolio: MutationPortfolio,
    /// Record which operator produced every child.
    pub log_operators: bool,
}

impl Default for GaConfig {
    fn default() -> Self {
        Self {
            population_size: 100,
            max_generations: 2000,
            crossover_rate: 0.83,
            mutation_rate: 0.02,
            crossover: CrossoverChoice::Sbc,
            mutation: MutationChoice::Single(MutationId::Exchange),
            tournament_size: 2,
            seed: 0,
            metric: Metric::RoundedEuc2d,
            replacement: Replacement::Elitist,
            draw: DrawGranularity::PerInvocation,
            crossover_portfolio: CrossoverPortfolio::default(),
            mutation_portfolio: MutationPortfolio::default(),
            log_operators: false,
        }
    }
}

impl GaConfig {
    pub fn validate(&self) -> Result<(), ConfigError> {
        if self.population_size < 2 {
            return Err(ConfigError::Population(self.population_size));
        }
        if self.max_generations < 1 {
            return Err(ConfigError::Generations);
        }
        for (name, value) in [
            ("crossover rate", self.crossover_rate),
            ("mutation rate", self.mutation_rate),
        ] {
            if !(0.0..=1.0).contains(&value) {
                return Err(ConfigError::Rate { name, value });
            }
        }
        if self.tournament_size < 2 || self.tournament_size > self.population_size {
            return Err(ConfigError::Tournament {
                k: self.tournament_size,
                population: self.population_size,
            });
        }
        Ok(())
    }

    /// Number of crossover offspring per generation.
    pub fn crossover_count(&self) -> usize {
        (self.crossover_rate * self.population_size as f64).floor() as usize
    }

    /// Number of mutants per generation.
    pub fn mutation_count(&self) -> usize {
        (self.mutation_rate * self.population_size as f64).floor() as usize
    }
}

/// Members sorted by ascending cost.
#[derive(Debug, Clone, PartialEq)]
pub struct Population<T: Scalar> {
    members: Vec<EvaluatedTour<T>>,
}

impl<T: Scalar> Population<T> {
    /// Sorts `members` by cost; ties keep their input order.
    pub fn from_members(mut members: Vec<EvaluatedTour<T>>) -> Self {
        sort_members(&mut members);
        Self { members }
    }

    pub fn members(&self) -> &[EvaluatedTour<T>] {
        &self.members
    }

    pub fn len(&self) -> usize {
        self.members.len()
    }

    pub fn is_empty(&self) -> bool {
        self.members.is_empty()
    }

    pub fn best(&self) -> &EvaluatedTour<T> {
        &self.members[0]
    }

    pub fn mean_cost(&self) -> T {
        let sum: T = self.members.iter().map(|m| m.cost()).sum();
        sum / T::lit(self.members.len() as f64)
    }

    pub fn tour_set(&self) -> HashSet<Tour> {
        self.members.iter().map(|m| m.tour().clone()).collect()
    }
}

fn sort_members<T: Scalar>(members: &mut [EvaluatedTour<T>]) {
    members.sort_by(|a, b| a.cost().partial_cmp(&b.cost()).expect("costs are finite"));
}

/// Best and mean cost after one generation.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ConvergenceRecord<T> {
    pub generation: usize,
    pub best_cost: T,
    pub mean_cost: T,
}

/// Which operator produced a child.
#[derive(Debug, Clone, PartialEq)]
pub struct OperatorUsage {
    pub generation: usize,
    pub strategy: &'static str,
    pub operator: &'static str,
    pub child_cost: f64,
}

/// Receives progress events during [`run_with_sink`].
pub trait RunSink<T> {
    fn on_generation(&mut self, _record: &ConvergenceRecord<T>) {}
    fn on_operator(&mut self, _usage: &OperatorUsage) {}
}

/// Sink that ignores everything.
pub struct NullSink;

impl<T> RunSink<T> for NullSink {}

#[derive(Debug, Clone, PartialEq)]
pub struct RunResult<T: Scalar> {
    pub best: EvaluatedTour<T>,
    pub history: Vec<ConvergenceRecord<T>>,
    pub usage: Vec<OperatorUsage>,
}

/// `size` uniformly random tours, evaluated and sorted.
pub fn init_population<T: Scalar, R: Rng + ?Sized>(
    inst: &Instance<T>,
    size: usize,
    rng: &mut R,
) -> Population<T> {
    assert!(size >= 2, "population size must be at least 2");
    let members = (0..size)
        .map(|_| EvaluatedTour::new(inst, Tour::random(inst.len(), rng)))
        .collect();
    Population::from_members(members)
}

/// Index of the winner of a `k`-tournament over distinct contestants.
pub fn tournament<R: Rng + ?Sized>(population_size: usize, k: usize, rng: &mut R) -> usize {
    assert!(k >= 1 && k <= population_size, "tournament size {k} for {population_size}");
    // members are sorted, so the lowest index is the cheapest contestant
    sample(rng, population_size, k)
        .into_iter()
        .min()
        .expect("k >= 1")
}

/// Two independent `k`-tournaments.
pub fn select_parents<'a, T: Scalar, R: Rng + ?Sized>(
    pop: &'a Population<T>,
    k: usize,
    rng: &mut R,
) -> (&'a EvaluatedTour<T>, &'a EvaluatedTour<T>) {
    let a = tournament(pop.len(), k, rng);
    let b = tournament(pop.len(), k, rng);
    (&pop.members[a], &pop.members[b])
}

/// Mutable state of a run between generations.
#[derive(Debug, Clone)]
pub struct GaState<T: Scalar> {
    pub population: Population<T>,
    pub streams: RunStreams,
    pub generation: usize,
}

impl<T: Scalar> GaState<T> {
    pub fn new(inst: &Instance<T>, cfg: &GaConfig) -> Self {
        let mut streams = RunStreams::new(cfg.seed);
        let population = init_population(inst, cfg.population_size, &mut streams.init);
        Self {
            population,
            streams,
            generation: 0,
        }
    }
}

struct Offspring<'s, T: Scalar> {
    children: Vec<EvaluatedTour<T>>,
    seen: HashSet<Tour>,
    log: bool,
    usage: Vec<OperatorUsage>,
    generation: usize,
    sink: &'s mut dyn RunSink<T>,
}

impl<T: Scalar> Offspring<'_, T> {
    fn push(&mut self, child: EvaluatedTour<T>, strategy: &'static str, operator: &'static str) {
        let usage = OperatorUsage {
            generation: self.generation,
            strategy,
            operator,
            child_cost: child.cost().to_f64_lossy(),
        };
        self.sink.on_operator(&usage);
        if self.log {
            self.usage.push(usage);
        }
        self.seen.insert(child.tour().clone());
        self.children.push(child);
    }
}

fn crossover_phase<T: Scalar>(
    inst: &Instance<T>,
    cfg: &GaConfig,
    state: &mut GaState<T>,
    out: &mut Offspring<'_, T>,
) {
    let target = cfg.crossover_count();
    let couples = target.div_ceil(2);
    let per_generation_op = match (cfg.crossover, cfg.draw) {
        (CrossoverChoice::Sac, DrawGranularity::PerGeneration) => {
            Some(cfg.crossover_portfolio.draw(&mut state.streams.crossover))
        }
        _ => None,
    };
    let pop = &state.population;
    let mut produced = 0usize;
    for _ in 0..couples {
        let (p1, p2) = select_parents(pop, cfg.tournament_size, &mut state.streams.selection);
        let (p1, p2) = (p1.tour(), p2.tour());
        let rng: &mut Stream = &mut state.streams.crossover;
        match cfg.crossover {
            CrossoverChoice::Sbc => {
                for p in sbc(inst, &cfg.crossover_portfolio, p1, p2, &out.seen, rng) {
                    if produced < target {
                        out.push(p.child, "sbc", p.op.name());
                        produced += 1;
                    }
                }
            }
            CrossoverChoice::Sac => {
                let (op, kids) = match per_generation_op {
                    Some(op) => (op, apply_crossover(op, inst, p1, p2, rng)),
                    None => sac(inst, &cfg.crossover_portfolio, p1, p2, rng),
                };
                for child in kids.into_array() {
                    if produced < target {
                        out.push(EvaluatedTour::new(inst, child), "sac", op.name());
                        produced += 1;
                    }
                }
            }
            CrossoverChoice::Single(op) => {
                for child in apply_crossover(op, inst, p1, p2, rng).into_array() {
                    if produced < target {
                        out.push(EvaluatedTour::new(inst, child), "single", op.name());
                        produced += 1;
                    }
                }
            }
        }
    }
}

fn mutation_phase<T: Scalar>(
    inst: &Instance<T>,
    cfg: &GaConfig,
    state: &mut GaState<T>,
    out: &mut Offspring<'_, T>,
) {
    let count = cfg.mutation_count();
    if count == 0 || cfg.mutation == MutationChoice::None {
        return;
    }
    let per_generation_op = match (cfg.mutation, cfg.draw) {
        (MutationChoice::Sam, DrawGranularity::PerGeneration) => {
            Some(cfg.mutation_portfolio.draw(&mut state.streams.mutation))
        }
        _ => None,
    };
    // mutants are drawn from the crossover offspring of this generation
    let pool_len = out.children.len();
    for _ in 0..count {
        let rng: &mut Stream = &mut state.streams.mutation;
        let source = if pool_len > 0 {
            out.children[rng.gen_range(0..pool_len)].tour().clone()
        } else {
            let pop = &state.population;
            pop.members()[rng.gen_range(0..pop.len())].tour().clone()
        };
        match cfg.mutation {
            MutationChoice::None => unreachable!(),
            MutationChoice::Single(op) => {
                let child = EvaluatedTour::new(inst, apply_mutation(op, inst, &source, rng));
                out.push(child, "single", op.name());
            }
            MutationChoice::Sam => {
                let (op, child) = match per_generation_op {
                    Some(op) => (op, EvaluatedTour::new(inst, apply_mutation(op, inst, &source, rng))),
                    None => {
                        let p = sam(inst, &cfg.mutation_portfolio, &source, rng);
                        (p.op, p.child)
                    }
                };
                out.push(child, "sam", op.name());
            }
            MutationChoice::Sbm => {
                if let Some(p) = sbm(inst, &cfg.mutation_portfolio, &source, &out.seen, rng) {
                    out.push(p.child, "sbm", p.op.name());
                }
            }
        }
    }
}

fn replace<T: Scalar>(
    cfg: &GaConfig,
    parents: &Population<T>,
    mut children: Vec<EvaluatedTour<T>>,
) -> Population<T> {
    let p = cfg.population_size;
    match cfg.replacement {
        Replacement::Elitist => {
            let mut merged = parents.members.clone();
            merged.append(&mut children);
            sort_members(&mut merged);
            merged.truncate(p);
            Population { members: merged }
        }
        Replacement::GenerationalElite => {
            sort_members(&mut children);
            let mut next = vec![parents.best().clone()];
            next.extend(children.into_iter().take(p - 1));
            // top up from the parents when there are too few children
            next.extend(parents.members[1..].iter().take(p - next.len()).cloned());
            Population::from_members(next)
        }
    }
}

/// Advances the state by one generation and returns the generation's
/// convergence record together with any logged operator usage.
pub fn evolve_generation<T: Scalar>(
    inst: &Instance<T>,
    cfg: &GaConfig,
    state: &mut GaState<T>,
    sink: &mut dyn RunSink<T>,
) -> (ConvergenceRecord<T>, Vec<OperatorUsage>) {
    let generation = state.generation + 1;
    let seen = match (cfg.crossover, cfg.mutation) {
        (CrossoverChoice::Sbc, _) | (_, MutationChoice::Sbm) => state.population.tour_set(),
        _ => HashSet::new(),
    };
    let mut out = Offspring {
        children: Vec::new(),
        seen,
        log: cfg.log_operators,
        usage: Vec::new(),
        generation,
        sink,
    };
    crossover_phase(inst, cfg, state, &mut out);
    mutation_phase(inst, cfg, state, &mut out);
    let Offspring {
        children, usage, sink, ..
    } = out;
    state.population = replace(cfg, &state.population, children);
    state.generation = generation;
    let record = ConvergenceRecord {
        generation,
        best_cost: state.population.best().cost(),
        mean_cost: state.population.mean_cost(),
    };
    sink.on_generation(&record);
    (record, usage)
}

/// Runs `cfg.max_generations` generations.
pub fn run<T: Scalar>(cfg: &GaConfig, inst: &Instance<T>) -> Result<RunResult<T>, ConfigError> {
    run_with_sink(cfg, inst, &mut NullSink)
}

pub fn run_with_sink<T: Scalar>(
    cfg: &GaConfig,
    inst: &Instance<T>,
    sink: &mut dyn RunSink<T>,
) -> Result<RunResult<T>, ConfigError> {
    cfg.validate()?;
    let converted;
    let inst = if inst.metric() != cfg.metric && inst.metric() != Metric::Explicit {
        converted = inst
            .with_metric(cfg.metric)
            .expect("coordinate instance converts between Euclidean metrics");
        &converted
    } else {
        inst
    };
    let mut state = GaState::new(inst, cfg);
    let mut history = Vec::with_capacity(cfg.max_generations);
    let mut usage = Vec::new();
    for _ in 0..cfg.max_generations {
        let (record, mut used) = evolve_generation(inst, cfg, &mut state, sink);
        history.push(record);
        usage.append(&mut used);
    }
    Ok(RunResult {
        best: state.population.best().clone(),
        history,
        usage,
    })
}
