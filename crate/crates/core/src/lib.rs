//! Genetic-algorithm toolkit for the symmetric travelling salesman problem.
//!
//! The crate is organised bottom-up:
//!
//! * [`instance`], [`tour`] and [`tsplib`] hold the problem definition, the
//!   fixed-start path representation and TSPLIB ingestion.
//! * [`gene`] finds "worst genes" (the cities contributing most to a tour's
//!   length) and nearest neighbours.
//! * [`crossover`] and [`mutation`] implement the worst-gene driven operators
//!   together with the Modified/PMX and Exchange/Rearrangement baselines.
//! * [`strategy`] layers the best-of/any-of multi-operator strategies on top.
//! * [`engine`] runs the generational loop.
//!
//! Everything numeric is generic over [`Scalar`] (`f32` or `f64`); the
//! `*64` aliases below are what the harness uses.

pub mod crossover;
pub mod engine;
pub mod gene;
pub mod instance;
pub mod mutation;
pub mod rng;
pub mod scalar;
pub mod strategy;
pub mod tour;
pub mod tsplib;

pub use crossover::{CrossoverId, OffspringPair};
pub use engine::{
    ConvergenceRecord, CrossoverChoice, GaConfig, MutationChoice, OperatorUsage, Population,
    Replacement, RunResult,
};
pub use gene::{GeneScore, ObjectiveDirection};
pub use instance::{Instance, InstanceError, Metric};
pub use mutation::MutationId;
pub use scalar::Scalar;
pub use strategy::{CrossoverPortfolio, MutationPortfolio};
pub use tour::{validate_tour, EvaluatedTour, Tour, TourViolation};
pub use tsplib::ParseError;

/// Double-precision instance; the default throughout the harness.
pub type Instance64 = Instance<f64>;
/// Single-precision instance.
pub type Instance32 = Instance<f32>;
/// Double-precision evaluated tour.
pub type EvaluatedTour64 = EvaluatedTour<f64>;
/// Double-precision population.
pub type Population64 = Population<f64>;
/// Double-precision run result.
pub type RunResult64 = RunResult<f64>;
