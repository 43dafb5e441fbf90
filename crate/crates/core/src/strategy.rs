//! Multi-operator strategies.
//!
//! * SBC applies every crossover in a portfolio to the same parents and keeps
//!   the two cheapest children that are not already in the population.
//! * SAC applies one crossover drawn uniformly from the portfolio.
//! * SBM applies every mutation in a portfolio and keeps the cheapest child
//!   not already in the population.
//! * SAM applies one mutation drawn uniformly from the portfolio.
//!
//! Duplicate detection compares tour sequences exactly.

use std::collections::HashSet;

use rand::Rng;
use thiserror::Error;

use crate::crossover::{apply_crossover, CrossoverId, OffspringPair};
use crate::instance::Instance;
use crate::mutation::{apply_mutation, MutationId};
use crate::scalar::Scalar;
use crate::tour::{EvaluatedTour, Tour};

#[derive(Debug, Error, PartialEq, Eq)]
pub enum PortfolioError {
    #[error("portfolio is empty")]
    Empty,
    #[error("operator `{0}` listed twice")]
    Duplicate(String),
}

fn check_unique<I: Copy + PartialEq + ToString>(ops: &[I]) -> Result<(), PortfolioError> {
    if ops.is_empty() {
        return Err(PortfolioError::Empty);
    }
    for (k, op) in ops.iter().enumerate() {
        if ops[..k].contains(op) {
            return Err(PortfolioError::Duplicate(op.to_string()));
        }
    }
    Ok(())
}

/// Ordered, non-empty set of crossovers.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CrossoverPortfolio(Vec<CrossoverId>);

impl CrossoverPortfolio {
    pub fn new(ops: Vec<CrossoverId>) -> Result<Self, PortfolioError> {
        check_unique(&ops)?;
        Ok(Self(ops))
    }

    pub fn ops(&self) -> &[CrossoverId] {
        &self.0
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> CrossoverId {
        self.0[rng.gen_range(0..self.0.len())]
    }
}

impl Default for CrossoverPortfolio {
    fn default() -> Self {
        Self(vec![
            CrossoverId::Cowgc,
            CrossoverId::Cowlrgc,
            CrossoverId::Collision,
        ])
    }
}

/// Ordered, non-empty set of mutations.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MutationPortfolio(Vec<MutationId>);

impl MutationPortfolio {
    pub fn new(ops: Vec<MutationId>) -> Result<Self, PortfolioError> {
        check_unique(&ops)?;
        Ok(Self(ops))
    }

    pub fn ops(&self) -> &[MutationId] {
        &self.0
    }

    pub fn draw<R: Rng + ?Sized>(&self, rng: &mut R) -> MutationId {
        self.0[rng.gen_range(0..self.0.len())]
    }
}

impl Default for MutationPortfolio {
    fn default() -> Self {
        Self(MutationId::PROPOSED.to_vec())
    }
}

/// A child together with the operator that produced it.
#[derive(Debug, Clone, PartialEq)]
pub struct Produced<T: Scalar, Op> {
    pub child: EvaluatedTour<T>,
    pub op: Op,
}

/// Every child of every portfolio crossover applied to `(p1, p2)`, in
/// portfolio order.
pub fn crossover_pool<T: Scalar, R: Rng + ?Sized>(
    inst: &Instance<T>,
    portfolio: &CrossoverPortfolio,
    p1: &Tour,
    p2: &Tour,
    rng: &mut R,
) -> Vec<Produced<T, CrossoverId>> {
    let mut pool = Vec::with_capacity(2 * portfolio.ops().len());
    for &op in portfolio.ops() {
        for child in apply_crossover(op, inst, p1, p2, rng).into_array() {
            pool.push(Produced {
                child: EvaluatedTour::new(inst, child),
                op,
            });
        }
    }
    pool
}

fn sort_by_cost<T: Scalar, Op>(pool: &mut [Produced<T, Op>]) {
    pool.sort_by(|a, b| {
        a.child
            .cost()
            .partial_cmp(&b.child.cost())
            .expect("costs are finite")
    });
}

/// Select-best-crossover: up to two cheapest pooled children absent from
/// `existing`. The second child must also differ from the first.
pub fn sbc<T: Scalar, R: Rng + ?Sized>(
    inst: &Instance<T>,
    portfolio: &CrossoverPortfolio,
    p1: &Tour,
    p2: &Tour,
    existing: &HashSet<Tour>,
    rng: &mut R,
) -> Vec<Produced<T, CrossoverId>> {
    let mut pool = crossover_pool(inst, portfolio, p1, p2, rng);
    sort_by_cost(&mut pool);
    let mut out: Vec<Produced<T, CrossoverId>> = Vec::with_capacity(2);
    for cand in pool {
        if existing.contains(cand.child.tour()) || out.iter().any(|o| o.child.tour() == cand.child.tour()) {
            continue;
        }
        out.push(cand);
        if out.len() == 2 {
            break;
        }
    }
    out
}

/// Select-any-crossover: one operator drawn uniformly, both children kept.
pub fn sac<T: Scalar, R: Rng + ?Sized>(
    inst: &Instance<T>,
    portfolio: &CrossoverPortfolio,
    p1: &Tour,
    p2: &Tour,
    rng: &mut R,
) -> (CrossoverId, OffspringPair) {
    let op = portfolio.draw(rng);
    (op, apply_crossover(op, inst, p1, p2, rng))
}

/// Every portfolio mutation applied to `c`, in portfolio order. Randomised
/// operators draw from `rng` in that order.
pub fn mutation_pool<T: Scalar, R: Rng + ?Sized>(
    inst: &Instance<T>,
    portfolio: &MutationPortfolio,
    c: &Tour,
    rng: &mut R,
) -> Vec<Produced<T, MutationId>> {
    portfolio
        .ops()
        .iter()
        .map(|&op| Produced {
            child: EvaluatedTour::new(inst, apply_mutation(op, inst, c, rng)),
            op,
        })
        .collect()
}

/// Select-best-mutation: the cheapest child absent from `existing`, the
/// earliest operator winning ties.
pub fn sbm<T: Scalar, R: Rng + ?Sized>(
    inst: &Instance<T>,
    portfolio: &MutationPortfolio,
    c: &Tour,
    existing: &HashSet<Tour>,
    rng: &mut R,
) -> Option<Produced<T, MutationId>> {
    let mut pool = mutation_pool(inst, portfolio, c, rng);
    sort_by_cost(&mut pool);
    pool.into_iter().find(|p| !existing.contains(p.child.tour()))
}

/// Select-any-mutation: one operator drawn uniformly.
pub fn sam<T: Scalar, R: Rng + ?Sized>(
    inst: &Instance<T>,
    portfolio: &MutationPortfolio,
    c: &Tour,
    rng: &mut R,
) -> Produced<T, MutationId> {
    let op = portfolio.draw(rng);
    Produced {
        child: EvaluatedTour::new(inst, apply_mutation(op, inst, c, rng)),
        op,
    }
}
