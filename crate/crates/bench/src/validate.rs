//! Operator property suite: every crossover and mutation on random inputs
//! must return a valid fixed-start permutation.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tspevo::crossover::apply_crossover;
use tspevo::mutation::apply_mutation;
use tspevo::{validate_tour, CrossoverId, Instance64, Metric, MutationId, Tour};

#[derive(Debug, Clone, PartialEq)]
pub struct SuiteOptions {
    pub trials: usize,
    pub min_n: usize,
    pub max_n: usize,
    pub seed: u64,
}

impl Default for SuiteOptions {
    fn default() -> Self {
        Self {
            trials: 10_000,
            min_n: 4,
            max_n: 60,
            seed: 0,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct OperatorReport {
    pub operator: &'static str,
    pub trials: usize,
    pub failures: usize,
    pub first_failure: Option<String>,
}

impl OperatorReport {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }
}

fn random_instance(n: usize, rng: &mut ChaCha8Rng) -> Instance64 {
    let coords = (0..n)
        .map(|_| (rng.gen_range(0.0..1000.0), rng.gen_range(0.0..1000.0)))
        .collect();
    Instance64::from_coords("v", coords, Metric::RoundedEuc2d).expect("n >= 3")
}

fn check(
    report: &mut OperatorReport,
    inst: &Instance64,
    inputs: &[&Tour],
    outputs: &[Tour],
) {
    for out in outputs {
        if let Err(v) = validate_tour(inst, out) {
            report.failures += 1;
            if report.first_failure.is_none() {
                let ins: Vec<String> = inputs.iter().map(|t| format!("[{t}]")).collect();
                report.first_failure = Some(format!("inputs {} gave [{out}]: {v:?}", ins.join(" ")));
            }
        }
    }
}

/// Runs `opts.trials` random cases per operator. Each operator gets its own
/// generator so results do not depend on the order operators are checked.
pub fn run_suite(opts: &SuiteOptions) -> Vec<OperatorReport> {
    assert!(opts.min_n >= 4 && opts.min_n <= opts.max_n, "bad size range");
    let mut reports = Vec::new();
    for (k, id) in CrossoverId::ALL.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(100 + k as u64);
        let mut rep = OperatorReport {
            operator: id.name(),
            trials: opts.trials,
            failures: 0,
            first_failure: None,
        };
        for _ in 0..opts.trials {
            let n = rng.gen_range(opts.min_n..=opts.max_n);
            let inst = random_instance(n, &mut rng);
            let p1 = Tour::random(n, &mut rng);
            let p2 = Tour::random(n, &mut rng);
            let kids = apply_crossover(id, &inst, &p1, &p2, &mut rng).into_array();
            check(&mut rep, &inst, &[&p1, &p2], &kids);
        }
        reports.push(rep);
    }
    for (k, id) in MutationId::ALL.into_iter().enumerate() {
        let mut rng = ChaCha8Rng::seed_from_u64(opts.seed);
        rng.set_stream(200 + k as u64);
        let mut rep = OperatorReport {
            operator: id.name(),
            trials: opts.trials,
            failures: 0,
            first_failure: None,
        };
        for _ in 0..opts.trials {
            let n = rng.gen_range(opts.min_n..=opts.max_n);
            let inst = random_instance(n, &mut rng);
            let t = Tour::random(n, &mut rng);
            let out = apply_mutation(id, &inst, &t, &mut rng);
            check(&mut rep, &inst, &[&t], &[out]);
        }
        reports.push(rep);
    }
    reports
}
