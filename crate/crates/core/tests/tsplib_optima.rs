use std::fs;
use std::path::PathBuf;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use tspevo::tour::tour_cost;
use tspevo::tsplib::{parse_tour, parse_tsplib, parse_tsplib_with_metric};
use tspevo::{validate_tour, Instance32, Instance64, Metric, Tour};

fn data(file: &str) -> String {
    let p = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../data/tsplib").join(file);
    fs::read_to_string(&p).unwrap_or_else(|e| panic!("{}: {e}", p.display()))
}

fn optimum(name: &str) -> (Instance64, Tour) {
    let inst: Instance64 = parse_tsplib(&data(&format!("{name}.tsp"))).unwrap();
    let tour = parse_tour(&data(&format!("{name}.opt.tour"))).unwrap();
    assert!(validate_tour(&inst, &tour).is_ok());
    (inst, tour)
}

#[test]
fn eil51_optimal_tour_costs_426() {
    let (inst, tour) = optimum("eil51");
    assert_eq!(inst.len(), 51);
    assert_eq!(tour_cost(&inst, &tour), 426.0);
}

#[test]
fn berlin52_optimal_tour_costs_7542() {
    let (inst, tour) = optimum("berlin52");
    assert_eq!(inst.len(), 52);
    assert_eq!(tour_cost(&inst, &tour), 7542.0);
}

#[test]
fn single_precision_agrees_on_rounded_optimum() {
    let inst: Instance32 = parse_tsplib(&data("berlin52.tsp")).unwrap();
    let tour = parse_tour(&data("berlin52.opt.tour")).unwrap();
    assert_eq!(tour_cost(&inst, &tour), 7542.0f32);
}

#[test]
fn raw_metric_is_below_rounded_sum_bound() {
    let (rounded, tour) = optimum("eil51");
    let raw: Instance64 = parse_tsplib_with_metric(&data("eil51.tsp"), Metric::RawEuc2d).unwrap();
    let r = tour_cost(&raw, &tour);
    // each edge moves by at most half a unit under rounding
    assert!((r - tour_cost(&rounded, &tour)).abs() <= 0.5 * 51.0);
    assert!(r != r.round());
}

fn rotate_to_start(order: &[usize]) -> Vec<usize> {
    let k = order.iter().position(|&c| c == 0).unwrap();
    let mut v = order.to_vec();
    v.rotate_left(k);
    v
}

/// Cost of a cycle summed directly from the coordinates, independent of
/// the distance table.
fn cycle_length(coords: &[(f64, f64)], order: &[usize]) -> f64 {
    (0..order.len())
        .map(|i| {
            let (a, b) = (coords[order[i]], coords[order[(i + 1) % order.len()]]);
            ((a.0 - b.0).powi(2) + (a.1 - b.1).powi(2)).sqrt().round()
        })
        .sum()
}

#[test]
fn cost_is_invariant_under_rotation_and_reversal() {
    let mut rng = ChaCha8Rng::seed_from_u64(5);
    for _ in 0..200 {
        let n = rng.gen_range(3..40);
        let coords: Vec<(f64, f64)> =
            (0..n).map(|_| (rng.gen_range(0.0..500.0), rng.gen_range(0.0..500.0))).collect();
        let inst = Instance64::from_coords("r", coords.clone(), Metric::RoundedEuc2d).unwrap();
        let t = Tour::random(n, &mut rng);
        let c = tour_cost(&inst, &t);
        assert_eq!(c, cycle_length(&coords, t.order()));
        let mut rotated = t.order().to_vec();
        rotated.rotate_left(rng.gen_range(0..n));
        assert_eq!(cycle_length(&coords, &rotated), c);
        let mut reversed = t.order().to_vec();
        reversed.reverse();
        let back = Tour::new(rotate_to_start(&reversed));
        assert!(validate_tour(&inst, &back).is_ok());
        assert_eq!(tour_cost(&inst, &back), c);
    }
}
