//! Mutation operators on fixed-start tours.
//!
//! Two baselines (Exchange and Rearrangement) and ten operators built around
//! the worst gene and its nearest neighbour. Every operator leaves position
//! 0 alone and returns tours of fewer than 4 cities unchanged.
//!
//! Operators that make random choices also come in a `*_with_*` or `*_at`
//! form taking the choice explicitly.

use std::fmt;
use std::str::FromStr;

use rand::seq::index::sample;
use rand::Rng;

use crate::gene::{nearest_city, worst_gene_left, worst_gene_lr, worst_two_left, ObjectiveDirection};
use crate::instance::Instance;
use crate::scalar::Scalar;
use crate::tour::{tour_cost, Tour};

/// Half-width of the circular window around the nearest city's position.
pub const NEIGHBOURHOOD_RADIUS: usize = 5;

/// Number of random candidates drawn by the insert-best-random operators.
pub const INSERT_CANDIDATES: usize = 5;

const MIN: ObjectiveDirection = ObjectiveDirection::Minimize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum MutationId {
    Exchange,
    Rearrangement,
    Wgwrgm,
    Wgwwgm,
    Wlrgwrgm,
    Wgwnnm,
    Wgwwnnm,
    Wgibnnm,
    Rgibnnm,
    Swglm,
    Ibrgbwgm,
    Ibrgbrgm,
}

impl MutationId {
    pub const ALL: [MutationId; 12] = [
        MutationId::Exchange,
        MutationId::Rearrangement,
        MutationId::Wgwrgm,
        MutationId::Wgwwgm,
        MutationId::Wlrgwrgm,
        MutationId::Wgwnnm,
        MutationId::Wgwwnnm,
        MutationId::Wgibnnm,
        MutationId::Rgibnnm,
        MutationId::Swglm,
        MutationId::Ibrgbwgm,
        MutationId::Ibrgbrgm,
    ];

    /// The ten worst-gene/nearest-neighbour operators, in portfolio order.
    pub const PROPOSED: [MutationId; 10] = [
        MutationId::Wgwrgm,
        MutationId::Wgwwgm,
        MutationId::Wlrgwrgm,
        MutationId::Wgwnnm,
        MutationId::Wgwwnnm,
        MutationId::Wgibnnm,
        MutationId::Rgibnnm,
        MutationId::Swglm,
        MutationId::Ibrgbwgm,
        MutationId::Ibrgbrgm,
    ];

    pub fn name(self) -> &'static str {
        match self {
            MutationId::Exchange => "exchange",
            MutationId::Rearrangement => "rearrangement",
            MutationId::Wgwrgm => "wgwrgm",
            MutationId::Wgwwgm => "wgwwgm",
            MutationId::Wlrgwrgm => "wlrgwrgm",
            MutationId::Wgwnnm => "wgwnnm",
            MutationId::Wgwwnnm => "wgwwnnm",
            MutationId::Wgibnnm => "wgibnnm",
            MutationId::Rgibnnm => "rgibnnm",
            MutationId::Swglm => "swglm",
            MutationId::Ibrgbwgm => "ibrgbwgm",
            MutationId::Ibrgbrgm => "ibrgbrgm",
        }
    }

    /// True for operators that never consume random numbers.
    pub fn is_deterministic(self) -> bool {
        matches!(
            self,
            MutationId::Rearrangement
                | MutationId::Wgwwgm
                | MutationId::Wgwwnnm
                | MutationId::Wgibnnm
                | MutationId::Swglm
        )
    }
}

impl fmt::Display for MutationId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for MutationId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        MutationId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown mutation `{s}`"))
    }
}

#[inline]
fn too_small(t: &Tour) -> bool {
    t.len() < 4
}

/// Uniform position in `1..n`, redrawn once if it hits `avoid`.
fn pick_other<R: Rng + ?Sized>(n: usize, avoid: usize, rng: &mut R) -> usize {
    let p = rng.gen_range(1..n);
    if p == avoid {
        rng.gen_range(1..n)
    } else {
        p
    }
}

/// Swaps positions `i` and `j`.
///
/// Panics if either is 0 or out of range.
pub fn exchange_mutation(t: &Tour, i: usize, j: usize) -> Tour {
    assert!(
        i >= 1 && j >= 1 && i < t.len() && j < t.len(),
        "exchange positions ({i}, {j}) outside 1..{}",
        t.len()
    );
    t.swapped(i, j)
}

/// Moves the city at `from` to position `to`, shifting the cities between.
pub fn move_city(t: &Tour, from: usize, to: usize) -> Tour {
    let mut out = t.clone();
    let order = out.order_mut();
    let c = order.remove(from);
    order.insert(to, c);
    out
}

/// WGWRGM with the random position given.
pub fn wgwrgm_with_pick<T: Scalar>(inst: &Instance<T>, t: &Tour, pick: usize) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    let worst = worst_gene_left(inst, t, MIN).index;
    exchange_mutation(t, worst, pick)
}

/// Worst gene with random gene: swap the worst left-distance gene with a
/// random one.
pub fn wgwrgm<T: Scalar, R: Rng + ?Sized>(inst: &Instance<T>, t: &Tour, rng: &mut R) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    let worst = worst_gene_left(inst, t, MIN).index;
    let pick = pick_other(t.len(), worst, rng);
    exchange_mutation(t, worst, pick)
}

/// Worst gene with worst gene: swap the two worst left-distance genes.
pub fn wgwwgm<T: Scalar>(inst: &Instance<T>, t: &Tour) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    let (a, b) = worst_two_left(inst, t, MIN);
    exchange_mutation(t, a.index, b.index)
}

pub fn wlrgwrgm_with_pick<T: Scalar>(inst: &Instance<T>, t: &Tour, pick: usize) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    let worst = worst_gene_lr(inst, t, MIN).index;
    exchange_mutation(t, worst, pick)
}

/// Worst left+right gene with random gene.
pub fn wlrgwrgm<T: Scalar, R: Rng + ?Sized>(inst: &Instance<T>, t: &Tour, rng: &mut R) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    let worst = worst_gene_lr(inst, t, MIN).index;
    let pick = pick_other(t.len(), worst, rng);
    exchange_mutation(t, worst, pick)
}

/// Positions within circular distance `radius` of `center`, excluding
/// `center` and position 0, in increasing order.
pub fn neighbourhood_window(n: usize, center: usize, radius: usize) -> Vec<usize> {
    (1..n)
        .filter(|&p| {
            let d = p.abs_diff(center);
            p != center && d.min(n - d) <= radius
        })
        .collect()
}

/// The worst left+right gene, its nearest city and that city's position.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct NearestTarget {
    pub worst_pos: usize,
    pub ncity: usize,
    pub ncity_pos: usize,
}

pub fn nearest_target<T: Scalar>(inst: &Instance<T>, t: &Tour) -> NearestTarget {
    let worst_pos = worst_gene_lr(inst, t, MIN).index;
    let ncity = nearest_city(inst, t.city(worst_pos), &[]);
    let ncity_pos = t.position_of(ncity).expect("valid tour holds every city");
    NearestTarget {
        worst_pos,
        ncity,
        ncity_pos,
    }
}

/// WGWNNM with the window position given.
///
/// Panics if `pick` is outside the window around the nearest city.
pub fn wgwnnm_with_pick<T: Scalar>(inst: &Instance<T>, t: &Tour, pick: usize) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    let target = nearest_target(inst, t);
    let window = neighbourhood_window(t.len(), target.ncity_pos, NEIGHBOURHOOD_RADIUS);
    assert!(window.contains(&pick), "position {pick} outside the window {window:?}");
    exchange_mutation(t, target.worst_pos, pick)
}

/// Worst gene with nearest neighbour: swap the worst left+right gene with a
/// random city within five positions of its nearest city.
pub fn wgwnnm<T: Scalar, R: Rng + ?Sized>(inst: &Instance<T>, t: &Tour, rng: &mut R) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    let target = nearest_target(inst, t);
    let window = neighbourhood_window(t.len(), target.ncity_pos, NEIGHBOURHOOD_RADIUS);
    let mut pick = window[rng.gen_range(0..window.len())];
    if pick == target.worst_pos {
        pick = window[rng.gen_range(0..window.len())];
    }
    exchange_mutation(t, target.worst_pos, pick)
}

/// Worst gene with the worst around the nearest neighbour: like WGWNNM but
/// the window city furthest from the nearest city is chosen.
pub fn wgwwnnm<T: Scalar>(inst: &Instance<T>, t: &Tour) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    let target = nearest_target(inst, t);
    let window = neighbourhood_window(t.len(), target.ncity_pos, NEIGHBOURHOOD_RADIUS);
    let mut best = window[0];
    for &p in &window[1..] {
        if inst.distance(t.city(p), target.ncity) > inst.distance(t.city(best), target.ncity) {
            best = p;
        }
    }
    exchange_mutation(t, target.worst_pos, best)
}

/// Removes the city at `pos` and reinserts it directly before `anchor`.
/// When the anchor is the start city the moved city goes to the end, which
/// is next to the start on the closed tour.
pub fn insert_before_city(t: &Tour, pos: usize, anchor: usize) -> Tour {
    let mut out = t.clone();
    let order = out.order_mut();
    let c = order.remove(pos);
    if anchor == order[0] {
        order.push(c);
    } else {
        let q = order
            .iter()
            .position(|&x| x == anchor)
            .expect("anchor is in the tour");
        order.insert(q, c);
    }
    out
}

/// Worst gene inserted beside nearest neighbour.
pub fn wgibnnm<T: Scalar>(inst: &Instance<T>, t: &Tour) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    let target = nearest_target(inst, t);
    insert_before_city(t, target.worst_pos, target.ncity)
}

/// RGIBNNM with the moved position given.
pub fn rgibnnm_at<T: Scalar>(inst: &Instance<T>, t: &Tour, pos: usize) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    assert!(pos >= 1 && pos < t.len(), "position {pos} outside 1..{}", t.len());
    let ncity = nearest_city(inst, t.city(pos), &[]);
    insert_before_city(t, pos, ncity)
}

/// Random gene inserted beside its nearest neighbour.
pub fn rgibnnm<T: Scalar, R: Rng + ?Sized>(inst: &Instance<T>, t: &Tour, rng: &mut R) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    let pos = rng.gen_range(1..t.len());
    rgibnnm_at(inst, t, pos)
}

#[inline]
fn step_left(n: usize, p: usize) -> usize {
    if p <= 1 {
        n - 1
    } else {
        p - 1
    }
}

#[inline]
fn step_right(n: usize, p: usize) -> usize {
    if p + 1 >= n {
        1
    } else {
        p + 1
    }
}

/// The two SWGLM candidates: F1 swaps the worst gene's two left
/// neighbours, F2 swaps the worst gene with its right neighbour. Position
/// 0 is skipped when stepping around the tour.
pub fn swglm_children<T: Scalar>(inst: &Instance<T>, t: &Tour) -> (Tour, Tour) {
    let n = t.len();
    let w = worst_gene_lr(inst, t, MIN).index;
    let l1 = step_left(n, w);
    let l2 = step_left(n, l1);
    let r1 = step_right(n, w);
    (t.swapped(l1, l2), t.swapped(w, r1))
}

/// Swap worst gene locally: the cheaper of the two local swaps, F1 on a tie.
pub fn swglm<T: Scalar>(inst: &Instance<T>, t: &Tour) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    let (f1, f2) = swglm_children(inst, t);
    if tour_cost(inst, &f1) > tour_cost(inst, &f2) {
        f2
    } else {
        f1
    }
}

/// Inserts the best of `candidates` between the city at `target` and its
/// left neighbour (PN). The best candidate minimises its distance to the
/// target city plus its distance to PN; ties go to the earlier candidate.
///
/// Candidates are cities, not positions, and must not be the start city,
/// the target city or PN.
pub fn insert_best_before<T: Scalar>(
    inst: &Instance<T>,
    t: &Tour,
    target: usize,
    candidates: &[usize],
) -> Tour {
    assert!(target >= 1 && target < t.len(), "target {target} outside 1..{}", t.len());
    let worst_city = t.city(target);
    let pn_city = t.city(target - 1);
    let score = |c: usize| inst.distance(c, worst_city) + inst.distance(c, pn_city);
    let Some(&first) = candidates.first() else {
        return t.clone();
    };
    let mut best = first;
    for &c in &candidates[1..] {
        if score(c) < score(best) {
            best = c;
        }
    }
    assert!(
        best != 0 && best != worst_city && best != pn_city,
        "candidate {best} may not be moved"
    );
    let from = t.position_of(best).expect("valid tour holds every city");
    insert_before_city(t, from, worst_city)
}

/// Draws up to `INSERT_CANDIDATES` distinct cities other than the start
/// city and the two at `target - 1` and `target`.
fn draw_candidates<R: Rng + ?Sized>(t: &Tour, target: usize, rng: &mut R) -> Vec<usize> {
    let pool: Vec<usize> = (1..t.len())
        .filter(|&p| p != target && p != target - 1)
        .map(|p| t.city(p))
        .collect();
    let k = INSERT_CANDIDATES.min(pool.len());
    sample(rng, pool.len(), k).into_iter().map(|i| pool[i]).collect()
}

/// Insert best random gene before worst gene. Tours of fewer than 7 cities
/// are returned unchanged.
pub fn ibrgbwgm<T: Scalar, R: Rng + ?Sized>(inst: &Instance<T>, t: &Tour, rng: &mut R) -> Tour {
    if t.len() < 7 {
        return t.clone();
    }
    let target = worst_gene_left(inst, t, MIN).index;
    let candidates = draw_candidates(t, target, rng);
    insert_best_before(inst, t, target, &candidates)
}

/// Insert best random gene before a random gene. Tours of fewer than 7
/// cities are returned unchanged.
pub fn ibrgbrgm<T: Scalar, R: Rng + ?Sized>(inst: &Instance<T>, t: &Tour, rng: &mut R) -> Tour {
    if t.len() < 7 {
        return t.clone();
    }
    let target = rng.gen_range(1..t.len());
    let candidates = draw_candidates(t, target, rng);
    insert_best_before(inst, t, target, &candidates)
}

/// Rearrangement: try moving the right endpoint of the longest edge to the
/// beginning, middle and end of the tour and keep the cheapest of the
/// original and the three variants.
pub fn rearrangement<T: Scalar>(inst: &Instance<T>, t: &Tour) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    let n = t.len();
    let from = worst_gene_left(inst, t, MIN).index;
    let mut best = t.clone();
    let mut best_cost = tour_cost(inst, t);
    for to in [1, n / 2, n - 1] {
        let v = move_city(t, from, to);
        let c = tour_cost(inst, &v);
        if c < best_cost {
            best = v;
            best_cost = c;
        }
    }
    best
}

/// Applies the operator `id`, drawing any random choices from `rng`.
pub fn apply_mutation<T: Scalar, R: Rng + ?Sized>(
    id: MutationId,
    inst: &Instance<T>,
    t: &Tour,
    rng: &mut R,
) -> Tour {
    if too_small(t) {
        return t.clone();
    }
    match id {
        MutationId::Exchange => {
            let n = t.len();
            let i = rng.gen_range(1..n);
            let j = pick_other(n, i, rng);
            exchange_mutation(t, i, j)
        }
        MutationId::Rearrangement => rearrangement(inst, t),
        MutationId::Wgwrgm => wgwrgm(inst, t, rng),
        MutationId::Wgwwgm => wgwwgm(inst, t),
        MutationId::Wlrgwrgm => wlrgwrgm(inst, t, rng),
        MutationId::Wgwnnm => wgwnnm(inst, t, rng),
        MutationId::Wgwwnnm => wgwwnnm(inst, t),
        MutationId::Wgibnnm => wgibnnm(inst, t),
        MutationId::Rgibnnm => rgibnnm(inst, t, rng),
        MutationId::Swglm => swglm(inst, t),
        MutationId::Ibrgbwgm => ibrgbwgm(inst, t, rng),
        MutationId::Ibrgbrgm => ibrgbrgm(inst, t, rng),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::gene::gene_mass;
    use crate::instance::Metric;
    use crate::tour::validate_tour;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn random_instance(n: usize, rng: &mut ChaCha8Rng) -> Instance<f64> {
        let coords = (0..n)
            .map(|_| (rng.gen_range(0.0..100.0), rng.gen_range(0.0..100.0)))
            .collect();
        Instance::from_coords("r", coords, Metric::RawEuc2d).unwrap()
    }

    fn t(v: &[usize]) -> Tour {
        Tour::new(v.to_vec())
    }

    fn circ_adjacent(t: &Tour, a: usize, b: usize) -> bool {
        let n = t.len();
        let pa = t.position_of(a).unwrap();
        let pb = t.position_of(b).unwrap();
        (pa + 1) % n == pb || (pb + 1) % n == pa
    }

    #[test]
    fn exchange_basics() {
        let base = t(&[0, 1, 2, 3]);
        assert_eq!(exchange_mutation(&base, 1, 3), t(&[0, 3, 2, 1]));
        assert_eq!(exchange_mutation(&base, 2, 2), base);
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..10_000 {
            let x = Tour::random(9, &mut rng);
            let (i, j) = (rng.gen_range(1..9), rng.gen_range(1..9));
            assert_eq!(exchange_mutation(&exchange_mutation(&x, i, j), i, j), x);
        }
    }

    #[test]
    #[should_panic(expected = "outside")]
    fn exchange_refuses_start() {
        exchange_mutation(&t(&[0, 1, 2, 3]), 0, 2);
    }

    #[test]
    fn small_tours_are_untouched() {
        let inst = Instance::<f64>::from_coords(
            "tri",
            vec![(0.0, 0.0), (3.0, 0.0), (0.0, 4.0)],
            Metric::RawEuc2d,
        )
        .unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(32);
        let x = t(&[0, 2, 1]);
        for id in MutationId::ALL {
            assert_eq!(apply_mutation(id, &inst, &x, &mut rng), x, "{id}");
        }
    }

    #[test]
    fn window_wraps_and_excludes() {
        assert_eq!(neighbourhood_window(8, 3, 5), vec![1, 2, 4, 5, 6, 7]);
        assert_eq!(neighbourhood_window(20, 1, 5), vec![2, 3, 4, 5, 6, 16, 17, 18, 19]);
        assert_eq!(neighbourhood_window(20, 0, 2), vec![1, 2, 18, 19]);
    }

    #[test]
    fn wgwnnm_stays_in_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(33);
        for _ in 0..10_000 {
            let inst = random_instance(30, &mut rng);
            let x = Tour::random(30, &mut rng);
            let target = nearest_target(&inst, &x);
            let y = wgwnnm(&inst, &x, &mut rng);
            let moved: Vec<usize> = (0..30).filter(|&p| x.city(p) != y.city(p)).collect();
            if moved.is_empty() {
                continue;
            }
            assert_eq!(moved.len(), 2);
            assert!(moved.contains(&target.worst_pos));
            let other = *moved.iter().find(|&&p| p != target.worst_pos).unwrap();
            let d = other.abs_diff(target.ncity_pos);
            assert!(d.min(30 - d) <= NEIGHBOURHOOD_RADIUS);
        }
    }

    #[test]
    fn wgwwnnm_picks_furthest_in_window() {
        let mut rng = ChaCha8Rng::seed_from_u64(34);
        for _ in 0..500 {
            let inst = random_instance(25, &mut rng);
            let x = Tour::random(25, &mut rng);
            let target = nearest_target(&inst, &x);
            let y = wgwwnnm(&inst, &x);
            assert_eq!(y, wgwwnnm(&inst, &x));
            let window = neighbourhood_window(25, target.ncity_pos, 5);
            let far = window
                .iter()
                .map(|&p| inst.distance(x.city(p), target.ncity))
                .fold(f64::NEG_INFINITY, f64::max);
            let swapped_in = y.city(target.worst_pos);
            assert_eq!(inst.distance(swapped_in, target.ncity), far);
        }
    }

    #[test]
    fn wgibnnm_single_left_insertion() {
        // cities on a line: W = 3 sits far away, its nearest city is 1
        let inst = Instance::<f64>::from_coords(
            "line",
            vec![(0.0, 0.0), (10.0, 0.0), (20.0, 0.0), (11.0, 50.0), (30.0, 0.0)],
            Metric::RawEuc2d,
        )
        .unwrap();
        let x = t(&[0, 1, 2, 3, 4]);
        let target = nearest_target(&inst, &x);
        assert_eq!((target.worst_pos, target.ncity), (3, 1));
        assert_eq!(wgibnnm(&inst, &x), t(&[0, 3, 1, 2, 4]));
    }

    #[test]
    fn insertion_moves_are_adjacent() {
        let mut rng = ChaCha8Rng::seed_from_u64(35);
        for _ in 0..10_000 {
            let n = rng.gen_range(4..30);
            let inst = random_instance(n, &mut rng);
            let x = Tour::random(n, &mut rng);
            let target = nearest_target(&inst, &x);
            let y = wgibnnm(&inst, &x);
            assert!(validate_tour(&inst, &y).is_ok());
            assert!(circ_adjacent(&y, x.city(target.worst_pos), target.ncity));
            let pos = rng.gen_range(1..n);
            let moved = x.city(pos);
            let z = rgibnnm_at(&inst, &x, pos);
            assert!(validate_tour(&inst, &z).is_ok());
            assert!(circ_adjacent(&z, moved, nearest_city(&inst, moved, &[])));
        }
    }

    #[test]
    fn swglm_returns_cheaper_child() {
        let mut rng = ChaCha8Rng::seed_from_u64(36);
        for _ in 0..2000 {
            let n = rng.gen_range(4..20);
            let inst = random_instance(n, &mut rng);
            let x = Tour::random(n, &mut rng);
            let (f1, f2) = swglm_children(&inst, &x);
            let y = swglm(&inst, &x);
            let c = tour_cost(&inst, &y);
            assert_eq!(c, tour_cost(&inst, &f1).min(tour_cost(&inst, &f2)));
            assert_eq!(y, swglm(&inst, &x));
            assert!(validate_tour(&inst, &y).is_ok());
        }
    }

    #[test]
    fn insert_best_is_between_pn_and_target() {
        let mut rng = ChaCha8Rng::seed_from_u64(37);
        for _ in 0..10_000 {
            let n = rng.gen_range(7..40);
            let inst = random_instance(n, &mut rng);
            let x = Tour::random(n, &mut rng);
            let target = rng.gen_range(1..n);
            let candidates = draw_candidates(&x, target, &mut rng);
            let excluded = if target == 1 { 2 } else { 3 };
            assert_eq!(candidates.len(), INSERT_CANDIDATES.min(n - excluded));
            let y = insert_best_before(&inst, &x, target, &candidates);
            assert!(validate_tour(&inst, &y).is_ok());
            let w = x.city(target);
            let pn = x.city(target - 1);
            let best = candidates
                .iter()
                .copied()
                .min_by(|&a, &b| {
                    let sa = inst.distance(a, w) + inst.distance(a, pn);
                    let sb = inst.distance(b, w) + inst.distance(b, pn);
                    sa.partial_cmp(&sb).unwrap()
                })
                .unwrap();
            let pb = y.position_of(best).unwrap();
            assert_eq!(y.city(pb + 1), w);
            assert_eq!(y.city(pb - 1), pn);
        }
    }

    #[test]
    fn insert_guard_below_seven() {
        let mut rng = ChaCha8Rng::seed_from_u64(38);
        let inst = random_instance(6, &mut rng);
        let x = Tour::random(6, &mut rng);
        assert_eq!(ibrgbrgm(&inst, &x, &mut rng), x);
        assert_eq!(ibrgbwgm(&inst, &x, &mut rng), x);
    }

    #[test]
    fn rearrangement_never_worsens() {
        let mut rng = ChaCha8Rng::seed_from_u64(39);
        for _ in 0..2000 {
            let n = rng.gen_range(4..25);
            let inst = random_instance(n, &mut rng);
            let x = Tour::random(n, &mut rng);
            let y = rearrangement(&inst, &x);
            assert!(tour_cost(&inst, &y) <= tour_cost(&inst, &x));
            if y != x {
                // only the right endpoint of the longest edge moves
                let moved = x.city(worst_gene_left(&inst, &x, MIN).index);
                let mut a = x.clone().into_order();
                let mut b = y.clone().into_order();
                a.retain(|&c| c != moved);
                b.retain(|&c| c != moved);
                assert_eq!(a, b);
            }
        }
    }

    #[test]
    fn rearrangement_keeps_optimal_input() {
        // a convex polygon visited in order cannot be improved by one move
        let coords = (0..8)
            .map(|k| {
                let a = k as f64 * std::f64::consts::TAU / 8.0;
                (a.cos(), a.sin())
            })
            .collect();
        let inst = Instance::<f64>::from_coords("oct", coords, Metric::RawEuc2d).unwrap();
        let x = Tour::identity(8);
        assert_eq!(rearrangement(&inst, &x), x);
    }

    #[test]
    fn wgwwgm_swaps_two_longest_left_edges() {
        let mut rng = ChaCha8Rng::seed_from_u64(40);
        for _ in 0..500 {
            let inst = random_instance(8, &mut rng);
            let x = Tour::random(8, &mut rng);
            let mut scored: Vec<(f64, usize)> = (2..8)
                .map(|p| (inst.distance(x.city(p - 1), x.city(p)), p))
                .collect();
            scored.sort_by(|a, b| b.0.partial_cmp(&a.0).unwrap().then(a.1.cmp(&b.1)));
            let expect = x.swapped(scored[0].1, scored[1].1);
            assert_eq!(wgwwgm(&inst, &x), expect);
        }
    }

    #[test]
    fn wlr_worst_matches_scan() {
        let mut rng = ChaCha8Rng::seed_from_u64(41);
        for _ in 0..1000 {
            let inst = random_instance(9, &mut rng);
            let x = Tour::random(9, &mut rng);
            let mut best = 1;
            for p in 2..9 {
                if gene_mass(&inst, &x, p) > gene_mass(&inst, &x, best) {
                    best = p;
                }
            }
            let y = wlrgwrgm(&inst, &x, &mut rng);
            let moved: Vec<usize> = (0..9).filter(|&p| x.city(p) != y.city(p)).collect();
            assert!(moved.is_empty() || moved.contains(&best));
        }
    }

    #[test]
    fn every_operator_yields_valid_tours() {
        let mut rng = ChaCha8Rng::seed_from_u64(42);
        for id in MutationId::ALL {
            for _ in 0..2000 {
                let n = rng.gen_range(4..=60);
                let inst = random_instance(n, &mut rng);
                let x = Tour::random(n, &mut rng);
                let y = apply_mutation(id, &inst, &x, &mut rng);
                assert!(validate_tour(&inst, &y).is_ok(), "{id} broke {x}");
                if id.is_deterministic() {
                    assert_eq!(y, apply_mutation(id, &inst, &x, &mut rng), "{id}");
                }
            }
        }
    }

    #[test]
    fn ids_round_trip_through_names() {
        for id in MutationId::ALL {
            assert_eq!(id.name().parse::<MutationId>().unwrap(), id);
        }
    }
}
