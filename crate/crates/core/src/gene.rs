//! Worst-gene and nearest-neighbour primitives.
//!
//! A gene's "left score" is the length of the edge arriving at it; its
//! "mass" (or left+right score) is the sum of the two edges touching it,
//! wrapping around the tour ends. The worst gene maximises the score when
//! minimising tour length and minimises it otherwise. Ties always go to the
//! smallest position.

use crate::instance::Instance;
use crate::scalar::Scalar;
use crate::tour::Tour;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ObjectiveDirection {
    #[default]
    Minimize,
    Maximize,
}

impl ObjectiveDirection {
    /// True if `a` is strictly worse than `b`.
    #[inline]
    pub fn worse<T: Scalar>(self, a: T, b: T) -> bool {
        match self {
            ObjectiveDirection::Minimize => a > b,
            ObjectiveDirection::Maximize => a < b,
        }
    }
}

/// A position in a tour with the score that made it stand out.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct GeneScore<T> {
    pub index: usize,
    pub score: T,
}

/// Picks the worst `(index, score)` pair; the first one wins ties.
pub fn select_worst<T: Scalar>(
    scores: impl IntoIterator<Item = (usize, T)>,
    dir: ObjectiveDirection,
) -> Option<GeneScore<T>> {
    let mut best: Option<GeneScore<T>> = None;
    for (index, score) in scores {
        match best {
            Some(b) if !dir.worse(score, b.score) => {}
            _ => best = Some(GeneScore { index, score }),
        }
    }
    best
}

/// Distance from the city at `pos` to its left neighbour.
#[inline]
pub fn left_distance<T: Scalar>(inst: &Instance<T>, t: &Tour, pos: usize) -> T {
    let o = t.order();
    let left = if pos == 0 { o.len() - 1 } else { pos - 1 };
    inst.distance(o[left], o[pos])
}

/// Left scores over the searched range: edges `(order[i], order[i+1])` for
/// `1 <= i <= n-2`, reported at the right endpoint `i+1`.
fn left_scores<'a, T: Scalar>(
    inst: &'a Instance<T>,
    t: &'a Tour,
) -> impl Iterator<Item = (usize, T)> + 'a {
    (2..t.len()).map(move |pos| (pos, left_distance(inst, t, pos)))
}

/// The gene furthest from its left neighbour.
///
/// The edge leaving the start city and the closing edge back to it are not
/// searched, so the returned index is always in `2..n`.
///
/// Panics if the tour has fewer than 3 cities.
pub fn worst_gene_left<T: Scalar>(
    inst: &Instance<T>,
    t: &Tour,
    dir: ObjectiveDirection,
) -> GeneScore<T> {
    assert!(t.len() >= 3, "worst gene needs n >= 3, got {}", t.len());
    select_worst(left_scores(inst, t), dir).expect("non-empty range")
}

/// The two worst genes by left score, worst first. Requires `n >= 4`.
pub fn worst_two_left<T: Scalar>(
    inst: &Instance<T>,
    t: &Tour,
    dir: ObjectiveDirection,
) -> (GeneScore<T>, GeneScore<T>) {
    assert!(t.len() >= 4, "two worst genes need n >= 4, got {}", t.len());
    let first = worst_gene_left(inst, t, dir);
    let second = select_worst(
        left_scores(inst, t).filter(|&(pos, _)| pos != first.index),
        dir,
    )
    .expect("at least two candidates");
    (first, second)
}

/// Sum of the distances from the city at `pos` to both neighbours, wrapping
/// circularly at the ends.
#[inline]
pub fn gene_mass<T: Scalar>(inst: &Instance<T>, t: &Tour, pos: usize) -> T {
    let o = t.order();
    let n = o.len();
    let left = o[(pos + n - 1) % n];
    let right = o[(pos + 1) % n];
    inst.distance(left, o[pos]) + inst.distance(o[pos], right)
}

/// The gene with the worst left+right score over positions `1..n`.
///
/// Panics if the tour has fewer than 3 cities.
pub fn worst_gene_lr<T: Scalar>(
    inst: &Instance<T>,
    t: &Tour,
    dir: ObjectiveDirection,
) -> GeneScore<T> {
    assert!(t.len() >= 3, "worst gene needs n >= 3, got {}", t.len());
    select_worst((1..t.len()).map(|pos| (pos, gene_mass(inst, t, pos))), dir)
        .expect("non-empty range")
}

/// The closest city to `city` that is neither `city` itself nor listed in
/// `exclude`.
///
/// Panics if no candidate is left.
pub fn nearest_city<T: Scalar>(inst: &Instance<T>, city: usize, exclude: &[usize]) -> usize {
    let mut best: Option<(usize, T)> = None;
    for j in 0..inst.len() {
        if j == city || exclude.contains(&j) {
            continue;
        }
        let d = inst.distance(city, j);
        match best {
            Some((_, bd)) if d >= bd => {}
            _ => best = Some((j, d)),
        }
    }
    best.map(|(j, _)| j)
        .unwrap_or_else(|| panic!("no candidate city left for nearest_city({city})"))
}
