//! Crossover operators on fixed-start tours.
//!
//! Baselines: one-point Modified crossover and PMX. Worst-gene operators:
//! COWGC (cut at the worst left-distance gene), COWLRGC (cut at the worst
//! left+right gene) and Collision crossover, which decides per gene whether
//! it stays by simulating a head-on elastic collision between the parents.

use std::fmt;
use std::str::FromStr;

use rand::Rng;

use crate::gene::{gene_mass, worst_gene_left, worst_gene_lr, GeneScore, ObjectiveDirection};
use crate::instance::Instance;
use crate::scalar::Scalar;
use crate::tour::{tour_cost, Tour};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CrossoverId {
    Modified,
    Pmx,
    Cowgc,
    Cowlrgc,
    Collision,
}

impl CrossoverId {
    pub const ALL: [CrossoverId; 5] = [
        CrossoverId::Modified,
        CrossoverId::Pmx,
        CrossoverId::Cowgc,
        CrossoverId::Cowlrgc,
        CrossoverId::Collision,
    ];

    pub fn name(self) -> &'static str {
        match self {
            CrossoverId::Modified => "modified",
            CrossoverId::Pmx => "pmx",
            CrossoverId::Cowgc => "cowgc",
            CrossoverId::Cowlrgc => "cowlrgc",
            CrossoverId::Collision => "collision",
        }
    }
}

impl fmt::Display for CrossoverId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for CrossoverId {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        CrossoverId::ALL
            .into_iter()
            .find(|id| id.name().eq_ignore_ascii_case(s))
            .ok_or_else(|| format!("unknown crossover `{s}`"))
    }
}

/// The two children of one crossover event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct OffspringPair {
    pub child1: Tour,
    pub child2: Tour,
}

impl OffspringPair {
    pub fn into_array(self) -> [Tour; 2] {
        [self.child1, self.child2]
    }
}

/// Keeps `head` and appends the donor's remaining cities in donor order.
fn head_then_fill(head: &[usize], donor: &Tour) -> Tour {
    let n = donor.len();
    let mut used = vec![false; n];
    let mut order = Vec::with_capacity(n);
    for &c in head {
        used[c] = true;
        order.push(c);
    }
    order.extend(donor.order().iter().copied().filter(|&c| !used[c]));
    Tour::new(order)
}

/// One-point Modified crossover: each child keeps its own parent's genes
/// before `cut` and takes the rest in the other parent's order.
///
/// Panics unless `1 <= cut < n`.
pub fn modified_crossover(p1: &Tour, p2: &Tour, cut: usize) -> OffspringPair {
    let n = p1.len();
    assert_eq!(n, p2.len(), "parents differ in length");
    assert!(cut >= 1 && cut < n, "cut {cut} outside 1..{n}");
    OffspringPair {
        child1: head_then_fill(&p1.order()[..cut], p2),
        child2: head_then_fill(&p2.order()[..cut], p1),
    }
}

/// PMX child: `receiver` gets `donor`'s section `[cut1, cut2)` in place and
/// its own genes elsewhere, resolving repeats through the section mapping.
fn pmx_child(receiver: &Tour, donor: &Tour, cut1: usize, cut2: usize) -> Tour {
    let n = receiver.len();
    let r = receiver.order();
    let d = donor.order();
    let mut in_section = vec![false; n];
    let mut donor_pos = vec![0usize; n];
    for (p, &c) in d.iter().enumerate() {
        donor_pos[c] = p;
    }
    for &c in &d[cut1..cut2] {
        in_section[c] = true;
    }
    let mut child = r.to_vec();
    child[cut1..cut2].copy_from_slice(&d[cut1..cut2]);
    for p in (0..cut1).chain(cut2..n) {
        let mut c = r[p];
        while in_section[c] {
            c = r[donor_pos[c]];
        }
        child[p] = c;
    }
    Tour::new(child)
}

/// Partially mapped crossover with mapping section `[cut1, cut2)`.
///
/// Panics unless `1 <= cut1 < cut2 <= n`.
pub fn pmx(p1: &Tour, p2: &Tour, cut1: usize, cut2: usize) -> OffspringPair {
    let n = p1.len();
    assert_eq!(n, p2.len(), "parents differ in length");
    assert!(
        cut1 >= 1 && cut1 < cut2 && cut2 <= n,
        "invalid PMX cuts ({cut1}, {cut2}) for n = {n}"
    );
    OffspringPair {
        child1: pmx_child(p1, p2, cut1, cut2),
        child2: pmx_child(p2, p1, cut1, cut2),
    }
}

/// Which parent supplied the cut point, and where.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CutChoice<T> {
    pub from_first: bool,
    pub gene: GeneScore<T>,
}

fn choose_cut<T: Scalar>(g1: GeneScore<T>, g2: GeneScore<T>, dir: ObjectiveDirection) -> CutChoice<T> {
    if dir.worse(g1.score, g2.score) {
        CutChoice {
            from_first: true,
            gene: g1,
        }
    } else {
        CutChoice {
            from_first: false,
            gene: g2,
        }
    }
}

fn cut_at_worse_parent<T>(p1: &Tour, p2: &Tour, cut: CutChoice<T>) -> OffspringPair {
    // the first child always carries the head of the parent that owned the cut
    if cut.from_first {
        modified_crossover(p1, p2, cut.gene.index)
    } else {
        modified_crossover(p2, p1, cut.gene.index)
    }
}

/// Cut point used by COWGC: the worse of the two parents' worst
/// left-distance genes. On a tie the second parent's cut is used.
pub fn cowgc_cut<T: Scalar>(inst: &Instance<T>, p1: &Tour, p2: &Tour) -> CutChoice<T> {
    let dir = ObjectiveDirection::Minimize;
    choose_cut(worst_gene_left(inst, p1, dir), worst_gene_left(inst, p2, dir), dir)
}

/// Cut on worst gene crossover.
pub fn cowgc<T: Scalar>(inst: &Instance<T>, p1: &Tour, p2: &Tour) -> OffspringPair {
    cut_at_worse_parent(p1, p2, cowgc_cut(inst, p1, p2))
}

/// Cut point used by COWLRGC, from the left+right scores.
pub fn cowlrgc_cut<T: Scalar>(inst: &Instance<T>, p1: &Tour, p2: &Tour) -> CutChoice<T> {
    let dir = ObjectiveDirection::Minimize;
    choose_cut(worst_gene_lr(inst, p1, dir), worst_gene_lr(inst, p2, dir), dir)
}

/// Cut on worst left+right gene crossover.
pub fn cowlrgc<T: Scalar>(inst: &Instance<T>, p1: &Tour, p2: &Tour) -> OffspringPair {
    cut_at_worse_parent(p1, p2, cowlrgc_cut(inst, p1, p2))
}

/// Velocities after a one-dimensional elastic collision.
///
/// Panics if either mass is not strictly positive.
pub fn collision_velocities<T: Scalar>(m1: T, v1: T, m2: T, v2: T) -> (T, T) {
    assert!(
        m1 > T::zero() && m2 > T::zero(),
        "masses must be positive, got {m1} and {m2}"
    );
    collide(m1, v1, m2, v2)
}

#[inline]
fn collide<T: Scalar>(m1: T, v1: T, m2: T, v2: T) -> (T, T) {
    let total = m1 + m2;
    if total == T::zero() {
        // two massless genes behave like equal masses
        return (v2, v1);
    }
    // coefficient form keeps the equal-mass case an exact swap
    let two = T::lit(2.0);
    let a = (m1 - m2) / total;
    let u1 = a * v1 + (two * m2 / total) * v2;
    let u2 = (two * m1 / total) * v1 - a * v2;
    (u1, u2)
}

/// Which genes each parent keeps after colliding with velocities `v1`
/// (first parent, travelling in the positive direction) and `v2` (second
/// parent, negative). Position 0 is always kept.
pub fn collision_keep_masks<T: Scalar>(
    inst: &Instance<T>,
    p1: &Tour,
    p2: &Tour,
    v1: T,
    v2: T,
) -> (Vec<bool>, Vec<bool>) {
    let n = p1.len();
    let mut keep1 = vec![true; n];
    let mut keep2 = vec![true; n];
    for i in 1..n {
        let (u1, u2) = collide(gene_mass(inst, p1, i), v1, gene_mass(inst, p2, i), v2);
        // a gene stays if it bounced back or stopped
        keep1[i] = u1 <= T::zero();
        keep2[i] = u2 >= T::zero();
    }
    (keep1, keep2)
}

fn fill_gaps(base: &Tour, keep: &[bool], donor: &Tour) -> Tour {
    let n = base.len();
    let mut used = vec![false; n];
    for (p, &k) in keep.iter().enumerate() {
        if k {
            used[base.city(p)] = true;
        }
    }
    let mut fill = donor.order().iter().copied().filter(|&c| !used[c]);
    let order = (0..n)
        .map(|p| {
            if keep[p] {
                base.city(p)
            } else {
                fill.next().expect("donor has enough cities")
            }
        })
        .collect();
    Tour::new(order)
}

/// Collision crossover with explicit parent velocities.
pub fn collision_crossover_with_velocities<T: Scalar>(
    inst: &Instance<T>,
    p1: &Tour,
    p2: &Tour,
    v1: T,
    v2: T,
) -> OffspringPair {
    assert_eq!(p1.len(), p2.len(), "parents differ in length");
    let (keep1, keep2) = collision_keep_masks(inst, p1, p2, v1, v2);
    OffspringPair {
        child1: fill_gaps(p1, &keep1, p2),
        child2: fill_gaps(p2, &keep2, p1),
    }
}

/// Draws a velocity magnitude uniformly from `[1, cost]`.
pub fn draw_speed<T: Scalar, R: Rng + ?Sized>(cost: T, rng: &mut R) -> T {
    let hi = cost.to_f64_lossy().max(1.0);
    T::lit(rng.gen_range(1.0..=hi))
}

/// Collision crossover. The first parent moves with a speed drawn from
/// `[1, cost(p1)]`, the second towards it with one from `[1, cost(p2)]`.
pub fn collision_crossover<T: Scalar, R: Rng + ?Sized>(
    inst: &Instance<T>,
    p1: &Tour,
    p2: &Tour,
    rng: &mut R,
) -> OffspringPair {
    let v1 = draw_speed(tour_cost(inst, p1), rng);
    let v2 = -draw_speed(tour_cost(inst, p2), rng);
    collision_crossover_with_velocities(inst, p1, p2, v1, v2)
}

/// Uniform cut for Modified crossover, in `1..n`.
pub fn draw_cut<R: Rng + ?Sized>(n: usize, rng: &mut R) -> usize {
    rng.gen_range(1..n)
}

/// Uniform PMX cut pair with `1 <= cut1 < cut2 <= n`.
pub fn draw_cut_pair<R: Rng + ?Sized>(n: usize, rng: &mut R) -> (usize, usize) {
    let a = rng.gen_range(1..=n);
    let mut b = rng.gen_range(1..n);
    if b >= a {
        b += 1;
    }
    (a.min(b), a.max(b))
}

/// Applies the operator `id`, drawing any cut points or velocities from `rng`.
pub fn apply_crossover<T: Scalar, R: Rng + ?Sized>(
    id: CrossoverId,
    inst: &Instance<T>,
    p1: &Tour,
    p2: &Tour,
    rng: &mut R,
) -> OffspringPair {
    match id {
        CrossoverId::Modified => modified_crossover(p1, p2, draw_cut(p1.len(), rng)),
        CrossoverId::Pmx => {
            let (a, b) = draw_cut_pair(p1.len(), rng);
            pmx(p1, p2, a, b)
        }
        CrossoverId::Cowgc => cowgc(inst, p1, p2),
        CrossoverId::Cowlrgc => cowlrgc(inst, p1, p2),
        CrossoverId::Collision => collision_crossover(inst, p1, p2, rng),
    }
}
