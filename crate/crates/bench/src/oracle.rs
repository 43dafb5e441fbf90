//! Exact solvers for small instances.
//!
//! [`brute_force_optimal`] enumerates fixed-start tours; [`held_karp`] is a
//! subset dynamic program kept deliberately separate so the two can check
//! each other.

use std::fmt;

use tspevo::{Instance, Scalar, Tour};

/// Largest instance [`brute_force_optimal`] accepts.
pub const MAX_BRUTE_FORCE: usize = 11;

/// Largest instance [`held_karp`] accepts (table size is `n * 2^(n-1)`).
pub const MAX_HELD_KARP: usize = 20;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TooLarge {
    pub n: usize,
    pub limit: usize,
}

impl fmt::Display for TooLarge {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "instance has {} cities; exact search is limited to {}",
            self.n, self.limit
        )
    }
}

impl std::error::Error for TooLarge {}

/// Exhaustive search over fixed-start tours.
///
/// Each cycle is visited once: a tour and its reversal have the same cost,
/// so only orders with `order[1] < order[n-1]` are costed. Among tours of
/// equal cost the lexicographically smallest order is returned, comparing
/// both orientations of a cycle.
pub fn brute_force_optimal<T: Scalar>(inst: &Instance<T>) -> Result<(Tour, T), TooLarge> {
    let n = inst.len();
    if n > MAX_BRUTE_FORCE {
        return Err(TooLarge { n, limit: MAX_BRUTE_FORCE });
    }
    if n <= 3 {
        let t = Tour::identity(n);
        let c = tspevo::tour::tour_cost(inst, &t);
        return Ok((t, c));
    }
    let mut rest: Vec<usize> = (1..n).collect();
    let mut best: Option<(Vec<usize>, T)> = None;
    loop {
        if rest[0] < rest[n - 2] {
            let mut cost = inst.distance(0, rest[0]) + inst.distance(rest[n - 2], 0);
            for w in rest.windows(2) {
                cost = cost + inst.distance(w[0], w[1]);
            }
            // rest is visited in lexicographic order, and its lexicographically
            // smaller orientation is the one kept, so strict < gives the tie rule
            if best.as_ref().is_none_or(|(_, b)| cost < *b) {
                let mut order = Vec::with_capacity(n);
                order.push(0);
                order.extend_from_slice(&rest);
                best = Some((order, cost));
            }
        }
        if !next_permutation(&mut rest) {
            break;
        }
    }
    let (order, cost) = best.expect("at least one tour");
    Ok((Tour::new(order), cost))
}

fn next_permutation(v: &mut [usize]) -> bool {
    let Some(i) = v.windows(2).rposition(|w| w[0] < w[1]) else {
        return false;
    };
    let j = v.iter().rposition(|&x| x > v[i]).expect("pivot has a successor");
    v.swap(i, j);
    v[i + 1..].reverse();
    true
}

/// Optimal tour cost by the subset dynamic program.
pub fn held_karp<T: Scalar>(inst: &Instance<T>) -> Result<T, TooLarge> {
    let n = inst.len();
    if n > MAX_HELD_KARP {
        return Err(TooLarge { n, limit: MAX_HELD_KARP });
    }
    if n <= 3 {
        return Ok(tspevo::tour::tour_cost(inst, &Tour::identity(n)));
    }
    // city k (1..n) is bit k-1; dp[mask][k-1] = shortest path 0 -> ... -> k through mask
    let m = n - 1;
    let full = 1usize << m;
    let inf = T::infinity();
    let mut dp = vec![inf; full * m];
    for k in 0..m {
        dp[(1 << k) * m + k] = inst.distance(0, k + 1);
    }
    for mask in 1..full {
        for last in 0..m {
            let here = dp[mask * m + last];
            if mask & (1 << last) == 0 || here == inf {
                continue;
            }
            for next in 0..m {
                if mask & (1 << next) != 0 {
                    continue;
                }
                let slot = &mut dp[(mask | (1 << next)) * m + next];
                let cand = here + inst.distance(last + 1, next + 1);
                if cand < *slot {
                    *slot = cand;
                }
            }
        }
    }
    let mut best = inf;
    for last in 0..m {
        let c = dp[(full - 1) * m + last] + inst.distance(last + 1, 0);
        if c < best {
            best = c;
        }
    }
    Ok(best)
}
