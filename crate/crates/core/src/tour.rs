//! Path-representation chromosomes.
//!
//! A [`Tour`] stores the visiting order as an open sequence whose first
//! entry is always city 0; its cost is that of the closed cycle.

use std::fmt;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::instance::Instance;
use crate::scalar::Scalar;

/// Fixed-start permutation of `0..n`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Tour {
    order: Vec<usize>,
}

impl Tour {
    /// Wraps an order without checking it. Use [`validate_tour`] or
    /// [`Tour::try_new`] when the order comes from outside.
    pub fn new(order: Vec<usize>) -> Self {
        Self { order }
    }

    /// Wraps an order after checking it is a fixed-start permutation of `0..n`.
    pub fn try_new(order: Vec<usize>, n: usize) -> Result<Self, Vec<TourViolation>> {
        let t = Self { order };
        let report = violations(n, &t);
        if report.is_empty() {
            Ok(t)
        } else {
            Err(report)
        }
    }

    /// `0, 1, ..., n-1`.
    pub fn identity(n: usize) -> Self {
        Self {
            order: (0..n).collect(),
        }
    }

    /// Uniformly random fixed-start tour.
    pub fn random<R: Rng + ?Sized>(n: usize, rng: &mut R) -> Self {
        let mut order: Vec<usize> = (0..n).collect();
        order[1..].shuffle(rng);
        Self { order }
    }

    #[inline]
    pub fn len(&self) -> usize {
        self.order.len()
    }

    #[inline]
    pub fn is_empty(&self) -> bool {
        self.order.is_empty()
    }

    #[inline]
    pub fn order(&self) -> &[usize] {
        &self.order
    }

    #[inline]
    pub fn city(&self, pos: usize) -> usize {
        self.order[pos]
    }

    /// Position of `city`, by linear scan.
    pub fn position_of(&self, city: usize) -> Option<usize> {
        self.order.iter().position(|&c| c == city)
    }

    pub fn into_order(self) -> Vec<usize> {
        self.order
    }

    pub(crate) fn order_mut(&mut self) -> &mut Vec<usize> {
        &mut self.order
    }

    /// Swaps the cities at two positions.
    pub fn swapped(&self, i: usize, j: usize) -> Self {
        let mut t = self.clone();
        t.order.swap(i, j);
        t
    }
}

impl fmt::Display for Tour {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (k, c) in self.order.iter().enumerate() {
            if k > 0 {
                f.write_str(" ")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Length of the closed tour.
pub fn tour_cost<T: Scalar>(inst: &Instance<T>, t: &Tour) -> T {
    let o = t.order();
    let n = o.len();
    let mut sum = T::zero();
    for i in 0..n - 1 {
        sum = sum + inst.distance(o[i], o[i + 1]);
    }
    sum + inst.distance(o[n - 1], o[0])
}

/// A tour together with its cached cost.
#[derive(Debug, Clone, PartialEq)]
pub struct EvaluatedTour<T: Scalar> {
    tour: Tour,
    cost: T,
}

impl<T: Scalar> EvaluatedTour<T> {
    pub fn new(inst: &Instance<T>, tour: Tour) -> Self {
        let cost = tour_cost(inst, &tour);
        Self { tour, cost }
    }

    #[inline]
    pub fn tour(&self) -> &Tour {
        &self.tour
    }

    #[inline]
    pub fn cost(&self) -> T {
        self.cost
    }

    pub fn into_tour(self) -> Tour {
        self.tour
    }
}

/// One reason a sequence is not a valid tour.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TourViolation {
    WrongLength { expected: usize, found: usize },
    FixedStart { found: usize },
    CityOutOfRange(usize),
    DuplicateCity(usize),
    MissingCity(usize),
}

impl fmt::Display for TourViolation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TourViolation::WrongLength { expected, found } => {
                write!(f, "wrong length: expected {expected}, found {found}")
            }
            TourViolation::FixedStart { found } => {
                write!(f, "fixed start violated: position 0 holds city {found}")
            }
            TourViolation::CityOutOfRange(c) => write!(f, "city {c} out of range"),
            TourViolation::DuplicateCity(c) => write!(f, "duplicate city {c}"),
            TourViolation::MissingCity(c) => write!(f, "missing city {c}"),
        }
    }
}

/// Checks the permutation property and the fixed start city.
pub fn validate_tour<T: Scalar>(inst: &Instance<T>, t: &Tour) -> Result<(), Vec<TourViolation>> {
    let report = violations(inst.len(), t);
    if report.is_empty() {
        Ok(())
    } else {
        Err(report)
    }
}

fn violations(n: usize, t: &Tour) -> Vec<TourViolation> {
    let mut report = Vec::new();
    let o = t.order();
    if o.len() != n {
        report.push(TourViolation::WrongLength {
            expected: n,
            found: o.len(),
        });
    }
    if let Some(&first) = o.first() {
        if first != 0 {
            report.push(TourViolation::FixedStart { found: first });
        }
    }
    let mut seen = vec![false; n];
    for &c in o {
        if c >= n {
            report.push(TourViolation::CityOutOfRange(c));
        } else if seen[c] {
            report.push(TourViolation::DuplicateCity(c));
        } else {
            seen[c] = true;
        }
    }
    report.extend(
        seen.iter()
            .enumerate()
            .filter(|(_, &s)| !s)
            .map(|(c, _)| TourViolation::MissingCity(c)),
    );
    report
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::instance::Metric;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    fn square4() -> Instance<f64> {
        Instance::from_coords(
            "sq",
            vec![(0.0, 0.0), (1.0, 0.0), (1.0, 1.0), (0.0, 1.0)],
            Metric::RawEuc2d,
        )
        .unwrap()
    }

    #[test]
    fn triangle_perimeter() {
        let inst = Instance::<f64>::from_coords(
            "tri",
            vec![(0.0, 0.0), (3.0, 0.0), (0.0, 4.0)],
            Metric::RawEuc2d,
        )
        .unwrap();
        assert_eq!(tour_cost(&inst, &Tour::new(vec![0, 1, 2])), 12.0);
        assert_eq!(EvaluatedTour::new(&inst, Tour::identity(3)).cost(), 12.0);
    }

    #[test]
    fn validation_reports() {
        let inst = square4();
        assert!(validate_tour(&inst, &Tour::new(vec![0, 1, 2, 3])).is_ok());
        let dup = validate_tour(&inst, &Tour::new(vec![0, 1, 1, 3])).unwrap_err();
        assert!(dup.contains(&TourViolation::DuplicateCity(1)));
        assert!(dup.contains(&TourViolation::MissingCity(2)));
        let start = validate_tour(&inst, &Tour::new(vec![1, 0, 2, 3])).unwrap_err();
        assert_eq!(start, vec![TourViolation::FixedStart { found: 1 }]);
        let short = validate_tour(&inst, &Tour::new(vec![0, 1, 2])).unwrap_err();
        assert!(short.contains(&TourViolation::WrongLength {
            expected: 4,
            found: 3
        }));
        assert!(Tour::try_new(vec![0, 9, 2, 3], 4).is_err());
    }

    #[test]
    fn random_tours_are_valid() {
        let inst = square4();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        for _ in 0..100 {
            let t = Tour::random(4, &mut rng);
            assert!(validate_tour(&inst, &t).is_ok());
        }
    }

    #[test]
    fn display_is_space_separated() {
        assert_eq!(Tour::new(vec![0, 2, 1]).to_string(), "0 2 1");
    }
}
