//! Problem instances and the distance function.

use thiserror::Error;

use crate::scalar::Scalar;

/// How the distance between two cities is obtained.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Metric {
    /// Euclidean distance rounded to the nearest integer, half away from
    /// zero. This is the TSPLIB `EUC_2D` convention and the one under which
    /// published optima are stated.
    #[default]
    RoundedEuc2d,
    /// Plain Euclidean distance.
    RawEuc2d,
    /// Distances given explicitly as a symmetric table (worked examples and
    /// tests; not produced by the TSPLIB reader).
    Explicit,
}

impl Metric {
    pub fn name(self) -> &'static str {
        match self {
            Metric::RoundedEuc2d => "rounded-euc-2d",
            Metric::RawEuc2d => "raw-euc-2d",
            Metric::Explicit => "explicit",
        }
    }
}

#[derive(Debug, Error, PartialEq)]
pub enum InstanceError {
    #[error("an instance needs at least 3 cities, got {0}")]
    TooFewCities(usize),
    #[error("distance table is {rows}x{cols}, expected a square table")]
    NotSquare { rows: usize, cols: usize },
    #[error("distance table is not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("distance ({0}, {1}) is negative or not finite")]
    BadDistance(usize, usize),
    #[error("diagonal entry ({0}, {0}) is not zero")]
    NonZeroDiagonal(usize),
    #[error("coordinate of city {0} is not finite")]
    BadCoordinate(usize),
    #[error("the {0} metric needs coordinates; use Instance::from_matrix")]
    MetricNeedsTable(&'static str),
}

/// An immutable symmetric TSP instance.
///
/// The full distance table is computed once at construction so that every
/// operator sees O(1) distance lookups.
#[derive(Debug, Clone)]
pub struct Instance<T: Scalar> {
    name: String,
    coords: Vec<(T, T)>,
    metric: Metric,
    n: usize,
    table: Vec<T>,
}

impl<T: Scalar> Instance<T> {
    pub fn from_coords(
        name: impl Into<String>,
        coords: Vec<(T, T)>,
        metric: Metric,
    ) -> Result<Self, InstanceError> {
        let n = coords.len();
        if n < 3 {
            return Err(InstanceError::TooFewCities(n));
        }
        if metric == Metric::Explicit {
            return Err(InstanceError::MetricNeedsTable(metric.name()));
        }
        if let Some(i) = coords.iter().position(|(x, y)| !x.is_finite() || !y.is_finite()) {
            return Err(InstanceError::BadCoordinate(i));
        }
        let mut table = vec![T::zero(); n * n];
        for i in 0..n {
            for j in (i + 1)..n {
                let d = euclidean(coords[i], coords[j]);
                let d = match metric {
                    Metric::RoundedEuc2d => d.round(),
                    _ => d,
                };
                table[i * n + j] = d;
                table[j * n + i] = d;
            }
        }
        Ok(Self {
            name: name.into(),
            coords,
            metric,
            n,
            table,
        })
    }

    /// Builds an instance from a full symmetric distance table.
    pub fn from_matrix(name: impl Into<String>, rows: Vec<Vec<T>>) -> Result<Self, InstanceError> {
        let n = rows.len();
        if n < 3 {
            return Err(InstanceError::TooFewCities(n));
        }
        let mut table = Vec::with_capacity(n * n);
        for row in &rows {
            if row.len() != n {
                return Err(InstanceError::NotSquare {
                    rows: n,
                    cols: row.len(),
                });
            }
            table.extend_from_slice(row);
        }
        for i in 0..n {
            if table[i * n + i] != T::zero() {
                return Err(InstanceError::NonZeroDiagonal(i));
            }
            for j in (i + 1)..n {
                let d = table[i * n + j];
                if !d.is_finite() || d < T::zero() {
                    return Err(InstanceError::BadDistance(i, j));
                }
                if d != table[j * n + i] {
                    return Err(InstanceError::Asymmetric(i, j));
                }
            }
        }
        Ok(Self {
            name: name.into(),
            coords: Vec::new(),
            metric: Metric::Explicit,
            n,
            table,
        })
    }

    /// Builds an instance from the upper triangle of a distance table,
    /// row `i` holding the distances from city `i` to cities `i+1..n`.
    pub fn from_upper_triangle(
        name: impl Into<String>,
        upper: &[Vec<T>],
    ) -> Result<Self, InstanceError> {
        let n = upper.len();
        let mut rows = vec![vec![T::zero(); n]; n];
        for (i, row) in upper.iter().enumerate() {
            if row.len() != n - i - 1 {
                return Err(InstanceError::NotSquare {
                    rows: n,
                    cols: row.len() + i + 1,
                });
            }
            for (k, &d) in row.iter().enumerate() {
                let j = i + 1 + k;
                rows[i][j] = d;
                rows[j][i] = d;
            }
        }
        Self::from_matrix(name, rows)
    }

    /// Same coordinates under a different metric.
    pub fn with_metric(&self, metric: Metric) -> Result<Self, InstanceError> {
        if self.metric == Metric::Explicit {
            return Err(InstanceError::MetricNeedsTable(metric.name()));
        }
        Self::from_coords(self.name.clone(), self.coords.clone(), metric)
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    /// Number of cities.
    #[inline]
    pub fn len(&self) -> usize {
        self.n
    }

    /// Always false: instances hold at least three cities.
    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn metric(&self) -> Metric {
        self.metric
    }

    /// City coordinates in internal index order; empty for explicit tables.
    pub fn coords(&self) -> &[(T, T)] {
        &self.coords
    }

    /// Distance between cities `i` and `j`.
    ///
    /// Panics if either index is out of range.
    #[inline]
    pub fn distance(&self, i: usize, j: usize) -> T {
        assert!(
            i < self.n && j < self.n,
            "city index out of range: ({i}, {j}) with n = {}",
            self.n
        );
        self.table[i * self.n + j]
    }
}

#[inline]
fn euclidean<T: Scalar>(a: (T, T), b: (T, T)) -> T {
    let dx = a.0 - b.0;
    let dy = a.1 - b.1;
    (dx * dx + dy * dy).sqrt()
}
