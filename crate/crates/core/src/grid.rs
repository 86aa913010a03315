//! Frequency grids: strictly ascending, positive, non-empty lists of
//! evaluation frequencies in Hz.

use crate::error::{Error, Result};

/// An immutable, validated list of analysis frequencies in Hz.
#[derive(Debug, Clone, PartialEq)]
pub struct FrequencyGrid {
    points: Vec<f64>,
}

impl FrequencyGrid {
    /// Builds a grid from an explicit point list, enforcing the
    /// invariants: non-empty, all points positive and finite, strictly
    /// ascending.
    pub fn from_points(points: Vec<f64>) -> Result<Self> {
        if points.is_empty() {
            return Err(Error::Grid("grid must be non-empty".into()));
        }
        for (i, &f) in points.iter().enumerate() {
            if !f.is_finite() || f <= 0.0 {
                return Err(Error::Grid(format!("point {i} is {f}, must be > 0")));
            }
            if i > 0 && points[i - 1] >= f {
                return Err(Error::Grid(format!(
                    "points must be strictly ascending ({} >= {} at index {i})",
                    points[i - 1],
                    f
                )));
            }
        }
        Ok(Self { points })
    }

    /// A single-frequency grid.
    pub fn single(f: f64) -> Result<Self> {
        Self::from_points(vec![f])
    }

    pub fn points(&self) -> &[f64] {
        &self.points
    }

    pub fn len(&self) -> usize {
        self.points.len()
    }

    pub fn is_empty(&self) -> bool {
        false // invariant: non-empty
    }

    /// Index of the grid point closest to `f`.
    pub fn nearest(&self, f: f64) -> usize {
        let mut best = 0;
        let mut dist = f64::INFINITY;
        for (i, &p) in self.points.iter().enumerate() {
            let d = (p - f).abs();
            if d < dist {
                dist = d;
                best = i;
            }
        }
        best
    }
}

/// `n` evenly spaced points from `start` to `stop` inclusive.
///
/// `n = 1` requires `start == stop`.
pub fn make_grid(start: f64, stop: f64, n: usize) -> Result<FrequencyGrid> {
    if n == 0 {
        return Err(Error::Grid("point count must be >= 1".into()));
    }
    if !(start.is_finite() && stop.is_finite()) || start <= 0.0 {
        return Err(Error::Grid(format!("non-positive start frequency {start}")));
    }
    if stop < start {
        return Err(Error::Grid(format!("stop {stop} < start {start}")));
    }
    if n == 1 {
        if start != stop {
            return Err(Error::Grid(
                "single-point grid requires start == stop".into(),
            ));
        }
        return FrequencyGrid::from_points(vec![start]);
    }
    let step = (stop - start) / (n - 1) as f64;
    let mut pts = Vec::with_capacity(n);
    for i in 0..n {
        // force exact endpoints
        let f = if i + 1 == n {
            stop
        } else {
            start + step * i as f64
        };
        pts.push(f);
    }
    FrequencyGrid::from_points(pts)
}

#[cfg(test)]
mod tests {
    use super::*;
    use approx::assert_relative_eq;

    #[test]
    fn single_point_grid() {
        let g = make_grid(90e9, 90e9, 1).unwrap();
        assert_eq!(g.points(), &[90e9]);
    }

    #[test]
    fn even_spacing() {
        let g = make_grid(70e9, 100e9, 4).unwrap();
        assert_eq!(g.len(), 4);
        assert_relative_eq!(g.points()[0], 70e9);
        assert_relative_eq!(g.points()[1], 80e9);
        assert_relative_eq!(g.points()[2], 90e9);
        assert_relative_eq!(g.points()[3], 100e9);
    }

    #[test]
    fn band_edges_from_reported_bandwidth() {
        let g = make_grid(72.3e9, 92.95e9, 2).unwrap();
        assert_eq!(g.points(), &[72.3e9, 92.95e9]);
    }

    #[test]
    fn rejects_bad_inputs() {
        assert!(make_grid(0.0, 1e9, 3).is_err());
        assert!(make_grid(2e9, 1e9, 3).is_err());
        assert!(make_grid(1e9, 2e9, 0).is_err());
        assert!(make_grid(1e9, 2e9, 1).is_err());
        assert!(FrequencyGrid::from_points(vec![1e9, 1e9]).is_err());
        assert!(FrequencyGrid::from_points(vec![]).is_err());
    }

    #[test]
    fn nearest_point() {
        let g = make_grid(1e9, 5e9, 5).unwrap();
        assert_eq!(g.nearest(3.2e9), 2);
        assert_eq!(g.nearest(0.1e9), 0);
        assert_eq!(g.nearest(9e9), 4);
    }
}
