//! Finite metric spaces: validated distance matrices over points
//! `x_0, ..., x_n`, with index 0 reserved for the basepoint.

use crate::error::{Error, Result};
use crate::scalar::Real;

/// A finite metric space on `n + 1` distinct points.
///
/// The distance matrix is validated exactly at construction: zero diagonal,
/// symmetry, strictly positive off-diagonal entries, and the triangle
/// inequality. Distances are user-given data, so no tolerance is applied.
#[derive(Debug, Clone, PartialEq)]
pub struct FiniteMetricSpace<T> {
    n: usize,
    dist: Vec<Vec<T>>,
}

impl<T: Real> FiniteMetricSpace<T> {
    /// Validates `raw` as a metric and wraps it. This is the only way to
    /// obtain a `FiniteMetricSpace`.
    #[allow(clippy::needless_range_loop)]
    pub fn new(raw: Vec<Vec<T>>) -> Result<Self> {
        let side = raw.len();
        if side < 2 {
            return Err(Error::TooSmall { side });
        }
        for (row, r) in raw.iter().enumerate() {
            if r.len() != side {
                return Err(Error::NotSquare {
                    row,
                    len: r.len(),
                    side,
                });
            }
        }
        for i in 0..side {
            if raw[i][i] != T::zero() {
                return Err(Error::NonzeroDiagonal { i });
            }
        }
        for i in 0..side {
            for j in (i + 1)..side {
                if raw[i][j] != raw[j][i] {
                    return Err(Error::NotSymmetric { i, j });
                }
                if !raw[i][j].is_finite() {
                    return Err(Error::NonFiniteDistance { i, j });
                }
                if raw[i][j] <= T::zero() {
                    return Err(Error::NegativeOrZeroOffDiagonal { i, j });
                }
            }
        }
        for i in 0..side {
            for j in 0..side {
                for k in 0..side {
                    if raw[i][j] > raw[i][k] + raw[k][j] {
                        return Err(Error::TriangleViolation { i, j, k });
                    }
                }
            }
        }
        Ok(Self {
            n: side - 1,
            dist: raw,
        })
    }

    /// Number of non-basepoint nodes.
    pub fn n(&self) -> usize {
        self.n
    }

    /// Total number of points, `n + 1`.
    pub fn n_nodes(&self) -> usize {
        self.n + 1
    }

    pub fn dist(&self, i: usize, j: usize) -> T {
        self.dist[i][j]
    }

    pub fn matrix(&self) -> &[Vec<T>] {
        &self.dist
    }

    /// Largest pairwise distance.
    pub fn max_dist(&self) -> T {
        let mut m = T::zero();
        for i in 0..self.n_nodes() {
            for j in (i + 1)..self.n_nodes() {
                m = m.max(self.dist[i][j]);
            }
        }
        m
    }

    /// Iterator over unordered pairs `(i, j)` with `i < j`, ascending.
    pub fn pairs(&self) -> impl Iterator<Item = (usize, usize)> {
        let nodes = self.n_nodes();
        (0..nodes).flat_map(move |i| ((i + 1)..nodes).map(move |j| (i, j)))
    }
}

/// Shortest-path repair of a symmetric nonnegative matrix into a metric.
///
/// Relaxes `dist[i][j] <- min(dist[i][j], dist[i][k] + dist[k][j])` with
/// full sweeps until a fixed point, which guarantees the exact triangle
/// check in [`FiniteMetricSpace::new`] passes. A matrix that already is a
/// metric comes back unchanged.
#[allow(clippy::needless_range_loop)]
pub fn metric_closure<T: Real>(raw: Vec<Vec<T>>) -> Result<FiniteMetricSpace<T>> {
    let side = raw.len();
    if side < 2 {
        return Err(Error::TooSmall { side });
    }
    for (row, r) in raw.iter().enumerate() {
        if r.len() != side {
            return Err(Error::NotSquare {
                row,
                len: r.len(),
                side,
            });
        }
    }
    for i in 0..side {
        if raw[i][i] != T::zero() {
            return Err(Error::NonzeroDiagonal { i });
        }
        for j in (i + 1)..side {
            if raw[i][j] != raw[j][i] {
                return Err(Error::NotSymmetric { i, j });
            }
            if !raw[i][j].is_finite() {
                return Err(Error::NonFiniteDistance { i, j });
            }
            if raw[i][j] <= T::zero() {
                return Err(Error::NegativeOrZeroOffDiagonal { i, j });
            }
        }
    }

    let mut d = raw;
    loop {
        let mut changed = false;
        for k in 0..side {
            for i in 0..side {
                for j in (i + 1)..side {
                    let via = d[i][k] + d[k][j];
                    if via < d[i][j] {
                        d[i][j] = via;
                        d[j][i] = via;
                        changed = true;
                    }
                }
            }
        }
        if !changed {
            break;
        }
    }
    FiniteMetricSpace::new(d)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn two_point_space() {
        let space = FiniteMetricSpace::new(vec![vec![0.0, 1.0], vec![1.0, 0.0]]).unwrap();
        assert_eq!(space.n(), 1);
        assert_eq!(space.dist(0, 1), 1.0);
    }

    #[test]
    fn triangle_violation_reports_triple() {
        let raw = vec![
            vec![0.0, 1.0, 3.0],
            vec![1.0, 0.0, 1.0],
            vec![3.0, 1.0, 0.0],
        ];
        assert_eq!(
            FiniteMetricSpace::new(raw),
            Err(Error::TriangleViolation { i: 0, j: 2, k: 1 })
        );
    }

    #[test]
    fn asymmetry_detected() {
        let raw = vec![vec![0.0, 1.0], vec![2.0, 0.0]];
        assert_eq!(
            FiniteMetricSpace::new(raw),
            Err(Error::NotSymmetric { i: 0, j: 1 })
        );
    }

    #[test]
    fn nonzero_diagonal_detected() {
        let raw = vec![vec![0.5, 1.0], vec![1.0, 0.0]];
        assert_eq!(
            FiniteMetricSpace::new(raw),
            Err(Error::NonzeroDiagonal { i: 0 })
        );
    }

    #[test]
    fn infinite_distance_rejected() {
        let raw = vec![vec![0.0, f64::INFINITY], vec![f64::INFINITY, 0.0]];
        assert_eq!(
            FiniteMetricSpace::new(raw),
            Err(Error::NonFiniteDistance { i: 0, j: 1 })
        );
        let raw = vec![vec![0.0, f64::NAN], vec![f64::NAN, 0.0]];
        assert!(matches!(
            metric_closure(raw),
            Err(Error::NotSymmetric { .. }) | Err(Error::NonFiniteDistance { .. })
        ));
    }

    #[test]
    fn coincident_points_rejected() {
        let raw = vec![
            vec![0.0, 0.0, 1.0],
            vec![0.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ];
        assert_eq!(
            FiniteMetricSpace::new(raw),
            Err(Error::NegativeOrZeroOffDiagonal { i: 0, j: 1 })
        );
    }

    #[test]
    fn too_small_rejected() {
        assert_eq!(
            FiniteMetricSpace::new(vec![vec![0.0_f64]]),
            Err(Error::TooSmall { side: 1 })
        );
    }

    #[test]
    fn closure_repairs_long_edge() {
        // shortest paths by hand: 0-2 direct costs 3, via 1 costs 1+1 = 2
        let raw = vec![
            vec![0.0, 1.0, 3.0],
            vec![1.0, 0.0, 1.0],
            vec![3.0, 1.0, 0.0],
        ];
        let space = metric_closure(raw).unwrap();
        assert_eq!(space.dist(0, 2), 2.0);
        assert_eq!(space.dist(2, 0), 2.0);
        assert_eq!(space.dist(0, 1), 1.0);
    }

    #[test]
    fn closure_fixed_point_on_valid_metric() {
        let raw = vec![
            vec![0.0, 1.0, 1.5],
            vec![1.0, 0.0, 1.0],
            vec![1.5, 1.0, 0.0],
        ];
        let space = metric_closure(raw.clone()).unwrap();
        assert_eq!(space.matrix(), &raw[..]);
    }

    #[test]
    fn closure_repairs_via_intermediate() {
        // path 0 -> 2 -> 1 costs 2, beating the direct 5
        let raw = vec![
            vec![0.0, 5.0, 1.0],
            vec![5.0, 0.0, 1.0],
            vec![1.0, 1.0, 0.0],
        ];
        let space = metric_closure(raw).unwrap();
        assert_eq!(space.dist(0, 1), 2.0);
    }

    #[test]
    fn closure_rejects_bad_input() {
        assert_eq!(
            metric_closure(vec![vec![0.0, -1.0], vec![-1.0, 0.0]]),
            Err(Error::NegativeOrZeroOffDiagonal { i: 0, j: 1 })
        );
    }
}
