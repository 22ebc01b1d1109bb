//! Points of the Lipschitz ball and membership tests.
//!
//! A point is a tuple `y = (y_0, ..., y_n)` of target-space vectors with
//! `y_0 = 0`. Membership in the unit ball means `|y_i - y_j| <= d(x_i, x_j)`
//! for every pair; the tuple type itself makes no such promise, so points
//! outside the ball stay representable for generators and error reporting.

use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::norm::NormSpec;
use crate::scalar::{real, Real};

/// Tolerances used by membership and tightness tests.
///
/// Metric axioms are checked exactly since distances are inputs; computed
/// norms get a mixed relative/absolute band `tol * max(1, d)` so both tiny
/// and large distances behave.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ToleranceConfig<T> {
    /// Membership slack allowance.
    pub tol_feas: T,
    /// Half-width of the equality-detection band for tight pairs.
    pub tol_tight: T,
    /// Weights at or below this threshold are pruned.
    pub tol_weight: T,
}

impl<T: Real> ToleranceConfig<T> {
    pub fn new(tol_feas: T, tol_tight: T, tol_weight: T) -> Result<Self> {
        if tol_feas < T::zero() || tol_tight < T::zero() || tol_weight < T::zero() {
            return Err(Error::NegativeTolerance);
        }
        Ok(Self {
            tol_feas,
            tol_tight,
            tol_weight,
        })
    }

    /// Width of the feasibility band at distance `d`.
    pub fn feas_band(&self, d: T) -> T {
        self.tol_feas * T::one().max(d)
    }

    /// Width of the tightness band at distance `d`.
    pub fn tight_band(&self, d: T) -> T {
        self.tol_tight * T::one().max(d)
    }

    /// Tightness test shared by every module: a pair counts as tight when
    /// its norm sits within the band around the distance.
    pub fn is_tight(&self, norm: T, d: T) -> bool {
        (norm - d).abs() <= self.tight_band(d)
    }
}

impl<T: Real> Default for ToleranceConfig<T> {
    fn default() -> Self {
        Self {
            tol_feas: real(1e-9),
            tol_tight: real(1e-9),
            tol_weight: real(1e-12),
        }
    }
}

/// A tuple `y = (y_0, ..., y_n)` of vectors in the target space, `y_0 = 0`.
#[derive(Debug, Clone, PartialEq)]
pub struct LipschitzPoint<T> {
    values: Vec<Vec<T>>,
}

impl<T: Real> LipschitzPoint<T> {
    /// Wraps raw values; requires at least two nodes, uniform row length,
    /// and an exactly zero basepoint row.
    pub fn new(values: Vec<Vec<T>>) -> Result<Self> {
        if values.len() < 2 {
            return Err(Error::TooSmall { side: values.len() });
        }
        let dim = values[0].len();
        if dim == 0 {
            return Err(Error::InvalidDimension);
        }
        for (i, row) in values.iter().enumerate() {
            if row.len() != dim {
                return Err(Error::DimensionMismatch {
                    expected: dim,
                    found: row.len(),
                });
            }
            if row.iter().any(|c| !c.is_finite()) {
                return Err(Error::NonFiniteValue { row: i });
            }
        }
        if values[0].iter().any(|&c| c != T::zero()) {
            return Err(Error::NonzeroBasepointDisplacement);
        }
        Ok(Self { values })
    }

    /// The zero map on `n + 1` nodes.
    pub fn zero(n: usize, dim: usize) -> Self {
        Self {
            values: vec![vec![T::zero(); dim]; n + 1],
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.values.len()
    }

    pub fn dim(&self) -> usize {
        self.values[0].len()
    }

    pub fn value(&self, i: usize) -> &[T] {
        &self.values[i]
    }

    pub fn values(&self) -> &[Vec<T>] {
        &self.values
    }

    pub fn into_values(self) -> Vec<Vec<T>> {
        self.values
    }

    /// Coordinate-wise difference `y_i - y_j`.
    pub fn diff(&self, i: usize, j: usize) -> Vec<T> {
        self.values[i]
            .iter()
            .zip(&self.values[j])
            .map(|(&a, &b)| a - b)
            .collect()
    }

    /// Norm of `y_i - y_j`.
    pub fn pair_norm(&self, i: usize, j: usize, norm: &NormSpec<T>) -> T {
        norm.eval(&self.diff(i, j))
    }

    pub fn scale(&self, factor: T) -> Self {
        Self {
            values: self
                .values
                .iter()
                .map(|row| row.iter().map(|&c| c * factor).collect())
                .collect(),
        }
    }

    /// Checks this point against a space and norm.
    pub fn check_shape(&self, space: &FiniteMetricSpace<T>, norm: &NormSpec<T>) -> Result<()> {
        if self.n_nodes() != space.n_nodes() {
            return Err(Error::DimensionMismatch {
                expected: space.n_nodes(),
                found: self.n_nodes(),
            });
        }
        if self.dim() != norm.dim() {
            return Err(Error::DimensionMismatch {
                expected: norm.dim(),
                found: self.dim(),
            });
        }
        Ok(())
    }
}

/// Smallest `L` with `|y_i - y_j| <= L d(x_i, x_j)` for all pairs, together
/// with the pair attaining it (lexicographically smallest on ties).
pub fn lipschitz_constant_with_pair<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
) -> Result<(T, (usize, usize))> {
    y.check_shape(space, norm)?;
    let mut best = T::zero();
    let mut pair = (0, 1);
    for (i, j) in space.pairs() {
        let ratio = y.pair_norm(i, j, norm) / space.dist(i, j);
        if ratio > best {
            best = ratio;
            pair = (i, j);
        }
    }
    Ok((best, pair))
}

/// Smallest Lipschitz constant of `y` on the given space.
pub fn lipschitz_constant<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
) -> Result<T> {
    lipschitz_constant_with_pair(y, space, norm).map(|(l, _)| l)
}

/// Membership in the ball of radius `l`: every pair must satisfy
/// `|y_i - y_j| <= l d(x_i, x_j)` up to the feasibility band.
pub fn is_member<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    l: T,
    tol: &ToleranceConfig<T>,
) -> Result<bool> {
    y.check_shape(space, norm)?;
    Ok(worst_violation(y, space, norm, l, tol).is_none())
}

/// The pair violating membership the most, if any: maximizes
/// `|y_i - y_j| - (l d + band)`, lexicographically smallest on ties.
/// Returns `(i, j, norm, bound)` where `bound = l d + band`.
pub(crate) fn worst_violation<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    l: T,
    tol: &ToleranceConfig<T>,
) -> Option<(usize, usize, T, T)> {
    let mut worst: Option<(usize, usize, T, T, T)> = None;
    for (i, j) in space.pairs() {
        let ld = l * space.dist(i, j);
        let bound = ld + tol.feas_band(ld);
        let value = y.pair_norm(i, j, norm);
        let excess = value - bound;
        if excess > T::zero() {
            let is_worse = match &worst {
                Some((_, _, _, _, e)) => excess > *e,
                None => true,
            };
            if is_worse {
                worst = Some((i, j, value, bound, excess));
            }
        }
    }
    worst.map(|(i, j, v, b, _)| (i, j, v, b))
}

/// Requires membership at `L = 1`; on failure reports the worst pair.
pub(crate) fn require_member<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    tol: &ToleranceConfig<T>,
) -> Result<()> {
    y.check_shape(space, norm)?;
    match worst_violation(y, space, norm, T::one(), tol) {
        None => Ok(()),
        Some((i, j, value, bound)) => Err(Error::NotAMember {
            i,
            j,
            norm: value.to_f64().unwrap_or(f64::NAN),
            bound: bound.to_f64().unwrap_or(f64::NAN),
        }),
    }
}

/// Scales `y` into the unit ball: divides by `max(1, L(y))`. Points already
/// inside come back unchanged, so the operation is idempotent. Constants
/// within a few ulps of 1 count as inside; without that slack a rescaled
/// point whose constant re-evaluates marginally above 1 would keep moving.
pub fn rescale_into_ball<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
) -> Result<LipschitzPoint<T>> {
    let l = lipschitz_constant(y, space, norm)?;
    if l <= T::one() + real::<T>(64.0) * T::epsilon() {
        return Ok(y.clone());
    }
    Ok(y.scale(T::one() / l))
}
