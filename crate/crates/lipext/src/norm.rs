//! The target space: a finite-dimensional lp norm with 1 < p < inf.

use crate::error::{Error, Result};
use crate::scalar::{real, scaled_const, Real};

/// Unit-norm acceptance band for directions.
pub(crate) const UNIT_TOL: f64 = 1e-12;

/// Dimension and exponent of the target space.
///
/// Only exponents with `1 < p < inf` are accepted: those are exactly the
/// strictly convex lp norms, and the extremality characterization breaks
/// down for p = 1 and p = inf.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct NormSpec<T> {
    dim: usize,
    p: T,
}

impl<T: Real> NormSpec<T> {
    pub fn new(dim: usize, p: T) -> Result<Self> {
        if dim < 1 {
            return Err(Error::InvalidDimension);
        }
        if !p.is_finite() || p <= T::one() {
            return Err(Error::InvalidExponent {
                p: p.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { dim, p })
    }

    /// Euclidean norm on `dim` coordinates.
    pub fn euclidean(dim: usize) -> Result<Self> {
        Self::new(dim, real(2.0))
    }

    pub fn dim(&self) -> usize {
        self.dim
    }

    pub fn p(&self) -> T {
        self.p
    }

    pub fn is_euclidean(&self) -> bool {
        self.p == real(2.0)
    }

    /// Evaluates the norm without a length check; callers validate shapes up
    /// front. Debug builds still assert.
    pub fn eval(&self, x: &[T]) -> T {
        debug_assert_eq!(x.len(), self.dim);
        if self.is_euclidean() {
            return x.iter().map(|&c| c * c).sum::<T>().sqrt();
        }
        // Scale by the max entry so powf stays well conditioned.
        let m = x.iter().fold(T::zero(), |acc, &c| acc.max(c.abs()));
        if m == T::zero() {
            return T::zero();
        }
        let s = x.iter().map(|&c| (c.abs() / m).powf(self.p)).sum::<T>();
        m * s.powf(T::one() / self.p)
    }

    /// Norm of the difference `a - b`.
    pub fn eval_diff(&self, a: &[T], b: &[T]) -> T {
        debug_assert_eq!(a.len(), b.len());
        let d: Vec<T> = a.iter().zip(b).map(|(&x, &y)| x - y).collect();
        self.eval(&d)
    }
}

/// Checked norm evaluation: `(sum_i |x_i|^p)^(1/p)`.
pub fn norm_eval<T: Real>(norm: &NormSpec<T>, x: &[T]) -> Result<T> {
    if x.len() != norm.dim() {
        return Err(Error::DimensionMismatch {
            expected: norm.dim(),
            found: x.len(),
        });
    }
    Ok(norm.eval(x))
}

/// A unit vector of the target space.
#[derive(Debug, Clone, PartialEq)]
pub struct Direction<T> {
    coords: Vec<T>,
}

impl<T: Real> Direction<T> {
    /// Accepts a vector whose norm is already 1 up to a strict band.
    pub fn new(coords: Vec<T>, norm: &NormSpec<T>) -> Result<Self> {
        if coords.len() != norm.dim() {
            return Err(Error::DimensionMismatch {
                expected: norm.dim(),
                found: coords.len(),
            });
        }
        let value = norm.eval(&coords);
        if !value.is_finite() || (value - T::one()).abs() > scaled_const(UNIT_TOL) {
            return Err(Error::InvalidDirection {
                norm: value.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self { coords })
    }

    /// Scales an arbitrary nonzero vector to unit norm.
    pub fn normalized(coords: Vec<T>, norm: &NormSpec<T>) -> Result<Self> {
        if coords.len() != norm.dim() {
            return Err(Error::DimensionMismatch {
                expected: norm.dim(),
                found: coords.len(),
            });
        }
        let value = norm.eval(&coords);
        if !value.is_finite() || value <= T::zero() {
            return Err(Error::InvalidDirection {
                norm: value.to_f64().unwrap_or(f64::NAN),
            });
        }
        Ok(Self {
            coords: coords.iter().map(|&c| c / value).collect(),
        })
    }

    /// The standard basis vector `e_index`, unit under every l^p norm.
    pub fn basis(index: usize, dim: usize) -> Result<Self> {
        if dim == 0 {
            return Err(Error::InvalidDimension);
        }
        if index >= dim {
            return Err(Error::IndexOutOfRange { index, n: dim - 1 });
        }
        let mut coords = vec![T::zero(); dim];
        coords[index] = T::one();
        Ok(Self { coords })
    }

    /// Wraps coordinates without the unit check, for callers that judge
    /// the norm themselves.
    pub(crate) fn unchecked(coords: Vec<T>) -> Self {
        Self { coords }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn dim(&self) -> usize {
        self.coords.len()
    }
}
