//! Reproducible instance generators.
//!
//! Every generator derives its randomness from a ChaCha8 stream seeded
//! with the given 64-bit seed, so equal seeds reproduce equal instances
//! on every platform. Draws happen in a fixed documented order; changing
//! that order is a breaking change.

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::ball::{lipschitz_constant, LipschitzPoint, ToleranceConfig};
use crate::error::{Error, Result};
use crate::metric::{metric_closure, FiniteMetricSpace};
use crate::norm::{Direction, NormSpec};
use crate::representer::{push_to_extreme, Atom};
use crate::scalar::{real, Real};

/// Bounded retries for rejection steps (coincident sites, zero vectors).
const MAX_RETRIES: usize = 64;

/// Parameters of a generated instance.
#[derive(Debug, Clone, PartialEq)]
pub struct GenConfig {
    /// Nodes besides the basepoint.
    pub n: usize,
    /// Target space dimension.
    pub dim: usize,
    /// Norm exponent.
    pub p: f64,
    /// Cube dimension the Euclidean generator samples sites in.
    pub embed_dim: usize,
    /// Distance scale.
    pub scale: f64,
    /// Stream seed.
    pub seed: u64,
}

impl GenConfig {
    /// Euclidean target norm, sites in a 3-cube, unit scale.
    pub fn new(n: usize, dim: usize, seed: u64) -> Self {
        Self {
            n,
            dim,
            p: 2.0,
            embed_dim: 3,
            scale: 1.0,
            seed,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 1 {
            return Err(Error::InvalidGenConfig {
                what: "n must be at least 1",
            });
        }
        if self.dim < 1 {
            return Err(Error::InvalidGenConfig {
                what: "dim must be at least 1",
            });
        }
        if !(self.p.is_finite() && self.p > 1.0) {
            return Err(Error::InvalidGenConfig {
                what: "p must be finite and greater than 1",
            });
        }
        if self.embed_dim < 1 {
            return Err(Error::InvalidGenConfig {
                what: "embed_dim must be at least 1",
            });
        }
        if !(self.scale.is_finite() && self.scale > 0.0) {
            return Err(Error::InvalidGenConfig {
                what: "scale must be positive and finite",
            });
        }
        Ok(())
    }
}

/// Distances of `n + 1` random sites in the cube `[0, scale)^embed_dim`,
/// run through the shortest-path closure so the exact triangle check
/// holds despite rounding. Sites closer than `1e-6 * scale` trigger a
/// full resample.
pub fn gen_euclidean_space<T: Real>(cfg: &GenConfig) -> Result<FiniteMetricSpace<T>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n_nodes = cfg.n + 1;
    let min_gap = 1e-6 * cfg.scale;
    for _ in 0..MAX_RETRIES {
        let sites: Vec<Vec<f64>> = (0..n_nodes)
            .map(|_| {
                (0..cfg.embed_dim)
                    .map(|_| rng.random_range(0.0..cfg.scale))
                    .collect()
            })
            .collect();
        let mut raw = vec![vec![T::zero(); n_nodes]; n_nodes];
        let mut ok = true;
        'pairs: for i in 0..n_nodes {
            for j in i + 1..n_nodes {
                let d = sites[i]
                    .iter()
                    .zip(&sites[j])
                    .map(|(a, b)| (a - b) * (a - b))
                    .sum::<f64>()
                    .sqrt();
                if d < min_gap {
                    ok = false;
                    break 'pairs;
                }
                raw[i][j] = real(d);
                raw[j][i] = raw[i][j];
            }
        }
        if ok {
            return metric_closure(raw);
        }
    }
    Err(Error::IterationOverflow { limit: MAX_RETRIES })
}

/// A metric with no special structure: independent uniform entries on
/// `(0, scale]`, symmetrized by construction and repaired into a metric
/// by the shortest-path closure.
#[allow(clippy::needless_range_loop)]
pub fn gen_random_metric<T: Real>(cfg: &GenConfig) -> Result<FiniteMetricSpace<T>> {
    cfg.validate()?;
    let mut rng = ChaCha8Rng::seed_from_u64(cfg.seed);
    let n_nodes = cfg.n + 1;
    let mut raw = vec![vec![T::zero(); n_nodes]; n_nodes];
    for i in 0..n_nodes {
        for j in i + 1..n_nodes {
            // 1 - u moves [0, 1) to (0, 1], keeping entries positive
            let d = cfg.scale * (1.0 - rng.random::<f64>());
            raw[i][j] = real(d);
            raw[j][i] = raw[i][j];
        }
    }
    metric_closure(raw)
}

fn member_with<T: Real>(
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    rng: &mut ChaCha8Rng,
) -> Result<LipschitzPoint<T>> {
    let amp = space.max_dist().to_f64().unwrap_or(1.0);
    let mut rows = vec![vec![T::zero(); norm.dim()]];
    for _ in 1..space.n_nodes() {
        rows.push(
            (0..norm.dim())
                .map(|_| real(rng.random_range(-amp..amp)))
                .collect(),
        );
    }
    let raw = LipschitzPoint::new(rows)?;
    let l = lipschitz_constant(&raw, space, norm)?;
    // shrink 1 keeps the scaled point touching the boundary; otherwise
    // shrink uniformly into the interior
    let shrink = if rng.random_bool(0.5) {
        1.0
    } else {
        rng.random::<f64>()
    };
    if l == T::zero() {
        return Ok(LipschitzPoint::zero(space.n(), norm.dim()));
    }
    Ok(raw.scale(real::<T>(shrink) / l))
}

fn direction_with<T: Real>(norm: &NormSpec<T>, rng: &mut ChaCha8Rng) -> Result<Direction<T>> {
    for _ in 0..MAX_RETRIES {
        let coords: Vec<T> = (0..norm.dim())
            .map(|_| real(rng.random_range(-1.0..1.0)))
            .collect();
        if norm.eval(&coords) > real(1e-6) {
            return Direction::normalized(coords, norm);
        }
    }
    Err(Error::IterationOverflow { limit: MAX_RETRIES })
}

/// A random ball member. Draws a raw map with coordinates uniform over
/// `[-D, D)` (`D` the diameter), scales it onto the unit sphere of the
/// Lipschitz seminorm, then shrinks: by 1 with probability 1/2, so
/// boundary-touching points appear often, else by a uniform factor.
pub fn gen_member<T: Real>(
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    seed: u64,
) -> Result<LipschitzPoint<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    member_with(space, norm, &mut rng)
}

/// A random extreme point: a random member pushed along a random unit
/// direction until every node hangs tightly off the basepoint. The member
/// and the direction come from one stream in that order. The atom's `t`
/// records the displacement from the intermediate member, and its weight
/// is 1.
pub fn gen_extreme<T: Real>(
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    seed: u64,
    tol: &ToleranceConfig<T>,
) -> Result<Atom<T>> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let member = member_with(space, norm, &mut rng)?;
    let v = direction_with(norm, &mut rng)?;
    push_to_extreme(&member, space, norm, &v, tol)
}
