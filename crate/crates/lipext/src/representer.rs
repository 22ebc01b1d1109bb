//! Constructive decomposition into extreme points.
//!
//! Fix a unit direction `v` in the target space. Any ball point `y`
//! embeds into the family `y + t (.) v` where `t` displaces node `i` by
//! `t_i v` and `t_0 = 0`. Within this family a non-extreme point sits
//! strictly between the two endpoints obtained by shifting a slack cut
//! until some crossing pair turns tight. Splitting recursively and
//! pruning weights by affine dependence yields a convex combination of at
//! most `n + 1` extreme points that averages back to `y`.

use crate::ball::{require_member, LipschitzPoint, ToleranceConfig};
use crate::error::{Error, Result};
use crate::extremality::{
    certify_extremality, cut_oracle_bruteforce, node_mask, ExtremalityCertificate,
};
use crate::metric::FiniteMetricSpace;
use crate::norm::{Direction, NormSpec, UNIT_TOL};
use crate::scalar::{real, scaled_const, Real};

/// Atoms closer than this in every `t` coordinate merge into one.
const MERGE_TOL: f64 = 1e-10;
/// Absolute gap at which one-dimensional root bisection stops.
const BISECT_TOL: f64 = 1e-12;
/// Relative pivot floor for the affine-dependence elimination.
const PIVOT_TOL: f64 = 1e-10;
/// Coordinate band for reconstruction and atom-consistency checks.
const RECON_TOL: f64 = 1e-8;
/// Allowed drift of the weight sum away from 1.
const WEIGHT_SUM_TOL: f64 = 1e-9;
/// Largest `n` at which the verifier runs the exhaustive cut oracle.
const VERIFY_ORACLE_MAX_N: usize = 10;

/// Per-node scalar displacements along a direction; `t[0] = 0` always.
#[derive(Debug, Clone, PartialEq)]
pub struct TVector<T> {
    coords: Vec<T>,
}

impl<T: Real> TVector<T> {
    pub fn new(coords: Vec<T>) -> Result<Self> {
        if coords.len() < 2 {
            return Err(Error::TooSmall { side: coords.len() });
        }
        if coords[0] != T::zero() {
            return Err(Error::NonzeroBasepointDisplacement);
        }
        if let Some(node) = coords.iter().position(|c| !c.is_finite()) {
            return Err(Error::NonFiniteDisplacement { node });
        }
        Ok(Self { coords })
    }

    /// The zero displacement over nodes `0..=n`.
    pub fn zero(n: usize) -> Self {
        Self {
            coords: vec![T::zero(); n + 1],
        }
    }

    pub fn coords(&self) -> &[T] {
        &self.coords
    }

    pub fn get(&self, i: usize) -> T {
        self.coords[i]
    }

    pub fn n(&self) -> usize {
        self.coords.len() - 1
    }

    fn shift(&mut self, nodes: &[usize], s: T) {
        for &i in nodes {
            self.coords[i] = self.coords[i] + s;
        }
    }

    /// The displaced point `y + t (.) v`, node `i` moved by `t_i v`.
    pub fn apply(&self, y: &LipschitzPoint<T>, v: &Direction<T>) -> Result<LipschitzPoint<T>> {
        if self.coords.len() != y.n_nodes() {
            return Err(Error::DimensionMismatch {
                expected: y.n_nodes(),
                found: self.coords.len(),
            });
        }
        if v.dim() != y.dim() {
            return Err(Error::DimensionMismatch {
                expected: y.dim(),
                found: v.dim(),
            });
        }
        let rows = y
            .values()
            .iter()
            .zip(&self.coords)
            .map(|(row, &t)| {
                row.iter()
                    .zip(v.coords())
                    .map(|(&c, &u)| c + t * u)
                    .collect()
            })
            .collect();
        LipschitzPoint::new(rows)
    }
}

/// Coefficient range of a joint shift that stays in the ball, plus the
/// crossing pairs whose constraints stop motion at each end.
#[derive(Debug, Clone, PartialEq)]
pub struct FeasibleInterval<T> {
    pub t_min: T,
    pub t_max: T,
    pub binding_min: (usize, usize),
    pub binding_max: (usize, usize),
}

/// Solves `|a + s v|_2 <= d` for `s`, with `v` a Euclidean unit vector.
/// Returns the interval endpoints, roots of `s^2 + 2<a,v>s + |a|^2 - d^2`,
/// arranged so neither root suffers cancellation. Requires a feasible
/// input (`|a| <= d`); otherwise the discriminant clamps to zero and the
/// interval degenerates.
pub fn pair_interval_closed_form<T: Real>(a: &[T], v: &[T], d: T) -> Result<(T, T)> {
    if a.len() != v.len() {
        return Err(Error::DimensionMismatch {
            expected: v.len(),
            found: a.len(),
        });
    }
    let c: T = a.iter().zip(v).map(|(&x, &u)| x * u).sum();
    let a2: T = a.iter().map(|&x| x * x).sum();
    let r = d * d - a2;
    let sq = (c * c + r).max(T::zero()).sqrt();
    if c >= T::zero() {
        let s_minus = -c - sq;
        let s_plus = if c + sq > T::zero() {
            r / (c + sq)
        } else {
            T::zero()
        };
        Ok((s_minus, s_plus))
    } else {
        let s_plus = -c + sq;
        Ok((-r / s_plus, s_plus))
    }
}

/// Solves `|a + s v| <= d` for `s` under any supported norm by bisecting
/// each side of zero, with `v` unit in that norm. The norm is 1-Lipschitz
/// along the line, so the inner endpoint of the final bracket, which this
/// returns, never leaves the feasible set. Requires `|a| <= d` up to the
/// usual band; a strictly infeasible input degenerates to `(0, 0)`.
pub fn pair_interval_bisect<T: Real>(a: &[T], v: &[T], norm: &NormSpec<T>, d: T) -> Result<(T, T)> {
    if a.len() != norm.dim() {
        return Err(Error::DimensionMismatch {
            expected: norm.dim(),
            found: a.len(),
        });
    }
    if v.len() != norm.dim() {
        return Err(Error::DimensionMismatch {
            expected: norm.dim(),
            found: v.len(),
        });
    }
    let excess = |s: T| -> T {
        let shifted: Vec<T> = a.iter().zip(v).map(|(&x, &u)| x + s * u).collect();
        norm.eval(&shifted) - d
    };
    if excess(T::zero()) > T::zero() {
        return Ok((T::zero(), T::zero()));
    }
    let gap = scaled_const::<T>(BISECT_TOL);
    let reach = (d + d) + T::one();
    let solve = |sign: T| -> T {
        // feasible at inner, infeasible at outer: |a + reach v| >= reach - d
        let mut inner = T::zero();
        let mut outer = sign * reach;
        while (outer - inner).abs() > gap {
            let mid = (inner + outer) * real(0.5);
            if excess(mid) <= T::zero() {
                inner = mid;
            } else {
                outer = mid;
            }
        }
        inner
    };
    Ok((solve(-T::one()), solve(T::one())))
}

fn pair_interval<T: Real>(a: &[T], v: &Direction<T>, norm: &NormSpec<T>, d: T) -> Result<(T, T)> {
    if norm.is_euclidean() {
        pair_interval_closed_form(a, v.coords(), d)
    } else {
        pair_interval_bisect(a, v.coords(), norm, d)
    }
}

/// Range of `s` keeping `y + s (.) v` on `nodes` inside the ball: the
/// intersection of the per-pair intervals over all pairs with exactly one
/// end in `nodes`. Binding pairs report the lexicographically first
/// attainer of each endpoint. Requires every crossing pair slack, so the
/// interval contains 0 in its interior.
pub fn feasible_interval<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    v: &Direction<T>,
    nodes: &[usize],
    tol: &ToleranceConfig<T>,
) -> Result<FeasibleInterval<T>> {
    y.check_shape(space, norm)?;
    if v.dim() != norm.dim() {
        return Err(Error::DimensionMismatch {
            expected: norm.dim(),
            found: v.dim(),
        });
    }
    let mask = node_mask(nodes, space.n())?;
    for (i, j) in space.pairs() {
        if mask[i] != mask[j] && tol.is_tight(y.pair_norm(i, j, norm), space.dist(i, j)) {
            return Err(Error::NotASlackCut { i, j });
        }
    }
    let mut interval: Option<FeasibleInterval<T>> = None;
    for (i, j) in space.pairs() {
        if mask[i] == mask[j] {
            continue;
        }
        // orient the difference so s shifts the in-set node
        let a = if mask[i] { y.diff(i, j) } else { y.diff(j, i) };
        let (lo, hi) = pair_interval(&a, v, norm, space.dist(i, j))?;
        match interval.as_mut() {
            None => {
                interval = Some(FeasibleInterval {
                    t_min: lo,
                    t_max: hi,
                    binding_min: (i, j),
                    binding_max: (i, j),
                });
            }
            Some(iv) => {
                if lo > iv.t_min {
                    iv.t_min = lo;
                    iv.binding_min = (i, j);
                }
                if hi < iv.t_max {
                    iv.t_max = hi;
                    iv.binding_max = (i, j);
                }
            }
        }
    }
    // nodes is nonempty and excludes the basepoint, so pairs exist
    Ok(interval.expect("a cut always has crossing pairs"))
}

/// One extreme point with its convex weight and the displacement that
/// produced it from the decomposed point.
#[derive(Debug, Clone, PartialEq)]
pub struct Atom<T> {
    pub weight: T,
    pub t: TVector<T>,
    pub point: LipschitzPoint<T>,
}

/// Sizes of the successive cuts consumed by [`push_to_extreme`]; strictly
/// decreasing, hence at most `n` entries.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PushTrace {
    pub cut_sizes: Vec<usize>,
}

/// Like [`push_to_extreme`], also reporting the cut sizes encountered.
pub fn push_to_extreme_traced<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    v: &Direction<T>,
    tol: &ToleranceConfig<T>,
) -> Result<(Atom<T>, PushTrace)> {
    let n = space.n();
    let mut t = TVector::zero(n);
    let mut z = y.clone();
    let mut cut_sizes = Vec::new();
    for _ in 0..=n {
        match certify_extremality(&z, space, norm, tol)? {
            ExtremalityCertificate::Extreme { .. } => {
                return Ok((
                    Atom {
                        weight: T::one(),
                        t,
                        point: z,
                    },
                    PushTrace { cut_sizes },
                ));
            }
            ExtremalityCertificate::NotExtreme { cut } => {
                cut_sizes.push(cut.nodes().len());
                let iv = feasible_interval(&z, space, norm, v, cut.nodes(), tol)?;
                t.shift(cut.nodes(), iv.t_max);
                z = t.apply(y, v)?;
            }
        }
    }
    Err(Error::IterationOverflow { limit: n })
}

/// Drives a ball point to an extreme point by repeatedly shifting the
/// current slack cut forward along `v` until its binding pair turns
/// tight. Each step strictly grows the set of nodes reachable through
/// tight pairs, so at most `n` shifts occur. Returns the extreme point
/// together with the accumulated displacement (and weight 1).
pub fn push_to_extreme<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    v: &Direction<T>,
    tol: &ToleranceConfig<T>,
) -> Result<Atom<T>> {
    push_to_extreme_traced(y, space, norm, v, tol).map(|(atom, _)| atom)
}

/// A convex combination of extreme points averaging to a base point.
#[derive(Debug, Clone, PartialEq)]
pub struct Decomposition<T> {
    base: LipschitzPoint<T>,
    direction: Direction<T>,
    atoms: Vec<Atom<T>>,
}

impl<T: Real> Decomposition<T> {
    pub fn k(&self) -> usize {
        self.atoms.len()
    }

    pub fn atoms(&self) -> &[Atom<T>] {
        &self.atoms
    }

    pub fn direction(&self) -> &Direction<T> {
        &self.direction
    }

    pub fn base(&self) -> &LipschitzPoint<T> {
        &self.base
    }

    /// The weighted average of the atom points.
    pub fn reconstruct(&self) -> LipschitzPoint<T> {
        let mut rows = vec![vec![T::zero(); self.base.dim()]; self.base.n_nodes()];
        for atom in &self.atoms {
            for (acc, row) in rows.iter_mut().zip(atom.point.values()) {
                for (a, &c) in acc.iter_mut().zip(row) {
                    *a = *a + atom.weight * c;
                }
            }
        }
        LipschitzPoint::new(rows).expect("atoms share the base shape")
    }

    /// Largest coordinate gap between the base point and the weighted
    /// average of the atoms.
    pub fn reconstruction_error(&self) -> T {
        let avg = self.reconstruct();
        let mut worst = T::zero();
        for (a, b) in self.base.values().iter().zip(avg.values()) {
            for (&x, &y) in a.iter().zip(b) {
                worst = worst.max((x - y).abs());
            }
        }
        worst
    }

    /// Flattens into the plain-data form consumed by
    /// [`verify_decomposition`].
    pub fn claim(&self) -> DecompositionClaim<T> {
        DecompositionClaim {
            original: self.base.clone(),
            direction: self.direction.coords().to_vec(),
            weights: self.atoms.iter().map(|a| a.weight).collect(),
            ts: self.atoms.iter().map(|a| a.t.coords().to_vec()).collect(),
            points: self.atoms.iter().map(|a| a.point.clone()).collect(),
        }
    }
}

fn check_displacement_bound<T: Real>(
    t: &TVector<T>,
    space: &FiniteMetricSpace<T>,
    tol: &ToleranceConfig<T>,
) -> Result<()> {
    for i in 1..=space.n() {
        let bound = (T::one() + T::one()) * space.dist(i, 0);
        if t.get(i).abs() > bound + tol.feas_band(bound) {
            return Err(Error::DisplacementBound {
                node: i,
                value: t.get(i).abs().to_f64().unwrap_or(f64::NAN),
                bound: bound.to_f64().unwrap_or(f64::NAN),
            });
        }
    }
    Ok(())
}

fn merge_or_append<T: Real>(done: &mut Vec<Atom<T>>, atom: Atom<T>) {
    let band = real::<T>(MERGE_TOL);
    for existing in done.iter_mut() {
        let close = existing
            .t
            .coords()
            .iter()
            .zip(atom.t.coords())
            .all(|(&a, &b)| (a - b).abs() <= band);
        if close {
            existing.weight = existing.weight + atom.weight;
            return;
        }
    }
    done.push(atom);
}

fn reduce_in_place<T: Real>(done: &mut Vec<Atom<T>>, tol: &ToleranceConfig<T>) -> Result<()> {
    let ts: Vec<TVector<T>> = done.iter().map(|a| a.t.clone()).collect();
    let weights: Vec<T> = done.iter().map(|a| a.weight).collect();
    let kept = caratheodory_reduce(&ts, &weights, tol)?;
    let mut next = Vec::with_capacity(kept.len());
    for (index, weight) in kept {
        let mut atom = done[index].clone();
        atom.weight = weight;
        next.push(atom);
    }
    *done = next;
    Ok(())
}

/// Writes a ball point as a convex combination of at most `n + 1` extreme
/// points, every atom reached from the input by a displacement along `v`.
///
/// Descends a binary tree: a non-extreme point splits at the endpoints of
/// its cut's feasible interval, with weights proportional to the opposite
/// gaps, and the positive branch is explored first. Every split turns at
/// least one more pair tight, bounding the depth by `n`. Coinciding leaf
/// displacements merge; whenever more than `n + 1` atoms accumulate, an
/// affine dependence prunes them back.
pub fn decompose<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    v: &Direction<T>,
    tol: &ToleranceConfig<T>,
) -> Result<Decomposition<T>> {
    require_member(y, space, norm, tol)?;
    let n = space.n();
    let mut stack: Vec<(TVector<T>, T, usize)> = vec![(TVector::zero(n), T::one(), 0)];
    let mut done: Vec<Atom<T>> = Vec::new();
    while let Some((t, weight, depth)) = stack.pop() {
        if depth > n {
            return Err(Error::IterationOverflow { limit: n });
        }
        check_displacement_bound(&t, space, tol)?;
        let z = t.apply(y, v)?;
        match certify_extremality(&z, space, norm, tol)? {
            ExtremalityCertificate::Extreme { .. } => {
                merge_or_append(
                    &mut done,
                    Atom {
                        weight,
                        t,
                        point: z,
                    },
                );
                if done.len() > n + 1 {
                    reduce_in_place(&mut done, tol)?;
                }
            }
            ExtremalityCertificate::NotExtreme { cut } => {
                let iv = feasible_interval(&z, space, norm, v, cut.nodes(), tol)?;
                let (lo, hi) = (iv.t_min, iv.t_max);
                let span = hi - lo;
                if !(lo < T::zero() && hi > T::zero() && span.is_finite()) {
                    return Err(Error::InvalidCut {
                        slack: span.to_f64().unwrap_or(f64::NAN),
                    });
                }
                let mut t_lo = t.clone();
                t_lo.shift(cut.nodes(), lo);
                let mut t_hi = t;
                t_hi.shift(cut.nodes(), hi);
                stack.push((t_lo, weight * (hi / span), depth + 1));
                stack.push((t_hi, weight * (-lo / span), depth + 1));
            }
        }
    }
    Ok(Decomposition {
        base: y.clone(),
        direction: v.clone(),
        atoms: done,
    })
}

/// A nonzero vector `mu` with `sum mu_i = 0` and `sum mu_i t_i = 0`,
/// normalized to unit max entry, or `None` if the columns are
/// numerically independent. Gaussian elimination with partial pivoting;
/// a column whose remaining entries all fall below the relative pivot
/// floor is dependent on its predecessors and seeds the solution.
#[allow(clippy::needless_range_loop, clippy::explicit_counter_loop)]
fn affine_dependence<T: Real>(ts: &[&TVector<T>]) -> Option<Vec<T>> {
    let k = ts.len();
    let n = ts[0].n();
    let rows = n + 1;
    let mut m: Vec<Vec<T>> = Vec::with_capacity(rows);
    m.push(vec![T::one(); k]);
    for r in 1..=n {
        m.push(ts.iter().map(|t| t.get(r)).collect());
    }
    let mut scale = T::one();
    for row in &m {
        for &x in row {
            scale = scale.max(x.abs());
        }
    }
    let floor = real::<T>(PIVOT_TOL) * scale;

    let mut pivots: Vec<(usize, usize)> = Vec::new();
    let mut free = None;
    let mut row = 0;
    for col in 0..k {
        if row >= rows {
            free = Some(col);
            break;
        }
        let best = (row..rows).max_by(|&a, &b| {
            m[a][col]
                .abs()
                .partial_cmp(&m[b][col].abs())
                .unwrap_or(std::cmp::Ordering::Equal)
        })?;
        if m[best][col].abs() <= floor {
            free = Some(col);
            break;
        }
        m.swap(row, best);
        for r in row + 1..rows {
            let factor = m[r][col] / m[row][col];
            if factor != T::zero() {
                for c in col..k {
                    m[r][c] = m[r][c] - factor * m[row][c];
                }
            }
        }
        pivots.push((row, col));
        row += 1;
    }
    let free = free?;

    let mut mu = vec![T::zero(); k];
    mu[free] = T::one();
    for &(r, c) in pivots.iter().rev() {
        let mut acc = T::zero();
        for col in c + 1..=free {
            acc = acc + m[r][col] * mu[col];
        }
        mu[c] = -acc / m[r][c];
    }
    let top = mu.iter().fold(T::zero(), |a, &x| a.max(x.abs()));
    if top <= T::zero() {
        return None;
    }
    Some(mu.iter().map(|&x| x / top).collect())
}

/// Prunes a convex combination of displacement vectors down to at most
/// `n + 1` atoms while preserving its total weight and weighted sum.
/// Returns the surviving `(index, weight)` pairs, indices ascending into
/// the input. Weights at or below the pruning threshold are dropped.
///
/// At least `n + 2` vectors are required; they live in an `n`-dimensional
/// coordinate space, so an affine dependence among that many always
/// exists. Fewer atoms have nothing to prune and are rejected.
pub fn caratheodory_reduce<T: Real>(
    ts: &[TVector<T>],
    weights: &[T],
    tol: &ToleranceConfig<T>,
) -> Result<Vec<(usize, T)>> {
    if ts.is_empty() {
        return Err(Error::TooFewAtoms {
            count: 0,
            needed: 1,
        });
    }
    if weights.len() != ts.len() {
        return Err(Error::DimensionMismatch {
            expected: ts.len(),
            found: weights.len(),
        });
    }
    let n = ts[0].n();
    for t in ts {
        if t.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: t.n() + 1,
            });
        }
    }
    for (index, &w) in weights.iter().enumerate() {
        if w < T::zero() {
            return Err(Error::NegativeWeight { index });
        }
    }
    if ts.len() < n + 2 {
        return Err(Error::TooFewAtoms {
            count: ts.len(),
            needed: n + 2,
        });
    }

    let mut active: Vec<usize> = (0..ts.len())
        .filter(|&i| weights[i] > tol.tol_weight)
        .collect();
    let mut w: Vec<T> = weights.to_vec();
    while active.len() > n + 1 {
        let cols: Vec<&TVector<T>> = active.iter().map(|&i| &ts[i]).collect();
        let mu = affine_dependence(&cols).ok_or(Error::ReductionFailure)?;
        let mut alpha = T::infinity();
        let mut drop_pos = None;
        for (pos, &m) in mu.iter().enumerate() {
            if m > T::zero() {
                let ratio = w[active[pos]] / m;
                if ratio < alpha {
                    alpha = ratio;
                    drop_pos = Some(pos);
                }
            }
        }
        let drop_pos = drop_pos.ok_or(Error::ReductionFailure)?;
        for (pos, &m) in mu.iter().enumerate() {
            w[active[pos]] = w[active[pos]] - alpha * m;
        }
        w[active[drop_pos]] = T::zero();
        active.retain(|&i| w[i] > tol.tol_weight);
    }
    Ok(active.into_iter().map(|i| (i, w[i])).collect())
}

/// Plain-data form of a decomposition, as exchanged across serialization
/// boundaries: the certificates are re-derived rather than trusted.
#[derive(Debug, Clone, PartialEq)]
pub struct DecompositionClaim<T> {
    pub original: LipschitzPoint<T>,
    pub direction: Vec<T>,
    pub weights: Vec<T>,
    pub ts: Vec<Vec<T>>,
    pub points: Vec<LipschitzPoint<T>>,
}

/// One named verification outcome.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyEntry {
    pub name: &'static str,
    pub ok: bool,
    pub detail: String,
}

/// Results of every decomposition check; `ok` is their conjunction.
#[derive(Debug, Clone, PartialEq)]
pub struct VerifyReport {
    pub entries: Vec<VerifyEntry>,
}

impl VerifyReport {
    pub fn ok(&self) -> bool {
        self.entries.iter().all(|e| e.ok)
    }
}

/// Re-checks a claimed decomposition from scratch: direction unit norm,
/// weights positive summing to 1, at most `n + 1` atoms, every atom a
/// member and extreme (confirmed against the exhaustive cut oracle when
/// `n <= 10`), atom points consistent with their displacements,
/// displacements bounded by twice the basepoint distance, and the
/// weighted average matching the original point.
///
/// Structural mismatches (lengths, dimensions) are errors; every judgment
/// about values lands in the report.
pub fn verify_decomposition<T: Real>(
    claim: &DecompositionClaim<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    tol: &ToleranceConfig<T>,
) -> Result<VerifyReport> {
    claim.original.check_shape(space, norm)?;
    let k = claim.weights.len();
    if k == 0 {
        return Err(Error::TooFewAtoms {
            count: 0,
            needed: 1,
        });
    }
    if claim.ts.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: claim.ts.len(),
        });
    }
    if claim.points.len() != k {
        return Err(Error::DimensionMismatch {
            expected: k,
            found: claim.points.len(),
        });
    }
    if claim.direction.len() != norm.dim() {
        return Err(Error::DimensionMismatch {
            expected: norm.dim(),
            found: claim.direction.len(),
        });
    }
    let n = space.n();
    let mut ts = Vec::with_capacity(k);
    for t in &claim.ts {
        let t = TVector::new(t.clone())?;
        if t.n() != n {
            return Err(Error::DimensionMismatch {
                expected: n + 1,
                found: t.n() + 1,
            });
        }
        ts.push(t);
    }
    for p in &claim.points {
        p.check_shape(space, norm)?;
    }

    let mut entries = Vec::new();
    let mut push = |name: &'static str, ok: bool, detail: String| {
        entries.push(VerifyEntry { name, ok, detail });
    };

    let dir_norm = norm.eval(&claim.direction);
    let unit_ok =
        dir_norm.is_finite() && (dir_norm - T::one()).abs() <= scaled_const::<T>(UNIT_TOL);
    push("direction-unit", unit_ok, format!("|v| = {dir_norm}"));
    let direction = Direction::unchecked(claim.direction.clone());

    let positive = claim.weights.iter().all(|&w| w > T::zero());
    let sum: T = claim.weights.iter().copied().sum();
    let sum_ok = (sum - T::one()).abs() <= real::<T>(WEIGHT_SUM_TOL);
    push(
        "weights",
        positive && sum_ok,
        format!("all positive: {positive}, sum = {sum}"),
    );

    push(
        "atom-count",
        k <= n + 1,
        format!("k = {k}, limit = {}", n + 1),
    );

    let mut members = true;
    let mut extreme = true;
    for point in &claim.points {
        match certify_extremality(point, space, norm, tol) {
            Ok(cert) => extreme &= cert.is_extreme(),
            Err(_) => {
                members = false;
                extreme = false;
            }
        }
    }
    push("members", members, String::new());
    push("extreme", extreme, String::new());

    if n <= VERIFY_ORACLE_MAX_N {
        let mut agree = true;
        for point in &claim.points {
            agree &= matches!(cut_oracle_bruteforce(point, space, norm, tol), Ok(None));
        }
        push("oracle", agree, String::new());
    } else {
        push(
            "oracle",
            true,
            format!("skipped, n = {n} exceeds {VERIFY_ORACLE_MAX_N}"),
        );
    }

    let recon_tol = real::<T>(RECON_TOL);
    let mut consistent = true;
    for (t, point) in ts.iter().zip(&claim.points) {
        let expected = t.apply(&claim.original, &direction)?;
        let gap = max_coordinate_gap(&expected, point);
        consistent &= gap <= recon_tol;
    }
    push("consistency", consistent, String::new());

    let bound_ok = ts
        .iter()
        .all(|t| check_displacement_bound(t, space, tol).is_ok());
    push("displacement", bound_ok, String::new());

    let mut rows = vec![vec![T::zero(); claim.original.dim()]; claim.original.n_nodes()];
    for (&w, point) in claim.weights.iter().zip(&claim.points) {
        for (acc, row) in rows.iter_mut().zip(point.values()) {
            for (a, &c) in acc.iter_mut().zip(row) {
                *a = *a + w * c;
            }
        }
    }
    let avg = LipschitzPoint::new(rows)?;
    let recon_gap = max_coordinate_gap(&claim.original, &avg);
    push(
        "reconstruction",
        recon_gap <= recon_tol,
        format!("max gap = {recon_gap}"),
    );

    Ok(VerifyReport { entries })
}

fn max_coordinate_gap<T: Real>(a: &LipschitzPoint<T>, b: &LipschitzPoint<T>) -> T {
    let mut worst = T::zero();
    for (ra, rb) in a.values().iter().zip(b.values()) {
        for (&x, &y) in ra.iter().zip(rb) {
            worst = worst.max((x - y).abs());
        }
    }
    worst
}
