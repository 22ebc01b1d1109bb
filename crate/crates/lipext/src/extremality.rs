//! Extremality certificates.
//!
//! A ball point is extreme exactly when every node connects to the
//! basepoint through a chain of tight pairs. The certifier either exhibits
//! such a spanning tree or returns a cut: a set of nodes with slack on
//! every pair crossing its boundary, which can be shifted jointly in two
//! opposite directions to write the point as a proper midpoint.

use std::collections::VecDeque;

use crate::ball::{require_member, LipschitzPoint, ToleranceConfig};
use crate::error::{Error, Result};
use crate::metric::FiniteMetricSpace;
use crate::norm::{Direction, NormSpec};
use crate::scalar::Real;

/// Pairs whose distance constraint holds with equality, as an undirected
/// graph on the nodes `0..=n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TightGraph {
    n_nodes: usize,
    edges: Vec<(usize, usize)>,
    adj: Vec<Vec<usize>>,
}

impl TightGraph {
    fn new(n_nodes: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut adj = vec![Vec::new(); n_nodes];
        for &(i, j) in &edges {
            adj[i].push(j);
            adj[j].push(i);
        }
        Self {
            n_nodes,
            edges,
            adj,
        }
    }

    pub fn n_nodes(&self) -> usize {
        self.n_nodes
    }

    /// Tight pairs `(i, j)` with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    /// Neighbors of `i` in ascending order.
    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.adj[i]
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        let key = (i.min(j), i.max(j));
        self.edges.binary_search(&key).is_ok()
    }

    /// Breadth-first search from node 0 visiting neighbors in ascending
    /// order. Returns per-node parents (`None` for node 0 and for
    /// unreachable nodes) plus the sorted list of unreachable nodes.
    fn bfs_from_base(&self) -> (Vec<Option<usize>>, Vec<usize>) {
        let mut parent = vec![None; self.n_nodes];
        let mut seen = vec![false; self.n_nodes];
        let mut queue = VecDeque::new();
        seen[0] = true;
        queue.push_back(0);
        while let Some(i) = queue.pop_front() {
            for &j in &self.adj[i] {
                if !seen[j] {
                    seen[j] = true;
                    parent[j] = Some(i);
                    queue.push_back(j);
                }
            }
        }
        let unreachable = (0..self.n_nodes).filter(|&i| !seen[i]).collect();
        (parent, unreachable)
    }

    /// Nodes with no tight chain to the basepoint, ascending.
    pub fn unreachable_from_base(&self) -> Vec<usize> {
        self.bfs_from_base().1
    }
}

/// A nonempty set of non-basepoint nodes, each pair across its boundary
/// slack, together with a shift magnitude `epsilon` the set tolerates in
/// both directions.
#[derive(Debug, Clone, PartialEq)]
pub struct SlackCut<T> {
    nodes: Vec<usize>,
    epsilon: T,
}

impl<T: Real> SlackCut<T> {
    /// Structural checks only: nonempty, basepoint excluded, all indices
    /// within `1..=n`, duplicates collapsed. Whether the cut is actually
    /// slack for a given point, and whether `epsilon` fits, is judged by
    /// [`split_nonextreme`].
    pub fn new(nodes: Vec<usize>, epsilon: T, n: usize) -> Result<Self> {
        let mut nodes = nodes;
        nodes.sort_unstable();
        nodes.dedup();
        if nodes.is_empty() {
            return Err(Error::EmptyCut);
        }
        if nodes[0] == 0 {
            return Err(Error::BasepointInCut);
        }
        let last = *nodes.last().unwrap();
        if last > n {
            return Err(Error::IndexOutOfRange { index: last, n });
        }
        Ok(Self { nodes, epsilon })
    }

    /// Member nodes, ascending.
    pub fn nodes(&self) -> &[usize] {
        &self.nodes
    }

    pub fn epsilon(&self) -> T {
        self.epsilon
    }

    pub fn contains(&self, i: usize) -> bool {
        self.nodes.binary_search(&i).is_ok()
    }
}

/// Outcome of [`certify_extremality`].
#[derive(Debug, Clone, PartialEq)]
pub enum ExtremalityCertificate<T> {
    /// Every node reaches the basepoint through tight pairs. `parent[i - 1]`
    /// is the predecessor of node `i` in a breadth-first tree rooted at
    /// node 0 that visits neighbors in ascending order.
    Extreme { parent: Vec<usize> },
    /// The cut nodes shift jointly by up to `epsilon` either way while
    /// staying in the ball, so the point is a proper midpoint.
    NotExtreme { cut: SlackCut<T> },
}

impl<T> ExtremalityCertificate<T> {
    pub fn is_extreme(&self) -> bool {
        matches!(self, Self::Extreme { .. })
    }
}

/// Collects the tight pairs of `y`. Membership is not required; any point
/// with matching shape has a tight graph.
pub fn build_tight_graph<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    tol: &ToleranceConfig<T>,
) -> Result<TightGraph> {
    y.check_shape(space, norm)?;
    let mut edges = Vec::new();
    for (i, j) in space.pairs() {
        if tol.is_tight(y.pair_norm(i, j, norm), space.dist(i, j)) {
            edges.push((i, j));
        }
    }
    Ok(TightGraph::new(space.n_nodes(), edges))
}

pub(crate) fn node_mask(nodes: &[usize], n: usize) -> Result<Vec<bool>> {
    if nodes.is_empty() {
        return Err(Error::EmptyCut);
    }
    let mut mask = vec![false; n + 1];
    for &i in nodes {
        if i == 0 {
            return Err(Error::BasepointInCut);
        }
        if i > n {
            return Err(Error::IndexOutOfRange { index: i, n });
        }
        mask[i] = true;
    }
    Ok(mask)
}

/// Minimum of `d(x_i, x_j) - |y_i - y_j|` over pairs crossing the cut
/// boundary. Positive exactly when every crossing pair is strictly slack.
pub fn min_cut_slack<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    nodes: &[usize],
) -> Result<T> {
    y.check_shape(space, norm)?;
    let mask = node_mask(nodes, space.n())?;
    let mut slack = T::infinity();
    for (i, j) in space.pairs() {
        if mask[i] != mask[j] {
            let s = space.dist(i, j) - y.pair_norm(i, j, norm);
            if s < slack {
                slack = s;
            }
        }
    }
    Ok(slack)
}

/// Decides extremality of a ball point.
///
/// Builds the tight graph and searches it from the basepoint. Full reach
/// yields [`ExtremalityCertificate::Extreme`] with the tree. Otherwise the
/// unreachable nodes form the largest slack cut, returned with the exact
/// shift budget `epsilon`, the minimum crossing slack.
pub fn certify_extremality<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    tol: &ToleranceConfig<T>,
) -> Result<ExtremalityCertificate<T>> {
    require_member(y, space, norm, tol)?;
    let graph = build_tight_graph(y, space, norm, tol)?;
    let (parent, unreachable) = graph.bfs_from_base();
    if unreachable.is_empty() {
        let parent = (1..space.n_nodes())
            .map(|i| parent[i].expect("reachable node has a parent"))
            .collect();
        return Ok(ExtremalityCertificate::Extreme { parent });
    }
    let epsilon = min_cut_slack(y, space, norm, &unreachable)?;
    let cut = SlackCut::new(unreachable, epsilon, space.n())?;
    Ok(ExtremalityCertificate::NotExtreme { cut })
}

/// Realizes a cut certificate as a proper midpoint: returns `(y_plus,
/// y_minus)` where the cut nodes of `y` move by `±epsilon` along the unit
/// vector `v`. Both outputs lie in the ball and average back to `y`.
///
/// Fails with [`Error::InvalidCut`] if the minimum crossing slack is
/// within the tightness tolerance, or if `epsilon` is nonpositive or
/// exceeds that slack.
pub fn split_nonextreme<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    cut: &SlackCut<T>,
    v: &Direction<T>,
    tol: &ToleranceConfig<T>,
) -> Result<(LipschitzPoint<T>, LipschitzPoint<T>)> {
    require_member(y, space, norm, tol)?;
    if v.dim() != y.dim() {
        return Err(Error::DimensionMismatch {
            expected: y.dim(),
            found: v.dim(),
        });
    }
    let slack = min_cut_slack(y, space, norm, cut.nodes())?;
    let eps = cut.epsilon();
    if slack <= tol.tol_tight || eps <= T::zero() || eps > slack {
        return Err(Error::InvalidCut {
            slack: slack.to_f64().unwrap_or(f64::NAN),
        });
    }
    let mut plus = y.values().to_vec();
    let mut minus = y.values().to_vec();
    for &i in cut.nodes() {
        for ((p, m), &u) in plus[i].iter_mut().zip(&mut minus[i]).zip(v.coords()) {
            *p = *p + eps * u;
            *m = *m - eps * u;
        }
    }
    Ok((LipschitzPoint::new(plus)?, LipschitzPoint::new(minus)?))
}

/// Exhaustive search for a slack cut over all `2^n - 1` candidate node
/// sets, in ascending bitmask order (node 1 alone first). Uses the same
/// tightness test as [`certify_extremality`], so on any ball point the two
/// agree on whether a cut exists. Guarded to `n <= 20`.
pub fn cut_oracle_bruteforce<T: Real>(
    y: &LipschitzPoint<T>,
    space: &FiniteMetricSpace<T>,
    norm: &NormSpec<T>,
    tol: &ToleranceConfig<T>,
) -> Result<Option<SlackCut<T>>> {
    const MAX_N: usize = 20;
    let n = space.n();
    if n > MAX_N {
        return Err(Error::TooLarge { n, max: MAX_N });
    }
    require_member(y, space, norm, tol)?;

    // tight_bits[i] has bit j set when the pair (i, j) is tight
    let mut tight_bits = vec![0u64; n + 1];
    for (i, j) in space.pairs() {
        if tol.is_tight(y.pair_norm(i, j, norm), space.dist(i, j)) {
            tight_bits[i] |= 1 << j;
            tight_bits[j] |= 1 << i;
        }
    }

    let all: u64 = (1 << (n + 1)) - 1;
    for set in 1u64..(1 << n) {
        // candidate node set over 1..=n; the basepoint stays outside
        let inside = set << 1;
        let outside = all & !inside;
        let mut slack_cut = true;
        let mut bits = inside;
        while bits != 0 {
            let i = bits.trailing_zeros() as usize;
            bits &= bits - 1;
            if tight_bits[i] & outside != 0 {
                slack_cut = false;
                break;
            }
        }
        if !slack_cut {
            continue;
        }
        let nodes: Vec<usize> = (1..=n).filter(|&i| inside >> i & 1 == 1).collect();
        let epsilon = min_cut_slack(y, space, norm, &nodes)?;
        return Ok(Some(SlackCut::new(nodes, epsilon, n)?));
    }
    Ok(None)
}
