//! Extreme points of vector-valued Lipschitz unit balls over finite metric
//! spaces.
//!
//! Fix a finite metric space with a distinguished basepoint and a smooth
//! l^p target norm. The unit ball consists of all tuples
//! `y = (0, y_1, ..., y_n)` with `|y_i - y_j| <= d(x_i, x_j)`. This crate
//!
//! * validates metric spaces and norms ([`metric`], [`norm`]),
//! * tests ball membership and computes Lipschitz constants ([`ball`]),
//! * certifies whether a ball point is extreme, producing either a tight
//!   spanning structure or a strict convex split ([`extremality`]),
//! * decomposes any ball point into a convex combination of at most
//!   `n + 1` extreme points along a chosen direction ([`representer`]),
//! * generates reproducible random instances for testing ([`gen`]).
//!
//! All numeric code is generic over [`Real`], implemented for `f32` and
//! `f64`. The aliases below fix `f64`, the precision every tolerance
//! default is calibrated for.
//!
//! ```
//! use lipext::{
//!     certify_extremality, decompose, Direction64, Norm64, Point64,
//!     Space64, Tolerance64,
//! };
//!
//! # fn main() -> lipext::Result<()> {
//! let space = Space64::new(vec![
//!     vec![0.0, 1.0, 1.0],
//!     vec![1.0, 0.0, 1.0],
//!     vec![1.0, 1.0, 0.0],
//! ])?;
//! let norm = Norm64::euclidean(2)?;
//! let tol = Tolerance64::default();
//!
//! let y = Point64::new(vec![
//!     vec![0.0, 0.0],
//!     vec![0.4, 0.0],
//!     vec![0.0, 0.3],
//! ])?;
//!
//! let cert = certify_extremality(&y, &space, &norm, &tol)?;
//! assert!(!cert.is_extreme());
//!
//! let v = Direction64::basis(0, 2)?;
//! let dec = decompose(&y, &space, &norm, &v, &tol)?;
//! assert!(dec.k() <= space.n() + 1);
//! for atom in dec.atoms() {
//!     let c = certify_extremality(&atom.point, &space, &norm, &tol)?;
//!     assert!(c.is_extreme());
//! }
//! # Ok(())
//! # }
//! ```

pub mod ball;
pub mod error;
pub mod extremality;
pub mod gen;
pub mod metric;
pub mod norm;
pub mod representer;
mod scalar;

pub use ball::{
    is_member, lipschitz_constant, lipschitz_constant_with_pair, rescale_into_ball, LipschitzPoint,
    ToleranceConfig,
};
pub use error::{Error, Result};
pub use extremality::{
    build_tight_graph, certify_extremality, cut_oracle_bruteforce, min_cut_slack, split_nonextreme,
    ExtremalityCertificate, SlackCut, TightGraph,
};
pub use gen::{gen_euclidean_space, gen_extreme, gen_member, gen_random_metric, GenConfig};
pub use metric::{metric_closure, FiniteMetricSpace};
pub use norm::{norm_eval, Direction, NormSpec};
pub use representer::{
    caratheodory_reduce, decompose, feasible_interval, pair_interval_bisect,
    pair_interval_closed_form, push_to_extreme, push_to_extreme_traced, verify_decomposition, Atom,
    Decomposition, DecompositionClaim, FeasibleInterval, PushTrace, TVector, VerifyEntry,
    VerifyReport,
};
pub use scalar::Real;

/// `f64` metric space.
pub type Space64 = FiniteMetricSpace<f64>;
/// `f64` norm specification.
pub type Norm64 = NormSpec<f64>;
/// `f64` ball point.
pub type Point64 = LipschitzPoint<f64>;
/// `f64` tolerance bundle.
pub type Tolerance64 = ToleranceConfig<f64>;
/// `f64` extremality certificate.
pub type Certificate64 = ExtremalityCertificate<f64>;
/// `f64` decomposition.
pub type Decomposition64 = Decomposition<f64>;
/// `f64` direction.
pub type Direction64 = Direction<f64>;
