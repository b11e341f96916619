//! Exact genus bounds for projective curves that avoid quadric and cubic
//! hypersurfaces.
//!
//! The crate is split along the lines of the computation:
//!
//! * [`arith`]: binomials, Euclidean decompositions of the degree and exact
//!   ceilings of rational powers, generic over the integer type.
//! * [`classical`]: Castelnuovo's bound, the Castelnuovo–Halphen interval,
//!   degree thresholds and the cohomological dimension counts.
//! * [`hypersurface_bounds`]: the bounds for curves in P⁴, P⁵ and P^r not
//!   lying on quadrics (or cubics), the quintic-section profiles and the
//!   genus identity of the cone construction.
//! * [`hilbert`]: least-fixpoint closure of Hilbert-function constraints for
//!   points in projective space and the replay of the case analysis in low
//!   degree.
//! * [`linalg`] and [`surface`]: exact rank computations on parametrized
//!   Veronese surfaces, rational normal scrolls and their projections.
//! * [`report`] and [`verify`]: the reproduction report behind
//!   `curvegenus verify paper`.
//!
//! All arithmetic is exact. [`Int`] and [`Rat`] are the concrete scalar types
//! used by the bound formulas; the generic kernels accept any
//! [`num_integer::Integer`] type.

pub mod arith;
pub mod classical;
pub mod error;
pub mod hilbert;
pub mod hypersurface_bounds;
pub mod linalg;
pub mod report;
pub mod surface;
pub mod verify;

pub use error::{Error, Result};

/// Arbitrary-precision signed integer.
pub type Int = num_bigint::BigInt;

/// Normalized arbitrary-precision rational (denominator positive, coprime).
pub type Rat = num_rational::BigRational;

/// Decomposition of a degree over arbitrary-precision integers.
pub type Decomposition = arith::Decomposition<Int>;

/// Shorthand for building an [`Int`] from anything convertible.
pub fn int(v: impl Into<Int>) -> Int {
    v.into()
}

/// Shorthand for the rational `num / den`.
///
/// # Panics
///
/// Panics when `den` is zero.
pub fn rat(num: impl Into<Int>, den: impl Into<Int>) -> Rat {
    Rat::new(num.into(), den.into())
}
