//! Exact symbolic engine for motivic masses, weight functions and stringy
//! motifs, with every result a closed-form rational function in the
//! Lefschetz symbol `L`.
//!
//! The polynomial layer is generic over its coefficient type; the concrete
//! choices used throughout the engine are the aliases below.

pub mod error;
pub mod fixtures;
pub mod mass;
pub mod poly;
pub mod ramification;
pub mod ring;
pub mod series;
mod serde_util;
pub mod stringy;
pub mod text;
pub mod weights;

use num_bigint::BigInt;
use num_rational::{BigRational, Ratio};

pub use error::{Error, Result};
pub use ring::{ArithOp, MotivicValue};
pub use series::{Affine, ExpPoly, ExpTerm};

/// Exponents of `L`, weights and valuations.
pub type Exponent = Ratio<i64>;
/// Arbitrary-precision rationals, used for specialization.
pub type Rational = BigRational;
/// Integer-coefficient polynomials in `X = L^(1/r)`.
pub type IntPoly = poly::Poly<BigInt>;
/// Rational-coefficient polynomials.
pub type RatPoly = poly::Poly<BigRational>;
/// Machine-integer polynomials, for small oracles.
pub type SmallPoly = poly::Poly<i64>;
