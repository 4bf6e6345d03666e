//! Exact arithmetic substrate: rationals, polynomials, Laurent polynomials,
//! rational functions, truncated power series, and polynomial determinants.
//!
//! Everything is immutable after construction and all operations are pure,
//! so values can be shared or sent across threads freely.

mod det;
mod laurent;
mod poly;
mod power_series;
mod ratfun;

pub use det::{int_det, poly_det};
pub use laurent::LaurentPoly;
pub use poly::Poly;
pub use power_series::PowerSeries;
pub use ratfun::{q_power, ratfun_equal, RationalFunction};

pub use num_rational::BigRational;

use num_bigint::BigInt;

/// Shorthand for an integer rational.
pub fn rat(n: i64) -> BigRational {
    BigRational::from_integer(BigInt::from(n))
}

/// Shorthand for `n/d`.
pub fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}
