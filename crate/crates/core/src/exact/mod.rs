//! Exact arithmetic kernel: rationals, dense polynomials, truncated power
//! series and rational functions viewed as power series.
//!
//! Two series carriers implement [`SeriesRing`]:
//! - [`TruncatedSeries`] knows finitely many coefficients and tracks its
//!   precision through every operation;
//! - [`RatFunc`] is an exact quotient of polynomials and never runs out of
//!   coefficients.

mod intpoly;
mod poly;
mod ratfunc;
mod ring;
mod series;

pub use poly::DensePoly;
pub use ratfunc::RatFunc;
pub use ring::SeriesRing;
pub use series::TruncatedSeries;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

/// Arbitrary-precision integer.
pub type ExactInt = BigInt;
/// Arbitrary-precision rational, always kept in lowest terms with a positive
/// denominator (guaranteed by `num_rational`).
pub type ExactRat = BigRational;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SeriesError {
    #[error("series has zero constant term and cannot be inverted")]
    ZeroConstantTerm,
    #[error("division by x^{shift} of a series with valuation {valuation}")]
    NegativeValuation { shift: usize, valuation: usize },
    #[error("insufficient precision: need {needed} coefficients, have {available}")]
    InsufficientPrecision { needed: usize, available: usize },
    #[error("coefficient {index} read beyond precision {precision}")]
    BeyondPrecision { index: usize, precision: usize },
    #[error("series is zero to known precision {precision}")]
    ZeroToPrecision { precision: usize },
    #[error("series is identically zero")]
    ZeroSeries,
}

pub fn rat(n: i64) -> ExactRat {
    ExactRat::from_integer(BigInt::from(n))
}

pub fn ratio(n: i64, d: i64) -> ExactRat {
    ExactRat::new(BigInt::from(n), BigInt::from(d))
}

pub fn int_to_rat(n: &ExactInt) -> ExactRat {
    ExactRat::from_integer(n.clone())
}

/// Canonical form check: positive denominator and coprime parts.
pub fn is_canonical(q: &ExactRat) -> bool {
    use num_integer::Integer;
    let d = q.denom();
    if d <= &BigInt::zero() {
        return false;
    }
    if q.numer().is_zero() {
        return d.is_one();
    }
    q.numer().gcd(d).is_one()
}

/// Renders a rational as `n` or `n/d`.
pub fn format_rat(q: &ExactRat) -> String {
    if q.is_integer() {
        q.numer().to_string()
    } else {
        format!("{}/{}", q.numer(), q.denom())
    }
}

/// Parses the output of [`format_rat`].
pub fn parse_rat(s: &str) -> Option<ExactRat> {
    let s = s.trim();
    match s.split_once('/') {
        Some((n, d)) => {
            let n: BigInt = n.trim().parse().ok()?;
            let d: BigInt = d.trim().parse().ok()?;
            if d.is_zero() {
                return None;
            }
            Some(ExactRat::new(n, d))
        }
        None => s.parse::<BigInt>().ok().map(ExactRat::from_integer),
    }
}
