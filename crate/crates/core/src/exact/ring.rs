use std::fmt::Debug;

use super::{DensePoly, ExactRat, RatFunc, SeriesError, TruncatedSeries};

/// The operations the continued-fraction transformation needs from a power
/// series carrier.
///
/// Implementations differ only in how much of the series they know:
/// `TruncatedSeries` loses precision as it goes, `RatFunc` is exact.
pub trait SeriesRing: Clone + Debug + PartialEq + Send + Sync + 'static {
    /// `None` for exact carriers.
    fn precision(&self) -> Option<usize>;
    fn constant_term(&self) -> Result<ExactRat, SeriesError>;
    fn valuation(&self) -> Result<usize, SeriesError>;
    fn add(&self, other: &Self) -> Self;
    fn sub(&self, other: &Self) -> Self;
    fn mul(&self, other: &Self) -> Self;
    fn neg(&self) -> Self;
    fn scale(&self, c: &ExactRat) -> Self;
    /// Multiplication by `x^m`.
    fn shift_up(&self, m: usize) -> Self;
    /// Division by `x^m`; fails unless the valuation is at least `m`.
    fn shift_down(&self, m: usize) -> Result<Self, SeriesError>;
    /// `self / other` with `other(0) != 0`.
    fn div(&self, other: &Self) -> Result<Self, SeriesError>;
    fn split(&self, d: usize) -> Result<(DensePoly, Self), SeriesError>;
    /// A polynomial in the same carrier, with the precision of `self`.
    fn lift_poly(&self, p: &DensePoly) -> Self;
    fn expand(&self, n: usize) -> Result<TruncatedSeries, SeriesError>;
}

impl SeriesRing for TruncatedSeries {
    fn precision(&self) -> Option<usize> {
        Some(TruncatedSeries::precision(self))
    }

    fn constant_term(&self) -> Result<ExactRat, SeriesError> {
        self.coeff(0).cloned()
    }

    fn valuation(&self) -> Result<usize, SeriesError> {
        TruncatedSeries::valuation(self)
    }

    fn add(&self, other: &Self) -> Self {
        self + other
    }

    fn sub(&self, other: &Self) -> Self {
        self - other
    }

    fn mul(&self, other: &Self) -> Self {
        self * other
    }

    fn neg(&self) -> Self {
        -self
    }

    fn scale(&self, c: &ExactRat) -> Self {
        TruncatedSeries::scale(self, c)
    }

    fn shift_up(&self, m: usize) -> Self {
        self.shift(m as isize).expect("right shift never fails")
    }

    fn shift_down(&self, m: usize) -> Result<Self, SeriesError> {
        self.shift(-(m as isize))
    }

    fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        TruncatedSeries::div(self, other)
    }

    fn split(&self, d: usize) -> Result<(DensePoly, Self), SeriesError> {
        TruncatedSeries::split(self, d)
    }

    fn lift_poly(&self, p: &DensePoly) -> Self {
        TruncatedSeries::from_poly(p, TruncatedSeries::precision(self))
    }

    fn expand(&self, n: usize) -> Result<TruncatedSeries, SeriesError> {
        self.truncate(n)
    }
}

impl SeriesRing for RatFunc {
    fn precision(&self) -> Option<usize> {
        None
    }

    fn constant_term(&self) -> Result<ExactRat, SeriesError> {
        Ok(RatFunc::constant_term(self))
    }

    fn valuation(&self) -> Result<usize, SeriesError> {
        RatFunc::valuation(self)
    }

    fn add(&self, other: &Self) -> Self {
        RatFunc::add(self, other)
    }

    fn sub(&self, other: &Self) -> Self {
        RatFunc::sub(self, other)
    }

    fn mul(&self, other: &Self) -> Self {
        RatFunc::mul(self, other)
    }

    fn neg(&self) -> Self {
        RatFunc::neg(self)
    }

    fn scale(&self, c: &ExactRat) -> Self {
        RatFunc::scale(self, c)
    }

    fn shift_up(&self, m: usize) -> Self {
        RatFunc::shift_up(self, m)
    }

    fn shift_down(&self, m: usize) -> Result<Self, SeriesError> {
        RatFunc::shift_down(self, m)
    }

    fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        RatFunc::div(self, other)
    }

    fn split(&self, d: usize) -> Result<(DensePoly, Self), SeriesError> {
        Ok(RatFunc::split(self, d))
    }

    fn lift_poly(&self, p: &DensePoly) -> Self {
        RatFunc::from_poly(p.clone())
    }

    fn expand(&self, n: usize) -> Result<TruncatedSeries, SeriesError> {
        Ok(self.series(n))
    }
}
