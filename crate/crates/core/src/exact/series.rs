use std::fmt;
use std::ops::{Add, Index, Mul, Neg, Sub};

use num_traits::{One, Zero};

use super::{format_rat, DensePoly, ExactRat, SeriesError};

/// A power series known to a fixed order: `coeffs[n]` is the exact
/// coefficient of `x^n` for `n < precision`, and nothing is known beyond.
///
/// Reading past the precision is an error (or a panic through `Index`),
/// never a silent zero.
#[derive(Clone, PartialEq, Eq)]
pub struct TruncatedSeries {
    coeffs: Vec<ExactRat>,
}

impl TruncatedSeries {
    /// The precision is `coeffs.len()`.
    pub fn new(coeffs: Vec<ExactRat>) -> Self {
        debug_assert!(coeffs.iter().all(super::is_canonical));
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    pub fn from_bigints(coeffs: &[super::ExactInt]) -> Self {
        Self::new(coeffs.iter().map(super::int_to_rat).collect())
    }

    pub fn zero(precision: usize) -> Self {
        Self::new(vec![ExactRat::zero(); precision])
    }

    pub fn one(precision: usize) -> Self {
        Self::from_poly(&DensePoly::one(), precision)
    }

    /// Expands a polynomial to the given precision.
    pub fn from_poly(p: &DensePoly, precision: usize) -> Self {
        Self::new((0..precision).map(|i| p.coeff(i)).collect())
    }

    pub fn precision(&self) -> usize {
        self.coeffs.len()
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn coeff(&self, n: usize) -> Result<&ExactRat, SeriesError> {
        self.coeffs.get(n).ok_or(SeriesError::BeyondPrecision {
            index: n,
            precision: self.precision(),
        })
    }

    /// Index of the first nonzero coefficient.
    pub fn valuation(&self) -> Result<usize, SeriesError> {
        self.coeffs
            .iter()
            .position(|c| !c.is_zero())
            .ok_or(SeriesError::ZeroToPrecision {
                precision: self.precision(),
            })
    }

    pub fn truncate(&self, precision: usize) -> Result<Self, SeriesError> {
        if precision > self.precision() {
            return Err(SeriesError::InsufficientPrecision {
                needed: precision,
                available: self.precision(),
            });
        }
        Ok(Self::new(self.coeffs[..precision].to_vec()))
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        Self::new(self.coeffs.iter().map(|a| a * c).collect())
    }

    /// Multiplication by `x^m` (`m > 0`) or division by `x^|m|` (`m < 0`).
    ///
    /// A right shift gains `m` orders of precision; a left shift loses `|m|`.
    pub fn shift(&self, m: isize) -> Result<Self, SeriesError> {
        if m >= 0 {
            let m = m as usize;
            let mut coeffs = vec![ExactRat::zero(); m];
            coeffs.extend(self.coeffs.iter().cloned());
            return Ok(Self::new(coeffs));
        }
        let m = m.unsigned_abs();
        if m > self.precision() {
            return Err(SeriesError::InsufficientPrecision {
                needed: m,
                available: self.precision(),
            });
        }
        if let Some(v) = self.coeffs[..m].iter().position(|c| !c.is_zero()) {
            return Err(SeriesError::NegativeValuation {
                shift: m,
                valuation: v,
            });
        }
        Ok(Self::new(self.coeffs[m..].to_vec()))
    }

    /// Multiplicative inverse to the same precision.
    pub fn inv(&self) -> Result<Self, SeriesError> {
        let a0 = self.coeffs.first().ok_or(SeriesError::InsufficientPrecision {
            needed: 1,
            available: 0,
        })?;
        if a0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        let a0_inv = a0.recip();
        let p = self.precision();
        let mut out: Vec<ExactRat> = Vec::with_capacity(p);
        out.push(a0_inv.clone());
        for n in 1..p {
            let mut s = ExactRat::zero();
            for i in 1..=n {
                let a = &self.coeffs[i];
                if !a.is_zero() {
                    s += a * &out[n - i];
                }
            }
            out.push(-s * &a0_inv);
        }
        Ok(Self::new(out))
    }

    /// `self / other` with `other(0) != 0`.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        Ok(self * &other.inv()?)
    }

    /// The decomposition `u = u_L + x^{d+2} u_H` where `u_L` has degree at
    /// most `d + 1`.
    pub fn split(&self, d: usize) -> Result<(DensePoly, Self), SeriesError> {
        let cut = d + 2;
        if self.precision() < cut {
            return Err(SeriesError::InsufficientPrecision {
                needed: cut,
                available: self.precision(),
            });
        }
        let low = DensePoly::new(self.coeffs[..cut].to_vec());
        let high = Self::new(self.coeffs[cut..].to_vec());
        Ok((low, high))
    }

    /// Inverse of [`split`](Self::split).
    pub fn recombine(low: &DensePoly, high: &Self, d: usize) -> Self {
        let cut = d + 2;
        let shifted = high.shift(cut as isize).expect("right shift never fails");
        &Self::from_poly(low, shifted.precision()) + &shifted
    }

    /// `self^e` by binary exponentiation.
    pub fn pow(&self, mut e: u64) -> Self {
        let mut result = Self::one(self.precision());
        let mut base = self.clone();
        while e > 0 {
            if e & 1 == 1 {
                result = &result * &base;
            }
            e >>= 1;
            if e > 0 {
                base = &base * &base;
            }
        }
        result
    }

    /// Coefficients, failing unless every one is an integer.
    pub fn integer_coeffs(&self) -> Option<Vec<super::ExactInt>> {
        self.coeffs
            .iter()
            .map(|c| c.is_integer().then(|| c.to_integer()))
            .collect()
    }

    pub fn is_one(&self) -> bool {
        self.coeffs
            .iter()
            .enumerate()
            .all(|(i, c)| if i == 0 { c.is_one() } else { c.is_zero() })
    }
}

impl Index<usize> for TruncatedSeries {
    type Output = ExactRat;

    fn index(&self, n: usize) -> &ExactRat {
        match self.coeff(n) {
            Ok(c) => c,
            Err(e) => panic!("{e}"),
        }
    }
}

impl fmt::Debug for TruncatedSeries {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "[")?;
        for (i, c) in self.coeffs.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}", format_rat(c))?;
        }
        write!(f, "] + O(x^{})", self.precision())
    }
}

impl Add for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn add(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a + b)
                .collect(),
        )
    }
}

impl Sub for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn sub(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        TruncatedSeries::new(
            self.coeffs
                .iter()
                .zip(&rhs.coeffs)
                .map(|(a, b)| a - b)
                .collect(),
        )
    }
}

impl Neg for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn neg(self) -> TruncatedSeries {
        TruncatedSeries::new(self.coeffs.iter().map(|a| -a).collect())
    }
}

impl Mul for &TruncatedSeries {
    type Output = TruncatedSeries;
    fn mul(self, rhs: &TruncatedSeries) -> TruncatedSeries {
        let p = self.precision().min(rhs.precision());
        let mut out = vec![ExactRat::zero(); p];
        for (i, a) in self.coeffs.iter().take(p).enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().take(p - i).enumerate() {
                if !b.is_zero() {
                    out[i + j] += a * b;
                }
            }
        }
        TruncatedSeries::new(out)
    }
}
