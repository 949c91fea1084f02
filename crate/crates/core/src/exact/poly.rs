use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

use num_traits::{One, Signed, Zero};

use super::intpoly::IntPoly;
use super::{format_rat, ExactRat};

/// Dense univariate polynomial with rational coefficients, lowest degree
/// first. Trailing zeros are always trimmed, so the zero polynomial has an
/// empty coefficient list.
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct DensePoly {
    coeffs: Vec<ExactRat>,
}

impl DensePoly {
    pub fn new(mut coeffs: Vec<ExactRat>) -> Self {
        while coeffs.last().is_some_and(Zero::is_zero) {
            coeffs.pop();
        }
        Self { coeffs }
    }

    pub fn from_ints(coeffs: &[i64]) -> Self {
        Self::new(coeffs.iter().map(|&c| super::rat(c)).collect())
    }

    pub fn zero() -> Self {
        Self { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        Self::constant(ExactRat::one())
    }

    pub fn constant(c: ExactRat) -> Self {
        Self::new(vec![c])
    }

    /// The monomial `c * x^m`.
    pub fn monomial(c: ExactRat, m: usize) -> Self {
        let mut coeffs = vec![ExactRat::zero(); m + 1];
        coeffs[m] = c;
        Self::new(coeffs)
    }

    pub fn coeffs(&self) -> &[ExactRat] {
        &self.coeffs
    }

    pub fn into_coeffs(self) -> Vec<ExactRat> {
        self.coeffs
    }

    /// Coefficient of `x^i`; zero above the degree.
    pub fn coeff(&self, i: usize) -> ExactRat {
        self.coeffs.get(i).cloned().unwrap_or_else(ExactRat::zero)
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn leading(&self) -> Option<&ExactRat> {
        self.coeffs.last()
    }

    /// Index of the lowest nonzero coefficient.
    pub fn valuation(&self) -> Option<usize> {
        self.coeffs.iter().position(|c| !c.is_zero())
    }

    pub fn eval(&self, x: &ExactRat) -> ExactRat {
        self.coeffs
            .iter()
            .rev()
            .fold(ExactRat::zero(), |acc, c| acc * x + c)
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self {
            coeffs: self.coeffs.iter().map(|a| a * c).collect(),
        }
    }

    /// Multiplies by `x^m`.
    pub fn shift_up(&self, m: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut coeffs = vec![ExactRat::zero(); m];
        coeffs.extend(self.coeffs.iter().cloned());
        Self { coeffs }
    }

    /// Divides by `x^m`; the caller guarantees `valuation >= m`.
    pub(crate) fn shift_down_exact(&self, m: usize) -> Self {
        debug_assert!(self.valuation().is_none_or(|v| v >= m));
        Self::new(self.coeffs.iter().skip(m).cloned().collect())
    }

    /// Keeps the terms of degree `< n`.
    pub fn truncate(&self, n: usize) -> Self {
        Self::new(self.coeffs.iter().take(n).cloned().collect())
    }

    pub fn monic(&self) -> Self {
        match self.leading() {
            None => Self::zero(),
            Some(lc) => {
                let inv = lc.recip();
                self.scale(&inv)
            }
        }
    }

    /// Euclidean division; panics on a zero divisor.
    pub fn div_rem(&self, divisor: &Self) -> (Self, Self) {
        let dd = divisor.degree().expect("polynomial division by zero");
        let lc_inv = divisor.coeffs[dd].recip();
        let mut rem = self.coeffs.clone();
        if rem.len() <= dd {
            return (Self::zero(), self.clone());
        }
        let mut quot = vec![ExactRat::zero(); rem.len() - dd];
        for i in (0..quot.len()).rev() {
            let c = &rem[i + dd] * &lc_inv;
            if c.is_zero() {
                continue;
            }
            for (j, b) in divisor.coeffs.iter().enumerate() {
                rem[i + j] -= &c * b;
            }
            quot[i] = c;
        }
        rem.truncate(dd);
        (Self::new(quot), Self::new(rem))
    }

    /// Monic greatest common divisor (zero if both inputs are zero).
    ///
    /// A modular image decides the common case of coprime inputs cheaply;
    /// otherwise a primitive remainder sequence over the integers is run.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.monic();
        }
        if other.is_zero() {
            return self.monic();
        }
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Self::one();
        }
        let (_, a) = IntPoly::primitive_of(self);
        let (_, b) = IntPoly::primitive_of(other);
        a.gcd(&b).to_dense().monic()
    }

    /// Euclid over the rationals. Slow on large coefficients; kept as an
    /// independent reference for [`gcd`](Self::gcd).
    pub fn gcd_euclid(&self, other: &Self) -> Self {
        let mut a = self.monic();
        let mut b = other.monic();
        while !b.is_zero() {
            let (_, r) = a.div_rem(&b);
            a = b;
            b = r.monic();
        }
        a
    }

    /// Integer values at all integers. A polynomial of degree `d` is
    /// integer-valued iff it takes integer values at `0..=d`.
    pub fn is_integer_valued(&self) -> bool {
        let d = self.degree().unwrap_or(0);
        (0..=d).all(|i| self.eval(&super::rat(i as i64)).is_integer())
    }
}

impl fmt::Debug for DensePoly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "DensePoly({self})")
    }
}

impl fmt::Display for DensePoly {
    /// Highest degree first, in the variable `x`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (i, c) in self.coeffs.iter().enumerate().rev() {
            if c.is_zero() {
                continue;
            }
            let neg = c.is_negative();
            let abs = c.abs();
            if first {
                if neg {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {} ", if neg { '-' } else { '+' })?;
            }
            first = false;
            let show_coeff = i == 0 || !abs.is_one();
            if show_coeff {
                let s = format_rat(&abs);
                if abs.is_integer() || i == 0 {
                    write!(f, "{s}")?;
                } else {
                    write!(f, "({s})")?;
                }
            }
            match i {
                0 => {}
                1 => write!(f, "{}x", if show_coeff { "*" } else { "" })?,
                _ => write!(f, "{}x^{i}", if show_coeff { "*" } else { "" })?,
            }
        }
        Ok(())
    }
}

impl Add for &DensePoly {
    type Output = DensePoly;
    fn add(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) + rhs.coeff(i)).collect())
    }
}

impl Sub for &DensePoly {
    type Output = DensePoly;
    fn sub(self, rhs: &DensePoly) -> DensePoly {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        DensePoly::new((0..n).map(|i| self.coeff(i) - rhs.coeff(i)).collect())
    }
}

impl Neg for &DensePoly {
    type Output = DensePoly;
    fn neg(self) -> DensePoly {
        DensePoly {
            coeffs: self.coeffs.iter().map(|c| -c).collect(),
        }
    }
}

impl Mul for &DensePoly {
    type Output = DensePoly;
    fn mul(self, rhs: &DensePoly) -> DensePoly {
        if self.is_zero() || rhs.is_zero() {
            return DensePoly::zero();
        }
        let mut out = vec![ExactRat::zero(); self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, a) in self.coeffs.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in rhs.coeffs.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        DensePoly::new(out)
    }
}
