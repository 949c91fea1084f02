use std::fmt;

use num_traits::{Signed, Zero};

use super::intpoly::IntPoly;
use super::{DensePoly, ExactRat, SeriesError, TruncatedSeries};

/// A rational function regarded as a power series at `x = 0`.
///
/// Stored as `scale * num / den` with `num`, `den` coprime primitive integer
/// polynomials, `num` with positive leading coefficient and `den(0) > 0`.
/// The representation is unique, and since `den(0) != 0` every coefficient
/// of the expansion is available on demand.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct RatFunc {
    scale: ExactRat,
    num: IntPoly,
    den: IntPoly,
}

impl RatFunc {
    /// Builds and reduces `num / den`. Fails if `den(0) = 0` after reduction,
    /// i.e. the quotient is not a power series.
    pub fn new(num: DensePoly, den: DensePoly) -> Result<Self, SeriesError> {
        if den.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        if num.is_zero() {
            return Ok(Self::zero());
        }
        let (cn, n) = IntPoly::primitive_of(&num);
        let (cd, d) = IntPoly::primitive_of(&den);
        Self::reduce(cn / cd, n, d)
    }

    /// `scale * num / den` for nonzero primitive `num`, `den`.
    fn reduce(scale: ExactRat, num: IntPoly, den: IntPoly) -> Result<Self, SeriesError> {
        let g = num.gcd(&den);
        if g.is_one() {
            Self::normalized(scale, num, den)
        } else {
            Self::normalized(scale, num.div_exact(&g), den.div_exact(&g))
        }
    }

    /// Fixes the signs of coprime primitive parts.
    fn normalized(mut scale: ExactRat, mut num: IntPoly, mut den: IntPoly) -> Result<Self, SeriesError> {
        if scale.is_zero() || num.is_zero() {
            return Ok(Self::zero());
        }
        let d0 = den.coeff(0);
        if d0.is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        if d0.is_negative() {
            den = den.neg();
            scale = -scale;
        }
        if num.coeffs().last().is_some_and(|c| c.is_negative()) {
            num = num.neg();
            scale = -scale;
        }
        Ok(Self { scale, num, den })
    }

    pub fn from_poly(p: DensePoly) -> Self {
        if p.is_zero() {
            return Self::zero();
        }
        let (scale, num) = IntPoly::primitive_of(&p);
        Self {
            scale,
            num,
            den: IntPoly::one(),
        }
    }

    pub fn constant(c: ExactRat) -> Self {
        Self::from_poly(DensePoly::constant(c))
    }

    pub fn zero() -> Self {
        Self {
            scale: ExactRat::zero(),
            num: IntPoly::zero(),
            den: IntPoly::one(),
        }
    }

    /// Numerator, normalized so that the denominator has constant term 1.
    pub fn numer(&self) -> DensePoly {
        let d0 = ExactRat::from_integer(self.den.coeff(0));
        self.num.to_dense_scaled(&(&self.scale / d0))
    }

    /// Denominator with constant term 1.
    pub fn denom(&self) -> DensePoly {
        let d0 = ExactRat::from_integer(self.den.coeff(0));
        self.den.to_dense_scaled(&d0.recip())
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_polynomial(&self) -> bool {
        self.den.degree() == Some(0)
    }

    pub fn constant_term(&self) -> ExactRat {
        if self.is_zero() {
            return ExactRat::zero();
        }
        &self.scale * ExactRat::new(self.num.coeff(0), self.den.coeff(0))
    }

    pub fn valuation(&self) -> Result<usize, SeriesError> {
        self.num.valuation().ok_or(SeriesError::ZeroSeries)
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        // a/b * n1/d1 + c/e * n2/d2 over the common denominator d1 * (d2/g)
        let g = if self.den == other.den {
            self.den.clone()
        } else {
            self.den.gcd(&other.den)
        };
        let d1g = self.den.div_exact(&g);
        let d2g = other.den.div_exact(&g);
        let (a, b) = (self.scale.numer(), self.scale.denom());
        let (c, e) = (other.scale.numer(), other.scale.denom());
        let l = num_integer::Integer::lcm(b, e);
        let left = self.num.mul(&d2g).scale(&(a * (&l / b)));
        let right = other.num.mul(&d1g).scale(&(c * (&l / e)));
        let (content, num) = left.add(&right).into_primitive();
        if num.is_zero() {
            return Self::zero();
        }
        let den = self.den.mul(&d2g);
        Self::reduce(ExactRat::new(content, l), num, den).expect("denominator keeps a unit constant term")
    }

    pub fn neg(&self) -> Self {
        Self {
            scale: -&self.scale,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        Self::mul_parts(&self.scale * &other.scale, (&self.num, &self.den), (&other.num, &other.den))
    }

    /// `scale * (n1 n2) / (d1 d2)` for reduced `n1/d1` and `n2/d2`: only the
    /// cross pairs can share factors.
    fn mul_parts(scale: ExactRat, (n1, d1): (&IntPoly, &IntPoly), (n2, d2): (&IntPoly, &IntPoly)) -> Self {
        let g1 = n1.gcd(d2);
        let g2 = n2.gcd(d1);
        let (n1, d2) = if g1.is_one() { (n1.clone(), d2.clone()) } else { (n1.div_exact(&g1), d2.div_exact(&g1)) };
        let (n2, d1) = if g2.is_one() { (n2.clone(), d1.clone()) } else { (n2.div_exact(&g2), d1.div_exact(&g2)) };
        Self::normalized(scale, n1.mul(&n2), d1.mul(&d2)).expect("product of unit denominators")
    }

    pub fn scale(&self, c: &ExactRat) -> Self {
        if c.is_zero() || self.is_zero() {
            return Self::zero();
        }
        Self {
            scale: &self.scale * c,
            num: self.num.clone(),
            den: self.den.clone(),
        }
    }

    /// `self / other`; requires `other(0) != 0`.
    pub fn div(&self, other: &Self) -> Result<Self, SeriesError> {
        if other.constant_term().is_zero() {
            return Err(SeriesError::ZeroConstantTerm);
        }
        if self.is_zero() {
            return Ok(Self::zero());
        }
        Ok(Self::mul_parts(
            &self.scale / &other.scale,
            (&self.num, &self.den),
            (&other.den, &other.num),
        ))
    }

    pub fn shift_up(&self, m: usize) -> Self {
        Self {
            scale: self.scale.clone(),
            num: self.num.shift_up(m),
            den: self.den.clone(),
        }
    }

    pub fn shift_down(&self, m: usize) -> Result<Self, SeriesError> {
        if self.is_zero() {
            return Ok(Self::zero());
        }
        let v = self.valuation()?;
        if v < m {
            return Err(SeriesError::NegativeValuation {
                shift: m,
                valuation: v,
            });
        }
        Ok(Self {
            scale: self.scale.clone(),
            num: self.num.shift_down(m),
            den: self.den.clone(),
        })
    }

    /// First `n` series coefficients.
    pub fn series(&self, n: usize) -> TruncatedSeries {
        // c_k = (num_k - sum_{i>=1} den_i c_{k-i}) / den_0, for num/den without scale
        let den = self.den.coeffs();
        let d0 = ExactRat::from_integer(den[0].clone()).recip();
        let mut out: Vec<ExactRat> = Vec::with_capacity(n);
        for k in 0..n {
            let mut acc = ExactRat::from_integer(self.num.coeff(k));
            for (i, d) in den.iter().enumerate().skip(1).take(k) {
                if !d.is_zero() {
                    acc -= &out[k - i] * ExactRat::from_integer(d.clone());
                }
            }
            out.push(acc * &d0);
        }
        TruncatedSeries::new(out.into_iter().map(|c| c * &self.scale).collect())
    }

    /// `u = u_L + x^{d+2} u_H` with `deg u_L <= d + 1`.
    pub fn split(&self, d: usize) -> (DensePoly, Self) {
        let cut = d + 2;
        let low = DensePoly::new(self.series(cut).coeffs().to_vec());
        if self.is_zero() {
            return (low, Self::zero());
        }
        // high = (scale num - low den) / (x^cut den)
        let (cl, low_int) = IntPoly::primitive_of(&low);
        let (a, b) = (self.scale.numer(), self.scale.denom());
        let (c, e) = (cl.numer(), cl.denom());
        let l = num_integer::Integer::lcm(b, e);
        let rest = self
            .num
            .scale(&(a * (&l / b)))
            .add(&low_int.mul(&self.den).scale(&-(c * (&l / e))));
        let (content, rest) = rest.into_primitive();
        if rest.is_zero() {
            return (low, Self::zero());
        }
        let high = Self::reduce(ExactRat::new(content, l), rest.shift_down(cut), self.den.clone())
            .expect("denominator unchanged");
        (low, high)
    }
}

impl fmt::Debug for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "RatFunc({self})")
    }
}

impl fmt::Display for RatFunc {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_polynomial() {
            write!(f, "{}", self.numer())
        } else {
            write!(f, "({}) / ({})", self.numer(), self.denom())
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn reduces_common_factor() {
        let a = &DensePoly::from_ints(&[1, 1]) * &DensePoly::from_ints(&[2, 3]);
        let b = &DensePoly::from_ints(&[1, 1]) * &DensePoly::from_ints(&[4, -1]);
        let f = RatFunc::new(a, b).unwrap();
        assert_eq!(f.numer(), DensePoly::new(vec![crate::exact::ratio(1, 2), crate::exact::ratio(3, 4)]));
        assert_eq!(f.denom().coeff(0), crate::exact::rat(1));
    }

    #[test]
    fn expansion_matches_series_inverse() {
        let den = DensePoly::from_ints(&[1, -3, 0, 2]);
        let f = RatFunc::new(DensePoly::one(), den.clone()).unwrap();
        let s = TruncatedSeries::from_poly(&den, 8).inv().unwrap();
        assert_eq!(f.series(8), s);
    }

    #[test]
    fn split_recombines() {
        let f = RatFunc::new(DensePoly::from_ints(&[2, 1, 5]), DensePoly::from_ints(&[1, -1, 1])).unwrap();
        for d in 0..4 {
            let (low, high) = f.split(d);
            assert!(low.degree().is_none_or(|g| g <= d + 1));
            let back = RatFunc::from_poly(low).add(&high.shift_up(d + 2));
            assert_eq!(back, f);
        }
    }

    #[test]
    fn arithmetic_agrees_with_series() {
        let f = RatFunc::new(DensePoly::from_ints(&[3, -1, 4]), DensePoly::from_ints(&[2, 7, -1])).unwrap();
        let g = RatFunc::new(DensePoly::from_ints(&[-5, 0, 1]), DensePoly::from_ints(&[-3, 1])).unwrap();
        let n = 12;
        let (fs, gs) = (f.series(n), g.series(n));
        assert_eq!(f.add(&g).series(n), &fs + &gs);
        assert_eq!(f.sub(&g).series(n), &fs - &gs);
        assert_eq!(f.mul(&g).series(n), &fs * &gs);
        assert_eq!(f.div(&g).unwrap().series(n), fs.div(&gs).unwrap());
        assert_eq!(f.sub(&f), RatFunc::zero());
        assert_eq!(f.div(&f).unwrap(), RatFunc::constant(crate::exact::rat(1)));
        assert_eq!(f.constant_term(), crate::exact::ratio(3, 2));
    }

    #[test]
    fn rejects_pole_at_origin() {
        assert!(RatFunc::new(DensePoly::one(), DensePoly::from_ints(&[0, 1])).is_err());
    }
}
