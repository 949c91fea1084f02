//! Motzkin numbers, their convolution powers `M(x)^r`, and the quadratic
//! functional equation each power satisfies.

use num_traits::{One, Zero};

use crate::exact::{DensePoly, ExactInt, ExactRat, RatFunc, TruncatedSeries};
use crate::tau::Qfe;

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MotzkinError {
    #[error("convolution power must be at least 1, got {0}")]
    InvalidPower(u32),
    #[error("at least one term is required")]
    NoTerms,
    #[error("cannot normalize the functional equation for r = {0}")]
    DegenerateEquation(u32),
}

/// Convolution power `r` of the Motzkin series, to `terms` coefficients.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MotzkinPowerSpec {
    pub r: u32,
    pub terms: usize,
}

impl MotzkinPowerSpec {
    pub fn new(r: u32, terms: usize) -> Result<Self, MotzkinError> {
        if r == 0 {
            return Err(MotzkinError::InvalidPower(r));
        }
        if terms == 0 {
            return Err(MotzkinError::NoTerms);
        }
        Ok(Self { r, terms })
    }
}

/// `M_0 .. M_{terms-1}` via `M_n = sum_k binom(n, 2k) C_k`.
pub fn motzkin_by_catalan_sum(terms: usize) -> Vec<ExactInt> {
    let catalan = catalan_numbers(terms / 2 + 1);
    let mut row: Vec<ExactInt> = vec![ExactInt::one()];
    let mut out = Vec::with_capacity(terms);
    for n in 0..terms {
        // row = binomial coefficients binom(n, *)
        if n > 0 {
            let mut next = vec![ExactInt::one(); n + 1];
            for i in 1..n {
                next[i] = &row[i - 1] + &row[i];
            }
            row = next;
        }
        let m = (0..=n / 2).fold(ExactInt::zero(), |acc, k| acc + &row[2 * k] * &catalan[k]);
        out.push(m);
    }
    out
}

/// `M_n` from the equation `M = 1 + x M + x^2 M^2`.
pub fn motzkin_by_equation(terms: usize) -> Vec<ExactInt> {
    let mut m: Vec<ExactInt> = Vec::with_capacity(terms);
    for n in 0..terms {
        let v = if n == 0 {
            ExactInt::one()
        } else {
            let mut v = m[n - 1].clone();
            if n >= 2 {
                let t = n - 2;
                for i in 0..=t {
                    v += &m[i] * &m[t - i];
                }
            }
            v
        };
        m.push(v);
    }
    m
}

pub fn catalan_numbers(terms: usize) -> Vec<ExactInt> {
    let mut c: Vec<ExactInt> = Vec::with_capacity(terms);
    for n in 0..terms {
        if n == 0 {
            c.push(ExactInt::one());
        } else {
            // C_n = C_{n-1} * 2(2n-1) / (n+1)
            let v = &c[n - 1] * ExactInt::from(2 * (2 * n - 1)) / ExactInt::from(n + 1);
            c.push(v);
        }
    }
    c
}

/// Motzkin numbers `M_0 .. M_{terms-1}`, computed two independent ways and
/// cross-checked.
pub fn motzkin_coeffs(terms: usize) -> Vec<ExactInt> {
    let a = motzkin_by_catalan_sum(terms);
    let b = motzkin_by_equation(terms);
    assert_eq!(a, b, "Motzkin number routes disagree");
    a
}

/// `M(x)^r` to the requested precision by binary exponentiation.
pub fn conv_power(spec: MotzkinPowerSpec) -> TruncatedSeries {
    let m = TruncatedSeries::from_bigints(&motzkin_by_equation(spec.terms));
    m.pow(u64::from(spec.r))
}

/// Integer coefficients of `M(x)^r`.
pub fn conv_power_ints(r: u32, terms: usize) -> Result<Vec<ExactInt>, MotzkinError> {
    let s = conv_power(MotzkinPowerSpec::new(r, terms)?);
    Ok(s.integer_coeffs().expect("Motzkin powers have integer coefficients"))
}

/// Laurent coefficients: `M^r = (A_r + B_r M) / x^{2(r-1)}`.
///
/// `M^2 = ((1 - x) M - 1) / x^2` turns `M^{r+1} = a M + b M^2` into
/// `A_{r+1} = -B_r` and `B_{r+1} = x^2 A_r + (1 - x) B_r`.
pub fn power_in_motzkin_basis(r: u32) -> (DensePoly, DensePoly) {
    let mut a = DensePoly::zero();
    let mut b = DensePoly::one();
    let one_minus_x = DensePoly::from_ints(&[1, -1]);
    for _ in 1..r {
        let next_a = -&b;
        let next_b = &a.shift_up(2) + &(&one_minus_x * &b);
        a = next_a;
        b = next_b;
    }
    (a, b)
}

/// Polynomials `(A, B, C)` with `A F^2 + B F + C = 0` for `F = M(x)^r`,
/// with the common power of `x` removed.
pub fn quadratic_for_power(r: u32) -> (DensePoly, DensePoly, DensePoly) {
    let (a, b) = power_in_motzkin_basis(r);
    let m = 2 * (r as usize - 1);
    let x_minus_one = DensePoly::from_ints(&[-1, 1]);
    // Substituting M = (F - a)/b into x^2 M^2 + (x - 1) M + 1 = 0 and
    // clearing x^{-2m} from a = A/x^m, b = B/x^m:
    let qa = DensePoly::monomial(ExactRat::one(), 2 * m + 2);
    let qb = (&(&a.shift_up(2) * &DensePoly::from_ints(&[-2])) + &(&x_minus_one * &b)).shift_up(m);
    let qc = &(&(&a * &a).shift_up(2) - &(&(&x_minus_one * &a) * &b)) + &(&b * &b);
    let common = [&qa, &qb, &qc]
        .iter()
        .filter_map(|p| p.valuation())
        .min()
        .unwrap_or(0);
    (
        qa.shift_down_exact(common),
        qb.shift_down_exact(common),
        qc.shift_down_exact(common),
    )
}

/// The functional equation `F = 1 / (u + x^k v F)` of `F = M(x)^r`, exact.
pub fn derive_qfe(r: u32) -> Result<Qfe<RatFunc>, MotzkinError> {
    if r == 0 {
        return Err(MotzkinError::InvalidPower(r));
    }
    let (qa, qb, qc) = quadratic_for_power(r);
    if qc.coeff(0).is_zero() {
        return Err(MotzkinError::DegenerateEquation(r));
    }
    let degenerate = |_| MotzkinError::DegenerateEquation(r);
    // F (B + A F) = -C  =>  F = 1 / (-B/C + (-A/C) F)
    let u = RatFunc::new(-&qb, qc.clone()).map_err(degenerate)?;
    let xkv = RatFunc::new(-&qa, qc).map_err(degenerate)?;
    let k = xkv.valuation().map_err(degenerate)?;
    if k == 0 {
        return Err(MotzkinError::DegenerateEquation(r));
    }
    let v = xkv.shift_down(k).map_err(degenerate)?;
    Qfe::new(0, k, u, v).map_err(|_| MotzkinError::DegenerateEquation(r))
}

/// [`derive_qfe`] with `u` and `v` expanded to `precision` coefficients.
pub fn derive_qfe_truncated(r: u32, precision: usize) -> Result<Qfe<TruncatedSeries>, MotzkinError> {
    Ok(derive_qfe(r)?.truncated(precision))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::SeriesRing;

    fn ints(v: &[ExactInt]) -> Vec<i64> {
        v.iter().map(|x| i64::try_from(x).unwrap()).collect()
    }

    #[test]
    fn motzkin_numbers() {
        assert_eq!(ints(&motzkin_coeffs(1)), vec![1]);
        assert_eq!(ints(&motzkin_coeffs(7)), vec![1, 1, 2, 4, 9, 21, 51]);
    }

    #[test]
    fn motzkin_equation_residual() {
        let p = 30;
        let m = TruncatedSeries::from_bigints(&motzkin_coeffs(p));
        let x2m2 = (&m * &m).shift(2).unwrap().truncate(p).unwrap();
        let xm = m.shift(1).unwrap().truncate(p).unwrap();
        let lhs = &(&(&x2m2 + &xm) + &TruncatedSeries::one(p)) - &m;
        assert_eq!(lhs, TruncatedSeries::zero(p));
    }

    #[test]
    fn powers() {
        let one = conv_power_ints(1, 7).unwrap();
        assert_eq!(one, motzkin_coeffs(7));
        assert_eq!(ints(&conv_power_ints(2, 5).unwrap()), vec![1, 2, 5, 12, 30]);
        assert_eq!(ints(&conv_power_ints(4, 4).unwrap()), vec![1, 4, 14, 44]);
        assert!(conv_power_ints(0, 4).is_err());
        assert!(MotzkinPowerSpec::new(1, 0).is_err());
    }

    #[test]
    fn known_equations() {
        let q3 = derive_qfe(3).unwrap();
        assert_eq!((q3.d, q3.k), (0, 6));
        assert_eq!(q3.u, RatFunc::from_poly(DensePoly::from_ints(&[1, -3, 0, 2])));
        assert_eq!(q3.v, RatFunc::from_poly(DensePoly::from_ints(&[-1])));

        let q4 = derive_qfe(4).unwrap();
        assert_eq!((q4.d, q4.k), (0, 8));
        assert_eq!(q4.u, RatFunc::from_poly(DensePoly::from_ints(&[1, -4, 2, 4, -1])));
        assert_eq!(q4.v, RatFunc::from_poly(DensePoly::from_ints(&[-1])));
    }

    #[test]
    fn equation_solution_is_the_power() {
        for r in 1..=9u32 {
            let q = derive_qfe(r).unwrap();
            assert_eq!(q.k, 2 * r as usize);
            let p = 40;
            let s = q.to_series(p).unwrap();
            assert_eq!(s, conv_power(MotzkinPowerSpec::new(r, p).unwrap()), "r = {r}");
            assert!(q.residual(&s).unwrap().coeffs().iter().all(Zero::is_zero));
            assert!(q.u.constant_term().is_one());
        }
    }

    #[test]
    fn truncated_equation_matches() {
        let q = derive_qfe_truncated(5, 30).unwrap();
        let s = q.to_series(30).unwrap();
        assert_eq!(s, conv_power(MotzkinPowerSpec::new(5, 30).unwrap()));
        assert_eq!(SeriesRing::precision(&q.u), Some(30));
    }
}
