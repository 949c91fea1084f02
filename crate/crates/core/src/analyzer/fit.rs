use std::fmt;

use num_traits::{One, Signed, Zero};
use serde::{Deserialize, Serialize};

use crate::exact::{format_rat, DensePoly, ExactInt, ExactRat};

/// The sign factor of a quasi-polynomial residue class.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SignMode {
    /// `+1`
    Plus,
    /// `-1`
    Minus,
    /// `(-1)^n`
    AlternatingPlus,
    /// `-(-1)^n`
    AlternatingMinus,
}

impl SignMode {
    pub const ALL: [SignMode; 4] = [
        SignMode::Plus,
        SignMode::Minus,
        SignMode::AlternatingPlus,
        SignMode::AlternatingMinus,
    ];

    /// The sign at `n`.
    pub fn at(self, n: usize) -> i8 {
        let odd = n % 2 == 1;
        match self {
            SignMode::Plus => 1,
            SignMode::Minus => -1,
            SignMode::AlternatingPlus if odd => -1,
            SignMode::AlternatingPlus => 1,
            SignMode::AlternatingMinus if odd => 1,
            SignMode::AlternatingMinus => -1,
        }
    }

    pub fn negated(self) -> Self {
        match self {
            SignMode::Plus => SignMode::Minus,
            SignMode::Minus => SignMode::Plus,
            SignMode::AlternatingPlus => SignMode::AlternatingMinus,
            SignMode::AlternatingMinus => SignMode::AlternatingPlus,
        }
    }

    pub fn is_alternating(self) -> bool {
        matches!(self, SignMode::AlternatingPlus | SignMode::AlternatingMinus)
    }

    /// The mode whose sign at `n` is the sign at `n + shift`.
    pub fn shifted(self, shift: usize) -> Self {
        if self.is_alternating() && shift % 2 == 1 {
            self.negated()
        } else {
            self
        }
    }

    /// Mode with the given value at `n = 0`, alternating or not.
    pub fn from_start(positive: bool, alternating: bool) -> Self {
        match (positive, alternating) {
            (true, false) => SignMode::Plus,
            (false, false) => SignMode::Minus,
            (true, true) => SignMode::AlternatingPlus,
            (false, true) => SignMode::AlternatingMinus,
        }
    }
}

impl fmt::Display for SignMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            SignMode::Plus => "+1",
            SignMode::Minus => "-1",
            SignMode::AlternatingPlus => "(-1)^n",
            SignMode::AlternatingMinus => "-(-1)^n",
        })
    }
}

/// `H_{q n + j} = sign(n) * poly(n)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ClosedForm {
    pub q: usize,
    pub j: usize,
    pub sign: SignMode,
    pub poly: DensePoly,
}

impl ClosedForm {
    pub fn new(q: usize, j: usize, sign: SignMode, poly: DensePoly) -> Self {
        assert!(j < q, "residue {j} out of range for period {q}");
        Self { q, j, sign, poly }
    }

    /// Sequence index of the `n`-th member of the class.
    pub fn index(&self, n: usize) -> usize {
        self.q * n + self.j
    }

    pub fn eval(&self, n: usize) -> ExactRat {
        let v = self.poly.eval(&ExactRat::from_integer(ExactInt::from(n)));
        if self.sign.at(n) < 0 {
            -v
        } else {
            v
        }
    }

    /// Equal as functions of `n`.
    pub fn same_function(&self, other: &ClosedForm) -> bool {
        if self.q != other.q || self.j != other.j {
            return false;
        }
        if self.poly.is_zero() || other.poly.is_zero() {
            return self.poly.is_zero() && other.poly.is_zero();
        }
        if self.sign.is_alternating() != other.sign.is_alternating() {
            return false;
        }
        if self.sign == other.sign {
            self.poly == other.poly
        } else {
            self.poly == -&other.poly
        }
    }

    /// Rescaled to a different period, as the classes `j, j + q, ...` of
    /// a multiple `m * q`.
    pub fn refine(&self, m: usize) -> Vec<ClosedForm> {
        (0..m)
            .map(|t| {
                // n = m k + t
                let sub = DensePoly::from_ints(&[t as i64, m as i64]);
                let poly = compose(&self.poly, &sub);
                let sign = match self.sign {
                    s if !s.is_alternating() => s,
                    // (-1)^{m k + t}
                    s => {
                        let base = s.shifted(t);
                        if m.is_multiple_of(2) {
                            if base == SignMode::AlternatingPlus {
                                SignMode::Plus
                            } else {
                                SignMode::Minus
                            }
                        } else {
                            base
                        }
                    }
                };
                ClosedForm::new(self.q * m, self.j + self.q * t, sign, poly)
            })
            .collect()
    }

    pub fn poly_strings(&self) -> Vec<String> {
        self.poly.coeffs().iter().map(format_rat).collect()
    }
}

impl fmt::Display for ClosedForm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "H_{{{}n+{}}} = ", self.q, self.j)?;
        if self.poly.is_zero() {
            f.write_str("0")
        } else {
            write!(f, "{} * ({})", self.sign, self.poly.to_string().replace('x', "n"))
        }
    }
}

/// `p(s(n))`.
fn compose(p: &DensePoly, s: &DensePoly) -> DensePoly {
    p.coeffs()
        .iter()
        .rev()
        .fold(DensePoly::zero(), |acc, c| &(&acc * s) + &DensePoly::constant(c.clone()))
}

/// The members `H_{q n + j}` available in `values`.
pub fn residue_samples(values: &[ExactInt], q: usize, j: usize) -> Vec<ExactInt> {
    values.iter().skip(j).step_by(q).cloned().collect()
}

/// The unique polynomial of degree `< points.len()` through
/// `(0, points[0]), (1, points[1]), ...`, from its forward differences.
pub fn interpolate(points: &[ExactRat]) -> DensePoly {
    let mut diffs: Vec<ExactRat> = points.to_vec();
    let mut leading = Vec::with_capacity(points.len());
    for len in (1..=points.len()).rev() {
        leading.push(diffs[0].clone());
        for i in 0..len - 1 {
            diffs[i] = &diffs[i + 1] - &diffs[i];
        }
    }
    // sum_k Δ^k f(0) * binom(n, k)
    let mut out = DensePoly::zero();
    let mut binom = DensePoly::one();
    for (k, d) in leading.iter().enumerate() {
        if !d.is_zero() {
            out = &out + &binom.scale(d);
        }
        let step = DensePoly::new(vec![-ExactRat::from_integer(ExactInt::from(k)), ExactRat::one()]);
        binom = (&binom * &step).scale(&ExactRat::new(ExactInt::one(), ExactInt::from(k + 1)));
    }
    out
}

/// Lowest degree of a polynomial through all `samples`, if any fits with at
/// least two samples left over to confirm it. `None` means no fit of degree
/// `<= deg_max`; the zero sequence reports `Some(None)`.
fn lowest_degree(samples: &[ExactInt], deg_max: usize) -> Option<Option<usize>> {
    if samples.iter().all(Zero::is_zero) {
        return Some(None);
    }
    let mut row: Vec<ExactInt> = samples.to_vec();
    for d in 0..=deg_max {
        if d + 3 > samples.len() {
            return None;
        }
        for i in 0..row.len() - 1 {
            row[i] = &row[i + 1] - &row[i];
        }
        row.pop();
        if row.iter().all(Zero::is_zero) {
            return Some(Some(d));
        }
    }
    None
}

/// Fits `H_{q n + j} = sign(n) poly(n)` to the samples of one residue class.
///
/// Every sign mode is tried; the fit of lowest degree wins, and it has to
/// reproduce every available sample, with at least two beyond the
/// interpolation points. The polynomial is normalized to a positive leading
/// coefficient, so `Minus` and `AlternatingMinus` carry the sign. Returns
/// `None` if no sign mode admits a fit of degree `<= deg_max`.
pub fn fit_quasi_poly(values: &[ExactInt], q: usize, j: usize, deg_max: usize) -> Option<ClosedForm> {
    assert!(q > 0 && j < q, "invalid residue class {j} mod {q}");
    let samples = residue_samples(values, q, j);
    let mut best: Option<(Option<usize>, SignMode)> = None;
    for mode in [SignMode::Plus, SignMode::AlternatingPlus] {
        let signed: Vec<ExactInt> = samples
            .iter()
            .enumerate()
            .map(|(n, v)| if mode.at(n) < 0 { -v } else { v.clone() })
            .collect();
        if let Some(deg) = lowest_degree(&signed, deg_max) {
            if best.is_none_or(|(b, _)| deg < b) {
                best = Some((deg, mode));
            }
        }
    }
    let (deg, mode) = best?;
    let Some(deg) = deg else {
        return Some(ClosedForm::new(q, j, SignMode::Plus, DensePoly::zero()));
    };
    let points: Vec<ExactRat> = samples[..=deg]
        .iter()
        .enumerate()
        .map(|(n, v)| {
            let v = ExactRat::from_integer(v.clone());
            if mode.at(n) < 0 {
                -v
            } else {
                v
            }
        })
        .collect();
    let poly = interpolate(&points);
    let form = if poly.leading().is_some_and(|c| c.is_negative()) {
        ClosedForm::new(q, j, mode.negated(), -&poly)
    } else {
        ClosedForm::new(q, j, mode, poly)
    };
    debug_assert!(form.poly.is_integer_valued());
    Some(form)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|&x| ExactInt::from(x)).collect()
    }

    #[test]
    fn constant_sequence() {
        let f = fit_quasi_poly(&ints(&[1, 1, 1]), 1, 0, 0).unwrap();
        assert_eq!(f.poly, DensePoly::from_ints(&[1]));
        assert_eq!(f.sign, SignMode::Plus);
    }

    #[test]
    fn zero_class() {
        let v = ints(&[1, 1, 0, -4, -4, 0, 9, 9, 0]);
        let f = fit_quasi_poly(&v, 3, 2, 3).unwrap();
        assert!(f.poly.is_zero());
    }

    #[test]
    fn alternating_square() {
        let v: Vec<ExactInt> = (0..8)
            .map(|n: i64| ExactInt::from(if n % 2 == 0 { 1 } else { -1 } * (n + 1) * (n + 1)))
            .collect();
        let f = fit_quasi_poly(&v, 1, 0, 4).unwrap();
        assert_eq!(f.sign, SignMode::AlternatingPlus);
        assert_eq!(f.poly, DensePoly::from_ints(&[1, 2, 1]));
    }

    #[test]
    fn negative_leading_moves_into_sign() {
        let v: Vec<ExactInt> = (0..6).map(|n: i64| ExactInt::from(-(3 * n + 2))).collect();
        let f = fit_quasi_poly(&v, 1, 0, 3).unwrap();
        assert_eq!(f.sign, SignMode::Minus);
        assert_eq!(f.poly, DensePoly::from_ints(&[2, 3]));
    }

    #[test]
    fn needs_two_held_out_points() {
        // a line through three points is not confirmed
        assert!(fit_quasi_poly(&ints(&[1, 2, 4]), 1, 0, 5).is_none());
        assert!(fit_quasi_poly(&ints(&[1, 2, 4, 8, 16, 32]), 1, 0, 3).is_none());
    }

    #[test]
    fn interpolation_through_points() {
        let p = interpolate(&[crate::exact::rat(-2), crate::exact::rat(42), crate::exact::rat(150)]);
        assert_eq!(p, DensePoly::from_ints(&[-2, 12, 32]));
    }

    #[test]
    fn refine_to_multiple_period() {
        let f = ClosedForm::new(3, 1, SignMode::AlternatingPlus, DensePoly::from_ints(&[1, 2, 1]));
        let parts = f.refine(2);
        for n in 0..10 {
            let g = &parts[n % 2];
            assert_eq!(g.eval(n / 2), f.eval(n));
            assert_eq!(g.index(n / 2), f.index(n));
        }
        assert!(parts.iter().all(|g| !g.sign.is_alternating()));
    }

    #[test]
    fn same_function_ignores_sign_split() {
        let a = ClosedForm::new(2, 0, SignMode::Minus, DensePoly::from_ints(&[1, 1]));
        let b = ClosedForm::new(2, 0, SignMode::Plus, DensePoly::from_ints(&[-1, -1]));
        assert!(a.same_function(&b));
        let c = ClosedForm::new(2, 0, SignMode::AlternatingPlus, DensePoly::from_ints(&[-1, -1]));
        assert!(!a.same_function(&c));
    }
}
