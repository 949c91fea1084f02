use num_traits::{One, Zero};

use crate::exact::{DensePoly, ExactRat, SeriesRing};

use super::{Qfe, TauError};

/// Which branch of the transformation applies to a QFE.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
pub enum TauCase {
    /// `u(0) != 1`: rescale so the new `u` has constant term 1.
    Normalize,
    /// `u(0) = 1`, `k = 1`.
    ShiftK1,
    /// `u(0) = 1`, `k >= 2`.
    ShiftKGe2,
}

/// How the determinants of `F` and `tau(F)` are related.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum FactorKind {
    /// `H_n(tau F) = c^n H_n(F)`.
    PowerOfConstant(ExactRat),
    /// `H_{n-d-1}(tau F) = s H_n(F)` with `s = (-1)^{binom(d+1, 2)}`.
    ConstantSign(i8),
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TauRelation {
    pub case: TauCase,
    /// 0 for `Normalize`, `d + 1` for the shift cases.
    pub index_shift: usize,
    pub factor: FactorKind,
}

pub fn classify<S: SeriesRing>(q: &Qfe<S>) -> TauCase {
    if !q.u0().is_one() {
        TauCase::Normalize
    } else if q.k == 1 {
        TauCase::ShiftK1
    } else {
        TauCase::ShiftKGe2
    }
}

/// `(-1)^{binom(d+1, 2)}`: negative exactly when `d + 1 = 2, 3 (mod 4)`.
pub fn shift_sign(d: usize) -> i8 {
    match (d + 1) % 4 {
        2 | 3 => -1,
        _ => 1,
    }
}

/// One application of the transformation, returning the successor in normal
/// form together with the determinant relation.
pub fn tau_step<S: SeriesRing>(q: &Qfe<S>) -> Result<(Qfe<S>, TauRelation), TauError> {
    match classify(q) {
        TauCase::Normalize => {
            let c = q.u0();
            let c_inv = c.recip();
            let next = Qfe::new(
                q.d,
                q.k,
                q.u.scale(&c_inv),
                q.v.scale(&(&c_inv * &c_inv)),
            )?;
            let rel = TauRelation {
                case: TauCase::Normalize,
                index_shift: 0,
                factor: FactorKind::PowerOfConstant(c),
            };
            Ok((next, rel))
        }
        case @ (TauCase::ShiftK1 | TauCase::ShiftKGe2) => {
            let d = q.d;
            let (low, high) = q.u.split(d)?;
            let low_s = q.u.lift_poly(&low);
            let low_high = low_s.mul(&high);
            // D = u_L - x^{d+2} u_H
            let denom = low_s.sub(&high.shift_up(d + 2));
            let minus_one = q.u.lift_poly(&DensePoly::constant(-ExactRat::one()));
            let next = if case == TauCase::ShiftKGe2 {
                // G = (-x^{k-2} v - u_L u_H) / (D - x^{d+2} G)
                let numer = q.v.shift_up(q.k - 2).neg().sub(&low_high);
                Qfe::from_fraction(&numer, &denom, d + 2, &minus_one)?
            } else {
                // G = N / (D - x^{d+1} G) with N = -v - x u_L u_H, and
                // tau(F) = (G - G(0)) / x. Writing G = g0 + x H gives
                // H = R / (E - x^{d+2} H), R = (N - g0 D + g0^2 x^{d+1}) / x,
                // E = D - 2 g0 x^{d+1}.
                let numer = q.v.neg().sub(&low_high.shift_up(1));
                let g0 = -q.v.constant_term()?;
                let xd1 = q
                    .u
                    .lift_poly(&DensePoly::monomial(ExactRat::one(), d + 1));
                let r = numer
                    .sub(&denom.scale(&g0))
                    .add(&xd1.scale(&(&g0 * &g0)));
                debug_assert!(r.constant_term().map_or(true, |c| c.is_zero()));
                let r = r.shift_down(1)?;
                let e = denom.sub(&xd1.scale(&(&g0 + &g0)));
                Qfe::from_fraction(&r, &e, d + 2, &minus_one)?
            };
            let rel = TauRelation {
                case,
                index_shift: d + 1,
                factor: FactorKind::ConstantSign(shift_sign(d)),
            };
            Ok((next, rel))
        }
    }
}

impl TauRelation {
    /// Checks the invariants tying the case to its factor and shift.
    pub fn is_consistent(&self, d: usize) -> bool {
        match (&self.case, &self.factor) {
            (TauCase::Normalize, FactorKind::PowerOfConstant(c)) => {
                self.index_shift == 0 && !c.is_zero()
            }
            (TauCase::ShiftK1 | TauCase::ShiftKGe2, FactorKind::ConstantSign(s)) => {
                self.index_shift == d + 1 && *s == shift_sign(d)
            }
            _ => false,
        }
    }
}
