use std::fmt;

use num_traits::Zero;

use crate::exact::{ExactRat, RatFunc, SeriesError, SeriesRing, TruncatedSeries};

use super::TauError;

/// A quadratic functional equation `F = x^d / (u + x^k v F)`.
///
/// `u` and `v` have nonzero constant terms and `k >= 1`, which makes the
/// power series solution `F` unique.
#[derive(Clone, PartialEq)]
pub struct Qfe<S = RatFunc> {
    pub d: usize,
    pub k: usize,
    pub u: S,
    pub v: S,
}

impl<S: SeriesRing> Qfe<S> {
    pub fn new(d: usize, k: usize, u: S, v: S) -> Result<Self, TauError> {
        if k == 0 {
            return Err(TauError::InvalidQfe("k must be positive".into()));
        }
        if u.constant_term()?.is_zero() {
            return Err(TauError::InvalidQfe("u(0) must be nonzero".into()));
        }
        if v.constant_term()?.is_zero() {
            return Err(TauError::InvalidQfe("v(0) must be nonzero".into()));
        }
        Ok(Self { d, k, u, v })
    }

    /// Brings `F = numer / (denom + x^k w F)` into normal form by moving the
    /// valuation of `numer` into `d` and dividing through by the unit part.
    pub fn from_fraction(numer: &S, denom: &S, k: usize, w: &S) -> Result<Self, TauError> {
        let d = match numer.valuation() {
            Ok(v) => v,
            Err(SeriesError::ZeroSeries) => return Err(TauError::ZeroSolution),
            Err(e) => return Err(e.into()),
        };
        let unit = numer.shift_down(d)?;
        let u = denom.div(&unit)?;
        let v = w.div(&unit)?;
        if u.precision() == Some(0) || v.precision() == Some(0) {
            return Err(SeriesError::InsufficientPrecision {
                needed: 1,
                available: 0,
            }
            .into());
        }
        Self::new(d, k, u, v)
    }

    pub fn u0(&self) -> ExactRat {
        self.u.constant_term().expect("validated at construction")
    }

    /// Number of coefficients of the solution that the components determine.
    pub fn solution_precision(&self) -> Option<usize> {
        let pu = self.u.precision();
        let pv = self.v.precision();
        match (pu, pv) {
            (None, None) => None,
            _ => {
                let a = pu.unwrap_or(usize::MAX);
                let b = pv.map_or(usize::MAX, |p| p.saturating_add(self.k + self.d));
                Some(a.min(b).saturating_add(self.d))
            }
        }
    }

    /// The unique power series solution to `n` coefficients.
    ///
    /// With `F = x^d G` the equation reads `G (u + x^{k+d} v G) = 1`, which
    /// determines `G_n` from `G_0 .. G_{n-1}` one order at a time.
    pub fn to_series(&self, n: usize) -> Result<TruncatedSeries, TauError> {
        if let Some(avail) = self.solution_precision() {
            if n > avail {
                return Err(SeriesError::InsufficientPrecision {
                    needed: n,
                    available: avail,
                }
                .into());
            }
        }
        if n <= self.d {
            return Ok(TruncatedSeries::zero(n));
        }
        let m = n - self.d;
        let lag = self.k + self.d;
        let u = self.u.expand(m)?;
        let v = self.v.expand(m.saturating_sub(lag))?;
        let u0_inv = u[0].recip();

        let mut g: Vec<ExactRat> = Vec::with_capacity(m);
        let mut g_sq: Vec<ExactRat> = Vec::new();
        for idx in 0..m {
            let mut s = if idx == 0 {
                ExactRat::from_integer(1.into())
            } else {
                ExactRat::zero()
            };
            for i in 1..=idx {
                let ui = &u[i];
                if !ui.is_zero() {
                    s -= ui * &g[idx - i];
                }
            }
            if idx >= lag {
                let t = idx - lag;
                let w = (0..=t).fold(ExactRat::zero(), |acc, i| acc + &g[i] * &g[t - i]);
                g_sq.push(w);
                let vg = (0..=t).fold(ExactRat::zero(), |acc, j| {
                    let vj = &v[j];
                    if vj.is_zero() {
                        acc
                    } else {
                        acc + vj * &g_sq[t - j]
                    }
                });
                s -= vg;
            }
            g.push(s * &u0_inv);
        }
        let mut coeffs = vec![ExactRat::zero(); self.d];
        coeffs.extend(g);
        Ok(TruncatedSeries::new(coeffs))
    }

    /// `F (u + x^k v F) - x^d` for a candidate series, to the candidate's
    /// precision (reduced to what `u`, `v` know).
    pub fn residual(&self, f: &TruncatedSeries) -> Result<TruncatedSeries, TauError> {
        let p = f.precision();
        let u = self.u.expand(p)?;
        let v = self.v.expand(p.saturating_sub(self.k))?;
        let vf = (&v.shift(self.k as isize)? * f).truncate(p)?;
        let inner = &u + &vf;
        let lhs = f * &inner;
        let xd = TruncatedSeries::from_poly(
            &crate::exact::DensePoly::monomial(crate::exact::rat(1), self.d),
            p,
        );
        Ok(&lhs - &xd)
    }
}

impl Qfe<RatFunc> {
    /// Expands the exact components to `precision` coefficients.
    pub fn truncated(&self, precision: usize) -> Qfe<TruncatedSeries> {
        Qfe {
            d: self.d,
            k: self.k,
            u: self.u.series(precision),
            v: self.v.series(precision),
        }
    }
}

impl<S: fmt::Debug> fmt::Debug for Qfe<S> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Qfe")
            .field("d", &self.d)
            .field("k", &self.k)
            .field("u", &self.u)
            .field("v", &self.v)
            .finish()
    }
}

impl fmt::Display for Qfe<RatFunc> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "F = x^{} / ({}  +  x^{} * ({}) * F)",
            self.d, self.u, self.k, self.v
        )
    }
}
