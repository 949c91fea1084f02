//! Integer-coefficient polynomials, the working representation behind
//! [`RatFunc`](super::RatFunc) and polynomial gcds.

use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::{DensePoly, ExactInt, ExactRat};

/// Lowest degree first, trailing zeros trimmed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub(crate) struct IntPoly(Vec<ExactInt>);

impl IntPoly {
    pub fn new(mut c: Vec<ExactInt>) -> Self {
        while c.last().is_some_and(Zero::is_zero) {
            c.pop();
        }
        Self(c)
    }

    pub fn zero() -> Self {
        Self(Vec::new())
    }

    pub fn one() -> Self {
        Self(vec![ExactInt::one()])
    }

    pub fn coeffs(&self) -> &[ExactInt] {
        &self.0
    }

    pub fn is_zero(&self) -> bool {
        self.0.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.0.len() == 1 && self.0[0].is_one()
    }

    pub fn degree(&self) -> Option<usize> {
        self.0.len().checked_sub(1)
    }

    pub fn coeff(&self, i: usize) -> ExactInt {
        self.0.get(i).cloned().unwrap_or_else(ExactInt::zero)
    }

    pub fn valuation(&self) -> Option<usize> {
        self.0.iter().position(|c| !c.is_zero())
    }

    /// `p = content * primitive`, the primitive part having a positive
    /// leading coefficient. The zero polynomial gives `(0, 0)`.
    pub fn primitive_of(p: &DensePoly) -> (ExactRat, Self) {
        let lcm = p
            .coeffs()
            .iter()
            .fold(ExactInt::one(), |acc, c| acc.lcm(c.denom()));
        let ints: Vec<ExactInt> = p
            .coeffs()
            .iter()
            .map(|c| c.numer() * (&lcm / c.denom()))
            .collect();
        let (content, prim) = Self::new(ints).into_primitive();
        (ExactRat::new(content, lcm), prim)
    }

    /// Splits off the content, signed so that the primitive part has a
    /// positive leading coefficient.
    pub fn into_primitive(mut self) -> (ExactInt, Self) {
        let mut content = self.0.iter().fold(ExactInt::zero(), |acc, c| acc.gcd(c));
        if content.is_zero() {
            return (content, self);
        }
        if self.0.last().is_some_and(|c| c.is_negative()) {
            content = -content;
        }
        if !content.is_one() {
            for c in &mut self.0 {
                *c = &*c / &content;
            }
        }
        (content, self)
    }

    pub fn to_dense(&self) -> DensePoly {
        DensePoly::new(self.0.iter().cloned().map(ExactRat::from_integer).collect())
    }

    pub fn to_dense_scaled(&self, s: &ExactRat) -> DensePoly {
        DensePoly::new(
            self.0
                .iter()
                .map(|c| ExactRat::from_integer(c.clone()) * s)
                .collect(),
        )
    }

    pub fn neg(&self) -> Self {
        Self(self.0.iter().map(|c| -c).collect())
    }

    pub fn scale(&self, c: &ExactInt) -> Self {
        if c.is_zero() {
            return Self::zero();
        }
        Self(self.0.iter().map(|a| a * c).collect())
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.0.len().max(other.0.len());
        let mut out = Vec::with_capacity(n);
        for i in 0..n {
            out.push(match (self.0.get(i), other.0.get(i)) {
                (Some(a), Some(b)) => a + b,
                (Some(a), None) => a.clone(),
                (None, Some(b)) => b.clone(),
                (None, None) => unreachable!(),
            });
        }
        Self::new(out)
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_one() {
            return other.clone();
        }
        if other.is_one() {
            return self.clone();
        }
        let mut out = vec![ExactInt::zero(); self.0.len() + other.0.len() - 1];
        for (i, a) in self.0.iter().enumerate() {
            if a.is_zero() {
                continue;
            }
            for (j, b) in other.0.iter().enumerate() {
                out[i + j] += a * b;
            }
        }
        Self::new(out)
    }

    pub fn shift_up(&self, m: usize) -> Self {
        if self.is_zero() {
            return Self::zero();
        }
        let mut out = vec![ExactInt::zero(); m];
        out.extend(self.0.iter().cloned());
        Self(out)
    }

    /// Divides by `x^m`; the valuation must be at least `m`.
    pub fn shift_down(&self, m: usize) -> Self {
        debug_assert!(self.valuation().is_none_or(|v| v >= m));
        Self::new(self.0.iter().skip(m).cloned().collect())
    }

    /// `self / divisor` when the division is exact over the integers.
    pub fn div_exact(&self, divisor: &Self) -> Self {
        let dd = divisor.degree().expect("division by the zero polynomial");
        if divisor.is_one() {
            return self.clone();
        }
        let Some(ds) = self.degree() else {
            return Self::zero();
        };
        assert!(ds >= dd, "inexact polynomial division");
        let lc = &divisor.0[dd];
        let mut rem = self.0.clone();
        let mut quot = vec![ExactInt::zero(); ds - dd + 1];
        for i in (0..quot.len()).rev() {
            let (q, r) = rem[i + dd].div_rem(lc);
            assert!(r.is_zero(), "inexact polynomial division");
            if q.is_zero() {
                continue;
            }
            for (j, b) in divisor.0.iter().enumerate() {
                rem[i + j] -= &q * b;
            }
            quot[i] = q;
        }
        debug_assert!(rem.iter().all(Zero::is_zero), "inexact polynomial division");
        Self::new(quot)
    }

    /// Primitive gcd with positive leading coefficient; `1` when coprime.
    /// Both inputs must be nonzero.
    pub fn gcd(&self, other: &Self) -> Self {
        if self.degree() == Some(0) || other.degree() == Some(0) {
            return Self::one();
        }
        let (_, a) = self.clone().into_primitive();
        let (_, b) = other.clone().into_primitive();
        if a == b {
            return a;
        }
        if modular::coprime(&a.0, &b.0) {
            return Self::one();
        }
        let (mut a, mut b) = if a.0.len() >= b.0.len() { (a, b) } else { (b, a) };
        while !b.is_zero() {
            let (_, r) = pseudo_rem(&a, &b).into_primitive();
            a = b;
            b = r;
        }
        a
    }
}

/// `lc(b)^(deg a - deg b + 1) * a mod b`.
fn pseudo_rem(a: &IntPoly, b: &IntPoly) -> IntPoly {
    let db = b.0.len() - 1;
    let lc = &b.0[db];
    let mut r = a.0.clone();
    while r.len() > db {
        let dr = r.len() - 1;
        let lead = r[dr].clone();
        for c in r.iter_mut() {
            *c *= lc;
        }
        for (j, bj) in b.0.iter().enumerate() {
            r[dr - db + j] -= &lead * bj;
        }
        while r.last().is_some_and(Zero::is_zero) {
            r.pop();
        }
    }
    IntPoly(r)
}

mod modular {
    use num_bigint::{BigInt, Sign};
    use num_traits::ToPrimitive;

    use super::ExactInt;

    const PRIMES: [u64; 3] = [2_305_843_009_213_693_951, 4_294_967_291, 998_244_353];

    fn reduce(v: &[ExactInt], p: u64) -> Vec<u64> {
        let pb = BigInt::from(p);
        v.iter()
            .map(|c| {
                let m = c % &pb;
                let m = if m.sign() == Sign::Minus { m + &pb } else { m };
                m.to_u64().expect("reduced below p")
            })
            .collect()
    }

    fn mul(a: u64, b: u64, p: u64) -> u64 {
        ((a as u128 * b as u128) % p as u128) as u64
    }

    fn inv(mut a: u64, p: u64) -> u64 {
        let mut e = p - 2;
        let mut r = 1;
        while e > 0 {
            if e & 1 == 1 {
                r = mul(r, a, p);
            }
            a = mul(a, a, p);
            e >>= 1;
        }
        r
    }

    fn rem(a: &mut Vec<u64>, b: &[u64], p: u64) {
        let db = b.len() - 1;
        let lc_inv = inv(b[db], p);
        while a.len() > db {
            let da = a.len() - 1;
            let f = mul(a[da], lc_inv, p);
            if f != 0 {
                for (j, &bj) in b.iter().enumerate() {
                    let t = mul(f, bj, p);
                    let x = &mut a[da - db + j];
                    *x = if *x >= t { *x - t } else { *x + p - t };
                }
            }
            a.pop();
            while a.last() == Some(&0) {
                a.pop();
            }
        }
    }

    /// `true` only if the polynomials are certainly coprime over the
    /// rationals. A prime keeping both leading coefficients nonzero can only
    /// raise the gcd degree, so a constant gcd mod p settles it.
    pub(super) fn coprime(a: &[ExactInt], b: &[ExactInt]) -> bool {
        for &p in &PRIMES {
            let mut x = reduce(a, p);
            let mut y = reduce(b, p);
            if x.last() == Some(&0) || y.last() == Some(&0) {
                continue;
            }
            while !y.is_empty() {
                rem(&mut x, &y, p);
                std::mem::swap(&mut x, &mut y);
            }
            return x.len() == 1;
        }
        false
    }
}
