//! Products of many rational powers without intermediate blow-up.
//!
//! A determinant read off a long chain is `prod c_i^{-e_i}` over thousands
//! of normalization constants, with exponents in the thousands. The partial
//! products are enormous while the result is small, so the constants are
//! first rewritten over a basis of pairwise coprime integers and exponents
//! are summed per basis element before anything is multiplied out.

use num_bigint::{BigInt, BigUint, Sign};
use num_integer::Integer;
use num_traits::{One, ToPrimitive, Zero};
use std::collections::HashMap;
use std::sync::OnceLock;

use crate::exact::ExactRat;

const SMALL_PRIME_BOUND: u32 = 1 << 12;

fn small_primes() -> &'static [u32] {
    static PRIMES: OnceLock<Vec<u32>> = OnceLock::new();
    PRIMES.get_or_init(|| {
        let n = SMALL_PRIME_BOUND as usize;
        let mut composite = vec![false; n];
        let mut out = Vec::new();
        for i in 2..n {
            if !composite[i] {
                out.push(i as u32);
                for j in (i * i..n).step_by(i) {
                    composite[j] = true;
                }
            }
        }
        out
    })
}

/// Removes all prime factors below [`SMALL_PRIME_BOUND`], reporting each
/// with its multiplicity, and returns the cofactor.
fn strip_small_primes(x: &BigUint, mut found: impl FnMut(u32, i64)) -> BigUint {
    let mut big = x.clone();
    let mut primes = small_primes().iter();
    // wide numbers: divide in BigUint until they fit a u128
    while big.bits() > 128 {
        let Some(&p) = primes.next() else {
            return big;
        };
        let mut e = 0;
        while (&big % p).is_zero() {
            big /= p;
            e += 1;
        }
        if e > 0 {
            found(p, e);
        }
    }
    let mut y = big.to_u128().expect("at most 128 bits");
    for &p in primes {
        let pp = u128::from(p);
        if pp * pp > y {
            break;
        }
        let mut e = 0;
        while y.is_multiple_of(pp) {
            y /= pp;
            e += 1;
        }
        if e > 0 {
            found(p, e);
        }
    }
    if y > 1 && y < u128::from(SMALL_PRIME_BOUND) {
        found(y as u32, 1);
        y = 1;
    }
    BigUint::from(y)
}

/// Pairwise coprime integers `> 1` such that every inserted number is a
/// product of powers of them.
///
/// Small primes are found by trial division; only the remaining cofactors
/// go through gcd refinement, tested first against the product of all
/// large elements. Refined-away elements stay as `1` so that indices never
/// move.
#[derive(Debug, Clone, Default)]
pub struct CoprimeBasis {
    elems: Vec<BigUint>,
    small: HashMap<u32, usize>,
    large: Vec<usize>,
    large_index: HashMap<BigUint, usize>,
    large_product: BigUint,
}

impl CoprimeBasis {
    pub fn new() -> Self {
        Self {
            large_product: BigUint::one(),
            ..Self::default()
        }
    }

    /// Basis elements by index; entries equal to `1` are retired.
    pub fn elems(&self) -> &[BigUint] {
        &self.elems
    }

    pub fn len(&self) -> usize {
        self.elems.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elems.is_empty()
    }

    /// Refines the basis so that `x` factors over it.
    pub fn insert(&mut self, x: &BigUint) {
        if x.is_zero() {
            return;
        }
        let mut primes = Vec::new();
        let rest = strip_small_primes(x, |p, _| primes.push(p));
        for p in primes {
            if !self.small.contains_key(&p) {
                self.small.insert(p, self.elems.len());
                self.elems.push(BigUint::from(p));
            }
        }
        self.insert_large(rest);
    }

    fn push_large(&mut self, y: BigUint) {
        let i = self.elems.len();
        self.large.push(i);
        self.large_product *= &y;
        self.large_index.insert(y.clone(), i);
        self.elems.push(y);
    }

    fn retire_large(&mut self, pos: usize) -> BigUint {
        let i = self.large.swap_remove(pos);
        let b = std::mem::replace(&mut self.elems[i], BigUint::one());
        self.large_index.remove(&b);
        self.large_product /= &b;
        b
    }

    fn insert_large(&mut self, x: BigUint) {
        let mut work = vec![x];
        while let Some(y) = work.pop() {
            if y.is_one() || self.large_index.contains_key(&y) {
                continue;
            }
            let shared = (&self.large_product % &y).gcd(&y);
            if shared.is_one() {
                self.push_large(y);
                continue;
            }
            if self.large_index.contains_key(&shared) {
                work.push(&y / &shared);
                continue;
            }
            let (pos, g) = self
                .large
                .iter()
                .enumerate()
                .find_map(|(pos, &i)| {
                    let g = y.gcd(&self.elems[i]);
                    (!g.is_one()).then_some((pos, g))
                })
                .expect("a shared factor divides some element");
            let b = self.retire_large(pos);
            // y*b strictly decreases, so this terminates
            work.push(&b / &g);
            work.push(&y / &g);
            work.push(g);
        }
    }

    /// Exponents of `x` over the basis; `None` if `x` does not factor.
    pub fn factor(&self, x: &BigUint) -> Option<Vec<(usize, i64)>> {
        let mut out = Vec::new();
        let mut missing = false;
        let mut rest = strip_small_primes(x, |p, e| match self.small.get(&p) {
            Some(&i) => out.push((i, e)),
            None => missing = true,
        });
        if missing {
            return None;
        }
        if let Some(&i) = self.large_index.get(&rest) {
            out.push((i, 1));
            return Some(out);
        }
        for &i in &self.large {
            if rest.is_one() {
                break;
            }
            let b = &self.elems[i];
            let mut e = 0i64;
            loop {
                let (q, r) = rest.div_rem(b);
                if !r.is_zero() {
                    break;
                }
                rest = q;
                e += 1;
            }
            if e > 0 {
                out.push((i, e));
            }
        }
        rest.is_one().then_some(out)
    }
}

/// A nonzero rational written over a [`CoprimeBasis`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Factored {
    pub negative: bool,
    /// Positive exponents for the numerator, negative for the denominator.
    pub exps: Vec<(usize, i64)>,
}

pub fn factor_rational(basis: &CoprimeBasis, c: &ExactRat) -> Factored {
    let num = c.numer().magnitude();
    let den = c.denom().magnitude();
    let mut exps = basis.factor(num).expect("numerator factors over basis");
    exps.extend(
        basis
            .factor(den)
            .expect("denominator factors over basis")
            .into_iter()
            .map(|(i, e)| (i, -e)),
    );
    Factored {
        negative: c.numer().sign() == Sign::Minus,
        exps,
    }
}

/// Accumulates `prod c^e` over factored constants.
#[derive(Debug, Clone)]
pub struct ExponentAccumulator {
    exps: Vec<i64>,
    touched: Vec<usize>,
    negative: bool,
}

impl ExponentAccumulator {
    pub fn new(basis_len: usize) -> Self {
        Self {
            exps: vec![0; basis_len],
            touched: Vec::new(),
            negative: false,
        }
    }

    /// Multiplies by `c^e`.
    pub fn push(&mut self, c: &Factored, e: i64) {
        if c.negative && e.rem_euclid(2) == 1 {
            self.negative = !self.negative;
        }
        for &(i, k) in &c.exps {
            if self.exps[i] == 0 {
                self.touched.push(i);
            }
            self.exps[i] += k * e;
        }
    }

    pub fn negate(&mut self) {
        self.negative = !self.negative;
    }

    /// Multiplies out and resets the accumulator.
    pub fn take(&mut self, basis: &CoprimeBasis) -> ExactRat {
        let mut num = BigUint::one();
        let mut den = BigUint::one();
        self.touched.sort_unstable();
        self.touched.dedup();
        for &i in &self.touched {
            let e = std::mem::take(&mut self.exps[i]);
            match e.cmp(&0) {
                std::cmp::Ordering::Greater => num *= basis.elems[i].pow(e as u32),
                std::cmp::Ordering::Less => den *= basis.elems[i].pow((-e) as u32),
                std::cmp::Ordering::Equal => {}
            }
        }
        self.touched.clear();
        let sign = if std::mem::take(&mut self.negative) {
            Sign::Minus
        } else {
            Sign::Plus
        };
        ExactRat::new(BigInt::from_biguint(sign, num), BigInt::from(den))
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::exact::ratio;

    #[test]
    fn basis_is_pairwise_coprime() {
        let mut b = CoprimeBasis::new();
        for x in [12u32, 18, 35, 49, 6, 1] {
            b.insert(&BigUint::from(x));
        }
        for i in 0..b.len() {
            for j in i + 1..b.len() {
                assert!(b.elems()[i].gcd(&b.elems()[j]).is_one());
            }
        }
        for x in [12u32, 18, 35, 49, 6] {
            assert!(b.factor(&BigUint::from(x)).is_some());
        }
    }

    #[test]
    fn large_cofactors_are_refined() {
        let p = BigUint::from(1_000_003u64);
        let q = BigUint::from(998_244_353u64);
        let r = BigUint::from(65_537u32);
        let big = BigUint::from(2u32).pow(130u32) * &p * &p * &q;
        let mut b = CoprimeBasis::new();
        b.insert(&(&p * &q));
        b.insert(&big);
        b.insert(&(&q * &r));
        b.insert(&(&r * &r * &p));
        let live: Vec<_> = b.elems().iter().filter(|e| !e.is_one()).collect();
        for i in 0..live.len() {
            for j in i + 1..live.len() {
                assert!(live[i].gcd(live[j]).is_one());
            }
        }
        let f = b.factor(&big).unwrap();
        let back = f
            .iter()
            .fold(BigUint::one(), |acc, &(i, e)| acc * b.elems()[i].pow(e as u32));
        assert_eq!(back, big);
        assert!(b.factor(&BigUint::from(7u32)).is_none());
    }

    #[test]
    fn accumulated_product() {
        let mut b = CoprimeBasis::new();
        let cs = [ratio(-3, 2), ratio(4, 9), ratio(5, 6)];
        for c in &cs {
            b.insert(c.numer().magnitude());
            b.insert(c.denom().magnitude());
        }
        let f: Vec<_> = cs.iter().map(|c| factor_rational(&b, c)).collect();
        let mut acc = ExponentAccumulator::new(b.len());
        acc.push(&f[0], 3);
        acc.push(&f[1], -2);
        acc.push(&f[2], 1);
        let want = num_traits::pow(cs[0].clone(), 3)
            * num_traits::pow(cs[1].recip(), 2)
            * cs[2].clone();
        assert_eq!(acc.take(&b), want);
        // reset
        assert_eq!(acc.take(&b), crate::exact::rat(1));
    }
}
