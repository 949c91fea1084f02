use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::exact::{ExactInt, ExactRat, RatFunc, SeriesRing, TruncatedSeries};
use crate::motzkin;
use crate::oracle::{hankel_det, HankelSpec};

use super::factor::{factor_rational, CoprimeBasis, ExponentAccumulator, Factored};
use super::{FactorKind, TauChain, TauError};

/// How a walk for one index finished.
#[derive(Debug, Clone, PartialEq)]
pub enum WalkEnd {
    /// The remaining index reached zero.
    Empty,
    /// Direct determinant of order `order` of the series at `node`.
    Base { node: usize, order: usize },
}

/// The bookkeeping for one `H_n`: which normalization constants enter with
/// which exponent, the accumulated sign, and the terminal case.
#[derive(Debug, Clone, PartialEq)]
pub struct Walk {
    pub n: usize,
    pub negative: bool,
    /// `(relation index, exponent)`: contributes `c^{-exponent}`.
    pub normalizations: Vec<(usize, usize)>,
    pub end: WalkEnd,
}

/// Follows the chain from node 0 at index `n`.
///
/// Normalization multiplies by `c^{-idx}`, a shift step multiplies by its
/// sign and lowers the index by `d + 1`. The walk stops when the index hits
/// zero or is too small for the next shift (or the chain has ended), leaving
/// a small determinant of the current node.
pub fn walk<S: SeriesRing>(chain: &TauChain<S>, n: usize) -> Result<Walk, TauError> {
    let mut w = Walk {
        n,
        negative: false,
        normalizations: Vec::new(),
        end: WalkEnd::Empty,
    };
    let mut idx = n;
    let mut node = 0usize;
    loop {
        if idx == 0 {
            return Ok(w);
        }
        let Some(rel) = chain.relations().get(node) else {
            if chain.is_exhausted() {
                w.end = WalkEnd::Base { node, order: idx };
                return Ok(w);
            }
            return Err(TauError::ChainTooShort { n });
        };
        match &rel.factor {
            FactorKind::PowerOfConstant(_) => {
                w.normalizations.push((node, idx));
            }
            FactorKind::ConstantSign(s) => {
                if idx < rel.index_shift {
                    w.end = WalkEnd::Base { node, order: idx };
                    return Ok(w);
                }
                if *s < 0 {
                    w.negative = !w.negative;
                }
                idx -= rel.index_shift;
            }
        }
        node += 1;
    }
}

/// Read-only evaluation context over a built chain prefix.
pub struct ChainEvaluator<'a, S> {
    chain: &'a TauChain<S>,
    basis: CoprimeBasis,
    /// Indexed by relation; `None` for shift relations.
    factored: Vec<Option<Factored>>,
}

impl<'a, S: SeriesRing> ChainEvaluator<'a, S> {
    pub fn new(chain: &'a TauChain<S>) -> Self {
        let mut basis = CoprimeBasis::new();
        for rel in chain.relations() {
            if let FactorKind::PowerOfConstant(c) = &rel.factor {
                basis.insert(c.numer().magnitude());
                basis.insert(c.denom().magnitude());
            }
        }
        let factored = chain
            .relations()
            .iter()
            .map(|rel| match &rel.factor {
                FactorKind::PowerOfConstant(c) => Some(factor_rational(&basis, c)),
                FactorKind::ConstantSign(_) => None,
            })
            .collect();
        Self {
            chain,
            basis,
            factored,
        }
    }

    fn base_value(&self, end: &WalkEnd, n: usize) -> Result<ExactRat, TauError> {
        match end {
            WalkEnd::Empty => Ok(ExactRat::one()),
            WalkEnd::Base { node, order } => {
                let q = &self.chain.nodes()[*node];
                // orders 1..=d vanish: the matrix is zero above its anti-diagonal
                if *order <= q.d {
                    return Ok(ExactRat::zero());
                }
                let series = q.to_series(2 * order - 1).map_err(|e| match e {
                    TauError::Series(_) => TauError::PrecisionExhausted {
                        n,
                        precision: q.solution_precision().unwrap_or(0),
                        retries: 0,
                    },
                    other => other,
                })?;
                Ok(hankel_det(HankelSpec::new(series.coeffs(), *order))?)
            }
        }
    }

    pub fn evaluate(&self, w: &Walk) -> Result<ExactRat, TauError> {
        let base = self.base_value(&w.end, w.n)?;
        if base.is_zero() {
            return Ok(base);
        }
        let mut acc = ExponentAccumulator::new(self.basis.len());
        for &(rel, e) in &w.normalizations {
            let f = self.factored[rel].as_ref().expect("normalization relation");
            acc.push(f, -(e as i64));
        }
        if w.negative {
            acc.negate();
        }
        Ok(acc.take(&self.basis) * base)
    }

    pub fn hankel(&self, n: usize) -> Result<ExactRat, TauError> {
        self.evaluate(&walk(self.chain, n)?)
    }
}

/// `H_0 ..= H_max` of the chain root, extending the chain as needed.
pub fn hankel_sequence<S: SeriesRing>(
    chain: &mut TauChain<S>,
    max: usize,
) -> Result<Vec<ExactRat>, TauError> {
    chain.extend_past_shift(max)?;
    let eval = ChainEvaluator::new(chain);
    (0..=max)
        .into_par_iter()
        .map(|n| eval.hankel(n))
        .collect()
}

/// Series carrier used for the chain of a Motzkin power.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq, serde::Serialize, serde::Deserialize)]
pub enum Backend {
    /// Rational-function components; never runs out of coefficients.
    #[default]
    Exact,
    /// Truncated series starting at `initial` coefficients (or `max + 12r`
    /// when `None`), doubling on exhaustion up to `cap`.
    Truncated { initial: Option<usize>, cap: usize },
}

/// Result of a determinant run, with the precision bookkeeping.
#[derive(Debug, Clone, PartialEq)]
pub struct HankelRun {
    pub values: Vec<ExactInt>,
    /// Working precision of the successful attempt; `None` when exact.
    pub precision: Option<usize>,
    pub retries: usize,
}

/// `H_0 ..= H_max` of `M(x)^r` through the exact chain.
pub fn hankel_via_tau(r: u32, max: usize) -> Result<Vec<ExactInt>, TauError> {
    Ok(hankel_via_tau_with(r, max, Backend::Exact)?.values)
}

pub fn hankel_via_tau_with(r: u32, max: usize, backend: Backend) -> Result<HankelRun, TauError> {
    match backend {
        Backend::Exact => {
            let mut chain = TauChain::new(motzkin::derive_qfe(r)?);
            let values = integral(hankel_sequence::<RatFunc>(&mut chain, max)?)?;
            Ok(HankelRun {
                values,
                precision: None,
                retries: 0,
            })
        }
        Backend::Truncated { initial, cap } => {
            let exact = motzkin::derive_qfe(r)?;
            let mut precision = initial.unwrap_or(max + 12 * r as usize).max(2);
            let mut retries = 0;
            loop {
                let root = exact.truncated(precision);
                let mut chain: TauChain<TruncatedSeries> = TauChain::new(root);
                match hankel_sequence(&mut chain, max) {
                    Ok(v) => {
                        return Ok(HankelRun {
                            values: integral(v)?,
                            precision: Some(precision),
                            retries,
                        })
                    }
                    Err(TauError::PrecisionExhausted { n, .. }) => {
                        log::debug!("r = {r}: precision {precision} exhausted at n = {n}");
                        if precision >= cap {
                            return Err(TauError::PrecisionExhausted {
                                n,
                                precision,
                                retries,
                            });
                        }
                        precision = (precision * 2).min(cap);
                        retries += 1;
                    }
                    Err(e) => return Err(e),
                }
            }
        }
    }
}

/// Determinants of one Motzkin power, with the exact chain kept so the
/// table can be extended without starting over.
#[derive(Debug, Clone)]
pub struct PowerTable {
    r: u32,
    chain: TauChain<RatFunc>,
    values: Vec<ExactInt>,
}

impl PowerTable {
    pub fn new(r: u32) -> Result<Self, TauError> {
        Ok(Self {
            r,
            chain: TauChain::new(motzkin::derive_qfe(r)?),
            values: Vec::new(),
        })
    }

    pub fn r(&self) -> u32 {
        self.r
    }

    pub fn chain(&self) -> &TauChain<RatFunc> {
        &self.chain
    }

    /// `H_0 ..` as computed so far.
    pub fn values(&self) -> &[ExactInt] {
        &self.values
    }

    /// Makes `H_0 ..= H_max` available.
    pub fn extend_to(&mut self, max: usize) -> Result<&[ExactInt], TauError> {
        let have = self.values.len();
        if max < have {
            return Ok(&self.values[..=max]);
        }
        self.chain.extend_past_shift(max)?;
        let eval = ChainEvaluator::new(&self.chain);
        let fresh: Vec<ExactRat> = (have..=max)
            .into_par_iter()
            .map(|n| eval.hankel(n))
            .collect::<Result<_, _>>()?;
        let fresh = integral(fresh).map_err(|e| match e {
            TauError::NonIntegral { n, value } => TauError::NonIntegral { n: n + have, value },
            other => other,
        })?;
        self.values.extend(fresh);
        Ok(&self.values)
    }
}

fn integral(values: Vec<ExactRat>) -> Result<Vec<ExactInt>, TauError> {
    values
        .into_iter()
        .enumerate()
        .map(|(n, h)| {
            if h.is_integer() {
                Ok(h.to_integer())
            } else {
                Err(TauError::NonIntegral {
                    n,
                    value: crate::exact::format_rat(&h),
                })
            }
        })
        .collect()
}
