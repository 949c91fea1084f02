use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::exact::{ExactInt, SeriesRing};
use crate::tau::{ChainPeriod, TauChain};

use super::fit::{fit_quasi_poly, ClosedForm};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PeriodSearch {
    /// Largest period tried; defaults to what `min_periods` allows.
    pub q_max: Option<usize>,
    /// Degree cap per residue class; defaults to the data limit.
    pub deg_max: Option<usize>,
    /// Complete periods required in the data for a candidate.
    pub min_periods: usize,
}

impl Default for PeriodSearch {
    fn default() -> Self {
        Self {
            q_max: None,
            deg_max: None,
            min_periods: 5,
        }
    }
}

/// A period with a closed form for every residue class.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PeriodFit {
    pub q: usize,
    pub forms: Vec<ClosedForm>,
}

impl PeriodFit {
    pub fn max_degree(&self) -> Option<usize> {
        self.forms.iter().filter_map(|f| f.poly.degree()).max()
    }
}

/// Value period of a determinant sequence, and the structural period of the
/// chain that produced it when known. The two need not agree.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PeriodReport {
    pub value: Option<PeriodFit>,
    pub chain: Option<ChainPeriod>,
}

impl PeriodReport {
    pub fn period(&self) -> Option<usize> {
        self.value.as_ref().map(|v| v.q)
    }

    pub fn with_chain<S: SeriesRing>(mut self, chain: &TauChain<S>) -> Self {
        self.chain = chain.period(3);
        self
    }
}

/// Closed forms for all residues mod `q`, or `None` if some class has none.
pub fn fit_all_residues(values: &[ExactInt], q: usize, deg_max: usize) -> Option<Vec<ClosedForm>> {
    (0..q)
        .into_par_iter()
        .map(|j| fit_quasi_poly(values, q, j, deg_max))
        .collect()
}

/// Smallest `q` whose residue classes all admit a quasi-polynomial fit.
///
/// Only candidates with `min_periods` complete periods in `values` are
/// tried. Each class must be confirmed by two samples beyond its
/// interpolation points, so the default degree cap is the number of samples
/// in the shortest class minus three.
pub fn detect_period(values: &[ExactInt], opts: &PeriodSearch) -> PeriodReport {
    let min_periods = opts.min_periods.max(1);
    let q_max = opts.q_max.unwrap_or(values.len() / min_periods);
    for q in 1..=q_max.min(values.len() / min_periods) {
        let shortest = values.len() / q;
        let Some(cap) = shortest.checked_sub(3) else {
            break;
        };
        let deg_max = opts.deg_max.map_or(cap, |d| d.min(cap));
        if let Some(forms) = fit_all_residues(values, q, deg_max) {
            return PeriodReport {
                value: Some(PeriodFit { q, forms }),
                chain: None,
            };
        }
    }
    PeriodReport::default()
}

/// Minimum sequence length for [`detect_period`] to confirm period `q` with
/// classes up to degree `deg`.
pub fn samples_needed(q: usize, deg: usize, min_periods: usize) -> usize {
    q * (deg + 3).max(min_periods)
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeriodSummary {
    pub value_period: Option<usize>,
    pub max_degree: Option<usize>,
    pub chain_nodes: Option<usize>,
    pub chain_shift_steps: Option<usize>,
    pub chain_index_shift: Option<usize>,
}

impl From<&PeriodReport> for PeriodSummary {
    fn from(r: &PeriodReport) -> Self {
        Self {
            value_period: r.period(),
            max_degree: r.value.as_ref().and_then(PeriodFit::max_degree),
            chain_nodes: r.chain.map(|c| c.nodes),
            chain_shift_steps: r.chain.map(|c| c.shift_steps),
            chain_index_shift: r.chain.map(|c| c.index_shift),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: impl IntoIterator<Item = i64>) -> Vec<ExactInt> {
        v.into_iter().map(ExactInt::from).collect()
    }

    #[test]
    fn period_of_sign_table() {
        let table = [1, 1, 1, 1, 0, 0, -1, -1, -1, -1, 0, 0];
        let v = ints((0..121).map(|n| table[n % 12]));
        let p = detect_period(&v, &PeriodSearch::default());
        let fit = p.value.unwrap();
        assert_eq!(fit.q, 6);
        assert!(fit.forms[0].sign.is_alternating());
    }

    #[test]
    fn period_one_polynomial() {
        let v = ints((0..20).map(|n| n * n - 3));
        let p = detect_period(&v, &PeriodSearch::default());
        assert_eq!(p.period(), Some(1));
    }

    #[test]
    fn not_found_without_enough_data() {
        let v = ints([1, 5, 2, 8, 3]);
        assert_eq!(detect_period(&v, &PeriodSearch::default()).period(), None);
    }
}
