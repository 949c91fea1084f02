//! The one-parameter families `F_1^(p)` that appear one step into the τ
//! chains of `M(x)^3` and `M(x)^4`, checked at concrete integer `p`.
//!
//! Each family is given as `F = numer / (denom + x^2 w F)` with polynomial
//! coefficients in `p`. Determinants are computed by the Bareiss oracle on
//! the series solution, so these checks are independent of the τ engine.

use num_traits::One;

use crate::exact::{format_rat, rat, DensePoly, ExactRat, RatFunc};
use crate::motzkin::conv_power_ints;
use crate::oracle::hankel_table;
use crate::tau::{Qfe, TauError};

use super::report::{Counterexample, VerificationReport};

pub const FAMILY_POWERS: [u32; 2] = [3, 4];

/// Index drop of one period of the family recursion.
pub fn recursion_shift(r: u32) -> usize {
    match r {
        3 => 3,
        4 => 12,
        _ => panic!("no family for r = {r}"),
    }
}

/// Multiplier `c(p)` in `H_{k-1}(F^p) = c(p) H_{k-1-shift}(F^{p+1})`.
pub fn recursion_factor(r: u32, p: i64) -> ExactRat {
    match r {
        3 => -(ExactRat::new((p + 1).into(), p.into())).pow(2),
        4 => ExactRat::one(),
        _ => panic!("no family for r = {r}"),
    }
}

fn poly(coeffs: &[i64]) -> DensePoly {
    DensePoly::from_ints(coeffs)
}

/// `(numer, denom, w)` of the family member at `p`.
pub fn family_parts(r: u32, p: i64) -> (DensePoly, DensePoly, DensePoly) {
    match r {
        3 => {
            let q = p * (p + 1);
            (
                poly(&[0, q, -3 * q, 0, -1]),
                poly(&[-p * p, 3 * p * p, 0, 2 * p]),
                poly(&[p * p]),
            )
        }
        4 => {
            let n = [
                32 * p * p - 52 * p + 18,
                -128 * p * p + 200 * p - 68,
                1024 * p.pow(4) - 3328 * p.pow(3) + 3920 * p * p - 1944 * p + 345,
                -512 * p.pow(3) + 1216 * p * p - 928 * p + 220,
                96 * p * p - 148 * p + 52,
                -8 * p + 8,
                1,
            ];
            (
                poly(&n.map(|c| -c)),
                poly(&[-1, 4, -64 * p * p + 104 * p - 38, 16 * p - 12, -1]),
                poly(&[1]),
            )
        }
        _ => panic!("no family for r = {r}"),
    }
}

pub fn family_qfe(r: u32, p: i64) -> Result<Qfe<RatFunc>, TauError> {
    let (numer, denom, w) = family_parts(r, p);
    Qfe::from_fraction(
        &RatFunc::from_poly(numer),
        &RatFunc::from_poly(denom),
        2,
        &RatFunc::from_poly(w),
    )
}

/// `H_0 ..= H_max` of the family member at `p`, by the oracle.
pub fn family_hankels(r: u32, p: i64, max: usize) -> Result<Vec<ExactRat>, TauError> {
    let s = family_qfe(r, p)?.to_series(2 * max + 1)?;
    Ok(hankel_table(s.coeffs(), max).expect("enough coefficients"))
}

/// The tabulated `H_j(F_1^(n+1))` for `j` in one period.
pub fn initial_values(r: u32, n: i64) -> Vec<ExactRat> {
    let i = |v: i64| rat(v);
    match r {
        3 => vec![
            i(1),
            i(0),
            ExactRat::new((n + 2).into(), (n + 1).into()).pow(2),
        ],
        4 => {
            let m = n + 1;
            vec![
                i(1),
                i(32 * m * m - 52 * n - 34),
                i(-2 * (8 * n + 9) * (2 * n + 1)),
                i(-1),
                i(-1),
                i(4 * m * (8 * n + 5)),
                i(64 * m * m),
                i(0),
                i(0),
                i(-64 * m * m),
                i(-4 * m * (8 * n + 11)),
                i(1),
                i(1),
            ]
        }
        _ => panic!("no family for r = {r}"),
    }
}

#[derive(Debug, Clone, Copy)]
pub struct FamilyRun {
    pub p_max: i64,
    /// Largest `k` in the recursion `H_{k-1}(F^p) = c(p) H_{k-1-shift}(F^{p+1})`.
    pub k_max: usize,
}

impl Default for FamilyRun {
    fn default() -> Self {
        Self { p_max: 10, k_max: 20 }
    }
}

fn mismatch(report: &mut VerificationReport, r: u32, n: usize, want: &ExactRat, got: &ExactRat) {
    if want != got {
        report.refute(Counterexample {
            r,
            n,
            expected: format_rat(want),
            actual: format_rat(got),
        });
    }
}

/// `H_k(F(x,r)) = H_{k-1}(F_1^(1))` for `1 <= k <= k_max`.
pub fn check_link(r: u32, run: &FamilyRun) -> Result<VerificationReport, TauError> {
    let mut report = VerificationReport::new(format!("family-r{r}-link"), (r, r), (1, run.k_max));
    let coeffs = conv_power_ints(r, 2 * run.k_max + 1).expect("positive power");
    let seq: Vec<ExactRat> = coeffs.into_iter().map(ExactRat::from_integer).collect();
    let power = hankel_table(&seq, run.k_max).expect("enough coefficients");
    let family = family_hankels(r, 1, run.k_max - 1)?;
    for k in 1..=run.k_max {
        mismatch(&mut report, r, k, &power[k], &family[k - 1]);
    }
    Ok(report)
}

/// The recursion across `p = 1..=p_max`; counterexample indices are `k - 1`.
pub fn check_recursion(r: u32, run: &FamilyRun) -> Result<VerificationReport, TauError> {
    let shift = recursion_shift(r);
    let mut report =
        VerificationReport::new(format!("family-r{r}-recursion"), (r, r), (shift, run.k_max - 1));
    let tables: Vec<Vec<ExactRat>> = (1..=run.p_max + 1)
        .map(|p| family_hankels(r, p, run.k_max - 1))
        .collect::<Result<_, _>>()?;
    for p in 1..=run.p_max {
        let (here, next) = (&tables[p as usize - 1], &tables[p as usize]);
        let c = recursion_factor(r, p);
        for k in shift + 1..=run.k_max {
            mismatch(&mut report, r, k - 1, &(&c * &next[k - 1 - shift]), &here[k - 1]);
        }
    }
    report
        .fitted_constants
        .insert(format!("r{r}:p-range"), format!("1..={}", run.p_max));
    Ok(report)
}

/// The tabulated initial values at `p = n + 1` for `n < p_max`; counterexample
/// `n` fields hold `j`, with `p` in the expected string.
pub fn check_initial_values(r: u32, run: &FamilyRun) -> Result<VerificationReport, TauError> {
    let width = initial_values(r, 0).len();
    let mut report =
        VerificationReport::new(format!("family-r{r}-initial-values"), (r, r), (0, width - 1));
    for n in 0..run.p_max {
        let table = initial_values(r, n);
        let actual = family_hankels(r, n + 1, width - 1)?;
        for (j, (want, got)) in table.iter().zip(&actual).enumerate() {
            if want != got {
                report.refute(Counterexample {
                    r,
                    n: j,
                    expected: format!("{} at p = {}", format_rat(want), n + 1),
                    actual: format_rat(got),
                });
            }
        }
    }
    Ok(report)
}

/// Link, recursion and initial values for both families.
pub fn verify_families(run: &FamilyRun) -> Result<Vec<VerificationReport>, TauError> {
    let mut out = Vec::new();
    for r in FAMILY_POWERS {
        out.push(check_link(r, run)?);
        out.push(check_recursion(r, run)?);
        out.push(check_initial_values(r, run)?);
    }
    Ok(out)
}
