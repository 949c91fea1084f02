//! Conjectured patterns in `H_n(M(x)^r)` across `r`.
//!
//! For `r` divisible by 3:
//! * `leading-pair`: `H_{rn} = H_{rn+1} = ±(n+1)^{r-1}`, one sign mode per `r`;
//!   `leading-pair-literal` insists on the sign `(-1)^n`.
//! * `shifted-pair-sum`: `H_{rn+2} + H_{rn-1} = 9 α (n+1)^{r-1}` with
//!   `|α| = r(r-3)/18`.
//!
//! Otherwise, with `s = 3r`:
//! * `unit-corners`: each of `H_{sn}, H_{sn+1}, H_{sn+r}, H_{sn+r+1}` is a
//!   unit with its own sign mode; `unit-corners-common` asks for one shared
//!   sign mode.
//! * `zero-pair`: `H_{sn+2r} = H_{sn+2r+1} = 0`.
//! * `power-pair-termwise`: `H_{sn+2r-1}` and `H_{sn+2r+2}` are each
//!   `±(2r(n+1))^{r-2}`; `power-pair-sum` reads the pair as a sum equal to
//!   `β (2r(n+1))^{r-2}`.
//! * `pair-sum`: `H_{sn+2} + H_{sn-1} = γ r(r-3)/2` with `|γ| = 1`.
//!
//! And for every `r`, `shifted-period`: the value period is `r` when `3 | r`
//! and `3r` otherwise.
//!
//! Sign symbols may be constant or alternate with `n`. Their fitted values
//! are recorded per `r`; an alternating one is noted since the patterns
//! are usually stated with constant signs.

use num_traits::{Signed, Zero};
use rayon::prelude::*;

use crate::exact::{format_rat, ExactInt, ExactRat};
use crate::tau::{PowerTable, TauError};

use super::fit::SignMode;
use super::period::{detect_period, PeriodReport, PeriodSearch};
use super::report::{Counterexample, Status, VerificationReport};

/// Identity targets, in report order.
pub const MULTIPLE_OF_THREE_TARGETS: [&str; 3] = ["leading-pair", "leading-pair-literal", "shifted-pair-sum"];
pub const OTHER_TARGETS: [&str; 6] = [
    "unit-corners",
    "unit-corners-common",
    "zero-pair",
    "power-pair-termwise",
    "power-pair-sum",
    "pair-sum",
];
pub const PERIOD_TARGET: &str = "shifted-period";

/// Alternative readings, reported alongside the primary targets but not
/// expected to hold.
pub const ALTERNATE_READINGS: [&str; 3] = ["leading-pair-literal", "unit-corners-common", "power-pair-sum"];

pub fn is_alternate_reading(target: &str) -> bool {
    ALTERNATE_READINGS.contains(&target)
}

/// Smallest power the patterns are stated for.
pub const MIN_POWER: u32 = 2;

/// The conjectured value period.
pub fn expected_period(r: u32) -> usize {
    if r.is_multiple_of(3) {
        r as usize
    } else {
        3 * r as usize
    }
}

/// Indices needed for five complete periods.
pub fn default_n_max(r: u32) -> usize {
    5 * expected_period(r) + 2
}

fn int(n: i64) -> ExactRat {
    ExactRat::from_integer(ExactInt::from(n))
}

fn pow(base: i64, e: u32) -> ExactRat {
    ExactRat::from_integer(num_traits::pow(ExactInt::from(base), e as usize))
}

/// One observation `value = sign(n) * c * base` at sequence index `index`.
struct Point {
    n: usize,
    index: usize,
    value: ExactRat,
    base: ExactRat,
}

fn signed_constant(mode: SignMode, c: &ExactRat) -> String {
    if c.is_zero() {
        "0".to_string()
    } else if *c == int(1) {
        mode.to_string()
    } else {
        let c = format_rat(c);
        match mode {
            SignMode::Plus => format!("+{c}"),
            SignMode::Minus => format!("-{c}"),
            _ => format!("{mode}*{c}"),
        }
    }
}

/// Fits a sign mode and magnitude to `points`, with the magnitude pinned
/// when `magnitude` is given. Magnitude mismatches and sign mismatches
/// against the best mode are counterexamples.
fn fit_symbol(
    report: &mut VerificationReport,
    r: u32,
    symbol: &str,
    points: &[Point],
    magnitude: Option<ExactRat>,
) -> Option<(SignMode, ExactRat)> {
    let first = points.first()?;
    let c = magnitude.unwrap_or_else(|| (&first.value / &first.base).abs());
    let mut ok = true;
    for p in points {
        let want = &c * p.base.abs();
        if p.value.abs() != want {
            ok = false;
            report.refute(Counterexample {
                r,
                n: p.index,
                expected: format!("±{}", format_rat(&want)),
                actual: format_rat(&p.value),
            });
        }
    }
    if c.is_zero() {
        report.fitted_constants.insert(format!("r{r}:{symbol}"), "0".into());
        return ok.then_some((SignMode::Plus, c));
    }
    let sign_of = |p: &Point| (&p.value / &p.base).is_positive();
    let usable: Vec<&Point> = points.iter().filter(|p| !p.value.is_zero()).collect();
    let mismatches = |mode: SignMode| {
        usable
            .iter()
            .filter(|p| (mode.at(p.n) > 0) != sign_of(p))
            .count()
    };
    let best = SignMode::ALL
        .into_iter()
        .min_by_key(|&m| mismatches(m))
        .expect("four modes");
    for p in usable.iter().filter(|p| (best.at(p.n) > 0) != sign_of(p)) {
        ok = false;
        let want = &c * &p.base * int(best.at(p.n).into());
        report.refute(Counterexample {
            r,
            n: p.index,
            expected: format_rat(&want),
            actual: format_rat(&p.value),
        });
    }
    if ok {
        report
            .fitted_constants
            .insert(format!("r{r}:{symbol}"), signed_constant(best, &c));
        if best.is_alternating() {
            report
                .notes
                .push(format!("r = {r}: {symbol} alternates with n"));
        }
        Some((best, c))
    } else {
        None
    }
}

fn finish(mut report: VerificationReport, points: usize) -> VerificationReport {
    if points < 2 && report.status == Status::Verified {
        report.inconclusive(format!("only {points} observations"));
    }
    report
}

/// Index range `[lo, hi]` covered by `points`.
fn span<'a>(points: impl IntoIterator<Item = &'a Point>) -> (usize, usize) {
    points
        .into_iter()
        .fold(None, |acc: Option<(usize, usize)>, p| {
            Some(acc.map_or((p.index, p.index), |(lo, hi)| (lo.min(p.index), hi.max(p.index))))
        })
        .unwrap_or((0, 0))
}

struct Data<'a> {
    r: u32,
    h: &'a [ExactInt],
}

impl Data<'_> {
    fn get(&self, i: usize) -> Option<ExactRat> {
        self.h.get(i).map(|v| ExactRat::from_integer(v.clone()))
    }

    /// `f(n)` for `n = from, from + 1, ...` while every index is available.
    fn points(
        &self,
        from: usize,
        indices: impl Fn(usize) -> Vec<usize>,
        base: impl Fn(usize) -> ExactRat,
    ) -> Vec<Vec<Point>> {
        let mut out = Vec::new();
        let mut n = from;
        loop {
            let idx = indices(n);
            let vals: Option<Vec<ExactRat>> = idx.iter().map(|&i| self.get(i)).collect();
            let Some(vals) = vals else { break };
            out.push(
                idx.into_iter()
                    .zip(vals)
                    .map(|(index, value)| Point {
                        n,
                        index,
                        value,
                        base: base(n),
                    })
                    .collect(),
            );
            n += 1;
        }
        out
    }

    /// Per-term points plus summed points for a pair `a(n) + b(n)`.
    fn sum_points(
        &self,
        from: usize,
        a: impl Fn(usize) -> usize,
        b: impl Fn(usize) -> usize,
        base: impl Fn(usize) -> ExactRat,
    ) -> Vec<Point> {
        self.points(from, |n| vec![a(n), b(n)], base)
            .into_iter()
            .map(|mut pair| {
                let second = pair.pop().expect("pair");
                let mut first = pair.pop().expect("pair");
                first.value += second.value;
                first
            })
            .collect()
    }
}

fn multiple_of_three(d: &Data<'_>) -> Vec<VerificationReport> {
    let r = d.r;
    let ru = r as usize;
    let lead = |n: usize| pow(n as i64 + 1, r - 1);

    let pairs = d.points(0, |n| vec![ru * n, ru * n + 1], lead);
    let flat: Vec<Point> = pairs.into_iter().flatten().collect();

    let mut fitted = VerificationReport::new("leading-pair", (r, r), span(&flat));
    fit_symbol(&mut fitted, r, "leading-sign", &flat, Some(int(1)));
    let fitted = finish(fitted, flat.len());

    let mut literal = VerificationReport::new("leading-pair-literal", (r, r), span(&flat));
    for p in &flat {
        let want = &p.base * int(SignMode::AlternatingPlus.at(p.n).into());
        if p.value != want {
            literal.refute(Counterexample {
                r,
                n: p.index,
                expected: format_rat(&want),
                actual: format_rat(&p.value),
            });
        }
    }
    let literal = finish(literal, flat.len());

    let sums = d.sum_points(1, |n| ru * n + 2, |n| ru * n - 1, |n| int(9) * lead(n));
    let mut shifted = VerificationReport::new("shifted-pair-sum", (r, r), span(&sums));
    let alpha = ExactRat::new(ExactInt::from(r * (r - 3)), ExactInt::from(18));
    fit_symbol(&mut shifted, r, "alpha", &sums, Some(alpha));
    let shifted = finish(shifted, sums.len());

    vec![fitted, literal, shifted]
}

fn other_residue(d: &Data<'_>) -> Vec<VerificationReport> {
    let r = d.r;
    let ru = r as usize;
    let s = 3 * ru;
    let one = |_: usize| int(1);
    let offsets = [0, 1, ru, ru + 1];

    let corners = d.points(0, |n| offsets.iter().map(|o| s * n + o).collect(), one);
    let mut per_term: Vec<Vec<Point>> = (0..offsets.len()).map(|_| Vec::new()).collect();
    for row in corners {
        for (t, p) in row.into_iter().enumerate() {
            per_term[t].push(p);
        }
    }
    let count: usize = per_term.iter().map(Vec::len).sum();
    let mut units = VerificationReport::new("unit-corners", (r, r), span(per_term.iter().flatten()));
    let mut modes = Vec::new();
    for (o, pts) in offsets.iter().zip(&per_term) {
        let label = if *o == 0 { "alpha[3rn]".to_string() } else { format!("alpha[3rn+{o}]") };
        modes.push(fit_symbol(&mut units, r, &label, pts, Some(int(1))).map(|m| m.0));
    }
    if modes.iter().all(Option::is_some) && modes.windows(2).any(|w| w[0] != w[1]) {
        units
            .notes
            .push(format!("r = {r}: the four unit terms do not share one sign"));
    }
    let units = finish(units, count);

    let all: Vec<Point> = per_term.into_iter().flatten().collect();
    let mut common = VerificationReport::new("unit-corners-common", (r, r), span(&all));
    fit_symbol(&mut common, r, "alpha", &all, Some(int(1)));
    let common = finish(common, all.len());

    let zeros: Vec<Point> = d
        .points(0, |n| vec![s * n + 2 * ru, s * n + 2 * ru + 1], one)
        .into_iter()
        .flatten()
        .collect();
    let mut zero = VerificationReport::new("zero-pair", (r, r), span(&zeros));
    for p in &zeros {
        if !p.value.is_zero() {
            zero.refute(Counterexample {
                r,
                n: p.index,
                expected: "0".into(),
                actual: format_rat(&p.value),
            });
        }
    }
    let zero = finish(zero, zeros.len());

    let power = |n: usize| pow(2 * r as i64 * (n as i64 + 1), r - 2);
    let pair = d.points(0, |n| vec![s * n + 2 * ru - 1, s * n + 2 * ru + 2], power);
    let (mut left, mut right) = (Vec::new(), Vec::new());
    for mut row in pair {
        right.push(row.pop().expect("pair"));
        left.push(row.pop().expect("pair"));
    }
    let mut termwise = VerificationReport::new(
        "power-pair-termwise",
        (r, r),
        (span(&left).0, span(&right).1),
    );
    fit_symbol(&mut termwise, r, "beta[3rn+2r-1]", &left, Some(int(1)));
    fit_symbol(&mut termwise, r, "beta[3rn+2r+2]", &right, Some(int(1)));
    let termwise = finish(termwise, left.len() + right.len());

    let sums = d.sum_points(0, |n| s * n + 2 * ru - 1, |n| s * n + 2 * ru + 2, power);
    let mut summed = VerificationReport::new("power-pair-sum", (r, r), span(&sums));
    fit_symbol(&mut summed, r, "beta", &sums, Some(int(1)));
    let summed = finish(summed, sums.len());

    let gamma_base = ExactRat::new(ExactInt::from(r as i64 * (r as i64 - 3)), ExactInt::from(2));
    let sums = d.sum_points(1, |n| s * n + 2, |n| s * n - 1, |_| gamma_base.clone());
    let mut gamma = VerificationReport::new("pair-sum", (r, r), span(&sums));
    fit_symbol(&mut gamma, r, "gamma", &sums, Some(int(1)));
    let gamma = finish(gamma, sums.len());

    vec![units, common, zero, termwise, summed, gamma]
}

/// Identity targets for one `r` against `H_0, H_1, ...`.
pub fn check_identities(r: u32, values: &[ExactInt]) -> Vec<VerificationReport> {
    assert!(r >= MIN_POWER, "patterns start at r = {MIN_POWER}");
    let d = Data { r, h: values };
    if r.is_multiple_of(3) {
        multiple_of_three(&d)
    } else {
        other_residue(&d)
    }
}

/// Compares the detected value period with the conjectured one.
pub fn check_period(r: u32, report: &PeriodReport, n_max: usize) -> VerificationReport {
    let mut out = VerificationReport::new(PERIOD_TARGET, (r, r), (0, n_max));
    let want = expected_period(r);
    match report.period() {
        Some(q) => {
            out.fitted_constants.insert(format!("r{r}:period"), q.to_string());
            if q != want {
                out.refute(Counterexample {
                    r,
                    n: n_max,
                    expected: want.to_string(),
                    actual: q.to_string(),
                });
            }
        }
        None => out.inconclusive(format!("r = {r}: no period found up to n = {n_max}")),
    }
    if let Some(c) = report.chain {
        out.fitted_constants
            .insert(format!("r{r}:chain-index-shift"), c.index_shift.to_string());
    }
    out
}

/// Period search with growing data: the table is doubled until a period is
/// found or `n_cap` is reached, then doubled once more to confirm the same
/// period. Returns the confirming report and the `n_max` it used.
pub fn stable_period(
    table: &mut PowerTable,
    n_start: usize,
    n_cap: usize,
) -> Result<(PeriodReport, usize, Option<usize>), TauError> {
    let mut n = n_start.max(1);
    loop {
        let report = detect_period(table.extend_to(n)?, &PeriodSearch::default());
        if let Some(q) = report.period() {
            let confirm = detect_period(table.extend_to(2 * n)?, &PeriodSearch::default());
            let stable = confirm.period() == Some(q);
            let confirm = confirm.with_chain(table.chain());
            return Ok((confirm, 2 * n, stable.then_some(q)));
        }
        if n >= n_cap {
            return Ok((report.with_chain(table.chain()), n, None));
        }
        n = (2 * n).min(n_cap);
    }
}

/// Options for [`verify_conjectures`].
#[derive(Debug, Clone, Copy)]
pub struct ConjectureRun {
    pub r_max: u32,
    /// Indices for the identity checks; defaults to five conjectured periods.
    pub n_max: Option<usize>,
    /// Upper bound on the data used to find periods.
    pub period_n_cap: usize,
}

impl ConjectureRun {
    pub fn new(r_max: u32) -> Self {
        Self {
            r_max,
            n_max: None,
            period_n_cap: 4096,
        }
    }
}

/// Everything checked for one `r`.
#[derive(Debug, Clone)]
pub struct PowerFindings {
    pub r: u32,
    pub reports: Vec<VerificationReport>,
    pub period: PeriodReport,
}

pub fn check_power(r: u32, run: &ConjectureRun) -> Result<PowerFindings, TauError> {
    let mut table = PowerTable::new(r)?;
    let n_max = run.n_max.unwrap_or_else(|| default_n_max(r));
    let mut reports = check_identities(r, table.extend_to(n_max)?);
    let (period, used, stable) = stable_period(&mut table, n_max, run.period_n_cap)?;
    let mut p = check_period(r, &period, used);
    if period.period().is_some() && stable.is_none() {
        p.inconclusive(format!("r = {r}: period changed when the data was doubled"));
    }
    reports.push(p);
    Ok(PowerFindings { r, reports, period })
}

/// All targets for `r = 2..=r_max`, merged per target across `r`.
pub fn verify_conjectures(run: &ConjectureRun) -> Result<Vec<VerificationReport>, TauError> {
    let findings: Vec<PowerFindings> = (MIN_POWER..=run.r_max)
        .into_par_iter()
        .map(|r| check_power(r, run))
        .collect::<Result<_, _>>()?;
    Ok(merge_findings(&findings))
}

pub fn merge_findings(findings: &[PowerFindings]) -> Vec<VerificationReport> {
    let targets = MULTIPLE_OF_THREE_TARGETS
        .iter()
        .chain(OTHER_TARGETS.iter())
        .chain(std::iter::once(&PERIOD_TARGET));
    targets
        .filter_map(|t| {
            let parts: Vec<VerificationReport> = findings
                .iter()
                .flat_map(|f| f.reports.iter().filter(|rep| rep.target == *t).cloned())
                .collect();
            (!parts.is_empty()).then(|| VerificationReport::merge(*t, &parts))
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<ExactInt> {
        v.iter().map(|&x| ExactInt::from(x)).collect()
    }

    #[test]
    fn periods() {
        assert_eq!(expected_period(3), 3);
        assert_eq!(expected_period(4), 12);
        assert_eq!(expected_period(12), 12);
        assert_eq!(expected_period(11), 33);
    }

    #[test]
    fn r3_identities() {
        // H_{3n} = H_{3n+1} = (-1)^n (n+1)^2, H_{3n+2} = 0
        let h: Vec<i64> = (0..30)
            .map(|i| {
                let (n, j) = (i / 3, i % 3);
                if j == 2 {
                    0
                } else {
                    (if n % 2 == 0 { 1 } else { -1 }) * (n as i64 + 1).pow(2)
                }
            })
            .collect();
        let reps = check_identities(3, &ints(&h));
        assert!(reps.iter().all(|r| r.is_verified()), "{reps:#?}");
        assert_eq!(reps[0].fitted_constants["r3:leading-sign"], "(-1)^n");
        assert_eq!(reps[2].fitted_constants["r3:alpha"], "0");
    }

    #[test]
    fn r2_sign_table() {
        let table = [1, 1, 1, 1, 0, 0, -1, -1, -1, -1, 0, 0];
        let h: Vec<i64> = (0..48).map(|n| table[n % 12]).collect();
        let reps = check_identities(2, &ints(&h));
        let by = |t: &str| reps.iter().find(|r| r.target == t).unwrap();
        assert!(by("unit-corners").is_verified());
        assert!(by("zero-pair").is_verified());
        assert!(by("power-pair-termwise").is_verified());
        assert!(by("pair-sum").is_verified());
        // H_{6n+3} and H_{6n+6} cancel, so the summed reading fails
        assert_eq!(by("power-pair-sum").status, Status::Refuted);
    }

    #[test]
    fn sign_fit_reports_mismatch() {
        let mut rep = VerificationReport::new("t", (5, 5), (0, 3));
        let pts: Vec<Point> = [1, -1, 1, 1]
            .iter()
            .enumerate()
            .map(|(n, &v)| Point {
                n,
                index: n,
                value: int(v),
                base: int(1),
            })
            .collect();
        assert!(fit_symbol(&mut rep, 5, "x", &pts, Some(int(1))).is_none());
        assert_eq!(rep.status, Status::Refuted);
        assert_eq!(rep.counterexamples.len(), 1);
    }
}
