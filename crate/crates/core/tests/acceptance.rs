//! One test per acceptance criterion. Each prints a single PASS or FAIL
//! line (past the test harness's output capture) before asserting.
//!
//! The randomized checks use `ACCEPTANCE_SEED` when set.

use std::io::Write;

use motzkin_hankel::analyzer::conjectures::{self, check_power, merge_findings, ConjectureRun, PowerFindings};
use motzkin_hankel::analyzer::families::{verify_families, FamilyRun};
use motzkin_hankel::analyzer::theorems::{check_closed_forms, published_closed_forms, target_name};
use motzkin_hankel::analyzer::{detect_period, PeriodSearch, Status, VerificationReport};
use motzkin_hankel::exact::{DensePoly, ExactInt, RatFunc, TruncatedSeries};
use motzkin_hankel::motzkin::conv_power_ints;
use motzkin_hankel::oracle::{bareiss_det, cofactor_det, hankel_table_int, series_hankel_table};
use motzkin_hankel::tau::{hankel_sequence, hankel_via_tau, tau_step, FactorKind, PowerTable, Qfe, TauChain};
use motzkin_hankel::ExactRat;
use num_traits::Zero;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

fn verdict(criterion: u32, name: &str, ok: bool, detail: &str) {
    let line = format!(
        "{} criterion {criterion} ({name}){}{detail}",
        if ok { "PASS" } else { "FAIL" },
        if detail.is_empty() { "" } else { ": " }
    );
    let mut out = std::io::stdout().lock();
    let _ = writeln!(out, "{line}");
    let _ = out.flush();
    assert!(ok, "{line}");
}

fn summarize(reports: &[VerificationReport]) -> String {
    reports
        .iter()
        .filter(|r| r.status != Status::Verified)
        .map(|r| {
            let first = r
                .counterexamples
                .first()
                .map(|c| format!(", first at r = {} n = {}: expected {} got {}", c.r, c.n, c.expected, c.actual))
                .unwrap_or_default();
            format!("{} {}{first}", r.target, r.status)
        })
        .collect::<Vec<_>>()
        .join("; ")
}

fn closed_form_report(r: u32, index_max: usize) -> VerificationReport {
    let forms = published_closed_forms(r).expect("published");
    let values = hankel_via_tau(r, index_max).expect("chain");
    check_closed_forms(&target_name(r), r, &forms, &values)
}

#[test]
fn criterion_1_tau_matches_oracle() {
    let mut bad = Vec::new();
    for r in 1..=8 {
        let tau = hankel_via_tau(r, 40).unwrap();
        let oracle = hankel_table_int(&conv_power_ints(r, 81).unwrap(), 40).unwrap();
        if let Some(n) = (0..=40).find(|&n| tau[n] != oracle[n]) {
            bad.push(format!("r = {r} n = {n}"));
        }
    }
    verdict(1, "tau equals oracle, r <= 8, n <= 40", bad.is_empty(), &bad.join(", "));
}

#[test]
fn criterion_2_closed_forms_r2_r3() {
    let reports = [closed_form_report(2, 12 * 121 - 1), closed_form_report(3, 3 * 121 - 1)];
    let ok = reports.iter().all(VerificationReport::is_verified);
    verdict(2, "closed forms for r = 2 and r = 3, n <= 120", ok, &summarize(&reports));
}

#[test]
fn criterion_3_closed_forms_r4() {
    let report = closed_form_report(4, 240);
    let zero_classes_ok = {
        let v = hankel_via_tau(4, 240).unwrap();
        (0..20).all(|n| v[12 * n + 8].is_zero() && v[12 * n + 9].is_zero())
    };
    let detail = format!(
        "{}{}",
        summarize(std::slice::from_ref(&report)),
        if zero_classes_ok { "" } else { "; zero classes fail" }
    );
    verdict(3, "all twelve closed forms for r = 4, index <= 240", report.is_verified() && zero_classes_ok, &detail);
}

#[test]
fn criterion_4_closed_forms_r5_r6_r7() {
    let reports = [closed_form_report(6, 60), closed_form_report(5, 75), closed_form_report(7, 105)];
    let ok = reports.iter().all(VerificationReport::is_verified);
    verdict(4, "closed forms for r = 5, 6, 7 over ten periods", ok, &summarize(&reports));
}

#[test]
fn criterion_5_parametric_families() {
    let reports = verify_families(&FamilyRun { p_max: 10, k_max: 20 }).unwrap();
    let ok = reports.iter().all(VerificationReport::is_verified);
    verdict(5, "family recursions and initial-value tables, p <= 10, k <= 20", ok, &summarize(&reports));
}

fn conjecture_suite(r_max: u32) -> (bool, String) {
    let run = ConjectureRun::new(r_max);
    let findings: Vec<PowerFindings> = (conjectures::MIN_POWER..=r_max)
        .map(|r| check_power(r, &run).unwrap())
        .collect();
    let merged = merge_findings(&findings);
    let primary: Vec<VerificationReport> = merged
        .iter()
        .filter(|r| !conjectures::is_alternate_reading(&r.target))
        .cloned()
        .collect();
    let reported: Vec<&str> = merged.iter().map(|r| r.target.as_str()).collect();
    let both_readings = ["power-pair-termwise", "power-pair-sum"].iter().all(|t| reported.contains(t));
    let enough_data = findings.iter().all(|f| {
        let identities_n = run.n_max.unwrap_or_else(|| conjectures::default_n_max(f.r));
        let period_n = f
            .reports
            .iter()
            .find(|r| r.target == conjectures::PERIOD_TARGET)
            .map_or(0, |r| r.n_range.1);
        identities_n + 1 >= 5 * conjectures::expected_period(f.r)
            && period_n + 1 >= 5 * conjectures::expected_period(f.r)
    });
    let ok = primary.iter().all(VerificationReport::is_verified) && both_readings && enough_data;
    let mut detail = summarize(&primary);
    if !both_readings {
        detail.push_str("; a reading of the power pair is missing");
    }
    if !enough_data {
        detail.push_str("; fewer than five periods checked");
    }
    (ok, detail)
}

#[test]
fn criterion_6_conjectures_up_to_12() {
    let (ok, detail) = conjecture_suite(12);
    verdict(6, "conjectured identities and periods, r <= 12", ok, &detail);
}

#[test]
#[ignore = "long run: every r up to 27"]
fn criterion_6_conjectures_up_to_27() {
    let (ok, detail) = conjecture_suite(27);
    verdict(6, "conjectured identities and periods, r <= 27", ok, &detail);
}

#[test]
fn criterion_7_period_detection() {
    let mut bad = Vec::new();
    for r in [3, 6, 9, 12, 2, 4, 5, 7, 8, 10, 11] {
        let want = conjectures::expected_period(r);
        let mut table = PowerTable::new(r).unwrap();
        let mut n = 15 * r as usize;
        let found = loop {
            let p = detect_period(table.extend_to(n).unwrap(), &PeriodSearch::default()).period();
            if p.is_some() || n >= 4096 {
                break p;
            }
            n *= 2;
        };
        let doubled = detect_period(table.extend_to(2 * n).unwrap(), &PeriodSearch::default()).period();
        if found != Some(want) || doubled != Some(want) {
            bad.push(format!("r = {r}: {found:?} at n = {n}, {doubled:?} at n = {}", 2 * n));
        }
    }
    verdict(7, "periods r or 3r, stable under doubling", bad.is_empty(), &bad.join("; "));
}

fn seed() -> u64 {
    std::env::var("ACCEPTANCE_SEED")
        .ok()
        .and_then(|s| s.parse().ok())
        .unwrap_or(0x4d6f747a)
}

fn random_poly(rng: &mut ChaCha8Rng, c0: i64) -> DensePoly {
    let mut c = vec![c0];
    c.extend((0..rng.gen_range(0..4)).map(|_| rng.gen_range(-3..=3)));
    DensePoly::from_ints(&c)
}

fn random_unit(rng: &mut ChaCha8Rng) -> i64 {
    [1, 1, 1, -1, 2, -3][rng.gen_range(0..6)]
}

fn random_component(rng: &mut ChaCha8Rng) -> RatFunc {
    let c0 = random_unit(rng);
    let num = random_poly(rng, c0);
    if rng.gen_bool(0.3) {
        let d0 = random_unit(rng);
        let den = random_poly(rng, d0);
        RatFunc::new(num, den).unwrap()
    } else {
        RatFunc::from_poly(num)
    }
}

#[test]
fn criterion_8_property_suites() {
    let mut rng = ChaCha8Rng::seed_from_u64(seed());
    let mut failures = Vec::new();
    const ORDERS: usize = 6;

    for case in 0..200 {
        let (d, k) = (rng.gen_range(0..3), rng.gen_range(1..4));
        let q = Qfe::new(d, k, random_component(&mut rng), random_component(&mut rng)).unwrap();
        let Ok((image, rel)) = tau_step(&q) else { continue };
        let h = series_hankel_table(&q.to_series(2 * ORDERS + 1).unwrap(), ORDERS).unwrap();
        let g = series_hankel_table(&image.to_series(2 * ORDERS + 1).unwrap(), ORDERS).unwrap();
        let holds = rel.is_consistent(d)
            && match &rel.factor {
                FactorKind::PowerOfConstant(c) => (0..=ORDERS).all(|n| g[n] == num_traits::pow(c.clone(), n) * &h[n]),
                FactorKind::ConstantSign(s) => (rel.index_shift..=ORDERS)
                    .all(|n| g[n - rel.index_shift] == &h[n] * ExactRat::from_integer((*s).into())),
            };
        if !holds {
            failures.push(format!("step relation, case {case}: {:?}", rel.case));
        }
    }

    for case in 0..200 {
        let c0 = random_unit(&mut rng);
        let a = TruncatedSeries::new(random_poly(&mut rng, c0).coeffs().to_vec());
        let c1 = random_unit(&mut rng);
        let b = TruncatedSeries::new(random_poly(&mut rng, c1).coeffs().to_vec());
        let p = a.precision().min(b.precision());
        let round = (&a * &b).truncate(p).unwrap().div(&b).unwrap() == a.truncate(p).unwrap();
        let split = a.precision() < 2 || {
            let (low, high) = a.split(0).unwrap();
            TruncatedSeries::recombine(&low, &high, 0) == a
        };
        let x = random_component(&mut rng);
        let y = random_component(&mut rng);
        let rat = x.mul(&y).div(&y).unwrap() == x && x.add(&y).sub(&y) == x;
        if !(round && split && rat) {
            failures.push(format!("series round trip, case {case}"));
        }
    }

    for case in 0..200 {
        let n = rng.gen_range(1..6);
        let m: Vec<Vec<ExactInt>> = (0..n)
            .map(|_| (0..n).map(|_| ExactInt::from(rng.gen_range(-6..=6))).collect())
            .collect();
        if bareiss_det(m.clone()) != cofactor_det(&m) {
            failures.push(format!("bareiss, case {case}"));
        }
    }

    for r in 1..=8 {
        let h = hankel_sequence(&mut TauChain::new(motzkin_hankel::derive_qfe(r).unwrap()), 40).unwrap();
        if !h.iter().all(|v| v.is_integer()) {
            failures.push(format!("integrality, r = {r}"));
        }
    }

    verdict(
        8,
        &format!("property suites, seed {}", seed()),
        failures.is_empty(),
        &failures.join("; "),
    );
}
