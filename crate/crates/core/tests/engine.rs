use motzkin_hankel::motzkin::conv_power_ints;
use motzkin_hankel::oracle::hankel_table_int;
use motzkin_hankel::tau::{hankel_via_tau, hankel_via_tau_with, Backend, PowerTable, TauError};

fn oracle(r: u32, n: usize) -> Vec<motzkin_hankel::ExactInt> {
    hankel_table_int(&conv_power_ints(r, 2 * n + 1).unwrap(), n).unwrap()
}

#[test]
fn exact_chain_matches_oracle_small_powers() {
    for r in 1..=6 {
        assert_eq!(hankel_via_tau(r, 30).unwrap(), oracle(r, 30), "r = {r}");
    }
}

#[test]
fn truncated_backend_matches_exact() {
    for (r, n) in [(2, 45), (4, 30), (7, 20)] {
        let exact = hankel_via_tau(r, n).unwrap();
        let run = hankel_via_tau_with(r, n, Backend::Truncated { initial: Some(8), cap: 4096 }).unwrap();
        assert_eq!(run.values, exact, "r = {r}");
        assert!(run.retries > 0);
    }
}

#[test]
fn truncated_backend_reports_exhaustion() {
    let err = hankel_via_tau_with(6, 80, Backend::Truncated { initial: Some(10), cap: 20 }).unwrap_err();
    assert!(matches!(err, TauError::PrecisionExhausted { retries: 1, .. }), "{err}");
}

#[test]
fn power_table_extends_consistently() {
    let mut t = PowerTable::new(5).unwrap();
    let short = t.extend_to(20).unwrap().to_vec();
    let long = t.extend_to(90).unwrap().to_vec();
    assert_eq!(&long[..=20], &short[..]);
    assert_eq!(long, hankel_via_tau(5, 90).unwrap());
    assert_eq!(t.extend_to(10).unwrap(), &short[..=10]);
}

#[test]
fn far_values_of_the_known_patterns() {
    let h = hankel_via_tau(3, 3 * 200 + 2).unwrap();
    let n = motzkin_hankel::ExactInt::from(201);
    assert_eq!(h[600], &n * &n);
    assert_eq!(h[601], &n * &n);
    assert_eq!(h[602], 0.into());
}
