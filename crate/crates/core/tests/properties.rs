use motzkin_hankel::exact::{format_rat, DensePoly, ExactInt, ExactRat, RatFunc, TruncatedSeries};
use motzkin_hankel::oracle::{bareiss_det, cofactor_det, series_hankel_table};
use motzkin_hankel::tau::{hankel_sequence, tau_step, FactorKind, Qfe, TauChain, TauError};
use num_traits::{One, Zero};
use proptest::prelude::*;

fn poly_with_constant(c0: i64, rest: Vec<i64>) -> DensePoly {
    let mut c = vec![c0];
    c.extend(rest);
    DensePoly::from_ints(&c)
}

fn unit_poly() -> impl Strategy<Value = DensePoly> {
    (
        prop_oneof![3 => Just(1i64), 1 => Just(-1), 1 => Just(2), 1 => Just(-3)],
        prop::collection::vec(-3i64..=3, 0..4),
    )
        .prop_map(|(c0, rest)| poly_with_constant(c0, rest))
}

fn component() -> impl Strategy<Value = RatFunc> {
    prop_oneof![
        3 => unit_poly().prop_map(RatFunc::from_poly),
        1 => (unit_poly(), unit_poly()).prop_map(|(n, d)| RatFunc::new(n, d).unwrap()),
    ]
}

fn qfe() -> impl Strategy<Value = Qfe<RatFunc>> {
    (0usize..3, 1usize..4, component(), component())
        .prop_map(|(d, k, u, v)| Qfe::new(d, k, u, v).unwrap())
}

fn series() -> impl Strategy<Value = TruncatedSeries> {
    (unit_poly(), prop::collection::vec(-5i64..=5, 0..8)).prop_map(|(head, tail)| {
        let mut c: Vec<i64> = head.coeffs().iter().map(|q| q.to_integer().try_into().unwrap()).collect();
        c.extend(tail);
        TruncatedSeries::from_ints(&c)
    })
}

const ORDERS: usize = 7;

proptest! {
    #![proptest_config(ProptestConfig::with_cases(96))]

    #[test]
    fn tau_step_relation_holds(q in qfe()) {
        let next = match tau_step(&q) {
            Ok(n) => n,
            Err(TauError::ZeroSolution) => return Ok(()),
            Err(e) => return Err(TestCaseError::fail(e.to_string())),
        };
        let (image, rel) = next;
        prop_assert!(rel.is_consistent(q.d));
        let h = series_hankel_table(&q.to_series(2 * ORDERS + 1).unwrap(), ORDERS).unwrap();
        let g = series_hankel_table(&image.to_series(2 * ORDERS + 1).unwrap(), ORDERS).unwrap();
        match rel.factor {
            FactorKind::PowerOfConstant(c) => {
                for n in 0..=ORDERS {
                    prop_assert_eq!(&g[n], &(num_traits::pow(c.clone(), n) * &h[n]));
                }
            }
            FactorKind::ConstantSign(s) => {
                let shift = rel.index_shift;
                for n in shift..=ORDERS {
                    prop_assert_eq!(&g[n - shift], &(&h[n] * ExactRat::from_integer(s.into())));
                }
            }
        }
    }

    #[test]
    fn chain_matches_oracle(q in qfe()) {
        let mut chain = TauChain::new(q.clone());
        let tau = hankel_sequence(&mut chain, ORDERS).unwrap();
        let oracle = series_hankel_table(&q.to_series(2 * ORDERS + 1).unwrap(), ORDERS).unwrap();
        prop_assert_eq!(tau, oracle);
    }

    #[test]
    fn solution_satisfies_equation(q in qfe()) {
        let s = q.to_series(12).unwrap();
        prop_assert!(q.residual(&s).unwrap().coeffs().iter().all(Zero::is_zero));
    }

    #[test]
    fn series_division_round_trip(a in series(), b in series()) {
        let p = a.precision().min(b.precision());
        let prod = (&a * &b).truncate(p).unwrap();
        prop_assert_eq!(prod.div(&b).unwrap(), a.truncate(p).unwrap());
        prop_assert!(a.div(&a).unwrap().is_one());
    }

    #[test]
    fn series_split_recombine(a in series(), d in 0usize..3) {
        prop_assume!(a.precision() > d + 2);
        let (low, high) = a.split(d).unwrap();
        prop_assert!(low.degree().is_none_or(|deg| deg <= d + 1));
        prop_assert_eq!(TruncatedSeries::recombine(&low, &high, d), a);
    }

    #[test]
    fn series_shift_round_trip(a in series(), m in 0usize..4) {
        let up = a.shift(m as isize).unwrap();
        prop_assert_eq!(up.shift(-(m as isize)).unwrap(), a);
    }

    #[test]
    fn ratfunc_arithmetic_matches_series(a in component(), b in component()) {
        let n = 10;
        let e = |f: &RatFunc| f.series(n);
        prop_assert_eq!(e(&a.add(&b)), &e(&a) + &e(&b));
        prop_assert_eq!(e(&a.mul(&b)), (&e(&a) * &e(&b)).truncate(n).unwrap());
        prop_assert_eq!(e(&a.div(&b).unwrap()), e(&a).div(&e(&b)).unwrap());
        let (low, high) = a.split(1);
        prop_assert_eq!(TruncatedSeries::recombine(&low, &high.series(n - 3), 1), e(&a));
    }

    #[test]
    fn ratfunc_round_trip_through_parts(a in component()) {
        let back = RatFunc::new(a.numer(), a.denom()).unwrap();
        prop_assert_eq!(&back, &a);
        prop_assert!(a.denom().coeff(0).is_one());
    }

    #[test]
    fn bareiss_matches_cofactor(n in 1usize..6, entries in prop::collection::vec(-9i64..=9, 36)) {
        let m: Vec<Vec<ExactInt>> = (0..n)
            .map(|i| (0..n).map(|j| ExactInt::from(entries[i * 6 + j])).collect())
            .collect();
        prop_assert_eq!(bareiss_det(m.clone()), cofactor_det(&m));
    }

    #[test]
    fn bareiss_with_zero_pivots(n in 2usize..6, entries in prop::collection::vec(-4i64..=4, 36), zeros in 1usize..4) {
        let m: Vec<Vec<ExactInt>> = (0..n)
            .map(|i| (0..n).map(|j| {
                if i < zeros.min(n - 1) && j == 0 { ExactInt::zero() } else { ExactInt::from(entries[i * 6 + j]) }
            }).collect())
            .collect();
        prop_assert_eq!(bareiss_det(m.clone()), cofactor_det(&m));
    }

    #[test]
    fn rationals_render_and_parse(n in -10_000i64..10_000, d in 1i64..500) {
        let q = ExactRat::new(n.into(), d.into());
        prop_assert_eq!(motzkin_hankel::exact::parse_rat(&format_rat(&q)), Some(q));
    }
}

#[test]
fn motzkin_power_determinants_are_integers() {
    for r in 1..=8 {
        let mut chain = TauChain::new(motzkin_hankel::derive_qfe(r).unwrap());
        let h = hankel_sequence(&mut chain, 40).unwrap();
        assert!(h.iter().all(|v| v.is_integer()), "r = {r}");
    }
}
