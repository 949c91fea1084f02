// The engine is not tied to Motzkin powers: any equation
// F = x^d / (u + x^k v F) with rational-function u and v works.

use motzkin_hankel::exact::{format_rat, DensePoly, RatFunc};
use motzkin_hankel::oracle::series_hankel_table;
use motzkin_hankel::tau::{hankel_sequence, Qfe, TauChain};

fn poly(c: &[i64]) -> RatFunc {
    RatFunc::from_poly(DensePoly::from_ints(c))
}

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    // Catalan: C = 1 / (1 - x C), every Hankel determinant is 1.
    let catalan = Qfe::new(0, 1, poly(&[1]), poly(&[-1]))?;
    let h = hankel_sequence(&mut TauChain::new(catalan), 12)?;
    let shown: Vec<String> = h.iter().map(format_rat).collect();
    println!("Catalan: {}", shown.join(" "));

    // Rational u: F = 1 / ((1 - 2x)/(1 - x) - 3 x^2 F)
    let u = RatFunc::new(DensePoly::from_ints(&[1, -2]), DensePoly::from_ints(&[1, -1]))?;
    let q = Qfe::new(0, 2, u, poly(&[-3]))?;
    let tau = hankel_sequence(&mut TauChain::new(q.clone()), 10)?;
    let oracle = series_hankel_table(&q.to_series(21)?, 10)?;
    assert_eq!(tau, oracle);
    for (n, h) in tau.iter().enumerate() {
        println!("H_{n} = {h}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
