// H_n(M(x)^r) through the transformation chain, compared with the oracle,
// and the same run on the truncated-series backend.

use std::time::Instant;

use motzkin_hankel::motzkin::conv_power_ints;
use motzkin_hankel::oracle::hankel_table_int;
use motzkin_hankel::tau::{hankel_via_tau, hankel_via_tau_with, Backend};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let (r, n) = (5, 40);
    let t = Instant::now();
    let tau = hankel_via_tau(r, n)?;
    println!("tau: {n} determinants of M^{r} in {:?}", t.elapsed());

    let t = Instant::now();
    let oracle = hankel_table_int(&conv_power_ints(r, 2 * n + 1)?, n)?;
    println!("oracle: same in {:?}", t.elapsed());
    assert_eq!(tau, oracle);

    let run = hankel_via_tau_with(r, n, Backend::Truncated { initial: Some(16), cap: 1024 })?;
    println!(
        "truncated backend: precision {:?} after {} retries",
        run.precision, run.retries
    );
    assert_eq!(run.values, tau);

    let far = hankel_via_tau(r, 300)?;
    println!("H_300(M^{r}) = {}", far[300]);
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
