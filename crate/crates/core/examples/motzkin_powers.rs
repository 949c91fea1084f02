// Coefficients of M(x)^r, and the functional equation each power satisfies.

use motzkin_hankel::motzkin::{conv_power_ints, derive_qfe, motzkin_by_catalan_sum, motzkin_by_equation};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let by_sum = motzkin_by_catalan_sum(12);
    assert_eq!(by_sum, motzkin_by_equation(12));
    println!("M_n: {}", join(&by_sum));

    for r in 1..=4 {
        let coeffs = conv_power_ints(r, 10)?;
        println!("M(x)^{r}: {}", join(&coeffs));
    }

    let qfe = derive_qfe(3)?;
    println!("M(x)^3 solves {qfe}");
    let series = qfe.to_series(10)?;
    assert_eq!(series.integer_coeffs(), Some(conv_power_ints(3, 10)?));
    Ok(())
}

fn join(v: &[impl ToString]) -> String {
    v.iter().map(ToString::to_string).collect::<Vec<_>>().join(" ")
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
