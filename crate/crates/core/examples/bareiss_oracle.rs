// Direct Hankel determinants by fraction-free elimination.

use motzkin_hankel::motzkin::conv_power_ints;
use motzkin_hankel::oracle::{bareiss_det, cofactor_det, hankel_det_int, hankel_table_int};
use motzkin_hankel::ExactInt;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let seq = conv_power_ints(2, 41)?;
    let table = hankel_table_int(&seq, 20)?;
    for (n, h) in table.iter().enumerate() {
        println!("H_{n}(M^2) = {h}");
    }

    // The elimination agrees with cofactor expansion on a small matrix.
    let m: Vec<Vec<ExactInt>> = (0..5)
        .map(|i| (0..5).map(|j| ExactInt::from((i * 7 + j * j * 3) % 11 - 5)).collect())
        .collect();
    assert_eq!(bareiss_det(m.clone()), cofactor_det(&m));

    let h = hankel_det_int(&conv_power_ints(7, 27)?, 13)?;
    println!("H_13(M^7) = {h}");
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
