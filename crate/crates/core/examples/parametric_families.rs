// The families one step into the chains of M(x)^3 and M(x)^4, checked at
// integer parameters by the oracle.

use motzkin_hankel::analyzer::families::{family_hankels, family_qfe, verify_families, FamilyRun};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    println!("r = 3, p = 2: {}", family_qfe(3, 2)?);
    let h = family_hankels(4, 3, 12)?;
    println!(
        "r = 4, p = 3: {}",
        h.iter().map(ToString::to_string).collect::<Vec<_>>().join(", ")
    );

    let run = FamilyRun { p_max: 6, k_max: 20 };
    for report in verify_families(&run)? {
        println!("{report}");
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
