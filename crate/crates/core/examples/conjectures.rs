// The conjectured identities and periods for small r, with the sign
// symbols fitted from the data.

use motzkin_hankel::analyzer::conjectures::{check_power, merge_findings, ConjectureRun};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let r_max = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(7);
    let run = ConjectureRun::new(r_max);
    let findings = (2..=r_max)
        .map(|r| check_power(r, &run))
        .collect::<Result<Vec<_>, _>>()?;
    for report in merge_findings(&findings) {
        println!("{report}");
        for (k, v) in &report.fitted_constants {
            println!("  {k} = {v}");
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
