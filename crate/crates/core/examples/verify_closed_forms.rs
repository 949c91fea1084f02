// Checks the published closed forms for r = 2..7 against computed values.

use motzkin_hankel::analyzer::theorems::{published_closed_forms, verify_theorems, THEOREM_POWERS};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for r in THEOREM_POWERS {
        let q = published_closed_forms(r).map_or(1, |f| f.len());
        let report = verify_theorems(r, 10 * q, 30)?;
        println!("{report}");
        for c in report.counterexamples.iter().take(2) {
            println!("  H_{}: expected {}, computed {}", c.n, c.expected, c.actual);
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
