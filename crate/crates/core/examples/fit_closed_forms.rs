// Detects the period of H_n(M(x)^r) and fits a closed form to every
// residue class.

use motzkin_hankel::analyzer::{detect_period, PeriodSearch, PeriodSummary};
use motzkin_hankel::tau::PowerTable;

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    for r in [2, 5, 6] {
        let mut table = PowerTable::new(r)?;
        let values = table.extend_to(200)?;
        let report = detect_period(values, &PeriodSearch::default()).with_chain(table.chain());
        let summary = PeriodSummary::from(&report);
        println!("r = {r}: {}", serde_json::to_string(&summary)?);
        if let Some(fit) = &report.value {
            for form in &fit.forms {
                println!("  {form}");
            }
        }
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
