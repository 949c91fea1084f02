// Iterates the transformation on the equation of M(x)^r and prints each
// step: the node shape, the branch taken and how the determinants relate.

use motzkin_hankel::motzkin::derive_qfe;
use motzkin_hankel::tau::{FactorKind, TauChain};

pub fn run_example() -> Result<(), Box<dyn std::error::Error>> {
    let r = std::env::args().nth(1).and_then(|a| a.parse().ok()).unwrap_or(4);
    let mut chain = TauChain::new(derive_qfe(r)?);
    chain.extend_past_shift(6 * r as usize)?;

    println!("root: {}", chain.nodes()[0]);
    for (i, (shape, rel)) in chain.fingerprint().iter().zip(chain.relations()).enumerate() {
        let factor = match &rel.factor {
            FactorKind::PowerOfConstant(c) => format!("H_n scales by ({c})^n"),
            FactorKind::ConstantSign(s) => format!("sign {s}, index shift {}", rel.index_shift),
        };
        println!(
            "step {i:>3}: d = {}, k = {}, {:?}: {factor} (total shift {})",
            shape.d,
            shape.k,
            rel.case,
            chain.shifts()[i + 1]
        );
    }
    if let Some(p) = chain.period(3) {
        println!(
            "periodic after {} nodes: {} nodes, {} shift steps, index shift {}",
            p.head, p.nodes, p.shift_steps, p.index_shift
        );
    }
    Ok(())
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    run_example()
}
