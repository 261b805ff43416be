//! Reproduces the two worked examples (ρ₀ and δ₀) against the stored
//! high-precision reference values and checks their orderings.

use imaginarity::properties::reproduce_examples;

fn main() -> imaginarity::Result<()> {
    let report = reproduce_examples()?;
    print!("{}", report.summary_table());
    println!("{}", if report.passed() { "all reproduced" } else { "MISMATCH" });
    Ok(())
}
