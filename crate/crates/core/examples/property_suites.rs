//! Runs every axiom, theorem and lemma check with the default configuration
//! (dimensions 2, 3, 4; 200 trials per dimension) and prints the summary.
//!
//!     cargo run --release --example property_suites [selector ...]

use imaginarity::properties::{verify, PropertyConfig};

fn main() -> imaginarity::Result<()> {
    let mut selectors: Vec<String> = std::env::args().skip(1).collect();
    if selectors.is_empty() {
        selectors.push("all".into());
    }
    let cfg = PropertyConfig::default();
    let start = std::time::Instant::now();
    let report = verify(&selectors, &cfg)?;
    print!("{}", report.summary_table());
    println!(
        "\n{} checks, {} failing, {:.1}s",
        report.checks.len(),
        report.checks.iter().filter(|c| !c.passed()).count(),
        start.elapsed().as_secs_f64()
    );
    Ok(())
}
