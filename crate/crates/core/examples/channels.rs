//! Real operations keep real states real; generic CPTP maps do not.
//! Also shows a selective measurement and its post-measurement ensemble.

use imaginarity::channels::{apply_channel, is_real_operation, random_cptp, random_real_operation, selective_measurement};
use imaginarity::measures::imaginarity_umegaki;
use imaginarity::states::{is_real_state, random_density, random_real_density};

fn main() -> imaginarity::Result<()> {
    let real_op = random_real_operation(3, 2, 1)?;
    let generic = random_cptp(3, 2, 1)?;
    println!(
        "real operation: residual {:.1e}, real {}; generic: real {}",
        real_op.completeness_residual(),
        is_real_operation(&real_op, 1e-12),
        is_real_operation(&generic, 1e-12)
    );

    let real_state = random_real_density(3, 3, 2)?;
    println!(
        "real state after real op is real: {}; after generic map: {}",
        is_real_state(&apply_channel(&real_op, &real_state)?, 1e-12),
        is_real_state(&apply_channel(&generic, &real_state)?, 1e-12)
    );

    let rho = random_density(3, 3, 3)?;
    let before = imaginarity_umegaki(&rho);
    let after = imaginarity_umegaki(&apply_channel(&real_op, &rho)?);
    println!("M^V before {before:.6}, after real op {after:.6}");

    let sel = selective_measurement(&real_op, &rho)?;
    let avg: f64 = sel.outcomes.iter().map(|(p, s)| p * imaginarity_umegaki(s)).sum();
    println!(
        "selective: {} outcomes, average M^V {avg:.6}, dropped mass {:.1e}",
        sel.outcomes.len(),
        sel.dropped_mass
    );
    Ok(())
}
