//! Matrix powers, trace powers, weighted geometric means and the deformed
//! logarithm on a small Hermitian example.

use imaginarity::matrixfn::{
    deformed_log, loewner_slack, matrix_power, max_abs, trace_power, weighted_geometric_mean,
};
use imaginarity::states::random_density;

fn main() -> imaginarity::Result<()> {
    let a = random_density(3, 3, 7)?.hermitian().clone();
    let b = random_density(3, 3, 8)?.hermitian().clone();

    println!("eigenvalues of A: {:?}", a.eigenvalues());
    let half = matrix_power(&a, 0.5)?;
    let back = half.matrix() * half.matrix();
    println!("|A^(1/2) A^(1/2) - A|_max = {:.2e}", max_abs(&(back - a.matrix())));
    println!("Tr A^2 = {:.12}", trace_power(&a, 2.0)?);

    for t in [0.25, 0.5, 0.75] {
        let g = weighted_geometric_mean(&a, &b, t)?;
        let arith = a.scale(1.0 - t).add(&b.scale(t));
        println!(
            "t = {t}: Tr(A #_t B) = {:.10}, min eig of arithmetic - geometric = {:.3e}",
            g.trace(),
            loewner_slack(&g, &arith)?
        );
    }

    let ln_q = deformed_log(&a, 0.5)?;
    println!("Tr ln_0.5(A) = {:.10}", ln_q.trace());
    Ok(())
}
