//! All four measures on the qubit family (I + a σ_y)/2 against their
//! closed forms.

use imaginarity::matrixfn::CMatrix;
use imaginarity::measures::{AZParams, PreparedState};
use imaginarity::states::DensityMatrix;
use num_complex::Complex64;

fn main() -> imaginarity::Result<()> {
    let q = 0.5;
    println!("   a     M^T_0.5     closed     M^R_0.5,0.5   M^V        closed     M^O_0.5");
    for a in [0.0, 0.2, 0.6, 0.9] {
        let rho = DensityMatrix::new(CMatrix::from_row_slice(
            2,
            2,
            &[
                Complex64::new(0.5, 0.0),
                Complex64::new(0.0, -0.5 * a),
                Complex64::new(0.0, 0.5 * a),
                Complex64::new(0.5, 0.0),
            ],
        ))?;
        let p = PreparedState::new(&rho);
        let (hi, lo) = ((1.0 + a) / 2.0, (1.0 - a) / 2.0);
        let tsallis_closed = 1.0 - 2.0 * (hi * lo).sqrt();
        let h = |x: f64| if x > 0.0 { -x * x.ln() } else { 0.0 };
        let umegaki_closed = 2.0f64.ln() - h(hi) - h(lo);
        println!(
            "{a:4.1}  {:.8}  {:.8}  {:.8}    {:.8}  {:.8}  {:.8}",
            p.tsallis(q)?,
            tsallis_closed,
            p.renyi(AZParams::new(0.5, 0.5)?),
            p.umegaki(),
            umegaki_closed,
            p.operator(q)?
        );
    }
    Ok(())
}
