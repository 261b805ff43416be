//! Building density matrices: pure states, random states, tensor products,
//! direct sums and ensembles.

use imaginarity::states::{
    direct_sum_mix, is_real_state, random_density, random_real_density, tensor_product, DensityMatrix, StateEnsemble,
};
use num_complex::Complex64;

fn main() -> imaginarity::Result<()> {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    let plus_i = DensityMatrix::pure(&[Complex64::new(s, 0.0), Complex64::new(0.0, s)])?;
    println!("|+i><+i| = {}", plus_i.matrix());
    println!("real? {}  max |Im| = {}", is_real_state(&plus_i, 1e-12), plus_i.max_imaginary());

    let rho = random_density(3, 2, 42)?;
    println!("rank-2 random state, eigenvalues {:?}", rho.eigenvalues());
    println!("positive definite? {}", rho.is_positive_definite());

    let real = random_real_density(3, 3, 42)?;
    println!("random real state is real: {}", is_real_state(&real, 1e-14));

    let joint = tensor_product(&rho, &plus_i);
    println!("tensor product has dim {}", joint.dim());

    let sum = direct_sum_mix(0.3, &plus_i, 0.7, &real)?;
    println!("direct sum has dim {} and trace {:.15}", sum.dim(), sum.hermitian().trace());

    let ens = StateEnsemble::new(vec![0.5, 0.5], vec![plus_i.clone(), plus_i.conjugate()])?;
    println!("average of |+i> and its conjugate:\n{}", ens.average().matrix());
    Ok(())
}
