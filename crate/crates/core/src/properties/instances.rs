//! Random instance generators for the property checks.
//!
//! Each generator consumes a trial RNG and seeds the library samplers from
//! it, so one trial seed determines the whole instance.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng as _;
use rand_distr::{Distribution, Exp1};

use crate::channels::{random_cptp, random_real_operation, KrausSet};
use crate::error::Result;
use crate::matrixfn::CMatrix;
use crate::rng::Rng;
use crate::states::{random_density, random_real_density, random_real_orthogonal, to_complex, DensityMatrix};

/// Random state of random rank (full rank when `full_rank`).
pub fn state(rng: &mut Rng, dim: usize, full_rank: bool) -> Result<DensityMatrix> {
    let rank = if full_rank { dim } else { rng.random_range(1..=dim) };
    random_density(dim, rank, rng.random())
}

pub fn real_state(rng: &mut Rng, dim: usize, full_rank: bool) -> Result<DensityMatrix> {
    let rank = if full_rank { dim } else { rng.random_range(1..=dim) };
    random_real_density(dim, rank, rng.random())
}

/// Random probability vector of length `k` (flat Dirichlet).
pub fn weights(rng: &mut Rng, k: usize) -> Vec<f64> {
    let raw: Vec<f64> = (0..k).map(|_| Exp1.sample(rng)).collect();
    let total: f64 = raw.iter().sum();
    raw.into_iter().map(|w| w / total).collect()
}

/// Real operation with 1 to 3 Kraus operators.
pub fn real_operation(rng: &mut Rng, dim: usize) -> Result<KrausSet> {
    let n = rng.random_range(1..=3);
    random_real_operation(dim, n, rng.random())
}

/// CPTP map with 1 to 3 Kraus operators.
pub fn cptp(rng: &mut Rng, dim: usize) -> Result<KrausSet> {
    let n = rng.random_range(1..=3);
    random_cptp(dim, n, rng.random())
}

/// State whose complex conjugate commutes with it.
///
/// Built as `O (⊕_k p_k (I + a_k σ_y)/2 ⊕ diag(p_rest)) Oᵀ` with `O` real
/// orthogonal: real and imaginary parts commute blockwise, and a real
/// rotation preserves that. `pd` keeps every eigenvalue away from zero.
pub fn commuting_conjugate_state(rng: &mut Rng, dim: usize, pd: bool) -> Result<DensityMatrix> {
    let blocks = dim / 2;
    let singles = dim - 2 * blocks;
    let p = weights(rng, blocks + singles);
    let bound = if pd { 0.95 } else { 1.0 };
    let mut m = CMatrix::zeros(dim, dim);
    for (k, &pk) in p.iter().enumerate().take(blocks) {
        let a: f64 = rng.random_range(-bound..=bound);
        let (i, j) = (2 * k, 2 * k + 1);
        let h = 0.5 * pk;
        m[(i, i)] = Complex64::new(h, 0.0);
        m[(j, j)] = Complex64::new(h, 0.0);
        m[(i, j)] = Complex64::new(0.0, -a * h);
        m[(j, i)] = Complex64::new(0.0, a * h);
    }
    for s in 0..singles {
        m[(2 * blocks + s, 2 * blocks + s)] = Complex64::new(p[blocks + s], 0.0);
    }
    let o: DMatrix<f64> = random_real_orthogonal(dim, rng.random());
    let oc = to_complex(&o);
    DensityMatrix::new(&oc * m * oc.adjoint())
}
