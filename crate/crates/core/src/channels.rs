//! Quantum operations in Kraus form.

use crate::error::{Error, Result};
use crate::matrixfn::{c, max_abs, CMatrix, HermitianMatrix};
use crate::rng;
use crate::states::{complex_ginibre, real_ginibre, to_complex, DensityMatrix};

/// Completeness slack `‖Σ K†K − I‖_max`.
pub const COMPLETENESS_TOL: f64 = 1e-10;
/// Selective outcomes with probability at or below this are dropped.
pub const P_FLOOR: f64 = 1e-12;

/// `Λ(ρ) = Σ_j K_j ρ K_j†` with `Σ_j K_j† K_j = I`.
#[derive(Clone, Debug, PartialEq)]
pub struct KrausSet {
    dim_in: usize,
    dim_out: usize,
    operators: Vec<CMatrix>,
}

impl KrausSet {
    pub fn new(dim_in: usize, dim_out: usize, operators: Vec<CMatrix>) -> Result<Self> {
        if operators.is_empty() {
            return Err(Error::Domain("Kraus set needs at least one operator".into()));
        }
        for k in &operators {
            if k.nrows() != dim_out || k.ncols() != dim_in {
                return Err(Error::DimensionMismatch {
                    expected: dim_out * dim_in,
                    found: k.nrows() * k.ncols(),
                });
            }
        }
        let set = Self {
            dim_in,
            dim_out,
            operators,
        };
        let residual = set.completeness_residual();
        if residual > COMPLETENESS_TOL {
            return Err(Error::IncompleteKraus {
                residual,
                tolerance: COMPLETENESS_TOL,
            });
        }
        Ok(set)
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            dim_in: dim,
            dim_out: dim,
            operators: vec![CMatrix::identity(dim, dim)],
        }
    }

    /// Complete dephasing `{|m⟩⟨m|}` in the reference basis.
    pub fn dephasing(dim: usize) -> Self {
        let operators = (0..dim)
            .map(|m| CMatrix::from_fn(dim, dim, |i, j| if i == m && j == m { c(1.0) } else { c(0.0) }))
            .collect();
        Self {
            dim_in: dim,
            dim_out: dim,
            operators,
        }
    }

    pub fn dim_in(&self) -> usize {
        self.dim_in
    }

    pub fn dim_out(&self) -> usize {
        self.dim_out
    }

    pub fn operators(&self) -> &[CMatrix] {
        &self.operators
    }

    pub fn completeness_residual(&self) -> f64 {
        let mut acc = CMatrix::zeros(self.dim_in, self.dim_in);
        for k in &self.operators {
            acc += k.adjoint() * k;
        }
        max_abs(&(acc - CMatrix::identity(self.dim_in, self.dim_in)))
    }

    fn check_input(&self, dim: usize) -> Result<()> {
        if dim != self.dim_in {
            return Err(Error::DimensionMismatch {
                expected: self.dim_in,
                found: dim,
            });
        }
        Ok(())
    }

    /// `Σ K_j A K_j†` on any Hermitian input; the map is linear and positive.
    pub fn apply_hermitian(&self, a: &HermitianMatrix) -> Result<HermitianMatrix> {
        self.check_input(a.dim())?;
        let mut acc = CMatrix::zeros(self.dim_out, self.dim_out);
        for k in &self.operators {
            acc += k * a.matrix() * k.adjoint();
        }
        Ok(HermitianMatrix::hermitize(acc))
    }
}

/// Every Kraus operator has `max |Im K_ij| ≤ tol`.
pub fn is_real_operation(channel: &KrausSet, tol: f64) -> bool {
    channel
        .operators
        .iter()
        .all(|k| k.iter().all(|z| z.im.abs() <= tol))
}

/// `Λ(ρ)`.
pub fn apply_channel(channel: &KrausSet, rho: &DensityMatrix) -> Result<DensityMatrix> {
    Ok(DensityMatrix::from_trusted(channel.apply_hermitian(rho.hermitian())?))
}

/// Post-measurement ensemble `{(p_j, K_j ρ K_j†/p_j)}`.
#[derive(Clone, Debug)]
pub struct SelectiveOutcomes {
    pub outcomes: Vec<(f64, DensityMatrix)>,
    /// Total probability of outcomes at or below [`P_FLOOR`].
    pub dropped_mass: f64,
}

pub fn selective_measurement(channel: &KrausSet, rho: &DensityMatrix) -> Result<SelectiveOutcomes> {
    channel.check_input(rho.dim())?;
    let mut outcomes = Vec::with_capacity(channel.operators.len());
    let mut dropped_mass = 0.0;
    for k in &channel.operators {
        let branch = rho.hermitian().congruence(k);
        let p = branch.trace();
        if p > P_FLOOR {
            outcomes.push((p, DensityMatrix::from_trusted(branch.scale(1.0 / p))));
        } else {
            dropped_mass += p.max(0.0);
        }
    }
    Ok(SelectiveOutcomes {
        outcomes,
        dropped_mass,
    })
}

fn slice_isometry(q: &CMatrix, dim: usize, n_kraus: usize) -> KrausSet {
    let operators = (0..n_kraus)
        .map(|j| q.view((j * dim, 0), (dim, dim)).into_owned())
        .collect();
    KrausSet {
        dim_in: dim,
        dim_out: dim,
        operators,
    }
}

fn check_kraus_args(dim: usize, n_kraus: usize) -> Result<()> {
    if dim == 0 || n_kraus == 0 {
        return Err(Error::Domain(format!(
            "need dim >= 1 and n_kraus >= 1, got dim={dim}, n_kraus={n_kraus}"
        )));
    }
    Ok(())
}

/// Random real operation: orthonormalize the columns of an
/// `(n_kraus·dim) × dim` real Gaussian matrix and cut it into square blocks.
pub fn random_real_operation(dim: usize, n_kraus: usize, seed: u64) -> Result<KrausSet> {
    check_kraus_args(dim, n_kraus)?;
    let mut rng = rng::from_seed(seed);
    let (mut q, r) = real_ginibre(n_kraus * dim, dim, &mut rng).qr().unpack();
    for k in 0..dim {
        if r[(k, k)] < 0.0 {
            q.column_mut(k).neg_mut();
        }
    }
    Ok(slice_isometry(&to_complex(&q), dim, n_kraus))
}

/// Random CPTP map, same construction over complex Gaussians.
pub fn random_cptp(dim: usize, n_kraus: usize, seed: u64) -> Result<KrausSet> {
    check_kraus_args(dim, n_kraus)?;
    let mut rng = rng::from_seed(seed);
    let (mut q, r) = complex_ginibre(n_kraus * dim, dim, &mut rng).qr().unpack();
    for k in 0..dim {
        let d = r[(k, k)];
        if d.norm() > 0.0 {
            let mut col = q.column_mut(k);
            col *= d / d.norm();
        }
    }
    Ok(slice_isometry(&q, dim, n_kraus))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::states::{is_real_state, random_density, random_real_density};
    use num_complex::Complex64;

    fn rho0() -> DensityMatrix {
        DensityMatrix::new(CMatrix::from_row_slice(
            2,
            2,
            &[
                c(0.4),
                Complex64::new(0.3, -0.1),
                Complex64::new(0.3, 0.1),
                c(0.6),
            ],
        ))
        .unwrap()
    }

    #[test]
    fn realness_of_operations() {
        assert!(is_real_operation(&KrausSet::identity(3), 0.0));
        let phase = CMatrix::from_row_slice(2, 2, &[c(1.0), c(0.0), c(0.0), Complex64::new(0.0, 1.0)]);
        let gate = KrausSet::new(2, 2, vec![phase]).unwrap();
        assert!(!is_real_operation(&gate, 1e-12));
        assert!(is_real_operation(&random_real_operation(3, 2, 1).unwrap(), 0.0));
    }

    #[test]
    fn rejects_incomplete_sets() {
        let half = CMatrix::identity(2, 2) * c(0.5);
        assert!(matches!(
            KrausSet::new(2, 2, vec![half]),
            Err(Error::IncompleteKraus { .. })
        ));
        assert!(matches!(
            KrausSet::new(2, 2, vec![CMatrix::identity(3, 3)]),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn apply_examples() {
        let r = rho0();
        assert_eq!(apply_channel(&KrausSet::identity(2), &r).unwrap(), r);
        let d = apply_channel(&KrausSet::dephasing(2), &r).unwrap();
        let expect = HermitianMatrix::from_real_diagonal(&[0.4, 0.6]);
        assert!(max_abs(&(d.matrix() - expect.matrix())) < 1e-16);
        assert!(apply_channel(&KrausSet::identity(3), &r).is_err());
    }

    #[test]
    fn real_operations_commute_with_conjugation() {
        for seed in 0..20 {
            let l = random_real_operation(3, 1 + (seed as usize % 3), seed).unwrap();
            let r = random_density(3, 3, 100 + seed).unwrap();
            let lhs = apply_channel(&l, &r.conjugate()).unwrap();
            let rhs = apply_channel(&l, &r).unwrap().conjugate();
            assert!(max_abs(&(lhs.matrix() - rhs.matrix())) < 1e-12);
        }
    }

    #[test]
    fn real_operations_keep_real_states_real() {
        for seed in 0..20 {
            let l = random_real_operation(4, 3, seed).unwrap();
            let r = random_real_density(4, 2, seed + 50).unwrap();
            assert!(is_real_state(&apply_channel(&l, &r).unwrap(), 1e-12));
        }
    }

    #[test]
    fn selective_examples() {
        let r = rho0();
        let s = selective_measurement(&KrausSet::identity(2), &r).unwrap();
        assert_eq!(s.outcomes.len(), 1);
        assert!((s.outcomes[0].0 - 1.0).abs() < 1e-15);

        let s = selective_measurement(&KrausSet::dephasing(2), &r).unwrap();
        assert!((s.outcomes[0].0 - 0.4).abs() < 1e-15);
        assert!((s.outcomes[1].0 - 0.6).abs() < 1e-15);
        let e0 = HermitianMatrix::from_real_diagonal(&[1.0, 0.0]);
        assert!(max_abs(&(s.outcomes[0].1.matrix() - e0.matrix())) < 1e-15);

        let pure = DensityMatrix::from_real_diagonal(&[1.0, 0.0]).unwrap();
        let s = selective_measurement(&KrausSet::dephasing(2), &pure).unwrap();
        assert_eq!(s.outcomes.len(), 1);
        assert_eq!(s.dropped_mass, 0.0);
    }

    #[test]
    fn selective_outcomes_average_to_channel_output() {
        for seed in 0..20 {
            let l = random_cptp(3, 3, seed).unwrap();
            let r = random_density(3, 2, seed + 7).unwrap();
            let s = selective_measurement(&l, &r).unwrap();
            let total: f64 = s.outcomes.iter().map(|(p, _)| p).sum();
            assert!((total - 1.0).abs() < 1e-10);
            let mut acc = CMatrix::zeros(3, 3);
            for (p, o) in &s.outcomes {
                acc += o.matrix() * c(*p);
            }
            let out = apply_channel(&l, &r).unwrap();
            assert!(max_abs(&(acc - out.matrix())) < 1e-10);
        }
    }

    #[test]
    fn random_channel_examples() {
        let single = random_real_operation(3, 1, 2).unwrap();
        let k = &single.operators()[0];
        assert!(max_abs(&(k.transpose() * k - CMatrix::identity(3, 3))) < 1e-12);
        assert_eq!(random_real_operation(2, 3, 5).unwrap(), random_real_operation(2, 3, 5).unwrap());
        assert_eq!(random_cptp(2, 3, 5).unwrap(), random_cptp(2, 3, 5).unwrap());
        for n in 1..5 {
            assert!(random_real_operation(4, n, 9).unwrap().completeness_residual() < 1e-10);
            assert!(random_cptp(4, n, 9).unwrap().completeness_residual() < 1e-10);
        }
        let u = random_cptp(3, 1, 4).unwrap();
        let k = &u.operators()[0];
        assert!(max_abs(&(k.adjoint() * k - CMatrix::identity(3, 3))) < 1e-12);
        assert!(random_cptp(3, 0, 1).is_err());
    }
}
