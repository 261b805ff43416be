//! Density matrices: validation, realness, random sampling and composition.
//!
//! Realness is judged in the stored coordinates: the computational basis of
//! the matrix is the fixed reference basis of the resource theory.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand_distr::{Distribution, StandardNormal};

use crate::error::{Error, Result};
use crate::matrixfn::{c, max_abs, max_asymmetry, CMatrix, HermitianMatrix, SpectralDecomposition};
use crate::rng;

/// Validation slack for [`DensityMatrix`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct DensityTolerances {
    /// Relative: `|ρ_ij − conj(ρ_ji)| ≤ hermitian · max(1, max|ρ|)`.
    pub hermitian: f64,
    /// Absolute floor on eigenvalues.
    pub eigenvalue: f64,
    /// Absolute slack on `Tr ρ = 1`.
    pub trace: f64,
}

impl Default for DensityTolerances {
    fn default() -> Self {
        Self {
            hermitian: 1e-12,
            eigenvalue: 1e-12,
            trace: 1e-12,
        }
    }
}

impl DensityTolerances {
    /// Exact Hermiticity and a few ulps on spectrum and trace; for golden inputs.
    pub fn strict() -> Self {
        Self {
            hermitian: 0.0,
            eigenvalue: 4.0 * f64::EPSILON,
            trace: 4.0 * f64::EPSILON,
        }
    }
}

/// A Hermitian, positive semidefinite, unit-trace matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct DensityMatrix(HermitianMatrix);

impl DensityMatrix {
    pub fn new(m: CMatrix) -> Result<Self> {
        Self::with_tolerances(m, DensityTolerances::default())
    }

    pub fn with_tolerances(m: CMatrix, tol: DensityTolerances) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        if m.nrows() == 0 {
            return Err(Error::Domain("density matrix must have dim >= 1".into()));
        }
        let tolerance = tol.hermitian * max_abs(&m).max(1.0);
        let asymmetry = max_asymmetry(&m);
        if asymmetry > tolerance {
            return Err(Error::NotHermitian {
                asymmetry,
                tolerance,
            });
        }
        let h = HermitianMatrix::hermitize(m);
        let trace = h.trace();
        if (trace - 1.0).abs() > tol.trace {
            return Err(Error::TraceNotOne {
                trace,
                deviation: (trace - 1.0).abs(),
                tolerance: tol.trace,
            });
        }
        let min = h.min_eigenvalue();
        if min < -tol.eigenvalue {
            return Err(Error::NotPositiveSemidefinite {
                eigenvalue: min,
                tolerance: -tol.eigenvalue,
            });
        }
        Ok(Self(h))
    }

    /// Wraps a matrix known by construction to be a state.
    pub(crate) fn from_trusted(h: HermitianMatrix) -> Self {
        Self(h)
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Result<Self> {
        Self::new(HermitianMatrix::from_real_diagonal(diag).into_matrix())
    }

    /// The maximally mixed state `I/d`.
    pub fn maximally_mixed(dim: usize) -> Self {
        Self(HermitianMatrix::identity(dim).scale(1.0 / dim as f64))
    }

    /// Pure state `|ψ⟩⟨ψ|` for a non-zero vector, normalized.
    pub fn pure(psi: &[Complex64]) -> Result<Self> {
        let norm2: f64 = psi.iter().map(|z| z.norm_sqr()).sum();
        if norm2 <= 0.0 {
            return Err(Error::Domain("pure state vector must be non-zero".into()));
        }
        let n = psi.len();
        let m = CMatrix::from_fn(n, n, |i, j| psi[i] * psi[j].conj() / norm2);
        Ok(Self(HermitianMatrix::hermitize(m)))
    }

    pub fn dim(&self) -> usize {
        self.0.dim()
    }

    pub fn hermitian(&self) -> &HermitianMatrix {
        &self.0
    }

    pub fn matrix(&self) -> &CMatrix {
        self.0.matrix()
    }

    /// `ρ*`, again a state with the same spectrum.
    pub fn conjugate(&self) -> Self {
        Self(self.0.conjugate())
    }

    pub fn decompose(&self) -> SpectralDecomposition {
        self.0.decompose()
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.0.eigenvalues()
    }

    pub fn is_positive_definite(&self) -> bool {
        self.decompose().is_positive_definite()
    }

    pub fn check_positive_definite(&self) -> Result<()> {
        self.decompose().check_pd()
    }

    /// Largest `|Im ρ_ij|`.
    pub fn max_imaginary(&self) -> f64 {
        self.matrix().iter().map(|z| z.im.abs()).fold(0.0, f64::max)
    }

    /// `U ρ U†`.
    pub fn unitary_conjugate(&self, u: &CMatrix) -> Result<Self> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch {
                expected: self.dim(),
                found: u.nrows(),
            });
        }
        Ok(Self(self.0.congruence(u)))
    }
}

/// Validate an arbitrary matrix as a density matrix with default tolerances.
pub fn validate_density(m: CMatrix) -> Result<DensityMatrix> {
    DensityMatrix::new(m)
}

/// `ρ ∈ ℛ`: every entry real within `tol`.
pub fn is_real_state(rho: &DensityMatrix, tol: f64) -> bool {
    rho.max_imaginary() <= tol
}

/// Probabilities with matching states, `Σ p_j = 1`.
#[derive(Clone, Debug)]
pub struct StateEnsemble {
    weights: Vec<f64>,
    states: Vec<DensityMatrix>,
}

impl StateEnsemble {
    pub fn new(weights: Vec<f64>, states: Vec<DensityMatrix>) -> Result<Self> {
        if weights.len() != states.len() || states.is_empty() {
            return Err(Error::DimensionMismatch {
                expected: weights.len(),
                found: states.len(),
            });
        }
        let sum: f64 = weights.iter().sum();
        if weights.iter().any(|&w| w.is_nan() || w < 0.0) || (sum - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidWeights { sum });
        }
        let dim = states[0].dim();
        if let Some(bad) = states.iter().find(|s| s.dim() != dim) {
            return Err(Error::DimensionMismatch {
                expected: dim,
                found: bad.dim(),
            });
        }
        Ok(Self { weights, states })
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn states(&self) -> &[DensityMatrix] {
        &self.states
    }

    /// `Σ p_j ρ_j`.
    pub fn average(&self) -> DensityMatrix {
        let dim = self.states[0].dim();
        let mut acc = CMatrix::zeros(dim, dim);
        for (w, s) in self.weights.iter().zip(&self.states) {
            acc += s.matrix() * c(*w);
        }
        DensityMatrix(HermitianMatrix::hermitize(acc))
    }
}

fn check_rank(dim: usize, rank: usize) -> Result<()> {
    if dim == 0 || rank == 0 || rank > dim {
        return Err(Error::Domain(format!(
            "rank must satisfy 1 <= rank <= dim, got dim={dim}, rank={rank}"
        )));
    }
    Ok(())
}

pub(crate) fn complex_ginibre(rows: usize, cols: usize, rng: &mut rng::Rng) -> CMatrix {
    let s = std::f64::consts::FRAC_1_SQRT_2;
    CMatrix::from_fn(rows, cols, |_, _| {
        let re: f64 = StandardNormal.sample(rng);
        let im: f64 = StandardNormal.sample(rng);
        Complex64::new(s * re, s * im)
    })
}

pub(crate) fn real_ginibre(rows: usize, cols: usize, rng: &mut rng::Rng) -> DMatrix<f64> {
    DMatrix::from_fn(rows, cols, |_, _| StandardNormal.sample(rng))
}

fn normalized_gram(g: CMatrix) -> DensityMatrix {
    let w = HermitianMatrix::hermitize(&g * g.adjoint());
    let tr = w.trace();
    DensityMatrix(w.scale(1.0 / tr))
}

/// Induced-measure random state: `G G† / Tr(G G†)` with `G` a `dim × rank`
/// complex Ginibre matrix.
pub fn random_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    check_rank(dim, rank)?;
    let mut rng = rng::from_seed(seed);
    Ok(normalized_gram(complex_ginibre(dim, rank, &mut rng)))
}

/// As [`random_density`] with a real Gaussian `G`; the result lies in `ℛ`.
pub fn random_real_density(dim: usize, rank: usize, seed: u64) -> Result<DensityMatrix> {
    check_rank(dim, rank)?;
    let mut rng = rng::from_seed(seed);
    Ok(normalized_gram(to_complex(&real_ginibre(dim, rank, &mut rng))))
}

pub fn to_complex(m: &DMatrix<f64>) -> CMatrix {
    m.map(c)
}

/// Block-diagonal `p₁ρ₁ ⊕ p₂ρ₂`.
pub fn direct_sum_mix(p1: f64, rho1: &DensityMatrix, p2: f64, rho2: &DensityMatrix) -> Result<DensityMatrix> {
    let sum = p1 + p2;
    if !(p1 >= 0.0 && p2 >= 0.0) || (sum - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidWeights { sum });
    }
    let (d1, d2) = (rho1.dim(), rho2.dim());
    let mut m = CMatrix::zeros(d1 + d2, d1 + d2);
    m.view_mut((0, 0), (d1, d1)).copy_from(&(rho1.matrix() * c(p1)));
    m.view_mut((d1, d1), (d2, d2)).copy_from(&(rho2.matrix() * c(p2)));
    Ok(DensityMatrix(HermitianMatrix::hermitize(m)))
}

/// Kronecker product `ρ ⊗ τ`.
pub fn tensor_product(rho: &DensityMatrix, tau: &DensityMatrix) -> DensityMatrix {
    DensityMatrix(HermitianMatrix::hermitize(rho.matrix().kronecker(tau.matrix())))
}

/// Haar unitary: QR of a complex Ginibre matrix with the phases of `diag(R)`
/// moved into `Q`.
pub fn random_unitary(dim: usize, seed: u64) -> CMatrix {
    let mut rng = rng::from_seed(seed);
    let qr = complex_ginibre(dim, dim, &mut rng).qr();
    let (mut q, r) = qr.unpack();
    for k in 0..dim {
        let d = r[(k, k)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { c(1.0) };
        let mut col = q.column_mut(k);
        col *= phase;
    }
    q
}

/// Haar orthogonal matrix, sign-corrected QR of a real Ginibre matrix.
pub fn random_real_orthogonal(dim: usize, seed: u64) -> DMatrix<f64> {
    let mut rng = rng::from_seed(seed);
    let (mut q, r) = real_ginibre(dim, dim, &mut rng).qr().unpack();
    for k in 0..dim {
        if r[(k, k)] < 0.0 {
            q.column_mut(k).neg_mut();
        }
    }
    q
}

#[cfg(test)]
mod tests {
    use super::*;

    fn rho0() -> CMatrix {
        CMatrix::from_row_slice(
            2,
            2,
            &[
                c(0.4),
                Complex64::new(0.3, -0.1),
                Complex64::new(0.3, 0.1),
                c(0.6),
            ],
        )
    }

    #[test]
    fn validation_examples() {
        assert!(validate_density(CMatrix::identity(2, 2) * c(0.5)).is_ok());
        let r = DensityMatrix::with_tolerances(rho0(), DensityTolerances::strict()).unwrap();
        assert!(!is_real_state(&r, 1e-12));
        let printed = CMatrix::from_row_slice(
            2,
            2,
            &[
                c(0.6),
                Complex64::new(0.1, 0.1),
                Complex64::new(0.1, 0.1),
                c(0.4),
            ],
        );
        assert!(matches!(validate_density(printed), Err(Error::NotHermitian { .. })));
    }

    #[test]
    fn validation_names_each_violation() {
        let neg = HermitianMatrix::from_real_diagonal(&[1.2, -0.2]).into_matrix();
        assert!(matches!(
            validate_density(neg),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
        let tr = HermitianMatrix::from_real_diagonal(&[0.5, 0.6]).into_matrix();
        match validate_density(tr) {
            Err(Error::TraceNotOne { deviation, .. }) => assert!((deviation - 0.1).abs() < 1e-12),
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn realness_examples() {
        assert!(is_real_state(&DensityMatrix::from_real_diagonal(&[0.3, 0.7]).unwrap(), 0.0));
        let plus = DensityMatrix::pure(&[c(1.0), c(1.0)]).unwrap();
        assert!(is_real_state(&plus, 1e-15));
    }

    #[test]
    fn random_density_examples() {
        let one = random_density(1, 1, 3).unwrap();
        assert!((one.matrix()[(0, 0)] - c(1.0)).norm() < 1e-15);
        assert_eq!(random_density(2, 2, 7).unwrap(), random_density(2, 2, 7).unwrap());
        assert!(random_density(2, 3, 1).is_err());
        assert!(random_density(2, 0, 1).is_err());
    }

    #[test]
    fn ginibre_average_is_maximally_mixed() {
        let n = 10_000;
        let mut acc = CMatrix::zeros(2, 2);
        for s in 0..n {
            acc += random_density(2, 2, s).unwrap().matrix();
        }
        acc /= c(n as f64);
        let dev = max_abs(&(acc - CMatrix::identity(2, 2) * c(0.5)));
        assert!(dev < 0.02, "deviation {dev}");
    }

    #[test]
    fn random_real_density_examples() {
        let r = random_real_density(1, 1, 4).unwrap();
        assert!((r.matrix()[(0, 0)] - c(1.0)).norm() < 1e-15);
        let p = random_real_density(3, 1, 11).unwrap();
        assert!(is_real_state(&p, 0.0));
        assert!((p.hermitian().trace() - 1.0).abs() < 1e-12);
        let ev = p.eigenvalues();
        assert!(ev[0].abs() < 1e-12 && ev[1].abs() < 1e-12 && (ev[2] - 1.0).abs() < 1e-12);
    }

    #[test]
    fn direct_sum_examples() {
        let one = DensityMatrix::maximally_mixed(1);
        let s = direct_sum_mix(0.5, &one, 0.5, &one).unwrap();
        assert_eq!(s, DensityMatrix::maximally_mixed(2));
        let s = direct_sum_mix(0.3, &one, 0.7, &DensityMatrix::maximally_mixed(2)).unwrap();
        let expect = HermitianMatrix::from_real_diagonal(&[0.3, 0.35, 0.35]);
        assert!(max_abs(&(s.matrix() - expect.matrix())) < 1e-16);
        let r = random_density(2, 2, 1).unwrap();
        let s = direct_sum_mix(1.0, &r, 0.0, &one).unwrap();
        assert!((s.hermitian().trace() - 1.0).abs() < 1e-15);
        assert!(matches!(
            direct_sum_mix(0.5, &r, 0.6, &one),
            Err(Error::InvalidWeights { .. })
        ));
    }

    #[test]
    fn tensor_examples() {
        let r = random_density(3, 2, 5).unwrap();
        assert_eq!(tensor_product(&r, &DensityMatrix::maximally_mixed(1)), r);
        let m = DensityMatrix::maximally_mixed(2);
        assert_eq!(tensor_product(&m, &m), DensityMatrix::maximally_mixed(4));
        let t = random_density(2, 2, 6).unwrap();
        let lhs = tensor_product(&r, &t).conjugate();
        let rhs = tensor_product(&r.conjugate(), &t.conjugate());
        assert!(max_abs(&(lhs.matrix() - rhs.matrix())) < 1e-16);
    }

    #[test]
    fn unitary_examples() {
        let u = random_unitary(1, 3);
        assert!((u[(0, 0)].norm() - 1.0).abs() < 1e-15);
        for dim in 1..7 {
            let u = random_unitary(dim, dim as u64);
            let err = max_abs(&(u.adjoint() * &u - CMatrix::identity(dim, dim)));
            assert!(err < 1e-10);
            for col in u.column_iter() {
                assert!((col.norm() - 1.0).abs() < 1e-10);
            }
            let o = random_real_orthogonal(dim, dim as u64);
            let err = (o.transpose() * &o - DMatrix::<f64>::identity(dim, dim)).amax();
            assert!(err < 1e-10);
        }
    }

    #[test]
    fn ensemble_average() {
        let a = DensityMatrix::from_real_diagonal(&[1.0, 0.0]).unwrap();
        let b = DensityMatrix::from_real_diagonal(&[0.0, 1.0]).unwrap();
        let e = StateEnsemble::new(vec![0.25, 0.75], vec![a.clone(), b.clone()]).unwrap();
        let expect = HermitianMatrix::from_real_diagonal(&[0.25, 0.75]);
        assert_eq!(e.average().hermitian(), &expect);
        assert!(StateEnsemble::new(vec![0.5, 0.6], vec![a, b]).is_err());
    }
}
