//! Spectral calculus on Hermitian matrices.
//!
//! Every matrix function here is a spectral function: decompose
//! `A = U diag(λ) U†`, map the eigenvalues, reassemble. Composite results are
//! re-symmetrized as `(M + M†)/2` so that downstream traces stay real.
//!
//! Near-zero eigenvalues are the main numerical hazard. A PSD matrix computed
//! in floating point carries eigenvalues of order `ε‖A‖` where the exact value
//! is zero, and a fractional power such as `λ^0.1` turns `1e-17` into `0.02`.
//! Eigenvalues with `|λ| ≤ clip_tol` are therefore treated as exact zeros,
//! with `clip_tol = 1e-12 · max(1, λ_max)`. Negative powers additionally
//! require `λ_min > pd_tol = 1e-10 · max(1, λ_max)`.

use nalgebra::DMatrix;
use num_complex::Complex64;

use crate::error::{Error, Result};

pub type CMatrix = DMatrix<Complex64>;

/// Relative Hermiticity tolerance: `|a_ij − conj(a_ji)| ≤ 1e-12 · max(1, max|a|)`.
pub const HERMITIAN_RTOL: f64 = 1e-12;
/// Relative eigenvalue clipping tolerance for PSD inputs.
pub const CLIP_RTOL: f64 = 1e-12;
/// Relative positive-definiteness gate.
pub const PD_RTOL: f64 = 1e-10;

pub(crate) fn c(re: f64) -> Complex64 {
    Complex64::new(re, 0.0)
}

/// Largest entry modulus.
pub fn max_abs(m: &CMatrix) -> f64 {
    m.iter().map(|z| z.norm()).fold(0.0, f64::max)
}

/// Largest `|a_ij − conj(a_ji)|`.
pub fn max_asymmetry(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst: f64 = 0.0;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Entrywise complex conjugate `A*` (not the adjoint).
pub fn entrywise_conjugate(m: &CMatrix) -> CMatrix {
    m.map(|z| z.conj())
}

/// `Tr(A B)` without forming the product.
pub(crate) fn trace_of_product(a: &CMatrix, b: &CMatrix) -> Complex64 {
    let n = a.nrows();
    let mut acc = Complex64::new(0.0, 0.0);
    for i in 0..n {
        for k in 0..a.ncols() {
            acc += a[(i, k)] * b[(k, i)];
        }
    }
    acc
}

/// A complex Hermitian matrix.
#[derive(Clone, Debug, PartialEq)]
pub struct HermitianMatrix(CMatrix);

impl HermitianMatrix {
    /// Validates Hermiticity within the relative tolerance and stores the
    /// symmetrized matrix.
    pub fn new(m: CMatrix) -> Result<Self> {
        if !m.is_square() {
            return Err(Error::NotSquare {
                rows: m.nrows(),
                cols: m.ncols(),
            });
        }
        let tolerance = HERMITIAN_RTOL * max_abs(&m).max(1.0);
        let asymmetry = max_asymmetry(&m);
        if asymmetry > tolerance {
            return Err(Error::NotHermitian {
                asymmetry,
                tolerance,
            });
        }
        Ok(Self::hermitize(m))
    }

    /// `(M + M†)/2`, trusted to be close to Hermitian already.
    pub(crate) fn hermitize(m: CMatrix) -> Self {
        let adj = m.adjoint();
        Self((m + adj) * c(0.5))
    }

    pub fn from_real_diagonal(diag: &[f64]) -> Self {
        let n = diag.len();
        Self(CMatrix::from_fn(n, n, |i, j| if i == j { c(diag[i]) } else { c(0.0) }))
    }

    pub fn identity(dim: usize) -> Self {
        Self(CMatrix::identity(dim, dim))
    }

    pub fn zeros(dim: usize) -> Self {
        Self(CMatrix::zeros(dim, dim))
    }

    pub fn dim(&self) -> usize {
        self.0.nrows()
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.0
    }

    pub fn into_matrix(self) -> CMatrix {
        self.0
    }

    pub fn trace(&self) -> f64 {
        self.0.diagonal().iter().map(|z| z.re).sum()
    }

    pub fn conjugate(&self) -> Self {
        Self(entrywise_conjugate(&self.0))
    }

    pub fn scale(&self, factor: f64) -> Self {
        Self(&self.0 * c(factor))
    }

    pub fn add(&self, other: &Self) -> Self {
        Self(&self.0 + &other.0)
    }

    pub fn sub(&self, other: &Self) -> Self {
        Self(&self.0 - &other.0)
    }

    /// `K A K†` for any conformable `K`.
    pub fn congruence(&self, k: &CMatrix) -> Self {
        Self::hermitize(k * &self.0 * k.adjoint())
    }

    pub fn decompose(&self) -> SpectralDecomposition {
        SpectralDecomposition::of(self)
    }

    pub fn eigenvalues(&self) -> Vec<f64> {
        self.decompose().eigenvalues
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues().first().copied().unwrap_or(0.0)
    }
}

/// `A = U diag(λ) U†` with eigenvalues ascending.
#[derive(Clone, Debug)]
pub struct SpectralDecomposition {
    pub eigenvalues: Vec<f64>,
    pub eigenvectors: CMatrix,
}

impl SpectralDecomposition {
    fn of(a: &HermitianMatrix) -> Self {
        let n = a.dim();
        if n == 0 {
            return Self {
                eigenvalues: Vec::new(),
                eigenvectors: CMatrix::zeros(0, 0),
            };
        }
        let eig = a.0.clone().symmetric_eigen();
        let mut order: Vec<usize> = (0..n).collect();
        order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));
        let eigenvalues = order.iter().map(|&i| eig.eigenvalues[i]).collect();
        let eigenvectors = CMatrix::from_fn(n, n, |r, k| eig.eigenvectors[(r, order[k])]);
        Self {
            eigenvalues,
            eigenvectors,
        }
    }

    pub fn dim(&self) -> usize {
        self.eigenvalues.len()
    }

    pub fn max_eigenvalue(&self) -> f64 {
        self.eigenvalues.last().copied().unwrap_or(0.0)
    }

    pub fn min_eigenvalue(&self) -> f64 {
        self.eigenvalues.first().copied().unwrap_or(0.0)
    }

    pub fn clip_tol(&self) -> f64 {
        CLIP_RTOL * self.max_eigenvalue().max(1.0)
    }

    pub fn pd_tol(&self) -> f64 {
        PD_RTOL * self.max_eigenvalue().max(1.0)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.min_eigenvalue() > self.pd_tol()
    }

    pub fn check_psd(&self) -> Result<()> {
        let tolerance = self.clip_tol();
        if self.min_eigenvalue() < -tolerance {
            return Err(Error::NotPositiveSemidefinite {
                eigenvalue: self.min_eigenvalue(),
                tolerance: -tolerance,
            });
        }
        Ok(())
    }

    pub fn check_pd(&self) -> Result<()> {
        if !self.is_positive_definite() {
            return Err(Error::NotPositiveDefinite {
                eigenvalue: self.min_eigenvalue(),
                threshold: self.pd_tol(),
            });
        }
        Ok(())
    }

    /// Eigenvalues with `|λ| ≤ clip_tol` replaced by exact zeros.
    pub fn clipped_eigenvalues(&self) -> Vec<f64> {
        let tol = self.clip_tol();
        self.eigenvalues
            .iter()
            .map(|&x| if x.abs() <= tol { 0.0 } else { x })
            .collect()
    }

    /// `U diag(f(λ)) U†` over the raw eigenvalues.
    pub fn apply<F: Fn(f64) -> f64>(&self, f: F) -> HermitianMatrix {
        self.assemble(self.eigenvalues.iter().map(|&x| f(x)))
    }

    fn assemble<I: Iterator<Item = f64>>(&self, values: I) -> HermitianMatrix {
        let u = &self.eigenvectors;
        let mut scaled = u.clone();
        for (k, v) in values.enumerate() {
            scaled.column_mut(k).scale_mut(v);
        }
        HermitianMatrix::hermitize(scaled * u.adjoint())
    }

    pub fn reconstruct(&self) -> HermitianMatrix {
        self.apply(|x| x)
    }

    /// Decomposition of the entrywise conjugate: same spectrum, conjugated
    /// eigenvectors.
    pub fn conjugate(&self) -> Self {
        Self {
            eigenvalues: self.eigenvalues.clone(),
            eigenvectors: entrywise_conjugate(&self.eigenvectors),
        }
    }

    /// `λ ↦ λ^t` on a PSD spectrum, with the `0^t = 0` convention for every
    /// `t ≥ 0` (so `t = 0` yields the support projector). Negative `t`
    /// requires positive definiteness.
    pub fn power(&self, t: f64) -> Result<HermitianMatrix> {
        self.check_psd()?;
        if t < 0.0 {
            self.check_pd()?;
            return Ok(self.apply(|x| x.powf(t)));
        }
        Ok(self.power_clipped(t))
    }

    /// As [`power`](Self::power) for `t ≥ 0`, without the PSD check.
    pub(crate) fn power_clipped(&self, t: f64) -> HermitianMatrix {
        self.assemble(
            self.clipped_eigenvalues()
                .into_iter()
                .map(|x| if x <= 0.0 { 0.0 } else { x.powf(t) }),
        )
    }

    /// `Σ λ_i^t` over the clipped spectrum, `t > 0`.
    pub(crate) fn trace_power_clipped(&self, t: f64) -> f64 {
        self.clipped_eigenvalues()
            .into_iter()
            .filter(|&x| x > 0.0)
            .map(|x| x.powf(t))
            .sum()
    }
}

/// Eigendecomposition of a Hermitian matrix, eigenvalues ascending.
pub fn spectral_decompose(a: &HermitianMatrix) -> SpectralDecomposition {
    a.decompose()
}

/// Fractional power `A^t` of a PSD matrix.
pub fn matrix_power(a: &HermitianMatrix, t: f64) -> Result<HermitianMatrix> {
    if !t.is_finite() {
        return Err(Error::Domain(format!("exponent must be finite, got {t}")));
    }
    a.decompose().power(t)
}

/// `Tr A^t` for PSD `A` and `t > 0`.
pub fn trace_power(a: &HermitianMatrix, t: f64) -> Result<f64> {
    if !(t > 0.0 && t.is_finite()) {
        return Err(Error::Domain(format!("trace power needs t > 0, got {t}")));
    }
    let d = a.decompose();
    d.check_psd()?;
    Ok(d.trace_power_clipped(t))
}

/// `A^{1/2} (A^{-1/2} B A^{-1/2})^t A^{1/2}` for PD `A`, `B` and any real `t`.
///
/// For `t ∈ [0, 1]` this is the weighted geometric mean `A ♯_t B`; other
/// values of `t` extend the geodesic through `A` and `B`.
pub fn geometric_path(a: &HermitianMatrix, b: &HermitianMatrix, t: f64) -> Result<HermitianMatrix> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    let da = a.decompose();
    da.check_pd()?;
    b.decompose().check_pd()?;
    let half = da.apply(f64::sqrt);
    let inv_half = da.apply(|x| 1.0 / x.sqrt());
    let inner = b.congruence(inv_half.matrix());
    let inner_t = inner.decompose().apply(|x| x.max(0.0).powf(t));
    Ok(inner_t.congruence(half.matrix()))
}

/// Weighted geometric mean `A ♯_λ B`, `λ ∈ (0, 1)`.
pub fn weighted_geometric_mean(
    a: &HermitianMatrix,
    b: &HermitianMatrix,
    lam: f64,
) -> Result<HermitianMatrix> {
    if !(lam > 0.0 && lam < 1.0) {
        return Err(Error::Domain(format!(
            "geometric mean weight must lie in (0, 1), got {lam}"
        )));
    }
    geometric_path(a, b, lam)
}

/// Deformed logarithm `ln_λ X = (X^λ − I)/λ`, `λ ∈ (0, 1]`.
pub fn deformed_log(x: &HermitianMatrix, lam: f64) -> Result<HermitianMatrix> {
    if !(lam > 0.0 && lam <= 1.0) {
        return Err(Error::Domain(format!(
            "deformed logarithm parameter must lie in (0, 1], got {lam}"
        )));
    }
    let d = x.decompose();
    d.check_pd()?;
    Ok(d.apply(|v| deformed_log_scalar(v, lam)))
}

/// `(x^λ − 1)/λ`, accurate for small `λ`.
pub fn deformed_log_scalar(x: f64, lam: f64) -> f64 {
    (lam * x.ln()).exp_m1() / lam
}

/// `min λ(B − A)`; non-negative iff `A ≤ B` in the Loewner order.
pub fn loewner_slack(a: &HermitianMatrix, b: &HermitianMatrix) -> Result<f64> {
    if a.dim() != b.dim() {
        return Err(Error::DimensionMismatch {
            expected: a.dim(),
            found: b.dim(),
        });
    }
    Ok(b.sub(a).min_eigenvalue())
}

/// `A ≤ B` in the Loewner order, up to `tol` on the smallest eigenvalue of `B − A`.
pub fn loewner_leq(a: &HermitianMatrix, b: &HermitianMatrix, tol: f64) -> Result<bool> {
    Ok(loewner_slack(a, b)? >= -tol)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn herm(rows: &[&[(f64, f64)]]) -> HermitianMatrix {
        let n = rows.len();
        HermitianMatrix::new(CMatrix::from_fn(n, n, |i, j| {
            Complex64::new(rows[i][j].0, rows[i][j].1)
        }))
        .unwrap()
    }

    fn max_diff(a: &HermitianMatrix, b: &HermitianMatrix) -> f64 {
        max_abs(&(a.matrix() - b.matrix()))
    }

    fn bloch_y(a: f64) -> HermitianMatrix {
        herm(&[&[(0.5, 0.0), (0.0, -0.5 * a)], &[(0.0, 0.5 * a), (0.5, 0.0)]])
    }

    #[test]
    fn decompose_identity_and_diagonal() {
        let d = HermitianMatrix::identity(2).decompose();
        assert_eq!(d.eigenvalues, vec![1.0, 1.0]);
        let d = HermitianMatrix::from_real_diagonal(&[0.75, 0.25]).decompose();
        assert!((d.eigenvalues[0] - 0.25).abs() < 1e-15);
        assert!((d.eigenvalues[1] - 0.75).abs() < 1e-15);
    }

    #[test]
    fn decompose_bloch_y_state() {
        let d = bloch_y(0.6).decompose();
        assert!((d.eigenvalues[0] - 0.2).abs() < 1e-14);
        assert!((d.eigenvalues[1] - 0.8).abs() < 1e-14);
        assert!(max_diff(&d.reconstruct(), &bloch_y(0.6)) < 1e-14);
    }

    #[test]
    fn rejects_non_hermitian_naming_asymmetry() {
        let m = CMatrix::from_row_slice(
            2,
            2,
            &[c(0.6), Complex64::new(0.1, 0.1), Complex64::new(0.1, 0.1), c(0.4)],
        );
        match HermitianMatrix::new(m) {
            Err(Error::NotHermitian { asymmetry, .. }) => assert!((asymmetry - 0.2).abs() < 1e-15),
            other => panic!("unexpected {other:?}"),
        }
        let rect = CMatrix::zeros(2, 3);
        assert!(matches!(HermitianMatrix::new(rect), Err(Error::NotSquare { .. })));
    }

    #[test]
    fn power_examples() {
        let id = HermitianMatrix::identity(3);
        assert!(max_diff(&matrix_power(&id, 0.37).unwrap(), &id) < 1e-15);
        let p = matrix_power(&HermitianMatrix::from_real_diagonal(&[0.04, 0.25]), 0.5).unwrap();
        assert!(max_diff(&p, &HermitianMatrix::from_real_diagonal(&[0.2, 0.5])) < 1e-15);
        let p = matrix_power(&HermitianMatrix::from_real_diagonal(&[0.0, 1.0]), 0.5).unwrap();
        assert!(max_diff(&p, &HermitianMatrix::from_real_diagonal(&[0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn power_zero_is_support_projector() {
        let p = matrix_power(&HermitianMatrix::from_real_diagonal(&[0.0, 0.3, 2.0]), 0.0).unwrap();
        assert!(max_diff(&p, &HermitianMatrix::from_real_diagonal(&[0.0, 1.0, 1.0])) < 1e-15);
    }

    #[test]
    fn negative_power_of_singular_matrix_fails() {
        let a = HermitianMatrix::from_real_diagonal(&[0.0, 1.0]);
        assert!(matches!(matrix_power(&a, -0.5), Err(Error::NotPositiveDefinite { .. })));
        let neg = HermitianMatrix::from_real_diagonal(&[-0.1, 1.0]);
        assert!(matches!(
            matrix_power(&neg, 0.5),
            Err(Error::NotPositiveSemidefinite { .. })
        ));
    }

    #[test]
    fn tiny_eigenvalues_are_clipped() {
        let a = HermitianMatrix::from_real_diagonal(&[-1e-14, 1e-17, 1.0]);
        let p = matrix_power(&a, 0.1).unwrap();
        assert!(max_diff(&p, &HermitianMatrix::from_real_diagonal(&[0.0, 0.0, 1.0])) < 1e-15);
    }

    #[test]
    fn geometric_mean_examples() {
        let half = HermitianMatrix::identity(2).scale(0.5);
        let m = weighted_geometric_mean(&half, &half, 0.3).unwrap();
        assert!(max_diff(&m, &half) < 1e-15);

        let a = HermitianMatrix::from_real_diagonal(&[1.0, 4.0]);
        let b = HermitianMatrix::from_real_diagonal(&[4.0, 1.0]);
        let m = weighted_geometric_mean(&a, &b, 0.5).unwrap();
        assert!(max_diff(&m, &HermitianMatrix::from_real_diagonal(&[2.0, 2.0])) < 1e-14);

        let m = weighted_geometric_mean(&bloch_y(0.6), &bloch_y(-0.6), 0.5).unwrap();
        assert!(max_diff(&m, &HermitianMatrix::identity(2).scale(0.4)) < 1e-14);
    }

    #[test]
    fn geometric_mean_rejects_singular_and_bad_weight() {
        let a = HermitianMatrix::from_real_diagonal(&[0.0, 1.0]);
        let b = HermitianMatrix::identity(2);
        assert!(matches!(
            weighted_geometric_mean(&a, &b, 0.5),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(
            weighted_geometric_mean(&b, &a, 0.5),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(matches!(weighted_geometric_mean(&b, &b, 1.5), Err(Error::Domain(_))));
    }

    #[test]
    fn deformed_log_examples() {
        let z = deformed_log(&HermitianMatrix::identity(3), 0.4).unwrap();
        assert!(max_abs(z.matrix()) < 1e-15);
        let l = deformed_log(&HermitianMatrix::from_real_diagonal(&[4.0]), 0.5).unwrap();
        assert!((l.trace() - 2.0).abs() < 1e-14);
        // ln_λ x − ln x = O(λ (ln x)^2)
        let e = std::f64::consts::E;
        let l = deformed_log(&HermitianMatrix::from_real_diagonal(&[e]), 1e-6).unwrap();
        assert!((l.trace() - 1.0).abs() < 1e-5);
    }

    #[test]
    fn conjugate_is_an_involution() {
        let rho0 = herm(&[&[(0.4, 0.0), (0.3, -0.1)], &[(0.3, 0.1), (0.6, 0.0)]]);
        let expect = herm(&[&[(0.4, 0.0), (0.3, 0.1)], &[(0.3, -0.1), (0.6, 0.0)]]);
        assert_eq!(rho0.conjugate(), expect);
        assert_eq!(rho0.conjugate().conjugate(), rho0);
        let real = HermitianMatrix::from_real_diagonal(&[0.1, 0.9]);
        assert_eq!(real.conjugate(), real);
    }

    #[test]
    fn loewner_examples() {
        let zero = HermitianMatrix::zeros(2);
        let id = HermitianMatrix::identity(2);
        assert!(loewner_leq(&zero, &id, 0.0).unwrap());
        assert!(!loewner_leq(&id, &zero, 0.0).unwrap());
        let a = HermitianMatrix::from_real_diagonal(&[1.0, 3.0]);
        let b = HermitianMatrix::from_real_diagonal(&[2.0, 2.0]);
        assert!(!loewner_leq(&a, &b, 0.0).unwrap());
        assert!(!loewner_leq(&b, &a, 0.0).unwrap());
        assert!(matches!(
            loewner_leq(&a, &HermitianMatrix::identity(3), 0.0),
            Err(Error::DimensionMismatch { .. })
        ));
    }
}
