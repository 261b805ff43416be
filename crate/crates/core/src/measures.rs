//! Relative-entropy quantities and the four imaginarity measures.
//!
//! | id         | value                              | domain                      |
//! |------------|------------------------------------|-----------------------------|
//! | `umegaki`  | `S(½(ρ+ρ*)) − S(ρ)`                | all states                  |
//! | `tsallis`  | `1 − Tr ρ^q (ρ*)^{1−q}`            | `q ∈ (0,1)`                 |
//! | `renyi-az` | `1 − f_{α,z}(ρ, ρ*)`               | `0 < max{α,1−α} ≤ z < 1`    |
//! | `operator` | `1 − Tr(δ ♯_λ δ*)`                 | `λ ∈ (0,1)`, `δ` PD         |
//!
//! with `f_{α,z}(ρ,σ) = Tr(σ^{(1−α)/2z} ρ^{α/z} σ^{(1−α)/2z})^z`. All
//! logarithms are natural.
//!
//! Because `(ρ*)^t = (ρ^t)*`, every measure needs only one decomposition of
//! `ρ` for the conjugate pair; [`PreparedState`] caches it so that a whole
//! parameter grid costs one extra decomposition per point at most.

use std::fmt;
use std::str::FromStr;

use nalgebra::DVector;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::matrixfn::{
    deformed_log, entrywise_conjugate, CMatrix, trace_of_product, weighted_geometric_mean, HermitianMatrix,
    SpectralDecomposition,
};
use crate::states::DensityMatrix;

/// Slack on `max{α, 1−α} ≤ z` so that `z = 1 − α` typed in decimal is accepted.
const DOMAIN_SLACK: f64 = 1e-12;

/// `(α, z)` with `0 < max{α, 1−α} ≤ z < 1`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct AZParams {
    alpha: f64,
    z: f64,
}

impl AZParams {
    pub fn new(alpha: f64, z: f64) -> Result<Self> {
        let lower = alpha.max(1.0 - alpha);
        if !(alpha.is_finite() && z.is_finite()) || lower.partial_cmp(&0.0) != Some(std::cmp::Ordering::Greater) || lower > z + DOMAIN_SLACK || z >= 1.0 {
            return Err(Error::Domain(format!(
                "(alpha, z) = ({alpha}, {z}) violates 0 < max(alpha, 1 - alpha) <= z < 1"
            )));
        }
        Ok(Self { alpha, z })
    }

    /// The diagonal `α = z`; requires `α ∈ [1/2, 1)`.
    pub fn diagonal(alpha: f64) -> Result<Self> {
        Self::new(alpha, alpha)
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn z(&self) -> f64 {
        self.z
    }

    /// `(1−α, z)`, always in the domain when `self` is.
    pub fn mirrored(&self) -> Self {
        Self {
            alpha: 1.0 - self.alpha,
            z: self.z,
        }
    }

    fn outer_exponent(&self) -> f64 {
        (1.0 - self.alpha) / (2.0 * self.z)
    }

    fn inner_exponent(&self) -> f64 {
        self.alpha / self.z
    }
}

fn check_open_unit(name: &str, v: f64) -> Result<()> {
    if !(v > 0.0 && v < 1.0) {
        return Err(Error::Domain(format!("{name} must lie in (0, 1), got {v}")));
    }
    Ok(())
}

fn sandwiched_trace(outer: &HermitianMatrix, inner: &HermitianMatrix, z: f64) -> f64 {
    inner.congruence(outer.matrix()).decompose().trace_power_clipped(z)
}

/// `f_{α,z}(ρ, σ) = Tr(σ^{(1−α)/2z} ρ^{α/z} σ^{(1−α)/2z})^z`.
///
/// Singular `σ` is fine: both exponents are positive in the domain and the
/// `0^t = 0` convention restricts the computation to the support.
pub fn f_alpha_z(rho: &DensityMatrix, sigma: &DensityMatrix, p: AZParams) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let outer = sigma.decompose().power_clipped(p.outer_exponent());
    let inner = rho.decompose().power_clipped(p.inner_exponent());
    Ok(sandwiched_trace(&outer, &inner, p.z))
}

/// `D_{α,z}(ρ‖σ) = log f_{α,z}(ρ,σ) / (α − 1)`; `+∞` when `f` vanishes.
pub fn renyi_az_divergence(rho: &DensityMatrix, sigma: &DensityMatrix, p: AZParams) -> Result<f64> {
    let f = f_alpha_z(rho, sigma, p)?;
    if f <= 0.0 {
        return Ok(f64::INFINITY);
    }
    Ok(f.ln() / (p.alpha - 1.0))
}

/// Von Neumann entropy `−Tr ρ ln ρ` with `0 ln 0 = 0`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    spectrum_entropy(&rho.decompose())
}

fn spectrum_entropy(d: &SpectralDecomposition) -> f64 {
    d.clipped_eigenvalues()
        .into_iter()
        .filter(|&x| x > 0.0)
        .map(|x| -x * x.ln())
        .sum()
}

/// Umegaki relative entropy `Tr ρ ln ρ − Tr ρ ln σ`; `+∞` if the support of
/// `ρ` leaks out of the support of `σ`.
pub fn relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix) -> Result<f64> {
    if rho.dim() != sigma.dim() {
        return Err(Error::DimensionMismatch {
            expected: rho.dim(),
            found: sigma.dim(),
        });
    }
    let ds = sigma.decompose();
    let tol = ds.clip_tol();
    let kernel = ds.apply(|x| if x <= tol { 1.0 } else { 0.0 });
    if trace_of_product(rho.matrix(), kernel.matrix()).re > 1e-12 {
        return Ok(f64::INFINITY);
    }
    let log_sigma = ds.apply(|x| if x <= tol { 0.0 } else { x.ln() });
    let cross = trace_of_product(rho.matrix(), log_sigma.matrix()).re;
    Ok(-von_neumann_entropy(rho) - cross)
}

/// Tsallis relative entropy `K_q(ρ‖σ) = (1 − Tr ρ^q σ^{1−q}) / (1 − q)`.
pub fn tsallis_relative_entropy(rho: &DensityMatrix, sigma: &DensityMatrix, q: f64) -> Result<f64> {
    check_open_unit("q", q)?;
    let a = rho.decompose().power_clipped(q);
    let b = sigma.decompose().power_clipped(1.0 - q);
    Ok((1.0 - trace_of_product(a.matrix(), b.matrix()).re) / (1.0 - q))
}

/// `T_λ(δ‖η) = δ^{1/2} ln_λ(δ^{−1/2} η δ^{−1/2}) δ^{1/2}`.
pub fn tsallis_relative_operator_entropy(
    delta: &DensityMatrix,
    eta: &DensityMatrix,
    lam: f64,
) -> Result<HermitianMatrix> {
    if delta.dim() != eta.dim() {
        return Err(Error::DimensionMismatch {
            expected: delta.dim(),
            found: eta.dim(),
        });
    }
    let dd = delta.decompose();
    dd.check_pd()?;
    eta.check_positive_definite()?;
    let half = dd.apply(f64::sqrt);
    let inv_half = dd.apply(|x| 1.0 / x.sqrt());
    let inner = eta.hermitian().congruence(inv_half.matrix());
    Ok(deformed_log(&inner, lam)?.congruence(half.matrix()))
}

/// The same operator through `(δ ♯_λ η − δ)/λ`; at `λ = 1` this is `η − δ`.
pub fn tsallis_relative_operator_entropy_via_mean(
    delta: &DensityMatrix,
    eta: &DensityMatrix,
    lam: f64,
) -> Result<HermitianMatrix> {
    if !(lam > 0.0 && lam <= 1.0) {
        return Err(Error::Domain(format!("lambda must lie in (0, 1], got {lam}")));
    }
    let mean = if lam == 1.0 {
        delta.check_positive_definite()?;
        eta.check_positive_definite()?;
        eta.hermitian().clone()
    } else {
        weighted_geometric_mean(delta.hermitian(), eta.hermitian(), lam)?
    };
    Ok(mean.sub(delta.hermitian()).scale(1.0 / lam))
}

/// A state with its spectrum cached for repeated measure evaluation.
#[derive(Clone, Debug)]
pub struct PreparedState<'a> {
    rho: &'a DensityMatrix,
    spectrum: SpectralDecomposition,
}

impl<'a> PreparedState<'a> {
    pub fn new(rho: &'a DensityMatrix) -> Self {
        Self {
            rho,
            spectrum: rho.decompose(),
        }
    }

    pub fn state(&self) -> &DensityMatrix {
        self.rho
    }

    /// `f_{α,z}(ρ, ρ*)`.
    ///
    /// With `ρ = U D Uᵀ`-style factors `ρ = U D U†`, `ρ* = Ū D Uᵀ` and
    /// `V = UᵀU`, the sandwich is unitarily similar to
    /// `Y = D^s V D^t V† D^s` (`s` outer, `t` inner exponent), so only the
    /// support of `ρ` enters and no eigenvalue of the composite needs to be
    /// clipped: a legitimately tiny eigenvalue of `Y` is kept.
    pub fn f_conjugate(&self, p: AZParams) -> f64 {
        let d = self.spectrum.clipped_eigenvalues();
        let support: Vec<usize> = (0..d.len()).filter(|&i| d[i] > 0.0).collect();
        let us = self.spectrum.eigenvectors.select_columns(&support);
        let v = us.transpose() * &us;
        let (s, t) = (p.outer_exponent(), p.inner_exponent());
        let ds: Vec<f64> = support.iter().map(|&i| d[i].powf(s)).collect();
        let dt = DVector::from_iterator(support.len(), support.iter().map(|&i| Complex64::new(d[i].powf(t), 0.0)));
        let m = &v * CMatrix::from_diagonal(&dt) * v.adjoint();
        let y = HermitianMatrix::hermitize(CMatrix::from_fn(support.len(), support.len(), |i, j| {
            m[(i, j)] * (ds[i] * ds[j])
        }));
        y.eigenvalues().into_iter().filter(|&x| x > 0.0).map(|x| x.powf(p.z)).sum()
    }

    pub fn renyi(&self, p: AZParams) -> f64 {
        1.0 - self.f_conjugate(p)
    }

    /// `Tr ρ^q (ρ*)^{1−q}`.
    pub fn tsallis_overlap(&self, q: f64) -> Result<f64> {
        check_open_unit("q", q)?;
        let a = self.spectrum.power_clipped(q);
        let b = self.spectrum.power_clipped(1.0 - q);
        Ok(trace_of_product(a.matrix(), &entrywise_conjugate(b.matrix())).re)
    }

    pub fn tsallis(&self, q: f64) -> Result<f64> {
        Ok(1.0 - self.tsallis_overlap(q)?)
    }

    pub fn umegaki(&self) -> f64 {
        let real_part = HermitianMatrix::hermitize(self.rho.matrix().map(|z| Complex64::new(z.re, 0.0)));
        spectrum_entropy(&real_part.decompose()) - spectrum_entropy(&self.spectrum)
    }

    pub fn is_positive_definite(&self) -> bool {
        self.spectrum.is_positive_definite()
    }

    /// `Tr(δ ♯_λ δ*)`.
    ///
    /// With `δ = U D U†` we have `δ* = Ū D Uᵀ`, so
    /// `δ^{−1/2} δ* δ^{−1/2} = U Y U†` where
    /// `Y = D^{−1/2} W D W† D^{−1/2}`, `W = U†Ū`, and the trace is
    /// `Tr(D Y^λ)`. Forming `Y` in the eigenbasis keeps the scaling by
    /// `D^{−1/2}` diagonal, which is far better conditioned than the generic
    /// mean when `δ` has small eigenvalues.
    pub fn operator_overlap(&self, lam: f64) -> Result<f64> {
        check_open_unit("lambda", lam)?;
        self.spectrum.check_pd()?;
        let d = &self.spectrum.eigenvalues;
        let u = &self.spectrum.eigenvectors;
        let w = u.adjoint() * entrywise_conjugate(u);
        let dw = HermitianMatrix::hermitize(&w * CMatrix::from_diagonal(&DVector::from_iterator(
            d.len(),
            d.iter().map(|&x| Complex64::new(x, 0.0)),
        )) * w.adjoint());
        let inv_sqrt: Vec<f64> = d.iter().map(|x| 1.0 / x.sqrt()).collect();
        let y = HermitianMatrix::hermitize(CMatrix::from_fn(d.len(), d.len(), |i, j| {
            dw.matrix()[(i, j)] * (inv_sqrt[i] * inv_sqrt[j])
        }));
        let y_pow = y.decompose().apply(|x| x.max(0.0).powf(lam));
        Ok(d.iter().enumerate().map(|(i, &di)| di * y_pow.matrix()[(i, i)].re).sum())
    }

    pub fn operator(&self, lam: f64) -> Result<f64> {
        Ok(1.0 - self.operator_overlap(lam)?)
    }
}

/// `M^R_{α,z}(ρ) = 1 − f_{α,z}(ρ, ρ*)`.
pub fn imaginarity_renyi(rho: &DensityMatrix, p: AZParams) -> f64 {
    PreparedState::new(rho).renyi(p)
}

/// `M^T_q(ρ) = (1 − q) K_q(ρ‖ρ*) = 1 − Tr ρ^q (ρ*)^{1−q}`.
pub fn imaginarity_tsallis(rho: &DensityMatrix, q: f64) -> Result<f64> {
    PreparedState::new(rho).tsallis(q)
}

/// `M^V(ρ) = S(½(ρ + ρ*)) − S(ρ)`.
pub fn imaginarity_umegaki(rho: &DensityMatrix) -> f64 {
    PreparedState::new(rho).umegaki()
}

/// `M^O_λ(δ) = 1 − Tr(δ ♯_λ δ*)` for positive definite `δ`.
pub fn imaginarity_operator(delta: &DensityMatrix, lam: f64) -> Result<f64> {
    PreparedState::new(delta).operator(lam)
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum MeasureId {
    Operator,
    RenyiAz,
    Tsallis,
    Umegaki,
}

impl MeasureId {
    pub const ALL: [MeasureId; 4] = [
        MeasureId::Operator,
        MeasureId::RenyiAz,
        MeasureId::Tsallis,
        MeasureId::Umegaki,
    ];

    pub fn as_str(&self) -> &'static str {
        match self {
            MeasureId::Operator => "operator",
            MeasureId::RenyiAz => "renyi-az",
            MeasureId::Tsallis => "tsallis",
            MeasureId::Umegaki => "umegaki",
        }
    }
}

impl fmt::Display for MeasureId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for MeasureId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "operator" | "O" => Ok(MeasureId::Operator),
            "renyi-az" | "renyi" | "R" => Ok(MeasureId::RenyiAz),
            "tsallis" | "T" => Ok(MeasureId::Tsallis),
            "umegaki" | "V" => Ok(MeasureId::Umegaki),
            other => Err(Error::Domain(format!("unknown measure id '{other}'"))),
        }
    }
}

/// Parameter point of one measure evaluation.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum MeasureParams {
    None,
    AlphaZ(AZParams),
    Q(f64),
    Lambda(f64),
}

impl MeasureParams {
    pub fn alpha(&self) -> Option<f64> {
        match self {
            MeasureParams::AlphaZ(p) => Some(p.alpha),
            _ => None,
        }
    }

    pub fn z(&self) -> Option<f64> {
        match self {
            MeasureParams::AlphaZ(p) => Some(p.z),
            _ => None,
        }
    }

    pub fn q(&self) -> Option<f64> {
        match self {
            MeasureParams::Q(q) => Some(*q),
            _ => None,
        }
    }

    pub fn lambda(&self) -> Option<f64> {
        match self {
            MeasureParams::Lambda(l) => Some(*l),
            _ => None,
        }
    }
}

/// Parameter grid shared by the suites and the CLI scans.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ParameterGrid {
    pub alpha_z: Vec<AZParams>,
    pub q: Vec<f64>,
    pub lambda: Vec<f64>,
}

impl Default for ParameterGrid {
    /// `α ∈ {0.1, 0.25, 0.5, 0.75, 0.9}`, `z ∈ {max(α,1−α), midpoint, 0.95}`,
    /// `q, λ ∈ {0.1, 0.3, 0.5, 0.7, 0.9}`.
    fn default() -> Self {
        let alphas = [0.1, 0.25, 0.5, 0.75, 0.9];
        let alpha_z = alphas
            .iter()
            .flat_map(|&a| default_z_values(a).into_iter().map(move |z| AZParams::new(a, z)))
            .collect::<Result<Vec<_>>>()
            .expect("default grid lies in the domain");
        let levels = vec![0.1, 0.3, 0.5, 0.7, 0.9];
        Self {
            alpha_z,
            q: levels.clone(),
            lambda: levels,
        }
    }
}

/// `{max(α,1−α), midpoint, 0.95}` for a given `α`.
pub fn default_z_values(alpha: f64) -> Vec<f64> {
    let lo = alpha.max(1.0 - alpha);
    let hi = 0.95;
    let mut zs = vec![lo, 0.5 * (lo + hi), hi];
    zs.dedup_by(|a, b| (*a - *b).abs() < 1e-15);
    zs.retain(|&z| z >= lo);
    zs
}

impl ParameterGrid {
    /// Every `(measure, parameter)` pair for the selected measures, in
    /// measure order then grid order.
    pub fn points(&self, measures: &[MeasureId]) -> Vec<(MeasureId, MeasureParams)> {
        let mut out = Vec::new();
        for &m in measures {
            match m {
                MeasureId::Umegaki => out.push((m, MeasureParams::None)),
                MeasureId::Tsallis => out.extend(self.q.iter().map(|&q| (m, MeasureParams::Q(q)))),
                MeasureId::RenyiAz => out.extend(self.alpha_z.iter().map(|&p| (m, MeasureParams::AlphaZ(p)))),
                MeasureId::Operator => out.extend(self.lambda.iter().map(|&l| (m, MeasureParams::Lambda(l)))),
            }
        }
        out
    }
}

/// Value of one measure, or the reason it is undefined for the state.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum MeasureValue {
    Value(f64),
    Undefined(String),
}

impl MeasureValue {
    pub fn value(&self) -> Option<f64> {
        match self {
            MeasureValue::Value(v) => Some(*v),
            MeasureValue::Undefined(_) => None,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureEntry {
    pub measure: MeasureId,
    pub params: MeasureParams,
    pub value: MeasureValue,
}

/// Measure values for one state across a set of parameter points.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct MeasureReport {
    pub label: String,
    pub entries: Vec<MeasureEntry>,
}

impl<'a> PreparedState<'a> {
    /// Evaluates one point. Domain errors on the parameters propagate; a
    /// state outside the measure's domain yields [`MeasureValue::Undefined`].
    pub fn evaluate(&self, measure: MeasureId, params: MeasureParams) -> Result<MeasureValue> {
        let v = match (measure, params) {
            (MeasureId::Umegaki, MeasureParams::None) => self.umegaki(),
            (MeasureId::Tsallis, MeasureParams::Q(q)) => self.tsallis(q)?,
            (MeasureId::RenyiAz, MeasureParams::AlphaZ(p)) => self.renyi(p),
            (MeasureId::Operator, MeasureParams::Lambda(l)) => {
                check_open_unit("lambda", l)?;
                if !self.is_positive_definite() {
                    return Ok(MeasureValue::Undefined("not positive definite".into()));
                }
                self.operator(l)?
            }
            (m, p) => {
                return Err(Error::Domain(format!("parameters {p:?} do not apply to measure {m}")));
            }
        };
        Ok(MeasureValue::Value(v))
    }
}

/// Evaluates every point for one state.
pub fn measure_report(
    label: &str,
    rho: &DensityMatrix,
    points: &[(MeasureId, MeasureParams)],
) -> Result<MeasureReport> {
    let prepared = PreparedState::new(rho);
    let entries = points
        .iter()
        .map(|&(measure, params)| {
            Ok(MeasureEntry {
                measure,
                params,
                value: prepared.evaluate(measure, params)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(MeasureReport {
        label: label.to_string(),
        entries,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matrixfn::{c, max_abs, CMatrix};
    use num_complex::Complex64;

    fn bloch_y(a: f64) -> DensityMatrix {
        DensityMatrix::new(CMatrix::from_row_slice(
            2,
            2,
            &[c(0.5), Complex64::new(0.0, -0.5 * a), Complex64::new(0.0, 0.5 * a), c(0.5)],
        ))
        .unwrap()
    }

    fn plus_i() -> DensityMatrix {
        DensityMatrix::pure(&[c(1.0), Complex64::new(0.0, 1.0)]).unwrap()
    }

    fn binary_entropy(p: f64) -> f64 {
        -p * p.ln() - (1.0 - p) * (1.0 - p).ln()
    }

    #[test]
    fn domain_of_az_params() {
        assert!(AZParams::new(0.5, 0.5).is_ok());
        assert!(AZParams::new(0.3, 0.7).is_ok());
        assert!(AZParams::new(0.3, 0.69).is_err());
        assert!(AZParams::new(0.5, 1.0).is_err());
        assert!(AZParams::new(0.0, 0.99).is_err());
        assert!(AZParams::new(1.0, 0.99).is_err());
        assert!(AZParams::new(f64::NAN, 0.9).is_err());
        assert!(AZParams::diagonal(0.4).is_err());
    }

    #[test]
    fn f_examples() {
        let p = AZParams::new(0.5, 0.5).unwrap();
        let real = DensityMatrix::from_real_diagonal(&[0.3, 0.7]).unwrap();
        assert!((f_alpha_z(&real, &real, AZParams::new(0.3, 0.8).unwrap()).unwrap() - 1.0).abs() < 1e-14);
        let s = plus_i();
        assert!(f_alpha_z(&s, &s.conjugate(), p).unwrap().abs() < 1e-15);
        let b = bloch_y(0.6);
        assert!((f_alpha_z(&b, &b.conjugate(), p).unwrap() - 0.8).abs() < 1e-14);
    }

    #[test]
    fn divergence_examples() {
        let p = AZParams::new(0.5, 0.5).unwrap();
        let b = bloch_y(0.6);
        assert!(renyi_az_divergence(&b, &b, p).unwrap().abs() < 1e-14);
        let s = plus_i();
        assert_eq!(renyi_az_divergence(&s, &s.conjugate(), p).unwrap(), f64::INFINITY);
        let d = renyi_az_divergence(&b, &b.conjugate(), p).unwrap();
        assert!((d + 2.0 * 0.8f64.ln()).abs() < 1e-13);
        assert!((d - 0.446_287_102_628_419_5).abs() < 1e-13);
    }

    #[test]
    fn renyi_examples() {
        let p = AZParams::new(0.5, 0.5).unwrap();
        let real = DensityMatrix::from_real_diagonal(&[0.3, 0.7]).unwrap();
        assert!(imaginarity_renyi(&real, p).abs() < 1e-14);
        assert!((imaginarity_renyi(&plus_i(), p) - 1.0).abs() < 1e-15);
        assert!((imaginarity_renyi(&bloch_y(0.6), p) - 0.2).abs() < 1e-14);
    }

    #[test]
    fn tsallis_examples() {
        let real = DensityMatrix::from_real_diagonal(&[0.3, 0.7]).unwrap();
        assert!(imaginarity_tsallis(&real, 0.3).unwrap().abs() < 1e-15);
        for q in [0.1, 0.5, 0.9] {
            assert!((imaginarity_tsallis(&plus_i(), q).unwrap() - 1.0).abs() < 1e-15);
        }
        assert!((imaginarity_tsallis(&bloch_y(0.6), 0.5).unwrap() - 0.2).abs() < 1e-14);
        assert!(imaginarity_tsallis(&real, 1.0).is_err());
        assert!(imaginarity_tsallis(&real, 0.0).is_err());
    }

    #[test]
    fn tsallis_matches_relative_entropy_form() {
        let r = crate::states::random_density(3, 3, 12).unwrap();
        for q in [0.2, 0.5, 0.8] {
            let k = tsallis_relative_entropy(&r, &r.conjugate(), q).unwrap();
            assert!(((1.0 - q) * k - imaginarity_tsallis(&r, q).unwrap()).abs() < 1e-13);
        }
    }

    #[test]
    fn umegaki_examples() {
        let real = DensityMatrix::from_real_diagonal(&[0.3, 0.7]).unwrap();
        assert!(imaginarity_umegaki(&real).abs() < 1e-15);
        let ln2 = std::f64::consts::LN_2;
        assert!((imaginarity_umegaki(&plus_i()) - ln2).abs() < 1e-15);
        let expect = ln2 - binary_entropy(0.8);
        assert!((imaginarity_umegaki(&bloch_y(0.6)) - expect).abs() < 1e-14);
        assert!((expect - 0.192_744_757_021_757_4).abs() < 1e-13);
    }

    #[test]
    fn umegaki_is_relative_entropy_to_real_part() {
        for seed in 0..10 {
            let r = crate::states::random_density(4, 4, seed).unwrap();
            let real_part = crate::states::StateEnsemble::new(vec![0.5, 0.5], vec![r.clone(), r.conjugate()])
                .unwrap()
                .average();
            let s = relative_entropy(&r, &real_part).unwrap();
            assert!((s - imaginarity_umegaki(&r)).abs() < 1e-10);
        }
    }

    #[test]
    fn relative_entropy_to_conjugate_differs_from_umegaki() {
        // S(ρ‖ρ*) = 0.6 ln 4 on the a = 0.6 state, far from ln 2 − H(0.8).
        let b = bloch_y(0.6);
        let s = relative_entropy(&b, &b.conjugate()).unwrap();
        assert!((s - 0.6 * 4f64.ln()).abs() < 1e-13);
        assert!((s - imaginarity_umegaki(&b)).abs() > 0.5);
        let p = plus_i();
        assert_eq!(relative_entropy(&p, &p.conjugate()).unwrap(), f64::INFINITY);
    }

    #[test]
    fn operator_entropy_examples() {
        let d = DensityMatrix::maximally_mixed(2);
        let t = tsallis_relative_operator_entropy(&d, &d, 0.4).unwrap();
        assert!(max_abs(t.matrix()) < 1e-15);
        let e = DensityMatrix::from_real_diagonal(&[0.25, 0.75]).unwrap();
        let t = tsallis_relative_operator_entropy(&d, &e, 0.5).unwrap();
        let expect = HermitianMatrix::from_real_diagonal(&[
            ((0.5f64 * 0.25).sqrt() - 0.5) / 0.5,
            ((0.5f64 * 0.75).sqrt() - 0.5) / 0.5,
        ]);
        assert!(max_abs(&(t.matrix() - expect.matrix())) < 1e-14);
        let via = tsallis_relative_operator_entropy_via_mean(&d, &e, 0.5).unwrap();
        assert!(max_abs(&(via.matrix() - expect.matrix())) < 1e-14);
    }

    #[test]
    fn operator_entropy_forms_agree() {
        for seed in 0..10 {
            let d = crate::states::random_density(3, 3, seed).unwrap();
            let e = crate::states::random_density(3, 3, seed + 100).unwrap();
            for lam in [0.2, 0.7, 1.0] {
                let a = tsallis_relative_operator_entropy(&d, &e, lam).unwrap();
                let b = tsallis_relative_operator_entropy_via_mean(&d, &e, lam).unwrap();
                assert!(max_abs(&(a.matrix() - b.matrix())) < 1e-9);
            }
        }
    }

    #[test]
    fn operator_examples() {
        let real = crate::states::random_real_density(3, 3, 8).unwrap();
        assert!(imaginarity_operator(&real, 0.3).unwrap().abs() < 1e-13);
        assert!((imaginarity_operator(&bloch_y(0.6), 0.5).unwrap() - 0.2).abs() < 1e-14);
        let singular = DensityMatrix::from_real_diagonal(&[0.0, 1.0]).unwrap();
        assert!(matches!(
            imaginarity_operator(&singular, 0.5),
            Err(Error::NotPositiveDefinite { .. })
        ));
        assert!(imaginarity_operator(&bloch_y(0.6), 1.0).is_err());
    }

    #[test]
    fn default_grid_shape() {
        let g = ParameterGrid::default();
        assert_eq!(g.alpha_z.len(), 15);
        assert_eq!(g.points(&[MeasureId::Umegaki, MeasureId::Tsallis]).len(), 6);
        assert_eq!(default_z_values(0.5), vec![0.5, 0.725, 0.95]);
    }

    #[test]
    fn report_marks_operator_undefined_on_singular_state() {
        let singular = DensityMatrix::from_real_diagonal(&[0.0, 1.0]).unwrap();
        let points = ParameterGrid::default().points(&MeasureId::ALL);
        let r = measure_report("s", &singular, &points).unwrap();
        for e in &r.entries {
            match e.measure {
                MeasureId::Operator => assert!(matches!(e.value, MeasureValue::Undefined(_))),
                _ => assert!(e.value.value().unwrap().abs() < 1e-14),
            }
        }
    }
}
