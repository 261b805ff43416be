//! The two worked qubit examples, checked against high-precision reference
//! values and their strict orderings.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::matrixfn::CMatrix;
use crate::measures::{AZParams, MeasureId, MeasureParams, MeasureValue, PreparedState};
use crate::states::DensityMatrix;

/// Reference values computed at 60 significant digits by
/// `oracle/examples_oracle.py`.
const GOLDEN: &str = include_str!("../../golden/examples.json");

pub const GOLDEN_TOLERANCE: f64 = 1e-10;

fn qubit(a: f64, b: Complex64, d: f64) -> DensityMatrix {
    let m = CMatrix::from_row_slice(2, 2, &[Complex64::new(a, 0.0), b, b.conj(), Complex64::new(d, 0.0)]);
    DensityMatrix::new(m).expect("example state is valid")
}

/// `ρ₀ = (1/10)[[4, 3−i], [3+i, 6]]`.
pub fn example_rho0() -> DensityMatrix {
    qubit(0.4, Complex64::new(0.3, -0.1), 0.6)
}

/// `δ₀ = (1/10)[[6, 1+i], [1−i, 4]]`, positive definite.
///
/// The matrix as usually printed, `[[6, 1+i], [1+i, 4]]/10`, is not
/// Hermitian; this is its Hermitian reading.
pub fn example_delta0() -> DensityMatrix {
    qubit(0.6, Complex64::new(0.1, 0.1), 0.4)
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExampleValue {
    pub state: String,
    pub key: String,
    pub computed: f64,
    pub reference: f64,
    pub abs_error: f64,
}

/// A claimed strict ordering `v₀ < v₁ < v₂`.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct OrderingCheck {
    pub state: String,
    pub keys: Vec<String>,
    pub values: Vec<f64>,
    pub holds: bool,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ExamplesReport {
    pub tolerance: f64,
    pub values: Vec<ExampleValue>,
    pub orderings: Vec<OrderingCheck>,
}

impl ExamplesReport {
    pub fn passed(&self) -> bool {
        self.values.iter().all(|v| v.abs_error <= self.tolerance) && self.orderings.iter().all(|o| o.holds)
    }

    pub fn summary_table(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "{:<8}  {:<18}  {:>22}  {:>10}  status",
            "state", "quantity", "value", "abs_error"
        );
        for v in &self.values {
            let status = if v.abs_error <= self.tolerance { "PASS" } else { "FAIL" };
            let _ = writeln!(
                out,
                "{:<8}  {:<18}  {:>22.17}  {:>10.2e}  {status}",
                v.state, v.key, v.computed, v.abs_error
            );
        }
        for o in &self.orderings {
            let status = if o.holds { "PASS" } else { "FAIL" };
            let _ = writeln!(out, "{:<8}  ordering {}  {status}", o.state, o.keys.join(" < "));
        }
        out
    }
}

/// Parses keys such as `tsallis_q0.3`, `renyi_a0.5_z0.5`, `operator_l0.3`,
/// `umegaki`.
fn parse_key(key: &str) -> Result<(MeasureId, MeasureParams)> {
    let bad = || Error::Parse(format!("unrecognized reference key '{key}'"));
    let num = |s: &str| s.parse::<f64>().map_err(|_| bad());
    if key == "umegaki" {
        return Ok((MeasureId::Umegaki, MeasureParams::None));
    }
    if let Some(q) = key.strip_prefix("tsallis_q") {
        return Ok((MeasureId::Tsallis, MeasureParams::Q(num(q)?)));
    }
    if let Some(l) = key.strip_prefix("operator_l") {
        return Ok((MeasureId::Operator, MeasureParams::Lambda(num(l)?)));
    }
    if let Some(rest) = key.strip_prefix("renyi_a") {
        let (a, z) = rest.split_once("_z").ok_or_else(bad)?;
        return Ok((MeasureId::RenyiAz, MeasureParams::AlphaZ(AZParams::new(num(a)?, num(z)?)?)));
    }
    Err(bad())
}

pub fn reproduce_examples() -> Result<ExamplesReport> {
    let golden: BTreeMap<String, BTreeMap<String, String>> =
        serde_json::from_str(GOLDEN).map_err(|e| Error::Parse(e.to_string()))?;
    let rho0 = example_rho0();
    let delta0 = example_delta0();
    let cases: [(&str, &DensityMatrix, [&str; 3]); 2] = [
        ("rho0", &rho0, ["tsallis_q0.3", "renyi_a0.5_z0.5", "tsallis_q0.5"]),
        ("delta0", &delta0, ["operator_l0.3", "renyi_a0.5_z0.5", "tsallis_q0.5"]),
    ];
    let mut values = Vec::new();
    let mut orderings = Vec::new();
    for (name, state, order) in cases {
        let refs = golden
            .get(name)
            .ok_or_else(|| Error::Parse(format!("reference values for '{name}' missing")))?;
        let prepared = PreparedState::new(state);
        let mut computed = BTreeMap::new();
        for (key, text) in refs {
            let (m, p) = parse_key(key)?;
            let v = match prepared.evaluate(m, p)? {
                MeasureValue::Value(v) => v,
                MeasureValue::Undefined(r) => return Err(Error::Domain(r)),
            };
            let reference: f64 = text.parse().map_err(|_| Error::Parse(format!("bad reference '{text}'")))?;
            computed.insert(key.clone(), v);
            values.push(ExampleValue {
                state: name.to_string(),
                key: key.clone(),
                computed: v,
                reference,
                abs_error: (v - reference).abs(),
            });
        }
        let chain = order
            .iter()
            .map(|k| {
                computed
                    .get(*k)
                    .copied()
                    .ok_or_else(|| Error::Parse(format!("reference value '{name}.{k}' missing")))
            })
            .collect::<Result<Vec<f64>>>()?;
        orderings.push(OrderingCheck {
            state: name.to_string(),
            keys: order.iter().map(|k| k.to_string()).collect(),
            holds: chain.windows(2).all(|w| w[0] < w[1]),
            values: chain,
        });
    }
    Ok(ExamplesReport {
        tolerance: GOLDEN_TOLERANCE,
        values,
        orderings,
    })
}
