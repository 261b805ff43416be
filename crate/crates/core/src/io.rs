//! Text formats for states and Kraus sets, and number formatting.
//!
//! State:
//!
//! ```json
//! {"dim": 2, "matrix": [[[0.5, 0.0], [0.0, -0.5]], [[0.0, 0.5], [0.5, 0.0]]]}
//! ```
//!
//! Kraus set: `{"dim_in": d, "dim_out": d', "operators": [M₁, M₂, …]}` with
//! each `Mⱼ` a `d' × d` matrix in the same `[re, im]` encoding. Floats are
//! written in shortest round-trip form and parsed with correct rounding, so
//! write → read reproduces every entry bit for bit.

use std::fs;
use std::path::Path;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::channels::KrausSet;
use crate::error::{Error, Result};
use crate::matrixfn::CMatrix;
use crate::states::DensityMatrix;

type Rows = Vec<Vec<[f64; 2]>>;

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct StateDoc {
    dim: usize,
    matrix: Rows,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct KrausDoc {
    dim_in: usize,
    dim_out: usize,
    operators: Vec<Rows>,
}

fn to_rows(m: &CMatrix) -> Rows {
    (0..m.nrows())
        .map(|i| (0..m.ncols()).map(|j| [m[(i, j)].re, m[(i, j)].im]).collect())
        .collect()
}

fn from_rows(rows: &Rows, nrows: usize, ncols: usize, what: &str) -> Result<CMatrix> {
    if rows.len() != nrows {
        return Err(Error::Parse(format!("{what}: expected {nrows} rows, found {}", rows.len())));
    }
    for (i, r) in rows.iter().enumerate() {
        if r.len() != ncols {
            return Err(Error::Parse(format!(
                "{what}: row {i} has {} entries, expected {ncols}",
                r.len()
            )));
        }
    }
    Ok(CMatrix::from_fn(nrows, ncols, |i, j| {
        let [re, im] = rows[i][j];
        Complex64::new(re, im)
    }))
}

fn parse_json<T: for<'de> Deserialize<'de>>(text: &str) -> Result<T> {
    serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))
}

fn to_json<T: Serialize>(doc: &T) -> String {
    serde_json::to_string(doc).expect("plain data serializes") + "\n"
}

/// Parses and validates a state document.
pub fn parse_state(text: &str) -> Result<DensityMatrix> {
    let doc: StateDoc = parse_json(text)?;
    if doc.dim == 0 {
        return Err(Error::Parse("dim must be at least 1".into()));
    }
    DensityMatrix::new(from_rows(&doc.matrix, doc.dim, doc.dim, "matrix")?)
}

pub fn state_to_string(rho: &DensityMatrix) -> String {
    to_json(&StateDoc {
        dim: rho.dim(),
        matrix: to_rows(rho.matrix()),
    })
}

pub fn read_state(path: &Path) -> Result<DensityMatrix> {
    parse_state(&read(path)?)
}

pub fn write_state(path: &Path, rho: &DensityMatrix) -> Result<()> {
    Ok(fs::write(path, state_to_string(rho))?)
}

/// Parses a Kraus document and checks completeness.
pub fn parse_kraus(text: &str) -> Result<KrausSet> {
    let doc: KrausDoc = parse_json(text)?;
    if doc.dim_in == 0 || doc.dim_out == 0 {
        return Err(Error::Parse("dim_in and dim_out must be at least 1".into()));
    }
    let ops = doc
        .operators
        .iter()
        .enumerate()
        .map(|(k, rows)| from_rows(rows, doc.dim_out, doc.dim_in, &format!("operator {k}")))
        .collect::<Result<Vec<_>>>()?;
    KrausSet::new(doc.dim_in, doc.dim_out, ops)
}

pub fn kraus_to_string(set: &KrausSet) -> String {
    to_json(&KrausDoc {
        dim_in: set.dim_in(),
        dim_out: set.dim_out(),
        operators: set.operators().iter().map(to_rows).collect(),
    })
}

pub fn read_kraus(path: &Path) -> Result<KrausSet> {
    parse_kraus(&read(path)?)
}

pub fn write_kraus(path: &Path, set: &KrausSet) -> Result<()> {
    Ok(fs::write(path, kraus_to_string(set))?)
}

fn read(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))
}

/// `x` to 12 significant digits, locale-free. Plain notation for
/// `1e-5 ≤ |x| < 1e12`, scientific otherwise; trailing zeros are trimmed.
pub fn format_sig(x: f64) -> String {
    const DIGITS: i32 = 12;
    if x == 0.0 {
        return "0".into();
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "nan".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    // Round first so that 9.99999999999951 becomes 10 and picks its exponent.
    let sci = format!("{:.*e}", (DIGITS - 1) as usize, x);
    let (mantissa, exp) = sci.split_once('e').expect("scientific format");
    let exp: i32 = exp.parse().expect("integer exponent");
    if (-5..DIGITS).contains(&exp) {
        let decimals = (DIGITS - 1 - exp).max(0) as usize;
        trim_zeros(format!("{:.*}", decimals, x))
    } else {
        format!("{}e{exp}", trim_zeros(mantissa.to_string()))
    }
}

fn trim_zeros(s: String) -> String {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.').to_string()
    } else {
        s
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::channels::random_real_operation;
    use crate::states::random_density;

    #[test]
    fn state_round_trip_is_bit_exact() {
        for seed in 0..20 {
            let rho = random_density(3, 1 + (seed as usize % 3), seed).unwrap();
            let text = state_to_string(&rho);
            let back = parse_state(&text).unwrap();
            for (a, b) in rho.matrix().iter().zip(back.matrix().iter()) {
                assert_eq!(a.re.to_bits(), b.re.to_bits());
                assert_eq!(a.im.to_bits(), b.im.to_bits());
            }
            assert_eq!(state_to_string(&back), text);
        }
    }

    #[test]
    fn kraus_round_trip_is_bit_exact() {
        let set = random_real_operation(3, 2, 5).unwrap();
        let text = kraus_to_string(&set);
        let back = parse_kraus(&text).unwrap();
        assert_eq!(kraus_to_string(&back), text);
        assert!(back.completeness_residual() < 1e-10);
    }

    #[test]
    fn malformed_documents() {
        assert!(matches!(parse_state("{"), Err(Error::Parse(_))));
        assert!(matches!(
            parse_state(r#"{"dim": 2, "matrix": [[[1,0]]]}"#),
            Err(Error::Parse(_))
        ));
        let not_herm = r#"{"dim": 2, "matrix": [[[0.5,0],[0.1,0.1]],[[0.1,0.1],[0.5,0]]]}"#;
        assert!(parse_state(not_herm).unwrap_err().is_validation());
        let incomplete = r#"{"dim_in": 1, "dim_out": 1, "operators": [[[[0.5,0]]]]}"#;
        assert!(parse_kraus(incomplete).unwrap_err().is_validation());
    }

    #[test]
    fn decimal_literals_parse_exactly() {
        let rho = parse_state(r#"{"dim": 2, "matrix": [[[0.4,0],[0.3,-0.1]],[[0.3,0.1],[0.6,0]]]}"#).unwrap();
        assert_eq!(rho.matrix()[(0, 1)].re, 0.3);
        assert_eq!(rho.matrix()[(0, 1)].im, -0.1);
    }

    #[test]
    fn sig_formatting() {
        assert_eq!(format_sig(0.0), "0");
        assert_eq!(format_sig(0.5), "0.5");
        assert_eq!(format_sig(-2.0), "-2");
        assert_eq!(format_sig(0.020_204_102_886_728_76), "0.0202041028867");
        assert_eq!(format_sig(std::f64::consts::PI), "3.14159265359");
        assert_eq!(format_sig(9.99999999999951), "10");
        assert_eq!(format_sig(1.5e-9), "1.5e-9");
        assert_eq!(format_sig(1.0 / 3.0 * 1e-7), "3.33333333333e-8");
        assert_eq!(format_sig(123456789012345.0), "1.23456789012e14");
    }
}
