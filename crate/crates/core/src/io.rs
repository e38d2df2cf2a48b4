//! JSON file formats and 17-significant-digit number formatting.
//!
//! State files hold `{"dims": [dA, dB], "matrix": [[re, im], ...]}` with the
//! `dA·dB × dA·dB` entries in row-major order; nested rows of pairs are also
//! accepted on input. Covariance files hold a 4×4 row-major array in
//! `(x₁, p₁, x₂, p₂)` order. POVM files hold
//! `{"elements": [matrix, ...]}` with each matrix encoded like a state matrix.

use std::fs;
use std::io::Write;
use std::path::Path;

use nalgebra::Matrix4;
use serde::{Deserialize, Serialize};
use serde_json::ser::{CompactFormatter, Formatter};
use serde_json::Value;

use crate::error::{Error, Result};
use crate::gaussian::CovarianceMatrix;
use crate::linalg::{c, CMatrix};
use crate::measure::Povm;
use crate::qstate::DensityMatrix;

/// `x` with 17 significant digits, shortest of positional and scientific in
/// the manner of C's `%.17g`. Parsing the result gives back `x` exactly.
pub fn format_g17(x: f64) -> String {
    if x == 0.0 {
        return if x.is_sign_negative() { "-0".into() } else { "0".into() };
    }
    if !x.is_finite() {
        return if x.is_nan() {
            "NaN".into()
        } else if x > 0.0 {
            "inf".into()
        } else {
            "-inf".into()
        };
    }
    let sci = format!("{x:.16e}");
    let (mantissa, exp) = sci.split_once('e').expect("exponent present");
    let exp: i32 = exp.parse().expect("integer exponent");
    if !(-4..17).contains(&exp) {
        let mantissa = trim_zeros(mantissa);
        let sign = if exp < 0 { '-' } else { '+' };
        return format!("{mantissa}e{sign}{:02}", exp.abs());
    }
    let prec = (16 - exp) as usize;
    trim_zeros(&format!("{x:.prec$}")).to_string()
}

fn trim_zeros(s: &str) -> &str {
    if s.contains('.') {
        s.trim_end_matches('0').trim_end_matches('.')
    } else {
        s
    }
}

/// Compact JSON whose floats are written with [`format_g17`].
struct G17Formatter;

impl Formatter for G17Formatter {
    fn write_f64<W: ?Sized + Write>(&mut self, writer: &mut W, value: f64) -> std::io::Result<()> {
        if value.is_finite() {
            writer.write_all(format_g17(value).as_bytes())
        } else {
            CompactFormatter.write_null(writer)
        }
    }
}

/// Serializes `value` as compact JSON with 17-digit floats.
pub fn to_json<T: Serialize + ?Sized>(value: &T) -> Result<String> {
    let mut buf = Vec::new();
    let mut ser = serde_json::Serializer::with_formatter(&mut buf, G17Formatter);
    value.serialize(&mut ser)?;
    Ok(String::from_utf8(buf).expect("JSON is UTF-8"))
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
enum MatrixEncoding {
    Flat(Vec<[f64; 2]>),
    Rows(Vec<Vec<[f64; 2]>>),
}

impl MatrixEncoding {
    fn encode(m: &CMatrix) -> Self {
        let mut flat = Vec::with_capacity(m.len());
        for r in 0..m.nrows() {
            for col in 0..m.ncols() {
                let z = m[(r, col)];
                flat.push([z.re, z.im]);
            }
        }
        MatrixEncoding::Flat(flat)
    }

    fn decode(self) -> Result<CMatrix> {
        let flat: Vec<[f64; 2]> = match self {
            MatrixEncoding::Flat(v) => v,
            MatrixEncoding::Rows(rows) => {
                let n = rows.len();
                for (row, r) in rows.iter().enumerate() {
                    if r.len() != n {
                        return Err(Error::RaggedTable {
                            row,
                            len: r.len(),
                            expected: n,
                        });
                    }
                }
                rows.into_iter().flatten().collect()
            }
        };
        let n = (flat.len() as f64).sqrt().round() as usize;
        if n * n != flat.len() || n == 0 {
            return Err(Error::Parse(format!(
                "matrix has {} entries, not a positive perfect square",
                flat.len()
            )));
        }
        Ok(CMatrix::from_row_iterator(n, n, flat.into_iter().map(|[re, im]| c(re, im))))
    }
}

#[derive(Debug, Serialize, Deserialize)]
struct StateFile {
    dims: [usize; 2],
    matrix: MatrixEncoding,
}

#[derive(Debug, Serialize, Deserialize)]
struct PovmFile {
    elements: Vec<MatrixEncoding>,
}

pub fn state_to_json(rho: &DensityMatrix) -> Result<String> {
    let (a, b) = rho.dims();
    to_json(&StateFile {
        dims: [a, b],
        matrix: MatrixEncoding::encode(rho.matrix()),
    })
}

pub fn state_from_json(text: &str) -> Result<DensityMatrix> {
    let file: StateFile = serde_json::from_str(text)?;
    DensityMatrix::new(file.matrix.decode()?, (file.dims[0], file.dims[1]))
}

pub fn covariance_to_json(cm: &CovarianceMatrix) -> Result<String> {
    let m = cm.matrix();
    let rows: Vec<[f64; 4]> = (0..4).map(|r| [m[(r, 0)], m[(r, 1)], m[(r, 2)], m[(r, 3)]]).collect();
    to_json(&rows)
}

pub fn covariance_from_json(text: &str) -> Result<CovarianceMatrix> {
    let rows: Vec<Vec<f64>> = serde_json::from_str(text)?;
    covariance_from_rows(rows)
}

fn covariance_from_rows(rows: Vec<Vec<f64>>) -> Result<CovarianceMatrix> {
    if rows.len() != 4 {
        return Err(Error::Parse(format!("covariance matrix has {} rows, expected 4", rows.len())));
    }
    for (row, r) in rows.iter().enumerate() {
        if r.len() != 4 {
            return Err(Error::RaggedTable {
                row,
                len: r.len(),
                expected: 4,
            });
        }
    }
    CovarianceMatrix::new(Matrix4::from_fn(|r, col| rows[r][col]))
}

pub fn povm_to_json(povm: &Povm) -> Result<String> {
    to_json(&PovmFile {
        elements: povm.elements().iter().map(MatrixEncoding::encode).collect(),
    })
}

pub fn povm_from_json(text: &str) -> Result<Povm> {
    let file: PovmFile = serde_json::from_str(text)?;
    Povm::new(file.elements.into_iter().map(MatrixEncoding::decode).collect::<Result<_>>()?)
}

/// Contents of a file read by [`load_state`].
#[derive(Debug, Clone)]
pub enum Loaded {
    State(DensityMatrix),
    Covariance(CovarianceMatrix),
}

/// Parses a state or covariance file, telling them apart by shape: an object
/// with `dims` is a density matrix, a bare array is a covariance matrix.
pub fn parse_state(text: &str) -> Result<Loaded> {
    let value: Value = serde_json::from_str(text)?;
    match value {
        Value::Object(ref map) if map.contains_key("dims") => {
            let file: StateFile = serde_json::from_value(value)?;
            Ok(Loaded::State(DensityMatrix::new(
                file.matrix.decode()?,
                (file.dims[0], file.dims[1]),
            )?))
        }
        Value::Array(_) => Ok(Loaded::Covariance(covariance_from_rows(serde_json::from_value(value)?)?)),
        _ => Err(Error::Parse(
            "expected a state object with \"dims\" and \"matrix\" or a 4x4 covariance array".into(),
        )),
    }
}

pub fn load_state(path: impl AsRef<Path>) -> Result<Loaded> {
    parse_state(&fs::read_to_string(path)?)
}

pub fn load_density_matrix(path: impl AsRef<Path>) -> Result<DensityMatrix> {
    match load_state(path)? {
        Loaded::State(rho) => Ok(rho),
        Loaded::Covariance(_) => Err(Error::Parse("expected a density matrix, found a covariance matrix".into())),
    }
}

pub fn load_covariance(path: impl AsRef<Path>) -> Result<CovarianceMatrix> {
    match load_state(path)? {
        Loaded::Covariance(cm) => Ok(cm),
        Loaded::State(_) => Err(Error::Parse("expected a covariance matrix, found a density matrix".into())),
    }
}

pub fn load_povm(path: impl AsRef<Path>) -> Result<Povm> {
    povm_from_json(&fs::read_to_string(path)?)
}
