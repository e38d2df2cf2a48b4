//! Shannon information theory over finite discrete distributions.
//!
//! All quantities are in nats. The convention `0 ln 0 = 0` is applied by
//! skipping entries below [`ZERO_PROB`].

use crate::error::{Error, Result};

/// Tolerance on `|sum - 1|` accepted at construction.
pub const NORM_TOL: f64 = 1e-12;

/// Probabilities below this threshold are treated as exact zeros inside logs.
pub const ZERO_PROB: f64 = 1e-15;

pub(crate) fn neg_xlnx(p: f64) -> f64 {
    if p < ZERO_PROB {
        0.0
    } else {
        -p * p.ln()
    }
}

fn check_entries<'a>(values: impl Iterator<Item = &'a f64>) -> Result<()> {
    let mut sum = 0.0;
    let mut n = 0;
    for (index, &value) in values.enumerate() {
        if !(value >= 0.0) || !value.is_finite() {
            return Err(Error::NegativeProbability { index, value });
        }
        sum += value;
        n += 1;
    }
    if n == 0 {
        return Err(Error::Empty);
    }
    if (sum - 1.0).abs() > NORM_TOL {
        return Err(Error::Normalization { sum, tol: NORM_TOL });
    }
    Ok(())
}

/// A probability vector over a finite outcome set.
#[derive(Debug, Clone, PartialEq)]
pub struct Distribution {
    probs: Vec<f64>,
}

impl Distribution {
    /// Validates and wraps `probs`. Inputs are never renormalized.
    pub fn new(probs: Vec<f64>) -> Result<Self> {
        check_entries(probs.iter())?;
        Ok(Self { probs })
    }

    pub fn uniform(n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::Empty);
        }
        Ok(Self {
            probs: vec![1.0 / n as f64; n],
        })
    }

    pub fn probs(&self) -> &[f64] {
        &self.probs
    }

    pub fn len(&self) -> usize {
        self.probs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.probs.is_empty()
    }
}

/// A joint probability table; rows index X outcomes, columns index Y outcomes.
#[derive(Debug, Clone, PartialEq)]
pub struct JointDistribution {
    rows: usize,
    cols: usize,
    // row-major
    table: Vec<f64>,
}

impl JointDistribution {
    pub fn from_rows(rows: Vec<Vec<f64>>) -> Result<Self> {
        let n_rows = rows.len();
        if n_rows == 0 {
            return Err(Error::Empty);
        }
        let n_cols = rows[0].len();
        for (row, r) in rows.iter().enumerate() {
            if r.len() != n_cols {
                return Err(Error::RaggedTable {
                    row,
                    len: r.len(),
                    expected: n_cols,
                });
            }
        }
        Self::from_row_major(n_rows, n_cols, rows.into_iter().flatten().collect())
    }

    pub fn from_row_major(rows: usize, cols: usize, table: Vec<f64>) -> Result<Self> {
        if rows * cols != table.len() {
            return Err(Error::LengthMismatch(rows * cols, table.len()));
        }
        check_entries(table.iter())?;
        Ok(Self { rows, cols, table })
    }

    /// Product table `p(x) q(y)`.
    pub fn product(x: &Distribution, y: &Distribution) -> Self {
        let table = x
            .probs
            .iter()
            .flat_map(|&px| y.probs.iter().map(move |&py| px * py))
            .collect();
        Self {
            rows: x.len(),
            cols: y.len(),
            table,
        }
    }

    pub fn shape(&self) -> (usize, usize) {
        (self.rows, self.cols)
    }

    pub fn get(&self, i: usize, j: usize) -> f64 {
        self.table[i * self.cols + j]
    }

    pub fn entries(&self) -> &[f64] {
        &self.table
    }

    pub fn row_marginal(&self) -> Distribution {
        let probs = (0..self.rows)
            .map(|i| (0..self.cols).map(|j| self.get(i, j)).sum())
            .collect();
        Distribution { probs }
    }

    pub fn col_marginal(&self) -> Distribution {
        let probs = (0..self.cols)
            .map(|j| (0..self.rows).map(|i| self.get(i, j)).sum())
            .collect();
        Distribution { probs }
    }

    pub fn transpose(&self) -> Self {
        let mut table = Vec::with_capacity(self.table.len());
        for j in 0..self.cols {
            for i in 0..self.rows {
                table.push(self.get(i, j));
            }
        }
        Self {
            rows: self.cols,
            cols: self.rows,
            table,
        }
    }

    /// Applies column-stochastic post-processing to the Y side:
    /// `p'(x, y') = Σ_y p(x, y) T[y'][y]`. Columns of `t` must sum to one.
    pub fn post_process_y(&self, t: &[Vec<f64>]) -> Result<Self> {
        let out = t.len();
        for row in t {
            if row.len() != self.cols {
                return Err(Error::LengthMismatch(row.len(), self.cols));
            }
        }
        let mut table = vec![0.0; self.rows * out];
        for i in 0..self.rows {
            for (k, row) in t.iter().enumerate() {
                table[i * out + k] = (0..self.cols).map(|j| self.get(i, j) * row[j]).sum();
            }
        }
        Self::from_row_major(self.rows, out, table)
    }
}

/// `S(X) = -Σ p ln p`.
pub fn shannon_entropy(d: &Distribution) -> f64 {
    d.probs.iter().map(|&p| neg_xlnx(p)).sum()
}

/// `S(X, Y)`.
pub fn joint_entropy(j: &JointDistribution) -> f64 {
    j.table.iter().map(|&p| neg_xlnx(p)).sum()
}

/// `S_X(Y) = -Σ p(x,y) ln[p(x,y)/p(x)]`, uncertainty left in Y once X is known.
/// Rows with zero marginal contribute nothing.
pub fn conditional_entropy(j: &JointDistribution) -> f64 {
    let px = j.row_marginal();
    let mut s = 0.0;
    for i in 0..j.rows {
        let pi = px.probs[i];
        if pi < ZERO_PROB {
            continue;
        }
        for k in 0..j.cols {
            let p = j.get(i, k);
            if p >= ZERO_PROB {
                s -= p * (p / pi).ln();
            }
        }
    }
    s
}

/// `I(X:Y) = S(X) + S(Y) - S(X,Y)`, with round-off below zero reported as 0.
pub fn mutual_information(j: &JointDistribution) -> f64 {
    (shannon_entropy(&j.row_marginal()) + shannon_entropy(&j.col_marginal()) - joint_entropy(j)).max(0.0)
}

/// Mutual information as the information gained about Y by learning X,
/// `S(Y) - S_X(Y)`.
pub fn mutual_information_conditional(j: &JointDistribution) -> f64 {
    shannon_entropy(&j.col_marginal()) - conditional_entropy(j)
}

/// `Σ p ln(p/q)`; `f64::INFINITY` when `p` puts weight outside the support of `q`.
pub fn relative_entropy(p: &Distribution, q: &Distribution) -> Result<f64> {
    if p.len() != q.len() {
        return Err(Error::LengthMismatch(p.len(), q.len()));
    }
    Ok(divergence(&p.probs, &q.probs))
}

fn divergence(p: &[f64], q: &[f64]) -> f64 {
    let mut s = 0.0;
    for (&pi, &qi) in p.iter().zip(q) {
        if pi < ZERO_PROB {
            continue;
        }
        if qi < ZERO_PROB {
            return f64::INFINITY;
        }
        s += pi * (pi / qi).ln();
    }
    s
}

/// Relative entropy of the joint table to the product of its marginals.
pub fn mutual_information_as_divergence(j: &JointDistribution) -> f64 {
    let product = JointDistribution::product(&j.row_marginal(), &j.col_marginal());
    divergence(&j.table, &product.table)
}

/// Parses `"0.25,0.75"`.
pub fn parse_distribution(s: &str) -> Result<Distribution> {
    Distribution::new(parse_list(s)?)
}

/// Parses row-major semicolon-separated rows: `"0.4,0.1;0.2,0.3"`.
pub fn parse_joint(s: &str) -> Result<JointDistribution> {
    let rows = s
        .split(';')
        .map(parse_list)
        .collect::<Result<Vec<_>>>()?;
    JointDistribution::from_rows(rows)
}

fn parse_list(s: &str) -> Result<Vec<f64>> {
    s.split(',')
        .map(|t| {
            t.trim()
                .parse::<f64>()
                .map_err(|e| Error::Parse(format!("{:?}: {e}", t.trim())))
        })
        .collect()
}
