//! Observables, Born-rule statistics, POVMs and local stochastic maps.

use num_complex::Complex64;
use rand::Rng;

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix, ZERO};
use crate::prob::{self, Distribution, JointDistribution};
use crate::qstate::{DensityMatrix, PureState, Subsystem, STATE_TOL};

/// Outcome probabilities below this leave the conditional state undefined.
pub const MIN_OUTCOME_PROB: f64 = 1e-14;

/// Eigenvalues closer than this are merged into one outcome.
const DEGENERACY_TOL: f64 = 1e-10;

/// A Hermitian operator with its spectral projectors.
///
/// Degenerate eigenvalues share a single projector, and outcomes are ordered
/// by ascending eigenvalue.
#[derive(Debug, Clone)]
pub struct Observable {
    matrix: CMatrix,
    outcomes: Vec<(f64, CMatrix)>,
}

impl Observable {
    pub fn new(matrix: CMatrix) -> Result<Self> {
        if matrix.nrows() != matrix.ncols() {
            return Err(Error::NotSquare(matrix.nrows(), matrix.ncols()));
        }
        let dev = linalg::hermitian_deviation(&matrix);
        if dev > STATE_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let n = matrix.nrows();
        let (values, vectors) = linalg::eigh(&matrix);
        let mut outcomes: Vec<(f64, CMatrix)> = Vec::new();
        for (k, &v) in values.iter().enumerate() {
            let col = vectors.column(k);
            let proj = col * col.adjoint();
            match outcomes.last_mut() {
                Some((value, p)) if (v - *value).abs() <= DEGENERACY_TOL => *p += proj,
                _ => outcomes.push((v, proj)),
            }
        }
        let resolved = outcomes
            .iter()
            .fold(CMatrix::zeros(n, n), |acc, (_, p)| acc + p);
        let dev = linalg::max_abs_diff(&resolved, &linalg::identity(n));
        if dev > STATE_TOL {
            return Err(Error::Incomplete(dev));
        }
        Ok(Self { matrix, outcomes })
    }

    /// `Σ_k k |k⟩⟨k|` in the computational basis.
    pub fn computational(dim: usize) -> Self {
        Self::diagonal_in(&linalg::identity(dim)).expect("identity basis")
    }

    /// `Σ_k k |u_k⟩⟨u_k|` for the columns `u_k` of a unitary.
    pub fn diagonal_in(basis: &CMatrix) -> Result<Self> {
        let n = basis.nrows();
        let mut d = CMatrix::zeros(n, n);
        for k in 0..n {
            d[(k, k)] = c(k as f64, 0.0);
        }
        Self::new(basis * d * basis.adjoint())
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    /// Distinct eigenvalues, ascending.
    pub fn eigenvalues(&self) -> Vec<f64> {
        self.outcomes.iter().map(|(v, _)| *v).collect()
    }

    pub fn projectors(&self) -> impl Iterator<Item = &CMatrix> {
        self.outcomes.iter().map(|(_, p)| p)
    }

    /// Whether `[A, ρ] = 0` within `tol`.
    pub fn commutes_with(&self, rho: &DensityMatrix, tol: f64) -> bool {
        let a = &self.matrix;
        let r = rho.matrix();
        let comm = a * r - r * a;
        comm.iter().all(|z| z.norm() <= tol)
    }
}

/// A positive operator-valued measure on one subsystem.
#[derive(Debug, Clone)]
pub struct Povm {
    elements: Vec<CMatrix>,
}

impl Povm {
    pub fn new(elements: Vec<CMatrix>) -> Result<Self> {
        let Some(first) = elements.first() else {
            return Err(Error::Empty);
        };
        let n = first.nrows();
        let mut sum = CMatrix::zeros(n, n);
        for e in &elements {
            if e.nrows() != n || e.ncols() != n {
                return Err(Error::DimensionMismatch(format!(
                    "POVM element is {}x{}, expected {n}x{n}",
                    e.nrows(),
                    e.ncols()
                )));
            }
            let dev = linalg::hermitian_deviation(e);
            if dev > STATE_TOL {
                return Err(Error::NotHermitian(dev));
            }
            let min = linalg::eigvalsh(e)[0];
            if min < -STATE_TOL {
                return Err(Error::NotPositive(min));
            }
            sum += e;
        }
        let dev = linalg::max_abs_diff(&sum, &linalg::identity(n));
        if dev > STATE_TOL {
            return Err(Error::Incomplete(dev));
        }
        Ok(Self { elements })
    }

    /// Rank-one projectors onto the columns of a unitary.
    pub fn projective(basis: &CMatrix) -> Result<Self> {
        Self::new(
            (0..basis.ncols())
                .map(|k| {
                    let col = basis.column(k);
                    col * col.adjoint()
                })
                .collect(),
        )
    }

    pub fn from_observable(obs: &Observable) -> Self {
        Self {
            elements: obs.projectors().cloned().collect(),
        }
    }

    pub fn elements(&self) -> &[CMatrix] {
        &self.elements
    }

    pub fn len(&self) -> usize {
        self.elements.len()
    }

    pub fn is_empty(&self) -> bool {
        self.elements.is_empty()
    }

    pub fn dim(&self) -> usize {
        self.elements[0].nrows()
    }
}

/// A trace-preserving completely positive map in Kraus form.
#[derive(Debug, Clone)]
pub struct StochasticMap {
    kraus: Vec<CMatrix>,
}

impl StochasticMap {
    pub fn new(kraus: Vec<CMatrix>) -> Result<Self> {
        let Some(first) = kraus.first() else {
            return Err(Error::Empty);
        };
        let n = first.ncols();
        let mut sum = CMatrix::zeros(n, n);
        for k in &kraus {
            if k.ncols() != n || k.nrows() != n {
                return Err(Error::DimensionMismatch(format!(
                    "Kraus operator is {}x{}, expected {n}x{n}",
                    k.nrows(),
                    k.ncols()
                )));
            }
            sum += k.adjoint() * k;
        }
        let dev = linalg::max_abs_diff(&sum, &linalg::identity(n));
        if dev > STATE_TOL {
            return Err(Error::NotTracePreserving(dev));
        }
        Ok(Self { kraus })
    }

    pub fn identity(dim: usize) -> Self {
        Self {
            kraus: vec![linalg::identity(dim)],
        }
    }

    /// Qubit dephasing: `K₀ = √(1−p) I`, `K₁ = √p Z`.
    pub fn dephasing(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "must lie in [0, 1]",
            });
        }
        Self::new(vec![
            linalg::pauli::i2().scale((1.0 - p).sqrt()),
            linalg::pauli::z().scale(p.sqrt()),
        ])
    }

    /// Qubit depolarizing channel `ρ ↦ (1−p) ρ + p I/2`.
    pub fn depolarizing(p: f64) -> Result<Self> {
        if !(0.0..=1.0).contains(&p) {
            return Err(Error::InvalidParameter {
                name: "p",
                value: p,
                reason: "must lie in [0, 1]",
            });
        }
        Self::new(vec![
            linalg::pauli::i2().scale((1.0 - 0.75 * p).sqrt()),
            linalg::pauli::x().scale((p / 4.0).sqrt()),
            linalg::pauli::y().scale((p / 4.0).sqrt()),
            linalg::pauli::z().scale((p / 4.0).sqrt()),
        ])
    }

    /// Random channel from a Haar isometry `d → d·k`, cut into `k` Kraus blocks.
    pub fn random<R: Rng + ?Sized>(dim: usize, n_kraus: usize, rng: &mut R) -> Self {
        let u = linalg::random_unitary(dim * n_kraus, rng);
        let kraus = (0..n_kraus)
            .map(|k| u.view((k * dim, 0), (dim, dim)).into_owned())
            .collect();
        Self { kraus }
    }

    pub fn kraus(&self) -> &[CMatrix] {
        &self.kraus
    }

    pub fn dim(&self) -> usize {
        self.kraus[0].nrows()
    }
}

/// `α|0⟩|m₁⟩ + β|1⟩|m₂⟩` with pointer states `|m₁⟩ = |0⟩` and
/// `|m₂⟩ = ε|0⟩ + √(1−ε²)|1⟩`, so that `⟨m₁|m₂⟩ = ε`.
pub fn everett_state(alpha: Complex64, beta: Complex64, epsilon: f64) -> Result<PureState> {
    let norm = alpha.norm_sqr() + beta.norm_sqr();
    if (norm - 1.0).abs() > 1e-12 {
        return Err(Error::InvalidNorm(norm.sqrt()));
    }
    if !(0.0..=1.0).contains(&epsilon) {
        return Err(Error::InvalidParameter {
            name: "epsilon",
            value: epsilon,
            reason: "pointer overlap must lie in [0, 1]",
        });
    }
    let perp = (1.0 - epsilon * epsilon).sqrt();
    PureState::new(vec![alpha, ZERO, beta * epsilon, beta * perp], (2, 2))
}

fn expectation(rho: &CMatrix, op: &CMatrix) -> f64 {
    // Tr[ρ P] for Hermitian P
    rho.iter()
        .zip(op.transpose().iter())
        .map(|(r, p)| (r * p).re)
        .sum()
}

fn to_probs(raw: Vec<f64>) -> Vec<f64> {
    raw.into_iter()
        .map(|p| if p < 0.0 && p > -1e-12 { 0.0 } else { p })
        .collect()
}

/// Born-rule distribution of `obs` in state `rho`, by ascending eigenvalue.
pub fn born_distribution(rho: &DensityMatrix, obs: &Observable) -> Result<Distribution> {
    if rho.dim() != obs.dim() {
        return Err(Error::DimensionMismatch(format!(
            "observable of dimension {} on a {}-dimensional state",
            obs.dim(),
            rho.dim()
        )));
    }
    let raw = obs.projectors().map(|p| expectation(rho.matrix(), p)).collect();
    Distribution::new(to_probs(raw))
}

/// Joint table `p(x_i, y_j) = Tr[ρ (Π_i ⊗ Π_j)]` for `X` on A and `Y` on B.
pub fn joint_born_distribution(
    rho: &DensityMatrix,
    x: &Observable,
    y: &Observable,
) -> Result<JointDistribution> {
    let (da, db) = rho.dims();
    if x.dim() != da || y.dim() != db {
        return Err(Error::DimensionMismatch(format!(
            "observables of dimensions ({}, {}) on a ({da}, {db}) state",
            x.dim(),
            y.dim()
        )));
    }
    let nx = x.outcomes.len();
    let ny = y.outcomes.len();
    let mut raw = Vec::with_capacity(nx * ny);
    for px in x.projectors() {
        for py in y.projectors() {
            raw.push(expectation(rho.matrix(), &linalg::kron(px, py)));
        }
    }
    JointDistribution::from_row_major(nx, ny, to_probs(raw))
}

/// Shannon mutual information between the outcomes of `X` on A and `Y` on B.
pub fn measurement_mutual_information(
    rho: &DensityMatrix,
    x: &Observable,
    y: &Observable,
) -> Result<f64> {
    Ok(prob::mutual_information(&joint_born_distribution(rho, x, y)?))
}

fn embed(op: &CMatrix, side: Subsystem, dims: (usize, usize)) -> CMatrix {
    match side {
        Subsystem::A => linalg::kron(op, &linalg::identity(dims.1)),
        Subsystem::B => linalg::kron(&linalg::identity(dims.0), op),
    }
}

/// `Σ_k (K_k ⊗ I) ρ (K_k ⊗ I)†`, or the `I ⊗ K_k` form for side B.
pub fn apply_local_map(
    rho: &DensityMatrix,
    map: &StochasticMap,
    side: Subsystem,
) -> Result<DensityMatrix> {
    let dims = rho.dims();
    let target = match side {
        Subsystem::A => dims.0,
        Subsystem::B => dims.1,
    };
    if map.dim() != target {
        return Err(Error::DimensionMismatch(format!(
            "map acts on dimension {}, subsystem {side:?} has dimension {target}",
            map.dim()
        )));
    }
    let n = rho.dim();
    let mut out = CMatrix::zeros(n, n);
    for k in map.kraus() {
        let big = embed(k, side, dims);
        out += &big * rho.matrix() * big.adjoint();
    }
    Ok(DensityMatrix::from_valid(out, dims))
}

/// Unnormalized conditional state `Tr_A[(E ⊗ I) ρ]`; its trace is the
/// outcome probability.
pub(crate) fn conditional_block(rho: &DensityMatrix, e: &CMatrix) -> CMatrix {
    let (da, db) = rho.dims();
    let m = rho.matrix();
    CMatrix::from_fn(db, db, |b, b2| {
        let mut acc = ZERO;
        for a in 0..da {
            for a2 in 0..da {
                acc += e[(a, a2)] * m[(a2 * db + b, a * db + b2)];
            }
        }
        acc
    })
}

/// Probability of POVM outcome `j` on A and the resulting state of B,
/// `ρ_B^(j) = Tr_A[(E_j ⊗ I) ρ] / p_j`.
pub fn povm_outcome(rho: &DensityMatrix, povm: &Povm, j: usize) -> Result<(f64, DensityMatrix)> {
    let (da, db) = rho.dims();
    if povm.dim() != da {
        return Err(Error::DimensionMismatch(format!(
            "POVM on dimension {} applied to subsystem A of dimension {da}",
            povm.dim()
        )));
    }
    let e = povm.elements().get(j).ok_or(Error::OutcomeOutOfRange {
        index: j,
        len: povm.len(),
    })?;
    let block = conditional_block(rho, e);
    let p = block.trace().re;
    if p <= MIN_OUTCOME_PROB {
        return Err(Error::ZeroProbabilityOutcome {
            index: j,
            probability: p,
        });
    }
    Ok((p.min(1.0), DensityMatrix::from_valid(block.unscale(p), (db, 1))))
}

/// Werner-type state `w |Φ⁺⟩⟨Φ⁺| + (1 − w) I/4`.
pub fn werner_state(w: f64) -> Result<DensityMatrix> {
    let bell = crate::qstate::density_from_pure(&PureState::bell());
    let m = bell.matrix().scale(w) + linalg::identity(4).scale((1.0 - w) / 4.0);
    DensityMatrix::new(m, (2, 2))
}
