//! Finite-dimensional quantum states and von Neumann entropic quantities.
//!
//! Bipartite states are ordered as `A ⊗ B` with `A` the slow (leftmost)
//! index, so basis state `|a, b⟩` sits at row `a * d_B + b`.

use nalgebra::DVector;
use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rand_distr::StandardNormal;

use crate::error::{Error, Result};
use crate::linalg::{self, c, CMatrix};

/// Tolerance for Hermiticity, unit trace and positivity of density matrices.
pub const STATE_TOL: f64 = 1e-10;

/// Eigenvalues below this are exact zeros inside logarithms and when
/// deciding supports.
pub const ZERO_EIG: f64 = 1e-12;

/// Negative eigenvalues smaller than this are floating-point noise and do not
/// trigger a reconstruction of the matrix.
const ROUNDOFF_EIG: f64 = 1e-14;

/// Which factor of a bipartite `A ⊗ B` space an operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Subsystem {
    A,
    B,
}

impl Subsystem {
    pub fn other(self) -> Self {
        match self {
            Subsystem::A => Subsystem::B,
            Subsystem::B => Subsystem::A,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct DensityMatrix {
    matrix: CMatrix,
    dims: (usize, usize),
}

impl DensityMatrix {
    /// Validates Hermiticity, unit trace and positivity. Eigenvalues in
    /// `[-1e-10, 0)` are clamped to zero.
    pub fn new(matrix: CMatrix, dims: (usize, usize)) -> Result<Self> {
        let n = matrix.nrows();
        if n != matrix.ncols() {
            return Err(Error::NotSquare(n, matrix.ncols()));
        }
        if n == 0 {
            return Err(Error::Empty);
        }
        if dims.0 * dims.1 != n {
            return Err(Error::DimensionMismatch(format!(
                "dims ({}, {}) do not multiply to matrix size {n}",
                dims.0, dims.1
            )));
        }
        let dev = linalg::hermitian_deviation(&matrix);
        if dev > STATE_TOL {
            return Err(Error::NotHermitian(dev));
        }
        let tr = matrix.trace().re;
        if (tr - 1.0).abs() > STATE_TOL {
            return Err(Error::InvalidTrace(tr));
        }
        let matrix = linalg::hermitian_part(&matrix);
        let (values, vectors) = linalg::eigh(&matrix);
        let min = values[0];
        if min < -STATE_TOL {
            return Err(Error::NotPositive(min));
        }
        // round-off negatives are left in place so stored values survive a
        // serialization round trip; eigenvalues() still reports them as 0
        let matrix = if min < -ROUNDOFF_EIG {
            let clamped = CMatrix::from_diagonal(&DVector::from_iterator(
                n,
                values.iter().map(|&v| c(v.max(0.0), 0.0)),
            ));
            &vectors * clamped * vectors.adjoint()
        } else {
            matrix
        };
        Ok(Self { matrix, dims })
    }

    /// Monopartite state (`d_B = 1`).
    pub fn single(matrix: CMatrix) -> Result<Self> {
        let n = matrix.nrows();
        Self::new(matrix, (n, 1))
    }

    /// Wraps a matrix that is valid by construction (products, partial traces,
    /// normalized conditional states). Only the Hermitian part is kept.
    pub(crate) fn from_valid(matrix: CMatrix, dims: (usize, usize)) -> Self {
        Self {
            matrix: linalg::hermitian_part(&matrix),
            dims,
        }
    }

    /// `(1/d) I`.
    pub fn maximally_mixed(dims: (usize, usize)) -> Self {
        let n = dims.0 * dims.1;
        Self::from_valid(linalg::identity(n).scale(1.0 / n as f64), dims)
    }

    /// Diagonal state in the computational basis.
    pub fn diagonal(probs: &[f64], dims: (usize, usize)) -> Result<Self> {
        let m = CMatrix::from_diagonal(&DVector::from_iterator(
            probs.len(),
            probs.iter().map(|&p| c(p, 0.0)),
        ));
        Self::new(m, dims)
    }

    pub fn matrix(&self) -> &CMatrix {
        &self.matrix
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }

    pub fn dim(&self) -> usize {
        self.matrix.nrows()
    }

    pub fn is_bipartite(&self) -> bool {
        self.dims.0 > 1 && self.dims.1 > 1
    }

    /// Ascending eigenvalues, with negatives reported as 0.
    pub fn eigenvalues(&self) -> Vec<f64> {
        linalg::eigvalsh(&self.matrix).into_iter().map(|v| v.max(0.0)).collect()
    }

    /// `ρ ⊗ σ` with dims `(dim ρ, dim σ)`.
    pub fn tensor(&self, other: &DensityMatrix) -> DensityMatrix {
        DensityMatrix::from_valid(
            linalg::kron(&self.matrix, &other.matrix),
            (self.dim(), other.dim()),
        )
    }

    /// `U ρ U†`.
    pub fn conjugate_by(&self, u: &CMatrix) -> Result<DensityMatrix> {
        if u.nrows() != self.dim() || u.ncols() != self.dim() {
            return Err(Error::DimensionMismatch(format!(
                "unitary is {}x{}, state is {}",
                u.nrows(),
                u.ncols(),
                self.dim()
            )));
        }
        Ok(DensityMatrix::from_valid(u * &self.matrix * u.adjoint(), self.dims))
    }

    /// Exchanges the roles of A and B.
    pub fn swapped(&self) -> DensityMatrix {
        let (da, db) = self.dims;
        let n = da * db;
        let perm = |k: usize| {
            let (a, b) = (k / db, k % db);
            b * da + a
        };
        let mut m = CMatrix::zeros(n, n);
        for i in 0..n {
            for j in 0..n {
                m[(perm(i), perm(j))] = self.matrix[(i, j)];
            }
        }
        DensityMatrix::from_valid(m, (db, da))
    }

    fn require_bipartite(&self) -> Result<()> {
        if self.is_bipartite() {
            Ok(())
        } else {
            Err(Error::NotBipartite(self.dims.0, self.dims.1))
        }
    }
}

/// A normalized state vector with a bipartite split.
#[derive(Debug, Clone, PartialEq)]
pub struct PureState {
    amplitudes: DVector<Complex64>,
    dims: (usize, usize),
}

impl PureState {
    pub fn new(amplitudes: Vec<Complex64>, dims: (usize, usize)) -> Result<Self> {
        if amplitudes.len() != dims.0 * dims.1 {
            return Err(Error::DimensionMismatch(format!(
                "{} amplitudes for dims ({}, {})",
                amplitudes.len(),
                dims.0,
                dims.1
            )));
        }
        let amplitudes = DVector::from_vec(amplitudes);
        let norm = amplitudes.norm();
        if (norm - 1.0).abs() > 1e-12 {
            return Err(Error::InvalidNorm(norm));
        }
        Ok(Self { amplitudes, dims })
    }

    /// Real amplitudes, convenient for tests and examples.
    pub fn from_real(amplitudes: &[f64], dims: (usize, usize)) -> Result<Self> {
        Self::new(amplitudes.iter().map(|&a| c(a, 0.0)).collect(), dims)
    }

    /// `(|00⟩ + |11⟩)/√2`.
    pub fn bell() -> Self {
        let h = std::f64::consts::FRAC_1_SQRT_2;
        Self::from_real(&[h, 0.0, 0.0, h], (2, 2)).expect("normalized")
    }

    /// `cos(θ/2)|00⟩ + sin(θ/2)|11⟩`.
    pub fn entangled(theta: f64) -> Self {
        let (s, co) = (theta / 2.0).sin_cos();
        Self::from_real(&[co, 0.0, 0.0, s], (2, 2)).expect("normalized")
    }

    pub fn amplitudes(&self) -> &DVector<Complex64> {
        &self.amplitudes
    }

    pub fn dims(&self) -> (usize, usize) {
        self.dims
    }
}

/// `|ψ⟩⟨ψ|`.
pub fn density_from_pure(psi: &PureState) -> DensityMatrix {
    let a = &psi.amplitudes;
    DensityMatrix::from_valid(a * a.adjoint(), psi.dims)
}

/// Reduced state of the `keep` subsystem.
pub fn partial_trace(rho: &DensityMatrix, keep: Subsystem) -> Result<DensityMatrix> {
    rho.require_bipartite()?;
    let (da, db) = rho.dims;
    let m = &rho.matrix;
    let out = match keep {
        Subsystem::A => CMatrix::from_fn(da, da, |a, a2| {
            (0..db).map(|b| m[(a * db + b, a2 * db + b)]).sum()
        }),
        Subsystem::B => CMatrix::from_fn(db, db, |b, b2| {
            (0..da).map(|a| m[(a * db + b, a * db + b2)]).sum()
        }),
    };
    let d = out.nrows();
    Ok(DensityMatrix::from_valid(out, (d, 1)))
}

pub(crate) fn entropy_of_spectrum(values: &[f64]) -> f64 {
    values
        .iter()
        .filter(|&&v| v >= ZERO_EIG)
        .map(|&v| -v * v.ln())
        .sum()
}

/// `S_N(ρ) = -Tr ρ ln ρ`.
pub fn von_neumann_entropy(rho: &DensityMatrix) -> f64 {
    entropy_of_spectrum(&rho.eigenvalues())
}

/// `S_N(σ‖ρ) = Tr σ(ln σ − ln ρ)`, or `f64::INFINITY` when the support of
/// `σ` is not contained in the support of `ρ`.
pub fn quantum_relative_entropy(sigma: &DensityMatrix, rho: &DensityMatrix) -> Result<f64> {
    if sigma.dim() != rho.dim() {
        return Err(Error::DimensionMismatch(format!(
            "relative entropy between {}- and {}-dimensional states",
            sigma.dim(),
            rho.dim()
        )));
    }
    let (r_vals, r_vecs) = linalg::eigh(&rho.matrix);
    let mut cross = 0.0;
    for (k, &r) in r_vals.iter().enumerate() {
        let v = r_vecs.column(k);
        let weight = (v.adjoint() * &sigma.matrix * v)[(0, 0)].re;
        if r < ZERO_EIG {
            if weight > ZERO_EIG {
                return Ok(f64::INFINITY);
            }
            continue;
        }
        cross += weight * r.ln();
    }
    Ok(-von_neumann_entropy(sigma) - cross)
}

/// `I_N = S_N(ρ_A) + S_N(ρ_B) − S_N(ρ_AB)`, with round-off below zero
/// reported as 0.
pub fn quantum_mutual_information(rho: &DensityMatrix) -> Result<f64> {
    let ra = partial_trace(rho, Subsystem::A)?;
    let rb = partial_trace(rho, Subsystem::B)?;
    Ok((von_neumann_entropy(&ra) + von_neumann_entropy(&rb) - von_neumann_entropy(rho)).max(0.0))
}

/// Mutual information as the relative entropy `S_N(ρ_AB ‖ ρ_A ⊗ ρ_B)`.
pub fn mutual_information_as_relative_entropy(rho: &DensityMatrix) -> Result<f64> {
    let ra = partial_trace(rho, Subsystem::A)?;
    let rb = partial_trace(rho, Subsystem::B)?;
    let product = DensityMatrix::from_valid(linalg::kron(ra.matrix(), rb.matrix()), rho.dims);
    quantum_relative_entropy(rho, &product)
}

/// The three sides of `|S(A) − S(B)| ≤ S(AB) ≤ S(A) + S(B)`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ArakiLieb {
    pub lower: f64,
    pub joint: f64,
    pub upper: f64,
}

impl ArakiLieb {
    pub fn holds(&self, tol: f64) -> bool {
        self.lower <= self.joint + tol && self.joint <= self.upper + tol
    }
}

pub fn araki_lieb_check(rho: &DensityMatrix) -> Result<ArakiLieb> {
    let sa = von_neumann_entropy(&partial_trace(rho, Subsystem::A)?);
    let sb = von_neumann_entropy(&partial_trace(rho, Subsystem::B)?);
    Ok(ArakiLieb {
        lower: (sa - sb).abs(),
        joint: von_neumann_entropy(rho),
        upper: sa + sb,
    })
}

/// Entropy of either reduced state of a pure bipartite state.
pub fn entanglement_entropy(psi: &PureState) -> Result<f64> {
    let rho = density_from_pure(psi);
    Ok(von_neumann_entropy(&partial_trace(&rho, Subsystem::A)?))
}

/// Hilbert–Schmidt-type random state: `G G† / Tr(G G†)` for a `d × rank`
/// complex Gaussian `G`. Deterministic for a given seed.
pub fn random_density_matrix(dims: (usize, usize), rank: usize, seed: u64) -> Result<DensityMatrix> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    random_density_matrix_with(dims, rank, &mut rng)
}

pub fn random_density_matrix_with<R: Rng + ?Sized>(
    dims: (usize, usize),
    rank: usize,
    rng: &mut R,
) -> Result<DensityMatrix> {
    let d = dims.0 * dims.1;
    if rank == 0 || rank > d {
        return Err(Error::InvalidRank { rank, dim: d });
    }
    let g = CMatrix::from_fn(d, rank, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let w = &g * g.adjoint();
    let tr = w.trace().re;
    Ok(DensityMatrix::from_valid(w.unscale(tr), dims))
}
