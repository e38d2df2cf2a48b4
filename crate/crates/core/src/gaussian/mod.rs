//! Two-mode Gaussian states in covariance-matrix form.
//!
//! Quadratures are ordered `(x₁, p₁, x₂, p₂)` and made dimensionless at the
//! reference frequency `ω`: `x = √(mω/ℏ) q`, `p̃ = p / √(mωℏ)`, so that
//! `[x, p̃] = i`. The vacuum has covariance `I/2` and every physical state has
//! symplectic eigenvalues `ν ≥ 1/2`.

mod discord;
mod evolution;

pub use discord::{gaussian_discord, minimize_gaussian_measurement, GaussianMeasurement, OracleMinimum};
pub use evolution::{
    expm, normal_mode_propagator, symplectic_evolution, symplectic_form, QuadraticHamiltonian,
};

use nalgebra::{Matrix2, Matrix4};
use rand::Rng;

use crate::error::{Error, Result};

/// Symmetry tolerance for covariance matrices.
pub const SYMMETRY_TOL: f64 = 1e-10;

/// Slack on `ν₋ ≥ 1/2` accepted at construction.
pub const UNCERTAINTY_TOL: f64 = 1e-9;

/// Which mode a single-mode operation refers to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum Mode {
    #[default]
    One,
    Two,
}

/// Second moments of a two-mode Gaussian state.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CovarianceMatrix {
    sigma: Matrix4<f64>,
}

impl CovarianceMatrix {
    /// Validates symmetry, positivity and the uncertainty bound `ν₋ ≥ 1/2`.
    pub fn new(sigma: Matrix4<f64>) -> Result<Self> {
        let dev = (sigma - sigma.transpose()).amax();
        if dev > SYMMETRY_TOL {
            return Err(Error::NotSymmetric(dev));
        }
        let sigma = (sigma + sigma.transpose()) * 0.5;
        if sigma.cholesky().is_none() {
            let min = sigma.symmetric_eigenvalues().min();
            return Err(Error::NotPositive(min));
        }
        let cm = Self { sigma };
        let (nu_minus, _) = cm.symplectic_spectrum();
        if nu_minus < 0.5 - UNCERTAINTY_TOL {
            return Err(Error::Unphysical(nu_minus));
        }
        Ok(cm)
    }

    pub(crate) fn from_valid(sigma: Matrix4<f64>) -> Self {
        Self {
            sigma: (sigma + sigma.transpose()) * 0.5,
        }
    }

    /// Direct sum of two single-mode covariance matrices.
    pub fn product(mode1: &Matrix2<f64>, mode2: &Matrix2<f64>) -> Result<Self> {
        let mut s = Matrix4::zeros();
        s.fixed_view_mut::<2, 2>(0, 0).copy_from(mode1);
        s.fixed_view_mut::<2, 2>(2, 2).copy_from(mode2);
        Self::new(s)
    }

    pub fn vacuum() -> Self {
        Self::from_valid(Matrix4::identity() * 0.5)
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.sigma
    }

    /// Local block of mode 1 (`A`) or mode 2 (`B`).
    pub fn local_block(&self, mode: Mode) -> Matrix2<f64> {
        let k = match mode {
            Mode::One => 0,
            Mode::Two => 2,
        };
        self.sigma.fixed_view::<2, 2>(k, k).into_owned()
    }

    /// Correlation block `C` (rows mode 1, columns mode 2).
    pub fn cross_block(&self) -> Matrix2<f64> {
        self.sigma.fixed_view::<2, 2>(0, 2).into_owned()
    }

    /// Local symplectic invariants `(det A, det B, det C, det σ)`.
    pub fn invariants(&self) -> (f64, f64, f64, f64) {
        (
            self.local_block(Mode::One).determinant(),
            self.local_block(Mode::Two).determinant(),
            self.cross_block().determinant(),
            self.sigma.determinant(),
        )
    }

    /// Exchanges the two modes.
    pub fn swapped(&self) -> Self {
        let p = [2, 3, 0, 1];
        Self::from_valid(Matrix4::from_fn(|i, j| self.sigma[(p[i], p[j])]))
    }

    fn symplectic_spectrum(&self) -> (f64, f64) {
        let (a, b, c, d) = self.invariants();
        let delta = a + b + 2.0 * c;
        let disc = (delta * delta - 4.0 * d).max(0.0).sqrt();
        let minus = (0.5 * (delta - disc)).max(0.0).sqrt();
        let plus = (0.5 * (delta + disc)).max(0.0).sqrt();
        (minus, plus)
    }
}

/// Thermal variance `ν = ½ coth(βℏω/2)` of one mode; `β = ∞` gives the vacuum.
pub fn thermal_variance(beta: f64, omega: f64, hbar: f64) -> Result<f64> {
    if !(beta > 0.0) {
        return Err(Error::InvalidParameter {
            name: "beta",
            value: beta,
            reason: "must be positive",
        });
    }
    if !(omega > 0.0) || !omega.is_finite() {
        return Err(Error::InvalidParameter {
            name: "omega",
            value: omega,
            reason: "must be positive",
        });
    }
    if !(hbar > 0.0) || !hbar.is_finite() {
        return Err(Error::InvalidParameter {
            name: "hbar",
            value: hbar,
            reason: "must be positive",
        });
    }
    Ok(0.5 / (0.5 * beta * hbar * omega).tanh())
}

/// Single-mode Gibbs state `ν I₂`.
pub fn thermal_covariance(beta: f64, omega: f64, hbar: f64) -> Result<Matrix2<f64>> {
    Ok(Matrix2::identity() * thermal_variance(beta, omega, hbar)?)
}

/// Product of two identical thermal modes.
pub fn thermal_product(beta: f64, omega: f64, hbar: f64) -> Result<CovarianceMatrix> {
    let m = thermal_covariance(beta, omega, hbar)?;
    CovarianceMatrix::product(&m, &m)
}

/// Quench Hamiltonian `Ĥ(λ)` of two identical oscillators with harmonic
/// coupling `λ`; see [`QuadraticHamiltonian::coupled_oscillators`].
pub fn quench_hamiltonian_matrix(omega: f64, lambda: f64, mass: f64, hbar: f64) -> Result<QuadraticHamiltonian> {
    QuadraticHamiltonian::coupled_oscillators(omega, lambda, mass, hbar)
}

/// `(ν₋, ν₊)`, the moduli of the eigenvalues of `iΩσ`, ascending.
pub fn symplectic_eigenvalues(cm: &CovarianceMatrix) -> Result<(f64, f64)> {
    let (minus, plus) = cm.symplectic_spectrum();
    if minus < 0.5 - 1e-6 {
        return Err(Error::Unphysical(minus));
    }
    Ok((minus, plus))
}

/// Entropy of a mode with symplectic eigenvalue `ν`:
/// `(ν+½) ln(ν+½) − (ν−½) ln(ν−½)`.
pub fn mode_entropy(nu: f64) -> f64 {
    let up = nu + 0.5;
    let down = nu - 0.5;
    let low = if down < 1e-15 { 0.0 } else { down * down.ln() };
    up * up.ln() - low
}

/// Entropy of a single-mode covariance matrix, via `ν = √det`.
pub fn single_mode_entropy(block: &Matrix2<f64>) -> f64 {
    mode_entropy(block.determinant().max(0.25).sqrt())
}

/// von Neumann entropy of the two-mode Gaussian state.
pub fn gaussian_entropy(cm: &CovarianceMatrix) -> Result<f64> {
    let (minus, plus) = symplectic_eigenvalues(cm)?;
    Ok(mode_entropy(minus) + mode_entropy(plus))
}

/// Gaussian mutual information `S(σ₁) + S(σ₂) − S(σ)`.
pub fn gaussian_mutual_information(cm: &CovarianceMatrix) -> Result<f64> {
    Ok(single_mode_entropy(&cm.local_block(Mode::One)) + single_mode_entropy(&cm.local_block(Mode::Two))
        - gaussian_entropy(cm)?)
}

/// Random physical covariance matrix `S (⊕ ν_k I) Sᵀ` with thermal
/// eigenvalues `ν_k ∈ [1/2, 1/2 + spread]` and `S` a product of random
/// passive transformations and single-mode squeezers with `|r| ≤ max_squeeze`.
pub fn random_covariance<R: Rng + ?Sized>(rng: &mut R, spread: f64, max_squeeze: f64) -> CovarianceMatrix {
    let nu1 = 0.5 + spread * rng.random::<f64>();
    let nu2 = 0.5 + spread * rng.random::<f64>();
    let thermal = Matrix4::from_diagonal(&nalgebra::Vector4::new(nu1, nu1, nu2, nu2));
    let r1 = max_squeeze * (2.0 * rng.random::<f64>() - 1.0);
    let r2 = max_squeeze * (2.0 * rng.random::<f64>() - 1.0);
    let squeeze = Matrix4::from_diagonal(&nalgebra::Vector4::new(
        (-r1).exp(),
        r1.exp(),
        (-r2).exp(),
        r2.exp(),
    ));
    let s = random_passive(rng) * squeeze * random_passive(rng);
    CovarianceMatrix::from_valid(s * thermal * s.transpose())
}

/// Passive (orthogonal symplectic) transformation from a random 2×2 unitary
/// `U = X + iY`, acting as `[[X, −Y], [Y, X]]` on `(x₁, x₂, p₁, p₂)`.
fn random_passive<R: Rng + ?Sized>(rng: &mut R) -> Matrix4<f64> {
    let u = crate::linalg::random_unitary(2, rng);
    let xxpp = Matrix4::from_fn(|i, j| {
        let (bi, ri) = (i / 2, i % 2);
        let (bj, rj) = (j / 2, j % 2);
        let z = u[(ri, rj)];
        match (bi, bj) {
            (0, 0) | (1, 1) => z.re,
            (0, 1) => -z.im,
            _ => z.im,
        }
    });
    // (x1, x2, p1, p2) -> (x1, p1, x2, p2)
    let p = [0, 2, 1, 3];
    Matrix4::from_fn(|i, j| xxpp[(p[i], p[j])])
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    // ½ coth(½), mpmath
    const NU_UNIT: f64 = 1.081_976_706_869_326_4;

    #[test]
    fn thermal_examples() {
        assert!((thermal_variance(f64::INFINITY, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        assert!((thermal_variance(1e3, 1.0, 1.0).unwrap() - 0.5).abs() < 1e-15);
        let nu = thermal_variance(1.0, 1.0, 1.0).unwrap();
        assert!((nu - NU_UNIT).abs() < 1e-14);
        let nbar = 1.0 / (1f64.exp() - 1.0);
        assert!((nu - (nbar + 0.5)).abs() < 1e-14);
        let prod = thermal_product(1.0, 1.0, 1.0).unwrap();
        assert_eq!(*prod.matrix(), Matrix4::identity() * nu);
        assert!(thermal_variance(0.0, 1.0, 1.0).is_err());
        assert!(thermal_variance(1.0, -1.0, 1.0).is_err());
    }

    #[test]
    fn symplectic_eigenvalue_examples() {
        let (m, p) = symplectic_eigenvalues(&CovarianceMatrix::vacuum()).unwrap();
        assert!((m - 0.5).abs() < 1e-15 && (p - 0.5).abs() < 1e-15);
        let prod = thermal_product(1.0, 1.0, 1.0).unwrap();
        let (m, p) = symplectic_eigenvalues(&prod).unwrap();
        assert!((m - NU_UNIT).abs() < 1e-12 && (p - NU_UNIT).abs() < 1e-12);
    }

    #[test]
    fn symplectic_eigenvalues_match_spectrum_of_omega_sigma() {
        let mut rng = ChaCha8Rng::seed_from_u64(21);
        for _ in 0..50 {
            let cm = random_covariance(&mut rng, 2.0, 1.0);
            let (m, p) = symplectic_eigenvalues(&cm).unwrap();
            let mut moduli: Vec<f64> = (symplectic_form() * cm.matrix())
                .complex_eigenvalues()
                .iter()
                .map(|z| z.norm())
                .collect();
            moduli.sort_by(f64::total_cmp);
            assert!((moduli[0] - m).abs() < 1e-9 && (moduli[1] - m).abs() < 1e-9);
            assert!((moduli[2] - p).abs() < 1e-9 && (moduli[3] - p).abs() < 1e-9);
            assert!((m * m * p * p - cm.matrix().determinant()).abs() < 1e-9 * cm.matrix().determinant());
        }
    }

    #[test]
    fn entropy_examples() {
        assert_eq!(gaussian_entropy(&CovarianceMatrix::vacuum()).unwrap(), 0.0);
        // f(½ coth ½), mpmath; equals the Fock series −Σ p_n ln p_n
        let single = mode_entropy(NU_UNIT);
        assert!((single - 1.040_651_852_256_408_3).abs() < 1e-13);
        let q = (-1.0f64).exp();
        let series: f64 = (0..200)
            .map(|n| {
                let p = (1.0 - q) * q.powi(n);
                -p * p.ln()
            })
            .sum();
        assert!((single - series).abs() < 1e-13);
    }

    #[test]
    fn rejects_unphysical_matrices() {
        let squeezed_too_far = Matrix4::from_diagonal(&nalgebra::Vector4::new(0.4, 0.4, 0.5, 0.5));
        assert!(matches!(CovarianceMatrix::new(squeezed_too_far), Err(Error::Unphysical(_))));
        let mut asym = Matrix4::identity();
        asym[(0, 1)] = 0.1;
        assert!(matches!(CovarianceMatrix::new(asym), Err(Error::NotSymmetric(_))));
        let neg = Matrix4::from_diagonal(&nalgebra::Vector4::new(-1.0, 1.0, 1.0, 1.0));
        assert!(matches!(CovarianceMatrix::new(neg), Err(Error::NotPositive(_))));
    }

    #[test]
    fn random_covariances_are_physical() {
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        for _ in 0..100 {
            let cm = random_covariance(&mut rng, 3.0, 1.5);
            assert!(CovarianceMatrix::new(*cm.matrix()).is_ok());
        }
    }

    #[test]
    fn swap_exchanges_blocks() {
        let mut rng = ChaCha8Rng::seed_from_u64(8);
        let cm = random_covariance(&mut rng, 1.0, 0.5);
        let s = cm.swapped();
        assert_eq!(s.local_block(Mode::One), cm.local_block(Mode::Two));
        assert_eq!(s.cross_block(), cm.cross_block().transpose());
    }
}
