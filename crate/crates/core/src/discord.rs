//! Two-qubit classical correlations and quantum discord.
//!
//! The measurement on A ranges over rank-one projective measurements
//! `{|n⟩⟨n|, |n⊥⟩⟨n⊥|}` parametrized by the Bloch angles of `|n⟩`. General
//! POVMs are not searched, so the discord reported here is an upper bound on
//! the fully optimized value.
//!
//! The maximization runs a deterministic 64 × 128 grid over `(θ, φ)` and then
//! polishes the best grid point with Nelder–Mead.

use std::f64::consts::PI;

use rayon::prelude::*;

use crate::error::{Error, Result};
use crate::linalg::{c, CMatrix};
use crate::measure::{povm_outcome, Povm};
use crate::optim::NelderMead;
use crate::qstate::{partial_trace, quantum_mutual_information, von_neumann_entropy, DensityMatrix, Subsystem};

pub const GRID_THETA: usize = 64;
pub const GRID_PHI: usize = 128;

/// Negative discord down to this magnitude is round-off and clamped to zero.
pub const DISCORD_CLAMP: f64 = 1e-9;

/// Bloch angles of the projective basis `{|n⟩, |n⊥⟩}` measured on A.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct MeasurementBasis {
    theta: f64,
    phi: f64,
}

impl MeasurementBasis {
    /// Wraps arbitrary angles onto `θ ∈ [0, π]`, `φ ∈ [0, 2π)` describing the
    /// same Bloch vector.
    pub fn new(theta: f64, phi: f64) -> Self {
        let mut theta = theta.rem_euclid(2.0 * PI);
        let mut phi = phi;
        if theta > PI {
            theta = 2.0 * PI - theta;
            phi += PI;
        }
        let mut phi = phi.rem_euclid(2.0 * PI);
        if phi >= 2.0 * PI {
            phi = 0.0;
        }
        Self { theta, phi }
    }

    pub fn z() -> Self {
        Self::new(0.0, 0.0)
    }

    pub fn theta(&self) -> f64 {
        self.theta
    }

    pub fn phi(&self) -> f64 {
        self.phi
    }

    /// Unitary whose columns are `|n⟩` and `|n⊥⟩`.
    pub fn unitary(&self) -> CMatrix {
        let (s, co) = (self.theta / 2.0).sin_cos();
        let e = c(self.phi.cos(), self.phi.sin());
        CMatrix::from_row_slice(2, 2, &[c(co, 0.0), c(s, 0.0), e * s, -e * co])
    }

    pub fn povm(&self) -> Povm {
        Povm::projective(&self.unitary()).expect("orthonormal basis")
    }
}

/// Work done by the measurement optimizer.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct OptimizerTrace {
    pub evaluations: usize,
    pub converged: bool,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ClassicalCorrelations {
    pub value: f64,
    pub basis: MeasurementBasis,
    pub trace: OptimizerTrace,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DiscordResult {
    pub mutual_info: f64,
    pub classical_corr: f64,
    pub discord: f64,
    pub optimal_basis: MeasurementBasis,
    pub trace: OptimizerTrace,
}

fn require_two_qubits(rho: &DensityMatrix) -> Result<()> {
    if rho.dims() == (2, 2) {
        Ok(())
    } else {
        Err(Error::DimensionMismatch(format!(
            "discord needs a 2⊗2 state, got {:?}",
            rho.dims()
        )))
    }
}

/// `Σ_j p_j S_N(ρ_B^(j))`; outcomes with vanishing probability carry no weight.
fn average_conditional_entropy(rho: &DensityMatrix, basis: &MeasurementBasis) -> f64 {
    let povm = basis.povm();
    (0..povm.len())
        .map(|j| match povm_outcome(rho, &povm, j) {
            Ok((p, cond)) => p * von_neumann_entropy(&cond),
            Err(_) => 0.0,
        })
        .sum()
}

/// `S_N(ρ_B) − Σ_j p_j S_N(ρ_B^(j))` for the projective measurement `basis` on A.
pub fn classical_correlations_at(rho: &DensityMatrix, basis: &MeasurementBasis) -> Result<f64> {
    require_two_qubits(rho)?;
    let sb = von_neumann_entropy(&partial_trace(rho, Subsystem::B)?);
    Ok(sb - average_conditional_entropy(rho, basis))
}

/// Grid point `(i, j)` of the coarse search.
pub fn grid_basis(i: usize, j: usize) -> MeasurementBasis {
    let theta = PI * i as f64 / (GRID_THETA - 1) as f64;
    let phi = 2.0 * PI * j as f64 / GRID_PHI as f64;
    MeasurementBasis { theta, phi }
}

/// Best coarse-grid value. Ties resolve to the lexicographically smallest
/// `(θ, φ)`, independent of evaluation order.
pub fn grid_search(rho: &DensityMatrix) -> Result<ClassicalCorrelations> {
    require_two_qubits(rho)?;
    let sb = von_neumann_entropy(&partial_trace(rho, Subsystem::B)?);
    let values: Vec<f64> = (0..GRID_THETA * GRID_PHI)
        .into_par_iter()
        .map(|k| sb - average_conditional_entropy(rho, &grid_basis(k / GRID_PHI, k % GRID_PHI)))
        .collect();
    let mut best = 0;
    for (k, v) in values.iter().enumerate() {
        if *v > values[best] {
            best = k;
        }
    }
    Ok(ClassicalCorrelations {
        value: values[best],
        basis: grid_basis(best / GRID_PHI, best % GRID_PHI),
        trace: OptimizerTrace {
            evaluations: values.len(),
            converged: true,
        },
    })
}

/// Local Nelder–Mead maximization of the classical correlations from `start`.
pub fn refine_from(rho: &DensityMatrix, start: MeasurementBasis) -> Result<ClassicalCorrelations> {
    require_two_qubits(rho)?;
    let sb = von_neumann_entropy(&partial_trace(rho, Subsystem::B)?);
    let objective = |x: &[f64]| average_conditional_entropy(rho, &MeasurementBasis::new(x[0], x[1]));
    let nm = NelderMead {
        step: PI / (GRID_THETA - 1) as f64,
        xtol: 1e-7,
        ftol: 1e-13,
        max_evals: 4000,
    };
    let m = nm.minimize(objective, &[start.theta, start.phi]);
    Ok(ClassicalCorrelations {
        value: sb - m.value,
        basis: MeasurementBasis::new(m.x[0], m.x[1]),
        trace: OptimizerTrace {
            evaluations: m.evaluations,
            converged: m.converged,
        },
    })
}

/// Maximum of [`classical_correlations_at`] over projective measurements on A.
pub fn max_classical_correlations(rho: &DensityMatrix) -> Result<ClassicalCorrelations> {
    let coarse = grid_search(rho)?;
    let fine = refine_from(rho, coarse.basis)?;
    let trace = OptimizerTrace {
        evaluations: coarse.trace.evaluations + fine.trace.evaluations,
        converged: fine.trace.converged,
    };
    let best = if fine.value >= coarse.value { fine } else { coarse };
    Ok(ClassicalCorrelations { trace, ..best })
}

/// `D(B|A) = I(A:B) − max C`, measuring A.
pub fn discord(rho: &DensityMatrix) -> Result<DiscordResult> {
    require_two_qubits(rho)?;
    let mutual_info = quantum_mutual_information(rho)?;
    let cc = max_classical_correlations(rho)?;
    let mut d = mutual_info - cc.value;
    if d < -DISCORD_CLAMP {
        return Err(Error::Consistency(format!(
            "classical correlations {} exceed mutual information {mutual_info}",
            cc.value
        )));
    }
    if d < 0.0 {
        d = 0.0;
    }
    Ok(DiscordResult {
        mutual_info,
        classical_corr: cc.value,
        discord: d,
        optimal_basis: cc.basis,
        trace: cc.trace,
    })
}

/// Discord with the roles of A and B exchanged (measuring B).
pub fn discord_swapped(rho: &DensityMatrix) -> Result<DiscordResult> {
    require_two_qubits(rho)?;
    discord(&rho.swapped())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::measure::werner_state;
    use crate::qstate::{density_from_pure, random_density_matrix, PureState};
    use std::f64::consts::LN_2;

    // ln 2 − h(3/4), mpmath
    const WERNER_HALF_C: f64 = 0.130_812_035_941_136_96;

    #[test]
    fn basis_wraps_angles() {
        let b = MeasurementBasis::new(3.0 * PI / 2.0, 0.25);
        assert!((b.theta() - PI / 2.0).abs() < 1e-15);
        assert!((b.phi() - (0.25 + PI)).abs() < 1e-15);
        let u = b.unitary();
        assert!(crate::linalg::max_abs_diff(&(u.adjoint() * &u), &crate::linalg::identity(2)) < 1e-15);
    }

    #[test]
    fn classical_correlations_examples() {
        let prod = random_density_matrix((2, 1), 2, 1)
            .unwrap()
            .tensor(&random_density_matrix((2, 1), 2, 2).unwrap());
        for b in [MeasurementBasis::z(), MeasurementBasis::new(1.0, 2.0)] {
            assert!(classical_correlations_at(&prod, &b).unwrap().abs() < 1e-12);
        }
        let bell = density_from_pure(&PureState::bell());
        assert!((classical_correlations_at(&bell, &MeasurementBasis::z()).unwrap() - LN_2).abs() < 1e-12);
        let w = werner_state(0.5).unwrap();
        let v = classical_correlations_at(&w, &MeasurementBasis::z()).unwrap();
        assert!((v - WERNER_HALF_C).abs() < 1e-12);
        let q = crate::qstate::DensityMatrix::maximally_mixed((2, 3));
        assert!(classical_correlations_at(&q, &MeasurementBasis::z()).is_err());
    }

    #[test]
    fn max_classical_examples() {
        let classical = DensityMatrix::diagonal(&[0.5, 0.0, 0.0, 0.5], (2, 2)).unwrap();
        let cc = max_classical_correlations(&classical).unwrap();
        assert!((cc.value - LN_2).abs() < 1e-9);
        let th = cc.basis.theta();
        assert!(th.min(PI - th) < 1e-3);

        let bell = density_from_pure(&PureState::bell());
        assert!((max_classical_correlations(&bell).unwrap().value - LN_2).abs() < 1e-9);

        let w = werner_state(0.5).unwrap();
        assert!((max_classical_correlations(&w).unwrap().value - WERNER_HALF_C).abs() < 1e-9);
    }

    #[test]
    fn discord_examples() {
        let bell = density_from_pure(&PureState::bell());
        let d = discord(&bell).unwrap();
        assert!((d.mutual_info - 2.0 * LN_2).abs() < 1e-12);
        assert!((d.discord - LN_2).abs() < 1e-6);

        let classical = DensityMatrix::diagonal(&[0.1, 0.2, 0.3, 0.4], (2, 2)).unwrap();
        assert!(discord(&classical).unwrap().discord < 1e-9);

        // independent dense-grid sweep over 10^6 projective bases
        let w = werner_state(0.5).unwrap();
        let d = discord(&w).unwrap();
        assert!((d.discord - 0.181_939_478_770_230).abs() < 1e-6, "{}", d.discord);
        assert!((d.discord - (d.mutual_info - d.classical_corr)).abs() < 1e-9);
    }

    #[test]
    fn swapped_examples() {
        let bell = density_from_pure(&PureState::bell());
        assert!((discord_swapped(&bell).unwrap().discord - LN_2).abs() < 1e-6);
        let prod = random_density_matrix((2, 1), 2, 3)
            .unwrap()
            .tensor(&random_density_matrix((2, 1), 2, 4).unwrap());
        assert!(discord_swapped(&prod).unwrap().discord < 1e-9);
    }
}
