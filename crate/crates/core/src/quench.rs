//! Sudden quench of the harmonic coupling between two identical oscillators.
//!
//! Both oscillators start uncoupled (`λ = 0`) in a Gibbs state at inverse
//! temperature `β`, and the coupling `(m λ₀²/2)(q₁ − q₂)²` is switched on
//! instantaneously. Because the switch is sudden, the work is the expectation
//! of `H(λ₀) − H(0)` in the initial state; no finite-time protocol is modelled.
//!
//! The closed forms are cross-checked by three oracles living here:
//! exact Gaussian sampling of the classical Gibbs state
//! ([`monte_carlo_classical_work`]), a truncated two-mode Fock trace
//! ([`fock_oracle`]) and Gauss–Hermite quadrature of the classical phase-space
//! integral ([`classical_partition_quadrature`]).
//!
//! "Irreversible" and "dissipated" work are synonyms; the `*_irr_*` names are
//! used throughout.

use std::f64::consts::{LN_2, PI};

use nalgebra::{DMatrix, SymmetricEigen};
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rand_distr::{Distribution, StandardNormal};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::gaussian::{gaussian_discord, quench_hamiltonian_matrix, symplectic_evolution, thermal_product, Mode};

/// Evolution time used when none is given.
pub const DEFAULT_TIME: f64 = 1.0;

/// Thermal tail mass left outside the Fock truncation, per mode.
pub const FOCK_TAIL: f64 = 1e-12;

/// Physical parameters of the quench. All fields are validated on
/// construction, so the closed forms below cannot fail.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuenchParams {
    mass: f64,
    omega: f64,
    lambda0: f64,
    beta: f64,
    hbar: f64,
    kb: f64,
    h_ref: f64,
}

fn positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::InvalidParameter {
            name,
            value,
            reason: "must be positive and finite",
        })
    }
}

impl QuenchParams {
    /// `h_ref` defaults to `2πℏ`.
    pub fn new(mass: f64, omega: f64, lambda0: f64, beta: f64, hbar: f64, kb: f64) -> Result<Self> {
        let p = Self {
            mass,
            omega,
            lambda0,
            beta,
            hbar,
            kb,
            h_ref: 2.0 * PI * hbar,
        };
        p.validate()?;
        Ok(p)
    }

    /// `m = ω = λ₀ = β = ℏ = k_B = 1`.
    pub fn natural() -> Self {
        Self {
            mass: 1.0,
            omega: 1.0,
            lambda0: 1.0,
            beta: 1.0,
            hbar: 1.0,
            kb: 1.0,
            h_ref: 2.0 * PI,
        }
    }

    fn validate(&self) -> Result<()> {
        positive("mass", self.mass)?;
        positive("omega", self.omega)?;
        positive("beta", self.beta)?;
        positive("hbar", self.hbar)?;
        positive("kb", self.kb)?;
        positive("h_ref", self.h_ref)?;
        if !(self.lambda0 >= 0.0) || !self.lambda0.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda0",
                value: self.lambda0,
                reason: "must be non-negative and finite",
            });
        }
        Ok(())
    }

    pub fn with_beta(self, beta: f64) -> Result<Self> {
        let p = Self { beta, ..self };
        p.validate()?;
        Ok(p)
    }

    /// Sets `β = 1/(k_B T)`.
    pub fn with_temperature(self, temperature: f64) -> Result<Self> {
        positive("temperature", temperature)?;
        self.with_beta(1.0 / (self.kb * temperature))
    }

    pub fn with_lambda0(self, lambda0: f64) -> Result<Self> {
        let p = Self { lambda0, ..self };
        p.validate()?;
        Ok(p)
    }

    pub fn with_h_ref(self, h_ref: f64) -> Result<Self> {
        let p = Self { h_ref, ..self };
        p.validate()?;
        Ok(p)
    }

    pub fn mass(&self) -> f64 {
        self.mass
    }

    pub fn omega(&self) -> f64 {
        self.omega
    }

    pub fn lambda0(&self) -> f64 {
        self.lambda0
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    pub fn kb(&self) -> f64 {
        self.kb
    }

    pub fn h_ref(&self) -> f64 {
        self.h_ref
    }

    /// `k_B T = 1/β` divided by `k_B`.
    pub fn temperature(&self) -> f64 {
        1.0 / (self.kb * self.beta)
    }

    /// `βℏω`.
    fn x(&self) -> f64 {
        self.beta * self.hbar * self.omega
    }
}

/// Everything reported at one temperature. Energies share the unit of `ℏω`.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct QuenchReport {
    pub temperature: f64,
    pub w_c_avg: f64,
    pub df_c: f64,
    pub w_c_irr: f64,
    pub w_q_avg: f64,
    pub df_q: f64,
    pub w_q_irr: f64,
    pub omega_excess: f64,
    pub gaussian_discord: f64,
}

impl QuenchReport {
    pub const CSV_HEADER: &'static str =
        "temperature,w_c_avg,df_c,w_c_irr,w_q_avg,df_q,w_q_irr,omega_excess,gaussian_discord";

    pub fn values(&self) -> [f64; 9] {
        [
            self.temperature,
            self.w_c_avg,
            self.df_c,
            self.w_c_irr,
            self.w_q_avg,
            self.df_q,
            self.w_q_irr,
            self.omega_excess,
            self.gaussian_discord,
        ]
    }
}

/// Normal-mode frequencies `(ω, √(ω² + 2λ²))` at coupling `λ`.
pub fn normal_mode_frequencies(omega: f64, lambda: f64) -> (f64, f64) {
    (omega, (omega * omega + 2.0 * lambda * lambda).sqrt())
}

/// `ln sinh y` for `y > 0` without overflow.
fn ln_sinh(y: f64) -> f64 {
    if y > 20.0 {
        y - LN_2 + (-(-2.0 * y).exp()).ln_1p()
    } else {
        y.sinh().ln()
    }
}

/// `Z_C(λ) = (2π/(h β ω))² / √(1 + 2λ²/ω²)`.
pub fn classical_partition(p: &QuenchParams, lambda: f64) -> f64 {
    let r = (lambda / p.omega).powi(2);
    (2.0 * PI / (p.h_ref * p.beta * p.omega)).powi(2) / (1.0 + 2.0 * r).sqrt()
}

/// `⟨W_C⟩ = λ₀²/(βω²)`, independent of `m` and `ℏ`.
pub fn classical_avg_work(p: &QuenchParams) -> f64 {
    (p.lambda0 / p.omega).powi(2) / p.beta
}

/// `ΔF_C = ln(1 + 2λ₀²/ω²)/(2β)`.
pub fn classical_free_energy_change(p: &QuenchParams) -> f64 {
    (2.0 * (p.lambda0 / p.omega).powi(2)).ln_1p() / (2.0 * p.beta)
}

pub fn classical_irr_work(p: &QuenchParams) -> f64 {
    classical_avg_work(p) - classical_free_energy_change(p)
}

/// `ln Z_Q(λ)`; finite even where `Z_Q` itself underflows.
pub fn ln_quantum_partition(p: &QuenchParams, lambda: f64) -> f64 {
    let (w1, w2) = normal_mode_frequencies(p.omega, lambda);
    let half = 0.5 * p.beta * p.hbar;
    -2.0 * LN_2 - ln_sinh(half * w1) - ln_sinh(half * w2)
}

/// `Z_Q(λ) = ¼ csch(βℏω₁/2) csch(βℏω₂/2)`.
pub fn quantum_partition(p: &QuenchParams, lambda: f64) -> f64 {
    ln_quantum_partition(p, lambda).exp()
}

/// `⟨W_Q⟩ = (ℏλ₀²/2ω) coth(βℏω/2)`.
pub fn quantum_avg_work(p: &QuenchParams) -> f64 {
    p.hbar * p.lambda0 * p.lambda0 / (2.0 * p.omega) / (0.5 * p.x()).tanh()
}

/// `ΔF_Q = (1/β) ln[sinh(βℏω₂/2) / sinh(βℏω/2)]` (the `ω₁ = ω` factor cancels).
pub fn quantum_free_energy_change(p: &QuenchParams) -> f64 {
    let (_, w2) = normal_mode_frequencies(p.omega, p.lambda0);
    let half = 0.5 * p.beta * p.hbar;
    (ln_sinh(half * w2) - ln_sinh(half * p.omega)) / p.beta
}

pub fn quantum_irr_work(p: &QuenchParams) -> f64 {
    quantum_avg_work(p) - quantum_free_energy_change(p)
}

/// `Ω = ⟨W_Q^irr⟩ − ⟨W_C^irr⟩`.
pub fn excess_dissipated_work(p: &QuenchParams) -> f64 {
    quantum_irr_work(p) - classical_irr_work(p)
}

/// `Ω` written out in one expression, with the unsimplified `ω₁(λ₀)` term.
pub fn excess_dissipated_work_direct(p: &QuenchParams) -> f64 {
    let x = p.x();
    let (w1, w2) = normal_mode_frequencies(p.omega, p.lambda0);
    let half = 0.5 * p.beta * p.hbar;
    let ln_csch_ratio = -ln_sinh(half * w1) - ln_sinh(half * w2) + 2.0 * ln_sinh(half * p.omega);
    p.hbar * p.lambda0 * p.lambda0 / (2.0 * p.omega) * (1.0 / (0.5 * x).tanh() - 2.0 / x)
        + ln_csch_ratio / p.beta
        + (2.0 * (p.lambda0 / p.omega).powi(2)).ln_1p() / (2.0 * p.beta)
}

/// Gaussian discord (mode 1 measured) of the thermal product state evolved
/// for time `t` under `H(λ₀)`.
pub fn quench_discord(p: &QuenchParams, t: f64) -> Result<f64> {
    let thermal = thermal_product(p.beta, p.omega, p.hbar)?;
    let h = quench_hamiltonian_matrix(p.omega, p.lambda0, p.mass, p.hbar)?;
    gaussian_discord(&symplectic_evolution(&thermal, &h, t), Mode::One)
}

/// All report fields at the parameters' temperature.
pub fn quench_report(p: &QuenchParams, t: f64) -> Result<QuenchReport> {
    let w_c_avg = classical_avg_work(p);
    let df_c = classical_free_energy_change(p);
    let w_q_avg = quantum_avg_work(p);
    let df_q = quantum_free_energy_change(p);
    let w_c_irr = w_c_avg - df_c;
    let w_q_irr = w_q_avg - df_q;
    Ok(QuenchReport {
        temperature: p.temperature(),
        w_c_avg,
        df_c,
        w_c_irr,
        w_q_avg,
        df_q,
        w_q_irr,
        omega_excess: w_q_irr - w_c_irr,
        gaussian_discord: quench_discord(p, t)?,
    })
}

/// `T_k = t_min + (t_max − t_min)·k/(points − 1)`.
pub fn temperature_grid(t_min: f64, t_max: f64, points: usize) -> Result<Vec<f64>> {
    positive("t_min", t_min)?;
    if !(t_max > t_min) || !t_max.is_finite() {
        return Err(Error::InvalidParameter {
            name: "t_max",
            value: t_max,
            reason: "must exceed t_min",
        });
    }
    if points < 2 {
        return Err(Error::InvalidParameter {
            name: "points",
            value: points as f64,
            reason: "need at least two points",
        });
    }
    let span = t_max - t_min;
    Ok((0..points)
        .map(|k| t_min + span * (k as f64 / (points - 1) as f64))
        .collect())
}

/// Reports on a uniform temperature grid. Each point depends only on its own
/// temperature, so refining the grid leaves shared points bit-identical.
pub fn sweep_temperature(
    p: &QuenchParams,
    t_min: f64,
    t_max: f64,
    points: usize,
    t: f64,
) -> Result<Vec<QuenchReport>> {
    temperature_grid(t_min, t_max, points)?
        .into_par_iter()
        .map(|temp| quench_report(&p.with_temperature(temp)?, t))
        .collect()
}

/// Sample mean with its standard error.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct McEstimate {
    pub mean: f64,
    pub std_error: f64,
    pub samples: usize,
}

/// `⟨W_C⟩` by exact sampling of the initial Gibbs state. Positions are
/// independent normals of variance `1/(βmω²)`; the work does not involve the
/// momenta, which factor out of the Gibbs weight.
pub fn monte_carlo_classical_work(p: &QuenchParams, samples: usize, seed: u64) -> Result<McEstimate> {
    if samples < 2 {
        return Err(Error::InvalidParameter {
            name: "samples",
            value: samples as f64,
            reason: "need at least two samples",
        });
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let sd = (1.0 / (p.beta * p.mass * p.omega * p.omega)).sqrt();
    let k = 0.5 * p.mass * p.lambda0 * p.lambda0;
    // Welford
    let mut mean = 0.0;
    let mut m2 = 0.0;
    for i in 0..samples {
        let q1: f64 = StandardNormal.sample(&mut rng);
        let q2: f64 = StandardNormal.sample(&mut rng);
        let w = k * (sd * (q1 - q2)).powi(2);
        let delta = w - mean;
        mean += delta / (i + 1) as f64;
        m2 += delta * (w - mean);
    }
    let var = m2 / (samples - 1) as f64;
    Ok(McEstimate {
        mean,
        std_error: (var / samples as f64).sqrt(),
        samples,
    })
}

/// Smallest `N` with thermal tail `Σ_{n>N} p_n = e^{−x(N+1)}` below `tol`.
pub fn fock_cutoff(x: f64, tol: f64) -> usize {
    let mut n = 0;
    while (-x * (n + 1) as f64).exp() >= tol {
        n += 1;
    }
    n
}

/// Truncated Fock-basis values of `Z_Q(0)`, `Z_Q(λ₀)` and `Tr[ρ_G W_Q]`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct FockTrace {
    pub partition_initial: f64,
    pub partition_final: f64,
    pub average_work: f64,
    /// Highest occupation kept in each mode.
    pub cutoff: usize,
}

/// Evaluates the traces in a two-mode Fock basis truncated at a common
/// cutoff chosen so that every mode's thermal tail is below `tail`.
///
/// `Z_Q(λ₀)` sums `e^{−βE}` over the normal-mode spectrum. The work uses
/// `W = (m λ₀²/2)(q₁ − q₂)²` with `q = √(ℏ/2mω)(a + a†)` built as explicit
/// ladder matrices, one level larger than the cutoff so that the kept
/// diagonal of `x²` is exact.
pub fn fock_oracle(p: &QuenchParams, tail: f64) -> FockTrace {
    let (w1, w2) = normal_mode_frequencies(p.omega, p.lambda0);
    let bh = p.beta * p.hbar;
    let cutoff = [p.omega, w1, w2]
        .iter()
        .map(|w| fock_cutoff(bh * w, tail))
        .max()
        .unwrap_or(0);
    let levels = cutoff + 1;

    let boltz = |w: f64| -> Vec<f64> { (0..levels).map(|n| (-bh * w * (n as f64 + 0.5)).exp()).collect() };
    let (b0, b1, b2) = (boltz(p.omega), boltz(w1), boltz(w2));
    let mut z_initial = 0.0;
    let mut z_final = 0.0;
    for i in 0..levels {
        for j in 0..levels {
            z_initial += b0[i] * b0[j];
            z_final += b1[i] * b2[j];
        }
    }

    let size = levels + 1;
    let a = DMatrix::from_fn(size, size, |r, c| if c == r + 1 { (c as f64).sqrt() } else { 0.0 });
    let x = &a + a.transpose();
    let x2 = &x * &x;
    let scale = p.hbar / (2.0 * p.mass * p.omega) * 0.5 * p.mass * p.lambda0 * p.lambda0;
    let mut work = 0.0;
    for i in 0..levels {
        for j in 0..levels {
            // diagonal of (x⊗1 − 1⊗x)² in |i, j⟩
            let w_diag = x2[(i, i)] + x2[(j, j)] - 2.0 * x[(i, i)] * x[(j, j)];
            work += b0[i] * b0[j] * scale * w_diag;
        }
    }

    FockTrace {
        partition_initial: z_initial,
        partition_final: z_final,
        average_work: work / z_initial,
        cutoff,
    }
}

/// Gauss–Hermite nodes and weights for `∫ e^{−x²} f(x) dx` (Golub–Welsch).
pub fn gauss_hermite(n: usize) -> (Vec<f64>, Vec<f64>) {
    let jacobi = DMatrix::from_fn(n, n, |r, c| {
        if r + 1 == c || c + 1 == r {
            (r.max(c) as f64 / 2.0).sqrt()
        } else {
            0.0
        }
    });
    let eig = SymmetricEigen::new(jacobi);
    let mut pairs: Vec<(f64, f64)> = (0..n)
        .map(|k| (eig.eigenvalues[k], PI.sqrt() * eig.eigenvectors[(0, k)].powi(2)))
        .collect();
    pairs.sort_by(|a, b| a.0.total_cmp(&b.0));
    pairs.into_iter().unzip()
}

/// `Z_C(λ) = h⁻² ∫ dq dp e^{−βH(λ)}` by `nodes`-point Gauss–Hermite
/// quadrature in each of the four phase-space directions.
pub fn classical_partition_quadrature(p: &QuenchParams, lambda: f64, nodes: usize) -> f64 {
    let (x, w) = gauss_hermite(nodes);
    // q = x √(2/(βmω²)), p = y √(2m/β) maps e^{−βH(0)} onto e^{−|x|²−|y|²}
    let jacobian = 4.0 / (p.beta * p.omega).powi(2);
    let r = (lambda / p.omega).powi(2);
    let mut total = 0.0;
    for i in 0..nodes {
        for j in 0..nodes {
            let coupling = (-r * (x[i] - x[j]).powi(2)).exp();
            for k in 0..nodes {
                for l in 0..nodes {
                    total += w[i] * w[j] * w[k] * w[l] * coupling;
                }
            }
        }
    }
    jacobian * total / (p.h_ref * p.h_ref)
}
