//! Gaussian discord of two-mode states.
//!
//! [`gaussian_discord`] evaluates the closed-form optimum over Gaussian
//! measurements from the four local symplectic invariants. That closed form
//! is usually written with vacuum variance 1; here it is applied to `2σ` so
//! the rest of the crate can keep the vacuum at `I/2`.
//!
//! [`minimize_gaussian_measurement`] reaches the same number by brute force:
//! it searches pure single-mode Gaussian measurements and computes the
//! conditional state by a Schur complement. The two routes share nothing
//! beyond the entropy function.

use std::f64::consts::PI;

use nalgebra::{Matrix2, Vector2};

use super::{gaussian_entropy, mode_entropy, single_mode_entropy, CovarianceMatrix, Mode};
use crate::error::{Error, Result};
use crate::optim::NelderMead;

const CLAMP: f64 = 1e-9;

/// `f(x)` for vacuum-variance-1 symplectic eigenvalues.
fn entropy_unit_vacuum(x: f64) -> f64 {
    mode_entropy(0.5 * x)
}

/// Discord when the given mode is measured with the best Gaussian measurement.
pub fn gaussian_discord(cm: &CovarianceMatrix, measured: Mode) -> Result<f64> {
    if cm.cross_block().iter().all(|x| *x == 0.0) {
        return Ok(0.0);
    }
    let total = gaussian_entropy(cm)?;
    let cm = match measured {
        Mode::Two => *cm,
        Mode::One => cm.swapped(),
    };
    // mode 2 is measured from here on
    let (a, b, c, d) = cm.invariants();
    let (a, b, c, d) = (4.0 * a, 4.0 * b, 4.0 * c, 16.0 * d);

    let e_min = if b - 1.0 < 1e-12 {
        // pure measured mode: nothing to learn about mode 1
        a
    } else if (d - a * b).powi(2) <= (1.0 + b) * c * c * (a + d) {
        let core = c * c + (b - 1.0) * (d - a);
        (2.0 * c * c + (b - 1.0) * (d - a) + 2.0 * c.abs() * core.max(0.0).sqrt()) / (b - 1.0).powi(2)
    } else {
        let root = (c.powi(4) + (d - a * b).powi(2) - 2.0 * c * c * (a * b + d)).max(0.0).sqrt();
        (a * b - c * c + d - root) / (2.0 * b)
    };

    let value = entropy_unit_vacuum(b.sqrt()) - total + entropy_unit_vacuum(e_min.max(1.0).sqrt());
    clamp(value)
}

fn clamp(value: f64) -> Result<f64> {
    if value < -CLAMP {
        return Err(Error::Consistency(format!("negative Gaussian discord {value}")));
    }
    Ok(value.max(0.0))
}

/// A pure single-mode Gaussian measurement.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GaussianMeasurement {
    /// Seed covariance `R(φ) diag(s/2, 1/(2s)) R(φ)ᵀ`.
    General { squeezing: f64, angle: f64 },
    /// The `s → 0` limit: sharp measurement of the quadrature along `angle`.
    Homodyne { angle: f64 },
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OracleMinimum {
    pub discord: f64,
    /// Best value found on the coarse grid before refinement.
    pub grid_discord: f64,
    pub measurement: GaussianMeasurement,
    pub evaluations: usize,
}

struct Blocks {
    measured: Matrix2<f64>,
    other: Matrix2<f64>,
    // rows: unmeasured mode, columns: measured mode
    cross: Matrix2<f64>,
}

impl Blocks {
    fn new(cm: &CovarianceMatrix, measured: Mode) -> Self {
        match measured {
            Mode::One => Self {
                measured: cm.local_block(Mode::One),
                other: cm.local_block(Mode::Two),
                cross: cm.cross_block().transpose(),
            },
            Mode::Two => Self {
                measured: cm.local_block(Mode::Two),
                other: cm.local_block(Mode::One),
                cross: cm.cross_block(),
            },
        }
    }

    /// Entropy of the unmeasured mode after the measurement (outcome
    /// independent for Gaussian measurements).
    fn conditional_entropy(&self, m: GaussianMeasurement) -> f64 {
        let cond = match m {
            GaussianMeasurement::General { squeezing, angle } => {
                let (s, c) = angle.sin_cos();
                let rot = Matrix2::new(c, -s, s, c);
                let b = rot.transpose() * self.measured * rot;
                let g = self.cross * rot;
                // (b + diag(s/2, 1/(2s)))⁻¹ with numerator and denominator
                // scaled so neither blows up as s → 0 or s → ∞
                let (adj, det) = if squeezing <= 1.0 {
                    let k = 2.0 * squeezing;
                    let adj = Matrix2::new(k * b[(1, 1)] + 1.0, -k * b[(0, 1)], -k * b[(1, 0)], k * b[(0, 0)] + k * k / 4.0);
                    (adj, k * b.determinant() + k * k / 4.0 * b[(1, 1)] + b[(0, 0)] + k / 4.0)
                } else {
                    let k = 2.0 / squeezing;
                    let adj = Matrix2::new(k * b[(1, 1)] + k * k / 4.0, -k * b[(0, 1)], -k * b[(1, 0)], k * b[(0, 0)] + 1.0);
                    (adj, k * b.determinant() + k * k / 4.0 * b[(0, 0)] + b[(1, 1)] + k / 4.0)
                };
                self.other - g * adj * g.transpose() / det
            }
            GaussianMeasurement::Homodyne { angle } => {
                let e = Vector2::new(angle.cos(), angle.sin());
                let ce = self.cross * e;
                self.other - ce * ce.transpose() / (e.transpose() * self.measured * e)[(0, 0)]
            }
        };
        single_mode_entropy(&cond)
    }
}

const LOG_S_GRID: usize = 41;
const ANGLE_GRID: usize = 48;
const HOMODYNE_GRID: usize = 96;
/// Refinement may leave the `[1e-3, 1e3]` grid box up to `|ln s| = 25`.
const LOG_S_LIMIT: f64 = 25.0;

/// Brute-force Gaussian discord: minimize the conditional entropy of the
/// unmeasured mode over pure Gaussian measurements on `measured`, then
/// assemble `I − J`.
pub fn minimize_gaussian_measurement(cm: &CovarianceMatrix, measured: Mode) -> Result<OracleMinimum> {
    let total = gaussian_entropy(cm)?;
    let blocks = Blocks::new(cm, measured);
    let s_measured = single_mode_entropy(&blocks.measured);
    let s_other = single_mode_entropy(&blocks.other);
    let mutual = s_measured + s_other - total;
    let assemble = |cond: f64| mutual - (s_other - cond);

    let general = |x: &[f64]| GaussianMeasurement::General {
        squeezing: x[0].clamp(-LOG_S_LIMIT, LOG_S_LIMIT).exp(),
        angle: x[1],
    };
    let mut evaluations = 0;

    let lo = 1e-3f64.ln();
    let hi = 1e3f64.ln();
    let mut best_general = (f64::INFINITY, [0.0, 0.0]);
    for i in 0..LOG_S_GRID {
        let u = lo + (hi - lo) * i as f64 / (LOG_S_GRID - 1) as f64;
        for j in 0..ANGLE_GRID {
            let phi = PI * j as f64 / ANGLE_GRID as f64;
            let v = blocks.conditional_entropy(general(&[u, phi]));
            evaluations += 1;
            if v < best_general.0 {
                best_general = (v, [u, phi]);
            }
        }
    }
    let mut best_homodyne = (f64::INFINITY, 0.0);
    for j in 0..HOMODYNE_GRID {
        let phi = PI * j as f64 / HOMODYNE_GRID as f64;
        let v = blocks.conditional_entropy(GaussianMeasurement::Homodyne { angle: phi });
        evaluations += 1;
        if v < best_homodyne.0 {
            best_homodyne = (v, phi);
        }
    }
    let grid_cond = best_general.0.min(best_homodyne.0);

    let nm = NelderMead {
        step: 0.1,
        xtol: 1e-10,
        ftol: 1e-15,
        max_evals: 5000,
    };
    let g = nm.minimize(|x| blocks.conditional_entropy(general(x)), &best_general.1);
    let h = nm.minimize(
        |x| blocks.conditional_entropy(GaussianMeasurement::Homodyne { angle: x[0] }),
        &[best_homodyne.1],
    );
    evaluations += g.evaluations + h.evaluations;

    let mut candidates = [
        (best_general.0, general(&best_general.1)),
        (best_homodyne.0, GaussianMeasurement::Homodyne { angle: best_homodyne.1 }),
        (g.value, general(&g.x)),
        (h.value, GaussianMeasurement::Homodyne { angle: h.x[0] }),
    ];
    candidates.sort_by(|a, b| a.0.total_cmp(&b.0));
    let (cond, measurement) = candidates[0];

    Ok(OracleMinimum {
        discord: clamp(assemble(cond))?,
        grid_discord: clamp(assemble(grid_cond))?,
        measurement,
        evaluations,
    })
}
