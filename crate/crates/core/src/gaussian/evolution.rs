//! Quadratic Hamiltonians and the symplectic propagators they generate.
//!
//! For `H = ½ rᵀ G r` the Heisenberg equations give `ṙ = Ω G r / ℏ`, so a
//! covariance matrix evolves as `σ(t) = S σ Sᵀ` with `S = exp(Ω G t / ℏ)`.

use nalgebra::{Matrix2, Matrix4};

use super::CovarianceMatrix;
use crate::error::{Error, Result};

/// `Ω = ⊕ [[0, 1], [−1, 0]]` in `(x₁, p₁, x₂, p₂)` order.
pub fn symplectic_form() -> Matrix4<f64> {
    let j = Matrix2::new(0.0, 1.0, -1.0, 0.0);
    let mut w = Matrix4::zeros();
    w.fixed_view_mut::<2, 2>(0, 0).copy_from(&j);
    w.fixed_view_mut::<2, 2>(2, 2).copy_from(&j);
    w
}

/// `H = ½ rᵀ G r` (up to a constant) in dimensionless quadratures.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct QuadraticHamiltonian {
    g: Matrix4<f64>,
    hbar: f64,
}

impl QuadraticHamiltonian {
    pub fn new(g: Matrix4<f64>, hbar: f64) -> Result<Self> {
        let dev = (g - g.transpose()).amax();
        if dev > 1e-12 {
            return Err(Error::NotSymmetric(dev));
        }
        if !(hbar > 0.0) {
            return Err(Error::InvalidParameter {
                name: "hbar",
                value: hbar,
                reason: "must be positive",
            });
        }
        Ok(Self { g, hbar })
    }

    /// Two oscillators of frequency `ω` coupled through `(m λ²/2)(q₁ − q₂)²`,
    /// written in quadratures made dimensionless at `ω`:
    /// `G = ℏω [x-block [[1+r, −r], [−r, 1+r]], p-block I]` with `r = λ²/ω²`.
    ///
    /// The mass drops out once the quadratures are scaled; it is accepted so
    /// callers can pass physical parameters unchanged.
    pub fn coupled_oscillators(omega: f64, lambda: f64, mass: f64, hbar: f64) -> Result<Self> {
        for (name, value) in [("omega", omega), ("mass", mass), ("hbar", hbar)] {
            if !(value > 0.0) || !value.is_finite() {
                return Err(Error::InvalidParameter {
                    name,
                    value,
                    reason: "must be positive",
                });
            }
        }
        if !(lambda >= 0.0) || !lambda.is_finite() {
            return Err(Error::InvalidParameter {
                name: "lambda",
                value: lambda,
                reason: "must be non-negative",
            });
        }
        let r = (lambda / omega).powi(2);
        let e = hbar * omega;
        let mut g = Matrix4::zeros();
        g[(0, 0)] = e * (1.0 + r);
        g[(2, 2)] = e * (1.0 + r);
        g[(0, 2)] = -e * r;
        g[(2, 0)] = -e * r;
        g[(1, 1)] = e;
        g[(3, 3)] = e;
        Ok(Self { g, hbar })
    }

    pub fn matrix(&self) -> &Matrix4<f64> {
        &self.g
    }

    pub fn hbar(&self) -> f64 {
        self.hbar
    }

    /// Generator `Ω G / ℏ` of the Heisenberg flow.
    pub fn generator(&self) -> Matrix4<f64> {
        symplectic_form() * self.g / self.hbar
    }

    /// `S(t) = exp(Ω G t / ℏ)`.
    pub fn propagator(&self, t: f64) -> Matrix4<f64> {
        expm(&(self.generator() * t))
    }

    /// Normal-mode angular frequencies, ascending. These are the symplectic
    /// eigenvalues of `G` divided by `ℏ`.
    pub fn normal_mode_frequencies(&self) -> (f64, f64) {
        let cm = CovarianceMatrix::from_valid(self.g);
        let (lo, hi) = cm.symplectic_spectrum();
        (lo / self.hbar, hi / self.hbar)
    }
}

/// `σ(t) = S σ Sᵀ` under `h` for time `t`.
pub fn symplectic_evolution(cm: &CovarianceMatrix, h: &QuadraticHamiltonian, t: f64) -> CovarianceMatrix {
    let s = h.propagator(t);
    CovarianceMatrix::from_valid(s * cm.matrix() * s.transpose())
}

/// Closed-form propagator of [`QuadraticHamiltonian::coupled_oscillators`]:
/// rotate to the centre-of-mass and relative modes (frequencies `ω` and
/// `√(ω² + 2λ²)`), rotate each harmonically, and rotate back.
pub fn normal_mode_propagator(omega: f64, lambda: f64, t: f64) -> Matrix4<f64> {
    let mode = |freq: f64| {
        let a = freq / omega;
        let (s, c) = (freq * t).sin_cos();
        Matrix2::new(c, s / a, -a * s, c)
    };
    let plus = mode(omega);
    let minus = mode((omega * omega + 2.0 * lambda * lambda).sqrt());
    let mut diag = Matrix4::zeros();
    diag.fixed_view_mut::<2, 2>(0, 0).copy_from(&plus);
    diag.fixed_view_mut::<2, 2>(2, 2).copy_from(&minus);
    // 50:50 beam splitter: (x₊, p₊, x₋, p₋) = ((x₁+x₂)/√2, (p₁+p₂)/√2, (x₁−x₂)/√2, (p₁−p₂)/√2)
    let h = std::f64::consts::FRAC_1_SQRT_2;
    let bs = Matrix4::new(
        h, 0.0, h, 0.0, //
        0.0, h, 0.0, h, //
        h, 0.0, -h, 0.0, //
        0.0, h, 0.0, -h,
    );
    bs.transpose() * diag * bs
}

const PADE13: [f64; 14] = [
    64_764_752_532_480_000.0,
    32_382_376_266_240_000.0,
    7_771_770_303_897_600.0,
    1_187_353_796_428_800.0,
    129_060_195_264_000.0,
    10_559_470_521_600.0,
    670_442_572_800.0,
    33_522_128_640.0,
    1_323_241_920.0,
    40_840_800.0,
    960_960.0,
    16_380.0,
    182.0,
    1.0,
];

const THETA13: f64 = 5.371_920_351_148_152;

/// Matrix exponential by scaling and squaring with the degree-13 Padé
/// approximant.
pub fn expm(a: &Matrix4<f64>) -> Matrix4<f64> {
    let norm = (0..4)
        .map(|j| a.column(j).iter().map(|x| x.abs()).sum::<f64>())
        .fold(0.0, f64::max);
    let squarings = if norm > THETA13 {
        (norm / THETA13).log2().ceil() as i32
    } else {
        0
    };
    let a = a / 2f64.powi(squarings);
    let b = &PADE13;
    let id = Matrix4::identity();
    let a2 = a * a;
    let a4 = a2 * a2;
    let a6 = a4 * a2;
    let u = a * (a6 * (a6 * b[13] + a4 * b[11] + a2 * b[9]) + a6 * b[7] + a4 * b[5] + a2 * b[3] + id * b[1]);
    let v = a6 * (a6 * b[12] + a4 * b[10] + a2 * b[8]) + a6 * b[6] + a4 * b[4] + a2 * b[2] + id * b[0];
    let mut r = (v - u)
        .lu()
        .solve(&(v + u))
        .expect("Padé denominator is nonsingular after scaling");
    for _ in 0..squarings {
        r = r * r;
    }
    r
}
