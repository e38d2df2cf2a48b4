//! Small dense complex linear algebra shared by the quantum modules.
//!
//! Everything here works on `nalgebra::DMatrix<Complex64>`. Matrices in this
//! crate are tiny (at most a few dozen rows), so clarity wins over blocking.

use nalgebra::DMatrix;
use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;

pub type CMatrix = DMatrix<Complex64>;

pub const ZERO: Complex64 = Complex64::new(0.0, 0.0);
pub const ONE: Complex64 = Complex64::new(1.0, 0.0);

pub fn c(re: f64, im: f64) -> Complex64 {
    Complex64::new(re, im)
}

pub fn identity(n: usize) -> CMatrix {
    CMatrix::identity(n, n)
}

pub fn dagger(m: &CMatrix) -> CMatrix {
    m.adjoint()
}

pub fn kron(a: &CMatrix, b: &CMatrix) -> CMatrix {
    a.kronecker(b)
}

pub fn trace(m: &CMatrix) -> Complex64 {
    m.trace()
}

/// Largest entrywise deviation `|m_ij - conj(m_ji)|`.
pub fn hermitian_deviation(m: &CMatrix) -> f64 {
    let n = m.nrows();
    let mut worst = 0.0_f64;
    for i in 0..n {
        for j in i..n {
            worst = worst.max((m[(i, j)] - m[(j, i)].conj()).norm());
        }
    }
    worst
}

/// Largest entrywise deviation between two matrices of equal shape.
pub fn max_abs_diff(a: &CMatrix, b: &CMatrix) -> f64 {
    a.iter()
        .zip(b.iter())
        .map(|(x, y)| (x - y).norm())
        .fold(0.0, f64::max)
}

/// Symmetrizes `m` as `(m + m†)/2`, removing round-off anti-Hermitian parts.
pub fn hermitian_part(m: &CMatrix) -> CMatrix {
    (m + m.adjoint()).scale(0.5)
}

/// Spectral decomposition of a Hermitian matrix.
///
/// Eigenvalues come back in ascending order. Each eigenvector is phase-fixed
/// so that its largest-modulus component (first one on ties) is real and
/// positive, which makes the output reproducible for a given input.
pub fn eigh(m: &CMatrix) -> (Vec<f64>, CMatrix) {
    let n = m.nrows();
    let eig = hermitian_part(m).symmetric_eigen();
    let mut order: Vec<usize> = (0..n).collect();
    order.sort_by(|&i, &j| eig.eigenvalues[i].total_cmp(&eig.eigenvalues[j]));

    let values = order.iter().map(|&i| eig.eigenvalues[i]).collect();
    let mut vectors = CMatrix::zeros(n, n);
    for (col, &i) in order.iter().enumerate() {
        let v = eig.eigenvectors.column(i);
        let mut pivot = 0;
        let mut best = -1.0;
        for (k, z) in v.iter().enumerate() {
            if z.norm() > best + 1e-12 {
                best = z.norm();
                pivot = k;
            }
        }
        let phase = v[pivot].conj() / v[pivot].norm();
        for k in 0..n {
            vectors[(k, col)] = v[k] * phase;
        }
    }
    (values, vectors)
}

/// Eigenvalues of a Hermitian matrix in ascending order.
pub fn eigvalsh(m: &CMatrix) -> Vec<f64> {
    if m.nrows() == 2 {
        // closed form keeps the discord inner loop cheap
        let a = m[(0, 0)].re;
        let d = m[(1, 1)].re;
        let b = 0.5 * (m[(0, 1)] + m[(1, 0)].conj());
        let mean = 0.5 * (a + d);
        let half_gap = (0.25 * (a - d) * (a - d) + b.norm_sqr()).sqrt();
        return vec![mean - half_gap, mean + half_gap];
    }
    let mut values: Vec<f64> = hermitian_part(m)
        .symmetric_eigenvalues()
        .iter()
        .copied()
        .collect();
    values.sort_by(f64::total_cmp);
    values
}

/// Applies a real function to a Hermitian matrix through its spectrum.
pub fn map_hermitian(m: &CMatrix, f: impl Fn(f64) -> f64) -> CMatrix {
    let (values, vectors) = eigh(m);
    let n = m.nrows();
    let mut diag = CMatrix::zeros(n, n);
    for (k, &v) in values.iter().enumerate() {
        diag[(k, k)] = c(f(v), 0.0);
    }
    &vectors * diag * vectors.adjoint()
}

/// Haar-random unitary from the QR decomposition of a complex Ginibre matrix,
/// with the diagonal phases of R absorbed into Q.
pub fn random_unitary<R: Rng + ?Sized>(n: usize, rng: &mut R) -> CMatrix {
    let g = CMatrix::from_fn(n, n, |_, _| {
        c(rng.sample(StandardNormal), rng.sample(StandardNormal))
    });
    let qr = g.qr();
    let mut q = qr.q();
    let r = qr.r();
    for j in 0..n {
        let d = r[(j, j)];
        let phase = if d.norm() > 0.0 { d / d.norm() } else { ONE };
        for i in 0..n {
            q[(i, j)] *= phase;
        }
    }
    q
}

/// Pauli matrices and the 2x2 identity.
pub mod pauli {
    use super::{c, CMatrix, ONE, ZERO};

    pub fn i2() -> CMatrix {
        CMatrix::identity(2, 2)
    }

    pub fn x() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[ZERO, ONE, ONE, ZERO])
    }

    pub fn y() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[ZERO, c(0.0, -1.0), c(0.0, 1.0), ZERO])
    }

    pub fn z() -> CMatrix {
        CMatrix::from_row_slice(2, 2, &[ONE, ZERO, ZERO, -ONE])
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn eigh_reconstructs_and_sorts() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let g = CMatrix::from_fn(5, 5, |_, _| {
            c(rng.sample(StandardNormal), rng.sample(StandardNormal))
        });
        let h = hermitian_part(&g);
        let (vals, vecs) = eigh(&h);
        assert!(vals.windows(2).all(|w| w[0] <= w[1]));
        let mut d = CMatrix::zeros(5, 5);
        for (k, v) in vals.iter().enumerate() {
            d[(k, k)] = c(*v, 0.0);
        }
        let back = &vecs * d * vecs.adjoint();
        assert!(max_abs_diff(&back, &h) < 1e-12);
        let fast = eigvalsh(&h);
        for (a, b) in vals.iter().zip(&fast) {
            assert!((a - b).abs() < 1e-12);
        }
    }

    #[test]
    fn eigh_is_deterministic() {
        let h = hermitian_part(&CMatrix::from_fn(4, 4, |i, j| c((i + 2 * j) as f64, (i * j) as f64)));
        let (v1, e1) = eigh(&h);
        let (v2, e2) = eigh(&h);
        assert_eq!(v1, v2);
        assert_eq!(e1, e2);
    }

    #[test]
    fn two_by_two_closed_form() {
        let h = CMatrix::from_row_slice(2, 2, &[c(0.3, 0.0), c(0.1, -0.2), c(0.1, 0.2), c(0.7, 0.0)]);
        let fast = eigvalsh(&h);
        let slow: Vec<f64> = {
            let mut v: Vec<f64> = h.clone().symmetric_eigenvalues().iter().copied().collect();
            v.sort_by(f64::total_cmp);
            v
        };
        assert!((fast[0] - slow[0]).abs() < 1e-14);
        assert!((fast[1] - slow[1]).abs() < 1e-14);
    }

    #[test]
    fn random_unitary_is_unitary() {
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        let u = random_unitary(4, &mut rng);
        assert!(max_abs_diff(&(u.adjoint() * &u), &identity(4)) < 1e-12);
    }
}
