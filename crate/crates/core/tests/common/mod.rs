#![allow(dead_code)]

use qcorr::linalg::{c, kron, random_unitary, CMatrix};
use qcorr::prob::JointDistribution;
use qcorr::qstate::{random_density_matrix_with, DensityMatrix};
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use rand::SeedableRng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random weights in `[0, 1)`, with roughly one entry in five set to zero.
fn sparse_weights<R: Rng>(rng: &mut R, n: usize) -> Vec<f64> {
    let mut w: Vec<f64> = (0..n)
        .map(|_| if rng.random::<f64>() < 0.2 { 0.0 } else { rng.random::<f64>() })
        .collect();
    if w.iter().all(|x| *x == 0.0) {
        w[0] = 1.0;
    }
    w
}

fn normalize(w: Vec<f64>) -> Vec<f64> {
    let s: f64 = w.iter().sum();
    w.into_iter().map(|x| x / s).collect()
}

/// Random joint table with up to `max` rows and columns.
pub fn random_joint<R: Rng>(rng: &mut R, max: usize) -> JointDistribution {
    let rows = rng.random_range(1..=max);
    let cols = rng.random_range(1..=max);
    let table = normalize(sparse_weights(rng, rows * cols));
    JointDistribution::from_row_major(rows, cols, table).unwrap()
}

/// Column-stochastic `out × n` matrix as rows `T[y'][y]`.
pub fn random_channel<R: Rng>(rng: &mut R, n: usize, out: usize) -> Vec<Vec<f64>> {
    let cols: Vec<Vec<f64>> = (0..n).map(|_| normalize(sparse_weights(rng, out))).collect();
    (0..out).map(|k| cols.iter().map(|col| col[k]).collect()).collect()
}

/// Random bipartite state with subsystem dimensions in `2..=3` and random rank.
pub fn random_state<R: Rng>(rng: &mut R) -> DensityMatrix {
    let dims = (rng.random_range(2..=3), rng.random_range(2..=3));
    let rank = rng.random_range(1..=dims.0 * dims.1);
    random_density_matrix_with(dims, rank, rng).unwrap()
}

pub fn random_two_qubit<R: Rng>(rng: &mut R) -> DensityMatrix {
    let rank = rng.random_range(1..=4);
    random_density_matrix_with((2, 2), rank, rng).unwrap()
}

/// `Σ p_ij |a_i⟩⟨a_i| ⊗ |b_j⟩⟨b_j|` for random orthonormal bases `{a_i}`, `{b_j}`.
pub fn random_classical_state<R: Rng>(rng: &mut R) -> DensityMatrix {
    let p = normalize(sparse_weights(rng, 4));
    let ua = random_unitary(2, rng);
    let ub = random_unitary(2, rng);
    let mut m = CMatrix::zeros(4, 4);
    for i in 0..2 {
        for j in 0..2 {
            let a = ua.column(i) * ua.column(i).adjoint();
            let b = ub.column(j) * ub.column(j).adjoint();
            m += kron(&a, &b) * c(p[2 * i + j], 0.0);
        }
    }
    DensityMatrix::new(m, (2, 2)).unwrap()
}
