//! Derivative-free local minimization (Nelder–Mead) used to refine grid
//! searches in the discord modules.

#[derive(Debug, Clone, Copy)]
pub struct NelderMead {
    /// Initial simplex edge length along each axis.
    pub step: f64,
    /// Stop once every vertex is within this distance of the best one...
    pub xtol: f64,
    /// ...and the vertex values differ by at most this much.
    pub ftol: f64,
    pub max_evals: usize,
}

impl Default for NelderMead {
    fn default() -> Self {
        Self {
            step: 0.05,
            xtol: 1e-7,
            ftol: 1e-12,
            max_evals: 5000,
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct Minimum {
    pub x: Vec<f64>,
    pub value: f64,
    pub evaluations: usize,
    pub converged: bool,
}

impl NelderMead {
    pub fn minimize<F>(&self, f: F, start: &[f64]) -> Minimum
    where
        F: Fn(&[f64]) -> f64,
    {
        let n = start.len();
        let evals = std::cell::Cell::new(0usize);
        let eval = |x: &[f64]| {
            evals.set(evals.get() + 1);
            f(x)
        };

        let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
        simplex.push((start.to_vec(), eval(start)));
        for i in 0..n {
            let mut v = start.to_vec();
            v[i] += self.step;
            let fv = eval(&v);
            simplex.push((v, fv));
        }

        let mut converged = false;
        while evals.get() < self.max_evals {
            simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
            let best = &simplex[0];
            let spread = simplex[n].1 - best.1;
            let size = simplex[1..]
                .iter()
                .map(|(v, _)| dist_inf(v, &best.0))
                .fold(0.0, f64::max);
            if size <= self.xtol && spread <= self.ftol {
                converged = true;
                break;
            }

            let centroid: Vec<f64> = (0..n)
                .map(|k| simplex[..n].iter().map(|(v, _)| v[k]).sum::<f64>() / n as f64)
                .collect();
            let worst = simplex[n].clone();
            let along = |t: f64| -> Vec<f64> {
                centroid
                    .iter()
                    .zip(&worst.0)
                    .map(|(c, w)| c + t * (c - w))
                    .collect()
            };

            let xr = along(1.0);
            let fr = eval(&xr);
            if fr < simplex[0].1 {
                let xe = along(2.0);
                let fe = eval(&xe);
                simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
                continue;
            }
            if fr < simplex[n - 1].1 {
                simplex[n] = (xr, fr);
                continue;
            }
            let (xc, fc) = if fr < worst.1 {
                let x = along(0.5);
                let fx = eval(&x);
                (x, fx)
            } else {
                let x = along(-0.5);
                let fx = eval(&x);
                (x, fx)
            };
            if fc < worst.1.min(fr) {
                simplex[n] = (xc, fc);
                continue;
            }
            // shrink toward the best vertex
            let best = simplex[0].0.clone();
            for vertex in simplex.iter_mut().skip(1) {
                let v: Vec<f64> = best
                    .iter()
                    .zip(&vertex.0)
                    .map(|(b, x)| b + 0.5 * (x - b))
                    .collect();
                let fv = eval(&v);
                *vertex = (v, fv);
            }
        }
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (x, value) = simplex.swap_remove(0);
        Minimum {
            x,
            value,
            evaluations: evals.get(),
            converged,
        }
    }
}

fn dist_inf(a: &[f64], b: &[f64]) -> f64 {
    a.iter()
        .zip(b)
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max)
}
