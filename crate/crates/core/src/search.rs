//! Seeded sampling and derivative-free local refinement.

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// Sampling effort of a stochastic search.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Budget {
    /// Random candidates evaluated.
    pub samples: usize,
    /// Best candidates handed to Nelder–Mead.
    pub refine_starts: usize,
    /// Iteration cap per Nelder–Mead run.
    pub refine_iters: usize,
}

impl Default for Budget {
    fn default() -> Self {
        Self { samples: 20_000, refine_starts: 10, refine_iters: 2_000 }
    }
}

impl Budget {
    pub fn with_samples(samples: usize) -> Self {
        Self { samples, ..Self::default() }
    }
}

/// Generator for sample `index`; independent of how samples are scheduled.
pub fn rng_for(seed: u64, index: u64) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(index);
    rng
}

/// Golden-section minimization of a unimodal function on `[a, b]`.
pub fn golden_section<F: Fn(f64) -> f64>(f: F, mut a: f64, mut b: f64, tol: f64) -> (f64, f64) {
    let inv_phi = (5f64.sqrt() - 1.0) / 2.0;
    let mut c = b - inv_phi * (b - a);
    let mut d = a + inv_phi * (b - a);
    let (mut fc, mut fd) = (f(c), f(d));
    while (b - a).abs() > tol {
        if fc <= fd {
            b = d;
            d = c;
            fd = fc;
            c = b - inv_phi * (b - a);
            fc = f(c);
        } else {
            a = c;
            c = d;
            fc = fd;
            d = a + inv_phi * (b - a);
            fd = f(d);
        }
    }
    let x = 0.5 * (a + b);
    let fx = f(x);
    [(x, fx), (c, fc), (d, fd)].into_iter().fold((x, fx), |best, cand| if cand.1 < best.1 { cand } else { best })
}

/// Nelder–Mead minimization from `x0` with initial simplex edge `step`.
///
/// Non-finite objective values are treated as `+inf`.
pub fn nelder_mead<F: Fn(&[f64]) -> f64>(f: F, x0: &[f64], step: f64, max_iter: usize, ftol: f64) -> (Vec<f64>, f64) {
    let n = x0.len();
    let eval = |x: &[f64]| {
        let v = f(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut simplex: Vec<(Vec<f64>, f64)> = Vec::with_capacity(n + 1);
    simplex.push((x0.to_vec(), eval(x0)));
    for i in 0..n {
        let mut x = x0.to_vec();
        x[i] += if x[i].abs() > 1e-12 { step * x[i].abs().max(0.1) } else { step };
        let v = eval(&x);
        simplex.push((x, v));
    }
    let (alpha, gamma, rho, sigma) = (1.0, 2.0, 0.5, 0.5);
    for _ in 0..max_iter {
        simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
        let (lo, hi) = (simplex[0].1, simplex[n].1);
        if hi.is_finite() && (hi - lo).abs() <= ftol * (lo.abs() + ftol) {
            break;
        }
        let mut centroid = vec![0.0; n];
        for (x, _) in &simplex[..n] {
            for (c, xi) in centroid.iter_mut().zip(x) {
                *c += xi / n as f64;
            }
        }
        let worst = simplex[n].0.clone();
        let along = |t: f64| -> Vec<f64> { centroid.iter().zip(&worst).map(|(c, w)| c + t * (c - w)).collect() };
        let xr = along(alpha);
        let fr = eval(&xr);
        if fr < simplex[0].1 {
            let xe = along(gamma);
            let fe = eval(&xe);
            simplex[n] = if fe < fr { (xe, fe) } else { (xr, fr) };
        } else if fr < simplex[n - 1].1 {
            simplex[n] = (xr, fr);
        } else {
            let (xc, fc) = if fr < simplex[n].1 {
                let x = along(rho);
                let v = eval(&x);
                (x, v)
            } else {
                let x = along(-rho);
                let v = eval(&x);
                (x, v)
            };
            if fc < fr.min(simplex[n].1) {
                simplex[n] = (xc, fc);
            } else {
                let best = simplex[0].0.clone();
                for (x, v) in simplex.iter_mut().skip(1) {
                    for (xi, bi) in x.iter_mut().zip(&best) {
                        *xi = bi + sigma * (*xi - bi);
                    }
                    *v = eval(x);
                }
            }
        }
    }
    simplex.sort_by(|a, b| a.1.total_cmp(&b.1));
    simplex.swap_remove(0)
}

/// Indices of the `k` smallest values, ties broken by index.
pub fn smallest_k(values: &[f64], k: usize) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..values.len()).collect();
    idx.sort_by(|&a, &b| values[a].total_cmp(&values[b]).then(a.cmp(&b)));
    idx.truncate(k);
    idx
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::Rng;

    #[test]
    fn golden_finds_parabola_vertex() {
        let (x, fx) = golden_section(|t| (t - 0.3).powi(2) + 1.0, -2.0, 2.0, 1e-10);
        // Below sqrt(eps) the parabola is flat in floating point.
        assert!((x - 0.3).abs() < 1e-7 && (fx - 1.0).abs() < 1e-14);
    }

    #[test]
    fn nelder_mead_rosenbrock() {
        let f = |x: &[f64]| (1.0 - x[0]).powi(2) + 100.0 * (x[1] - x[0] * x[0]).powi(2);
        let (x, v) = nelder_mead(f, &[-1.2, 1.0], 0.5, 5_000, 1e-16);
        assert!(v < 1e-10 && (x[0] - 1.0).abs() < 1e-4, "{x:?} {v}");
    }

    #[test]
    fn nelder_mead_handles_kinks() {
        let f = |x: &[f64]| (x[0] - 1.0).abs() + 2.0 * (x[1] + 0.5).abs();
        let (_, v) = nelder_mead(f, &[3.0, 3.0], 0.5, 5_000, 1e-14);
        assert!(v < 1e-6, "{v}");
    }

    #[test]
    fn streams_are_reproducible_and_distinct() {
        let a: u64 = rng_for(7, 3).random();
        let b: u64 = rng_for(7, 3).random();
        let c: u64 = rng_for(7, 4).random();
        assert_eq!(a, b);
        assert_ne!(a, c);
    }

    #[test]
    fn smallest_k_breaks_ties_by_index() {
        assert_eq!(smallest_k(&[2.0, 1.0, 1.0, 0.5], 3), vec![3, 1, 2]);
    }
}
