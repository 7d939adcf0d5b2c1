//! Fast evaluation of elements of a subspace in coefficient form.

use std::sync::Arc;

use rand::Rng;

use crate::scalar::Scalar;
use crate::space::{AtomSpace, Subspace};

/// A subspace with unit-normalized basis and merged duplicate atoms.
///
/// Coefficients refer to the normalized basis; [`SpanEval::to_original`] maps
/// them back to the caller's basis.
#[derive(Clone, Debug)]
pub struct SpanEval<S: Scalar> {
    space: Arc<AtomSpace>,
    n: usize,
    rows: Vec<S>,
    scales: Vec<f64>,
}

impl<S: Scalar> SpanEval<S> {
    pub fn new(e: &Subspace<S>) -> Self {
        let scales: Vec<f64> = e.basis().iter().map(|b| e.ambient().norm_of(b)).collect();
        let c = e.normalized_basis().compressed();
        let (n, m) = (c.dim(), c.ambient().atom_count());
        let mut rows = Vec::with_capacity(n * m);
        for i in 0..m {
            for b in c.basis() {
                rows.push(b[i]);
            }
        }
        Self { space: c.ambient().clone(), n, rows, scales }
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn atoms(&self) -> usize {
        self.space.atom_count()
    }

    pub fn space(&self) -> &AtomSpace {
        &self.space
    }

    /// Real parameters per coefficient vector.
    pub fn real_dim(&self) -> usize {
        self.n * S::REAL_DIM
    }

    pub fn row(&self, i: usize) -> &[S] {
        &self.rows[i * self.n..(i + 1) * self.n]
    }

    pub fn combine(&self, c: &[S]) -> Vec<S> {
        self.rows.chunks_exact(self.n).map(|r| r.iter().zip(c).fold(S::zero(), |acc, (&x, &a)| acc + x * a)).collect()
    }

    pub fn coeffs(&self, reals: &[f64]) -> Vec<S> {
        reals.chunks_exact(S::REAL_DIM).map(S::from_parts).collect()
    }

    pub fn norm(&self, x: &[S]) -> f64 {
        self.space.norm_of(x)
    }

    /// Normalized element for real parameters, with its coefficients.
    pub fn unit(&self, reals: &[f64]) -> Option<(Vec<S>, Vec<S>)> {
        let c = self.coeffs(reals);
        let x = self.combine(&c);
        let nx = self.norm(&x);
        if !(nx > 0.0 && nx.is_finite()) {
            return None;
        }
        let s = S::from_re(1.0 / nx);
        Some((x.into_iter().map(|v| v * s).collect(), c.into_iter().map(|v| v * s).collect()))
    }

    pub fn random_reals<R: Rng + ?Sized>(&self, rng: &mut R) -> Vec<f64> {
        (0..self.n).flat_map(|_| S::gaussian(rng).to_parts()).collect()
    }

    /// Coefficients with respect to the original basis.
    pub fn to_original(&self, c: &[S]) -> Vec<S> {
        c.iter().zip(&self.scales).map(|(&a, &s)| a.scale(1.0 / s)).collect()
    }

    /// Coefficients as JSON-friendly parts in the original basis.
    pub fn export(&self, c: &[S]) -> Vec<Vec<f64>> {
        self.to_original(c).into_iter().map(|z| z.to_parts()).collect()
    }

    /// Real parameters of the unit coordinate vector `e_k`.
    pub fn basis_reals(&self, k: usize) -> Vec<f64> {
        let mut r = vec![0.0; self.real_dim()];
        r[k * S::REAL_DIM] = 1.0;
        r
    }
}

/// Phase distance over modulus gap, `None` when both vanish.
pub fn spr_ratio<S: Scalar>(space: &AtomSpace, f: &[S], g: &[S]) -> Option<f64> {
    let scale = space.norm_of(f) + space.norm_of(g);
    let gap = space.gap_norm_of(f, g);
    let (pd, _) = space.phase_distance_of(f, g);
    if gap <= 10.0 * f64::EPSILON * scale {
        if pd <= 1e-12 * scale {
            None
        } else {
            Some(f64::INFINITY)
        }
    } else {
        Some(pd / gap)
    }
}

/// `(u + v, u − v)`.
pub fn sum_diff<S: Scalar>(u: &[S], v: &[S]) -> (Vec<S>, Vec<S>) {
    (u.iter().zip(v).map(|(&a, &b)| a + b).collect(), u.iter().zip(v).map(|(&a, &b)| a - b).collect())
}
