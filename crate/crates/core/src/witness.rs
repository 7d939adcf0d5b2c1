//! Tightening a pair into an almost orthogonal pair through a Hilbert surrogate norm
//! on its 2-dim span.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SprError};
use crate::scalar::{Field, Scalar};
use crate::search::{golden_section, nelder_mead};
use crate::space::{LatticeVector, NormSpec};

/// Boundary samples of the real unit circle.
pub const CIRCLE_POINTS: usize = 3600;
/// Boundary samples per angle of the complex unit sphere (modulo phase).
pub const COMPLEX_SIDE: usize = 60;
const MVEE_TOL: f64 = 1e-9;
const MVEE_ITERS: usize = 100_000;
/// Relative safety slack on the measured distortion.
pub const K_SLACK: f64 = 1e-3;
const CALIBRATION_MARGIN: f64 = 1e-7;
const CUT_ROUNDS: usize = 50;
const CUT_TOL: f64 = 1e-6;
/// Slack allowed on each tightened inequality.
pub const SLACK_TOL: f64 = 1e-8;

/// An inner product on `span{f, g}` in `(f, g)` coordinates:
/// `⟨a, b⟩_H = Σ_ij gram_ij a_i conj(b_j)`.
#[derive(Clone, Debug, PartialEq)]
pub struct HilbertSurrogate<S: Scalar> {
    pub gram: [[S; 2]; 2],
    /// Upper distortion: `‖x‖ <= ‖x‖_H <= k_factor ‖x‖`.
    pub k_factor: f64,
    /// Measured `max ‖x‖_H / ‖x‖` before the safety slack.
    pub measured: f64,
    /// `true` when the ambient norm is already `L_2`.
    pub native: bool,
}

impl<S: Scalar> HilbertSurrogate<S> {
    pub fn inner(&self, a: [S; 2], b: [S; 2]) -> S {
        let mut s = S::zero();
        for i in 0..2 {
            for j in 0..2 {
                s = s + self.gram[i][j] * a[i] * b[j].conj();
            }
        }
        s
    }

    pub fn norm(&self, a: [S; 2]) -> f64 {
        self.inner(a, a).re().max(0.0).sqrt()
    }

    /// Smallest eigenvalue of the (Hermitian) Gram matrix.
    pub fn min_eigenvalue(&self) -> f64 {
        let (a, d) = (self.gram[0][0].re(), self.gram[1][1].re());
        let b = self.gram[0][1].modulus();
        0.5 * (a + d) - (0.25 * (a - d).powi(2) + b * b).sqrt()
    }
}

/// A tightened pair with its distortion factor and the step `R`.
#[derive(Clone, Debug)]
pub struct WitnessPair<S: Scalar> {
    pub f_prime: LatticeVector<S>,
    pub g_prime: LatticeVector<S>,
    pub k_factor: f64,
    pub r_star: f64,
    /// Unimodular alignment applied to `g`.
    pub lambda: S,
    /// Coordinates of `f′` and `g′` in `(f, g)`.
    pub coords: [[S; 2]; 2],
    pub surrogate: HilbertSurrogate<S>,
}

/// Slack of each tightening inequality; nonnegative means it holds.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessSlacks {
    /// `K·pd(f′,g′) − pd(f,g)`.
    pub phase_bound: f64,
    /// `K·pd(f′,g′) − (‖f′‖² + ‖g′‖²)^{1/2}`.
    pub norm_bound: f64,
    /// `‖|f|−|g|‖ − ‖|f′|−|g′|‖`.
    pub modulus_gap: f64,
    /// `|⟨f′,g′⟩_H| / (‖f′‖_H ‖g′‖_H)`.
    pub orthogonality: f64,
}

impl WitnessSlacks {
    pub fn min_slack(&self) -> f64 {
        self.phase_bound.min(self.norm_bound).min(self.modulus_gap)
    }
}

/// JSON form of a tightening result.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct WitnessReport {
    pub field: Field,
    pub f_prime: Vec<Vec<f64>>,
    pub g_prime: Vec<Vec<f64>>,
    pub r_star: f64,
    pub k_factor: f64,
    pub slacks: WitnessSlacks,
}

impl WitnessReport {
    pub fn new<S: Scalar>(w: &WitnessPair<S>, slacks: WitnessSlacks) -> Self {
        let parts = |v: &LatticeVector<S>| v.entries().iter().map(|z| z.to_parts()).collect();
        Self { field: S::FIELD, f_prime: parts(&w.f_prime), g_prime: parts(&w.g_prime), r_star: w.r_star, k_factor: w.k_factor, slacks }
    }
}

fn element<S: Scalar>(f: &LatticeVector<S>, g: &LatticeVector<S>, a: [S; 2]) -> Vec<S> {
    f.entries().iter().zip(g.entries()).map(|(&x, &y)| a[0] * x + a[1] * y).collect()
}

fn l2_gram<S: Scalar>(f: &LatticeVector<S>, g: &LatticeVector<S>) -> [[S; 2]; 2] {
    let w = f.space().weights();
    let v = [f.entries(), g.entries()];
    let mut gram = [[S::zero(); 2]; 2];
    for (a, row) in gram.iter_mut().enumerate() {
        for (b, cell) in row.iter_mut().enumerate() {
            *cell = (0..w.len()).fold(S::zero(), |acc, t| acc + (v[a][t] * v[b][t].conj()).scale(w[t]));
        }
    }
    gram
}

fn independent<S: Scalar>(f: &LatticeVector<S>, g: &LatticeVector<S>) -> Result<()> {
    if **f.space() != **g.space() {
        return Err(SprError::SpaceMismatch("f and g live in different spaces".into()));
    }
    let gram = l2_gram(f, g);
    let (a, d) = (gram[0][0].re(), gram[1][1].re());
    let det = a * d - gram[0][1].modulus().powi(2);
    if !(a > 0.0 && d > 0.0 && det > 1e-12 * a * d) {
        return Err(SprError::DegenerateSpan("f and g are linearly dependent".into()));
    }
    Ok(())
}

fn inv2<S: Scalar>(m: &[[S; 2]; 2]) -> [[S; 2]; 2] {
    let det = (m[0][0] * m[1][1] - m[0][1] * m[1][0]).re();
    let s = 1.0 / det;
    [[m[1][1].scale(s), (-m[0][1]).scale(s)], [(-m[1][0]).scale(s), m[0][0].scale(s)]]
}

/// `p* A p` for a Hermitian `A`.
fn quad<S: Scalar>(a: &[[S; 2]; 2], p: &[S; 2]) -> f64 {
    let mut s = S::zero();
    for i in 0..2 {
        for j in 0..2 {
            s = s + p[i].conj() * a[i][j] * p[j];
        }
    }
    s.re()
}

fn mul2<S: Scalar>(a: &[[S; 2]; 2], b: &[[S; 2]; 2]) -> [[S; 2]; 2] {
    let mut c = [[S::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            c[i][j] = a[i][0] * b[0][j] + a[i][1] * b[1][j];
        }
    }
    c
}

fn adjoint2<S: Scalar>(a: &[[S; 2]; 2]) -> [[S; 2]; 2] {
    [[a[0][0].conj(), a[1][0].conj()], [a[0][1].conj(), a[1][1].conj()]]
}

fn apply2<S: Scalar>(a: &[[S; 2]; 2], v: [S; 2]) -> [S; 2] {
    [a[0][0] * v[0] + a[0][1] * v[1], a[1][0] * v[0] + a[1][1] * v[1]]
}

/// Cholesky factor `M` of the `L_2` form `a ↦ ‖a_0 f + a_1 g‖²_2 = a* M M* a`
/// and `T = (M*)⁻¹`, so that `b ↦ T b` maps the Euclidean unit circle onto
/// the `L_2` unit sphere of the span.
fn l2_frame<S: Scalar>(f: &LatticeVector<S>, g: &LatticeVector<S>) -> ([[S; 2]; 2], [[S; 2]; 2]) {
    let gram = l2_gram(f, g);
    // Quadratic-form matrix in the `quad` convention.
    let p = [[gram[0][0].conj(), gram[0][1].conj()], [gram[1][0].conj(), gram[1][1].conj()]];
    let m00 = p[0][0].re().sqrt();
    let m10 = p[1][0].scale(1.0 / m00);
    let m11 = (p[1][1].re() - m10.modulus().powi(2)).sqrt();
    let m = [[S::from_re(m00), S::zero()], [m10, S::from_re(m11)]];
    let t = [[S::from_re(1.0 / m00), (-m10.conj()).scale(1.0 / (m00 * m11))], [S::zero(), S::from_re(1.0 / m11)]];
    (m, t)
}

/// Minimum-volume origin-centred enclosing ellipse of a circled point set
/// (Khachiyan ascent with Todd–Yildirim away steps), warm-started from the
/// weights `u`. Returns `Q` with the ellipse `{p : p* Q p <= 1}`.
fn mvee<S: Scalar>(points: &[[S; 2]], u: &mut [f64]) -> [[S; 2]; 2] {
    let d = 2.0;
    let n = points.len();
    let mut kappa = vec![0.0; n];
    let mut minv = [[S::zero(); 2]; 2];
    for _ in 0..MVEE_ITERS {
        let mut m = [[S::zero(); 2]; 2];
        for (p, &ui) in points.iter().zip(u.iter()) {
            if ui == 0.0 {
                continue;
            }
            for i in 0..2 {
                for j in 0..2 {
                    m[i][j] = m[i][j] + (p[i] * p[j].conj()).scale(ui);
                }
            }
        }
        minv = inv2(&m);
        for (k, p) in kappa.iter_mut().zip(points) {
            *k = quad(&minv, p);
        }
        let (mut jp, mut jm) = (0, usize::MAX);
        for i in 0..n {
            if kappa[i] > kappa[jp] {
                jp = i;
            }
            if u[i] > 0.0 && (jm == usize::MAX || kappa[i] < kappa[jm]) {
                jm = i;
            }
        }
        let up = kappa[jp] / d - 1.0;
        let down = 1.0 - kappa[jm] / d;
        // `max κ <= d(1+tol)` alone gives the sandwich: the points lie in
        // `{p* M⁻¹ p <= d(1+tol)}` and `{p* M⁻¹ p <= 1}` lies in their circled hull.
        if up <= MVEE_TOL {
            break;
        }
        if up >= down {
            let beta = (kappa[jp] - d) / (d * (kappa[jp] - 1.0));
            u.iter_mut().for_each(|v| *v *= 1.0 - beta);
            u[jp] += beta;
        } else {
            // At kappa <= 1 the line search is unbounded: drop the point entirely.
            let mut beta = if kappa[jm] > 1.0 { (d - kappa[jm]) / (d * (kappa[jm] - 1.0)) } else { f64::INFINITY };
            if u[jm] < 1.0 {
                beta = beta.min(u[jm] / (1.0 - u[jm]));
            }
            u.iter_mut().for_each(|v| *v *= 1.0 + beta);
            u[jm] -= beta;
            if u[jm] < 1e-300 {
                u[jm] = 0.0;
            }
        }
    }
    let s = 1.0 / d;
    [[minv[0][0].scale(s), minv[0][1].scale(s)], [minv[1][0].scale(s), minv[1][1].scale(s)]]
}

/// Vertices of the convex hull of planar points (monotone chain).
fn hull_vertices(points: &[[f64; 2]]) -> Vec<usize> {
    let mut idx: Vec<usize> = (0..points.len()).collect();
    idx.sort_by(|&a, &b| points[a][0].total_cmp(&points[b][0]).then(points[a][1].total_cmp(&points[b][1])));
    let cross = |o: usize, a: usize, b: usize| {
        let (o, a, b) = (points[o], points[a], points[b]);
        (a[0] - o[0]) * (b[1] - o[1]) - (a[1] - o[1]) * (b[0] - o[0])
    };
    let mut lower: Vec<usize> = Vec::new();
    for &i in &idx {
        while lower.len() >= 2 && cross(lower[lower.len() - 2], lower[lower.len() - 1], i) <= 0.0 {
            lower.pop();
        }
        lower.push(i);
    }
    let mut upper: Vec<usize> = Vec::new();
    for &i in idx.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 2], upper[upper.len() - 1], i) <= 0.0 {
            upper.pop();
        }
        upper.push(i);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    lower
}

/// Directions covering the unit sphere of the span modulo unimodular scalars.
fn directions<S: Scalar>() -> Vec<[S; 2]> {
    match S::FIELD {
        Field::Real => (0..CIRCLE_POINTS)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / CIRCLE_POINTS as f64;
                [S::from_re(t.cos()), S::from_re(t.sin())]
            })
            .collect(),
        Field::Complex => {
            let mut out = Vec::with_capacity(COMPLEX_SIDE * COMPLEX_SIDE + 1);
            out.push([S::one(), S::zero()]);
            for i in 1..=COMPLEX_SIDE {
                let a = std::f64::consts::FRAC_PI_2 * i as f64 / COMPLEX_SIDE as f64;
                for j in 0..COMPLEX_SIDE {
                    let b = std::f64::consts::TAU * j as f64 / COMPLEX_SIDE as f64;
                    out.push([S::from_re(a.cos()), S::cis(b).scale(a.sin())]);
                }
            }
            out
        }
    }
}

fn direction_at<S: Scalar>(r: &[f64]) -> [S; 2] {
    match S::FIELD {
        Field::Real => [S::from_re(r[0].cos()), S::from_re(r[0].sin())],
        Field::Complex => [S::from_re(r[0].cos()), S::cis(r[1]).scale(r[0].sin())],
    }
}

/// Builds the surrogate inner product on `span{f, g}`.
///
/// Under an `L_2` norm this is the native inner product with `k_factor = 1`.
/// Otherwise the minimum-volume enclosing ellipse of the unit ball's boundary
/// samples is fitted and rescaled so that it dominates `‖·‖` on the span.
pub fn hilbert_surrogate<S: Scalar>(f: &LatticeVector<S>, g: &LatticeVector<S>) -> Result<HilbertSurrogate<S>> {
    independent(f, g)?;
    let space = f.space();
    if matches!(space.norm_spec(), NormSpec::Lp { p } if *p == 2.0) {
        return Ok(HilbertSurrogate { gram: l2_gram(f, g), k_factor: 1.0, measured: 1.0, native: true });
    }
    // Sample in an L_2-orthonormal frame `b = M* a` so that nearly parallel
    // inputs still give an evenly covered boundary.
    let (m, t) = l2_frame(f, g);
    let norm = |b: [S; 2]| space.norm_of(&element(f, g, apply2(&t, b)));
    let dirs = directions::<S>();
    let mut points: Vec<[S; 2]> = dirs
        .iter()
        .map(|&a| {
            let s = 1.0 / norm(a);
            [a[0].scale(s), a[1].scale(s)]
        })
        .collect();
    if S::FIELD == Field::Real {
        let flat: Vec<[f64; 2]> = points.iter().map(|p| [p[0].re(), p[1].re()]).collect();
        let keep = hull_vertices(&flat);
        points = keep.into_iter().map(|i| points[i]).collect();
    }
    // Parameters of each sampled direction for local refinement.
    let params: Vec<Vec<f64>> = match S::FIELD {
        Field::Real => (0..CIRCLE_POINTS).map(|k| vec![std::f64::consts::TAU * k as f64 / CIRCLE_POINTS as f64]).collect(),
        Field::Complex => {
            let mut v = vec![vec![0.0, 0.0]];
            for i in 1..=COMPLEX_SIDE {
                for j in 0..COMPLEX_SIDE {
                    v.push(vec![
                        std::f64::consts::FRAC_PI_2 * i as f64 / COMPLEX_SIDE as f64,
                        std::f64::consts::TAU * j as f64 / COMPLEX_SIDE as f64,
                    ]);
                }
            }
            v
        }
    };
    let h = std::f64::consts::TAU / CIRCLE_POINTS as f64;
    // Smallest and largest `‖x‖_E / ‖x‖` with their refined parameters.
    let extremes = |q: &[[S; 2]; 2]| {
        let rho = |r: &[f64]| {
            let a = direction_at::<S>(r);
            quad(q, &a).max(0.0).sqrt() / norm(a)
        };
        let vals: Vec<f64> = params.iter().map(|r| rho(r)).collect();
        let (mut kmin, mut kmax) = (0, 0);
        for (k, v) in vals.iter().enumerate() {
            if *v < vals[kmin] {
                kmin = k;
            }
            if *v > vals[kmax] {
                kmax = k;
            }
        }
        let ((xl, lo), (xh, hi)) = match S::FIELD {
            Field::Real => {
                let (t0, t1) = (params[kmin][0], params[kmax][0]);
                let (xl, lo) = golden_section(|t| rho(&[t]), t0 - h, t0 + h, 1e-12);
                let (xh, hi) = golden_section(|t| -rho(&[t]), t1 - h, t1 + h, 1e-12);
                ((vec![xl], lo), (vec![xh], -hi))
            }
            Field::Complex => {
                let lo = nelder_mead(rho, &params[kmin], 0.02, 2000, 1e-15);
                let (xh, hi) = nelder_mead(|r: &[f64]| -rho(r), &params[kmax], 0.02, 2000, 1e-15);
                (lo, (xh, -hi))
            }
        };
        let low = if lo < vals[kmin] { (lo, xl) } else { (vals[kmin], params[kmin].clone()) };
        let high = if hi > vals[kmax] { (hi, xh) } else { (vals[kmax], params[kmax].clone()) };
        (low, high)
    };
    // Column generation: the ellipse of the samples may miss parts of the
    // ball between samples, so the point sticking out furthest is added and
    // the fit repeated until the ellipse encloses the whole boundary.
    let mut weights = vec![1.0 / points.len() as f64; points.len()];
    let mut q = mvee(&points, &mut weights);
    let mut ext = extremes(&q);
    for _ in 0..CUT_ROUNDS {
        let (hi, xh) = &ext.1;
        if *hi <= 1.0 + CUT_TOL {
            break;
        }
        let a = direction_at::<S>(xh);
        let s = 1.0 / norm(a);
        points.push([a[0].scale(s), a[1].scale(s)]);
        weights.push(0.0);
        q = mvee(&points, &mut weights);
        ext = extremes(&q);
    }
    let (rho_min, rho_max) = (ext.0 .0, ext.1 .0);
    let base = rho_min * (1.0 - CALIBRATION_MARGIN);
    let measured = rho_max / base;
    let cap = std::f64::consts::SQRT_2 * (1.0 + K_SLACK);
    if measured > cap {
        return Err(SprError::SurrogateQuality(format!("measured distortion {measured} exceeds {cap}")));
    }
    let s = 1.0 / (base * base);
    let q = mul2(&mul2(&m, &q), &adjoint2(&m));
    let gram = [[q[0][0].scale(s), q[1][0].scale(s)], [q[0][1].scale(s), q[1][1].scale(s)]];
    Ok(HilbertSurrogate { gram, k_factor: (measured * (1.0 + K_SLACK)).min(cap), measured, native: false })
}

/// Closed-form smallest root of `S (r² − r) + c = 0`, clamped to `[0, ½]`.
pub fn closed_form_r(c: f64, s: f64) -> f64 {
    if c <= 0.0 {
        return 0.0;
    }
    let disc = (1.0 - 4.0 * c / s).max(0.0);
    ((2.0 * c / s) / (1.0 + disc.sqrt())).clamp(0.0, 0.5)
}

/// Moves `(f, g)` along `f_r = f − r(f+λg)`, `g_r = λg − r(f+λg)` to the first `r`
/// where the pair is orthogonal for the surrogate inner product.
pub fn tighten<S: Scalar>(f: &LatticeVector<S>, g: &LatticeVector<S>) -> Result<WitnessPair<S>> {
    let sur = hilbert_surrogate(f, g)?;
    let e1 = [S::one(), S::zero()];
    let e2 = [S::zero(), S::one()];
    let c = sur.inner(e1, e2);
    let lambda = if c.modulus() > 0.0 { c.scale(1.0 / c.modulus()) } else { S::one() };
    let gt = [S::zero(), lambda];
    let ct = sur.inner(e1, gt).re();
    let s = sur.norm([S::one(), lambda]).powi(2);
    let r = closed_form_r(ct, s);
    let rs = S::from_re(r);
    let one_r = S::from_re(1.0 - r);
    let fc = [one_r, -(rs * lambda)];
    let gc = [-rs, lambda * one_r];
    let space = f.space().clone();
    let w = WitnessPair {
        f_prime: LatticeVector::new(space.clone(), element(f, g, fc))?,
        g_prime: LatticeVector::new(space, element(f, g, gc))?,
        k_factor: sur.k_factor,
        r_star: r,
        lambda,
        coords: [fc, gc],
        surrogate: sur,
    };
    let slacks = verify_witness(&w, f, g);
    if slacks.phase_bound < -SLACK_TOL {
        return Err(SprError::SurrogateQuality(format!("phase bound violated by {}", -slacks.phase_bound)));
    }
    if slacks.norm_bound < -SLACK_TOL {
        return Err(SprError::SurrogateQuality(format!("norm bound violated by {}", -slacks.norm_bound)));
    }
    if slacks.modulus_gap < -SLACK_TOL {
        return Err(SprError::SurrogateQuality(format!("modulus gap grew by {}", -slacks.modulus_gap)));
    }
    Ok(w)
}

/// Re-evaluates the three tightening inequalities with fresh norm computations.
pub fn verify_witness<S: Scalar>(w: &WitnessPair<S>, f: &LatticeVector<S>, g: &LatticeVector<S>) -> WitnessSlacks {
    let space = f.space();
    let (fp, gp) = (w.f_prime.entries(), w.g_prime.entries());
    let (pd, _) = space.phase_distance_of(f.entries(), g.entries());
    let (pdp, _) = space.phase_distance_of(fp, gp);
    let norms = (space.norm_of(fp).powi(2) + space.norm_of(gp).powi(2)).sqrt();
    let sur = &w.surrogate;
    let [fc, gc] = w.coords;
    let denom = sur.norm(fc) * sur.norm(gc);
    WitnessSlacks {
        phase_bound: w.k_factor * pdp - pd,
        norm_bound: w.k_factor * pdp - norms,
        modulus_gap: space.gap_norm_of(f.entries(), g.entries()) - space.gap_norm_of(fp, gp),
        orthogonality: if denom > 0.0 { sur.inner(fc, gc).modulus() / denom } else { 0.0 },
    }
}

#[cfg(test)]
mod tests {
    use std::sync::Arc;

    use num_complex::Complex64;

    use super::*;
    use crate::space::AtomSpace;

    fn vecs<S: Scalar>(norm: NormSpec, f: Vec<S>, g: Vec<S>) -> (LatticeVector<S>, LatticeVector<S>) {
        let space = Arc::new(AtomSpace::new(vec![1.0; f.len()], norm, S::FIELD).unwrap());
        (LatticeVector::new(space.clone(), f).unwrap(), LatticeVector::new(space, g).unwrap())
    }

    #[test]
    fn l2_surrogate_is_the_gram_matrix() {
        let (f, g) = vecs(NormSpec::Lp { p: 2.0 }, vec![1.0, 2.0], vec![3.0, -1.0]);
        let s = hilbert_surrogate(&f, &g).unwrap();
        assert_eq!(s.k_factor, 1.0);
        assert_eq!(s.gram, [[5.0, 1.0], [1.0, 10.0]]);
    }

    #[test]
    fn square_and_diamond_give_root_two() {
        for norm in [NormSpec::Sup, NormSpec::Lp { p: 1.0 }] {
            let (f, g) = vecs(norm, vec![1.0, 0.0], vec![0.0, 1.0]);
            let s = hilbert_surrogate(&f, &g).unwrap();
            assert!((s.k_factor / std::f64::consts::SQRT_2 - 1.0).abs() <= 1e-3 + 1e-12, "{}", s.k_factor);
            assert!(s.min_eigenvalue() > 0.0);
        }
    }

    #[test]
    fn sixty_degrees_closed_form() {
        let t = std::f64::consts::FRAC_PI_3;
        let (f, g) = vecs(NormSpec::Lp { p: 2.0 }, vec![1.0, 0.0], vec![t.cos(), t.sin()]);
        let w = tighten(&f, &g).unwrap();
        let expect = (1.0 - (1.0f64 / 3.0).sqrt()) / 2.0;
        assert!((w.r_star - expect).abs() < 1e-12);
        let ip: f64 = w.f_prime.entries().iter().zip(w.g_prime.entries()).map(|(a, b)| a * b).sum();
        assert!(ip.abs() < 1e-12);
    }

    #[test]
    fn complex_rotation_matches_real_case() {
        let t = std::f64::consts::FRAC_PI_3;
        let i = Complex64::new(0.0, 1.0);
        let (fr, gr) = vecs(NormSpec::Lp { p: 2.0 }, vec![1.0, 0.0], vec![t.cos(), t.sin()]);
        let (fc, gc) =
            vecs(NormSpec::Lp { p: 2.0 }, vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)], vec![i * t.cos(), i * t.sin()]);
        let wr = tighten(&fr, &gr).unwrap();
        let wc = tighten(&fc, &gc).unwrap();
        let (sr, sc) = (verify_witness(&wr, &fr, &gr), verify_witness(&wc, &fc, &gc));
        assert!((wr.r_star - wc.r_star).abs() < 1e-12);
        assert!((sr.phase_bound - sc.phase_bound).abs() < 1e-9);
        assert!((sr.norm_bound - sc.norm_bound).abs() < 1e-9);
        assert!((sr.modulus_gap - sc.modulus_gap).abs() < 1e-9);
    }

    #[test]
    fn orthogonal_l1_pair_is_left_alone() {
        let (f, g) = vecs(NormSpec::Lp { p: 1.0 }, vec![1.0, 0.0], vec![0.0, 1.0]);
        let w = tighten(&f, &g).unwrap();
        assert!(w.r_star.abs() < 1e-9);
        assert!(verify_witness(&w, &f, &g).min_slack() >= -SLACK_TOL);
    }

    #[test]
    fn dependent_pair_is_rejected() {
        let (f, g) = vecs(NormSpec::Sup, vec![1.0, 2.0], vec![2.0, 4.0]);
        assert!(matches!(tighten(&f, &g), Err(SprError::DegenerateSpan(_))));
    }

    #[test]
    fn complex_sup_surrogate_is_within_root_two() {
        let (f, g) = vecs(
            NormSpec::Sup,
            vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0), Complex64::new(0.5, 0.5)],
            vec![Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0), Complex64::new(0.5, -0.5)],
        );
        let w = tighten(&f, &g).unwrap();
        assert!(w.k_factor <= std::f64::consts::SQRT_2 * (1.0 + K_SLACK));
        assert!(verify_witness(&w, &f, &g).min_slack() >= -SLACK_TOL);
    }
}
