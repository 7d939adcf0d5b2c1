//! Brute-force certification on 2-dimensional spans (and coarsely on real
//! 3-dimensional ones) and a normal quantile oracle.

use nalgebra::DMatrix;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SprError};
use crate::json::ext_f64;
use crate::metrics::PairWitness;
use crate::scalar::{Field, Scalar};
use crate::search::nelder_mead;
use crate::space::Subspace;
use crate::span::SpanEval;

/// Default grid step (radians) for real spans.
pub const REAL_STEP: f64 = 1e-3;
/// Default grid step (radians) for complex spans.
pub const COMPLEX_STEP: f64 = 0.05;
/// Smallest covering radius of the hemisphere grid for 3-dim spans.
pub const SPHERE_MIN_STEP: f64 = 0.02;

/// Result of the exhaustive meet grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridMeet {
    /// `grid_min − (Lipschitz bound)·step`; a lower bound for the almost-disjointness constant.
    pub certified_lower: f64,
    /// Smallest meet norm seen on the grid; an upper bound for the constant.
    pub grid_min: f64,
    pub lipschitz: f64,
    /// Actual grid spacing (at most the requested step).
    pub step: f64,
    /// Grid points per unit vector.
    pub points: usize,
    /// `"certified"` for real spans, `"certified-coarse"` for complex ones.
    pub label: String,
    pub witness: PairWitness,
}

/// Result of the ratio grid.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct GridSpr {
    #[serde(with = "ext_f64")]
    pub value: f64,
    pub step: f64,
    pub witness: PairWitness,
}

/// Orthonormal (in `L_2` of the weights) frame of a 2-dim span, in coefficients.
fn frame<S: Scalar>(ev: &SpanEval<S>) -> Result<([S; 2], [S; 2])> {
    let w = ev.space().weights();
    let mut g = [[S::zero(); 2]; 2];
    for (i, wi) in w.iter().enumerate() {
        let r = ev.row(i);
        for a in 0..2 {
            for b in 0..2 {
                g[a][b] = g[a][b] + (r[a] * r[b].conj()).scale(*wi);
            }
        }
    }
    let g11 = g[0][0].re();
    let s1 = 1.0 / g11.sqrt();
    let mu = g[1][0].scale(s1);
    let rest = g[1][1].re() - mu.modulus().powi(2);
    if !(rest > 1e-20 * g11) {
        return Err(SprError::DegenerateSpan("basis vectors are numerically dependent".into()));
    }
    let s2 = 1.0 / rest.sqrt();
    Ok(([S::from_re(s1), S::zero()], [(-mu).scale(s1 * s2), S::from_re(s2)]))
}

fn check_dim<S: Scalar>(e: &Subspace<S>, step: f64) -> Result<()> {
    if e.dim() != 2 {
        return Err(SprError::Dimension(format!("grid certification needs dim 2, got {}", e.dim())));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(SprError::InvalidParameter(format!("grid step must be positive, got {step}")));
    }
    Ok(())
}

struct Grid<S: Scalar> {
    /// Unit vectors on the grid.
    xs: Vec<Vec<S>>,
    /// Their coefficients.
    cs: Vec<Vec<S>>,
    lipschitz: f64,
    step: f64,
}

fn build_grid<S: Scalar>(ev: &SpanEval<S>, step: f64) -> Result<Grid<S>> {
    let (c1, c2) = frame(ev)?;
    let u1 = ev.combine(&c1);
    let u2 = ev.combine(&c2);
    let big_m = (ev.norm(&u1).powi(2) + ev.norm(&u2).powi(2)).sqrt();
    let mut raw: Vec<Vec<S>> = Vec::new();
    let h;
    let slack;
    match S::FIELD {
        Field::Real => {
            let n = ((std::f64::consts::PI / step) - 1e-9).ceil().max(2.0) as usize;
            h = std::f64::consts::PI / n as f64;
            for k in 0..n {
                let t = k as f64 * h;
                raw.push(vec![c1[0].scale(t.cos()) + c2[0].scale(t.sin()), c1[1].scale(t.cos()) + c2[1].scale(t.sin())]);
            }
            slack = 1.0;
        }
        Field::Complex => {
            let half = std::f64::consts::FRAC_PI_2;
            let na = ((half / step) - 1e-9).ceil().max(1.0) as usize;
            let nb = ((std::f64::consts::TAU / step) - 1e-9).ceil().max(3.0) as usize;
            let ha = half / na as f64;
            let hb = std::f64::consts::TAU / nb as f64;
            h = ha.max(hb);
            for i in 0..=na {
                let a = i as f64 * ha;
                let betas = if i == 0 { 1 } else { nb };
                for j in 0..betas {
                    let ph = S::cis(j as f64 * hb).scale(a.sin());
                    raw.push(vec![c1[0].scale(a.cos()) + ph * c2[0], c1[1].scale(a.cos()) + ph * c2[1]]);
                }
            }
            // Two coordinates per vector each contribute half a cell.
            slack = 2.0;
        }
    }
    let mut xs = Vec::with_capacity(raw.len());
    let mut cs = Vec::with_capacity(raw.len());
    let mut min_norm = f64::INFINITY;
    for c in raw {
        let x = ev.combine(&c);
        let nx = ev.norm(&x);
        min_norm = min_norm.min(nx);
        let s = S::from_re(1.0 / nx);
        xs.push(x.into_iter().map(|v| v * s).collect());
        cs.push(c.into_iter().map(|v| v * s).collect());
    }
    let m_low = min_norm - big_m * h * slack / 2.0;
    if !(m_low > 0.0) {
        return Err(SprError::InvalidParameter(format!("grid step {step} too coarse for this frame")));
    }
    Ok(Grid { xs, cs, lipschitz: 2.0 * big_m / m_low * slack, step: h })
}

fn witness<S: Scalar>(ev: &SpanEval<S>, kind: &str, f: &[S], g: &[S], value: f64) -> PairWitness {
    PairWitness { kind: kind.to_string(), f: ev.export(f), g: ev.export(g), value }
}

/// Minimum of the meet norm over a full angle grid of unit pairs, with a certified lower bound.
pub fn grid_disjointness_min<S: Scalar>(e: &Subspace<S>, step: f64) -> Result<GridMeet> {
    check_dim(e, step)?;
    let ev = SpanEval::new(e);
    let grid = build_grid(&ev, step)?;
    let space = ev.space();
    let mods: Vec<Vec<f64>> = grid.xs.iter().map(|x| x.iter().map(|z| z.modulus()).collect()).collect();
    let n = mods.len();
    let (best, k, l) = (0..n)
        .into_par_iter()
        .map(|k| {
            let a = &mods[k];
            let mut best = (f64::INFINITY, k, k);
            for (l, b) in mods.iter().enumerate().skip(k + 1) {
                let v = space.norm_with(|i| a[i].min(b[i]));
                if v < best.0 {
                    best = (v, k, l);
                }
            }
            best
        })
        .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)))
        .expect("grid has at least two points");
    let label = match S::FIELD {
        Field::Real => "certified",
        Field::Complex => "certified-coarse",
    };
    Ok(GridMeet {
        certified_lower: best - grid.lipschitz * grid.step,
        grid_min: best,
        lipschitz: grid.lipschitz,
        step: grid.step,
        points: n,
        label: label.to_string(),
        witness: witness(&ev, "meet", &grid.cs[k], &grid.cs[l], best),
    })
}

/// Points of the closed upper hemisphere of `S^2` such that every point of the
/// sphere is within geodesic distance `step` of a grid point or of its negative.
fn hemisphere(step: f64) -> Vec<[f64; 3]> {
    let half = std::f64::consts::FRAC_PI_2;
    let rings = (half / step - 1e-9).ceil().max(1.0) as usize;
    let h = half / rings as f64;
    let mut out = vec![[0.0, 0.0, 1.0]];
    for k in 1..=rings {
        let phi = k as f64 * h;
        // Meridian gap <= h/2 and parallel gap <= sin(phi) dθ / 2 sum to <= step.
        let n = (std::f64::consts::TAU * phi.sin() / (2.0 * step - h) - 1e-9).ceil().max(3.0) as usize;
        for j in 0..n {
            let t = std::f64::consts::TAU * j as f64 / n as f64;
            out.push([phi.sin() * t.cos(), phi.sin() * t.sin(), phi.cos()]);
        }
    }
    out
}

/// Minimum of the meet norm over pairs from a hemisphere grid of a real 3-dim
/// span, with a certified lower bound.
///
/// The grid lives on the unit sphere of an `L_2`-orthonormal frame and `step`
/// is its covering radius (floored at [`SPHERE_MIN_STEP`]). A grid point
/// `a'` within `δ` of `a` moves `x(a)/‖x(a)‖` by at most `2Mδ/m`, where `M`
/// and `m` bound the norm on the frame sphere, so the bound is
/// `min − 4Mδ/m`.
pub fn grid_disjointness_min_sphere<S: Scalar>(e: &Subspace<S>, step: f64) -> Result<GridMeet> {
    if e.dim() != 3 {
        return Err(SprError::Dimension(format!("the sphere grid needs dim 3, got {}", e.dim())));
    }
    if S::FIELD == Field::Complex {
        return Err(SprError::Unsupported("the sphere grid is implemented for real spans only".into()));
    }
    if !(step > 0.0 && step.is_finite()) {
        return Err(SprError::InvalidParameter(format!("grid step must be positive, got {step}")));
    }
    let delta = step.max(SPHERE_MIN_STEP);
    let ev = SpanEval::new(e);
    let w = ev.space().weights();
    let gram = DMatrix::from_fn(3, 3, |a, b| (0..w.len()).map(|i| w[i] * ev.row(i)[a].re() * ev.row(i)[b].re()).sum::<f64>());
    let chol = gram.cholesky().ok_or_else(|| SprError::DegenerateSpan("basis vectors are numerically dependent".into()))?;
    // Columns of L^{-T} are coefficient vectors of an orthonormal frame.
    let frame = chol.l().transpose().try_inverse().ok_or_else(|| SprError::DegenerateSpan("singular frame".into()))?;
    let space = ev.space();
    let coeffs: Vec<Vec<S>> =
        hemisphere(delta).into_iter().map(|a| (0..3).map(|r| S::from_re((0..3).map(|c| frame[(r, c)] * a[c]).sum())).collect()).collect();
    let mut mods = Vec::with_capacity(coeffs.len());
    let mut cs = Vec::with_capacity(coeffs.len());
    let (mut lo, mut hi) = (f64::INFINITY, 0.0f64);
    for c in coeffs {
        let x = ev.combine(&c);
        let nx = ev.norm(&x);
        lo = lo.min(nx);
        hi = hi.max(nx);
        mods.push(x.iter().map(|z| z.modulus() / nx).collect::<Vec<f64>>());
        cs.push(c.into_iter().map(|v| v.scale(1.0 / nx)).collect::<Vec<S>>());
    }
    let big_m = hi / (1.0 - delta);
    let m_low = lo - big_m * delta;
    if !(m_low > 0.0) {
        return Err(SprError::InvalidParameter(format!("grid step {delta} too coarse for this frame")));
    }
    let n = mods.len();
    let (best, k, l) = (0..n)
        .into_par_iter()
        .map(|k| {
            let a = &mods[k];
            let mut best = (f64::INFINITY, k, k);
            for (l, b) in mods.iter().enumerate().skip(k + 1) {
                let v = space.norm_with(|i| a[i].min(b[i]));
                if v < best.0 {
                    best = (v, k, l);
                }
            }
            best
        })
        .min_by(|x, y| x.0.total_cmp(&y.0).then(x.1.cmp(&y.1)).then(x.2.cmp(&y.2)))
        .expect("grid has at least two points");
    let lipschitz = 4.0 * big_m / m_low;
    Ok(GridMeet {
        certified_lower: best - lipschitz * delta,
        grid_min: best,
        lipschitz,
        step: delta,
        points: n,
        label: "certified".to_string(),
        witness: witness(&ev, "meet", &cs[k], &cs[l], best),
    })
}

/// Supremum of `phase_distance / ‖|f|−|g|‖` over `(f, g) = (x + y, x − y)` with `x, y`
/// on the unit-vector grid, polished by a local search from the best cell. Real spans only.
pub fn grid_spr_sup<S: Scalar>(e: &Subspace<S>, step: f64) -> Result<GridSpr> {
    check_dim(e, step)?;
    if S::FIELD == Field::Complex {
        return Err(SprError::Unsupported("the ratio grid is implemented for real spans only".into()));
    }
    let ev = SpanEval::new(e);
    let grid = build_grid(&ev, step)?;
    let space = ev.space();
    let xs: Vec<Vec<f64>> = grid.xs.iter().map(|x| x.iter().map(|z| z.re()).collect()).collect();
    let n = xs.len();
    // Unit x, y give ‖f‖ + ‖g‖ <= 4.
    let zero_gap = 40.0 * f64::EPSILON;
    let ratio = |u: &[f64], v: &[f64]| -> Option<f64> {
        let f = |i: usize| u[i] + v[i];
        let g = |i: usize| u[i] - v[i];
        let minus = space.norm_with(|i| (f(i) - g(i)).abs());
        let plus = space.norm_with(|i| (f(i) + g(i)).abs());
        let pd = minus.min(plus);
        let gap = space.norm_with(|i| (f(i).abs() - g(i).abs()).abs());
        if gap <= zero_gap {
            (pd > 1e-12).then_some(f64::INFINITY)
        } else {
            Some(pd / gap)
        }
    };
    let (best, k, l) = (0..n)
        .into_par_iter()
        .map(|k| {
            let u = &xs[k];
            let mut best = (f64::NEG_INFINITY, k, k);
            for (l, v) in xs.iter().enumerate().skip(k) {
                if let Some(r) = ratio(u, v) {
                    if r > best.0 {
                        best = (r, k, l);
                    }
                }
            }
            best
        })
        .max_by(|x, y| x.0.total_cmp(&y.0).then(y.1.cmp(&x.1)).then(y.2.cmp(&x.2)))
        .expect("grid has at least two points");
    let (mut cu, mut cv) = (grid.cs[k].clone(), grid.cs[l].clone());
    let mut value = best;
    if best.is_finite() && k != l {
        // Polish the best cell: every evaluated pair is still a lower bound.
        let (c1, c2) = frame(&ev)?;
        let unit = |t: f64| -> (Vec<S>, Vec<f64>) {
            let c = vec![c1[0].scale(t.cos()) + c2[0].scale(t.sin()), c1[1].scale(t.cos()) + c2[1].scale(t.sin())];
            let x = ev.combine(&c);
            let s = 1.0 / ev.norm(&x);
            (c.into_iter().map(|v| v.scale(s)).collect(), x.iter().map(|v| v.re() * s).collect())
        };
        let obj = |a: &[f64]| -> f64 {
            let (_, u) = unit(a[0]);
            let (_, v) = unit(a[1]);
            match ratio(&u, &v) {
                Some(r) if r.is_finite() => -r,
                _ => f64::INFINITY,
            }
        };
        let (a, v) = nelder_mead(obj, &[k as f64 * grid.step, l as f64 * grid.step], grid.step, 400, 1e-15);
        if -v > value {
            value = -v;
            cu = unit(a[0]).0;
            cv = unit(a[1]).0;
        }
    }
    let cf: Vec<S> = cu.iter().zip(&cv).map(|(&a, &b)| a + b).collect();
    let cg: Vec<S> = cu.iter().zip(&cv).map(|(&a, &b)| a - b).collect();
    Ok(GridSpr { value, step: grid.step, witness: witness(&ev, "ratio", &cf, &cg, value) })
}

/// Distributions known to [`quantile_oracle`].
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Distribution {
    Normal,
}

fn normal_pdf(t: f64) -> f64 {
    (-0.5 * t * t).exp() / (2.0 * std::f64::consts::PI).sqrt()
}

fn simpson(a: f64, b: f64, fa: f64, fm: f64, fb: f64) -> f64 {
    (b - a) / 6.0 * (fa + 4.0 * fm + fb)
}

fn adaptive<F: Fn(f64) -> f64>(f: &F, a: f64, b: f64, fa: f64, fm: f64, fb: f64, whole: f64, tol: f64, depth: u32) -> f64 {
    let m = 0.5 * (a + b);
    let (lm, rm) = (0.5 * (a + m), 0.5 * (m + b));
    let (flm, frm) = (f(lm), f(rm));
    let left = simpson(a, m, fa, flm, fm);
    let right = simpson(m, b, fm, frm, fb);
    let delta = left + right - whole;
    if depth == 0 || delta.abs() <= 15.0 * tol {
        left + right + delta / 15.0
    } else {
        adaptive(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) + adaptive(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1)
    }
}

/// Adaptive Simpson quadrature to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, tol: f64) -> f64 {
    let (fa, fb, fm) = (f(a), f(b), f(0.5 * (a + b)));
    let whole = simpson(a, b, fa, fm, fb);
    adaptive(&f, a, b, fa, fm, fb, whole, tol, 60)
}

/// Standard normal distribution function by quadrature of the density.
pub fn normal_cdf(x: f64) -> f64 {
    let half = integrate(normal_pdf, 0.0, x.abs(), 1e-12);
    if x >= 0.0 {
        0.5 + half
    } else {
        0.5 - half
    }
}

/// Inverse distribution function by bisection on the quadrature.
pub fn quantile_oracle(dist: Distribution, prob: f64) -> Result<f64> {
    if !(prob > 0.0 && prob < 1.0) {
        return Err(SprError::Domain(format!("probability must lie in (0, 1), got {prob}")));
    }
    match dist {
        Distribution::Normal => {
            let (mut lo, mut hi) = (-40.0f64, 40.0f64);
            for _ in 0..200 {
                let mid = 0.5 * (lo + hi);
                if normal_cdf(mid) < prob {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-15 * mid.abs().max(1.0) {
                    break;
                }
            }
            Ok(0.5 * (lo + hi))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::space::{AtomSpace, NormSpec};
    use rand::Rng;
    use rand_distr::StandardNormal;
    use std::sync::Arc;

    fn sub(w: Vec<f64>, norm: NormSpec, basis: Vec<Vec<f64>>) -> Subspace<f64> {
        Subspace::new(Arc::new(AtomSpace::new(w, norm, Field::Real).unwrap()), basis).unwrap()
    }

    /// Maclaurin series of erf.
    fn erf_series(x: f64) -> f64 {
        let (mut term, mut sum) = (x, x);
        for n in 1..200 {
            term *= -x * x / n as f64;
            sum += term / (2 * n + 1) as f64;
        }
        2.0 / std::f64::consts::PI.sqrt() * sum
    }

    #[test]
    fn quantile_examples() {
        assert!(quantile_oracle(Distribution::Normal, 0.5).unwrap().abs() < 1e-12);
        let b = quantile_oracle(Distribution::Normal, 0.625).unwrap();
        assert!((b - 0.31864).abs() < 1e-5);
        let z = quantile_oracle(Distribution::Normal, 0.975).unwrap();
        assert!((z - 1.95996).abs() < 1e-5);
        for x in [b, z, -0.7, 2.5] {
            let series = 0.5 * (1.0 + erf_series(x / 2f64.sqrt()));
            assert!((normal_cdf(x) - series).abs() < 1e-12, "{x}");
        }
        assert!((0.5 * (1.0 + erf_series(b / 2f64.sqrt())) - 0.625).abs() < 1e-11);
    }

    #[test]
    fn quantile_rejects_bad_probability() {
        assert!(quantile_oracle(Distribution::Normal, 1.0).is_err());
        assert!(quantile_oracle(Distribution::Normal, -0.1).is_err());
    }

    #[test]
    fn one_dimensional_span_is_rejected() {
        let e = sub(vec![1.0; 2], NormSpec::Sup, vec![vec![1.0, 1.0]]);
        assert!(matches!(grid_disjointness_min(&e, 1e-2), Err(SprError::Dimension(_))));
        assert!(matches!(grid_spr_sup(&e, 1e-2), Err(SprError::Dimension(_))));
    }

    #[test]
    fn full_l1_plane_has_a_disjoint_pair() {
        let e = sub(vec![1.0; 2], NormSpec::Lp { p: 1.0 }, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        let g = grid_disjointness_min(&e, 1e-3).unwrap();
        assert!(g.grid_min < 1e-12);
        assert!(g.certified_lower <= g.lipschitz * g.step);
        // An even point count puts e_2 on the grid.
        assert_eq!(grid_spr_sup(&e, std::f64::consts::PI / 100.0).unwrap().value, f64::INFINITY);
    }

    #[test]
    fn halving_the_step_moves_the_bound_by_at_most_one_cell() {
        let e = sub(vec![1.0; 3], NormSpec::Sup, vec![vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]);
        let pi = std::f64::consts::PI;
        let coarse = grid_disjointness_min(&e, pi / 500.0).unwrap();
        let fine = grid_disjointness_min(&e, pi / 1000.0).unwrap();
        assert_eq!((coarse.points, fine.points), (500, 1000));
        assert!(fine.certified_lower - coarse.certified_lower <= coarse.lipschitz * coarse.step);
        assert!(fine.grid_min <= coarse.grid_min);
    }

    #[test]
    fn hemisphere_covers_the_sphere() {
        let grid = hemisphere(0.1);
        let mut rng = crate::search::rng_for(1, 0);
        for _ in 0..2000 {
            let v: [f64; 3] = [rng.sample(StandardNormal), rng.sample(StandardNormal), rng.sample(StandardNormal)];
            let n = (v[0] * v[0] + v[1] * v[1] + v[2] * v[2]).sqrt();
            let d = grid.iter().map(|g| (g[0] * v[0] + g[1] * v[1] + g[2] * v[2]).abs() / n).fold(0.0f64, f64::max).min(1.0).acos();
            assert!(d <= 0.1 + 1e-12, "{d}");
        }
    }

    #[test]
    fn sphere_grid_on_the_cube_norm() {
        // e_1 and e_2 are disjoint unit vectors of ℓ_∞^3.
        let e = sub(vec![1.0; 3], NormSpec::Sup, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]]);
        let g = grid_disjointness_min_sphere(&e, 0.05).unwrap();
        assert!(g.grid_min < 1e-12);
        assert!(g.certified_lower < 0.0);
        let flat = sub(vec![1.0; 2], NormSpec::Sup, vec![vec![1.0, 0.0], vec![0.0, 1.0]]);
        assert!(matches!(grid_disjointness_min_sphere(&flat, 0.05), Err(SprError::Dimension(_))));
    }

    #[test]
    fn ratio_grid_is_sandwiched_by_the_reciprocal_meet() {
        let e = sub(vec![1.0; 3], NormSpec::Sup, vec![vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]);
        let m = grid_disjointness_min(&e, 2e-3).unwrap();
        let r = grid_spr_sup(&e, 2e-3).unwrap();
        // The polish only moves up from the grid value, and never past the certified meet.
        assert!(r.value >= (1.0 - 1e-9) / m.grid_min, "{} vs {}", r.value, 1.0 / m.grid_min);
        assert!(m.certified_lower > 0.0);
        assert!(r.value <= 1.0 / m.certified_lower, "{} vs {}", r.value, 1.0 / m.certified_lower);
    }

    #[test]
    fn complex_grid_is_coarse_and_ratio_grid_unsupported() {
        use num_complex::Complex64;
        let sp = Arc::new(AtomSpace::new(vec![1.0; 3], NormSpec::Lp { p: 2.0 }, Field::Complex).unwrap());
        let c = |a: f64, b: f64| Complex64::new(a, b);
        let e = Subspace::new(sp, vec![vec![c(1.0, 0.0), c(0.0, 0.5), c(0.3, 0.0)], vec![c(0.0, 0.0), c(1.0, 0.0), c(0.2, -1.0)]]).unwrap();
        let g = grid_disjointness_min(&e, 0.1).unwrap();
        assert_eq!(g.label, "certified-coarse");
        assert!(g.certified_lower <= g.grid_min && g.grid_min <= 1.0 + 1e-12);
        assert!(matches!(grid_spr_sup(&e, 0.1), Err(SprError::Unsupported(_))));
    }
}
