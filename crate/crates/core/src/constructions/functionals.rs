//! Norming functionals on real atom spaces and embeddings into `ℓ_∞` through a net of
//! dual functionals.

use std::sync::Arc;

use rayon::prelude::*;

use crate::error::{Result, SprError};
use crate::scalar::{Field, Scalar};
use crate::search::{golden_section, nelder_mead, rng_for};
use crate::space::{AtomSpace, LatticeVector, NormSpec, Subspace};

/// Distance threshold separating the two cases of [`supporting_functional`].
pub const CASE_SPLIT: f64 = 0.4;
const UNIT_TOL: f64 = 1e-9;

/// `Σ c_i z_i`.
pub fn apply(c: &[f64], z: &[f64]) -> f64 {
    c.iter().zip(z).map(|(a, b)| a * b).sum()
}

fn require_real_supported(space: &AtomSpace) -> Result<()> {
    if space.field() != Field::Real {
        return Err(SprError::Unsupported("norming functionals are implemented for real spaces".into()));
    }
    if matches!(space.norm_spec(), NormSpec::Lorentz { .. }) {
        return Err(SprError::Unsupported("no dual formula for Lorentz norms".into()));
    }
    Ok(())
}

/// A norm-one functional `c` with `Σ c_i z_i = ‖z‖` (a subgradient of the norm at `z`).
pub fn norming_functional(space: &AtomSpace, z: &[f64]) -> Result<Vec<f64>> {
    require_real_supported(space)?;
    let nz = space.norm_of(z);
    let w = space.weights();
    let mut c = vec![0.0; z.len()];
    if nz == 0.0 {
        return Ok(c);
    }
    match space.norm_spec() {
        NormSpec::Lp { p } if *p == 1.0 => {
            for i in 0..z.len() {
                c[i] = w[i] * sign(z[i]);
            }
        }
        NormSpec::Lp { p } => {
            for i in 0..z.len() {
                c[i] = w[i] * (z[i].abs() / nz).powf(p - 1.0) * sign(z[i]);
            }
        }
        NormSpec::Sup => {
            let k = (0..z.len()).fold(0, |k, i| if z[i].abs() > z[k].abs() { i } else { k });
            c[k] = sign(z[k]);
        }
        NormSpec::Polyhedral { functionals } => {
            let value = |a: &Vec<f64>| a.iter().zip(z).map(|(ai, zi)| ai * zi.abs()).sum::<f64>();
            let k = (0..functionals.len()).fold(0, |k, r| if value(&functionals[r]) > value(&functionals[k]) { r } else { k });
            for i in 0..z.len() {
                c[i] = functionals[k][i] * sign(z[i]);
            }
        }
        NormSpec::Lorentz { .. } => unreachable!(),
    }
    Ok(c)
}

fn sign(v: f64) -> f64 {
    if v > 0.0 {
        1.0
    } else if v < 0.0 {
        -1.0
    } else {
        0.0
    }
}

/// Dual norm `sup_{‖z‖<=1} Σ c_i z_i`.
pub fn dual_norm(space: &AtomSpace, c: &[f64]) -> Result<f64> {
    require_real_supported(space)?;
    let w = space.weights();
    Ok(match space.norm_spec() {
        NormSpec::Lp { p } if *p == 1.0 => c.iter().zip(w).map(|(a, wi)| a.abs() / wi).fold(0.0, f64::max),
        NormSpec::Lp { p } => {
            let q = p / (p - 1.0);
            c.iter().zip(w).map(|(a, wi)| wi.powf(1.0 - q) * a.abs().powf(q)).sum::<f64>().powf(1.0 / q)
        }
        NormSpec::Sup => c.iter().map(|a| a.abs()).sum(),
        NormSpec::Polyhedral { functionals } => {
            let obj: Vec<f64> = c.iter().map(|a| a.abs()).collect();
            simplex_max(functionals, &obj).ok_or_else(|| SprError::InvalidSpace("polyhedral norm does not bound every atom".into()))?
        }
        NormSpec::Lorentz { .. } => unreachable!(),
    })
}

/// `max obj·s` subject to `A s <= 1`, `s >= 0` for nonnegative `A` (dense tableau,
/// Bland's rule). `None` when unbounded.
fn simplex_max(a: &[Vec<f64>], obj: &[f64]) -> Option<f64> {
    let (m, n) = (a.len(), obj.len());
    let width = n + m + 1;
    let mut t: Vec<Vec<f64>> = a
        .iter()
        .enumerate()
        .map(|(r, row)| {
            let mut line = row.clone();
            line.extend((0..m).map(|k| if k == r { 1.0 } else { 0.0 }));
            line.push(1.0);
            line
        })
        .collect();
    // Reduced costs; the objective value sits in the last column.
    let mut z: Vec<f64> = obj.iter().map(|v| -v).collect();
    z.extend(std::iter::repeat_n(0.0, m + 1));
    let eps = 1e-12;
    loop {
        let Some(col) = (0..width - 1).find(|&j| z[j] < -eps) else {
            return Some(z[width - 1]);
        };
        let mut pivot: Option<(usize, f64)> = None;
        for (r, row) in t.iter().enumerate() {
            if row[col] > eps {
                let ratio = row[width - 1] / row[col];
                if pivot.is_none_or(|(_, best)| ratio < best - eps) {
                    pivot = Some((r, ratio));
                }
            }
        }
        let (r, _) = pivot?;
        let p = t[r][col];
        t[r].iter_mut().for_each(|v| *v /= p);
        let prow = t[r].clone();
        for (k, row) in t.iter_mut().enumerate() {
            if k != r && row[col] != 0.0 {
                let f = row[col];
                row.iter_mut().zip(&prow).for_each(|(v, pv)| *v -= f * pv);
            }
        }
        let f = z[col];
        z.iter_mut().zip(&prow).for_each(|(v, pv)| *v -= f * pv);
    }
}

/// `min_t ‖x − t y‖` with its minimizer.
fn line_distance(space: &AtomSpace, x: &[f64], y: &[f64]) -> (f64, f64) {
    let (t, d) = golden_section(|t| space.shifted_norm_of(x, t, y), -3.0, 3.0, 1e-13);
    let d0 = space.norm_of(x);
    if d0 < d {
        (0.0, d0)
    } else {
        (t, d)
    }
}

/// Norm-one functional `g` with `g(y) = 0` and `g(x) = dist(x, ℝy)`, from the
/// subgradients on both sides of the minimizer of `t ↦ ‖x − t y‖`.
fn norming_on_kernel(space: &AtomSpace, x: &[f64], y: &[f64]) -> Result<Vec<f64>> {
    let at = |t: f64| -> Result<Vec<f64>> {
        let z: Vec<f64> = x.iter().zip(y).map(|(a, b)| a - t * b).collect();
        norming_functional(space, &z)
    };
    // The derivative of t ↦ ‖x − t y‖ is −g_t(y).
    let (mut lo, mut hi) = (-3.0, 3.0);
    let mut g_lo = at(lo)?;
    let mut g_hi = at(hi)?;
    while hi - lo > 1e-13 {
        let mid = 0.5 * (lo + hi);
        let g = at(mid)?;
        let slope = -apply(&g, y);
        if slope == 0.0 {
            return Ok(g);
        }
        if slope < 0.0 {
            lo = mid;
            g_lo = g;
        } else {
            hi = mid;
            g_hi = g;
        }
    }
    let (a, b) = (apply(&g_lo, y), apply(&g_hi, y));
    let lam = if a != b { b / (b - a) } else { 0.5 };
    Ok(g_lo.iter().zip(&g_hi).map(|(u, v)| lam * u + (1.0 - lam) * v).collect())
}

/// A norm-one functional `f` with `|f(x)| ∧ |f(y)| >= 1/5` for unit `x`, `y`.
///
/// If `y` is within 2/5 of the line through `x` (or vice versa) a norming functional
/// of `x` (or `y`) works. Otherwise `g` norms `x` on the kernel of `y`, `h` norms `y`
/// on the kernel of `x`, and `f = (g+h)/‖g+h‖*`.
pub fn supporting_functional(x: &LatticeVector<f64>, y: &LatticeVector<f64>) -> Result<Vec<f64>> {
    let space = x.space();
    if **space != **y.space() {
        return Err(SprError::SpaceMismatch("x and y live in different spaces".into()));
    }
    require_real_supported(space)?;
    for v in [x, y] {
        if (v.norm() - 1.0).abs() > UNIT_TOL {
            return Err(SprError::NonUnit(format!("norm {}", v.norm())));
        }
    }
    let (xe, ye) = (x.entries(), y.entries());
    if line_distance(space, ye, xe).1 <= CASE_SPLIT {
        return norming_functional(space, xe);
    }
    if line_distance(space, xe, ye).1 <= CASE_SPLIT {
        return norming_functional(space, ye);
    }
    let g = norming_on_kernel(space, xe, ye)?;
    let h = norming_on_kernel(space, ye, xe)?;
    let s: Vec<f64> = g.iter().zip(&h).map(|(a, b)| a + b).collect();
    let d = dual_norm(space, &s)?;
    Ok(s.into_iter().map(|v| v / d).collect())
}

/// An embedding `J x = (φ_i(x))_i` of a real span into a sup-normed space.
#[derive(Clone, Debug)]
pub struct LinftyEmbedding {
    /// `J(E)`, with basis `J b_k`.
    pub subspace: Subspace<f64>,
    /// Functionals in basis coordinates: `φ_i(Σ a_k b_k) = Σ φ_ik a_k`.
    pub functionals: Vec<Vec<f64>>,
    pub delta: f64,
    /// Smallest sampled `‖Jx‖ / ‖x‖`.
    pub norming: f64,
}

/// `J(E)` for given functionals in basis coordinates.
pub fn embed_with_functionals(e: &Subspace<f64>, functionals: &[Vec<f64>]) -> Result<Subspace<f64>> {
    if functionals.is_empty() || functionals.iter().any(|f| f.len() != e.dim()) {
        return Err(SprError::Dimension(format!("functionals must have {} coordinates", e.dim())));
    }
    let space = Arc::new(AtomSpace::new(vec![1.0; functionals.len()], NormSpec::Sup, Field::Real)?);
    let basis = (0..e.dim()).map(|k| functionals.iter().map(|f| f[k]).collect()).collect();
    Subspace::new(space, basis)
}

fn unit_sphere_samples(e: &Subspace<f64>, seed: u64) -> Vec<Vec<f64>> {
    let n = e.dim();
    let raw: Vec<Vec<f64>> = if n == 2 {
        (0..4096)
            .map(|k| {
                let t = std::f64::consts::TAU * k as f64 / 4096.0;
                vec![t.cos(), t.sin()]
            })
            .collect()
    } else {
        (0..20_000u64)
            .into_par_iter()
            .map(|i| {
                let mut rng = rng_for(seed, i);
                (0..n).map(|_| f64::gaussian(&mut rng)).collect()
            })
            .collect()
    };
    raw.into_iter()
        .filter_map(|a| {
            let nx = e.ambient().norm_of(&e.combine(&a));
            (nx > 0.0).then(|| a.iter().map(|v| v / nx).collect())
        })
        .collect()
}

/// Dual norm on the span, `sup_{‖Σ a_k b_k‖ <= 1} φ·a`, from sphere samples and a local polish.
fn span_dual_norm(e: &Subspace<f64>, sphere: &[Vec<f64>], phi: &[f64]) -> f64 {
    let dot = |a: &[f64]| apply(phi, a);
    let k = (0..sphere.len()).fold(0, |k, i| if dot(&sphere[i]) > dot(&sphere[k]) { i } else { k });
    let ratio = |a: &[f64]| {
        let nx = e.ambient().norm_of(&e.combine(a));
        if nx > 0.0 {
            -dot(a) / nx
        } else {
            f64::INFINITY
        }
    };
    let (_, v) = nelder_mead(ratio, &sphere[k], 0.01, 400, 1e-15);
    (-v).max(dot(&sphere[k]))
}

/// Embeds a real span isometrically up to `δ = 1/net_size` into a sup-normed space
/// through a `δ`-net of its dual sphere.
pub fn linfty_spr_embed(e: &Subspace<f64>, net_size: usize, seed: u64) -> Result<LinftyEmbedding> {
    if net_size < 2 {
        return Err(SprError::InvalidParameter(format!("net size must be at least 2, got {net_size}")));
    }
    require_real_supported(e.ambient())?;
    let n = e.dim();
    let delta = 1.0 / net_size as f64;
    let sphere = unit_sphere_samples(e, seed);
    // ‖φ‖* <= l_e |φ|_2 with l_e the largest Euclidean coefficient norm on the sphere.
    let l_e = sphere.iter().map(|a| a.iter().map(|v| v * v).sum::<f64>().sqrt()).fold(0.0, f64::max) * 1.01;
    let normalize = |raw: &[Vec<f64>]| -> Vec<Vec<f64>> {
        raw.par_iter()
            .map(|phi| {
                let d = span_dual_norm(e, &sphere, phi);
                phi.iter().map(|v| v / d).collect()
            })
            .collect()
    };
    let radius = delta / (2.0 * l_e);
    let cands: Vec<Vec<f64>> = if n == 2 {
        // Refine the angular grid until consecutive candidates are closer than the net radius.
        let mut count = 256;
        loop {
            let raw: Vec<Vec<f64>> = (0..count)
                .map(|k| {
                    let t = std::f64::consts::TAU * k as f64 / count as f64;
                    vec![t.cos(), t.sin()]
                })
                .collect();
            let c = normalize(&raw);
            let gap = (0..count)
                .map(|k| {
                    let (a, b) = (&c[k], &c[(k + 1) % count]);
                    ((a[0] - b[0]).powi(2) + (a[1] - b[1]).powi(2)).sqrt()
                })
                .fold(0.0, f64::max);
            if gap < radius || count > 1 << 20 {
                break c;
            }
            count *= 2;
        }
    } else {
        // Norming functionals of the sphere samples reach the vertices of polyhedral
        // dual balls, which random directions miss.
        let mut raw: Vec<Vec<f64>> = sphere
            .par_iter()
            .map(|a| {
                let psi = norming_functional(e.ambient(), &e.combine(a))?;
                Ok(e.basis().iter().map(|b| apply(&psi, b)).collect())
            })
            .collect::<Result<_>>()?;
        raw.extend(
            (0..20_000u64)
                .into_par_iter()
                .map(|i| {
                    let mut rng = rng_for(seed ^ 0x5eed, i);
                    (0..n).map(|_| f64::gaussian(&mut rng)).collect::<Vec<f64>>()
                })
                .collect::<Vec<_>>(),
        );
        normalize(&raw)
    };
    // Greedy thinning keeps a net at Euclidean radius δ / (2 l_e).
    let mut net: Vec<Vec<f64>> = Vec::new();
    for c in cands {
        let far = net.iter().all(|m| m.iter().zip(&c).map(|(a, b)| (a - b).powi(2)).sum::<f64>().sqrt() >= radius);
        if far {
            net.push(c);
        }
    }
    // Checked on fresh samples so the norming functionals above do not certify themselves.
    let check = if n == 2 { sphere } else { unit_sphere_samples(e, seed ^ 0xc4ec) };
    let norming = check.iter().map(|a| net.iter().map(|phi| apply(phi, a).abs()).fold(0.0, f64::max)).fold(f64::INFINITY, f64::min);
    if norming < 1.0 - delta {
        return Err(SprError::Norming(format!("net norms only {norming} < 1 − δ = {}", 1.0 - delta)));
    }
    let subspace = embed_with_functionals(e, &net)?;
    Ok(LinftyEmbedding { subspace, functionals: net, delta, norming })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn space(norm: NormSpec, m: usize) -> Arc<AtomSpace> {
        Arc::new(AtomSpace::new(vec![1.0; m], norm, Field::Real).unwrap())
    }

    #[test]
    fn simplex_on_the_3d_example() {
        let a = vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.5, 0.5, 0.5]];
        // Dual of (0,0,1): sup z over the unit ball, attained at (0,0,2).
        assert!((simplex_max(&a, &[0.0, 0.0, 1.0]).unwrap() - 2.0).abs() < 1e-12);
        assert!((simplex_max(&a, &[1.0, 1.0, 0.0]).unwrap() - 2.0).abs() < 1e-12);
        assert!((simplex_max(&a, &[0.5, 0.5, 0.5]).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn lp_dual_is_holder_conjugate() {
        let sp = space(NormSpec::Lp { p: 3.0 }, 3);
        let z = [0.3, -1.2, 0.7];
        let c = norming_functional(&sp, &z).unwrap();
        assert!((apply(&c, &z) - sp.norm_of(&z)).abs() < 1e-12);
        assert!((dual_norm(&sp, &c).unwrap() - 1.0).abs() < 1e-12);
    }

    #[test]
    fn l2_orthonormal_pair() {
        let sp = space(NormSpec::Lp { p: 2.0 }, 2);
        let x = LatticeVector::new(sp.clone(), vec![1.0, 0.0]).unwrap();
        let y = LatticeVector::new(sp, vec![0.0, 1.0]).unwrap();
        let f = supporting_functional(&x, &y).unwrap();
        let r = std::f64::consts::FRAC_1_SQRT_2;
        assert!((f[0] - r).abs() < 1e-9 && (f[1] - r).abs() < 1e-9);
    }

    #[test]
    fn equal_inputs_give_a_norming_functional() {
        let sp = space(NormSpec::Sup, 3);
        let x = LatticeVector::new(sp, vec![0.2, -1.0, 0.5]).unwrap();
        let f = supporting_functional(&x, &x).unwrap();
        assert_eq!(apply(&f, x.entries()), 1.0);
    }

    #[test]
    fn lorentz_is_unsupported() {
        let sp = space(NormSpec::Lorentz { p: 2.0, q: 1.0 }, 2);
        let x = LatticeVector::new(sp.clone(), vec![1.0, 0.0]).unwrap().normalized().unwrap();
        assert!(matches!(supporting_functional(&x, &x), Err(SprError::Unsupported(_))));
    }
}
