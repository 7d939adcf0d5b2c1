//! Distances between subspaces and stability of SPR under small perturbations.

use std::sync::Arc;

use rand::Rng;
use rand_distr::StandardNormal;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SprError};
use crate::json::ext_f64;
use crate::scalar::Scalar;
use crate::search::{nelder_mead, rng_for, smallest_k, Budget};
use crate::space::{AtomSpace, NormSpec, Subspace};
use crate::span::SpanEval;

/// Slack on the perturbed meet bound.
pub const MEET_SLACK: f64 = 0.05;

/// `d_1H` estimate with the resulting SPR constant for the perturbed space.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PerturbationReport {
    pub d1h: f64,
    pub threshold: f64,
    /// `None` (serialized as `"inadmissible"`) when `d1h >= threshold`.
    #[serde(with = "admissible")]
    pub c_prime: Option<f64>,
}

mod admissible {
    use serde::{Deserialize, Deserializer, Serialize, Serializer};

    pub fn serialize<S: Serializer>(v: &Option<f64>, s: S) -> Result<S::Ok, S::Error> {
        match v {
            Some(x) => crate::json::ext_f64::serialize(x, s),
            None => "inadmissible".serialize(s),
        }
    }

    pub fn deserialize<'de, D: Deserializer<'de>>(d: D) -> Result<Option<f64>, D::Error> {
        let v = serde_json::Value::deserialize(d)?;
        match &v {
            serde_json::Value::String(s) if s == "inadmissible" => Ok(None),
            serde_json::Value::Number(n) => Ok(n.as_f64()),
            serde_json::Value::String(s) => {
                crate::json::ext_f64::parse(s).map(Some).ok_or_else(|| serde::de::Error::custom(format!("bad number {s}")))
            }
            _ => Err(serde::de::Error::custom("expected a number or \"inadmissible\"")),
        }
    }
}

/// Outcome of perturbing each basis column by `epsilon`.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct BasisPerturbationReport {
    pub gamma: f64,
    pub epsilon: f64,
    /// `epsilon <= gamma / 4`.
    pub hypothesis_holds: bool,
    pub warning: Option<String>,
    #[serde(with = "ext_f64")]
    pub observed_min_meet: f64,
    /// `gamma / 2 − MEET_SLACK`.
    pub required: f64,
    /// `None` when the hypothesis fails and nothing is asserted.
    pub pass: Option<bool>,
    /// Largest `‖f_i − e_i‖` over the normalized columns.
    pub column_distance: f64,
    pub perturbed: Vec<Vec<f64>>,
}

/// Solves a small dense system by Gaussian elimination with partial pivoting.
fn solve<S: Scalar>(mut a: Vec<Vec<S>>, mut b: Vec<S>) -> Option<Vec<S>> {
    let n = b.len();
    for col in 0..n {
        let p = (col..n).max_by(|&x, &y| a[x][col].modulus().total_cmp(&a[y][col].modulus()))?;
        if a[p][col].modulus() < 1e-300 {
            return None;
        }
        a.swap(col, p);
        b.swap(col, p);
        for r in col + 1..n {
            let f = a[r][col].div(a[col][col]);
            for c in col..n {
                let v = a[col][c];
                a[r][c] = a[r][c] - f * v;
            }
            let v = b[col];
            b[r] = b[r] - f * v;
        }
    }
    let mut x = vec![S::zero(); n];
    for r in (0..n).rev() {
        let s = (r + 1..n).fold(b[r], |acc, c| acc - a[r][c] * x[c]);
        x[r] = s.div(a[r][r]);
    }
    Some(x)
}

/// Weighted least-squares coefficients of `x` on `basis`.
fn projection<S: Scalar>(space: &AtomSpace, basis: &[Vec<S>], x: &[S]) -> Vec<S> {
    let n = basis.len();
    let w = space.weights();
    let mut g = vec![vec![S::zero(); n]; n];
    let mut b = vec![S::zero(); n];
    for (i, wi) in w.iter().enumerate() {
        for a in 0..n {
            b[a] = b[a] + (basis[a][i].conj() * x[i]).scale(*wi);
            for c in 0..n {
                g[a][c] = g[a][c] + (basis[a][i].conj() * basis[c][i]).scale(*wi);
            }
        }
    }
    solve(g, b).unwrap_or_else(|| vec![S::zero(); n])
}

/// `dist(x, span basis)`: exact projection in `L_2`, otherwise Nelder–Mead restarts
/// from the least-squares point.
fn distance_to<S: Scalar>(space: &AtomSpace, basis: &[Vec<S>], x: &[S]) -> f64 {
    let c0 = projection(space, basis, x);
    let resid = |c: &[S]| {
        let y = combine_rows(basis, c);
        space.norm_with(|i| (x[i] - y[i]).modulus())
    };
    let d0 = resid(&c0);
    if matches!(space.norm_spec(), NormSpec::Lp { p } if *p == 2.0) {
        return d0;
    }
    let obj = |r: &[f64]| resid(&r.chunks_exact(S::REAL_DIM).map(S::from_parts).collect::<Vec<S>>());
    let mut start: Vec<f64> = c0.iter().flat_map(|z| z.to_parts()).collect();
    let mut best = d0;
    let mut step = 0.1 * c0.iter().map(|z| z.modulus()).fold(0.0, f64::max).max(0.1);
    for _ in 0..4 {
        let (r, v) = nelder_mead(obj, &start, step, 4000, 1e-14);
        if v < best - 1e-8 {
            best = v;
            start = r;
        } else {
            best = best.min(v);
            break;
        }
        step *= 0.5;
    }
    best
}

/// Sampled `sup_{x ∈ F, ‖x‖=1} dist(x, E)`: a lower estimate of `d_1H(E, F)`.
pub fn one_sided_hausdorff<S: Scalar>(e: &Subspace<S>, f: &Subspace<S>, budget: &Budget, seed: u64) -> Result<f64> {
    if **e.ambient() != **f.ambient() {
        return Err(SprError::SpaceMismatch("E and F live in different spaces".into()));
    }
    let space = e.ambient();
    let k = f.dim() * S::REAL_DIM;
    let obj = |r: &[f64]| -> f64 {
        let a: Vec<S> = r.chunks_exact(S::REAL_DIM).map(S::from_parts).collect();
        let x = combine_rows(f.basis(), &a);
        let nx = space.norm_of(&x);
        if nx == 0.0 {
            return f64::INFINITY;
        }
        let xs: Vec<S> = x.iter().map(|v| v.scale(1.0 / nx)).collect();
        -distance_to(space, e.basis(), &xs)
    };
    let mut cands: Vec<Vec<f64>> = (0..f.dim())
        .map(|i| {
            let mut r = vec![0.0; k];
            r[i * S::REAL_DIM] = 1.0;
            r
        })
        .collect();
    let drawn: Vec<Vec<f64>> = (0..budget.samples)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            (0..f.dim()).flat_map(|_| S::gaussian(&mut rng).to_parts()).collect()
        })
        .collect();
    cands.extend(drawn);
    let vals: Vec<f64> = cands.par_iter().map(|c| obj(c)).collect();
    let top = smallest_k(&vals, budget.refine_starts.max(1));
    let best = top
        .par_iter()
        .map(|&i| {
            if budget.refine_starts == 0 {
                return vals[i];
            }
            let (_, v) = nelder_mead(obj, &cands[i], 0.05, budget.refine_iters, 1e-12);
            v.min(vals[i])
        })
        .reduce(|| f64::INFINITY, f64::min);
    Ok((-best).max(0.0))
}

fn combine_rows<S: Scalar>(basis: &[Vec<S>], a: &[S]) -> Vec<S> {
    let m = basis[0].len();
    (0..m).map(|i| basis.iter().zip(a).fold(S::zero(), |acc, (b, &c)| acc + b[i] * c)).collect()
}

/// Admissibility threshold `1/(2√2(c+1))`.
pub fn threshold(c: f64) -> f64 {
    1.0 / (2.0 * std::f64::consts::SQRT_2 * (c + 1.0))
}

/// SPR constant of `F` from the constant `c` of `E` and `d = d_1H(E, F)`:
/// `1/C′ = (1/c)(1/√2 − 2d) − 2d`, valid when `d < 1/(2√2(c+1))`.
pub fn perturbed_spr_bound(c: f64, d: f64) -> Result<PerturbationReport> {
    if !(c >= 1.0) {
        return Err(SprError::Domain(format!("SPR constant must be >= 1, got {c}")));
    }
    if !(d >= 0.0) {
        return Err(SprError::Domain(format!("distance must be >= 0, got {d}")));
    }
    let t = threshold(c);
    let c_prime = if d < t {
        // Same value as √2c / (1 − 2√2d(c+1)); this form is exact at d = 0.
        let sqrt2 = std::f64::consts::SQRT_2;
        Some(sqrt2 * c / (1.0 - 2.0 * sqrt2 * d * (c + 1.0)))
    } else {
        None
    };
    Ok(PerturbationReport { d1h: d, threshold: t, c_prime })
}

/// Adds to each basis column an independent Gaussian direction scaled to
/// `epsilon` times the column norm. Returns the new subspace of the same ambient.
pub fn perturb_columns<S: Scalar>(e: &Subspace<S>, epsilon: f64, seed: u64) -> Result<Subspace<S>> {
    if !(epsilon >= 0.0 && epsilon.is_finite()) {
        return Err(SprError::Domain(format!("epsilon must be >= 0, got {epsilon}")));
    }
    let space = e.ambient();
    let basis = e
        .basis()
        .iter()
        .enumerate()
        .map(|(k, b)| {
            let mut rng = rng_for(seed, k as u64);
            let u: Vec<S> = (0..b.len()).map(|_| S::gaussian(&mut rng)).collect();
            let s = epsilon * space.norm_of(b) / space.norm_of(&u);
            b.iter().zip(&u).map(|(&x, &y)| x + y.scale(s)).collect()
        })
        .collect();
    Subspace::new(space.clone(), basis)
}

/// Rotates each normalized basis column by `epsilon` towards a fresh Gaussian direction
/// and checks that random unit pairs of the new span keep meet `>= gamma/2 − 0.05`.
pub fn basis_perturbation_check(e: &Subspace<f64>, gamma: f64, epsilon: f64, pairs: usize, seed: u64) -> Result<BasisPerturbationReport> {
    if !matches!(e.ambient().norm_spec(), NormSpec::Lp { p } if *p == 2.0) {
        return Err(SprError::InvalidSpace("basis perturbation needs an L_2 ambient".into()));
    }
    e.ambient().require_probability()?;
    if !(gamma > 0.0 && gamma <= 1.0) || !(epsilon >= 0.0 && epsilon < 2.0) {
        return Err(SprError::Domain(format!("need gamma in (0, 1] and epsilon in [0, 2), got ({gamma}, {epsilon})")));
    }
    let hypothesis_holds = epsilon <= gamma / 4.0;
    let warning = (!hypothesis_holds).then(|| format!("epsilon {epsilon} exceeds gamma/4 = {}", gamma / 4.0));
    if let Some(w) = &warning {
        log::warn!("{w}");
    }
    let space: &Arc<AtomSpace> = e.ambient();
    let w = space.weights();
    let m = w.len();
    let ip = |a: &[f64], b: &[f64]| (0..m).map(|i| w[i] * a[i] * b[i]).sum::<f64>();
    let phi = 2.0 * (epsilon / 2.0).asin();
    let mut perturbed = Vec::with_capacity(e.dim());
    let mut column_distance: f64 = 0.0;
    for (k, b) in e.basis().iter().enumerate() {
        let nb = space.norm_of(b);
        let ek: Vec<f64> = b.iter().map(|v| v / nb).collect();
        let mut rng = rng_for(seed, k as u64);
        let mut u: Vec<f64> = (0..m).map(|_| rng.sample(StandardNormal)).collect();
        let proj = ip(&u, &ek);
        u.iter_mut().zip(&ek).for_each(|(x, y)| *x -= proj * y);
        let nu = ip(&u, &u).sqrt();
        u.iter_mut().for_each(|x| *x /= nu);
        let fk: Vec<f64> = ek.iter().zip(&u).map(|(a, b)| phi.cos() * a + phi.sin() * b).collect();
        let diff: Vec<f64> = fk.iter().zip(&ek).map(|(a, b)| a - b).collect();
        column_distance = column_distance.max(ip(&diff, &diff).sqrt());
        perturbed.push(fk);
    }
    let f = Subspace::new(space.clone(), perturbed.clone())?;
    let ev = SpanEval::new(&f);
    let observed_min_meet = (0..pairs)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed ^ 0xface, i as u64);
            let (Some((x, _)), Some((y, _))) = (ev.unit(&ev.random_reals(&mut rng)), ev.unit(&ev.random_reals(&mut rng))) else {
                return f64::INFINITY;
            };
            ev.space().meet_norm_of(&x, &y)
        })
        .reduce(|| f64::INFINITY, f64::min);
    let required = gamma / 2.0 - MEET_SLACK;
    Ok(BasisPerturbationReport {
        gamma,
        epsilon,
        hypothesis_holds,
        warning,
        observed_min_meet,
        required,
        pass: hypothesis_holds.then_some(observed_min_meet >= required),
        column_distance,
        perturbed,
    })
}
