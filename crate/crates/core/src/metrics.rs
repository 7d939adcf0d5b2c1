//! Almost-disjointness constants, SPR constant bounds and related sampled quantities.

use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SprError};
use crate::json::ext_f64;
use crate::oracle::{grid_disjointness_min, grid_disjointness_min_sphere, GridMeet, COMPLEX_STEP, REAL_STEP};
use crate::scalar::{Field, Scalar};
use crate::search::{golden_section, nelder_mead, rng_for, smallest_k, Budget};
use crate::space::{NormSpec, Subspace};
use crate::span::{spr_ratio, sum_diff, SpanEval};

/// Slack used by the two-sided constant check.
pub const SANDWICH_TOL: f64 = 1e-2;
/// Largest number of row subsets the exact disjoint-pair search will visit.
const EXACT_SUBSETS: f64 = 1e5;
/// Largest number of distinct minimal supports compared pairwise.
const EXACT_SUPPORTS: usize = 4000;
/// Work cap (pairs times atoms) for automatic grid steps.
const GRID_WORK: f64 = 4e8;

/// How a certificate was obtained.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    /// Closed form (dimension one, or an exact disjoint pair).
    Exact,
    Sampled,
    GridCertified,
    CertifiedCoarse,
}

impl Method {
    pub fn as_str(&self) -> &'static str {
        match self {
            Method::Exact => "exact",
            Method::Sampled => "sampled",
            Method::GridCertified => "grid-certified",
            Method::CertifiedCoarse => "certified-coarse",
        }
    }
}

/// A pair of subspace elements given by coefficients in the subspace basis.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PairWitness {
    /// `"meet"`, `"ratio"`, `"nonsquare"`, ...
    pub kind: String,
    pub f: Vec<Vec<f64>>,
    pub g: Vec<Vec<f64>>,
    #[serde(with = "ext_f64")]
    pub value: f64,
}

/// Bounds on the almost-disjointness constant and the SPR constant of a subspace.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SprCertificate {
    #[serde(with = "ext_f64")]
    pub epsilon_upper: f64,
    #[serde(with = "ext_f64::option", default, skip_serializing_if = "Option::is_none")]
    pub epsilon_lower: Option<f64>,
    /// Best observed SPR ratio: a lower bound for the optimal constant.
    #[serde(with = "ext_f64")]
    pub spr_lower: f64,
    /// `[1/epsilon_upper, 2/epsilon_lower]` when a lower bound exists.
    #[serde(with = "ext_f64::pair_option", default, skip_serializing_if = "Option::is_none")]
    pub interval: Option<[f64; 2]>,
    pub witnesses: Vec<PairWitness>,
    pub method: Method,
    pub tolerance: f64,
    pub seed: u64,
    pub budget: Budget,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub grid_step: Option<f64>,
}

/// Knobs for [`certify`].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct CertifyOptions {
    pub budget: Budget,
    pub seed: u64,
    /// Grid step for 2-dim spans; `None` picks one from the atom count.
    /// On real 3-dim spans a step requests the coarse sphere grid.
    pub grid_step: Option<f64>,
    /// Skip the grid even for 2-dim spans.
    pub no_grid: bool,
    pub tolerance: f64,
}

impl CertifyOptions {
    pub fn new(budget: Budget, seed: u64) -> Self {
        Self { budget, seed, grid_step: None, no_grid: false, tolerance: SANDWICH_TOL }
    }
}

/// Lower bound on the optimal SPR constant with the pair attaining it.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SprLower {
    #[serde(with = "ext_f64")]
    pub value: f64,
    /// A pair with equal moduli that are not phase multiples was found.
    pub pr_failure: bool,
    pub witness: Option<PairWitness>,
}

/// Parameters of a Hölder-type stability inequality.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct HolderParams {
    pub gamma: f64,
    pub c_holder: f64,
}

/// Outcome of the two-sided constant check.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub pass: bool,
    #[serde(with = "ext_f64")]
    pub lower: f64,
    #[serde(with = "ext_f64")]
    pub upper: f64,
    #[serde(with = "ext_f64")]
    pub c_lower: f64,
    /// `c_lower − (lower − tol)`.
    #[serde(with = "ext_f64")]
    pub lower_slack: f64,
    /// `(upper + tol) − c_lower`.
    #[serde(with = "ext_f64")]
    pub upper_slack: f64,
}

/// One row of the cross-exponent report.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct InterpRow {
    pub r: f64,
    #[serde(with = "ext_f64")]
    pub epsilon_upper: f64,
    #[serde(with = "ext_f64::option")]
    pub epsilon_lower: Option<f64>,
    #[serde(with = "ext_f64")]
    pub spr_lower: f64,
    pub finite: bool,
    pub positive: bool,
    /// Sampled norm-equivalence constant entering the chain bound
    /// (probability spaces only).
    pub norm_ratio: Option<f64>,
    #[serde(with = "ext_f64::option")]
    pub chain_bound: Option<f64>,
    pub respected: Option<bool>,
    pub method: Method,
}

/// Runs a seeded multi-start search and returns the smallest objective value.
///
/// Candidates are `fixed` followed by `budget.samples` draws; the best
/// `budget.refine_starts` are polished by Nelder–Mead.
pub(crate) fn search_min<G, F>(budget: &Budget, seed: u64, fixed: Vec<Vec<f64>>, draw: G, obj: F) -> (f64, Vec<f64>)
where
    G: Fn(&mut ChaCha8Rng) -> Vec<f64> + Sync,
    F: Fn(&[f64]) -> f64 + Sync,
{
    let score = |x: &[f64]| {
        let v = obj(x);
        if v.is_nan() {
            f64::INFINITY
        } else {
            v
        }
    };
    let mut cands = fixed;
    let drawn: Vec<Vec<f64>> = (0..budget.samples).into_par_iter().map(|i| draw(&mut rng_for(seed, i as u64))).collect();
    cands.extend(drawn);
    if cands.is_empty() {
        return (f64::INFINITY, Vec::new());
    }
    let vals: Vec<f64> = cands.par_iter().map(|c| score(c)).collect();
    let top = smallest_k(&vals, budget.refine_starts.max(1));
    if vals[top[0]] == f64::NEG_INFINITY || budget.refine_starts == 0 {
        return (vals[top[0]], cands[top[0]].clone());
    }
    let refined: Vec<(f64, Vec<f64>)> = top
        .par_iter()
        .map(|&i| {
            let (x, v) = nelder_mead(score, &cands[i], 0.05, budget.refine_iters, 1e-13);
            if v < vals[i] {
                (v, x)
            } else {
                (vals[i], cands[i].clone())
            }
        })
        .collect();
    refined.into_iter().fold((f64::INFINITY, Vec::new()), |best, c| if c.0 < best.0 { c } else { best })
}

/// Coordinate pairs `(e_i, e_j)` and `(e_i + e_j, e_i − e_j)` as concatenated real parameters.
fn basis_pairs<S: Scalar>(ev: &SpanEval<S>) -> Vec<Vec<f64>> {
    let n = ev.dim();
    let mut out = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            let (ei, ej) = (ev.basis_reals(i), ev.basis_reals(j));
            out.push([ei.clone(), ej.clone()].concat());
            let s: Vec<f64> = ei.iter().zip(&ej).map(|(a, b)| a + b).collect();
            let d: Vec<f64> = ei.iter().zip(&ej).map(|(a, b)| a - b).collect();
            out.push([s, d].concat());
        }
    }
    out
}

fn draw_pair<S: Scalar>(ev: &SpanEval<S>) -> impl Fn(&mut ChaCha8Rng) -> Vec<f64> + Sync + '_ {
    move |rng| [ev.random_reals(rng), ev.random_reals(rng)].concat()
}

/// Unit elements for the two halves of a parameter vector.
fn unit_pair<S: Scalar>(ev: &SpanEval<S>, r: &[f64]) -> Option<((Vec<S>, Vec<S>), (Vec<S>, Vec<S>))> {
    let k = ev.real_dim();
    Some((ev.unit(&r[..k])?, ev.unit(&r[k..])?))
}

fn meet_objective<S: Scalar>(ev: &SpanEval<S>) -> impl Fn(&[f64]) -> f64 + Sync + '_ {
    move |r| match unit_pair(ev, r) {
        Some(((x, _), (y, _))) => ev.space().meet_norm_of(&x, &y),
        None => f64::INFINITY,
    }
}

fn ratio_objective<S: Scalar>(ev: &SpanEval<S>) -> impl Fn(&[f64]) -> f64 + Sync + '_ {
    move |r| match unit_pair(ev, r) {
        Some(((x, _), (y, _))) => {
            let (f, g) = sum_diff(&x, &y);
            match spr_ratio(ev.space(), &f, &g) {
                Some(v) => -v,
                None => f64::INFINITY,
            }
        }
        None => f64::INFINITY,
    }
}

/// Elements `(u+v, u−v)` built from unit coefficients of a pair, as a ratio witness.
fn ratio_witness<S: Scalar>(ev: &SpanEval<S>, cu: &[S], cv: &[S], value: f64) -> PairWitness {
    let (cf, cg) = sum_diff(cu, cv);
    PairWitness { kind: "ratio".into(), f: ev.export(&cf), g: ev.export(&cg), value }
}

/// Ratio of the pair `(u+v, u−v)` for unit-coefficient vectors `cu`, `cv`.
fn ratio_at<S: Scalar>(ev: &SpanEval<S>, cu: &[S], cv: &[S]) -> Option<f64> {
    let (f, g) = sum_diff(&ev.combine(cu), &ev.combine(cv));
    spr_ratio(ev.space(), &f, &g)
}

/// Null vector of a `(n−1) × n` system when its rank is exactly `n − 1`.
fn null_vector(rows: &[&[f64]], n: usize) -> Option<Vec<f64>> {
    let mut a: Vec<Vec<f64>> = rows.iter().map(|r| r.to_vec()).collect();
    let scale = a.iter().flatten().fold(0.0f64, |m, v| m.max(v.abs()));
    if scale == 0.0 {
        return None;
    }
    let tol = 1e-9 * scale;
    let mut pivots = Vec::new();
    let mut row = 0;
    for col in 0..n {
        if row == a.len() {
            break;
        }
        let p = (row..a.len()).max_by(|&x, &y| a[x][col].abs().total_cmp(&a[y][col].abs()))?;
        if a[p][col].abs() <= tol {
            continue;
        }
        a.swap(row, p);
        let piv = a[row][col];
        for v in a[row].iter_mut() {
            *v /= piv;
        }
        for r2 in 0..a.len() {
            if r2 != row {
                let factor = a[r2][col];
                if factor != 0.0 {
                    for c in 0..n {
                        a[r2][c] -= factor * a[row][c];
                    }
                }
            }
        }
        pivots.push(col);
        row += 1;
    }
    if pivots.len() != n - 1 {
        return None;
    }
    let free = (0..n).find(|c| !pivots.contains(c))?;
    let mut x = vec![0.0; n];
    x[free] = 1.0;
    for (r, &c) in pivots.iter().enumerate() {
        x[c] = -a[r][free];
    }
    Some(x)
}

fn binomial(m: usize, k: usize) -> f64 {
    (0..k).fold(1.0, |acc, i| acc * (m - i) as f64 / (i + 1) as f64)
}

/// Exact search for a disjoint pair in a real span via minimal-support vectors.
///
/// Returns `None` when the enumeration would be too large, `Some(None)` when no
/// disjoint pair exists, and the pair's normalized coefficients otherwise.
pub(crate) fn exact_disjoint_pair(ev: &SpanEval<f64>) -> Option<Option<(Vec<f64>, Vec<f64>)>> {
    let n = ev.dim();
    if n == 1 {
        return Some(None);
    }
    let live: Vec<usize> = (0..ev.atoms()).filter(|&i| ev.row(i).iter().any(|v| *v != 0.0)).collect();
    if live.len() < n - 1 || binomial(live.len(), n - 1) > EXACT_SUBSETS {
        return None;
    }
    let words = ev.atoms().div_ceil(64);
    let mut seen: std::collections::HashMap<Vec<u64>, Vec<f64>> = std::collections::HashMap::new();
    let mut order: Vec<Vec<u64>> = Vec::new();
    let mut pick: Vec<usize> = (0..n - 1).collect();
    loop {
        let rows: Vec<&[f64]> = pick.iter().map(|&k| ev.row(live[k])).collect();
        if let Some(c) = null_vector(&rows, n) {
            let x = ev.combine(&c);
            let top = x.iter().fold(0.0f64, |m, v| m.max(v.abs()));
            let mut bits = vec![0u64; words];
            for (i, v) in x.iter().enumerate() {
                if v.abs() > 1e-9 * top {
                    bits[i / 64] |= 1 << (i % 64);
                }
            }
            if !seen.contains_key(&bits) {
                if seen.len() >= EXACT_SUPPORTS {
                    return None;
                }
                seen.insert(bits.clone(), c);
                order.push(bits);
            }
        }
        // Next (n−1)-subset in lexicographic order.
        let k = n - 1;
        let mut i = k;
        loop {
            if i == 0 {
                break;
            }
            i -= 1;
            if pick[i] != i + live.len() - k {
                pick[i] += 1;
                for j in i + 1..k {
                    pick[j] = pick[j - 1] + 1;
                }
                break;
            }
            if i == 0 {
                i = usize::MAX;
                break;
            }
        }
        if i == usize::MAX || k == 0 {
            break;
        }
    }
    for a in 0..order.len() {
        for b in a + 1..order.len() {
            if order[a].iter().zip(&order[b]).all(|(x, y)| x & y == 0) {
                let unit = |c: &Vec<f64>| {
                    let nx = ev.norm(&ev.combine(c));
                    c.iter().map(|v| v / nx).collect::<Vec<f64>>()
                };
                return Some(Some((unit(&seen[&order[a]]), unit(&seen[&order[b]]))));
            }
        }
    }
    Some(None)
}

fn exact_for<S: Scalar>(ev: &SpanEval<S>) -> Option<Option<(Vec<S>, Vec<S>)>> {
    if S::FIELD != Field::Real {
        return None;
    }
    // Real scalars: reinterpret through the parts representation.
    let real: &SpanEval<f64> = unsafe_cast(ev)?;
    exact_disjoint_pair(real)
        .map(|o| o.map(|(a, b)| (a.iter().map(|v| S::from_re(*v)).collect(), b.iter().map(|v| S::from_re(*v)).collect())))
}

fn unsafe_cast<S: Scalar>(ev: &SpanEval<S>) -> Option<&SpanEval<f64>> {
    (ev as &dyn std::any::Any).downcast_ref::<SpanEval<f64>>()
}

fn auto_step<S: Scalar>(atoms: usize) -> f64 {
    let m = atoms as f64;
    match S::FIELD {
        Field::Real => REAL_STEP.max(std::f64::consts::PI * (m / (2.0 * GRID_WORK)).sqrt()),
        Field::Complex => {
            let pi4 = std::f64::consts::PI.powi(4);
            COMPLEX_STEP.max((pi4 * m / (2.0 * GRID_WORK)).powf(0.25))
        }
    }
}

fn interval(upper: f64, lower: Option<f64>) -> Option<[f64; 2]> {
    lower.map(|lo| [1.0 / upper, 2.0 / lo])
}

/// Almost-disjointness certificate with default options.
pub fn disjointness_constant<S: Scalar>(e: &Subspace<S>, budget: &Budget, seed: u64) -> Result<SprCertificate> {
    certify(e, &CertifyOptions::new(*budget, seed))
}

/// Sampled (and, for 2-dim spans, grid-certified) bounds on the almost-disjointness
/// constant, with the SPR ratio of the extremal pair.
pub fn certify<S: Scalar>(e: &Subspace<S>, opts: &CertifyOptions) -> Result<SprCertificate> {
    let ev = SpanEval::new(e);
    let mut cert = SprCertificate {
        epsilon_upper: 1.0,
        epsilon_lower: Some(1.0),
        spr_lower: 1.0,
        interval: None,
        witnesses: Vec::new(),
        method: Method::Exact,
        tolerance: opts.tolerance,
        seed: opts.seed,
        budget: opts.budget,
        grid_step: None,
    };
    if ev.dim() == 1 {
        // Unit pairs are phase multiples of one vector: the meet is the norm.
        cert.interval = interval(1.0, Some(1.0));
        return Ok(cert);
    }
    if let Some(Some((cu, cv))) = exact_for(&ev) {
        cert.epsilon_upper = 0.0;
        cert.epsilon_lower = Some(0.0);
        cert.spr_lower = f64::INFINITY;
        cert.witnesses.push(PairWitness { kind: "meet".into(), f: ev.export(&cu), g: ev.export(&cv), value: 0.0 });
        cert.witnesses.push(ratio_witness(&ev, &cu, &cv, f64::INFINITY));
        cert.interval = interval(0.0, Some(0.0));
        return Ok(cert);
    }
    let (best, r) = search_min(&opts.budget, opts.seed, basis_pairs(&ev), draw_pair(&ev), meet_objective(&ev));
    let ((_, mut cu), (_, mut cv)) = unit_pair(&ev, &r).ok_or_else(|| SprError::DegenerateSpan("no unit pair".into()))?;
    cert.epsilon_upper = best;
    cert.method = Method::Sampled;
    cert.epsilon_lower = None;
    // Real 3-dim spans get the coarse sphere grid only on explicit request.
    let grid: Option<GridMeet> = match (e.dim(), opts.grid_step) {
        _ if opts.no_grid => None,
        (2, step) => Some(grid_disjointness_min(e, step.unwrap_or_else(|| auto_step::<S>(ev.atoms())))?),
        (3, Some(step)) if S::FIELD == Field::Real => Some(grid_disjointness_min_sphere(e, step)?),
        _ => None,
    };
    if let Some(g) = grid {
        cert.grid_step = Some(g.step);
        cert.epsilon_lower = Some(g.certified_lower.max(0.0));
        cert.method = if S::FIELD == Field::Real { Method::GridCertified } else { Method::CertifiedCoarse };
        if g.grid_min < cert.epsilon_upper {
            cert.epsilon_upper = g.grid_min;
            let parse = |w: &Vec<Vec<f64>>| -> Vec<S> {
                let orig: Vec<S> = w.iter().map(|p| S::from_parts(p)).collect();
                // Back to normalized-basis coefficients.
                orig.iter().zip(e.basis()).map(|(&c, b)| c.scale(e.ambient().norm_of(b))).collect()
            };
            cu = parse(&g.witness.f);
            cv = parse(&g.witness.g);
        }
    }
    cert.epsilon_upper = cert.epsilon_upper.clamp(0.0, 1.0);
    if let (Some(lo), up) = (cert.epsilon_lower, cert.epsilon_upper) {
        cert.epsilon_lower = Some(lo.min(up));
    }
    cert.witnesses.push(PairWitness { kind: "meet".into(), f: ev.export(&cu), g: ev.export(&cv), value: cert.epsilon_upper });
    let ratio = ratio_at(&ev, &cu, &cv).unwrap_or(1.0).max(1.0);
    cert.spr_lower = ratio;
    cert.witnesses.push(ratio_witness(&ev, &cu, &cv, ratio));
    cert.interval = interval(cert.epsilon_upper, cert.epsilon_lower);
    Ok(cert)
}

/// Largest SPR ratio found by sampling pairs `(u+v, u−v)` of unit vectors.
pub fn spr_constant_lower<S: Scalar>(e: &Subspace<S>, budget: &Budget, seed: u64) -> Result<SprLower> {
    let ev = SpanEval::new(e);
    if ev.dim() == 1 {
        return Ok(SprLower { value: 1.0, pr_failure: false, witness: None });
    }
    if let Some(Some((cu, cv))) = exact_for(&ev) {
        return Ok(SprLower { value: f64::INFINITY, pr_failure: true, witness: Some(ratio_witness(&ev, &cu, &cv, f64::INFINITY)) });
    }
    let (best, r) = search_min(budget, seed, basis_pairs(&ev), draw_pair(&ev), ratio_objective(&ev));
    let value = (-best).max(1.0);
    let witness = unit_pair(&ev, &r).map(|((_, cu), (_, cv))| ratio_witness(&ev, &cu, &cv, value));
    Ok(SprLower { value, pr_failure: value == f64::INFINITY, witness })
}

/// Checks `1/epsilon_upper − tol <= c_lower <= 2/epsilon_lower + tol`.
pub fn sandwich_check(cert: &SprCertificate, c_lower: f64) -> Result<SandwichReport> {
    let lo_eps = cert.epsilon_lower.ok_or(SprError::NotCertified)?;
    let tol = cert.tolerance;
    let lower = 1.0 / cert.epsilon_upper;
    let upper = 2.0 / lo_eps;
    let lower_ok = if lower.is_infinite() { c_lower.is_infinite() } else { c_lower >= lower - tol };
    let upper_ok = upper.is_infinite() || c_lower <= upper + tol;
    let lower_slack = if lower.is_infinite() && c_lower.is_infinite() { 0.0 } else { c_lower - (lower - tol) };
    let upper_slack = if upper.is_infinite() && c_lower.is_infinite() { 0.0 } else { (upper + tol) - c_lower };
    Ok(SandwichReport { pass: lower_ok && upper_ok, lower, upper, c_lower, lower_slack, upper_slack })
}

/// SPR constant implied by a Hölder stability inequality: `√2 (√8 C)^{1/γ}`.
pub fn holder_to_spr(h: &HolderParams) -> Result<f64> {
    if !(h.gamma > 0.0 && h.gamma <= 1.0) {
        return Err(SprError::Domain(format!("gamma must lie in (0, 1], got {}", h.gamma)));
    }
    if !(h.c_holder > 0.0) {
        return Err(SprError::Domain(format!("Hölder constant must be positive, got {}", h.c_holder)));
    }
    Ok(2f64.sqrt() * (8f64.sqrt() * h.c_holder).powf(1.0 / h.gamma))
}

/// Sampled extremes of `‖x‖_{L_p} / ‖x‖_{L_q}` over the span.
pub fn norm_equivalence_bounds<S: Scalar>(e: &Subspace<S>, p: f64, q: f64, budget: &Budget, seed: u64) -> Result<(f64, f64)> {
    if !(p >= 1.0 && q >= 1.0 && p.is_finite() && q.is_finite()) {
        return Err(SprError::Domain(format!("exponents must be finite and >= 1, got ({p}, {q})")));
    }
    e.ambient().require_probability()?;
    let ev = SpanEval::new(&e.with_norm(NormSpec::Lp { p })?);
    let qs = ev.space().with_norm(NormSpec::Lp { p: q })?;
    let ratio = |r: &[f64]| -> f64 {
        let x = ev.combine(&ev.coeffs(r));
        let d = qs.norm_of(&x);
        if d > 0.0 {
            ev.norm(&x) / d
        } else {
            f64::NAN
        }
    };
    if ev.dim() == 1 {
        let v = ratio(&ev.basis_reals(0));
        return Ok((v, v));
    }
    if ev.dim() == 2 && S::FIELD == Field::Real {
        let n = 3600;
        let h = std::f64::consts::PI / n as f64;
        let at = |t: f64| ratio(&[t.cos(), t.sin()]);
        let vals: Vec<f64> = (0..n).map(|k| at(k as f64 * h)).collect();
        let lo_k = smallest_k(&vals, 1)[0];
        let neg: Vec<f64> = vals.iter().map(|v| -v).collect();
        let hi_k = smallest_k(&neg, 1)[0];
        let t_lo = lo_k as f64 * h;
        let t_hi = hi_k as f64 * h;
        let (_, lo) = golden_section(at, t_lo - h, t_lo + h, 1e-12);
        let (_, nhi) = golden_section(|t| -at(t), t_hi - h, t_hi + h, 1e-12);
        return Ok((lo.min(vals[lo_k]), (-nhi).max(vals[hi_k])));
    }
    let one = |rng: &mut ChaCha8Rng| ev.random_reals(rng);
    let fixed: Vec<Vec<f64>> = (0..ev.dim()).map(|k| ev.basis_reals(k)).collect();
    let (lo, _) = search_min(budget, seed, fixed.clone(), one, ratio);
    let (nhi, _) = search_min(budget, seed ^ 0x9e37_79b9, fixed, one, |r: &[f64]| -ratio(r));
    Ok((lo, -nhi))
}

/// Smallest sampled mass of `{|x| >= α‖x‖} ∩ {|y| >= α‖y‖}` over pairs in the span.
pub fn joint_level_mass<S: Scalar>(e: &Subspace<S>, alpha: f64, budget: &Budget, seed: u64) -> Result<f64> {
    if !(alpha > 0.0) {
        return Err(SprError::Domain(format!("alpha must be positive, got {alpha}")));
    }
    e.ambient().require_probability()?;
    let ev = SpanEval::new(e);
    let w = ev.space().weights();
    let mass = |r: &[f64]| -> f64 {
        let k = ev.real_dim();
        let x = ev.combine(&ev.coeffs(&r[..k]));
        let y = ev.combine(&ev.coeffs(&r[k..]));
        let (tx, ty) = (alpha * ev.norm(&x), alpha * ev.norm(&y));
        if tx == 0.0 || ty == 0.0 {
            return f64::INFINITY;
        }
        (0..w.len()).filter(|&i| x[i].modulus() >= tx && y[i].modulus() >= ty).map(|i| w[i]).sum()
    };
    let quiet = Budget { refine_starts: 0, ..*budget };
    let (v, _) = search_min(&quiet, seed, basis_pairs(&ev), draw_pair(&ev), mass);
    // A single vector paired with itself is the only option in dimension one.
    if ev.dim() == 1 {
        return Ok(mass(&[ev.basis_reals(0), ev.basis_reals(0)].concat()));
    }
    Ok(v)
}

/// Smallest sampled `max(0, 2 − min(‖f+g‖, ‖f−g‖))` over unit pairs.
///
/// In dimension one the only unit pairs are phase multiples, giving 2.
pub fn nonsquare_constant<S: Scalar>(e: &Subspace<S>, budget: &Budget, seed: u64) -> Result<f64> {
    let ev = SpanEval::new(e);
    if ev.dim() == 1 {
        return Ok(2.0);
    }
    let obj = |r: &[f64]| match unit_pair(&ev, r) {
        Some(((x, _), (y, _))) => {
            let (s, d) = sum_diff(&x, &y);
            (2.0 - ev.norm(&s).min(ev.norm(&d))).max(0.0)
        }
        None => f64::INFINITY,
    };
    let (v, _) = search_min(budget, seed, basis_pairs(&ev), draw_pair(&ev), obj);
    Ok(v)
}

/// Re-certifies the span under `L_r` for each `r` and compares the observed SPR ratio
/// with the constant obtained by chaining norm equivalence, the `L_q` constant `k_q`,
/// and (below `q`) the Hölder conversion.
///
/// Without `k_q`, `2/ε` of an `L_q` certificate is used. The chain bound needs a
/// probability space and is omitted otherwise.
pub fn interp_extrap_report<S: Scalar>(
    e: &Subspace<S>,
    p: f64,
    q: f64,
    r_list: &[f64],
    k_q: Option<f64>,
    budget: &Budget,
    seed: u64,
) -> Result<Vec<InterpRow>> {
    if !(q >= 1.0 && p > q && p.is_finite()) {
        return Err(SprError::Domain(format!("need 1 <= q < p < inf, got p={p}, q={q}")));
    }
    if let Some(r) = r_list.iter().find(|r| !(**r >= 1.0 && **r <= p)) {
        return Err(SprError::InvalidParameter(format!("r = {r} outside [1, {p}]")));
    }
    let probability = e.ambient().is_probability();
    let k_q = match k_q {
        Some(k) => k,
        None => {
            let c = certify(&e.with_norm(NormSpec::Lp { p: q })?, &CertifyOptions::new(*budget, seed))?;
            2.0 / c.epsilon_lower.unwrap_or(c.epsilon_upper)
        }
    };
    let mut rows = Vec::with_capacity(r_list.len());
    for &r in r_list {
        let er = e.with_norm(NormSpec::Lp { p: r })?;
        let cert = certify(&er, &CertifyOptions::new(*budget, seed))?;
        let spr = cert.spr_lower.max(spr_constant_lower(&er, budget, seed)?.value);
        let (norm_ratio, chain_bound) = if !probability {
            (None, None)
        } else if r >= q {
            let (_, c) = norm_equivalence_bounds(e, r, q, budget, seed)?;
            (Some(c), Some(c * k_q))
        } else {
            let (_, c) = norm_equivalence_bounds(e, p, r, budget, seed)?;
            let theta = (1.0 / q - 1.0 / p) / (1.0 / r - 1.0 / p);
            let c = c.max(1.0);
            (Some(c), Some(holder_to_spr(&HolderParams { gamma: theta, c_holder: c * k_q })?))
        };
        rows.push(InterpRow {
            r,
            epsilon_upper: cert.epsilon_upper,
            epsilon_lower: cert.epsilon_lower,
            spr_lower: spr,
            finite: spr.is_finite(),
            positive: cert.epsilon_upper > 0.0,
            norm_ratio,
            chain_bound,
            respected: chain_bound.map(|b| spr <= b),
            method: cert.method,
        });
    }
    Ok(rows)
}
