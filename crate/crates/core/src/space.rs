//! Finite atomic Banach lattices: weighted atoms, absolute norms, moduli and meets.

use std::collections::HashMap;
use std::sync::Arc;

use nalgebra::DMatrix;
use serde::{Deserialize, Serialize};

use crate::error::{Result, SprError};
use crate::scalar::{Field, Scalar};
use crate::search::golden_section;

/// Relative singular-value cutoff for linear independence.
pub const RANK_TOL: f64 = 1e-10;
/// Number of phases on the coarse complex phase grid.
pub const PHASE_GRID: usize = 720;
/// Golden-section tolerance for complex phase refinement.
pub const PHASE_TOL: f64 = 1e-10;
/// Allowed deviation of the total mass from 1 for probability spaces.
pub const PROBABILITY_TOL: f64 = 1e-12;

/// Lattice norm on a finite set of atoms.
///
/// `Sup` and `Polyhedral` ignore the atom weights.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "snake_case")]
pub enum NormSpec {
    Lp {
        p: f64,
    },
    Sup,
    /// Discrete Lorentz `L_{p,q}` with `1 <= q <= p`.
    Lorentz {
        p: f64,
        q: f64,
    },
    /// `max_k sum_i a_{k,i} |x_i|` over nonnegative coefficient rows `a_k`.
    Polyhedral {
        functionals: Vec<Vec<f64>>,
    },
}

impl NormSpec {
    pub fn validate(&self, atoms: usize) -> Result<()> {
        match self {
            NormSpec::Lp { p } => {
                if !(p.is_finite() && *p >= 1.0) {
                    return Err(SprError::InvalidSpace(format!("Lp needs 1 <= p < inf, got {p}")));
                }
            }
            NormSpec::Sup => {}
            NormSpec::Lorentz { p, q } => {
                if !(p.is_finite() && q.is_finite() && *p >= 1.0 && *q >= 1.0) {
                    return Err(SprError::InvalidSpace(format!("Lorentz needs p, q >= 1, got ({p}, {q})")));
                }
                // For q > p the functional is only a quasi-norm.
                if q > p {
                    return Err(SprError::InvalidSpace(format!("Lorentz needs q <= p, got ({p}, {q})")));
                }
            }
            NormSpec::Polyhedral { functionals } => {
                if functionals.is_empty() {
                    return Err(SprError::InvalidSpace("polyhedral norm without functionals".into()));
                }
                let mut covered = vec![false; atoms];
                for a in functionals {
                    if a.len() != atoms {
                        return Err(SprError::InvalidSpace(format!("functional has {} entries, space has {atoms} atoms", a.len())));
                    }
                    for (i, &v) in a.iter().enumerate() {
                        if !(v.is_finite() && v >= 0.0) {
                            return Err(SprError::InvalidSpace(format!("functional entry {v} is not a nonnegative number")));
                        }
                        covered[i] |= v > 0.0;
                    }
                }
                if let Some(i) = covered.iter().position(|c| !c) {
                    return Err(SprError::InvalidSpace(format!("atom {i} is not seen by any functional")));
                }
            }
        }
        Ok(())
    }

    /// True when the norm only depends on the distribution of `|x|`.
    pub fn is_rearrangement_invariant(&self) -> bool {
        !matches!(self, NormSpec::Polyhedral { .. })
    }

    pub fn label(&self) -> String {
        match self {
            NormSpec::Lp { p } => format!("Lp({p})"),
            NormSpec::Sup => "Sup".to_string(),
            NormSpec::Lorentz { p, q } => format!("Lorentz({p},{q})"),
            NormSpec::Polyhedral { functionals } => format!("Polyhedral[{}]", functionals.len()),
        }
    }
}

/// Atoms with positive masses, a lattice norm and a scalar field.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct AtomSpace {
    weights: Vec<f64>,
    norm: NormSpec,
    field: Field,
}

impl AtomSpace {
    pub fn new(weights: Vec<f64>, norm: NormSpec, field: Field) -> Result<Self> {
        if weights.is_empty() {
            return Err(SprError::InvalidSpace("no atoms".into()));
        }
        if let Some(w) = weights.iter().find(|w| !(w.is_finite() && **w > 0.0)) {
            return Err(SprError::InvalidSpace(format!("weight {w} is not strictly positive")));
        }
        norm.validate(weights.len())?;
        Ok(Self { weights, norm, field })
    }

    /// `m` atoms of equal mass `total / m`.
    pub fn uniform(m: usize, total: f64, norm: NormSpec, field: Field) -> Result<Self> {
        Self::new(vec![total / m as f64; m], norm, field)
    }

    pub fn atom_count(&self) -> usize {
        self.weights.len()
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn norm_spec(&self) -> &NormSpec {
        &self.norm
    }

    pub fn field(&self) -> Field {
        self.field
    }

    pub fn total_weight(&self) -> f64 {
        self.weights.iter().sum()
    }

    pub fn is_probability(&self) -> bool {
        (self.total_weight() - 1.0).abs() <= PROBABILITY_TOL
    }

    pub fn require_probability(&self) -> Result<()> {
        if self.is_probability() {
            Ok(())
        } else {
            Err(SprError::InvalidSpace(format!("weights sum to {}, a probability space is required", self.total_weight())))
        }
    }

    /// Same atoms and field under another norm.
    pub fn with_norm(&self, norm: NormSpec) -> Result<Self> {
        Self::new(self.weights.clone(), norm, self.field)
    }

    /// Norm of the nonnegative function `i -> m(i)`.
    #[inline]
    pub fn norm_with<F: Fn(usize) -> f64>(&self, m: F) -> f64 {
        let n = self.weights.len();
        let w = &self.weights;
        match &self.norm {
            NormSpec::Lp { p } if *p == 1.0 => (0..n).map(|i| w[i] * m(i)).sum(),
            NormSpec::Lp { p } => {
                let top = (0..n).map(&m).fold(0.0, f64::max);
                if top == 0.0 || !top.is_finite() {
                    return top;
                }
                let s: f64 = if *p == 2.0 {
                    (0..n)
                        .map(|i| {
                            let r = m(i) / top;
                            w[i] * r * r
                        })
                        .sum()
                } else {
                    (0..n).map(|i| w[i] * (m(i) / top).powf(*p)).sum()
                };
                top * s.powf(1.0 / p)
            }
            NormSpec::Sup => (0..n).map(m).fold(0.0, f64::max),
            NormSpec::Lorentz { .. } | NormSpec::Polyhedral { .. } => {
                let v: Vec<f64> = (0..n).map(m).collect();
                self.norm_of_moduli(&v)
            }
        }
    }

    /// Norm of a vector of moduli (entries assumed nonnegative).
    pub fn norm_of_moduli(&self, m: &[f64]) -> f64 {
        match &self.norm {
            NormSpec::Lorentz { p, q } => lorentz(&self.weights, m, *p, *q),
            NormSpec::Polyhedral { functionals } => {
                functionals.iter().map(|a| a.iter().zip(m).map(|(ai, mi)| ai * mi).sum::<f64>()).fold(0.0, f64::max)
            }
            _ => self.norm_with(|i| m[i]),
        }
    }

    /// Norm of raw entries.
    pub fn norm_of<S: Scalar>(&self, x: &[S]) -> f64 {
        self.norm_with(|i| x[i].modulus())
    }

    /// `‖ |x| ∧ |y| ‖`.
    pub fn meet_norm_of<S: Scalar>(&self, x: &[S], y: &[S]) -> f64 {
        self.norm_with(|i| x[i].modulus().min(y[i].modulus()))
    }

    /// `‖ |x| − |y| ‖`.
    pub fn gap_norm_of<S: Scalar>(&self, x: &[S], y: &[S]) -> f64 {
        self.norm_with(|i| (x[i].modulus() - y[i].modulus()).abs())
    }

    /// `‖x − λ y‖` for a scalar `λ`.
    #[inline]
    pub fn shifted_norm_of<S: Scalar>(&self, x: &[S], lambda: S, y: &[S]) -> f64 {
        self.norm_with(|i| (x[i] - lambda * y[i]).modulus())
    }

    /// `inf_{|λ|=1} ‖x − λ y‖` and a minimizing `λ`.
    pub fn phase_distance_of<S: Scalar>(&self, x: &[S], y: &[S]) -> (f64, S) {
        match S::FIELD {
            Field::Real => {
                let minus = self.shifted_norm_of(x, S::one(), y);
                let plus = self.shifted_norm_of(x, -S::one(), y);
                if minus <= plus {
                    (minus, S::one())
                } else {
                    (plus, -S::one())
                }
            }
            Field::Complex => {
                let h = std::f64::consts::TAU / PHASE_GRID as f64;
                let obj = |t: f64| self.shifted_norm_of(x, S::cis(t), y);
                let (mut best_k, mut best) = (0usize, f64::INFINITY);
                for k in 0..PHASE_GRID {
                    let v = obj(k as f64 * h);
                    if v < best {
                        best = v;
                        best_k = k;
                    }
                }
                let t0 = best_k as f64 * h;
                let (t, v) = golden_section(&obj, t0 - h, t0 + h, PHASE_TOL);
                if v < best {
                    (v, S::cis(t))
                } else {
                    (best, S::cis(t0))
                }
            }
        }
    }
}

/// Interval form of the discrete Lorentz norm:
/// `(sum_k (x*_k)^q (W_k^{q/p} − W_{k−1}^{q/p}))^{1/q}`, `W_k` the cumulative mass
/// of the `k` largest entries.
fn lorentz(w: &[f64], m: &[f64], p: f64, q: f64) -> f64 {
    let top = m.iter().copied().fold(0.0, f64::max);
    if top == 0.0 || !top.is_finite() {
        return top;
    }
    let mut idx: Vec<usize> = (0..m.len()).collect();
    idx.sort_by(|&a, &b| m[b].total_cmp(&m[a]).then(a.cmp(&b)));
    let s = q / p;
    let (mut cum, mut prev, mut acc) = (0.0, 0.0, 0.0);
    for &i in &idx {
        if m[i] == 0.0 {
            break;
        }
        cum += w[i];
        let next = cum.powf(s);
        acc += (m[i] / top).powf(q) * (next - prev);
        prev = next;
    }
    top * acc.powf(1.0 / q)
}

fn check_same(a: &Arc<AtomSpace>, b: &Arc<AtomSpace>) -> Result<()> {
    if Arc::ptr_eq(a, b) || **a == **b {
        Ok(())
    } else {
        Err(SprError::SpaceMismatch("vectors live in different atom spaces".into()))
    }
}

/// Coordinates over an [`AtomSpace`].
#[derive(Clone, Debug)]
pub struct LatticeVector<S: Scalar> {
    entries: Vec<S>,
    space: Arc<AtomSpace>,
}

impl<S: Scalar> LatticeVector<S> {
    pub fn new(space: Arc<AtomSpace>, entries: Vec<S>) -> Result<Self> {
        if entries.len() != space.atom_count() {
            return Err(SprError::Dimension(format!("vector has {} entries, space has {} atoms", entries.len(), space.atom_count())));
        }
        if space.field() != S::FIELD {
            return Err(SprError::SpaceMismatch(format!("{:?} entries in a {:?} space", S::FIELD, space.field())));
        }
        Ok(Self { entries, space })
    }

    pub fn entries(&self) -> &[S] {
        &self.entries
    }

    pub fn into_entries(self) -> Vec<S> {
        self.entries
    }

    pub fn space(&self) -> &Arc<AtomSpace> {
        &self.space
    }

    pub fn norm(&self) -> f64 {
        self.space.norm_of(&self.entries)
    }

    /// Entrywise modulus `|x|`.
    pub fn modulus(&self) -> Vec<f64> {
        self.entries.iter().map(|z| z.modulus()).collect()
    }

    pub fn meet_norm(&self, other: &Self) -> Result<f64> {
        check_same(&self.space, &other.space)?;
        Ok(self.space.meet_norm_of(&self.entries, &other.entries))
    }

    /// `‖ |self| − |other| ‖`.
    pub fn modulus_gap(&self, other: &Self) -> Result<f64> {
        check_same(&self.space, &other.space)?;
        Ok(self.space.gap_norm_of(&self.entries, &other.entries))
    }

    pub fn phase_distance(&self, other: &Self) -> Result<(f64, S)> {
        check_same(&self.space, &other.space)?;
        Ok(self.space.phase_distance_of(&self.entries, &other.entries))
    }

    /// `a·self + b·other`.
    pub fn combine(&self, a: S, other: &Self, b: S) -> Result<Self> {
        check_same(&self.space, &other.space)?;
        let entries = self.entries.iter().zip(&other.entries).map(|(&x, &y)| a * x + b * y).collect();
        Ok(Self { entries, space: self.space.clone() })
    }

    pub fn scaled(&self, a: S) -> Self {
        Self { entries: self.entries.iter().map(|&x| a * x).collect(), space: self.space.clone() }
    }

    /// `self / ‖self‖`, or `None` for the zero vector.
    pub fn normalized(&self) -> Option<Self> {
        let n = self.norm();
        (n > 0.0 && n.is_finite()).then(|| self.scaled(S::from_re(1.0 / n)))
    }
}

/// A finite-dimensional subspace given by an ordered, linearly independent basis.
#[derive(Clone, Debug)]
pub struct Subspace<S: Scalar> {
    basis: Vec<Vec<S>>,
    ambient: Arc<AtomSpace>,
}

impl<S: Scalar> Subspace<S> {
    pub fn new(ambient: Arc<AtomSpace>, basis: Vec<Vec<S>>) -> Result<Self> {
        if basis.is_empty() {
            return Err(SprError::Dimension("a subspace needs at least one basis vector".into()));
        }
        if ambient.field() != S::FIELD {
            return Err(SprError::SpaceMismatch(format!("{:?} basis in a {:?} space", S::FIELD, ambient.field())));
        }
        let m = ambient.atom_count();
        for (k, b) in basis.iter().enumerate() {
            if b.len() != m {
                return Err(SprError::Dimension(format!("basis vector {k} has {} entries, space has {m} atoms", b.len())));
            }
            if b.iter().any(|z| !(z.re().is_finite() && z.im().is_finite())) {
                return Err(SprError::InvalidParameter(format!("basis vector {k} has a non-finite entry")));
            }
        }
        let out = Self { basis, ambient };
        out.check_rank()?;
        Ok(out)
    }

    pub fn from_vectors(vectors: &[LatticeVector<S>]) -> Result<Self> {
        let first = vectors.first().ok_or_else(|| SprError::Dimension("no vectors".into()))?;
        for v in vectors {
            check_same(first.space(), v.space())?;
        }
        Self::new(first.space().clone(), vectors.iter().map(|v| v.entries().to_vec()).collect())
    }

    pub fn dim(&self) -> usize {
        self.basis.len()
    }

    pub fn ambient(&self) -> &Arc<AtomSpace> {
        &self.ambient
    }

    pub fn basis(&self) -> &[Vec<S>] {
        &self.basis
    }

    pub fn vector(&self, k: usize) -> LatticeVector<S> {
        LatticeVector { entries: self.basis[k].clone(), space: self.ambient.clone() }
    }

    /// Entries of `sum_k c_k b_k`.
    pub fn combine(&self, coeffs: &[S]) -> Vec<S> {
        let mut out = vec![S::zero(); self.ambient.atom_count()];
        for (c, b) in coeffs.iter().zip(&self.basis) {
            for (o, &x) in out.iter_mut().zip(b) {
                *o = *o + *c * x;
            }
        }
        out
    }

    pub fn element(&self, coeffs: &[S]) -> LatticeVector<S> {
        LatticeVector { entries: self.combine(coeffs), space: self.ambient.clone() }
    }

    /// Same basis under another norm on the same atoms.
    pub fn with_norm(&self, norm: NormSpec) -> Result<Self> {
        Ok(Self { basis: self.basis.clone(), ambient: Arc::new(self.ambient.with_norm(norm)?) })
    }

    /// Same span with every basis vector rescaled to norm one.
    pub fn normalized_basis(&self) -> Self {
        let basis = self
            .basis
            .iter()
            .map(|b| {
                let n = self.ambient.norm_of(b);
                b.iter().map(|&x| x.scale(1.0 / n)).collect()
            })
            .collect();
        Self { basis, ambient: self.ambient.clone() }
    }

    /// Atoms grouped by identical basis rows: `(representative atom, members)`.
    pub fn row_classes(&self) -> Vec<(usize, Vec<usize>)> {
        let mut index: HashMap<Vec<u64>, usize> = HashMap::new();
        let mut classes: Vec<(usize, Vec<usize>)> = Vec::new();
        for i in 0..self.ambient.atom_count() {
            let key: Vec<u64> = self.basis.iter().flat_map(|b| [b[i].re().to_bits(), b[i].im().to_bits()]).collect();
            match index.get(&key) {
                Some(&c) => classes[c].1.push(i),
                None => {
                    index.insert(key, classes.len());
                    classes.push((i, vec![i]));
                }
            }
        }
        classes
    }

    /// Isometric copy with atoms of identical rows merged (their masses added).
    ///
    /// Only rearrangement-invariant norms allow this; other norms return a clone.
    pub fn compressed(&self) -> Self {
        if !self.ambient.norm_spec().is_rearrangement_invariant() {
            return self.clone();
        }
        let classes = self.row_classes();
        if classes.len() == self.ambient.atom_count() {
            return self.clone();
        }
        let w = self.ambient.weights();
        let weights: Vec<f64> = classes.iter().map(|(_, members)| members.iter().map(|&i| w[i]).sum()).collect();
        let ambient = AtomSpace { weights, norm: self.ambient.norm.clone(), field: self.ambient.field };
        let basis = self.basis.iter().map(|b| classes.iter().map(|(r, _)| b[*r]).collect()).collect();
        Self { basis, ambient: Arc::new(ambient) }
    }

    /// Singular values of the (realified) atom-by-basis matrix over distinct rows.
    pub fn singular_values(&self) -> Vec<f64> {
        let classes = self.row_classes();
        let rd = S::REAL_DIM;
        let (r, n) = (classes.len() * rd, self.dim() * rd);
        let mut a = DMatrix::<f64>::zeros(r, n);
        for (ci, (row, _)) in classes.iter().enumerate() {
            for (k, b) in self.basis.iter().enumerate() {
                let z = b[*row];
                if rd == 1 {
                    a[(ci, k)] = z.re();
                } else {
                    a[(2 * ci, 2 * k)] = z.re();
                    a[(2 * ci, 2 * k + 1)] = -z.im();
                    a[(2 * ci + 1, 2 * k)] = z.im();
                    a[(2 * ci + 1, 2 * k + 1)] = z.re();
                }
            }
        }
        let mut sv: Vec<f64> = a.singular_values().iter().copied().collect();
        sv.sort_by(|x, y| y.total_cmp(x));
        sv
    }

    fn check_rank(&self) -> Result<()> {
        let n = self.dim() * S::REAL_DIM;
        let sv = self.singular_values();
        let top = sv.first().copied().unwrap_or(0.0);
        if sv.len() < n || top == 0.0 || sv[n - 1] <= RANK_TOL * top {
            let low = if sv.len() < n { 0.0 } else { sv[n - 1] };
            return Err(SprError::DegenerateBasis(format!(
                "relative singular value {:.3e} below {RANK_TOL:e}",
                if top > 0.0 { low / top } else { 0.0 }
            )));
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use num_complex::Complex64;

    fn space(w: Vec<f64>, norm: NormSpec) -> Arc<AtomSpace> {
        Arc::new(AtomSpace::new(w, norm, Field::Real).unwrap())
    }

    fn three_d() -> NormSpec {
        NormSpec::Polyhedral { functionals: vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.5, 0.5, 0.5]] }
    }

    #[test]
    fn norm_examples() {
        let l1 = space(vec![1.0, 1.0], NormSpec::Lp { p: 1.0 });
        assert_eq!(LatticeVector::new(l1, vec![3.0, -4.0]).unwrap().norm(), 7.0);
        let sup = space(vec![1.0, 1.0], NormSpec::Sup);
        assert_eq!(LatticeVector::new(sup, vec![3.0, -4.0]).unwrap().norm(), 4.0);
        let poly = space(vec![1.0; 3], three_d());
        assert_eq!(LatticeVector::new(poly.clone(), vec![0.0, 0.0, 2.0]).unwrap().norm(), 1.0);
        assert_eq!(LatticeVector::new(poly, vec![1.0, 1.0, 0.0]).unwrap().norm(), 1.0);
    }

    #[test]
    fn length_mismatch_is_a_dimension_error() {
        let l1 = space(vec![1.0, 1.0], NormSpec::Lp { p: 1.0 });
        assert!(matches!(LatticeVector::new(l1, vec![1.0]), Err(SprError::Dimension(_))));
    }

    #[test]
    fn meet_and_identity_examples() {
        let l1 = space(vec![1.0, 1.0], NormSpec::Lp { p: 1.0 });
        let f = LatticeVector::new(l1.clone(), vec![3.0, 1.0]).unwrap();
        let g = LatticeVector::new(l1.clone(), vec![1.0, 2.0]).unwrap();
        assert_eq!(f.meet_norm(&g).unwrap(), 2.0);
        let s = f.combine(1.0, &g, 1.0).unwrap();
        let d = f.combine(1.0, &g, -1.0).unwrap();
        assert_eq!(s.modulus_gap(&d).unwrap(), 4.0);
        let e1 = LatticeVector::new(l1.clone(), vec![5.0, 0.0]).unwrap();
        let e2 = LatticeVector::new(l1, vec![0.0, -2.0]).unwrap();
        assert_eq!(e1.meet_norm(&e2).unwrap(), 0.0);
    }

    #[test]
    fn meet_rejects_foreign_space() {
        let a = space(vec![1.0, 1.0], NormSpec::Lp { p: 1.0 });
        let b = space(vec![1.0, 1.0], NormSpec::Sup);
        let f = LatticeVector::new(a, vec![1.0, 0.0]).unwrap();
        let g = LatticeVector::new(b, vec![1.0, 0.0]).unwrap();
        assert!(matches!(f.meet_norm(&g), Err(SprError::SpaceMismatch(_))));
    }

    #[test]
    fn real_phase_distance_examples() {
        let l1 = space(vec![1.0, 1.0], NormSpec::Lp { p: 1.0 });
        let f = LatticeVector::new(l1.clone(), vec![3.0, 1.0]).unwrap();
        let g = LatticeVector::new(l1, vec![1.0, 2.0]).unwrap();
        assert_eq!(f.phase_distance(&g).unwrap(), (3.0, 1.0));
        assert_eq!(f.phase_distance(&f).unwrap(), (0.0, 1.0));
    }

    #[test]
    fn complex_phase_distance_cancels_phase() {
        let sp = Arc::new(AtomSpace::new(vec![1.0, 1.0], NormSpec::Lp { p: 2.0 }, Field::Complex).unwrap());
        let f = LatticeVector::new(sp.clone(), vec![Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)]).unwrap();
        let g = LatticeVector::new(sp, vec![Complex64::new(0.0, 1.0), Complex64::new(0.0, 0.0)]).unwrap();
        let (d, lambda) = f.phase_distance(&g).unwrap();
        assert!(d < 1e-9, "{d}");
        assert!((lambda - Complex64::new(0.0, -1.0)).norm() < 1e-9);
        let (d0, l0) = f.phase_distance(&f).unwrap();
        assert!(d0 < 1e-12 && (l0 - Complex64::new(1.0, 0.0)).norm() < 1e-9);
    }

    #[test]
    fn lorentz_matches_lp_at_equal_exponents() {
        let w = vec![0.1, 0.2, 0.3, 0.4];
        let x = [0.5, -2.0, 1.25, 3.0];
        let lp = AtomSpace::new(w.clone(), NormSpec::Lp { p: 3.0 }, Field::Real).unwrap();
        let lz = AtomSpace::new(w, NormSpec::Lorentz { p: 3.0, q: 3.0 }, Field::Real).unwrap();
        let (a, b) = (lp.norm_of(&x), lz.norm_of(&x));
        assert!((a - b).abs() <= 1e-14 * a, "{a} {b}");
    }

    #[test]
    fn lorentz_of_an_indicator() {
        // ‖1_A‖_{p,q} = μ(A)^{1/p}
        let lz = AtomSpace::new(vec![0.25; 4], NormSpec::Lorentz { p: 4.0, q: 2.0 }, Field::Real).unwrap();
        let v = lz.norm_of(&[1.0, 0.0, 1.0, 0.0]);
        assert!((v - 0.5f64.powf(0.25)).abs() < 1e-15);
    }

    #[test]
    fn lorentz_rejects_quasi_norm_range() {
        assert!(AtomSpace::new(vec![1.0], NormSpec::Lorentz { p: 2.0, q: 3.0 }, Field::Real).is_err());
    }

    #[test]
    fn polyhedral_needs_cover() {
        let bad = NormSpec::Polyhedral { functionals: vec![vec![1.0, 0.0]] };
        assert!(AtomSpace::new(vec![1.0, 1.0], bad, Field::Real).is_err());
    }

    #[test]
    fn rank_check() {
        let sp = space(vec![1.0; 3], NormSpec::Lp { p: 2.0 });
        assert!(Subspace::new(sp.clone(), vec![vec![1.0, 1.0, 0.0], vec![2.0, 2.0, 0.0]]).is_err());
        assert!(Subspace::new(sp.clone(), vec![vec![1.0, 1.0, 0.0], vec![2.0, 2.0, 1e-13]]).is_err());
        assert_eq!(Subspace::new(sp, vec![vec![1.0, 0.0, 1.0], vec![0.0, 1.0, 1.0]]).unwrap().dim(), 2);
    }

    #[test]
    fn compression_preserves_norms() {
        let sp = space(vec![0.25; 4], NormSpec::Lorentz { p: 3.0, q: 1.5 });
        let e = Subspace::new(sp, vec![vec![1.0, 2.0, 1.0, 2.0], vec![0.5, -1.0, 0.5, 3.0]]).unwrap();
        let c = e.compressed();
        assert_eq!(c.ambient().atom_count(), 3);
        for coeffs in [[1.0, 0.0], [0.3, -2.0], [-1.0, 1.0]] {
            let a = e.ambient().norm_of(&e.combine(&coeffs));
            let b = c.ambient().norm_of(&c.combine(&coeffs));
            assert!((a - b).abs() <= 1e-14 * a);
        }
    }
}
