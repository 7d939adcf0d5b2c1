//! A 3-dim polyhedral space containing an isometric `ℓ_∞^2` that still embeds
//! into `ℓ_∞` with uniformly large meets at extreme points.

use std::sync::Arc;

use crate::error::{Result, SprError};
use crate::scalar::Field;
use crate::space::{AtomSpace, NormSpec, Subspace};

/// `‖(x,y,z)‖ = max(|x|, |y|, ½(|x|+|y|+|z|))` on the full `ℝ^3`.
pub fn example_3d() -> Result<(Subspace<f64>, Vec<[f64; 3]>)> {
    let norm = NormSpec::Polyhedral { functionals: vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.5, 0.5, 0.5]] };
    let space = Arc::new(AtomSpace::new(vec![1.0; 3], norm, Field::Real)?);
    let e = Subspace::new(space, vec![vec![1.0, 0.0, 0.0], vec![0.0, 1.0, 0.0], vec![0.0, 0.0, 1.0]])?;
    Ok((e, extreme_points()))
}

/// Extreme points of the dual ball: `(±1,0,0)`, `(0,±1,0)`, `(±½,±½,±½)`.
pub fn extreme_points() -> Vec<[f64; 3]> {
    let mut f = vec![[1.0, 0.0, 0.0], [-1.0, 0.0, 0.0], [0.0, 1.0, 0.0], [0.0, -1.0, 0.0]];
    for sx in [0.5, -0.5] {
        for sy in [0.5, -0.5] {
            for sz in [0.5, -0.5] {
                f.push([sx, sy, sz]);
            }
        }
    }
    f
}

/// Isometric copy of [`example_3d`] in `ℓ_∞^6`, one coordinate per pair `±e*` of
/// extreme points. The meet of two images is the extreme-point bound.
pub fn example_3d_linfty() -> Result<Subspace<f64>> {
    let reps: Vec<[f64; 3]> = extreme_points().into_iter().step_by(2).collect();
    let space = Arc::new(AtomSpace::new(vec![1.0; reps.len()], NormSpec::Sup, Field::Real)?);
    let basis = (0..3).map(|k| reps.iter().map(|e| e[k]).collect()).collect();
    Subspace::new(space, basis)
}

/// The norm of [`example_3d`].
pub fn norm_3d(x: &[f64; 3]) -> f64 {
    x[0].abs().max(x[1].abs()).max(0.5 * (x[0].abs() + x[1].abs() + x[2].abs()))
}

/// `max_{e*} |e*(x)| ∧ |e*(y)|` over the 12 extreme points, with the first maximizer.
pub fn extreme_point_bound(x: &[f64; 3], y: &[f64; 3]) -> Result<(f64, [f64; 3])> {
    for v in [x, y] {
        if (norm_3d(v) - 1.0).abs() > 1e-9 {
            return Err(SprError::NonUnit(format!("norm {} != 1", norm_3d(v))));
        }
    }
    let dot = |a: &[f64; 3], b: &[f64; 3]| a[0] * b[0] + a[1] * b[1] + a[2] * b[2];
    let mut best = (f64::NEG_INFINITY, [0.0; 3]);
    for e in extreme_points() {
        let v = dot(&e, x).abs().min(dot(&e, y).abs());
        if v > best.0 {
            best = (v, e);
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn isometric_square_plane() {
        assert_eq!(norm_3d(&[1.0, 1.0, 0.0]), 1.0);
        assert_eq!(norm_3d(&[0.0, 0.0, 2.0]), 1.0);
        assert_eq!(extreme_points().len(), 12);
    }

    #[test]
    fn brute_force_examples() {
        let (v, e) = extreme_point_bound(&[1.0, 0.0, 0.0], &[0.0, 1.0, 0.0]).unwrap();
        assert_eq!((v, e), (0.5, [0.5, 0.5, 0.5]));
        let (v, e) = extreme_point_bound(&[1.0, 0.0, 0.0], &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!((v, e), (1.0, [1.0, 0.0, 0.0]));
        let (v, e) = extreme_point_bound(&[0.0, 0.0, 2.0], &[1.0, 0.0, 0.0]).unwrap();
        assert_eq!(v, 0.5);
        assert_eq!((e[0], e[2]), (0.5, 0.5));
    }

    #[test]
    fn linfty_copy_is_isometric() {
        let j = example_3d_linfty().unwrap();
        assert_eq!(j.ambient().atom_count(), 6);
        for x in [[1.0, 1.0, 0.0], [0.3, -0.2, 0.9], [0.0, 0.0, 1.0]] {
            let y = j.combine(&x);
            assert!((j.ambient().norm_of(&y) - norm_3d(&x)).abs() < 1e-15);
        }
    }

    #[test]
    fn non_unit_is_rejected() {
        assert!(matches!(extreme_point_bound(&[2.0, 0.0, 0.0], &[1.0, 0.0, 0.0]), Err(SprError::NonUnit(_))));
    }

    #[test]
    fn space_norm_agrees() {
        let (e, _) = example_3d().unwrap();
        assert_eq!(e.ambient().norm_of(&[0.3, -0.2, 0.9]), norm_3d(&[0.3, -0.2, 0.9]));
    }
}
