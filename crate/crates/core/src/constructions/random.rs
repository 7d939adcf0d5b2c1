//! Spans of independent random columns: Gaussian and symmetric stable.

use std::sync::Arc;

use rand::Rng;
use rand_distr::{Distribution, Exp1, StandardNormal};
use rayon::prelude::*;

use crate::error::{Result, SprError};
use crate::scalar::Field;
use crate::search::rng_for;
use crate::space::{AtomSpace, NormSpec, Subspace};

/// Minimum atoms per dimension for a random span.
pub const OVERSAMPLING: usize = 16;

fn check_size(n: usize, m: usize) -> Result<()> {
    if n == 0 {
        return Err(SprError::InvalidParameter("dimension must be at least 1".into()));
    }
    if m < OVERSAMPLING * n {
        return Err(SprError::Undersampled(format!("{m} atoms for dimension {n}; need at least {}", OVERSAMPLING * n)));
    }
    Ok(())
}

fn span_of<F>(n: usize, m: usize, seed: u64, norm: NormSpec, draw: F) -> Result<Subspace<f64>>
where
    F: Fn(&mut rand_chacha::ChaCha8Rng) -> f64 + Sync,
{
    let space = Arc::new(AtomSpace::uniform(m, 1.0, norm, Field::Real)?);
    let basis: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|i| {
            let mut rng = rng_for(seed, i as u64);
            (0..m).map(|_| draw(&mut rng)).collect()
        })
        .collect();
    Subspace::new(space, basis)
}

/// `n` columns of iid standard normals on `m` equally weighted atoms.
pub fn gaussian_span(n: usize, m: usize, seed: u64, norm: NormSpec) -> Result<Subspace<f64>> {
    check_size(n, m)?;
    span_of(n, m, seed, norm, |rng| rng.sample(StandardNormal))
}

/// Symmetric stable variate with `E e^{itX} = e^{−|t|^α}` (Chambers–Mallows–Stuck).
pub fn symmetric_stable<R: Rng + ?Sized>(alpha: f64, rng: &mut R) -> f64 {
    let half = std::f64::consts::FRAC_PI_2;
    let v = rng.random_range(-half..half);
    let w: f64 = Exp1.sample(rng);
    if alpha == 1.0 {
        return v.tan();
    }
    (alpha * v).sin() / v.cos().powf(1.0 / alpha) * (((1.0 - alpha) * v).cos() / w).powf((1.0 - alpha) / alpha)
}

/// Warning text when `L_p` does not contain `q`-stable variables.
pub fn integrability_warning(q: f64, p: f64) -> Option<String> {
    (p >= q && q < 2.0).then(|| format!("{q}-stable variables are not in L_{p}; norms are sample artifacts"))
}

/// `n` columns of iid symmetric `q`-stable samples, measured in `L_p`.
pub fn q_stable_span(q: f64, n: usize, m: usize, seed: u64, p: f64) -> Result<Subspace<f64>> {
    if !(q > 1.0 && q <= 2.0) {
        return Err(SprError::Domain(format!("stability index must lie in (1, 2], got {q}")));
    }
    check_size(n, m)?;
    if let Some(w) = integrability_warning(q, p) {
        log::warn!("{w}");
    }
    span_of(n, m, seed, NormSpec::Lp { p }, |rng| symmetric_stable(q, rng))
}

/// Empirical characteristic function `mean cos(t x)` of symmetric samples.
pub fn empirical_cf(samples: &[f64], t: f64) -> f64 {
    samples.iter().map(|x| (t * x).cos()).sum::<f64>() / samples.len() as f64
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn undersampled_is_rejected() {
        assert!(matches!(gaussian_span(3, 47, 1, NormSpec::Lp { p: 1.0 }), Err(SprError::Undersampled(_))));
    }

    #[test]
    fn seed_fixes_the_bits() {
        let a = gaussian_span(2, 64, 9, NormSpec::Lp { p: 2.0 }).unwrap();
        let b = gaussian_span(2, 64, 9, NormSpec::Lp { p: 2.0 }).unwrap();
        assert_eq!(a.basis(), b.basis());
    }

    #[test]
    fn stable_at_two_matches_scaled_gaussian() {
        let mut rng = rng_for(3, 0);
        let xs: Vec<f64> = (0..200_000).map(|_| symmetric_stable(2.0, &mut rng)).collect();
        assert!((empirical_cf(&xs, 1.0) - (-1.0f64).exp()).abs() < 0.02);
    }

    #[test]
    fn stable_ecf_at_one_and_a_half() {
        let mut rng = rng_for(4, 0);
        let xs: Vec<f64> = (0..200_000).map(|_| symmetric_stable(1.5, &mut rng)).collect();
        assert!((empirical_cf(&xs, 2.0) - (-(2f64.powf(1.5))).exp()).abs() < 0.02);
    }

    #[test]
    fn warning_when_exponent_too_large() {
        assert!(integrability_warning(1.5, 2.0).is_some());
        assert!(integrability_warning(1.5, 1.0).is_none());
    }
}
