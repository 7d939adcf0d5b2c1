use std::fmt::Debug;
use std::ops::{Add, Mul, Neg, Sub};

use num_complex::Complex64;
use rand::Rng;
use rand_distr::StandardNormal;
use serde::{Deserialize, Serialize};

/// Scalar field of a lattice.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Field {
    Real,
    Complex,
}

/// Entry type of lattice vectors: `f64` or `Complex64`.
pub trait Scalar:
    Copy
    + Clone
    + Send
    + Sync
    + Debug
    + PartialEq
    + Default
    + 'static
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
{
    const FIELD: Field;
    /// Number of real parameters per scalar.
    const REAL_DIM: usize;

    fn modulus(self) -> f64;
    fn scale(self, r: f64) -> Self;
    fn conj(self) -> Self;
    fn re(self) -> f64;
    fn im(self) -> f64;
    fn from_re(re: f64) -> Self;
    /// Builds a scalar from `REAL_DIM` real parts.
    fn from_parts(parts: &[f64]) -> Self;
    /// `e^{iθ}`; for real scalars this is the sign of `cos θ`.
    fn cis(theta: f64) -> Self;
    /// Standard Gaussian with `E|z|^2 = 1`.
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self;
    /// Divides by a nonzero scalar.
    fn div(self, other: Self) -> Self;

    fn zero() -> Self {
        Self::default()
    }
    fn one() -> Self {
        Self::from_re(1.0)
    }
    fn to_parts(self) -> Vec<f64> {
        if Self::REAL_DIM == 1 {
            vec![self.re()]
        } else {
            vec![self.re(), self.im()]
        }
    }
}

impl Scalar for f64 {
    const FIELD: Field = Field::Real;
    const REAL_DIM: usize = 1;

    #[inline]
    fn modulus(self) -> f64 {
        self.abs()
    }
    #[inline]
    fn scale(self, r: f64) -> Self {
        self * r
    }
    #[inline]
    fn conj(self) -> Self {
        self
    }
    #[inline]
    fn re(self) -> f64 {
        self
    }
    #[inline]
    fn im(self) -> f64 {
        0.0
    }
    #[inline]
    fn from_re(re: f64) -> Self {
        re
    }
    fn from_parts(parts: &[f64]) -> Self {
        parts[0]
    }
    fn cis(theta: f64) -> Self {
        if theta.cos() >= 0.0 {
            1.0
        } else {
            -1.0
        }
    }
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        rng.sample(StandardNormal)
    }
    #[inline]
    fn div(self, other: Self) -> Self {
        self / other
    }
}

impl Scalar for Complex64 {
    const FIELD: Field = Field::Complex;
    const REAL_DIM: usize = 2;

    #[inline]
    fn modulus(self) -> f64 {
        self.norm()
    }
    #[inline]
    fn scale(self, r: f64) -> Self {
        self * r
    }
    #[inline]
    fn conj(self) -> Self {
        Complex64::conj(&self)
    }
    #[inline]
    fn re(self) -> f64 {
        self.re
    }
    #[inline]
    fn im(self) -> f64 {
        self.im
    }
    #[inline]
    fn from_re(re: f64) -> Self {
        Complex64::new(re, 0.0)
    }
    fn from_parts(parts: &[f64]) -> Self {
        Complex64::new(parts[0], parts[1])
    }
    fn cis(theta: f64) -> Self {
        Complex64::new(theta.cos(), theta.sin())
    }
    fn gaussian<R: Rng + ?Sized>(rng: &mut R) -> Self {
        let re: f64 = rng.sample(StandardNormal);
        let im: f64 = rng.sample(StandardNormal);
        Complex64::new(re, im) * std::f64::consts::FRAC_1_SQRT_2
    }
    #[inline]
    fn div(self, other: Self) -> Self {
        self / other
    }
}

/// Unit scalar in the direction of `z` (1 when `z` vanishes).
pub fn phase_of<S: Scalar>(z: S) -> S {
    let m = z.modulus();
    if m == 0.0 {
        S::one()
    } else {
        z.scale(1.0 / m)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn complex_gaussian_has_unit_second_moment() {
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let n = 200_000;
        let s: f64 = (0..n).map(|_| Complex64::gaussian(&mut rng).norm_sqr()).sum();
        assert!((s / n as f64 - 1.0).abs() < 0.01);
    }

    #[test]
    fn real_cis_is_a_sign() {
        assert_eq!(f64::cis(0.0), 1.0);
        assert_eq!(f64::cis(std::f64::consts::PI), -1.0);
    }

    #[test]
    fn parts_round_trip() {
        let z = Complex64::new(0.25, -3.5);
        assert_eq!(Complex64::from_parts(&z.to_parts()), z);
        assert_eq!(f64::from_parts(&1.5f64.to_parts()), 1.5);
    }
}
