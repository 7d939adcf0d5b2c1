//! A sup-normed span that does phase retrieval but not stable phase retrieval.

use std::sync::Arc;

use crate::error::{Result, SprError};
use crate::scalar::Field;
use crate::space::{AtomSpace, NormSpec, Subspace};

/// Cantor pairing on 1-based indices: `(i+j)(i+j+1)/2 + j`.
pub fn cantor(i: usize, j: usize) -> usize {
    (i + j) * (i + j + 1) / 2 + j
}

/// `max(φ(i,j), φ(j,i))`.
pub fn psi(i: usize, j: usize) -> usize {
    cantor(i, j).max(cantor(j, i))
}

/// `2^{−4k}` built from its exponent bits.
pub fn dyadic(k: usize) -> f64 {
    f64::from_bits(((1023 - 4 * k) as u64) << 52)
}

/// Atom index of `v_{i,j}` (`i < j`, 1-based) after the `n` atoms `u_i`.
pub fn pair_atom(n: usize, i: usize, j: usize) -> usize {
    let (i, j) = (i.min(j), i.max(j));
    // Pairs (a, b) with a < i come first.
    let before: usize = (1..i).map(|a| n - a).sum();
    n + before + (j - i - 1)
}

/// `f_i = u_i + Σ_{j≠i} 2^{−4φ(i,j)} v_{i,j}` over atoms `u_1..u_n, v_{1,2}, ..., v_{n−1,n}`.
pub fn pr_not_spr(n: usize) -> Result<Subspace<f64>> {
    if n < 2 {
        return Err(SprError::InvalidParameter(format!("need at least 2 vectors, got {n}")));
    }
    if 4 * cantor(n - 1, n).max(cantor(n, n - 1)) >= 1022 {
        return Err(SprError::InvalidParameter(format!("n = {n} underflows the coefficients")));
    }
    let atoms = n + n * (n - 1) / 2;
    let space = Arc::new(AtomSpace::new(vec![1.0; atoms], NormSpec::Sup, Field::Real)?);
    let basis = (1..=n)
        .map(|i| {
            let mut f = vec![0.0; atoms];
            f[i - 1] = 1.0;
            for j in (1..=n).filter(|&j| j != i) {
                f[pair_atom(n, i, j)] = dyadic(cantor(i, j));
            }
            f
        })
        .collect();
    Subspace::new(space, basis)
}

/// Sign patterns `s` with `|Σ s_i a_i f_i| = |Σ a_i f_i|` on every atom.
///
/// Phase retrieval in the real span means only the two constant patterns survive.
pub fn matching_sign_patterns(e: &Subspace<f64>, a: &[f64]) -> Vec<Vec<f64>> {
    let n = e.dim();
    let target: Vec<f64> = e.combine(a).iter().map(|v| v.abs()).collect();
    (0u64..1 << n)
        .filter_map(|mask| {
            let s: Vec<f64> = (0..n).map(|k| if mask >> k & 1 == 1 { -1.0 } else { 1.0 }).collect();
            let b: Vec<f64> = s.iter().zip(a).map(|(x, y)| x * y).collect();
            let g = e.combine(&b);
            let same = g.iter().zip(&target).all(|(x, t)| (x.abs() - t).abs() <= 1e-12 * t.max(f64::MIN_POSITIVE));
            same.then_some(s)
        })
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn pair_atoms_are_a_bijection() {
        let n = 5;
        let mut seen: Vec<usize> = Vec::new();
        for i in 1..=n {
            for j in i + 1..=n {
                seen.push(pair_atom(n, i, j));
            }
        }
        seen.sort();
        assert_eq!(seen, (n..n + n * (n - 1) / 2).collect::<Vec<_>>());
    }

    #[test]
    fn dyadic_is_exact() {
        assert_eq!(dyadic(8), 2f64.powi(-32));
        assert_eq!(dyadic(72), 2f64.powi(-288));
    }

    #[test]
    fn meets_are_dyadic() {
        let e = pr_not_spr(4).unwrap();
        let sp = e.ambient();
        for i in 1..=4 {
            for j in i + 1..=4 {
                assert_eq!(sp.meet_norm_of(&e.basis()[i - 1], &e.basis()[j - 1]), dyadic(psi(i, j)));
            }
        }
    }

    #[test]
    fn too_small_is_rejected() {
        assert!(pr_not_spr(1).is_err());
    }
}
