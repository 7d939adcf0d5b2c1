//! Finite model of an isometric `ℓ_∞`-type sequence in `C(K)` for scattered `K`.

use std::sync::Arc;

use crate::error::{Result, SprError};
use crate::scalar::Field;
use crate::space::{AtomSpace, NormSpec, Subspace};

/// Atom index of `s_{1,2n−1}` (`n` 1-based).
pub fn odd_atom(n: usize) -> usize {
    n - 1
}

/// Atom index of `s_{j,2n}` (`j <= N+1`, `n <= N`, both 1-based).
pub fn even_atom(big_n: usize, j: usize, n: usize) -> usize {
    big_n + (n - 1) * (big_n + 1) + (j - 1)
}

/// Vectors `x^{(1)}..x^{(N)}`: `x^{(n)}` is 1 at `s_{1,2n−1}`, ½ on the block
/// `S_n = {s_{j,2n}}`, ½ at `s_{n,2i}` for `i < n`, and 0 elsewhere.
pub fn scattered_ck_basis(big_n: usize) -> Result<Subspace<f64>> {
    if big_n < 2 {
        return Err(SprError::InvalidParameter(format!("need N >= 2, got {big_n}")));
    }
    let atoms = big_n + big_n * (big_n + 1);
    let space = Arc::new(AtomSpace::new(vec![1.0; atoms], NormSpec::Sup, Field::Real)?);
    let basis = (1..=big_n)
        .map(|n| {
            let mut x = vec![0.0; atoms];
            x[odd_atom(n)] = 1.0;
            for j in 1..=big_n + 1 {
                x[even_atom(big_n, j, n)] = 0.5;
            }
            for i in 1..n {
                x[even_atom(big_n, n, i)] = 0.5;
            }
            x
        })
        .collect();
    Subspace::new(space, basis)
}
