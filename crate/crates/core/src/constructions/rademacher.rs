//! Rademacher functions on a dyadic grid of `[0, 1]`, optionally with spikes on `[1, 2]`.

use std::sync::Arc;

use crate::error::{Result, SprError};
use crate::scalar::Field;
use crate::space::{AtomSpace, NormSpec, Subspace};

/// `r_j(k) = (−1)^{floor(k 2^j / res)}` on atom `k < res`.
fn rademacher(j: usize, k: usize, res: usize) -> f64 {
    if ((k << j) / res) % 2 == 0 {
        1.0
    } else {
        -1.0
    }
}

fn check_resolution(n: usize, res: usize, need: usize) -> Result<()> {
    if n == 0 {
        return Err(SprError::InvalidParameter("at least one generator is required".into()));
    }
    if !res.is_power_of_two() {
        return Err(SprError::InvalidParameter(format!("resolution {res} is not a power of two")));
    }
    if n >= 60 || res < 1usize << need {
        return Err(SprError::InvalidParameter(format!("resolution {res} too coarse for {n} generators")));
    }
    Ok(())
}

/// `r_1..r_n` on `res` atoms of mass `1/res`.
pub fn rademacher_span(n: usize, res: usize, norm: NormSpec) -> Result<Subspace<f64>> {
    check_resolution(n, res, n)?;
    let space = Arc::new(AtomSpace::uniform(res, 1.0, norm, Field::Real)?);
    let basis = (1..=n).map(|j| (0..res).map(|k| rademacher(j, k, res)).collect()).collect();
    Subspace::new(space, basis)
}

/// Atom range of the spike of `g_j` on the second half: `[1 + 2^{−j}, 1 + 2^{−j+1})`.
pub fn spike_atoms(j: usize, res: usize) -> std::ops::Range<usize> {
    (res + (res >> j))..(res + (res >> (j - 1)))
}

/// `g_j = r_j + 2^{j/p} 1_{[1+2^{−j}, 1+2^{−j+1})}` for `j = 1..n` on `[0, 2]` with `2·res`
/// atoms of mass `1/res`, measured in `L_p`.
pub fn rademacher_spike(p: f64, n: usize, res: usize) -> Result<Subspace<f64>> {
    if !(p >= 1.0 && p.is_finite()) {
        return Err(SprError::Domain(format!("exponent must be finite and >= 1, got {p}")));
    }
    check_resolution(n, res, n + 1)?;
    let space = Arc::new(AtomSpace::uniform(2 * res, 2.0, NormSpec::Lp { p }, Field::Real)?);
    let basis = (1..=n)
        .map(|j| {
            let mut g: Vec<f64> = (0..res).map(|k| rademacher(j, k, res)).collect();
            g.resize(2 * res, 0.0);
            let h = 2f64.powf(j as f64 / p);
            for k in spike_atoms(j, res) {
                g[k] = h;
            }
            g
        })
        .collect();
    Subspace::new(space, basis)
}

/// The `p = 2` family.
pub fn rademacher_spike_l2(n: usize, res: usize) -> Result<Subspace<f64>> {
    rademacher_spike(2.0, n, res)
}

/// Closed form of `‖|g_i| − |g_j|‖_{L_q}` for the family built with exponent `p`:
/// the Rademacher parts have equal moduli, so only the two spikes remain.
pub fn spike_gap(p: f64, q: f64, i: usize, j: usize) -> f64 {
    let term = |k: usize| 2f64.powf(q * k as f64 / p - k as f64);
    (term(i) + term(j)).powf(1.0 / q)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn resolution_checks() {
        assert!(rademacher_spike(4.0, 10, 3000).is_err());
        assert!(rademacher_spike(4.0, 10, 1024).is_err());
        assert!(rademacher_spike(4.0, 10, 2048).is_ok());
    }

    #[test]
    fn spikes_have_unit_mass() {
        let e = rademacher_spike(4.0, 6, 256).unwrap();
        let w = e.ambient().weights()[0];
        for j in 1..=6 {
            let g = &e.basis()[j - 1];
            let mass: f64 = spike_atoms(j, 256).map(|k| w * g[k].powi(4)).sum();
            assert!((mass - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn rademacher_parts_are_orthonormal() {
        let e = rademacher_span(5, 64, NormSpec::Lp { p: 2.0 }).unwrap();
        for a in e.basis() {
            for b in e.basis() {
                let ip: f64 = a.iter().zip(b).map(|(x, y)| x * y).sum::<f64>() / 64.0;
                assert!(ip == 0.0 || ip == 1.0);
            }
        }
    }

    #[test]
    fn closed_form_gap_matches_direct_evaluation() {
        let e = rademacher_spike(4.0, 9, 1024).unwrap();
        let sp = e.ambient().with_norm(NormSpec::Lp { p: 2.0 }).unwrap();
        let direct = sp.gap_norm_of(&e.basis()[7], &e.basis()[8]);
        assert!((direct - spike_gap(4.0, 2.0, 8, 9)).abs() < 1e-12);
    }
}
