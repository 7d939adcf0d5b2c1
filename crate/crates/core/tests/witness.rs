use std::sync::Arc;

use num_complex::Complex64;
use rand::Rng;
use rand_chacha::ChaCha8Rng;
use spr_core::search::rng_for;
use spr_core::witness::{hilbert_surrogate, tighten, verify_witness, WitnessReport, K_SLACK};
use spr_core::{AtomSpace, Field, LatticeVector, NormSpec, Scalar};

const SQRT2: f64 = std::f64::consts::SQRT_2;

/// Two random elements of a random `d`-dimensional subspace of `m` atoms.
fn random_pair(rng: &mut ChaCha8Rng, space: &Arc<AtomSpace>) -> (LatticeVector<f64>, LatticeVector<f64>) {
    let m = space.atom_count();
    let d = rng.random_range(2..=4);
    let basis: Vec<Vec<f64>> = (0..d).map(|_| (0..m).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
    let mut pick = || {
        let a: Vec<f64> = (0..d).map(|_| rng.random_range(-1.0..1.0)).collect();
        let v: Vec<f64> = (0..m).map(|t| (0..d).map(|k| a[k] * basis[k][t]).sum()).collect();
        LatticeVector::new(space.clone(), v).unwrap()
    };
    (pick(), pick())
}

/// Bisection for the first zero of `r ↦ ⟨f_r, g_r⟩_H` on `[0, ½]`.
fn bisect_r<S: Scalar>(w: &spr_core::witness::WitnessPair<S>) -> f64 {
    let h = |r: f64| {
        let (rs, one_r) = (S::from_re(r), S::from_re(1.0 - r));
        w.surrogate.inner([one_r, -(rs * w.lambda)], [-rs, w.lambda * one_r]).re()
    };
    if h(0.0) <= 0.0 {
        return 0.0;
    }
    let (mut lo, mut hi) = (0.0, 0.5);
    if h(hi) > 0.0 {
        return 0.5;
    }
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if h(mid) > 0.0 {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

#[test]
fn l2_pairs_have_unit_factor() {
    let space = Arc::new(AtomSpace::new(vec![0.125; 8], NormSpec::Lp { p: 2.0 }, Field::Real).unwrap());
    let mut rng = rng_for(31, 0);
    for _ in 0..1000 {
        let (f, g) = random_pair(&mut rng, &space);
        let w = tighten(&f, &g).unwrap();
        assert_eq!(w.k_factor, 1.0);
        let s = verify_witness(&w, &f, &g);
        assert!(s.min_slack() >= -1e-9, "{s:?}");
        // The phase distance is preserved exactly in a Hilbert space.
        assert!(s.phase_bound.abs() <= 1e-10 * (1.0 + f.norm() + g.norm()), "{s:?}");
        assert!(s.orthogonality <= 1e-9);
        assert!((w.r_star - bisect_r(&w)).abs() <= 1e-10);
    }
}

#[test]
fn polyhedral_pairs_satisfy_all_bounds() {
    let mut rng = rng_for(32, 0);
    for norm in [NormSpec::Lp { p: 1.0 }, NormSpec::Sup] {
        for n in [3, 4, 5] {
            let space = Arc::new(AtomSpace::new(vec![1.0; n], norm.clone(), Field::Real).unwrap());
            for _ in 0..80 {
                let (f, g) = random_pair(&mut rng, &space);
                let w = tighten(&f, &g).unwrap();
                assert!(w.k_factor <= SQRT2 * (1.0 + K_SLACK) && w.k_factor >= 1.0);
                let s = verify_witness(&w, &f, &g);
                assert!(s.min_slack() >= -1e-8, "{norm:?} n={n}: {s:?}");
                assert!(s.orthogonality <= 1e-9);
                assert!((w.r_star - bisect_r(&w)).abs() <= 1e-10);
                assert!(w.surrogate.min_eigenvalue() > 0.0);
            }
        }
    }
}

#[test]
fn surrogate_sandwiches_the_norm_on_a_test_circle() {
    let space = Arc::new(AtomSpace::new(vec![1.0; 4], NormSpec::Lp { p: 3.0 }, Field::Real).unwrap());
    let mut rng = rng_for(33, 0);
    for _ in 0..6 {
        let (f, g) = random_pair(&mut rng, &space);
        let sur = hilbert_surrogate(&f, &g).unwrap();
        for k in 0..3600 {
            // Offset from the fitting grid.
            let t = std::f64::consts::TAU * (k as f64 + 0.37) / 3600.0;
            let a = [t.cos(), t.sin()];
            let x: Vec<f64> = f.entries().iter().zip(g.entries()).map(|(u, v)| a[0] * u + a[1] * v).collect();
            let (n, h) = (space.norm_of(&x), sur.norm(a));
            assert!(n <= h * (1.0 + 1e-6) && h <= sur.k_factor * n * (1.0 + 1e-6), "{n} {h} {}", sur.k_factor);
        }
    }
}

#[test]
fn modulus_gap_shrinks_pointwise_along_the_path() {
    let space = Arc::new(AtomSpace::new(vec![1.0; 5], NormSpec::Lp { p: 1.0 }, Field::Real).unwrap());
    let mut rng = rng_for(34, 0);
    for _ in 0..1000 {
        let (f, g) = random_pair(&mut rng, &space);
        let w = tighten(&f, &g).unwrap();
        let l = w.lambda;
        for step in 0..=5 {
            let r = 0.1 * step as f64;
            for (x, y) in f.entries().iter().zip(g.entries()) {
                let fr = (1.0 - r) * x - r * l * y;
                let gr = l * (1.0 - r) * y - r * x;
                assert!((fr.abs() - gr.abs()).abs() <= (x.abs() - y.abs()).abs() + 1e-10);
            }
        }
    }
}

#[test]
fn surrogate_phase_distance_is_constant_along_the_path() {
    let space = Arc::new(AtomSpace::new(vec![1.0; 4], NormSpec::Sup, Field::Real).unwrap());
    let mut rng = rng_for(35, 0);
    for _ in 0..200 {
        let (f, g) = random_pair(&mut rng, &space);
        let w = tighten(&f, &g).unwrap();
        let l = w.lambda;
        let base = w.surrogate.norm([1.0, -l]);
        for step in 0..=5 {
            let r = 0.1 * step as f64;
            let d = [(1.0 - r) + r, -r * l - l * (1.0 - r)];
            assert!((w.surrogate.norm(d) - base).abs() <= 1e-10 * base.max(1.0));
        }
    }
}

#[test]
fn complex_pairs_satisfy_all_bounds() {
    let mut rng = rng_for(36, 0);
    for norm in [NormSpec::Lp { p: 2.0 }, NormSpec::Lp { p: 1.0 }, NormSpec::Sup] {
        let space = Arc::new(AtomSpace::new(vec![1.0; 3], norm.clone(), Field::Complex).unwrap());
        for _ in 0..10 {
            let mut pick = || {
                let v: Vec<Complex64> = (0..3).map(|_| Complex64::new(rng.random_range(-1.0..1.0), rng.random_range(-1.0..1.0))).collect();
                LatticeVector::new(space.clone(), v).unwrap()
            };
            let (f, g) = (pick(), pick());
            let w = tighten(&f, &g).unwrap();
            let s = verify_witness(&w, &f, &g);
            assert!(s.min_slack() >= -1e-8, "{norm:?}: {s:?}");
            assert!(s.orthogonality <= 1e-9);
            assert!((w.r_star - bisect_r(&w)).abs() <= 1e-10);
        }
    }
}

#[test]
fn report_serializes_parts() {
    let space = Arc::new(AtomSpace::new(vec![1.0; 2], NormSpec::Lp { p: 2.0 }, Field::Real).unwrap());
    let f = LatticeVector::new(space.clone(), vec![1.0, 0.0]).unwrap();
    let g = LatticeVector::new(space, vec![0.0, 1.0]).unwrap();
    let w = tighten(&f, &g).unwrap();
    let rep = WitnessReport::new(&w, verify_witness(&w, &f, &g));
    assert_eq!(rep.r_star, 0.0);
    assert_eq!(rep.f_prime, vec![vec![1.0], vec![0.0]]);
    let json = serde_json::to_value(&rep).unwrap();
    for key in ["f_prime", "g_prime", "r_star", "k_factor", "slacks"] {
        assert!(json.get(key).is_some(), "{key}");
    }
}
