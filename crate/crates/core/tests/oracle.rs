use std::sync::Arc;

use rand::Rng;
use spr_core::metrics::{certify, CertifyOptions};
use spr_core::oracle::{grid_disjointness_min, grid_spr_sup, normal_cdf, quantile_oracle, Distribution, REAL_STEP};
use spr_core::search::rng_for;
use spr_core::{AtomSpace, Budget, Field, NormSpec, Subspace};

fn random_plane(space: &Arc<AtomSpace>, seed: u64) -> Subspace<f64> {
    let mut rng = rng_for(seed, 0);
    let m = space.atom_count();
    let basis = (0..2).map(|_| (0..m).map(|_| rng.random_range(-1.0..1.0)).collect()).collect();
    Subspace::new(space.clone(), basis).unwrap()
}

#[test]
fn grid_agrees_with_sampler_on_random_planes() {
    let budget = Budget { samples: 4000, refine_starts: 6, refine_iters: 1500 };
    for (pi, norm) in [NormSpec::Lp { p: 1.0 }, NormSpec::Lp { p: 2.0 }, NormSpec::Lp { p: 4.0 }, NormSpec::Sup].into_iter().enumerate() {
        let space = Arc::new(AtomSpace::new(vec![1.0; 4], norm.clone(), Field::Real).unwrap());
        let mut worst: f64 = 0.0;
        for k in 0..100 {
            let e = random_plane(&space, 1000 * pi as u64 + k);
            let grid = grid_disjointness_min(&e, 5e-3).unwrap();
            let mut opts = CertifyOptions::new(budget.clone(), k);
            opts.no_grid = true;
            let sampled = certify(&e, &opts).unwrap().epsilon_upper;
            worst = worst.max((grid.grid_min - sampled).abs());
        }
        assert!(worst <= 1e-2, "{norm:?}: {worst}");
    }
}

#[test]
fn halving_the_step_moves_the_bound_by_at_most_one_cell() {
    let space = Arc::new(AtomSpace::new(vec![1.0; 4], NormSpec::Lp { p: 1.0 }, Field::Real).unwrap());
    for seed in 0..10 {
        let e = random_plane(&space, 77 + seed);
        let mut prev = grid_disjointness_min(&e, std::f64::consts::PI / 50.0).unwrap();
        for k in [100.0, 200.0, 400.0] {
            let next = grid_disjointness_min(&e, std::f64::consts::PI / k).unwrap();
            assert!(next.grid_min <= prev.grid_min + 1e-15);
            assert!(next.certified_lower - prev.certified_lower <= prev.lipschitz * prev.step + 1e-15);
            prev = next;
        }
    }
}

#[test]
fn ratio_grid_lies_in_the_interval() {
    let space = Arc::new(AtomSpace::new(vec![1.0; 3], NormSpec::Lp { p: 2.0 }, Field::Real).unwrap());
    for seed in 0..5 {
        let e = random_plane(&space, 500 + seed);
        let cert = grid_disjointness_min(&e, REAL_STEP).unwrap();
        let sup = grid_spr_sup(&e, REAL_STEP).unwrap().value;
        assert!(cert.certified_lower > 0.0);
        assert!(sup >= 1.0 / cert.grid_min - 1e-2, "{sup} vs {}", 1.0 / cert.grid_min);
        assert!(sup <= 2.0 / cert.certified_lower + 1e-2, "{sup} vs {}", 2.0 / cert.certified_lower);
    }
}

#[test]
fn complex_grid_is_labelled_coarse() {
    use num_complex::Complex64;
    let space = Arc::new(AtomSpace::new(vec![1.0; 3], NormSpec::Sup, Field::Complex).unwrap());
    let c = |a: f64, b: f64| Complex64::new(a, b);
    let e = Subspace::new(space, vec![vec![c(1.0, 0.0), c(0.0, 0.0), c(0.5, 0.5)], vec![c(0.0, 0.0), c(1.0, 0.0), c(0.5, -0.5)]]).unwrap();
    let g = grid_disjointness_min(&e, 0.05).unwrap();
    assert_eq!(g.label, "certified-coarse");
    assert!(g.certified_lower <= g.grid_min);
    assert!(grid_spr_sup(&e, 0.05).is_err());
}

#[test]
fn quantiles_invert_the_cdf() {
    for p in [0.01, 0.1, 0.3, 0.5, 0.625, 0.9, 0.975, 0.999] {
        let x = quantile_oracle(Distribution::Normal, p).unwrap();
        assert!((normal_cdf(x) - p).abs() < 1e-11, "{p}");
    }
    assert!((quantile_oracle(Distribution::Normal, 0.625).unwrap() - 0.31864).abs() < 1e-4);
    assert!((quantile_oracle(Distribution::Normal, 0.975).unwrap() - 1.95996).abs() < 1e-4);
    assert!(quantile_oracle(Distribution::Normal, 1.0).is_err());
}
