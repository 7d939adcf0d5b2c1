//! Explicit subspace families.

mod functionals;
mod pr_not_spr;
mod rademacher;
mod random;
mod scattered;
mod threed;

use serde::{Deserialize, Serialize};

pub use functionals::{
    apply, dual_norm, embed_with_functionals, linfty_spr_embed, norming_functional, supporting_functional, LinftyEmbedding, CASE_SPLIT,
};
pub use pr_not_spr::{cantor, dyadic, matching_sign_patterns, pair_atom, pr_not_spr, psi};
pub use rademacher::{rademacher_span, rademacher_spike, rademacher_spike_l2, spike_atoms, spike_gap};
pub use random::{empirical_cf, gaussian_span, integrability_warning, q_stable_span, symmetric_stable, OVERSAMPLING};
pub use scattered::{even_atom, odd_atom, scattered_ck_basis};
pub use threed::{example_3d, example_3d_linfty, extreme_point_bound, extreme_points, norm_3d};

use crate::error::Result;
use crate::json::AnySubspace;
use crate::space::{NormSpec, Subspace};

/// Parameters of a construction that needs no input file.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "kebab-case")]
pub enum Recipe {
    Gaussian {
        n: usize,
        m: usize,
        seed: u64,
        p: f64,
    },
    QStable {
        q: f64,
        n: usize,
        m: usize,
        seed: u64,
        p: f64,
    },
    Rademacher {
        n: usize,
        resolution: usize,
        p: f64,
    },
    RademacherSpike {
        p: f64,
        n: usize,
        resolution: usize,
    },
    RademacherSpikeL2 {
        n: usize,
        resolution: usize,
    },
    PrNotSpr {
        n: usize,
    },
    Threed,
    /// [`Recipe::Threed`] embedded in `ℓ_∞^6` through its extreme points.
    ThreedLinfty,
    ScatteredCk {
        n: usize,
    },
}

impl Recipe {
    pub fn name(&self) -> &'static str {
        match self {
            Recipe::Gaussian { .. } => "gaussian",
            Recipe::QStable { .. } => "q-stable",
            Recipe::Rademacher { .. } => "rademacher",
            Recipe::RademacherSpike { .. } => "rademacher-spike",
            Recipe::RademacherSpikeL2 { .. } => "rademacher-spike-l2",
            Recipe::PrNotSpr { .. } => "pr-not-spr",
            Recipe::Threed => "threed",
            Recipe::ThreedLinfty => "threed-linfty",
            Recipe::ScatteredCk { .. } => "scattered-ck",
        }
    }

    pub fn build(&self) -> Result<Subspace<f64>> {
        match *self {
            Recipe::Gaussian { n, m, seed, p } => gaussian_span(n, m, seed, NormSpec::Lp { p }),
            Recipe::QStable { q, n, m, seed, p } => q_stable_span(q, n, m, seed, p),
            Recipe::Rademacher { n, resolution, p } => rademacher_span(n, resolution, NormSpec::Lp { p }),
            Recipe::RademacherSpike { p, n, resolution } => rademacher_spike(p, n, resolution),
            Recipe::RademacherSpikeL2 { n, resolution } => rademacher_spike_l2(n, resolution),
            Recipe::PrNotSpr { n } => pr_not_spr(n),
            Recipe::Threed => Ok(example_3d()?.0),
            Recipe::ThreedLinfty => example_3d_linfty(),
            Recipe::ScatteredCk { n } => scattered_ck_basis(n),
        }
    }

    pub fn build_any(&self) -> Result<AnySubspace> {
        Ok(AnySubspace::Real(self.build()?))
    }
}
