//! Command-line flags.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::Serialize;
use spr_core::constructions::Recipe;
use spr_core::Budget;

use crate::error::CliError;

#[derive(Debug, Parser)]
#[command(name = "spr-lab", version, about = "Stable phase retrieval constants of finite lattice subspaces")]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Build one of the explicit subspace families and write it as JSON.
    Construct(ConstructArgs),
    /// Bound the almost-disjointness and SPR constants of a subspace.
    Certify(CertifyArgs),
    /// Tighten a pair into an almost orthogonal witness pair.
    Witness(WitnessArgs),
    /// SPR constant of a perturbed subspace.
    Perturb(PerturbArgs),
    /// Re-certify a subspace under L_r for a list of exponents.
    Sweep(SweepArgs),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Variant {
    Gaussian,
    QStable,
    Rademacher,
    RademacherSpike,
    RademacherSpikeL2,
    PrNotSpr,
    Threed,
    ThreedLinfty,
    ScatteredCk,
}

/// Construction flags; which ones apply depends on the variant.
#[derive(Clone, Debug, Args, Serialize)]
pub struct VariantArgs {
    #[arg(long, value_enum)]
    pub variant: Option<Variant>,
    /// Number of basis vectors.
    #[arg(long, visible_alias = "N")]
    pub n: Option<usize>,
    /// Number of atoms (sampled families).
    #[arg(long)]
    pub m: Option<usize>,
    #[arg(long)]
    pub p: Option<f64>,
    #[arg(long)]
    pub q: Option<f64>,
    /// Atoms per unit interval (Rademacher families).
    #[arg(long)]
    pub resolution: Option<usize>,
}

impl VariantArgs {
    /// The recipe with defaults filled in. Flags that do not apply are rejected.
    pub fn recipe(&self, seed: u64) -> Result<Recipe, CliError> {
        let variant = self.variant.ok_or_else(|| CliError::Usage("--variant is required".into()))?;
        let allowed: &[&str] = match variant {
            Variant::Gaussian => &["n", "m", "p"],
            Variant::QStable => &["n", "m", "p", "q"],
            Variant::Rademacher => &["n", "resolution", "p"],
            Variant::RademacherSpike => &["n", "resolution", "p"],
            Variant::RademacherSpikeL2 => &["n", "resolution"],
            Variant::PrNotSpr | Variant::ScatteredCk => &["n"],
            Variant::Threed | Variant::ThreedLinfty => &[],
        };
        let given = [
            ("n", self.n.is_some()),
            ("m", self.m.is_some()),
            ("p", self.p.is_some()),
            ("q", self.q.is_some()),
            ("resolution", self.resolution.is_some()),
        ];
        if let Some((flag, _)) = given.iter().find(|(f, set)| *set && !allowed.contains(f)) {
            return Err(CliError::Usage(format!("--{flag} does not apply to this variant")));
        }
        Ok(match variant {
            Variant::Gaussian => Recipe::Gaussian { n: self.n.unwrap_or(3), m: self.m.unwrap_or(16_384), seed, p: self.p.unwrap_or(2.0) },
            Variant::QStable => Recipe::QStable {
                q: self.q.unwrap_or(1.5),
                n: self.n.unwrap_or(3),
                m: self.m.unwrap_or(16_384),
                seed,
                p: self.p.unwrap_or(1.0),
            },
            Variant::Rademacher => {
                Recipe::Rademacher { n: self.n.unwrap_or(4), resolution: self.resolution.unwrap_or(1024), p: self.p.unwrap_or(2.0) }
            }
            Variant::RademacherSpike => {
                Recipe::RademacherSpike { p: self.p.unwrap_or(4.0), n: self.n.unwrap_or(10), resolution: self.resolution.unwrap_or(4096) }
            }
            Variant::RademacherSpikeL2 => Recipe::RademacherSpikeL2 { n: self.n.unwrap_or(4), resolution: self.resolution.unwrap_or(1024) },
            Variant::PrNotSpr => Recipe::PrNotSpr { n: self.n.unwrap_or(6) },
            Variant::Threed => Recipe::Threed,
            Variant::ThreedLinfty => Recipe::ThreedLinfty,
            Variant::ScatteredCk => Recipe::ScatteredCk { n: self.n.unwrap_or(8) },
        })
    }
}

/// Sampling effort.
#[derive(Clone, Debug, Args, Serialize)]
pub struct BudgetArgs {
    /// Random candidates per search.
    #[arg(long, default_value_t = Budget::default().samples)]
    pub samples: usize,
    /// Candidates refined by Nelder–Mead.
    #[arg(long, default_value_t = Budget::default().refine_starts)]
    pub refine_starts: usize,
    /// Iterations per refinement.
    #[arg(long, default_value_t = Budget::default().refine_iters)]
    pub refine_iters: usize,
}

impl BudgetArgs {
    pub fn budget(&self) -> Budget {
        Budget { samples: self.samples, refine_starts: self.refine_starts, refine_iters: self.refine_iters }
    }
}

#[derive(Debug, Args, Serialize)]
pub struct ConstructArgs {
    #[command(flatten)]
    pub variant: VariantArgs,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Output file; stdout when absent.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct CertifyArgs {
    /// Subspace JSON.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Grid step in radians; enables the grid oracle and the sandwich check.
    #[arg(long)]
    pub grid: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct WitnessArgs {
    #[arg(long = "in")]
    pub input: PathBuf,
    /// Basis indices of the pair.
    #[arg(long, value_delimiter = ',', default_values_t = [0usize, 1])]
    pub pair: Vec<usize>,
    /// Real coefficients of f in the basis (overrides --pair).
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, requires = "g")]
    pub f: Option<Vec<f64>>,
    /// Real coefficients of g in the basis.
    #[arg(long, value_delimiter = ',', allow_negative_numbers = true, requires = "f")]
    pub g: Option<Vec<f64>>,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
#[command(group = clap::ArgGroup::new("source").required(true).args(["target", "epsilon"]))]
pub struct PerturbArgs {
    /// The unperturbed subspace E.
    #[arg(long = "in")]
    pub input: PathBuf,
    /// The perturbed subspace F.
    #[arg(long)]
    pub target: Option<PathBuf>,
    /// Build F by moving each basis column by this relative amount.
    #[arg(long)]
    pub epsilon: Option<f64>,
    /// Known SPR constant of E; otherwise 2/ε from a grid certificate.
    #[arg(long)]
    pub c: Option<f64>,
    /// Grid step for certifying E when --c is absent.
    #[arg(long)]
    pub grid: Option<f64>,
    /// Also write the generated F here.
    #[arg(long)]
    #[serde(skip)]
    pub save_target: Option<PathBuf>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SweepArgs {
    /// Subspace JSON; alternatively give --variant.
    #[arg(long = "in", conflicts_with = "variant")]
    pub input: Option<PathBuf>,
    #[command(flatten)]
    pub variant: VariantArgs,
    /// Exponents r of the L_r norms.
    #[arg(long, value_delimiter = ',', required = true)]
    pub r: Vec<f64>,
    #[arg(long)]
    pub grid: Option<f64>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[command(flatten)]
    pub budget: BudgetArgs,
    /// CSV file; stdout when absent. The manifest goes next to it.
    #[arg(long)]
    #[serde(skip)]
    pub out: Option<PathBuf>,
}
