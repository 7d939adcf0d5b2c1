//! Subcommand implementations.

use std::io::Write;
use std::path::{Path, PathBuf};
use std::time::Instant;

use serde::Serialize;
use spr_core::json::{AnySubspace, SubspaceFile};
use spr_core::metrics::{certify, sandwich_check, spr_constant_lower, CertifyOptions, SandwichReport, SprCertificate};
use spr_core::oracle::grid_spr_sup;
use spr_core::perturbation::{one_sided_hausdorff, perturb_columns, perturbed_spr_bound, PerturbationReport};
use spr_core::witness::{tighten, verify_witness, WitnessReport};
use spr_core::{Budget, Field, NormSpec, Scalar, Subspace};

use crate::args::{CertifyArgs, ConstructArgs, PerturbArgs, SweepArgs, WitnessArgs};
use crate::error::CliError;
use crate::manifest::{seal, Envelope, FileDigest, Manifest};

/// Below this many samples a certificate is flagged as undersampled.
pub const MIN_SAMPLES: usize = 1000;

/// Where a command's text output goes.
pub struct Sinks<'a> {
    pub out: &'a mut dyn Write,
    pub err: &'a mut dyn Write,
}

impl Sinks<'_> {
    fn warn(&mut self, msg: &str) {
        let _ = writeln!(self.err, "warning: {msg}");
    }

    fn digest(&mut self, hex: &str) {
        let _ = writeln!(self.err, "digest {hex}");
    }
}

fn params<T: Serialize>(args: &T) -> serde_json::Value {
    serde_json::to_value(args).unwrap_or(serde_json::Value::Null)
}

fn load(path: &Path) -> Result<(AnySubspace, FileDigest), CliError> {
    let bytes = std::fs::read(path).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let text = std::str::from_utf8(&bytes).map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    let file = SubspaceFile::from_json(text).map_err(CliError::input)?;
    let e = file.into_subspace().map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    Ok((e, FileDigest::of(path, &bytes)))
}

fn write_to(path: Option<&PathBuf>, text: &str, sinks: &mut Sinks) -> Result<(), CliError> {
    match path {
        Some(p) => std::fs::write(p, text).map_err(|e| CliError::Input(format!("{}: {e}", p.display()))),
        None => sinks.out.write_all(text.as_bytes()).map_err(CliError::from),
    }
}

fn elapsed_ms(start: Instant) -> u64 {
    start.elapsed().as_millis() as u64
}

/// Seals the manifest, then writes `{manifest, report}` and prints the digest.
fn emit<T: Serialize>(
    mut manifest: Manifest,
    report: &T,
    out: Option<&PathBuf>,
    start: Instant,
    sinks: &mut Sinks,
) -> Result<(), CliError> {
    let digest = seal(&mut manifest, report)?;
    manifest.wall_time_ms = elapsed_ms(start);
    let text = serde_json::to_string_pretty(&Envelope { manifest: &manifest, report }).map_err(|e| CliError::Numerical(e.to_string()))?;
    write_to(out, &(text + "\n"), sinks)?;
    sinks.digest(&digest);
    Ok(())
}

fn check_grid(step: Option<f64>) -> Result<(), CliError> {
    match step {
        Some(s) if !(s.is_finite() && s > 0.0) => Err(CliError::Usage(format!("--grid must be a positive step, got {s}"))),
        _ => Ok(()),
    }
}

fn check_budget(budget: &Budget, sinks: &mut Sinks) {
    if budget.samples < MIN_SAMPLES {
        sinks.warn(&format!("{} samples is below {MIN_SAMPLES}; sampled bounds may be loose", budget.samples));
    }
}

pub fn construct(args: &ConstructArgs, sinks: &mut Sinks) -> Result<(), CliError> {
    let start = Instant::now();
    let recipe = args.variant.recipe(args.seed)?;
    let e = recipe.build()?;
    let mut file = SubspaceFile::from_subspace(&e);
    let mut manifest = Manifest::new("construct", params(&recipe), Some(args.seed), vec![]);
    let digest = seal(&mut manifest, &file)?;
    manifest.wall_time_ms = elapsed_ms(start);
    file.manifest = Some(params(&manifest));
    write_to(args.out.as_ref(), &(file.to_json() + "\n"), sinks)?;
    sinks.digest(&digest);
    Ok(())
}

/// A certificate with the optional two-sided check.
#[derive(Serialize)]
pub struct CertifyReport {
    #[serde(flatten)]
    pub certificate: SprCertificate,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub sandwich: Option<SandwichReport>,
}

fn certify_span<S: Scalar>(e: &Subspace<S>, args: &CertifyArgs, sinks: &mut Sinks) -> Result<CertifyReport, CliError> {
    let mut opts = CertifyOptions::new(args.budget.budget(), args.seed);
    opts.grid_step = args.grid;
    opts.no_grid = args.grid.is_none();
    let cert = certify(e, &opts)?;
    let sandwich = match (args.grid, cert.epsilon_lower) {
        (Some(step), Some(_)) => {
            let sampled = if S::FIELD == Field::Real && e.dim() == 2 {
                grid_spr_sup(e, step)?.value
            } else {
                spr_constant_lower(e, &opts.budget, args.seed)?.value
            };
            Some(sandwich_check(&cert, sampled.max(cert.spr_lower))?)
        }
        (Some(_), None) => {
            sinks.warn(&format!("no grid oracle for a {}-dim span; reporting sampled bounds only", e.dim()));
            None
        }
        _ => None,
    };
    Ok(CertifyReport { certificate: cert, sandwich })
}

pub fn certify_cmd(args: &CertifyArgs, sinks: &mut Sinks) -> Result<(), CliError> {
    let start = Instant::now();
    check_grid(args.grid)?;
    check_budget(&args.budget.budget(), sinks);
    let (e, digest) = load(&args.input)?;
    let report = match &e {
        AnySubspace::Real(e) => certify_span(e, args, sinks)?,
        AnySubspace::Complex(e) => certify_span(e, args, sinks)?,
    };
    let manifest = Manifest::new("certify", params(args), Some(args.seed), vec![digest]);
    emit(manifest, &report, args.out.as_ref(), start, sinks)
}

fn coefficients<S: Scalar>(e: &Subspace<S>, args: &WitnessArgs) -> Result<(Vec<S>, Vec<S>), CliError> {
    let n = e.dim();
    if let (Some(f), Some(g)) = (&args.f, &args.g) {
        if f.len() != n || g.len() != n {
            return Err(CliError::Usage(format!("--f and --g need {n} coefficients each")));
        }
        let lift = |v: &[f64]| v.iter().map(|&x| S::from_re(x)).collect::<Vec<S>>();
        return Ok((lift(f), lift(g)));
    }
    let [i, j] = args.pair[..] else {
        return Err(CliError::Usage(format!("--pair needs exactly two indices, got {:?}", args.pair)));
    };
    if i >= n || j >= n || i == j {
        return Err(CliError::Usage(format!("--pair needs two distinct indices below {n}, got {i},{j}")));
    }
    let unit = |k: usize| (0..n).map(|l| if l == k { S::one() } else { S::zero() }).collect::<Vec<S>>();
    Ok((unit(i), unit(j)))
}

fn witness_span<S: Scalar>(e: &Subspace<S>, args: &WitnessArgs) -> Result<WitnessReport, CliError> {
    let (a, b) = coefficients(e, args)?;
    let (f, g) = (e.element(&a), e.element(&b));
    let w = tighten(&f, &g)?;
    let slacks = verify_witness(&w, &f, &g);
    Ok(WitnessReport::new(&w, slacks))
}

pub fn witness(args: &WitnessArgs, sinks: &mut Sinks) -> Result<(), CliError> {
    let start = Instant::now();
    let (e, digest) = load(&args.input)?;
    let report = match &e {
        AnySubspace::Real(e) => witness_span(e, args)?,
        AnySubspace::Complex(e) => witness_span(e, args)?,
    };
    let manifest = Manifest::new("witness", params(args), None, vec![digest]);
    emit(manifest, &report, args.out.as_ref(), start, sinks)
}

/// Perturbation bound with the constant it was derived from.
#[derive(Serialize)]
pub struct PerturbReport {
    #[serde(flatten)]
    pub bound: PerturbationReport,
    /// SPR constant used for E.
    pub c: f64,
    /// `"given"` or `"certified"`.
    pub c_source: &'static str,
}

fn perturb_span<S: Scalar>(e: &Subspace<S>, f: &Subspace<S>, args: &PerturbArgs) -> Result<PerturbReport, CliError> {
    let budget = args.budget.budget();
    let (c, c_source) = match args.c {
        Some(c) => (c, "given"),
        None => {
            let mut opts = CertifyOptions::new(budget, args.seed);
            opts.grid_step = args.grid;
            let cert = certify(e, &opts)?;
            match cert.epsilon_lower {
                Some(lo) if lo > 0.0 => (2.0 / lo, "certified"),
                _ => return Err(CliError::Numerical("no positive certified lower bound on the meet constant of E; pass --c".into())),
            }
        }
    };
    let d = one_sided_hausdorff(e, f, &budget, args.seed)?;
    Ok(PerturbReport { bound: perturbed_spr_bound(c, d)?, c, c_source })
}

pub fn perturb(args: &PerturbArgs, sinks: &mut Sinks) -> Result<(), CliError> {
    let start = Instant::now();
    check_grid(args.grid)?;
    if let Some(c) = args.c {
        if !(c >= 1.0 && c.is_finite()) {
            return Err(CliError::Usage(format!("--c must be a finite constant >= 1, got {c}")));
        }
    }
    check_budget(&args.budget.budget(), sinks);
    let (e, digest) = load(&args.input)?;
    let mut inputs = vec![digest];
    let f = match (&args.target, args.epsilon) {
        (Some(path), _) => {
            let (f, digest) = load(path)?;
            inputs.push(digest);
            f
        }
        (None, Some(eps)) => match &e {
            AnySubspace::Real(e) => AnySubspace::Real(perturb_columns(e, eps, args.seed)?),
            AnySubspace::Complex(e) => AnySubspace::Complex(perturb_columns(e, eps, args.seed)?),
        },
        (None, None) => return Err(CliError::Usage("give --target or --epsilon".into())),
    };
    if let Some(path) = &args.save_target {
        std::fs::write(path, f.to_file().to_json() + "\n").map_err(|e| CliError::Input(format!("{}: {e}", path.display())))?;
    }
    let report = match (&e, &f) {
        (AnySubspace::Real(e), AnySubspace::Real(f)) => perturb_span(e, f, args)?,
        (AnySubspace::Complex(e), AnySubspace::Complex(f)) => perturb_span(e, f, args)?,
        _ => return Err(CliError::Input("E and F have different scalar fields".into())),
    };
    let manifest = Manifest::new("perturb", params(args), Some(args.seed), inputs);
    emit(manifest, &report, args.out.as_ref(), start, sinks)
}

/// One CSV row of a sweep.
#[derive(Clone, Debug, Serialize)]
pub struct SweepRow {
    pub variant: String,
    pub params: String,
    pub r: f64,
    pub epsilon_upper: String,
    pub epsilon_lower: String,
    pub spr_lower: String,
    pub method: String,
    pub seed: u64,
}

fn number(v: f64) -> String {
    if v.is_finite() {
        format!("{v}")
    } else if v.is_nan() {
        "nan".into()
    } else if v > 0.0 {
        "inf".into()
    } else {
        "-inf".into()
    }
}

fn sweep_span<S: Scalar>(e: &Subspace<S>, args: &SweepArgs, label: (&str, &str)) -> Result<Vec<SweepRow>, CliError> {
    let budget = args.budget.budget();
    let mut rows = Vec::with_capacity(args.r.len());
    for &r in &args.r {
        let er = e.with_norm(NormSpec::Lp { p: r })?;
        let mut opts = CertifyOptions::new(budget, args.seed);
        opts.grid_step = args.grid;
        opts.no_grid = args.grid.is_none();
        let cert = certify(&er, &opts)?;
        let spr = cert.spr_lower.max(spr_constant_lower(&er, &budget, args.seed)?.value);
        rows.push(SweepRow {
            variant: label.0.to_string(),
            params: label.1.to_string(),
            r,
            epsilon_upper: number(cert.epsilon_upper),
            epsilon_lower: cert.epsilon_lower.map(number).unwrap_or_default(),
            spr_lower: number(spr),
            method: cert.method.as_str().to_string(),
            seed: args.seed,
        });
    }
    Ok(rows)
}

pub fn sweep(args: &SweepArgs, sinks: &mut Sinks) -> Result<(), CliError> {
    let start = Instant::now();
    check_grid(args.grid)?;
    if let Some(r) = args.r.iter().find(|r| !(r.is_finite() && **r >= 1.0)) {
        return Err(CliError::Usage(format!("every r must be a finite exponent >= 1, got {r}")));
    }
    check_budget(&args.budget.budget(), sinks);
    let (e, inputs, variant, label) = match &args.input {
        Some(path) => {
            let (e, digest) = load(path)?;
            let label = format!("sha256={}", digest.sha256);
            (e, vec![digest], "file".to_string(), label)
        }
        None => {
            let recipe = args.variant.recipe(args.seed)?;
            let label = serde_json::to_string(&recipe).map_err(|e| CliError::Numerical(e.to_string()))?;
            (recipe.build_any()?, vec![], recipe.name().to_string(), label)
        }
    };
    let rows = match &e {
        AnySubspace::Real(e) => sweep_span(e, args, (&variant, &label))?,
        AnySubspace::Complex(e) => sweep_span(e, args, (&variant, &label))?,
    };
    let mut w = csv::Writer::from_writer(Vec::new());
    for row in &rows {
        w.serialize(row).map_err(|e| CliError::Numerical(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| CliError::Numerical(e.to_string()))?;
    let text = String::from_utf8(bytes).map_err(|e| CliError::Numerical(e.to_string()))?;
    let mut manifest = Manifest::new("sweep", params(args), Some(args.seed), inputs);
    let digest = seal(&mut manifest, &rows)?;
    manifest.wall_time_ms = elapsed_ms(start);
    let manifest_text = serde_json::to_string_pretty(&manifest).map_err(|e| CliError::Numerical(e.to_string()))? + "\n";
    write_to(args.out.as_ref(), &text, sinks)?;
    match &args.out {
        Some(path) => {
            let mut side = path.clone().into_os_string();
            side.push(".manifest.json");
            std::fs::write(&side, manifest_text).map_err(|e| CliError::Input(e.to_string()))?;
        }
        None => {
            let _ = sinks.err.write_all(manifest_text.as_bytes());
        }
    }
    sinks.digest(&digest);
    Ok(())
}
