//! Command-line front end. JSON lines go to `out`, summaries to `err`.
//!
//! Exit codes: 0 when every report passes, 1 when any fails, 2 on errors.

use std::io::Write;
use std::path::PathBuf;
use std::time::Instant;

use clap::{Args, Parser, Subcommand};
use serde::Serialize;

use crate::catalog::{verify_all, Catalog, DEFAULT_DEGREE};
use crate::error::{Error, Result};
use crate::operator::{identity_catalog, verify_operator_identity};
use crate::params::{ParameterMap, Symbol};
use crate::profiles::{Config, Profile};
use crate::quadrature::{
    check_all, check_or_report, default_points, default_tolerance, integral_by_id, integral_corrections, square_grid,
    QuadratureSpec,
};
use crate::report::{CheckMode, Settings, Status, TargetKind, VerificationReport};
use crate::scalar::parse_rational;
use crate::series::eval::{eval_double_series, eval_single_series, DEFAULT_MAX_DIAGONAL};
use crate::series::{FunctionRef, Kind};

pub const EXIT_PASS: i32 = 0;
pub const EXIT_FAIL: i32 = 1;
pub const EXIT_ERROR: i32 = 2;

#[derive(Debug, Parser)]
#[command(name = "humbert", about = "Humbert functions: evaluation and exact verification", version)]
struct Cli {
    /// JSON config with named profiles and an optional errata overlay.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Evaluate a function by its series.
    Eval(EvalArgs),
    /// Print the exact coefficient triangle of a function.
    Coeffs(CoeffArgs),
    /// Exact verification of formulas and operator identities.
    Verify(VerifyArgs),
    /// Compare integral representations with their series.
    IntegralCheck(IntegralArgs),
    /// Every failing as-printed target together with its corrected variant.
    Errata(ErrataArgs),
}

#[derive(Debug, Args)]
struct ParamFlags {
    /// Start from a named profile; explicit flags override it.
    #[arg(long)]
    profile: Option<String>,
    #[arg(long)]
    alpha: Option<String>,
    #[arg(long)]
    beta: Option<String>,
    #[arg(long)]
    gamma: Option<String>,
    #[arg(long)]
    gamma1: Option<String>,
    #[arg(long)]
    gamma2: Option<String>,
    #[arg(long)]
    beta1: Option<String>,
    #[arg(long)]
    beta2: Option<String>,
    #[arg(long)]
    alpha1: Option<String>,
    #[arg(long)]
    alpha2: Option<String>,
    #[arg(long)]
    eps: Option<String>,
    #[arg(long)]
    eps1: Option<String>,
    #[arg(long)]
    eps2: Option<String>,
}

impl ParamFlags {
    fn resolve(&self, cfg: &Config) -> Result<ParameterMap> {
        let mut map = match &self.profile {
            Some(name) => cfg.profile(name)?.values().clone(),
            None => ParameterMap::new(),
        };
        let flags = [
            (Symbol::Alpha, &self.alpha),
            (Symbol::Beta, &self.beta),
            (Symbol::Gamma, &self.gamma),
            (Symbol::Gamma1, &self.gamma1),
            (Symbol::Gamma2, &self.gamma2),
            (Symbol::Beta1, &self.beta1),
            (Symbol::Beta2, &self.beta2),
            (Symbol::Alpha1, &self.alpha1),
            (Symbol::Alpha2, &self.alpha2),
            (Symbol::Eps, &self.eps),
            (Symbol::Eps1, &self.eps1),
            (Symbol::Eps2, &self.eps2),
        ];
        for (sym, value) in flags {
            if let Some(text) = value {
                map.set(sym, parse_rational(text)?);
            }
        }
        Ok(map)
    }
}

#[derive(Debug, Args)]
struct EvalArgs {
    /// phi1, phi2, phi3, psi1, psi2, xi1, xi2, 2f1, 1f1 or 0f1.
    kind: String,
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long, allow_hyphen_values = true)]
    x: f64,
    #[arg(long, default_value_t = 0.0, allow_hyphen_values = true)]
    y: f64,
    #[arg(long, default_value_t = 1e-16)]
    tol: f64,
}

#[derive(Debug, Args)]
struct CoeffArgs {
    kind: String,
    #[command(flatten)]
    params: ParamFlags,
    #[arg(long, default_value_t = DEFAULT_DEGREE)]
    n: usize,
}

#[derive(Debug, Args)]
struct VerifyArgs {
    #[command(subcommand)]
    scope: Scope,
}

#[derive(Debug, Args)]
struct VerifyOpts {
    #[arg(long, default_value = "generic-A")]
    profile: String,
    #[arg(long, default_value_t = DEFAULT_DEGREE)]
    n: usize,
    /// Catalog of corrected entries checked alongside the printed ones.
    #[arg(long)]
    overlay: Option<PathBuf>,
}

#[derive(Debug, Subcommand)]
enum Scope {
    /// One decomposition formula from the catalog.
    Formula {
        id: String,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// One operator identity.
    Identity {
        id: String,
        #[command(flatten)]
        opts: VerifyOpts,
    },
    /// Every formula and identity.
    All {
        #[command(flatten)]
        opts: VerifyOpts,
    },
}

#[derive(Debug, Args)]
struct QuadFlags {
    #[arg(long, default_value_t = QuadratureSpec::default().start_level)]
    start_level: u32,
    #[arg(long, default_value_t = QuadratureSpec::default().max_level)]
    max_level: u32,
    /// Relative change between levels that stops refinement.
    #[arg(long, default_value_t = QuadratureSpec::default().tol)]
    quad_tol: f64,
}

impl QuadFlags {
    fn spec(&self) -> QuadratureSpec {
        QuadratureSpec { start_level: self.start_level, max_level: self.max_level, tol: self.quad_tol }
    }
}

#[derive(Debug, Args)]
struct IntegralArgs {
    /// A representation id or `all`.
    id: String,
    #[arg(long, default_value = "integral-A")]
    profile: String,
    /// `NxN` on [0.05, 0.35]^2, or explicit points `x,y;x,y`.
    #[arg(long)]
    grid: Option<String>,
    /// Comparison tolerance; defaults to 1e-8 for the base five, 1e-7 otherwise.
    #[arg(long)]
    tol: Option<f64>,
    /// Also check the corrected variants.
    #[arg(long)]
    with_corrections: bool,
    #[command(flatten)]
    quad: QuadFlags,
}

#[derive(Debug, Args)]
struct ErrataArgs {
    #[arg(long, default_value = "generic-A")]
    profile: String,
    #[arg(long, default_value = "integral-A")]
    integral_profile: String,
    #[arg(long, default_value_t = DEFAULT_DEGREE)]
    n: usize,
    #[arg(long)]
    overlay: Option<PathBuf>,
}

/// Parses `NxN` or `x,y;x,y;...`.
pub fn parse_grid(text: &str) -> Result<Vec<(f64, f64)>> {
    let bad = || Error::Parse(format!("bad grid `{text}`"));
    if let Some((a, b)) = text.split_once(['x', 'X']) {
        let (a, b): (usize, usize) = (a.trim().parse().map_err(|_| bad())?, b.trim().parse().map_err(|_| bad())?);
        if a != b || a == 0 {
            return Err(bad());
        }
        return Ok(square_grid(a, 0.05, 0.35));
    }
    text.split(';')
        .map(|pt| {
            let (x, y) = pt.split_once(',').ok_or_else(bad)?;
            Ok((x.trim().parse().map_err(|_| bad())?, y.trim().parse().map_err(|_| bad())?))
        })
        .collect()
}

#[derive(Serialize)]
struct EvalOutput {
    kind: String,
    x: f64,
    y: f64,
    value: f64,
    diagonals: usize,
    est_error: f64,
}

struct Io<'a> {
    out: &'a mut dyn Write,
    err: &'a mut dyn Write,
}

impl Io<'_> {
    fn emit(&mut self, reports: &[VerificationReport]) -> i32 {
        for r in reports {
            let _ = writeln!(self.out, "{}", r.to_json_line());
            let _ = writeln!(self.err, "{}", r.summary());
        }
        let count = |s: Status| reports.iter().filter(|r| r.status == s).count();
        let (pass, fail, error) = (count(Status::Pass), count(Status::Fail), count(Status::Error));
        if reports.len() > 1 {
            let _ = writeln!(self.err, "{} reports: {pass} pass, {fail} fail, {error} error", reports.len());
        }
        if error > 0 {
            EXIT_ERROR
        } else if fail > 0 {
            EXIT_FAIL
        } else {
            EXIT_PASS
        }
    }
}

fn load_config(path: &Option<PathBuf>) -> Result<Config> {
    match path {
        Some(p) => Config::load(p),
        None => Ok(Config::embedded()),
    }
}

fn load_overlay(cfg: &Config, flag: &Option<PathBuf>) -> Result<Option<Catalog>> {
    match flag.clone().or_else(|| cfg.overlay_path()) {
        Some(p) => Catalog::load(&p).map(Some),
        None => Ok(None),
    }
}

fn identity_report(id: &str, profile: &Profile, degree: usize) -> Result<VerificationReport> {
    let mut r = verify_operator_identity(id, &profile.params_for(id), degree)?;
    r.settings = Settings { degree: Some(degree), profile: Some(profile.name.clone()), variant: Some("as-printed".into()), quadrature: None };
    Ok(r)
}

fn identity_or_error(id: &str, profile: &Profile, degree: usize) -> VerificationReport {
    let started = Instant::now();
    identity_report(id, profile, degree).unwrap_or_else(|e| {
        let settings = Settings { degree: Some(degree), profile: Some(profile.name.clone()), variant: Some("as-printed".into()), quadrature: None };
        VerificationReport::failed(TargetKind::Identity, id, CheckMode::Exact, &e, settings, started)
    })
}

fn verify_reports(cfg: &Config, scope: &Scope) -> Result<Vec<VerificationReport>> {
    let catalog = Catalog::load_default()?;
    match scope {
        Scope::Formula { id, opts } => {
            let profile = cfg.profile(&opts.profile)?;
            let spec = catalog.get(id)?;
            let mut out = vec![with_settings(spec.verify(&profile.params_for(id), opts.n)?, &profile, opts.n, "as-printed")];
            if let Some(overlay) = load_overlay(cfg, &opts.overlay)? {
                if let Ok(fixed) = overlay.get(id) {
                    out.push(with_settings(fixed.verify(&profile.params_for(id), opts.n)?, &profile, opts.n, "overlay"));
                }
            }
            Ok(out)
        }
        Scope::Identity { id, opts } => {
            let profile = cfg.profile(&opts.profile)?;
            Ok(vec![identity_report(id, &profile, opts.n)?])
        }
        Scope::All { opts } => {
            let profile = cfg.profile(&opts.profile)?;
            let overlay = load_overlay(cfg, &opts.overlay)?;
            Ok(all_exact(&catalog, &profile, opts.n, overlay.as_ref()))
        }
    }
}

fn all_exact(catalog: &Catalog, profile: &Profile, degree: usize, overlay: Option<&Catalog>) -> Vec<VerificationReport> {
    use rayon::prelude::*;
    let mut out = verify_all(catalog, profile, degree, overlay);
    let ids: Vec<&str> = identity_catalog().iter().map(|s| s.id.as_str()).collect();
    let identities: Vec<VerificationReport> = ids.par_iter().map(|id| identity_or_error(id, profile, degree)).collect();
    out.extend(identities);
    crate::report::sort_reports(&mut out);
    out
}

fn with_settings(mut r: VerificationReport, profile: &Profile, degree: usize, variant: &str) -> VerificationReport {
    r.settings = Settings { degree: Some(degree), profile: Some(profile.name.clone()), variant: Some(variant.into()), quadrature: None };
    r
}

fn integral_reports(cfg: &Config, args: &IntegralArgs) -> Result<Vec<VerificationReport>> {
    let profile = cfg.profile(&args.profile)?;
    let spec = args.quad.spec();
    let grid = args.grid.as_deref().map(parse_grid).transpose()?;
    let mut reps = Vec::new();
    if args.id == "all" {
        if grid.is_none() && args.tol.is_none() {
            return Ok(check_all(|id| profile.params_for(id), &spec, args.with_corrections));
        }
        reps.extend(crate::quadrature::integral_catalog().iter().cloned());
    } else {
        reps.push(integral_by_id(&args.id)?.clone());
    }
    if args.with_corrections {
        let ids: Vec<String> = reps.iter().map(|r| r.id.clone()).collect();
        reps.extend(integral_corrections().into_iter().filter(|c| ids.contains(&c.id)));
    }
    let single = args.id != "all";
    let mut out = Vec::new();
    for rep in &reps {
        let params = profile.params_for(&rep.id);
        if single {
            // A lone target surfaces constraint and domain problems as errors.
            rep.check_constraints(&params)?;
        }
        let points = grid.clone().unwrap_or_else(|| default_points(&rep.id));
        let tol = args.tol.unwrap_or_else(|| default_tolerance(&rep.id));
        out.push(check_or_report(rep, &params, &points, tol, &spec));
    }
    crate::report::sort_reports(&mut out);
    Ok(out)
}

fn errata_reports(cfg: &Config, args: &ErrataArgs) -> Result<Vec<VerificationReport>> {
    let catalog = Catalog::load_default()?;
    let profile = cfg.profile(&args.profile)?;
    let overlay = load_overlay(cfg, &args.overlay)?;
    let mut all = all_exact(&catalog, &profile, args.n, overlay.as_ref());
    let iprofile = cfg.profile(&args.integral_profile)?;
    all.extend(check_all(|id| iprofile.params_for(id), &QuadratureSpec::default(), true));
    let broken: Vec<(TargetKind, String)> = all
        .iter()
        .filter(|r| !r.passed() && r.settings.variant.as_deref() == Some("as-printed"))
        .map(|r| (r.target, r.id.clone()))
        .collect();
    Ok(all.into_iter().filter(|r| broken.contains(&(r.target, r.id.clone()))).collect())
}

fn eval_kind(args: &EvalArgs, cfg: &Config) -> Result<EvalOutput> {
    let kind: Kind = args.kind.parse()?;
    let f = FunctionRef::from_superset(kind, &args.params.resolve(cfg)?)?;
    let (value, diag) = if kind.is_single_variable() {
        eval_single_series(&f, args.x, args.tol, DEFAULT_MAX_DIAGONAL)?
    } else {
        eval_double_series(&f, args.x, args.y, args.tol, DEFAULT_MAX_DIAGONAL)?
    };
    let est_error = if value != 0.0 { diag.last_magnitude / value.abs() } else { diag.last_magnitude };
    Ok(EvalOutput { kind: kind.to_string(), x: args.x, y: args.y, value, diagonals: diag.diagonals, est_error })
}

fn dispatch(cli: &Cli, io: &mut Io<'_>) -> Result<i32> {
    let cfg = load_config(&cli.config)?;
    match &cli.command {
        Command::Eval(args) => {
            let out = eval_kind(args, &cfg)?;
            let _ = writeln!(io.out, "{}", serde_json::to_string(&out)?);
            let _ = writeln!(io.err, "{}({}, {}) = {:.17e} after {} diagonals", out.kind, out.x, out.y, out.value, out.diagonals);
            Ok(EXIT_PASS)
        }
        Command::Coeffs(args) => {
            let kind: Kind = args.kind.parse()?;
            let f = FunctionRef::from_superset(kind, &args.params.resolve(&cfg)?)?;
            let s = f.truncated_series::<crate::scalar::Rational>(args.n)?;
            let _ = writeln!(io.out, "{}", s.to_json());
            Ok(EXIT_PASS)
        }
        Command::Verify(v) => Ok(io.emit(&verify_reports(&cfg, &v.scope)?)),
        Command::IntegralCheck(args) => Ok(io.emit(&integral_reports(&cfg, args)?)),
        Command::Errata(args) => {
            let reports = errata_reports(&cfg, args)?;
            for r in &reports {
                let _ = writeln!(io.out, "{}", r.to_json_line());
                let _ = writeln!(io.err, "{}", r.summary());
            }
            let _ = writeln!(io.err, "{} errata reports", reports.len());
            Ok(EXIT_PASS)
        }
    }
}

/// Runs the CLI on `args` (including the program name).
pub fn run<I, T>(args: I, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(c) => c,
        Err(e) => {
            let _ = write!(err, "{e}");
            return if e.use_stderr() { EXIT_ERROR } else { EXIT_PASS };
        }
    };
    let mut io = Io { out, err };
    match dispatch(&cli, &mut io) {
        Ok(code) => code,
        Err(e) => {
            let _ = writeln!(io.err, "error: {e}");
            EXIT_ERROR
        }
    }
}
