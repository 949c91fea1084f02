//! Command-line front end.
//!
//! Every subcommand produces [`RunReport`] objects rendered as JSON, CSV or
//! Markdown. Exit codes: 0 success, 2 usage, 3 a verification target not
//! verified, 4 τ and oracle disagree, 5 working precision exhausted, 1 any
//! other failure.

mod cache;
mod output;

use std::ffi::OsString;
use std::fs;
use std::path::PathBuf;
use std::process::ExitCode;
use std::str::FromStr;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rayon::prelude::*;

use crate::analyzer::conjectures::{self, ConjectureRun, MIN_POWER};
use crate::analyzer::families::{verify_families, FamilyRun};
use crate::analyzer::theorems::{self, THEOREM_POWERS};
use crate::analyzer::{detect_period, PeriodReport, PeriodSearch, Status, VerificationReport};
use crate::exact::ExactInt;
use crate::motzkin::{conv_power_ints, MotzkinError};
use crate::oracle::hankel_table_int;
use crate::tau::{hankel_via_tau_with, Backend, PowerTable, TauError};

pub use cache::{Cache, CacheError, DeterminantTable, Method};
pub use output::{render, Format, FormEntry, Rendered, RunReport, ValueEntry, VerificationEntry};

pub const EXIT_OK: u8 = 0;
pub const EXIT_FAILURE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_VERIFICATION: u8 = 3;
pub const EXIT_MISMATCH: u8 = 4;
pub const EXIT_PRECISION: u8 = 5;

/// Above this order `--method oracle|both` logs a warning.
pub const ORACLE_WARN_N: usize = 150;

#[derive(Debug, Parser)]
#[command(name = "motzkin-hankel", version, about = "Hankel determinants of Motzkin convolution powers")]
pub struct Cli {
    #[command(flatten)]
    pub global: GlobalOpts,
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Clone, Args)]
pub struct GlobalOpts {
    /// Use truncated series starting at this many coefficients instead of
    /// exact rational functions.
    #[arg(long, global = true)]
    pub precision: Option<usize>,
    /// Precision doublings allowed after the first attempt.
    #[arg(long, global = true, default_value_t = 4)]
    pub max_retries: u32,
    #[arg(long, global = true, value_enum, default_value = "json")]
    pub format: Format,
    /// Write the report here instead of standard output.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,
    /// Worker threads; defaults to one per core.
    #[arg(long, global = true)]
    pub jobs: Option<usize>,
    /// Directory for persisted determinant tables.
    #[arg(long, global = true)]
    pub cache: Option<PathBuf>,
    /// Seed for randomized checks; the deterministic commands ignore it.
    #[arg(long, global = true)]
    pub seed: Option<u64>,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Target {
    Theorems,
    Conjectures,
    Families,
}

#[derive(Debug, Clone, Subcommand)]
pub enum Command {
    /// Coefficients of M(x)^r.
    Motzkin {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long, default_value_t = 10)]
        terms: usize,
    },
    /// H_0 ..= H_{n-max} of M(x)^r.
    Det {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long)]
        n_max: usize,
        #[arg(long, value_enum, default_value = "tau")]
        method: Method,
    },
    /// Period and quasi-polynomial closed forms of H_n(M(x)^r).
    Fit {
        #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
        r: u32,
        #[arg(long)]
        n_max: usize,
        #[arg(long)]
        q_max: Option<usize>,
        #[arg(long)]
        deg_max: Option<usize>,
        #[arg(long, default_value_t = 5)]
        min_periods: usize,
    },
    /// Checks the known closed forms, the conjectured patterns or the
    /// parametric families.
    Verify {
        #[arg(long, value_enum, value_delimiter = ',', required = true)]
        targets: Vec<Target>,
        /// Largest index checked; defaults depend on the target.
        #[arg(long)]
        n_max: Option<usize>,
        /// Largest index also computed by the oracle for the closed forms.
        #[arg(long, default_value_t = 40)]
        oracle_max: usize,
        #[arg(long, default_value_t = 12)]
        r_max: u32,
        #[arg(long, default_value_t = 10)]
        p_max: i64,
        /// Largest k in the family recursions.
        #[arg(long, default_value_t = 20)]
        k_max: usize,
        /// Data cap when searching for periods.
        #[arg(long, default_value_t = 4096)]
        period_cap: usize,
    },
    /// Period, closed forms and conjecture status for each power in a range.
    Scan {
        /// A power `a` or an inclusive range `a..b`.
        #[arg(long)]
        r: PowerRange,
        #[arg(long)]
        n_max: usize,
        #[arg(long, default_value_t = 4096)]
        period_cap: usize,
    },
}

/// Inclusive range of powers, parsed from `a` or `a..b`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct PowerRange {
    pub lo: u32,
    pub hi: u32,
}

impl FromStr for PowerRange {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let parse = |t: &str| t.trim().parse::<u32>().map_err(|e| format!("bad power {t:?}: {e}"));
        let (lo, hi) = match s.split_once("..") {
            Some((a, b)) => (parse(a)?, parse(b.trim_start_matches('='))?),
            None => {
                let r = parse(s)?;
                (r, r)
            }
        };
        if lo == 0 {
            return Err("powers start at 1".into());
        }
        if lo > hi {
            return Err(format!("empty range {s}"));
        }
        Ok(Self { lo, hi })
    }
}

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("tau and oracle disagree for r = {r} at n = {n}: tau {tau}, oracle {oracle}")]
    Mismatch {
        r: u32,
        n: usize,
        tau: String,
        oracle: String,
    },
    #[error("r = {r}: {source}")]
    Tau { r: u32, source: TauError },
    #[error(transparent)]
    Cache(#[from] CacheError),
    #[error("writing {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{0}")]
    Other(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Usage(_) => EXIT_USAGE,
            CliError::Mismatch { .. } => EXIT_MISMATCH,
            CliError::Tau {
                source: TauError::PrecisionExhausted { .. },
                ..
            } => EXIT_PRECISION,
            _ => EXIT_FAILURE,
        }
    }
}

fn tau_err(r: u32) -> impl Fn(TauError) -> CliError {
    move |source| CliError::Tau { r, source }
}

/// Rendered report plus the exit code it calls for.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Outcome {
    pub text: String,
    pub exit: u8,
}

struct Ctx<'a> {
    global: &'a GlobalOpts,
    cache: Option<Cache>,
}

impl Ctx<'_> {
    fn backend(&self) -> Backend {
        match self.global.precision {
            None => Backend::Exact,
            Some(p) => Backend::Truncated {
                initial: Some(p),
                cap: p.saturating_mul(1 << self.global.max_retries.min(20)),
            },
        }
    }

    fn precision_key(&self) -> String {
        match self.global.precision {
            None => "exact".into(),
            Some(p) => format!("truncated:{p}"),
        }
    }

    fn cached(
        &self,
        r: u32,
        method: Method,
        n_max: usize,
        compute: impl FnOnce() -> Result<Vec<ExactInt>, CliError>,
    ) -> Result<Vec<ExactInt>, CliError> {
        let key = if method == Method::Oracle {
            "exact".to_string()
        } else {
            self.precision_key()
        };
        if let Some(c) = &self.cache {
            if let Some(v) = c.load(r, method, &key, n_max)? {
                log::info!("r = {r}: {} values from cache", method.name());
                return Ok(v);
            }
        }
        let v = compute()?;
        if let Some(c) = &self.cache {
            c.store(r, method, &key, &v)?;
        }
        Ok(v)
    }

    fn tau_values(&self, r: u32, n_max: usize) -> Result<Vec<ExactInt>, CliError> {
        self.cached(r, Method::Tau, n_max, || {
            let run = hankel_via_tau_with(r, n_max, self.backend()).map_err(tau_err(r))?;
            if run.retries > 0 {
                log::info!("r = {r}: succeeded at precision {:?} after {} retries", run.precision, run.retries);
            }
            Ok(run.values)
        })
    }

    fn oracle_values(&self, r: u32, n_max: usize) -> Result<Vec<ExactInt>, CliError> {
        if n_max > ORACLE_WARN_N {
            log::warn!("oracle up to n = {n_max} is slow; tau is the fast method");
        }
        self.cached(r, Method::Oracle, n_max, || {
            let seq = conv_power_ints(r, 2 * n_max + 1).map_err(motzkin_err)?;
            hankel_table_int(&seq, n_max).map_err(|e| CliError::Other(e.to_string()))
        })
    }

    fn values(&self, r: u32, n_max: usize, method: Method) -> Result<Vec<ExactInt>, CliError> {
        match method {
            Method::Tau => self.tau_values(r, n_max),
            Method::Oracle => self.oracle_values(r, n_max),
            Method::Both => {
                let (tau, oracle) = rayon::join(|| self.tau_values(r, n_max), || self.oracle_values(r, n_max));
                let (tau, oracle) = (tau?, oracle?);
                if let Some(n) = (0..=n_max).find(|&n| tau[n] != oracle[n]) {
                    return Err(CliError::Mismatch {
                        r,
                        n,
                        tau: tau[n].to_string(),
                        oracle: oracle[n].to_string(),
                    });
                }
                Ok(tau)
            }
        }
    }
}

fn motzkin_err(e: MotzkinError) -> CliError {
    CliError::Usage(e.to_string())
}

fn with_period(mut rep: RunReport, period: &PeriodReport) -> RunReport {
    if let Some(fit) = &period.value {
        rep.period = Some(fit.q);
        rep.closed_forms = fit.forms.iter().map(FormEntry::from).collect();
    }
    rep
}

fn with_reports(mut rep: RunReport, reports: &[VerificationReport]) -> RunReport {
    rep.verification
        .extend(reports.iter().map(VerificationEntry::from));
    rep
}

/// Alternative readings of the conjectures are reported but do not fail a
/// run.
fn verification_exit(reports: &[RunReport]) -> u8 {
    let ok = reports.iter().all(|rep| {
        rep.verification
            .iter()
            .all(|v| v.status == Status::Verified || conjectures::is_alternate_reading(&v.target))
    });
    if ok {
        EXIT_OK
    } else {
        EXIT_VERIFICATION
    }
}

/// Runs one parsed command and renders its report.
pub fn execute(cli: &Cli) -> Result<Outcome, CliError> {
    let global = &cli.global;
    if global.jobs == Some(0) {
        return Err(CliError::Usage("--jobs must be positive".into()));
    }
    if let Some(seed) = global.seed {
        log::debug!("seed {seed} accepted; no randomized step in this command");
    }
    let ctx = Ctx {
        global,
        cache: global.cache.clone().map(Cache::new),
    };
    let run = || dispatch(&ctx, &cli.command);
    match global.jobs {
        None => run(),
        Some(k) => rayon::ThreadPoolBuilder::new()
            .num_threads(k)
            .build()
            .map_err(|e| CliError::Other(e.to_string()))?
            .install(run),
    }
}

fn single(rep: RunReport, format: Format, exit: u8) -> Outcome {
    Outcome {
        text: render(Rendered::One(&rep), format),
        exit,
    }
}

fn many(reps: &[RunReport], format: Format, exit: u8) -> Outcome {
    Outcome {
        text: render(Rendered::Many(reps), format),
        exit,
    }
}

fn dispatch(ctx: &Ctx<'_>, command: &Command) -> Result<Outcome, CliError> {
    let format = ctx.global.format;
    match *command {
        Command::Motzkin { r, terms } => {
            let coeffs = conv_power_ints(r, terms).map_err(motzkin_err)?;
            Ok(single(RunReport::new(r).with_values(&coeffs), format, EXIT_OK))
        }
        Command::Det { r, n_max, method } => {
            let values = ctx.values(r, n_max, method)?;
            Ok(single(RunReport::new(r).with_values(&values), format, EXIT_OK))
        }
        Command::Fit {
            r,
            n_max,
            q_max,
            deg_max,
            min_periods,
        } => {
            let values = ctx.tau_values(r, n_max)?;
            let search = PeriodSearch {
                q_max,
                deg_max,
                min_periods,
            };
            let period = detect_period(&values, &search);
            if period.period().is_none() {
                log::warn!("r = {r}: no period found in {} values", values.len());
            }
            let rep = with_period(RunReport::new(r).with_values(&values), &period);
            Ok(single(rep, format, EXIT_OK))
        }
        Command::Verify {
            ref targets,
            n_max,
            oracle_max,
            r_max,
            p_max,
            k_max,
            period_cap,
        } => {
            let mut reps = Vec::new();
            for target in dedup(targets) {
                match target {
                    Target::Theorems => reps.extend(theorem_reports(n_max, oracle_max)?),
                    Target::Conjectures => {
                        if r_max < MIN_POWER {
                            return Err(CliError::Usage(format!("--r-max must be at least {MIN_POWER}")));
                        }
                        let run = ConjectureRun {
                            r_max,
                            n_max,
                            period_n_cap: period_cap,
                        };
                        reps.extend(scan_powers(ctx, MIN_POWER, r_max, &run, false)?);
                    }
                    Target::Families => {
                        if p_max < 1 || k_max < 13 {
                            return Err(CliError::Usage("families need --p-max >= 1 and --k-max >= 13".into()));
                        }
                        let run = FamilyRun { p_max, k_max };
                        let reports = verify_families(&run).map_err(tau_err(3))?;
                        for r in crate::analyzer::families::FAMILY_POWERS {
                            let mine: Vec<VerificationReport> =
                                reports.iter().filter(|v| v.r_range.0 == r).cloned().collect();
                            reps.push(with_reports(RunReport::new(r), &mine));
                        }
                    }
                }
            }
            let exit = verification_exit(&reps);
            Ok(many(&reps, format, exit))
        }
        Command::Scan {
            r,
            n_max,
            period_cap,
        } => {
            let run = ConjectureRun {
                r_max: r.hi,
                n_max: Some(n_max),
                period_n_cap: period_cap,
            };
            let mut reps = scan_powers(ctx, r.lo, r.hi, &run, true)?;
            for rep in &mut reps {
                rep.values.truncate(n_max + 1);
            }
            let exit = if reps.iter().any(|r| r.verification.iter().any(is_precision_marker)) {
                EXIT_PRECISION
            } else {
                EXIT_OK
            };
            Ok(many(&reps, format, exit))
        }
    }
}

fn dedup(targets: &[Target]) -> Vec<Target> {
    let mut out: Vec<Target> = Vec::new();
    for t in targets {
        if !out.contains(t) {
            out.push(*t);
        }
    }
    out
}

const PRECISION_TARGET: &str = "working-precision";

fn is_precision_marker(v: &VerificationEntry) -> bool {
    v.target == PRECISION_TARGET && v.status == Status::Inconclusive
}

fn theorem_reports(n_max: Option<usize>, oracle_max: usize) -> Result<Vec<RunReport>, CliError> {
    THEOREM_POWERS
        .par_iter()
        .map(|&r| {
            let q = theorems::published_closed_forms(r).map_or(1, |f| f.len());
            let n = n_max.unwrap_or(11 * q - 1);
            let report = theorems::verify_theorems(r, n, oracle_max.min(n)).map_err(tau_err(r))?;
            Ok(with_reports(RunReport::new(r), &[report]))
        })
        .collect()
}

/// Conjecture reports, period and closed forms per power. With
/// `keep_values` the computed determinants are included.
fn scan_powers(
    ctx: &Ctx<'_>,
    lo: u32,
    hi: u32,
    run: &ConjectureRun,
    keep_values: bool,
) -> Result<Vec<RunReport>, CliError> {
    (lo..=hi)
        .into_par_iter()
        .map(|r| scan_one(ctx, r, run, keep_values))
        .collect()
}

fn scan_one(ctx: &Ctx<'_>, r: u32, run: &ConjectureRun, keep_values: bool) -> Result<RunReport, CliError> {
    let floor = if r >= MIN_POWER {
        conjectures::default_n_max(r)
    } else {
        30
    };
    let n_ident = match run.n_max {
        Some(n) if n < floor => {
            log::info!("r = {r}: raising n-max from {n} to {floor} to cover five periods");
            floor
        }
        Some(n) => n,
        None => floor,
    };
    if ctx.global.precision.is_some() {
        return scan_truncated(ctx, r, n_ident, keep_values);
    }
    let mut table = PowerTable::new(r).map_err(tau_err(r))?;
    let values = table.extend_to(n_ident).map_err(tau_err(r))?.to_vec();
    let mut reports = if r >= MIN_POWER {
        conjectures::check_identities(r, &values)
    } else {
        Vec::new()
    };
    let (period, used, stable) =
        conjectures::stable_period(&mut table, n_ident, run.period_n_cap.max(n_ident)).map_err(tau_err(r))?;
    if r >= MIN_POWER {
        let mut p = conjectures::check_period(r, &period, used);
        if period.period().is_some() && stable.is_none() {
            p.inconclusive(format!("r = {r}: period changed when the data was doubled"));
        }
        reports.push(p);
    }
    if let Some(c) = &ctx.cache {
        c.store(r, Method::Tau, "exact", table.values())?;
    }
    let mut rep = with_period(with_reports(RunReport::new(r), &reports), &period);
    if keep_values {
        rep = rep.with_values(table.values());
    }
    Ok(rep)
}

fn scan_truncated(ctx: &Ctx<'_>, r: u32, n: usize, keep_values: bool) -> Result<RunReport, CliError> {
    match ctx.tau_values(r, n) {
        Ok(values) => {
            let reports = if r >= MIN_POWER {
                conjectures::check_identities(r, &values)
            } else {
                Vec::new()
            };
            let period = detect_period(&values, &PeriodSearch::default());
            let mut rep = with_period(with_reports(RunReport::new(r), &reports), &period);
            if keep_values {
                rep = rep.with_values(&values);
            }
            Ok(rep)
        }
        Err(CliError::Tau {
            source: e @ TauError::PrecisionExhausted { .. },
            ..
        }) => {
            let mut v = VerificationReport::new(PRECISION_TARGET, (r, r), (0, n));
            v.inconclusive(e.to_string());
            Ok(with_reports(RunReport::new(r), &[v]))
        }
        Err(e) => Err(e),
    }
}

fn write_out(global: &GlobalOpts, text: &str) -> Result<(), CliError> {
    match &global.out {
        Some(path) => fs::write(path, text).map_err(|source| CliError::Io {
            path: path.clone(),
            source,
        }),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}

/// Parses `args`, runs the command, writes the report and maps the result
/// to an exit code.
pub fn main_with_args<I, T>(args: I) -> ExitCode
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(e.exit_code() as u8);
        }
    };
    let outcome = execute(&cli).and_then(|o| write_out(&cli.global, &o.text).map(|()| o.exit));
    match outcome {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code())
        }
    }
}
