use std::fs;
use std::path::{Path, PathBuf};
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use fibercensus::bounds::{
    cases, cover_degree_log, eehk_bound_log, lifted_height_log, optimize_level, s_bound_log,
    total_bound_log, BoundParams, CoverCase,
};
use fibercensus::classifier::{classify_parameter_counted, default_k_test, Classification};
use fibercensus::harness::{
    parse_k_test, read_csv, report, run_scan, HeightMode, ScanConfig, ScanManifest,
};
use fibercensus::igusa::{igusa_invariants, j_height_of};
use fibercensus::symplectic::{verify_kernel_lemma, SympModule};
use fibercensus::{Error, FamilySpec, GenusTwoCurve, IntPoly, Rat, Result};

#[derive(Parser)]
#[command(
    name = "fibercensus",
    version,
    about = "Census of non-simple fibers in genus-2 families"
)]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Classify every parameter of bounded height and write a CSV.
    Scan(ScanArgs),
    /// Classify a single parameter and print the Frobenius data used.
    Classify(ClassifyArgs),
    /// Summarize a scan CSV on a grid of height bounds.
    Report(ReportArgs),
    /// Evaluate the log-space bound pipeline.
    Bounds(BoundsArgs),
    /// Exhaustive finite checks.
    Verify {
        #[command(subcommand)]
        what: Verify,
    },
    /// Print Igusa-Clebsch invariants, j-coordinates and H_j of a curve.
    Invariants {
        /// Coefficients of F, highest degree first.
        #[arg(long)]
        f: String,
    },
}

#[derive(Args)]
struct ScanArgs {
    /// Manifest of `key = value` lines; flags override it.
    #[arg(long)]
    config: Option<PathBuf>,
    #[arg(long)]
    family: Option<PathBuf>,
    #[arg(long)]
    height_bound: Option<u64>,
    #[arg(long)]
    primes: Option<u64>,
    /// Extension degrees, e.g. `2-60`.
    #[arg(long)]
    k_test: Option<String>,
    #[arg(long)]
    height_mode: Option<HeightMode>,
    #[arg(long)]
    workers: Option<usize>,
    #[arg(long)]
    cache: Option<PathBuf>,
    #[arg(long)]
    out: Option<PathBuf>,
}

#[derive(Args)]
struct ClassifyArgs {
    /// Coefficients of the family polynomial f, highest degree first.
    #[arg(long)]
    f: String,
    #[arg(long, allow_hyphen_values = true)]
    t: String,
    #[arg(long)]
    primes: u64,
    #[arg(long)]
    k_test: Option<String>,
}

#[derive(Args)]
struct ParamArgs {
    #[arg(long, default_value_t = 2)]
    g: usize,
    #[arg(long, default_value_t = 1)]
    d: u64,
    #[arg(long = "dK", default_value_t = 1)]
    d_k: u64,
    #[arg(long = "gB", default_value_t = 1)]
    g_b: usize,
    #[arg(long, default_value_t = 4.0)]
    kappa: f64,
    #[arg(long, default_value_t = 1.0)]
    c: f64,
    #[arg(long = "Ciota", default_value_t = 1.0)]
    c_iota: f64,
    #[arg(long = "Cprime", default_value_t = 1.0)]
    c_prime: f64,
    #[arg(long, default_value_t = 5)]
    ell0: u64,
}

impl ParamArgs {
    fn params(&self) -> Result<BoundParams> {
        let p = BoundParams {
            g: self.g,
            g_b: self.g_b,
            g_c: self.g.saturating_sub(self.g_b),
            d: self.d,
            d_k: self.d_k,
            c: self.c,
            kappa: self.kappa,
            c_iota: self.c_iota,
            c_prime: self.c_prime,
            ell0: self.ell0,
        };
        p.validate()?;
        Ok(p)
    }
}

#[derive(Args)]
struct ReportArgs {
    #[arg(long = "in")]
    input: PathBuf,
    /// Increasing height bounds, comma separated.
    #[arg(long)]
    grid: String,
    #[arg(long, default_value = "parameter")]
    height_mode: HeightMode,
    /// Height bound the scan used; defaults to the largest height present.
    #[arg(long)]
    scan_bound: Option<u64>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Clone, Copy, ValueEnum)]
enum CaseArg {
    Diagonal,
    Parabolic,
    Fourth,
}

#[derive(Args)]
struct BoundsArgs {
    /// Height bound: a number, or `eN` for e^N.
    #[arg(long = "B")]
    b: String,
    /// One case only; all cases by default.
    #[arg(long)]
    case: Option<CaseArg>,
    #[command(flatten)]
    params: ParamArgs,
}

#[derive(Subcommand)]
enum Verify {
    /// Check every maximal isotropic subgroup of (Z/l^m)^{2g}.
    Symplectic {
        #[arg(long)]
        g: usize,
        #[arg(long)]
        ell: u64,
        #[arg(long)]
        m: u32,
    },
}

fn parse_grid(text: &str) -> Result<Vec<u64>> {
    text.split(',')
        .map(|s| {
            s.trim()
                .parse()
                .map_err(|_| Error::InvalidInput(format!("bad grid value {s:?}")))
        })
        .collect()
}

/// `ln B` from `eN` or a plain number.
fn parse_ln_b(text: &str) -> Result<f64> {
    let bad = || Error::InvalidInput(format!("bad height bound {text:?}"));
    let v = match text.strip_prefix('e') {
        Some(n) => n.parse::<f64>().map_err(|_| bad())?,
        None => text.parse::<f64>().map_err(|_| bad())?.ln(),
    };
    if v.is_finite() && v >= 0.0 {
        Ok(v)
    } else {
        Err(bad())
    }
}

fn read_text(path: &Path) -> Result<String> {
    fs::read_to_string(path).map_err(|e| Error::Io {
        path: path.display().to_string(),
        source: e,
    })
}

fn missing(flag: &str) -> Error {
    Error::InvalidInput(format!("missing --{flag} (flag or config key)"))
}

fn scan(args: ScanArgs) -> Result<()> {
    let manifest = match &args.config {
        Some(p) => ScanManifest::parse(&read_text(p)?)?,
        None => ScanManifest::default(),
    };
    let family_path = args
        .family
        .or(manifest.family)
        .ok_or_else(|| missing("family"))?;
    let family = FamilySpec::parse(&read_text(&family_path)?)?;
    let b = args
        .height_bound
        .or(manifest.height_bound)
        .ok_or_else(|| missing("height-bound"))?;
    let p = args
        .primes
        .or(manifest.primes)
        .ok_or_else(|| missing("primes"))?;
    let mut config = ScanConfig::new(family, b, p);
    if let Some(k) = args
        .k_test
        .as_deref()
        .map(parse_k_test)
        .transpose()?
        .or(manifest.k_test)
    {
        config.k_test = k;
    }
    config.height_mode = args
        .height_mode
        .or(manifest.height_mode)
        .unwrap_or_default();
    config.workers = args.workers.or(manifest.workers).unwrap_or(1);
    config.cache_path = args.cache.or(manifest.cache);
    config.out_path = Some(args.out.or(manifest.out).ok_or_else(|| missing("out"))?);
    let outcome = run_scan(&config)?;
    let count = |s: &str| outcome.records.iter().filter(|r| r.status == s).count();
    eprintln!(
        "{} parameters: {} simple, {} candidate, {} degenerate ({} computed, {} from cache)",
        outcome.records.len(),
        count("simple"),
        count("candidate"),
        count("degenerate"),
        outcome.computed,
        outcome.cache_hits
    );
    Ok(())
}

fn classify(args: ClassifyArgs) -> Result<()> {
    let family = FamilySpec::new(IntPoly::parse_descending(&args.f)?, args.f.clone())?;
    let t: Rat = args.t.parse()?;
    let ks = match &args.k_test {
        Some(k) => parse_k_test(k)?,
        None => default_k_test(),
    };
    let (class, tested) = classify_parameter_counted(&family, &t, args.primes, &ks)?;
    println!("t = {t}");
    println!("status: {}", class.status());
    println!("primes tested: {tested}");
    match class {
        Classification::CertifiedSimple(c) => {
            println!("certificate: p = {}, c1 = {}, c2 = {}", c.p, c.c1, c.c2);
            println!(
                "P_k irreducible for k = 1 and all {} tested degrees",
                ks.len()
            );
        }
        Classification::CandidateNonSimple(records) => {
            for r in records {
                println!(
                    "p = {:>4}  #C(F_p) = {:>6}  #C(F_p^2) = {:>8}  c1 = {:>4}  c2 = {:>6}",
                    r.p, r.n1, r.n2, r.c1, r.c2
                );
            }
        }
        Classification::Degenerate => println!("f(x)(x - t) is not squarefree"),
    }
    Ok(())
}

fn run_report(args: ReportArgs) -> Result<()> {
    let records = read_csv(&args.input)?;
    let grid = parse_grid(&args.grid)?;
    let params = args.params.params()?;
    let r = report(&records, &grid, &params, args.height_mode, args.scan_bound)?;
    println!("{r}");
    Ok(())
}

fn fmt_log(v: Result<f64>) -> String {
    match v {
        Ok(x) => format!("{x:.6}"),
        Err(Error::BelowThreshold { .. }) => "below threshold".into(),
        Err(e) => format!("error: {e}"),
    }
}

fn bounds(args: BoundsArgs) -> Result<()> {
    let ln_b = parse_ln_b(&args.b)?;
    let params = args.params.params()?;
    let chosen = match args.case {
        None => cases(params.g),
        Some(CaseArg::Diagonal) => vec![CoverCase::diagonal_from(&params)],
        Some(CaseArg::Parabolic) => vec![CoverCase::Parabolic],
        Some(CaseArg::Fourth) => vec![CoverCase::FourthPower],
    };
    println!("log B = {ln_b}");
    println!(
        "{:<16} {:>8} {:>18} {:>18} {:>18}",
        "case", "level", "log cover degree", "log lifted height", "log case bound"
    );
    for case in chosen {
        match optimize_level(ln_b, case, &params) {
            Ok(ell) => println!(
                "{:<16} {:>8} {:>18} {:>18} {:>18}",
                case.to_string(),
                ell,
                fmt_log(cover_degree_log(case, &params, ell)),
                fmt_log(lifted_height_log(ln_b, case, &params)),
                fmt_log(s_bound_log(ln_b, case, &params)),
            ),
            Err(Error::BelowThreshold { ln_b0, .. }) => {
                println!(
                    "{:<16} below threshold (log B0 = {ln_b0:e})",
                    case.to_string()
                )
            }
            Err(e) => return Err(e),
        }
    }
    println!(
        "log total bound: {}",
        fmt_log(total_bound_log(ln_b, &params))
    );
    println!(
        "log EEHK bound:  {}",
        fmt_log(eehk_bound_log(ln_b, params.g, params.c, params.d as f64))
    );
    Ok(())
}

fn verify_symplectic(g: usize, ell: u64, m: u32) -> Result<bool> {
    let module = SympModule::new(g, ell, m)?;
    let r = verify_kernel_lemma(&module)?;
    println!("{r}");
    Ok(r.holds())
}

fn invariants(f: &str) -> Result<()> {
    let curve = GenusTwoCurve::new(IntPoly::parse_descending(f)?)?;
    let inv = igusa_invariants(&curve)?;
    for (name, v) in [
        ("I2", &inv.i2),
        ("I4", &inv.i4),
        ("I6", &inv.i6),
        ("I10", &inv.i10),
        ("j1", &inv.j1),
        ("j2", &inv.j2),
        ("j3", &inv.j3),
    ] {
        println!("{name} = {v}");
    }
    println!("H_j = {}", j_height_of(&inv)?);
    Ok(())
}

fn run(cli: Cli) -> Result<ExitCode> {
    match cli.command {
        Command::Scan(a) => scan(a)?,
        Command::Classify(a) => classify(a)?,
        Command::Report(a) => run_report(a)?,
        Command::Bounds(a) => bounds(a)?,
        Command::Verify {
            what: Verify::Symplectic { g, ell, m },
        } => {
            if !verify_symplectic(g, ell, m)? {
                return Ok(ExitCode::FAILURE);
            }
        }
        Command::Invariants { f } => invariants(&f)?,
    }
    Ok(ExitCode::SUCCESS)
}

fn main() -> ExitCode {
    match run(Cli::parse()) {
        Ok(code) => code,
        Err(e) => {
            eprintln!("error: {e}");
            ExitCode::from(e.exit_code() as u8)
        }
    }
}
