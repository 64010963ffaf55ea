//! Family scans over all parameters of bounded height, with a resumable
//! cache, CSV output and summary reports against the bound curves.

mod cache;
mod config;
mod report;

pub use cache::{cache_key, Cache, CachedResult};
pub use config::{parse_k_test, parse_key_values, ScanManifest};
pub use report::{kappa_fit, report, Report, ReportRow};

use std::fmt;
use std::fs::File;
use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::str::FromStr;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::classifier::{classify_parameter_counted, Status};
use crate::error::{Error, Result};
use crate::heights::{enumerate_rationals, mult_height, Rat};
use crate::hyperelliptic::{specialize, FamilySpec};
use crate::igusa::j_height;

pub const CSV_HEADER: [&str; 6] = [
    "t",
    "H_t",
    "H_j",
    "status",
    "certifying_prime",
    "primes_tested",
];

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq)]
pub enum HeightMode {
    /// `H(t) <= B`.
    #[default]
    Parameter,
    /// `H(t) <= B` and also `H_j <= B`; degenerate parameters have no `H_j`
    /// and are dropped.
    JProxy,
}

impl FromStr for HeightMode {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "parameter" => Ok(HeightMode::Parameter),
            "j-proxy" | "j_proxy" => Ok(HeightMode::JProxy),
            _ => Err(Error::invalid(format!("unknown height mode {s:?}"))),
        }
    }
}

impl fmt::Display for HeightMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            HeightMode::Parameter => "parameter",
            HeightMode::JProxy => "j-proxy",
        })
    }
}

#[derive(Clone, Debug)]
pub struct ScanConfig {
    pub family: FamilySpec,
    pub b_max: u64,
    pub p_max: u64,
    pub k_test: Vec<u32>,
    pub height_mode: HeightMode,
    pub workers: usize,
    pub cache_path: Option<PathBuf>,
    pub out_path: Option<PathBuf>,
}

impl ScanConfig {
    pub fn new(family: FamilySpec, b_max: u64, p_max: u64) -> Self {
        ScanConfig {
            family,
            b_max,
            p_max,
            k_test: crate::classifier::default_k_test(),
            height_mode: HeightMode::Parameter,
            workers: 1,
            cache_path: None,
            out_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.b_max == 0 {
            return Err(Error::invalid("height bound must be at least 1"));
        }
        if self.p_max < 3 {
            return Err(Error::invalid("prime bound must be at least 3"));
        }
        if self.workers == 0 {
            return Err(Error::invalid("need at least one worker"));
        }
        if !matches!(self.family.f().degree(), Some(4) | Some(5)) {
            return Err(Error::invalid("scans need deg f = 4 or 5 (genus-2 fibers)"));
        }
        Ok(())
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ScanRecord {
    pub t: String,
    #[serde(rename = "H_t")]
    pub h_t: u64,
    #[serde(rename = "H_j")]
    pub h_j: Option<String>,
    pub status: String,
    pub certifying_prime: Option<u64>,
    pub primes_tested: usize,
}

impl ScanRecord {
    pub fn parameter(&self) -> Result<Rat> {
        self.t.parse()
    }

    pub fn status(&self) -> Result<Status> {
        Status::parse(&self.status)
    }

    pub fn j_height(&self) -> Result<Option<BigUint>> {
        self.h_j
            .as_deref()
            .map(|s| {
                s.parse()
                    .map_err(|_| Error::invalid(format!("bad H_j value {s:?}")))
            })
            .transpose()
    }
}

#[derive(Clone, Debug)]
pub struct ScanOutcome {
    pub records: Vec<ScanRecord>,
    /// Parameters classified from scratch (cache misses).
    pub computed: usize,
    pub cache_hits: usize,
}

enum Task {
    Skip,
    Done(ScanRecord, bool),
}

fn scan_one(config: &ScanConfig, cache: Option<&Cache>, t: &Rat) -> Result<Task> {
    let h_t = mult_height(t).to_u64().expect("height fits the scan bound");
    let h_j = match specialize(&config.family, t) {
        Ok(curve) => Some(j_height(&curve)?),
        Err(Error::DegenerateParameter(_)) => None,
        Err(e) => return Err(e),
    };
    if config.height_mode == HeightMode::JProxy {
        match &h_j {
            Some(h) if *h <= BigUint::from(config.b_max) => {}
            _ => return Ok(Task::Skip),
        }
    }
    let key = cache_key(config.family.f(), t, config.p_max, &config.k_test);
    let (result, computed) = match cache.and_then(|c| c.get(&key)) {
        Some(hit) => (hit.clone(), false),
        None => {
            let (class, primes_tested) =
                classify_parameter_counted(&config.family, t, config.p_max, &config.k_test)?;
            let result = CachedResult {
                status: class.status(),
                certifying_prime: class.certifying_prime(),
                primes_tested,
            };
            if let Some(c) = cache {
                c.append(&key, t, &result)?;
            }
            (result, true)
        }
    };
    Ok(Task::Done(
        ScanRecord {
            t: t.to_string(),
            h_t,
            h_j: h_j.map(|h| h.to_string()),
            status: result.status.to_string(),
            certifying_prime: result.certifying_prime,
            primes_tested: result.primes_tested,
        },
        computed,
    ))
}

/// Classifies every parameter of height at most `b_max`. Output order is
/// the enumeration order `(H(t), numerator, denominator)` whatever the worker
/// count. The output and cache files are opened before any classification.
pub fn run_scan(config: &ScanConfig) -> Result<ScanOutcome> {
    config.validate()?;
    let out = config
        .out_path
        .as_ref()
        .map(|p| File::create(p).map_err(|e| Error::io(p, e)))
        .transpose()?;
    let cache = config.cache_path.as_ref().map(Cache::open).transpose()?;
    let params = enumerate_rationals(config.b_max)?;
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers)
        .build()
        .map_err(|e| Error::Resource(format!("cannot start worker pool: {e}")))?;
    let tasks: Vec<Task> = pool.install(|| {
        params
            .par_iter()
            .map(|t| scan_one(config, cache.as_ref(), t))
            .collect::<Result<Vec<_>>>()
    })?;
    let mut records = Vec::with_capacity(tasks.len());
    let mut computed = 0;
    let mut cache_hits = 0;
    for task in tasks {
        if let Task::Done(rec, fresh) = task {
            if fresh {
                computed += 1;
            } else {
                cache_hits += 1;
            }
            records.push(rec);
        }
    }
    if let (Some(file), Some(path)) = (out, config.out_path.as_ref()) {
        write_records(file, path, &records)?;
    }
    Ok(ScanOutcome {
        records,
        computed,
        cache_hits,
    })
}

fn write_records(file: File, path: &Path, records: &[ScanRecord]) -> Result<()> {
    let mut w = csv::Writer::from_writer(file);
    if records.is_empty() {
        w.write_record(CSV_HEADER).map_err(|e| csv_error(path, e))?;
    }
    for r in records {
        w.serialize(r).map_err(|e| csv_error(path, e))?;
    }
    w.flush().map_err(|e| Error::io(path, e))?;
    w.into_inner()
        .map_err(|e| Error::io(path, e.into_error()))?
        .flush()
        .map_err(|e| Error::io(path, e))
}

fn csv_error(path: &Path, e: csv::Error) -> Error {
    if e.is_io_error() {
        match e.into_kind() {
            csv::ErrorKind::Io(io) => Error::io(path, io),
            _ => unreachable!(),
        }
    } else {
        Error::invalid(format!("{}: {e}", path.display()))
    }
}

/// Writes records as CSV with columns
/// `t,H_t,H_j,status,certifying_prime,primes_tested`.
pub fn write_csv(path: impl AsRef<Path>, records: &[ScanRecord]) -> Result<()> {
    let path = path.as_ref();
    let file = File::create(path).map_err(|e| Error::io(path, e))?;
    write_records(file, path, records)
}

pub fn read_csv(path: impl AsRef<Path>) -> Result<Vec<ScanRecord>> {
    let path = path.as_ref();
    let file = File::open(path).map_err(|e| Error::io(path, e))?;
    let mut r = csv::Reader::from_reader(file);
    let mut out = Vec::new();
    for rec in r.deserialize() {
        let rec: ScanRecord = rec.map_err(|e| csv_error(path, e))?;
        rec.parameter()?;
        rec.status()?;
        rec.j_height()?;
        out.push(rec);
    }
    Ok(out)
}

/// Records as CSV text, for callers that print rather than write files.
pub fn records_to_csv(records: &[ScanRecord]) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    if records.is_empty() {
        w.write_record(CSV_HEADER)
            .map_err(|e| Error::Internal(format!("csv serialization: {e}")))?;
    }
    for r in records {
        w.serialize(r)
            .map_err(|e| Error::Internal(format!("csv serialization: {e}")))?;
    }
    let bytes = w
        .into_inner()
        .map_err(|e| Error::Internal(format!("csv serialization: {e}")))?;
    String::from_utf8(bytes).map_err(|e| Error::Internal(e.to_string()))
}
