use std::fmt;

use num_bigint::BigUint;

use super::{HeightMode, ScanRecord};
use crate::bounds::{eehk_bound_log, total_bound_log, BoundParams};
use crate::classifier::Status;
use crate::error::{Error, Result};

#[derive(Clone, Debug, PartialEq)]
pub struct ReportRow {
    pub bound: u64,
    pub candidates: usize,
    pub simple: usize,
    pub degenerate: usize,
    pub total: usize,
    /// `None` below the level-optimization threshold.
    pub total_bound_log: Option<f64>,
    pub eehk_bound_log: Option<f64>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct Report {
    pub height_mode: HeightMode,
    pub rows: Vec<ReportRow>,
    pub kappa_emp: Option<f64>,
}

/// Least-squares slope of `log(1 + count)` against `log log B` over points
/// with `log log B > 0` and at least one candidate.
pub fn kappa_fit(points: &[(u64, usize)]) -> Option<f64> {
    let pts: Vec<(f64, f64)> = points
        .iter()
        .filter(|&&(_, c)| c >= 1)
        .map(|&(b, c)| ((b as f64).ln().ln(), (1.0 + c as f64).ln()))
        .filter(|(x, _)| *x > 0.0)
        .collect();
    if pts.len() < 2 {
        return None;
    }
    let n = pts.len() as f64;
    let mx = pts.iter().map(|p| p.0).sum::<f64>() / n;
    let my = pts.iter().map(|p| p.1).sum::<f64>() / n;
    let sxx: f64 = pts.iter().map(|p| (p.0 - mx).powi(2)).sum();
    if sxx == 0.0 {
        return None;
    }
    let sxy: f64 = pts.iter().map(|p| (p.0 - mx) * (p.1 - my)).sum();
    Some(sxy / sxx)
}

fn record_height(r: &ScanRecord, mode: HeightMode) -> Result<Option<BigUint>> {
    match mode {
        HeightMode::Parameter => Ok(Some(BigUint::from(r.h_t))),
        HeightMode::JProxy => r.j_height(),
    }
}

/// Counts per grid bound, the empirical exponent, and the two bound curves.
///
/// `scan_bound` is the height bound the records were produced with; when
/// absent it is taken to be the largest height present. Grid points above it
/// are rejected.
pub fn report(
    records: &[ScanRecord],
    grid: &[u64],
    params: &BoundParams,
    height_mode: HeightMode,
    scan_bound: Option<u64>,
) -> Result<Report> {
    params.validate()?;
    if grid.is_empty() || grid.windows(2).any(|w| w[0] >= w[1]) || grid[0] == 0 {
        return Err(Error::invalid(
            "grid must be a nonempty increasing list of positive bounds",
        ));
    }
    let mut entries: Vec<(Option<BigUint>, Status)> = Vec::with_capacity(records.len());
    for r in records {
        entries.push((record_height(r, height_mode)?, r.status()?));
    }
    let range = match scan_bound {
        Some(b) => Some(BigUint::from(b)),
        None => entries.iter().filter_map(|(h, _)| h.clone()).max(),
    };
    if let (Some(range), Some(&last)) = (&range, grid.last()) {
        if BigUint::from(last) > *range {
            return Err(Error::invalid(format!(
                "grid bound {last} exceeds the scanned range {range}"
            )));
        }
    }
    let rows = grid
        .iter()
        .map(|&b| {
            let bb = BigUint::from(b);
            let inside: Vec<Status> = entries
                .iter()
                .filter(|(h, _)| h.as_ref().is_some_and(|h| *h <= bb))
                .map(|(_, s)| *s)
                .collect();
            let count = |s: Status| inside.iter().filter(|&&x| x == s).count();
            let ln_b = (b as f64).ln();
            ReportRow {
                bound: b,
                candidates: count(Status::Candidate),
                simple: count(Status::Simple),
                degenerate: count(Status::Degenerate),
                total: inside.len(),
                total_bound_log: total_bound_log(ln_b, params).ok(),
                eehk_bound_log: eehk_bound_log(ln_b, params.g, params.c, params.d as f64).ok(),
            }
        })
        .collect::<Vec<_>>();
    let points: Vec<(u64, usize)> = rows.iter().map(|r| (r.bound, r.candidates)).collect();
    Ok(Report {
        height_mode,
        kappa_emp: kappa_fit(&points),
        rows,
    })
}

fn opt(x: Option<f64>) -> String {
    x.map(|v| format!("{v:.6}")).unwrap_or_else(|| "n/a".into())
}

impl fmt::Display for Report {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(
            f,
            "{:>12} {:>10} {:>8} {:>10} {:>8} {:>16} {:>16}",
            "B", "candidate", "simple", "degenerate", "total", "total_bound_log", "eehk_bound_log"
        )?;
        for r in &self.rows {
            writeln!(
                f,
                "{:>12} {:>10} {:>8} {:>10} {:>8} {:>16} {:>16}",
                r.bound,
                r.candidates,
                r.simple,
                r.degenerate,
                r.total,
                opt(r.total_bound_log),
                opt(r.eehk_bound_log)
            )?;
        }
        writeln!(f, "kappa_emp: {}", opt(self.kappa_emp))?;
        writeln!(
            f,
            "# kappa_emp: slope of log(1 + candidates) on log log B over grid points with log log B > 0 and at least one candidate"
        )?;
        writeln!(
            f,
            "# bound columns use placeholder constants and are n/a below the level-optimization threshold"
        )?;
        match self.height_mode {
            HeightMode::Parameter => write!(f, "# heights: H(t)"),
            HeightMode::JProxy => write!(
                f,
                "# heights: H_j of (j1 : j2 : j3 : 1), a proxy for the moduli-point height"
            ),
        }
    }
}
