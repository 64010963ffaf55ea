use std::path::PathBuf;

use super::HeightMode;
use crate::error::{Error, Result};

/// Parses `key = value` lines. Blank lines and `#` comments are skipped;
/// later duplicates win.
pub fn parse_key_values(text: &str) -> Result<Vec<(String, String)>> {
    let mut out: Vec<(String, String)> = Vec::new();
    for (n, raw) in text.lines().enumerate() {
        let line = raw.split('#').next().unwrap_or("").trim();
        if line.is_empty() {
            continue;
        }
        let (k, v) = line.split_once('=').ok_or_else(|| {
            Error::invalid(format!(
                "line {}: expected `key = value`, got {raw:?}",
                n + 1
            ))
        })?;
        let k = k.trim().to_string();
        let v = v.trim().to_string();
        out.retain(|(existing, _)| existing != &k);
        out.push((k, v));
    }
    Ok(out)
}

/// Extension degrees as `a-b` ranges and single values, comma separated,
/// e.g. `2-60` or `2,3,4,6`.
pub fn parse_k_test(text: &str) -> Result<Vec<u32>> {
    let mut out = Vec::new();
    for part in text.split(',').map(str::trim).filter(|s| !s.is_empty()) {
        let bad = || Error::invalid(format!("bad extension degree list {text:?}"));
        match part.split_once('-') {
            Some((a, b)) => {
                let a: u32 = a.trim().parse().map_err(|_| bad())?;
                let b: u32 = b.trim().parse().map_err(|_| bad())?;
                if a == 0 || a > b {
                    return Err(bad());
                }
                out.extend(a..=b);
            }
            None => {
                let k: u32 = part.parse().map_err(|_| bad())?;
                if k == 0 {
                    return Err(bad());
                }
                out.push(k);
            }
        }
    }
    out.sort_unstable();
    out.dedup();
    Ok(out)
}

/// Scan settings read from a manifest file; every field is optional so
/// command-line flags can fill or override them.
#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct ScanManifest {
    pub family: Option<PathBuf>,
    pub height_bound: Option<u64>,
    pub primes: Option<u64>,
    pub k_test: Option<Vec<u32>>,
    pub height_mode: Option<HeightMode>,
    pub workers: Option<usize>,
    pub cache: Option<PathBuf>,
    pub out: Option<PathBuf>,
}

fn number<T: std::str::FromStr>(key: &str, v: &str) -> Result<T> {
    v.parse()
        .map_err(|_| Error::invalid(format!("{key}: cannot parse {v:?}")))
}

impl ScanManifest {
    pub fn parse(text: &str) -> Result<Self> {
        let mut m = ScanManifest::default();
        for (k, v) in parse_key_values(text)? {
            match k.as_str() {
                "family" => m.family = Some(PathBuf::from(v)),
                "height_bound" | "height-bound" => m.height_bound = Some(number(&k, &v)?),
                "primes" => m.primes = Some(number(&k, &v)?),
                "k_test" | "k-test" => m.k_test = Some(parse_k_test(&v)?),
                "height_mode" | "height-mode" => m.height_mode = Some(v.parse()?),
                "workers" => m.workers = Some(number(&k, &v)?),
                "cache" => m.cache = Some(PathBuf::from(v)),
                "out" => m.out = Some(PathBuf::from(v)),
                other => return Err(Error::invalid(format!("unknown config key {other:?}"))),
            }
        }
        Ok(m)
    }
}
