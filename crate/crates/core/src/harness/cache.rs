use std::collections::HashMap;
use std::fs::{File, OpenOptions};
use std::io::{BufWriter, Read, Write};
use std::path::{Path, PathBuf};
use std::sync::Mutex;

use sha2::{Digest, Sha256};

use crate::classifier::Status;
use crate::error::{Error, Result};
use crate::heights::Rat;
use crate::poly::IntPoly;

/// Cached classification of one parameter.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CachedResult {
    pub status: Status,
    pub certifying_prime: Option<u64>,
    pub primes_tested: usize,
}

/// Hex SHA-256 of everything the classification depends on.
pub fn cache_key(f: &IntPoly, t: &Rat, p_max: u64, k_test: &[u32]) -> String {
    let ks: Vec<String> = k_test.iter().map(u32::to_string).collect();
    let text = format!(
        "f={};t={t};pmax={p_max};k={}",
        f.to_descending_string(),
        ks.join(" ")
    );
    let digest = Sha256::digest(text.as_bytes());
    digest.iter().map(|b| format!("{b:02x}")).collect()
}

fn parse_line(line: &str) -> Option<(String, CachedResult)> {
    let parts: Vec<&str> = line.split(',').collect();
    if parts.len() != 5 || parts[0].len() != 64 {
        return None;
    }
    parts[1].parse::<Rat>().ok()?;
    let status = Status::parse(parts[2]).ok()?;
    let certifying_prime = match parts[3] {
        "" => None,
        p => Some(p.parse().ok()?),
    };
    if (status == Status::Simple) != certifying_prime.is_some() {
        return None;
    }
    let primes_tested = parts[4].parse().ok()?;
    Some((
        parts[0].to_string(),
        CachedResult {
            status,
            certifying_prime,
            primes_tested,
        },
    ))
}

/// Append-only line cache `key,t,status,certifying_prime,primes_tested`.
/// Lines that fail to parse (such as a truncated final write) are ignored.
pub struct Cache {
    path: PathBuf,
    entries: HashMap<String, CachedResult>,
    writer: Mutex<BufWriter<File>>,
}

impl Cache {
    pub fn open(path: impl AsRef<Path>) -> Result<Self> {
        let path = path.as_ref().to_path_buf();
        let mut file = OpenOptions::new()
            .create(true)
            .read(true)
            .append(true)
            .open(&path)
            .map_err(|e| Error::io(&path, e))?;
        let mut bytes = Vec::new();
        file.read_to_end(&mut bytes)
            .map_err(|e| Error::io(&path, e))?;
        let text = String::from_utf8_lossy(&bytes);
        let entries = text.lines().filter_map(parse_line).collect();
        if !bytes.is_empty() && !bytes.ends_with(b"\n") {
            // start fresh after a truncated line
            file.write_all(b"\n").map_err(|e| Error::io(&path, e))?;
        }
        Ok(Cache {
            path,
            entries,
            writer: Mutex::new(BufWriter::new(file)),
        })
    }

    pub fn len(&self) -> usize {
        self.entries.len()
    }

    pub fn is_empty(&self) -> bool {
        self.entries.is_empty()
    }

    pub fn get(&self, key: &str) -> Option<&CachedResult> {
        self.entries.get(key)
    }

    /// Appends and flushes one line; safe to call from several workers.
    pub fn append(&self, key: &str, t: &Rat, result: &CachedResult) -> Result<()> {
        let line = format!(
            "{key},{t},{},{},{}\n",
            result.status,
            result
                .certifying_prime
                .map(|p| p.to_string())
                .unwrap_or_default(),
            result.primes_tested
        );
        let mut w = self.writer.lock().expect("cache writer poisoned");
        w.write_all(line.as_bytes())
            .and_then(|_| w.flush())
            .map_err(|e| Error::io(&self.path, e))
    }
}
