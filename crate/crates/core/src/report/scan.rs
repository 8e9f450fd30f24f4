//! Corpus scans: every block of every table at the selected primes.

use std::path::{Path, PathBuf};

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

use super::rational_string;
use crate::blocks::BlockDistribution;
use crate::chartable::{load_table, CharacterTable};
use crate::error::{Error, Result};
use crate::invariants::{nilpotency_indicators, NilpotencyIndicators};
use crate::numtheory;
use crate::sections::fusion_number;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum PrimeSelection {
    /// Every prime dividing `|G|`.
    All,
    List(Vec<u64>),
}

impl PrimeSelection {
    /// `"all"` or a comma-separated list of primes.
    pub fn parse(s: &str) -> Result<Self> {
        if s == "all" {
            return Ok(Self::All);
        }
        let primes = s
            .split(',')
            .map(|x| {
                let q: u64 = x.trim().parse().map_err(|_| Error::Usage(format!("bad prime {x:?}")))?;
                if numtheory::is_prime(q) {
                    Ok(q)
                } else {
                    Err(Error::Usage(format!("{q} is not a prime")))
                }
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Self::List(primes))
    }

    fn for_table(&self, t: &CharacterTable) -> Vec<u64> {
        match self {
            Self::All => numtheory::prime_divisors(t.order()),
            Self::List(l) => l.clone(),
        }
    }
}

#[derive(Clone, Debug)]
pub struct ScanRow {
    pub file: String,
    pub table: String,
    pub prime: u64,
    pub block: usize,
    pub characters: Vec<usize>,
    pub defect: u32,
    pub gamma: BigRational,
    pub nilpotency: NilpotencyIndicators,
}

impl ScanRow {
    pub fn gamma_below_one(&self) -> bool {
        self.gamma < BigRational::one()
    }

    /// `gamma = 1` disagrees with "all degrees equal".
    pub fn degree_mismatch(&self) -> bool {
        self.nilpotency.gamma_equals_one != self.nilpotency.all_degrees_equal
    }

    pub fn to_json(&self) -> Value {
        let n = &self.nilpotency;
        json!({
            "file": self.file,
            "table": self.table,
            "prime": self.prime,
            "block": self.block,
            "characters": self.characters,
            "defect": self.defect,
            "gamma": rational_string(&self.gamma),
            "nilpotency": {
                "defectZero": n.defect_zero,
                "allDegreesEqual": n.all_degrees_equal,
                "heightZeroDegreesEqual": n.height_zero_degrees_equal,
                "gammaEqualsOne": n.gamma_equals_one,
            },
            "gammaEqualsOne": n.gamma_equals_one,
            "degreeMismatch": self.degree_mismatch(),
            "heightZeroMismatch": n.gamma_equals_one != n.height_zero_degrees_equal,
            "anomaly": self.gamma_below_one(),
        })
    }
}

#[derive(Clone, Debug, Default)]
pub struct ScanReport {
    pub files: Vec<String>,
    /// Sorted by `(file, prime, block)`.
    pub rows: Vec<ScanRow>,
    pub warnings: Vec<String>,
}

impl ScanReport {
    pub fn anomaly_count(&self) -> usize {
        self.rows.iter().filter(|r| r.gamma_below_one()).count()
    }

    pub fn to_json(&self) -> Value {
        let count = |f: &dyn Fn(&ScanRow) -> bool| self.rows.iter().filter(|r| f(r)).count();
        json!({
            "files": self.files,
            "rows": self.rows.iter().map(ScanRow::to_json).collect::<Vec<_>>(),
            "summary": {
                "tables": self.files.len(),
                "rows": self.rows.len(),
                "gammaBelowOne": self.anomaly_count(),
                "gammaEqualsOne": count(&|r| r.nilpotency.gamma_equals_one),
                "allDegreesEqual": count(&|r| r.nilpotency.all_degrees_equal),
                "degreeMismatch": count(&|r| r.degree_mismatch()),
                "heightZeroMismatch": count(&|r| r.nilpotency.gamma_equals_one != r.nilpotency.height_zero_degrees_equal),
                "skipped": self.warnings.len(),
            },
            "warnings": self.warnings,
        })
    }
}

fn scan_table(file: &str, t: &CharacterTable, primes: &PrimeSelection) -> Result<Vec<ScanRow>> {
    let mut rows = Vec::new();
    for p in primes.for_table(t) {
        let dist = BlockDistribution::new(t, p)?;
        let mut part = dist
            .blocks
            .par_iter()
            .map(|b| {
                let gamma = fusion_number(t, &dist, b)?.gamma;
                Ok(ScanRow {
                    file: file.to_string(),
                    table: t.name().to_string(),
                    prime: p,
                    block: b.index,
                    characters: b.characters.clone(),
                    defect: b.defect,
                    nilpotency: nilpotency_indicators(t, b, &gamma),
                    gamma,
                })
            })
            .collect::<Result<Vec<_>>>()?;
        rows.append(&mut part);
    }
    Ok(rows)
}

/// The `.json` files directly inside `dir`, sorted by name.
fn table_files(dir: &Path) -> Result<Vec<PathBuf>> {
    let mut files = Vec::new();
    for entry in std::fs::read_dir(dir)? {
        let path = entry?.path();
        if path.is_file() && path.extension().is_some_and(|e| e == "json") {
            files.push(path);
        }
    }
    files.sort();
    Ok(files)
}

/// Scan every table in `dir`. Unreadable or invalid files become warnings.
pub fn scan_directory(dir: &Path, primes: &PrimeSelection) -> Result<ScanReport> {
    let files = table_files(dir)?;
    let results: Vec<(String, Result<Vec<ScanRow>>)> = files
        .par_iter()
        .map(|path| {
            let name = path.file_name().map(|n| n.to_string_lossy().into_owned()).unwrap_or_default();
            let rows = load_table(path).and_then(|t| scan_table(&name, &t, primes));
            (name, rows)
        })
        .collect();
    let mut report = ScanReport::default();
    for (name, rows) in results {
        match rows {
            Ok(rows) => {
                report.files.push(name);
                report.rows.extend(rows);
            }
            Err(e) => report.warnings.push(format!("{name}: skipped: {e}")),
        }
    }
    report.rows.sort_by(|a, b| (&a.file, a.prime, a.block).cmp(&(&b.file, b.prime, b.block)));
    Ok(report)
}
