//! Analysis reports and their JSON and markdown renderings.

mod scan;

use std::fmt::Write as _;
use std::time::{Duration, Instant};

use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::blocks::BlockDistribution;
use crate::chartable::{validate_brauer_permutation_lemma, CharacterTable};
use crate::error::{Error, Result};
use crate::invariants::{analyze_block, AnalysisOptions, BlockReport};
use crate::numtheory;
use crate::sections::collect_divisors;

pub use scan::{scan_directory, PrimeSelection, ScanReport, ScanRow};

/// `"num/den"`, the denominator always written.
pub fn rational_string(q: &BigRational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub fn p_power_json(p: u64, exp: u32) -> Value {
    json!({ "p": p, "exp": exp })
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ValidationSummary {
    pub orthogonality: bool,
    /// Per odd prime dividing `|G|`; empty when skipped.
    pub brauer_permutation: Vec<(u64, bool)>,
}

/// Table checks beyond those done on load: Brauer's permutation lemma for
/// every odd prime dividing `|G|`, unless `lenient`.
pub fn validate(t: &CharacterTable, lenient: bool) -> Result<ValidationSummary> {
    let mut brauer = Vec::new();
    if !lenient {
        for q in numtheory::prime_divisors(t.order()).into_iter().filter(|&q| q != 2) {
            let ok = validate_brauer_permutation_lemma(t, q)?;
            if !ok {
                return Err(Error::Validation(format!(
                    "Brauer permutation lemma fails for the {q}-Galois group: character and class orbit sizes differ"
                )));
            }
            brauer.push((q, ok));
        }
    }
    Ok(ValidationSummary { orthogonality: true, brauer_permutation: brauer })
}

#[derive(Clone, Debug)]
pub struct AnalysisReport {
    pub table: String,
    pub prime: u64,
    pub blocks: Vec<BlockReport>,
    pub validation: ValidationSummary,
    pub anomalies: Vec<String>,
    pub timing: Option<Duration>,
}

/// Analyze every block of `t` at `p`, or only block `only`.
pub fn analyze_table(t: &CharacterTable, p: u64, opts: AnalysisOptions, only: Option<usize>) -> Result<AnalysisReport> {
    let start = Instant::now();
    let validation = validate(t, true)?;
    let dist = BlockDistribution::new(t, p)?;
    let chosen: Vec<usize> = match only {
        Some(i) if i >= dist.blocks.len() => {
            return Err(Error::Usage(format!("block {i} out of range: {} blocks at p = {p}", dist.blocks.len())))
        }
        Some(i) => vec![i],
        None => (0..dist.blocks.len()).collect(),
    };
    let blocks = chosen
        .par_iter()
        .map(|&i| analyze_block(t, &dist, &dist.blocks[i], opts))
        .collect::<Result<Vec<_>>>()?;
    let anomalies = block_anomalies(&blocks);
    Ok(AnalysisReport {
        table: t.name().to_string(),
        prime: p,
        blocks,
        validation,
        anomalies,
        timing: Some(start.elapsed()),
    })
}

fn block_anomalies(blocks: &[BlockReport]) -> Vec<String> {
    let mut out = Vec::new();
    for b in blocks {
        if b.gamma < BigRational::one() {
            out.push(format!("block {}: gamma = {} < 1", b.index, b.gamma_string()));
        }
        if b.nilpotency.is_anomalous() {
            out.push(format!(
                "block {}: gamma = {} but heightZeroDegreesEqual = {}",
                b.index,
                b.gamma_string(),
                b.nilpotency.height_zero_degrees_equal
            ));
        }
    }
    out
}

pub fn block_json(b: &BlockReport) -> Value {
    let divisors: Vec<Value> = collect_divisors(&b.divisors)
        .into_iter()
        .map(|(e, m)| json!({ "p": b.p, "exp": e, "multiplicity": m }))
        .collect();
    json!({
        "index": b.index,
        "characters": b.characters,
        "heights": b.heights,
        "defect": b.defect,
        "defectGroupOrder": p_power_json(b.p, b.defect),
        "k": b.k,
        "l": b.l,
        "gamma": b.gamma_string(),
        "elementaryDivisors": divisors,
        "orbitSizes": b.orbit_sizes,
        "cyclicDefect": b.cyclic_defect,
        "expCenter": p_power_json(b.p, b.exp_center),
        "abelian": {
            "necessaryCheck": b.abelian.necessary_check,
            "exponent": b.abelian.exponent.map(|e| p_power_json(b.p, e)),
            "isoType": b.abelian.iso_type,
        },
        "dd4": b.dd4,
        "tame": b.tame.as_str(),
        "nilpotency": {
            "defectZero": b.nilpotency.defect_zero,
            "allDegreesEqual": b.nilpotency.all_degrees_equal,
            "heightZeroDegreesEqual": b.nilpotency.height_zero_degrees_equal,
            "gammaEqualsOne": b.nilpotency.gamma_equals_one,
        },
        "defectGroupNormal": b.defect_group_normal,
        "notes": b.notes,
    })
}

impl AnalysisReport {
    /// The report as JSON; `timing` adds the elapsed time, which makes the
    /// output nondeterministic.
    pub fn to_json(&self, timing: bool) -> Value {
        let mut v = json!({
            "table": self.table,
            "prime": self.prime,
            "blocks": self.blocks.iter().map(block_json).collect::<Vec<_>>(),
            "validation": {
                "orthogonality": self.validation.orthogonality,
                "brauerPermutation": self.validation.brauer_permutation.iter()
                    .map(|&(q, ok)| json!({ "prime": q, "holds": ok })).collect::<Vec<_>>(),
            },
            "anomalies": self.anomalies,
        });
        if timing {
            if let Some(d) = self.timing {
                v["timing"] = json!({ "elapsedMicros": d.as_micros() as u64 });
            }
        }
        v
    }

    pub fn to_markdown(&self, timing: bool) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "# {} at p = {}\n", self.table, self.prime);
        let _ = writeln!(s, "| block | characters | d | k | l | gamma | cyclic | exp Z(D) | abelian check | exp D | type | dd4 | tame |");
        let _ = writeln!(s, "|---|---|---|---|---|---|---|---|---|---|---|---|---|");
        for b in &self.blocks {
            let pow = |e: u32| b.p.pow(e).to_string();
            let _ = writeln!(
                s,
                "| {} | {:?} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} | {} |",
                b.index,
                b.characters,
                b.defect,
                b.k,
                b.l,
                b.gamma_string(),
                b.cyclic_defect,
                pow(b.exp_center),
                b.abelian.necessary_check,
                b.abelian.exponent.map_or("-".to_string(), pow),
                b.abelian.iso_type.as_ref().map_or("-".to_string(), |t| format!("{t:?}")),
                b.dd4.map_or("-".to_string(), |x| x.to_string()),
                b.tame,
            );
        }
        let _ = writeln!(s, "\n## Nilpotency indicators\n");
        let _ = writeln!(s, "| block | defect zero | all degrees equal | height-zero degrees equal | gamma = 1 | D normal |");
        let _ = writeln!(s, "|---|---|---|---|---|---|");
        for b in &self.blocks {
            let n = &b.nilpotency;
            let _ = writeln!(
                s,
                "| {} | {} | {} | {} | {} | {} |",
                b.index, n.defect_zero, n.all_degrees_equal, n.height_zero_degrees_equal, n.gamma_equals_one, b.defect_group_normal
            );
        }
        let notes: Vec<String> =
            self.blocks.iter().flat_map(|b| b.notes.iter().map(move |n| format!("block {}: {n}", b.index))).collect();
        if !notes.is_empty() {
            let _ = writeln!(s, "\n## Notes\n");
            for n in notes {
                let _ = writeln!(s, "- {n}");
            }
        }
        let _ = writeln!(s, "\n## Anomalies\n");
        if self.anomalies.is_empty() {
            let _ = writeln!(s, "none");
        }
        for a in &self.anomalies {
            let _ = writeln!(s, "- {a}");
        }
        if timing {
            if let Some(d) = self.timing {
                let _ = writeln!(s, "\nelapsed: {} us", d.as_micros());
            }
        }
        s
    }
}
