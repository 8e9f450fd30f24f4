//! Blocks of `G` dominating blocks of a central quotient `G/Z`, matched
//! through the character correspondence stored in table metadata.

use std::path::{Path, PathBuf};

use num_rational::BigRational;

use crate::blocks::BlockDistribution;
use crate::chartable::CharacterTable;
use crate::error::{Error, Result};
use crate::sections::fusion_number;

/// `meta.centralQuotient` of a table.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CentralQuotient {
    /// File name of the quotient table, relative to the table's directory.
    pub file: String,
    /// `|Z| = prime`.
    pub prime: u64,
    pub class_fusion: Vec<usize>,
    /// `(chi in G, chi-bar in G/Z)`: the characters with `Z` in their kernel.
    pub character_map: Vec<(usize, usize)>,
}

impl CentralQuotient {
    pub fn from_table(t: &CharacterTable) -> Result<Option<Self>> {
        let Some(cq) = t.meta().and_then(|m| m.get("centralQuotient")) else {
            return Ok(None);
        };
        let bad = || Error::Parse(format!("{}: malformed meta.centralQuotient", t.name()));
        let file = cq.get("file").and_then(|v| v.as_str()).ok_or_else(bad)?.to_string();
        let prime = cq.get("prime").and_then(|v| v.as_u64()).ok_or_else(bad)?;
        let class_fusion = cq
            .get("classFusion")
            .and_then(|v| v.as_array())
            .ok_or_else(bad)?
            .iter()
            .map(|x| x.as_u64().map(|x| x as usize).ok_or_else(bad))
            .collect::<Result<Vec<_>>>()?;
        let character_map = cq
            .get("characterMap")
            .and_then(|v| v.as_array())
            .ok_or_else(bad)?
            .iter()
            .map(|pair| {
                let a = pair.as_array().filter(|a| a.len() == 2).ok_or_else(bad)?;
                Ok((
                    a[0].as_u64().ok_or_else(bad)? as usize,
                    a[1].as_u64().ok_or_else(bad)? as usize,
                ))
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(Some(Self { file, prime, class_fusion, character_map }))
    }

    pub fn path_from(&self, table_path: &Path) -> PathBuf {
        table_path.parent().unwrap_or(Path::new(".")).join(&self.file)
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DominatedPair {
    pub block: usize,
    pub quotient_block: usize,
    pub gamma: BigRational,
    pub quotient_gamma: BigRational,
}

/// For every block of `G` containing a character of `G/Z`, the block of
/// `G/Z` it dominates and both fusion numbers, at `cq.prime`.
pub fn dominated_pairs(t: &CharacterTable, q: &CharacterTable, cq: &CentralQuotient) -> Result<Vec<DominatedPair>> {
    for &(chi, psi) in &cq.character_map {
        if chi >= t.num_characters() || psi >= q.num_characters() {
            return Err(Error::Validation(format!("characterMap pair ({chi}, {psi}) out of range")));
        }
        let inflated: Vec<_> = cq.class_fusion.iter().map(|&k| q.value(psi, k).clone()).collect();
        if t.irreducibles()[chi] != inflated {
            return Err(Error::Validation(format!("character {chi} is not the inflation of quotient character {psi}")));
        }
    }
    let dg = BlockDistribution::new(t, cq.prime)?;
    let dq = BlockDistribution::new(q, cq.prime)?;
    let mut pairs: Vec<(usize, usize)> =
        cq.character_map.iter().map(|&(chi, psi)| (dg.block_of[chi], dq.block_of[psi])).collect();
    pairs.sort_unstable();
    pairs.dedup();
    for w in pairs.windows(2) {
        if w[0].0 == w[1].0 {
            return Err(Error::TableInconsistent(format!(
                "block {} of {} dominates more than one quotient block",
                w[0].0,
                t.name()
            )));
        }
    }
    pairs
        .into_iter()
        .map(|(b, bq)| {
            Ok(DominatedPair {
                block: b,
                quotient_block: bq,
                gamma: fusion_number(t, &dg, &dg.blocks[b])?.gamma,
                quotient_gamma: fusion_number(q, &dq, &dq.blocks[bq])?.gamma,
            })
        })
        .collect()
}
