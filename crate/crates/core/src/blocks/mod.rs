//! p-blocks: distribution of characters via central characters, defects and
//! heights, Galois structure, and block splittings.

mod splitting;
pub mod units;

use std::collections::HashMap;
use std::sync::Arc;

use num_bigint::BigInt;

use crate::chartable::{galois_character_action, maps, CharacterTable};
use crate::cyclotomic::{Cyclotomic, FiniteFieldElem, LocalContext};
use crate::error::{Error, Result};
use crate::linalg;
use crate::numtheory;

pub use splitting::{block_splitting, splitting_coordinates, splitting_coordinates_via_structure_constants};
pub use units::{field_index_p_part, field_stabilizer, UnitSubgroup};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Block {
    pub p: u64,
    /// Position in the sorted distribution.
    pub index: usize,
    /// Character indices, ascending.
    pub characters: Vec<usize>,
    pub defect: u32,
    /// Heights, parallel to `characters`.
    pub heights: Vec<u32>,
    /// Smallest block index among the Galois conjugates of this block.
    pub galois_orbit: usize,
}

impl Block {
    /// `k(B)`, the number of irreducible characters.
    pub fn k(&self) -> usize {
        self.characters.len()
    }

    pub fn defect_group_order(&self) -> u64 {
        self.p.pow(self.defect)
    }

    pub fn contains(&self, chi: usize) -> bool {
        self.characters.binary_search(&chi).is_ok()
    }

    pub fn height(&self, chi: usize) -> Option<u32> {
        self.characters.binary_search(&chi).ok().map(|i| self.heights[i])
    }

    pub fn is_principal(&self, t: &CharacterTable) -> bool {
        self.contains(t.trivial_character())
    }
}

/// The p-blocks of a table together with the prime ideal used to find them.
#[derive(Clone, Debug)]
pub struct BlockDistribution {
    pub p: u64,
    pub ctx: Arc<LocalContext>,
    pub blocks: Vec<Block>,
    /// `block_of[chi]` is the index of the block containing `chi`.
    pub block_of: Vec<usize>,
}

impl BlockDistribution {
    pub fn new(t: &CharacterTable, p: u64) -> Result<Self> {
        let ctx = context_for(t, p)?;
        Self::with_context(t, ctx)
    }

    /// Distribution computed at the prime ideal of `ctx`, which must have
    /// `m = exp(G)_{p'}`.
    pub fn with_context(t: &CharacterTable, ctx: Arc<LocalContext>) -> Result<Self> {
        let p = ctx.p();
        if ctx.m() != numtheory::p_prime_part(t.exponent(), p) {
            return Err(Error::Usage(format!("context m = {} does not match the table", ctx.m())));
        }
        let a = numtheory::valuation(t.order(), p);
        let groups: Vec<Vec<usize>> = if a == 0 {
            (0..t.num_characters()).map(|chi| vec![chi]).collect()
        } else {
            let mut by_residue: HashMap<Vec<FiniteFieldElem>, Vec<usize>> = HashMap::new();
            let mut order = Vec::new();
            for chi in 0..t.num_characters() {
                let key = central_character(t, chi)?
                    .iter()
                    .map(|w| ctx.reduce_mod_prime(w))
                    .collect::<Result<Vec<_>>>()?;
                let entry = by_residue.entry(key.clone()).or_default();
                if entry.is_empty() {
                    order.push(key);
                }
                entry.push(chi);
            }
            order.into_iter().map(|k| by_residue.remove(&k).unwrap()).collect()
        };
        let mut blocks: Vec<Block> = groups
            .into_iter()
            .map(|characters| {
                let vals: Vec<u32> = characters.iter().map(|&chi| numtheory::valuation(t.degree(chi), p)).collect();
                let min = *vals.iter().min().unwrap();
                let defect = a - min;
                Block {
                    p,
                    index: 0,
                    heights: vals.iter().map(|v| v - min).collect(),
                    characters,
                    defect,
                    galois_orbit: 0,
                }
            })
            .collect();
        blocks.sort_by(|x, y| y.defect.cmp(&x.defect).then(x.characters[0].cmp(&y.characters[0])));
        let mut block_of = vec![0; t.num_characters()];
        for (i, b) in blocks.iter_mut().enumerate() {
            b.index = i;
            for &chi in &b.characters {
                block_of[chi] = i;
            }
        }
        // Galois conjugate blocks under all of (Z/exp(G))^x.
        let perms: Vec<Vec<usize>> = numtheory::units(t.exponent())
            .into_iter()
            .map(|k| {
                let chars = galois_character_action(t, k as i64)?;
                Ok(blocks.iter().map(|b| block_of[chars[b.characters[0]]]).collect())
            })
            .collect::<Result<_>>()?;
        for orbit in maps::orbits(blocks.len(), &perms) {
            for &b in &orbit {
                blocks[b].galois_orbit = orbit[0];
            }
        }
        Ok(Self { p, ctx, blocks, block_of })
    }

    pub fn block_containing(&self, chi: usize) -> &Block {
        &self.blocks[self.block_of[chi]]
    }

    /// Indices of the Galois conjugates of `b` (including `b`), ascending.
    pub fn galois_conjugates(&self, b: &Block) -> Vec<usize> {
        self.blocks
            .iter()
            .filter(|x| x.galois_orbit == b.galois_orbit)
            .map(|x| x.index)
            .collect()
    }

    pub fn principal(&self, t: &CharacterTable) -> &Block {
        self.block_containing(t.trivial_character())
    }
}

/// The shared prime-ideal context for `p` and `m = exp(G)_{p'}`.
pub fn context_for(t: &CharacterTable, p: u64) -> Result<Arc<LocalContext>> {
    if !numtheory::is_prime(p) {
        return Err(Error::Usage(format!("{p} is not a prime")));
    }
    LocalContext::shared(p, numtheory::p_prime_part(t.exponent(), p))
}

/// The p-blocks of `t`, sorted by defect (descending) and then by smallest
/// character.
pub fn block_partition(t: &CharacterTable, p: u64) -> Result<Vec<Block>> {
    Ok(BlockDistribution::new(t, p)?.blocks)
}

/// `omega_chi(K) = |K| chi(g_K) / chi(1)` for every class.
pub fn central_character(t: &CharacterTable, chi: usize) -> Result<Vec<Cyclotomic>> {
    let deg = BigInt::from(t.degree(chi));
    (0..t.num_classes())
        .map(|k| {
            let w = t
                .value(chi, k)
                .scale(&num_rational::BigRational::new(BigInt::from(t.class(k).size), deg.clone()));
            if w.is_integral() {
                Ok(w)
            } else {
                Err(Error::TableInconsistent(format!(
                    "central character of {chi} at class {k} ({}) is {w}, not an algebraic integer",
                    t.class(k).name
                )))
            }
        })
        .collect()
}

/// Classes on which some character of `b` does not vanish; these are the
/// classes meeting a defect group, among the p-elements.
pub fn defect_class_support(t: &CharacterTable, b: &Block) -> Vec<usize> {
    (0..t.num_classes())
        .filter(|&k| b.characters.iter().any(|&chi| !t.value(chi, k).is_zero()))
        .collect()
}

pub fn is_p_element(t: &CharacterTable, k: usize, p: u64) -> bool {
    numtheory::p_part(t.class(k).element_order, p) == t.class(k).element_order
}

/// A defect group is normal iff the p-element classes in the support make up
/// exactly `|D|` elements.
pub fn is_defect_group_normal(t: &CharacterTable, b: &Block) -> bool {
    let total: u64 = defect_class_support(t, b)
        .into_iter()
        .filter(|&k| is_p_element(t, k, b.p))
        .map(|k| t.class(k).size)
        .sum();
    total == b.defect_group_order()
}

/// Orbits on `Irr(B)` of the Galois automorphisms fixing all p'-roots of
/// unity, sorted by smallest character.
pub fn p_conjugacy_orbits(t: &CharacterTable, b: &Block) -> Result<Vec<Vec<usize>>> {
    let perms = maps::p_galois_group(t, b.p)
        .into_iter()
        .map(|k| galois_character_action(t, k as i64))
        .collect::<Result<Vec<_>>>()?;
    Ok(maps::orbits(t.num_characters(), &perms)
        .into_iter()
        .filter(|o| b.contains(o[0]))
        .collect())
}

/// `l(B)`: the rank of the values of `Irr(B)` on the p-regular classes.
pub fn l_of_block(t: &CharacterTable, b: &Block) -> usize {
    let regular: Vec<usize> = (0..t.num_classes())
        .filter(|&k| numtheory::gcd(t.class(k).element_order, b.p) == 1)
        .collect();
    let rows = b
        .characters
        .iter()
        .map(|&chi| regular.iter().map(|&k| t.value(chi, k).clone()).collect())
        .collect();
    linalg::rank(rows)
}
