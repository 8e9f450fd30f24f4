//! p-section Gram matrices of a block, their elementary divisors over the
//! local ring, major subsections and the fusion number.

use std::collections::BTreeMap;

use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::{One, Zero};
use rayon::prelude::*;

use crate::blocks::{field_index_p_part, field_stabilizer, Block, BlockDistribution, UnitSubgroup};
use crate::chartable::{p_sections, CharacterTable, SectionPartition};
use crate::cyclotomic::{Cyclotomic, LocalContext};
use crate::error::{Error, Result};
use crate::numtheory;

/// A multiset of p-powers, as ascending exponents.
pub type Divisors = Vec<u32>;

/// `(exponent, multiplicity)` pairs, ascending.
pub fn collect_divisors(d: &[u32]) -> Vec<(u32, usize)> {
    let mut out: Vec<(u32, usize)> = Vec::new();
    for &e in d {
        match out.last_mut() {
            Some((x, n)) if *x == e => *n += 1,
            _ => out.push((e, 1)),
        }
    }
    out
}

#[derive(Clone, Debug)]
pub struct SectionAnalysis {
    pub block: usize,
    /// The p-element class `x` of the section.
    pub representative: usize,
    pub classes: Vec<usize>,
    pub gram: Vec<Vec<Cyclotomic>>,
    pub divisors: Divisors,
    pub major_count: usize,
}

/// `M[i][j] = sum_{chi in B} chi(g_i) conj(chi(g_j))` over the given classes.
pub fn gram(t: &CharacterTable, characters: &[usize], classes: &[usize]) -> Vec<Vec<Cyclotomic>> {
    let conj: Vec<Vec<Cyclotomic>> = characters
        .iter()
        .map(|&chi| classes.iter().map(|&k| t.value(chi, k).conj()).collect())
        .collect();
    classes
        .iter()
        .map(|&ki| {
            (0..classes.len())
                .map(|j| {
                    characters
                        .iter()
                        .zip(&conj)
                        .map(|(&chi, cj)| t.value(chi, ki).mul(&cj[j]))
                        .sum()
                })
                .collect()
        })
        .collect()
}

/// The Gram matrix `X_x^t conj(X_x)` of `b` on the p-section of the p-element
/// class `x`.
pub fn section_gram(t: &CharacterTable, b: &Block, sections: &SectionPartition, x: usize) -> Vec<Vec<Cyclotomic>> {
    let s = sections.representatives.iter().position(|&r| r == x).expect("x is a section representative");
    gram(t, &b.characters, &sections.members[s])
}

/// Elementary divisors at the prime of `ctx` by valuation-pivot elimination:
/// take an entry of least normalized valuation (ties to the smallest
/// `(row, column)`), record it, clear its row and column, repeat.
pub fn local_elementary_divisors(m: &[Vec<Cyclotomic>], ctx: &LocalContext) -> Result<Divisors> {
    let mut rows: Vec<Vec<Cyclotomic>> = m.to_vec();
    let mut out = Vec::new();
    while !rows.is_empty() && !rows[0].is_empty() {
        let mut best: Option<(Rational64, usize, usize)> = None;
        for (i, row) in rows.iter().enumerate() {
            for (j, x) in row.iter().enumerate() {
                if x.is_zero() {
                    continue;
                }
                let v = ctx.normalized_valuation(x)?;
                if best.as_ref().map_or(true, |(bv, _, _)| v < *bv) {
                    best = Some((v, i, j));
                }
            }
        }
        let Some((v, pi, pj)) = best else { break };
        if !v.is_integer() || v < Rational64::zero() {
            return Err(Error::NonIntegralDivisor(format!("pivot of valuation {v} at p = {}", ctx.p())));
        }
        out.push(v.to_integer() as u32);
        let pivot_inv = rows[pi][pj].inv()?;
        let pivot_row: Vec<Cyclotomic> = rows[pi].clone();
        let mut next = Vec::with_capacity(rows.len() - 1);
        for (i, row) in rows.iter().enumerate() {
            if i == pi {
                continue;
            }
            let f = row[pj].mul(&pivot_inv);
            let new_row: Vec<Cyclotomic> = row
                .iter()
                .enumerate()
                .filter(|&(j, _)| j != pj)
                .map(|(j, x)| if f.is_zero() { x.clone() } else { x.sub(&f.mul(&pivot_row[j])) })
                .collect();
            next.push(new_row);
        }
        rows = next;
    }
    out.sort_unstable();
    Ok(out)
}

fn block_ctx(dist: &BlockDistribution) -> &LocalContext {
    &dist.ctx
}

/// Analyses of every p-section of `b`.
pub fn analyze_sections(t: &CharacterTable, dist: &BlockDistribution, b: &Block) -> Result<Vec<SectionAnalysis>> {
    let sections = p_sections(t, dist.p);
    analyze_sections_with(t, b, &sections, block_ctx(dist))
}

pub fn analyze_sections_with(
    t: &CharacterTable,
    b: &Block,
    sections: &SectionPartition,
    ctx: &LocalContext,
) -> Result<Vec<SectionAnalysis>> {
    sections
        .representatives
        .par_iter()
        .zip(&sections.members)
        .map(|(&x, classes)| {
            let gram = gram(t, &b.characters, classes);
            let divisors = local_elementary_divisors(&gram, ctx)?;
            let major_count = divisors.iter().filter(|&&e| e == b.defect).count();
            Ok(SectionAnalysis { block: b.index, representative: x, classes: classes.clone(), gram, divisors, major_count })
        })
        .collect()
}

/// Multiplicity of `|D|` among the elementary divisors of the section of `x`.
pub fn major_subsection_count(t: &CharacterTable, dist: &BlockDistribution, b: &Block, x: usize) -> Result<usize> {
    let sections = p_sections(t, dist.p);
    let g = section_gram(t, b, &sections, x);
    let d = local_elementary_divisors(&g, &dist.ctx)?;
    Ok(d.iter().filter(|&&e| e == b.defect).count())
}

/// `exp(Z(D))`: the largest order of a p-element with a major subsection.
pub fn exp_center_of_defect(t: &CharacterTable, analyses: &[SectionAnalysis]) -> u64 {
    analyses
        .iter()
        .filter(|a| a.major_count > 0)
        .map(|a| t.class(a.representative).element_order)
        .max()
        .unwrap_or(1)
}

/// For a major subsection at `x` of order `p^e`, the field of values of
/// `X_x` satisfies `|Q(X_x) Q_m : Q_m|_p = p^(e-1)` (`1` when `x = 1`).
pub fn verify_section_field_index(t: &CharacterTable, b: &Block, analysis: &SectionAnalysis) -> bool {
    let n = t.exponent();
    let values: Vec<&Cyclotomic> = b
        .characters
        .iter()
        .flat_map(|&chi| analysis.classes.iter().map(move |&k| t.value(chi, k)))
        .collect();
    let h = field_stabilizer(values, n);
    let u = UnitSubgroup::congruent_to_one(n, numtheory::p_prime_part(n, b.p));
    let index = field_index_p_part(&h, &u, b.p);
    let order = t.class(analysis.representative).element_order;
    if order == 1 {
        index == 1
    } else {
        b.p * index == order
    }
}

/// Number of major subsections `(x, b)` with `o(x) = p^i`, keyed by `p^i`.
pub fn subsection_order_census(t: &CharacterTable, analyses: &[SectionAnalysis]) -> BTreeMap<u64, usize> {
    let mut census = BTreeMap::new();
    for a in analyses {
        let o = t.class(a.representative).element_order;
        *census.entry(o).or_insert(0) += a.major_count;
    }
    census.retain(|_, &mut c| c > 0);
    census
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct FusionReport {
    pub gamma: BigRational,
    /// Elementary divisors attributed to the block itself.
    pub divisors: Divisors,
    /// Elementary divisors of the union of the Galois conjugate blocks.
    pub union_divisors: Divisors,
    pub galois_block_count: usize,
}

/// `gamma(B) = sum 1/e_i` over the elementary divisors of `B`, computed from
/// the integral Gram matrix of the union of the Galois conjugates of `B`.
pub fn fusion_number(t: &CharacterTable, dist: &BlockDistribution, b: &Block) -> Result<FusionReport> {
    let conjugates = dist.galois_conjugates(b);
    let mut characters: Vec<usize> = conjugates.iter().flat_map(|&i| dist.blocks[i].characters.clone()).collect();
    characters.sort_unstable();
    let classes: Vec<usize> = (0..t.num_classes()).collect();
    let g = gram(t, &characters, &classes);
    for (i, row) in g.iter().enumerate() {
        for (j, x) in row.iter().enumerate() {
            if x.to_integer().is_none() {
                return Err(Error::TableInconsistent(format!(
                    "Gram matrix of the Galois union of block {} has entry {x} at classes {i}, {j}",
                    b.index
                )));
            }
        }
    }
    let union_divisors = local_elementary_divisors(&g, &dist.ctx)?;
    let count = conjugates.len();
    let mut divisors = Vec::new();
    for (e, mult) in collect_divisors(&union_divisors) {
        if mult % count != 0 {
            return Err(Error::TableInconsistent(format!(
                "divisor {}^{e} occurs {mult} times across {count} conjugate blocks",
                dist.p
            )));
        }
        divisors.extend(std::iter::repeat(e).take(mult / count));
    }
    let gamma = gamma_of(dist.p, &union_divisors) / BigRational::from_integer(BigInt::from(count));
    Ok(FusionReport { gamma, divisors, union_divisors, galois_block_count: count })
}

impl FusionReport {
    /// `gamma` as `"num/den"`, with the denominator always written.
    pub fn gamma_string(&self) -> String {
        format!("{}/{}", self.gamma.numer(), self.gamma.denom())
    }
}

/// `sum_i p^(-e_i)`.
pub fn gamma_of(p: u64, divisors: &[u32]) -> BigRational {
    divisors.iter().fold(BigRational::zero(), |acc, &e| {
        acc + BigRational::new(BigInt::one(), BigInt::from(p).pow(e))
    })
}

/// Elementary divisors of the full Gram matrix of one block, computed over
/// the cyclotomic local ring without forming the Galois union.
pub fn block_elementary_divisors(t: &CharacterTable, b: &Block, ctx: &LocalContext) -> Result<Divisors> {
    let classes: Vec<usize> = (0..t.num_classes()).collect();
    local_elementary_divisors(&gram(t, &b.characters, &classes), ctx)
}
