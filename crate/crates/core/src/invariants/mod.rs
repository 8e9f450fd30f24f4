//! Defect-group invariants read off the character table of one block:
//! cyclicity, the exponent and isomorphism type of an abelian defect group,
//! the `|D/D'| = 4` test for 2-blocks, tame type and nilpotency indicators.

mod reduction;

use std::fmt;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;
use rayon::prelude::*;

use crate::blocks::{
    defect_class_support, field_index_p_part, field_stabilizer, is_defect_group_normal, l_of_block,
    p_conjugacy_orbits, Block, BlockDistribution, UnitSubgroup,
};
use crate::chartable::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::numtheory;
use crate::sections::{
    analyze_sections, exp_center_of_defect, fusion_number, subsection_order_census, Divisors, SectionAnalysis,
};

pub use reduction::{dominated_pairs, CentralQuotient, DominatedPair};

#[derive(Clone, Copy, Debug, Default)]
pub struct AnalysisOptions {
    /// Treat the defect group as abelian. The table alone cannot decide this.
    pub assert_abelian: bool,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum TameType {
    KleinFour,
    DihedralSemidihedralQuaternion,
    None,
}

impl TameType {
    pub fn as_str(self) -> &'static str {
        match self {
            TameType::KleinFour => "klein-four",
            TameType::DihedralSemidihedralQuaternion => "dihedral-semidihedral-quaternion-class",
            TameType::None => "none",
        }
    }
}

impl fmt::Display for TameType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct NilpotencyIndicators {
    pub defect_zero: bool,
    pub all_degrees_equal: bool,
    pub height_zero_degrees_equal: bool,
    pub gamma_equals_one: bool,
}

impl NilpotencyIndicators {
    /// `gamma = 1` disagreeing with the height-zero degree criterion.
    pub fn is_anomalous(&self) -> bool {
        self.gamma_equals_one != self.height_zero_degrees_equal
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct AbelianReport {
    /// Every p-element class meeting the block has a major subsection.
    pub necessary_check: bool,
    /// `log_p exp(D)`, present when the necessary check passes.
    pub exponent: Option<u32>,
    /// Orders of the cyclic factors, descending. Only with an abelian assertion.
    pub iso_type: Option<Vec<u64>>,
}

#[derive(Clone, Debug)]
pub struct BlockReport {
    pub p: u64,
    pub index: usize,
    pub characters: Vec<usize>,
    pub heights: Vec<u32>,
    pub defect: u32,
    pub k: usize,
    pub l: usize,
    pub gamma: BigRational,
    pub divisors: Divisors,
    pub orbit_sizes: Vec<usize>,
    pub cyclic_defect: bool,
    /// `log_p exp(Z(D))`.
    pub exp_center: u32,
    pub abelian: AbelianReport,
    pub dd4: Option<bool>,
    pub tame: TameType,
    pub nilpotency: NilpotencyIndicators,
    pub defect_group_normal: bool,
    pub notes: Vec<String>,
}

impl BlockReport {
    pub fn defect_group_order(&self) -> u64 {
        self.p.pow(self.defect)
    }

    pub fn gamma_string(&self) -> String {
        format!("{}/{}", self.gamma.numer(), self.gamma.denom())
    }
}

fn orbit_sizes(t: &CharacterTable, b: &Block) -> Result<Vec<usize>> {
    let mut sizes: Vec<usize> = p_conjugacy_orbits(t, b)?.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    Ok(sizes)
}

/// `D` is cyclic iff some family of p-conjugate characters in `Irr(B)` has
/// size divisible by `p^(d-1)`. Defect zero counts as cyclic.
pub fn cyclic_defect_test(t: &CharacterTable, b: &Block) -> Result<bool> {
    if b.defect == 0 {
        return Ok(true);
    }
    let q = b.p.pow(b.defect - 1) as usize;
    Ok(orbit_sizes(t, b)?.iter().any(|&s| s % q == 0))
}

fn block_values<'a>(t: &'a CharacterTable, b: &'a Block) -> impl Iterator<Item = &'a Cyclotomic> + 'a {
    b.characters.iter().flat_map(move |&chi| (0..t.num_classes()).map(move |k| t.value(chi, k)))
}

/// `log_p` of `p |Q(B) : Q(B) ∩ Q_m|_p` with `m = exp(G)_{p'}`. For abelian
/// `D` this is `log_p exp(D)`; for defect zero it is `0`.
pub fn field_exponent(t: &CharacterTable, b: &Block) -> u32 {
    if b.defect == 0 {
        return 0;
    }
    let n = t.exponent();
    let h = field_stabilizer(block_values(t, b), n);
    let u = UnitSubgroup::congruent_to_one(n, numtheory::p_prime_part(n, b.p));
    1 + numtheory::valuation(field_index_p_part(&h, &u, b.p), b.p)
}

/// All B-subsections are major: every p-element class where some character
/// of `B` is nonzero carries a major subsection. Abelian `D` forces this.
pub fn abelian_necessary_check(t: &CharacterTable, b: &Block, analyses: &[SectionAnalysis]) -> bool {
    let support = defect_class_support(t, b);
    analyses
        .iter()
        .filter(|a| support.binary_search(&a.representative).is_ok())
        .all(|a| a.major_count > 0)
}

/// The exponent from [`field_exponent`] when the necessary check passes.
pub fn abelian_exponent(t: &CharacterTable, b: &Block, analyses: &[SectionAnalysis]) -> (bool, Option<u32>) {
    let ok = abelian_necessary_check(t, b, analyses);
    (ok, ok.then(|| field_exponent(t, b)))
}

/// `d_i = census[p^i] / p^(i-1)` for `i = 1..=max`.
fn census_quotients(t: &CharacterTable, b: &Block, analyses: &[SectionAnalysis]) -> Result<Vec<u64>> {
    let census = subsection_order_census(t, analyses);
    let top = census.keys().map(|&o| numtheory::valuation(o, b.p)).max().unwrap_or(0);
    (1..=top)
        .map(|i| {
            let c = census.get(&b.p.pow(i)).copied().unwrap_or(0) as u64;
            let q = b.p.pow(i - 1);
            if c % q != 0 {
                Err(Error::InconsistentCensus(format!(
                    "{c} major subsections of order {}^{i} in block {}, not divisible by {q}",
                    b.p, b.index
                )))
            } else {
                Ok(c / q)
            }
        })
        .collect()
}

/// Isomorphism type of an abelian `D` of order at most `p^5`, as cyclic
/// factor orders in descending order. `Ok(None)` when the census cannot
/// separate the candidates (or `d > 5`).
pub fn abelian_iso_type(
    t: &CharacterTable,
    b: &Block,
    analyses: &[SectionAnalysis],
    exponent: u32,
) -> Result<Option<Vec<u64>>> {
    let (p, d, e) = (b.p, b.defect, exponent);
    if e > d || (d > 0 && e == 0) {
        return Err(Error::InconsistentCensus(format!("exponent p^{e} does not fit |D| = p^{d}")));
    }
    let dq = census_quotients(t, b, analyses)?;
    let di = |i: usize| dq.get(i - 1).copied().unwrap_or(0);
    let ty = |exps: &[u32]| Some(exps.iter().map(|&x| p.pow(x)).collect::<Vec<u64>>());
    let parts = match (d, e) {
        (0, _) => Some(Vec::new()),
        (d, e) if e == d => ty(&[d]),
        (d, 1) => ty(&vec![1; d as usize]),
        (3, 2) => ty(&[2, 1]),
        (4, 3) => ty(&[3, 1]),
        (5, 4) => ty(&[4, 1]),
        (4, 2) => {
            if di(1) <= di(2) {
                ty(&[2, 2])
            } else {
                ty(&[2, 1, 1])
            }
        }
        // Orders up to p^2 see Omega_2(D): C_{p^2} x C_{p^2} or C_{p^2} x C_p x C_p.
        (5, 3) => {
            if di(1) <= di(2) {
                ty(&[3, 2])
            } else {
                ty(&[3, 1, 1])
            }
        }
        (5, 2) => match di(1).cmp(&di(2)) {
            std::cmp::Ordering::Greater => ty(&[2, 1, 1, 1]),
            std::cmp::Ordering::Less => ty(&[2, 2, 1]),
            std::cmp::Ordering::Equal => None,
        },
        _ => None,
    };
    Ok(parts)
}

/// `|D/D'| = 4` for a 2-block with `d >= 3`: `k(B) < 2^d` and
/// `Q(B) Q_m ∩ Q_{2^d} = Q(z ± z^-1)` with `z` a primitive `2^(d-1)`-th root.
pub fn dd4_test(t: &CharacterTable, b: &Block) -> Result<bool> {
    if b.p != 2 || b.defect < 3 {
        return Err(Error::Usage(format!("dd4 test needs p = 2 and d >= 3, got p = {}, d = {}", b.p, b.defect)));
    }
    let two_d = 1u64 << b.defect;
    if b.k() as u64 >= two_d {
        return Ok(false);
    }
    let n = numtheory::lcm(t.exponent(), two_d);
    let h = field_stabilizer(block_values(t, b), n);
    let u = UnitSubgroup::congruent_to_one(n, numtheory::p_prime_part(n, 2));
    // The compositum Q(B) Q_m is fixed by H ∩ U; meeting Q_{2^d} is reduction mod 2^d.
    let image = h.intersection(&u).image_mod(two_d);
    let z = Cyclotomic::root_of_unity(two_d / 2, 1);
    let zi = Cyclotomic::root_of_unity(two_d / 2, -1);
    Ok([z.add(&zi), z.sub(&zi)]
        .iter()
        .any(|c| field_stabilizer([c], two_d) == image))
}

/// Tame representation type of a 2-block; `None` for odd `p`.
pub fn tame_type(t: &CharacterTable, b: &Block, abelian: &AbelianReport) -> Result<TameType> {
    if b.p != 2 {
        return Ok(TameType::None);
    }
    if b.defect == 2 && abelian.necessary_check && abelian.exponent == Some(1) {
        return Ok(TameType::KleinFour);
    }
    if b.defect >= 3 && dd4_test(t, b)? {
        return Ok(TameType::DihedralSemidihedralQuaternion);
    }
    Ok(TameType::None)
}

fn all_equal(mut it: impl Iterator<Item = u64>) -> bool {
    match it.next() {
        None => true,
        Some(first) => it.all(|x| x == first),
    }
}

pub fn nilpotency_indicators(t: &CharacterTable, b: &Block, gamma: &BigRational) -> NilpotencyIndicators {
    NilpotencyIndicators {
        defect_zero: b.defect == 0,
        all_degrees_equal: all_equal(b.characters.iter().map(|&chi| t.degree(chi))),
        height_zero_degrees_equal: all_equal(
            b.characters.iter().zip(&b.heights).filter(|(_, &h)| h == 0).map(|(&chi, _)| t.degree(chi)),
        ),
        gamma_equals_one: gamma.is_one(),
    }
}

/// Every invariant of one block.
pub fn analyze_block(
    t: &CharacterTable,
    dist: &BlockDistribution,
    b: &Block,
    opts: AnalysisOptions,
) -> Result<BlockReport> {
    let analyses = analyze_sections(t, dist, b)?;
    let fusion = fusion_number(t, dist, b)?;
    let mut notes = Vec::new();
    let cyclic_defect = cyclic_defect_test(t, b)?;
    if b.defect == 0 {
        notes.push("defect zero".to_string());
    }
    let exp_center = numtheory::valuation(exp_center_of_defect(t, &analyses), b.p);
    let (necessary_check, exponent) = abelian_exponent(t, b, &analyses);
    let iso_type = match exponent {
        Some(e) if opts.assert_abelian => match abelian_iso_type(t, b, &analyses, e) {
            Ok(Some(ty)) => Some(ty),
            Ok(None) => {
                notes.push(format!("isomorphism type of D undetermined (|D| = {}^{})", b.p, b.defect));
                None
            }
            Err(err) => {
                notes.push(err.to_string());
                None
            }
        },
        None if opts.assert_abelian => {
            notes.push("abelian asserted but the necessary check fails".to_string());
            None
        }
        _ => None,
    };
    let abelian = AbelianReport { necessary_check, exponent, iso_type };
    let dd4 = if b.p == 2 && b.defect >= 3 { Some(dd4_test(t, b)?) } else { None };
    let tame = tame_type(t, b, &abelian)?;
    let nilpotency = nilpotency_indicators(t, b, &fusion.gamma);
    if nilpotency.is_anomalous() {
        notes.push("conjecture-relevant anomaly: gamma = 1 disagrees with height-zero degrees".to_string());
    }
    Ok(BlockReport {
        p: b.p,
        index: b.index,
        characters: b.characters.clone(),
        heights: b.heights.clone(),
        defect: b.defect,
        k: b.k(),
        l: l_of_block(t, b),
        gamma: fusion.gamma,
        divisors: fusion.divisors,
        orbit_sizes: orbit_sizes(t, b)?,
        cyclic_defect,
        exp_center,
        abelian,
        dd4,
        tame,
        nilpotency,
        defect_group_normal: is_defect_group_normal(t, b),
        notes,
    })
}

/// Reports for every block of `dist`, in block order.
pub fn analyze_distribution(
    t: &CharacterTable,
    dist: &BlockDistribution,
    opts: AnalysisOptions,
) -> Result<Vec<BlockReport>> {
    dist.blocks.par_iter().map(|b| analyze_block(t, dist, b, opts)).collect()
}

/// `sum_K 1/|C_G(g_K)|_p`, the fusion number of a table with a single block.
pub fn single_block_gamma(t: &CharacterTable, p: u64) -> BigRational {
    t.classes()
        .iter()
        .map(|c| BigRational::new(BigInt::one(), BigInt::from(numtheory::p_part(c.centralizer, p))))
        .fold(BigRational::from_integer(BigInt::from(0)), |a, x| a + x)
}
