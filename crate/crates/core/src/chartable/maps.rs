//! Maps derived from a table: composite power maps, p-factors, p-sections,
//! class multiplication coefficients and Galois actions.

use num_rational::BigRational;
use num_traits::{Signed, ToPrimitive};

use super::model::CharacterTable;
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::numtheory;

/// The p-sections of a table: classes grouped by the class of their
/// p-factor.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SectionPartition {
    pub p: u64,
    /// p-element classes, ascending; the identity class comes first.
    pub representatives: Vec<usize>,
    /// `members[i]` are the classes whose p-factor lies in
    /// `representatives[i]`, ascending.
    pub members: Vec<Vec<usize>>,
}

impl SectionPartition {
    /// Index into `representatives` of the section containing class `k`.
    pub fn section_of(&self, k: usize) -> usize {
        self.members
            .iter()
            .position(|m| m.contains(&k))
            .expect("sections partition the classes")
    }
}

/// The class of `g_K^k`.
pub fn power_class(t: &CharacterTable, class: usize, k: u64) -> usize {
    let o = t.class(class).element_order;
    let k = k % o;
    if k == 0 {
        return 0;
    }
    let mut c = class;
    let mut coprime = 1u64;
    for (q, a) in numtheory::factorize(k) {
        match t.prime_power_map(q) {
            Some(map) => {
                for _ in 0..a {
                    c = map[c];
                }
            }
            None => coprime *= q.pow(a),
        }
    }
    if coprime > 1 {
        c = galois_class_image(t, c, coprime);
    }
    c
}

/// The map `K -> class of g_K^k`, `k >= 0`.
pub fn power_map(t: &CharacterTable, k: u64) -> Vec<usize> {
    (0..t.num_classes()).map(|c| power_class(t, c, k)).collect()
}

/// The class `L` with `chi(g_L) = sigma_k(chi(g_K))` for all `chi`, for `k`
/// coprime to the order of `g_K`.
fn galois_class_image(t: &CharacterTable, class: usize, k: u64) -> usize {
    let col: Vec<Cyclotomic> = t
        .irreducibles()
        .iter()
        .map(|row| row[class].galois_mod(k % t.exponent(), t.exponent()))
        .collect();
    t.find_column(&col).expect("Galois image of a column is a column of a valid table")
}

/// The class of the p-factor `(g_K)_p`.
pub fn p_factor_class(t: &CharacterTable, class: usize, p: u64) -> usize {
    let o = t.class(class).element_order;
    let pv = numtheory::p_part(o, p);
    if pv == 1 {
        return 0;
    }
    let u = o / pv;
    // x_p = x^(u * (u^-1 mod p^v)): the exponent is 1 mod p^v and 0 mod u.
    let k = u * numtheory::inv_mod(u % pv, pv).unwrap();
    power_class(t, class, k)
}

pub fn p_sections(t: &CharacterTable, p: u64) -> SectionPartition {
    let factors: Vec<usize> = (0..t.num_classes()).map(|k| p_factor_class(t, k, p)).collect();
    let mut representatives: Vec<usize> = factors.clone();
    representatives.sort_unstable();
    representatives.dedup();
    let members = representatives
        .iter()
        .map(|&r| (0..t.num_classes()).filter(|&k| factors[k] == r).collect())
        .collect();
    SectionPartition { p, representatives, members }
}

/// The structure constant `a_KLM`: the coefficient of `M^+` in `K^+ L^+`.
pub fn class_mult_coefficient(t: &CharacterTable, k: usize, l: usize, m: usize) -> Result<u64> {
    let s: Cyclotomic = (0..t.num_characters())
        .map(|chi| {
            t.value(chi, k)
                .mul(t.value(chi, l))
                .mul(&t.value(chi, m).conj())
                .mul(&Cyclotomic::from_ratio(1, t.degree(chi) as i64))
        })
        .sum();
    let scale = BigRational::new(
        (t.class(k).size as u128 * t.class(l).size as u128).into(),
        t.order().into(),
    );
    let a = s.scale(&scale);
    a.to_integer()
        .filter(|x| !x.is_negative())
        .and_then(|x| x.to_u64())
        .ok_or_else(|| {
            Error::TableInconsistent(format!("class multiplication coefficient a({k}, {l}, {m}) = {a}"))
        })
}

fn check_unit(t: &CharacterTable, k: i64) -> Result<u64> {
    let kr = numtheory::residue(k, t.exponent());
    if numtheory::gcd(kr, t.exponent()) != 1 || numtheory::gcd(numtheory::residue(k, t.order()), t.order()) != 1 {
        return Err(Error::Usage(format!("Galois index {k} is not coprime to |G| = {}", t.order())));
    }
    Ok(kr)
}

/// `K -> K^(k)`, the class of `g_K^k`, for `k` coprime to `|G|`.
pub fn galois_class_action(t: &CharacterTable, k: i64) -> Result<Vec<usize>> {
    let k = check_unit(t, k)?;
    Ok((0..t.num_classes()).map(|c| galois_class_image(t, c, k)).collect())
}

/// `chi -> chi^(sigma_k)`, for `k` coprime to `|G|`.
pub fn galois_character_action(t: &CharacterTable, k: i64) -> Result<Vec<usize>> {
    let k = check_unit(t, k)?;
    let n = t.exponent();
    t.irreducibles()
        .iter()
        .enumerate()
        .map(|(chi, row)| {
            let image: Vec<Cyclotomic> = row.iter().map(|v| v.galois_mod(k, n)).collect();
            t.find_row(&image).ok_or_else(|| {
                Error::TableInconsistent(format!("character {chi}: Galois conjugate by {k} is not a row of the table"))
            })
        })
        .collect()
}

/// Orbits of the group generated by the given permutations of `0..n`, each
/// sorted, ordered by smallest element.
pub fn orbits(n: usize, perms: &[Vec<usize>]) -> Vec<Vec<usize>> {
    let mut seen = vec![false; n];
    let mut out = Vec::new();
    for start in 0..n {
        if seen[start] {
            continue;
        }
        let mut orbit = vec![start];
        seen[start] = true;
        let mut i = 0;
        while i < orbit.len() {
            let x = orbit[i];
            for perm in perms {
                let y = perm[x];
                if !seen[y] {
                    seen[y] = true;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        out.push(orbit);
    }
    out
}

/// The residues modulo `exp(G)` that are `1` modulo `exp(G)_{p'}`: the
/// Galois automorphisms fixing every p'-root of unity.
pub fn p_galois_group(t: &CharacterTable, p: u64) -> Vec<u64> {
    let n = t.exponent();
    let m = numtheory::p_prime_part(n, p);
    numtheory::units(n).into_iter().filter(|k| k % m == 1 % m).collect()
}

fn orbit_size_multiset(orbits: &[Vec<usize>]) -> Vec<usize> {
    let mut sizes: Vec<usize> = orbits.iter().map(Vec::len).collect();
    sizes.sort_unstable();
    sizes
}

/// Orbit sizes of the p-Galois group on characters and on classes.
pub fn p_galois_orbit_sizes(t: &CharacterTable, p: u64) -> Result<(Vec<usize>, Vec<usize>)> {
    let group = p_galois_group(t, p);
    let mut chars = Vec::new();
    let mut classes = Vec::new();
    for &k in &group {
        chars.push(galois_character_action(t, k as i64)?);
        classes.push(galois_class_action(t, k as i64)?);
    }
    Ok((
        orbit_size_multiset(&orbits(t.num_characters(), &chars)),
        orbit_size_multiset(&orbits(t.num_classes(), &classes)),
    ))
}

/// Brauer's permutation lemma for the cyclic p-Galois group (`p` odd): its
/// orbit sizes on characters and on classes agree.
pub fn validate_brauer_permutation_lemma(t: &CharacterTable, p: u64) -> Result<bool> {
    if p == 2 || !numtheory::is_prime(p) {
        return Err(Error::Usage(format!("Brauer permutation check needs an odd prime, got {p}")));
    }
    let (chars, classes) = p_galois_orbit_sizes(t, p)?;
    Ok(chars == classes)
}
