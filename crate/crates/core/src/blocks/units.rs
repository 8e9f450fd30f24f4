//! Subgroups of `(Z/n)^x`, standing in for Galois groups of subfields of
//! `Q(z_n)`.

use std::collections::BTreeSet;

use crate::cyclotomic::Cyclotomic;
use crate::numtheory;

#[derive(Clone, Debug)]
pub struct UnitSubgroup {
    modulus: u64,
    elements: Vec<u64>,
    generators: Vec<u64>,
}

impl UnitSubgroup {
    /// The subgroup generated by `gens` (reduced mod `n`).
    pub fn generated(n: u64, gens: impl IntoIterator<Item = u64>) -> Self {
        let mut generators = Vec::new();
        let mut set = closure(n, &generators);
        for g in gens {
            let g = g % n;
            if !set.contains(&g) {
                generators.push(g);
                set = closure(n, &generators);
            }
        }
        Self { modulus: n, elements: set.into_iter().collect(), generators }
    }

    /// The subgroup of all `k` with `pred(k)`; `pred` must define a subgroup.
    pub fn filtered(n: u64, pred: impl Fn(u64) -> bool) -> Self {
        let elements: Vec<u64> = numtheory::units(n).into_iter().filter(|&k| pred(k)).collect();
        Self::generated(n, elements)
    }

    pub fn full(n: u64) -> Self {
        Self::generated(n, numtheory::units(n))
    }

    pub fn trivial(n: u64) -> Self {
        Self::generated(n, [])
    }

    /// `{k : k = 1 mod m}`, the Galois group of `Q(z_n) / Q(z_m)`; `m | n`.
    pub fn congruent_to_one(n: u64, m: u64) -> Self {
        Self::filtered(n, |k| k % m == 1 % m)
    }

    pub fn modulus(&self) -> u64 {
        self.modulus
    }

    /// All elements, ascending.
    pub fn elements(&self) -> &[u64] {
        &self.elements
    }

    pub fn generators(&self) -> &[u64] {
        &self.generators
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn contains(&self, k: u64) -> bool {
        self.elements.binary_search(&(k % self.modulus)).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &Self) -> bool {
        self.elements.iter().all(|&k| other.contains(k))
    }

    /// The subgroup generated by `self` and `other`.
    pub fn join(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        Self::generated(self.modulus, self.generators.iter().chain(&other.generators).copied())
    }

    pub fn intersection(&self, other: &Self) -> Self {
        assert_eq!(self.modulus, other.modulus);
        let common: Vec<u64> = self.elements.iter().copied().filter(|&k| other.contains(k)).collect();
        Self::generated(self.modulus, common)
    }

    /// Image under reduction to `(Z/d)^x`, `d | n`.
    pub fn image_mod(&self, d: u64) -> Self {
        assert_eq!(self.modulus % d, 0);
        Self::generated(d, self.generators.iter().map(|&k| k % d))
    }

    /// `|self : sub|` for a subgroup `sub`.
    pub fn index_of(&self, sub: &Self) -> usize {
        debug_assert!(sub.is_subgroup_of(self));
        self.order() / sub.order()
    }
}

/// Equal as sets; the generators are not compared.
impl PartialEq for UnitSubgroup {
    fn eq(&self, other: &Self) -> bool {
        self.modulus == other.modulus && self.elements == other.elements
    }
}

impl Eq for UnitSubgroup {}

fn closure(n: u64, gens: &[u64]) -> BTreeSet<u64> {
    let mut set = BTreeSet::from([1 % n]);
    let mut queue = vec![1 % n];
    while let Some(x) = queue.pop() {
        for &g in gens {
            let y = numtheory::mul_mod(x, g, n);
            if set.insert(y) {
                queue.push(y);
            }
        }
    }
    set
}

/// `Gal(Q(z_n) / Q(values))` as `{k : sigma_k fixes every value}`; every
/// conductor must divide `n`.
pub fn field_stabilizer<'a>(values: impl IntoIterator<Item = &'a Cyclotomic>, n: u64) -> UnitSubgroup {
    let mut distinct: Vec<&Cyclotomic> = Vec::new();
    for v in values {
        debug_assert_eq!(n % v.conductor(), 0);
        if !v.is_rational() && !distinct.contains(&v) {
            distinct.push(v);
        }
    }
    UnitSubgroup::filtered(n, |k| distinct.iter().all(|v| v.galois_mod(k, n) == **v))
}

/// `|<H, U> : H|_p`.
pub fn field_index_p_part(h: &UnitSubgroup, u: &UnitSubgroup, p: u64) -> u64 {
    let joined = h.join(u);
    numtheory::p_part(joined.index_of(h) as u64, p)
}
