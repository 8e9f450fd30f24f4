use std::collections::{BTreeMap, HashMap};
use std::sync::OnceLock;

use num_traits::{Signed, ToPrimitive};

use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};
use crate::numtheory;

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInfo {
    pub name: String,
    pub size: u64,
    pub centralizer: u64,
    pub element_order: u64,
    pub inverse: usize,
}

/// A validated character table: classes, prime power maps and the matrix of
/// irreducible character values (rows are characters, columns classes).
#[derive(Debug)]
pub struct CharacterTable {
    name: String,
    order: u64,
    classes: Vec<ClassInfo>,
    power_maps: BTreeMap<u64, Vec<usize>>,
    irreducibles: Vec<Vec<Cyclotomic>>,
    meta: Option<serde_json::Value>,
    exponent: u64,
    degrees: Vec<u64>,
    columns: OnceLock<HashMap<Vec<Cyclotomic>, usize>>,
    rows: OnceLock<HashMap<Vec<Cyclotomic>, usize>>,
}

impl Clone for CharacterTable {
    fn clone(&self) -> Self {
        Self {
            name: self.name.clone(),
            order: self.order,
            classes: self.classes.clone(),
            power_maps: self.power_maps.clone(),
            irreducibles: self.irreducibles.clone(),
            meta: self.meta.clone(),
            exponent: self.exponent,
            degrees: self.degrees.clone(),
            columns: OnceLock::new(),
            rows: OnceLock::new(),
        }
    }
}

impl CharacterTable {
    /// Builds a table and checks every character-table invariant: class
    /// data, degrees, power maps, conductors and both orthogonality
    /// relations.
    pub fn new(
        name: String,
        order: u64,
        classes: Vec<ClassInfo>,
        power_maps: BTreeMap<u64, Vec<usize>>,
        irreducibles: Vec<Vec<Cyclotomic>>,
        meta: Option<serde_json::Value>,
    ) -> Result<Self> {
        let exponent = classes.iter().fold(1, |acc, c| numtheory::lcm(acc, c.element_order));
        let mut table = Self {
            name,
            order,
            classes,
            power_maps,
            irreducibles,
            meta,
            exponent,
            degrees: Vec::new(),
            columns: OnceLock::new(),
            rows: OnceLock::new(),
        };
        table.validate_structure()?;
        table.validate_orthogonality()?;
        Ok(table)
    }

    fn validate_structure(&mut self) -> Result<()> {
        let invalid = |msg: String| Err(Error::Validation(msg));
        let k = self.classes.len();
        let n = self.order;
        if k == 0 || n == 0 {
            return invalid("empty table".into());
        }
        let first = &self.classes[0];
        if first.size != 1 || first.element_order != 1 {
            return invalid(format!("class 0 ({}) is not the identity class", first.name));
        }
        for (i, c) in self.classes.iter().enumerate() {
            if c.size.checked_mul(c.centralizer) != Some(n) {
                return invalid(format!(
                    "class {i} ({}): size {} times centralizer {} is not |G| = {n}",
                    c.name, c.size, c.centralizer
                ));
            }
            if c.element_order == 0 || n % c.element_order != 0 {
                return invalid(format!("class {i} ({}): element order {} does not divide |G|", c.name, c.element_order));
            }
            let Some(inv) = self.classes.get(c.inverse) else {
                return invalid(format!("class {i} ({}): inverse class {} out of range", c.name, c.inverse));
            };
            if inv.inverse != i || inv.size != c.size || inv.element_order != c.element_order {
                return invalid(format!("class {i} ({}): inverse class {} is inconsistent", c.name, c.inverse));
            }
        }
        if self.classes.iter().map(|c| c.size).sum::<u64>() != n {
            return invalid(format!("class sizes do not sum to |G| = {n}"));
        }
        for q in numtheory::prime_divisors(n) {
            if !self.power_maps.contains_key(&q) {
                return invalid(format!("powerMaps incomplete: no map for prime {q}"));
            }
        }
        for (&q, map) in &self.power_maps {
            if !numtheory::is_prime(q) {
                return invalid(format!("powerMaps: key {q} is not a prime"));
            }
            if map.len() != k {
                return invalid(format!("powerMaps[{q}]: length {} but {k} classes", map.len()));
            }
            for (i, &j) in map.iter().enumerate() {
                let o = self.classes[i].element_order;
                let expected = o / numtheory::gcd(q, o);
                match self.classes.get(j) {
                    Some(c) if c.element_order == expected => {}
                    Some(c) => {
                        return invalid(format!(
                            "powerMaps[{q}]: class {i} ({}) of order {o} maps to class {j} ({}) of order {}, expected order {expected}",
                            self.classes[i].name, c.name, c.element_order
                        ))
                    }
                    None => return invalid(format!("powerMaps[{q}]: class {i} maps to {j}, out of range")),
                }
            }
        }
        if self.irreducibles.len() != k {
            return invalid(format!("{} irreducible characters but {k} classes", self.irreducibles.len()));
        }
        let mut degrees = Vec::with_capacity(k);
        for (chi, row) in self.irreducibles.iter().enumerate() {
            if row.len() != k {
                return invalid(format!("character {chi}: {} values but {k} classes", row.len()));
            }
            let deg = row[0].to_integer().filter(|d| d.is_positive()).and_then(|d| d.to_u64());
            let Some(deg) = deg else {
                return invalid(format!("character {chi}: degree {} is not a positive integer", row[0]));
            };
            degrees.push(deg);
            for (j, v) in row.iter().enumerate() {
                if self.exponent % v.conductor() != 0 {
                    return invalid(format!(
                        "character {chi}, class {j} ({}): conductor {} does not divide exp(G) = {}",
                        self.classes[j].name,
                        v.conductor(),
                        self.exponent
                    ));
                }
            }
        }
        self.degrees = degrees;
        Ok(())
    }

    fn validate_orthogonality(&self) -> Result<()> {
        let k = self.classes.len();
        let conj: Vec<Vec<Cyclotomic>> = self
            .irreducibles
            .iter()
            .map(|row| row.iter().map(Cyclotomic::conj).collect())
            .collect();
        let column_product = |a: usize, b: usize| -> Cyclotomic {
            (0..k).map(|chi| self.irreducibles[chi][a].mul(&conj[chi][b])).sum()
        };
        // Diagonal first so that a corrupted value is reported at its own
        // class whenever possible.
        for a in 0..k {
            let s = column_product(a, a);
            let expected = Cyclotomic::from_integer(self.classes[a].centralizer);
            if s != expected {
                return Err(Error::Validation(format!(
                    "column orthogonality fails at class {a} ({}): sum |chi(g)|^2 = {s}, centralizer order {}",
                    self.classes[a].name, self.classes[a].centralizer
                )));
            }
        }
        for a in 0..k {
            for b in a + 1..k {
                let s = column_product(a, b);
                if !s.is_zero() {
                    return Err(Error::Validation(format!(
                        "column orthogonality fails at classes {a} ({}) and {b} ({}): sum = {s}",
                        self.classes[a].name, self.classes[b].name
                    )));
                }
            }
        }
        let order = Cyclotomic::from_integer(self.order);
        for x in 0..k {
            for y in x..k {
                let s: Cyclotomic = (0..k)
                    .map(|j| {
                        self.irreducibles[x][j]
                            .mul(&conj[y][j])
                            .mul(&Cyclotomic::from_integer(self.classes[j].size))
                    })
                    .sum();
                let expected = if x == y { order.clone() } else { Cyclotomic::zero() };
                if s != expected {
                    return Err(Error::Validation(format!(
                        "row orthogonality fails at characters {x} and {y}: sum = {s}, expected {expected}"
                    )));
                }
            }
        }
        Ok(())
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn order(&self) -> u64 {
        self.order
    }

    /// Exponent of the group, the lcm of the element orders.
    pub fn exponent(&self) -> u64 {
        self.exponent
    }

    pub fn classes(&self) -> &[ClassInfo] {
        &self.classes
    }

    pub fn class(&self, k: usize) -> &ClassInfo {
        &self.classes[k]
    }

    pub fn num_classes(&self) -> usize {
        self.classes.len()
    }

    pub fn num_characters(&self) -> usize {
        self.irreducibles.len()
    }

    /// The stored power map for the prime `q`, if present.
    pub fn prime_power_map(&self, q: u64) -> Option<&[usize]> {
        self.power_maps.get(&q).map(Vec::as_slice)
    }

    pub fn power_maps(&self) -> &BTreeMap<u64, Vec<usize>> {
        &self.power_maps
    }

    pub fn irreducibles(&self) -> &[Vec<Cyclotomic>] {
        &self.irreducibles
    }

    pub fn value(&self, chi: usize, k: usize) -> &Cyclotomic {
        &self.irreducibles[chi][k]
    }

    pub fn degree(&self, chi: usize) -> u64 {
        self.degrees[chi]
    }

    pub fn degrees(&self) -> &[u64] {
        &self.degrees
    }

    pub fn meta(&self) -> Option<&serde_json::Value> {
        self.meta.as_ref()
    }

    pub fn column(&self, k: usize) -> Vec<Cyclotomic> {
        self.irreducibles.iter().map(|row| row[k].clone()).collect()
    }

    /// Index of the class whose column is exactly `col`.
    pub fn find_column(&self, col: &[Cyclotomic]) -> Option<usize> {
        self.columns
            .get_or_init(|| (0..self.num_classes()).map(|k| (self.column(k), k)).collect())
            .get(col)
            .copied()
    }

    /// Index of the character whose row of values is exactly `row`.
    pub fn find_row(&self, row: &[Cyclotomic]) -> Option<usize> {
        self.rows
            .get_or_init(|| {
                self.irreducibles.iter().enumerate().map(|(i, r)| (r.clone(), i)).collect()
            })
            .get(row)
            .copied()
    }

    /// Index of the trivial character.
    pub fn trivial_character(&self) -> usize {
        let one = Cyclotomic::one();
        self.irreducibles
            .iter()
            .position(|row| row.iter().all(|v| *v == one))
            .expect("validated table has a trivial character")
    }
}
