//! Block splittings: a partition of the classes giving each block `B` a set
//! `Cl(B)` of `k(B)` classes whose projections `K^+ e_B` are a basis of
//! the block's center over the residue field.

use std::collections::VecDeque;

use num_bigint::BigInt;
use num_rational::BigRational;

use super::{Block, BlockDistribution};
use crate::chartable::{class_mult_coefficient, CharacterTable};
use crate::cyclotomic::{Cyclotomic, FiniteFieldElem};
use crate::error::{Error, Result};
use crate::linalg;
use crate::numtheory;

/// `coords[K][L]`, the coefficient of `L^+` in `K^+ e_B`, in closed form
/// `|K|/|G| sum_{chi in B} chi(g_K) conj(chi(g_L))`.
pub fn splitting_coordinates(t: &CharacterTable, b: &Block) -> Vec<Vec<Cyclotomic>> {
    let k = t.num_classes();
    let conj: Vec<Vec<Cyclotomic>> = b
        .characters
        .iter()
        .map(|&chi| (0..k).map(|l| t.value(chi, l).conj()).collect())
        .collect();
    (0..k)
        .map(|kk| {
            let scale = BigRational::new(BigInt::from(t.class(kk).size), BigInt::from(t.order()));
            (0..k)
                .map(|l| {
                    let s: Cyclotomic = b
                        .characters
                        .iter()
                        .zip(&conj)
                        .map(|(&chi, cj)| t.value(chi, kk).mul(&cj[l]))
                        .sum();
                    s.scale(&scale)
                })
                .collect()
        })
        .collect()
}

/// The same coordinates from the idempotent `e_B = sum_M c_M M^+` and the
/// class multiplication coefficients.
pub fn splitting_coordinates_via_structure_constants(
    t: &CharacterTable,
    b: &Block,
) -> Result<Vec<Vec<Cyclotomic>>> {
    let k = t.num_classes();
    let inv_order = Cyclotomic::from_ratio(1, t.order() as i64);
    let idempotent: Vec<Cyclotomic> = (0..k)
        .map(|m| {
            let s: Cyclotomic = b
                .characters
                .iter()
                .map(|&chi| t.value(chi, m).conj().mul(&Cyclotomic::from_integer(t.degree(chi))))
                .sum();
            s.mul(&inv_order)
        })
        .collect();
    (0..k)
        .map(|kk| {
            (0..k)
                .map(|l| {
                    let mut acc = Cyclotomic::zero();
                    for (m, c) in idempotent.iter().enumerate() {
                        if c.is_zero() {
                            continue;
                        }
                        let a = class_mult_coefficient(t, kk, m, l)?;
                        if a != 0 {
                            acc = acc.add(&c.mul(&Cyclotomic::from_integer(a)));
                        }
                    }
                    Ok(acc)
                })
                .collect()
        })
        .collect()
}

struct Search {
    vectors: Vec<Vec<Vec<FiniteFieldElem>>>,
    capacity: Vec<usize>,
    sets: Vec<Vec<usize>>,
    assigned: Vec<Option<usize>>,
}

impl Search {
    /// `None` if `x` is independent of `sets[b]`, otherwise the elements of
    /// `sets[b]` on the circuit through `x`.
    fn circuit(&self, b: usize, x: usize) -> Option<Vec<usize>> {
        let basis: Vec<&[FiniteFieldElem]> = self.sets[b].iter().map(|&y| self.vectors[b][y].as_slice()).collect();
        let coeffs = linalg::express(&basis, &self.vectors[b][x])?;
        Some(
            self.sets[b]
                .iter()
                .zip(coeffs)
                .filter(|(_, c)| !c.is_zero())
                .map(|(&y, _)| y)
                .collect(),
        )
    }

    fn place(&mut self, x: usize, b: usize) {
        if let Some(old) = self.assigned[x] {
            self.sets[old].retain(|&y| y != x);
        }
        self.sets[b].push(x);
        self.assigned[x] = Some(b);
    }

    /// Shortest augmenting path for the unassigned class `x`.
    fn augment(&mut self, x: usize) -> bool {
        let n = self.assigned.len();
        let mut parent: Vec<Option<(usize, usize)>> = vec![None; n];
        let mut visited = vec![false; n];
        visited[x] = true;
        let mut queue = VecDeque::from([x]);
        while let Some(y) = queue.pop_front() {
            for b in 0..self.sets.len() {
                if self.assigned[y] == Some(b) {
                    continue;
                }
                match self.circuit(b, y) {
                    None if self.sets[b].len() < self.capacity[b] => {
                        let (mut cur, mut target) = (y, b);
                        loop {
                            let from = self.assigned[cur];
                            self.place(cur, target);
                            let Some((prev, _)) = parent[cur] else { break };
                            cur = prev;
                            target = from.expect("displaced classes are assigned");
                        }
                        return true;
                    }
                    None => {}
                    Some(circuit) => {
                        for w in circuit {
                            if !visited[w] {
                                visited[w] = true;
                                parent[w] = Some((y, b));
                                queue.push_back(w);
                            }
                        }
                    }
                }
            }
        }
        false
    }
}

/// A block splitting: `result[i]` is `Cl(B_i)`, ascending. Classes are tried
/// by decreasing `|K|_{p'}`, then by index; when the greedy pass leaves
/// classes over, matroid-partition augmenting paths complete it.
pub fn block_splitting(t: &CharacterTable, dist: &BlockDistribution) -> Result<Vec<Vec<usize>>> {
    let p = dist.p;
    let k = t.num_classes();
    let vectors = dist
        .blocks
        .iter()
        .map(|b| {
            splitting_coordinates(t, b)
                .iter()
                .map(|row| row.iter().map(|c| dist.ctx.reduce_mod_prime(c)).collect::<Result<Vec<_>>>())
                .collect::<Result<Vec<_>>>()
        })
        .collect::<Result<Vec<_>>>()?;
    let mut priority: Vec<usize> = (0..k).collect();
    priority.sort_by_key(|&c| (std::cmp::Reverse(numtheory::p_prime_part(t.class(c).size, p)), c));
    let mut search = Search {
        vectors,
        capacity: dist.blocks.iter().map(Block::k).collect(),
        sets: vec![Vec::new(); dist.blocks.len()],
        assigned: vec![None; k],
    };
    for b in 0..dist.blocks.len() {
        for &c in &priority {
            if search.sets[b].len() == search.capacity[b] {
                break;
            }
            if search.assigned[c].is_none() && search.circuit(b, c).is_none() {
                search.place(c, b);
            }
        }
    }
    for &c in &priority {
        if search.assigned[c].is_none() && !search.augment(c) {
            let short = (0..dist.blocks.len()).find(|&b| search.sets[b].len() < search.capacity[b]).unwrap_or(0);
            return Err(Error::SplittingExhausted(short));
        }
    }
    let mut out = search.sets;
    for (b, set) in out.iter_mut().enumerate() {
        set.sort_unstable();
        if set.len() != dist.blocks[b].k() {
            return Err(Error::SplittingExhausted(b));
        }
    }
    Ok(out)
}
