//! Polynomials over F_p and over Z/p^N: factoring cyclotomic polynomials
//! modulo p and quadratic Hensel lifting of one factor.

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Zero};

use super::poly::cyclotomic_polynomial;
use crate::error::{Error, Result};
use crate::numtheory;

/// A polynomial over F_p, little-endian, without trailing zeros.
pub type FpPoly = Vec<u64>;

pub(crate) fn trim(v: &mut FpPoly) {
    while v.last() == Some(&0) {
        v.pop();
    }
}

fn deg(a: &FpPoly) -> Option<usize> {
    a.len().checked_sub(1)
}

pub(crate) fn add(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut out: FpPoly = (0..a.len().max(b.len()))
        .map(|i| (a.get(i).copied().unwrap_or(0) + b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn sub(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut out: FpPoly = (0..a.len().max(b.len()))
        .map(|i| (a.get(i).copied().unwrap_or(0) + p - b.get(i).copied().unwrap_or(0)) % p)
        .collect();
    trim(&mut out);
    out
}

pub(crate) fn mul(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![0u64; a.len() + b.len() - 1];
    for (i, &x) in a.iter().enumerate() {
        if x == 0 {
            continue;
        }
        for (j, &y) in b.iter().enumerate() {
            out[i + j] = (out[i + j] + numtheory::mul_mod(x, y, p)) % p;
        }
    }
    trim(&mut out);
    out
}

pub(crate) fn divrem(a: &[u64], b: &[u64], p: u64) -> (FpPoly, FpPoly) {
    let db = deg(&b.to_vec()).expect("division by zero polynomial");
    let mut r = a.to_vec();
    trim(&mut r);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let inv = numtheory::inv_mod(b[db], p).expect("leading coefficient invertible");
    let mut q = vec![0u64; r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i] == 0 {
            continue;
        }
        let c = numtheory::mul_mod(r[i], inv, p);
        for j in 0..=db {
            r[i - db + j] = (r[i - db + j] + p - numtheory::mul_mod(c, b[j], p)) % p;
        }
        q[i - db] = c;
    }
    trim(&mut r);
    trim(&mut q);
    (q, r)
}

pub(crate) fn rem(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    divrem(a, b, p).1
}

fn monic(mut a: FpPoly, p: u64) -> FpPoly {
    if let Some(&lead) = a.last() {
        let inv = numtheory::inv_mod(lead, p).unwrap();
        a.iter_mut().for_each(|c| *c = numtheory::mul_mod(*c, inv, p));
    }
    a
}

pub(crate) fn gcd(a: &[u64], b: &[u64], p: u64) -> FpPoly {
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    trim(&mut a);
    trim(&mut b);
    while !b.is_empty() {
        let r = rem(&a, &b, p);
        a = std::mem::replace(&mut b, r);
    }
    monic(a, p)
}

/// `base^exp mod modulus` over F_p, with `exp` given as a big integer.
pub(crate) fn pow_mod(base: &[u64], exp: &BigInt, modulus: &[u64], p: u64) -> FpPoly {
    let mut acc: FpPoly = vec![1];
    let mut b = rem(base, modulus, p);
    let bits = exp.bits();
    for i in 0..bits {
        if exp.bit(i) {
            acc = rem(&mul(&acc, &b, p), modulus, p);
        }
        b = rem(&mul(&b, &b, p), modulus, p);
    }
    acc
}

/// Inverse of `a` modulo the irreducible `f` over F_p.
pub(crate) fn inverse_mod(a: &[u64], f: &[u64], p: u64) -> Option<FpPoly> {
    let (mut r0, mut r1) = (f.to_vec(), rem(a, f, p));
    let (mut s0, mut s1): (FpPoly, FpPoly) = (Vec::new(), vec![1]);
    if r1.is_empty() {
        return None;
    }
    while !r1.is_empty() {
        let (q, r) = divrem(&r0, &r1, p);
        let s2 = sub(&s0, &mul(&q, &s1, p), p);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = numtheory::inv_mod(r0[0], p)?;
    Some(s0.into_iter().map(|x| numtheory::mul_mod(x, c, p)).collect())
}

/// The `j`-th candidate splitting polynomial: base-p digits of `j` as
/// coefficients, skipping constants.
fn candidate(j: u64, p: u64) -> FpPoly {
    let mut v = Vec::new();
    let mut k = j + p;
    while k > 0 {
        v.push(k % p);
        k /= p;
    }
    trim(&mut v);
    v
}

/// Splits the squarefree `g`, all of whose irreducible factors have degree
/// `d`, into those factors. Deterministic Cantor-Zassenhaus.
fn equal_degree_split(g: FpPoly, d: usize, p: u64, out: &mut Vec<FpPoly>) {
    if g.len() - 1 == d {
        out.push(g);
        return;
    }
    let q = BigInt::from(p).pow(d as u32);
    let mut j = 0;
    loop {
        let a = candidate(j, p);
        j += 1;
        let b = if p == 2 {
            // Trace map a + a^2 + ... + a^(2^(d-1)) to F_2.
            let mut t = rem(&a, &g, p);
            let mut acc = t.clone();
            for _ in 1..d {
                t = rem(&mul(&t, &t, p), &g, p);
                acc = add(&acc, &t, p);
            }
            acc
        } else {
            let e: BigInt = (&q - 1u32) / 2u32;
            sub(&pow_mod(&a, &e, &g, p), &[1], p)
        };
        let h = gcd(&g, &b, p);
        if h.len() > 1 && h.len() < g.len() {
            let (other, r) = divrem(&g, &h, p);
            debug_assert!(r.is_empty());
            equal_degree_split(h, d, p, out);
            equal_degree_split(monic(other, p), d, p, out);
            return;
        }
    }
}

fn phi_mod_p(m: u64, p: u64) -> FpPoly {
    let pb = BigInt::from(p);
    let mut v: FpPoly = cyclotomic_polynomial(m)
        .iter()
        .map(|c| c.mod_floor(&pb).try_into().unwrap())
        .collect();
    trim(&mut v);
    v
}

/// All irreducible factors of `Phi_m` over F_p, each monic of degree
/// `ord_m(p)`, sorted lexicographically from the top coefficient down.
pub fn factor_cyclotomic_mod_p_all(m: u64, p: u64) -> Result<Vec<FpPoly>> {
    if !numtheory::is_prime(p) {
        return Err(Error::Arithmetic(format!("{p} is not prime")));
    }
    if m % p == 0 {
        return Err(Error::Arithmetic(format!("p = {p} divides m = {m}")));
    }
    let d = numtheory::multiplicative_order(p % m.max(1), m) as usize;
    let mut out = Vec::new();
    equal_degree_split(phi_mod_p(m, p), d, p, &mut out);
    out.sort_by(|a, b| a.iter().rev().cmp(b.iter().rev()));
    Ok(out)
}

/// One irreducible factor of `Phi_m` over F_p: the first in the order used
/// by [`factor_cyclotomic_mod_p_all`].
pub fn factor_cyclotomic_mod_p(m: u64, p: u64) -> Result<FpPoly> {
    Ok(factor_cyclotomic_mod_p_all(m, p)?.swap_remove(0))
}

// Polynomials over Z/p^N with BigInt coefficients in [0, p^N).

pub(crate) fn zn_reduce(v: &mut Vec<BigInt>, modulus: &BigInt) {
    v.iter_mut().for_each(|c| *c = c.mod_floor(modulus));
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn zn_add(a: &[BigInt], b: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = (0..a.len().max(b.len()))
        .map(|i| a.get(i).cloned().unwrap_or_default() + b.get(i).cloned().unwrap_or_default())
        .collect();
    zn_reduce(&mut out, modulus);
    out
}

fn zn_sub(a: &[BigInt], b: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    let mut out: Vec<BigInt> = (0..a.len().max(b.len()))
        .map(|i| a.get(i).cloned().unwrap_or_default() - b.get(i).cloned().unwrap_or_default())
        .collect();
    zn_reduce(&mut out, modulus);
    out
}

pub(crate) fn zn_mul(a: &[BigInt], b: &[BigInt], modulus: &BigInt) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            out[i + j] += x * y;
        }
    }
    zn_reduce(&mut out, modulus);
    out
}

/// Division with remainder by a monic polynomial over Z/p^N.
pub(crate) fn zn_divrem_monic(a: &[BigInt], b: &[BigInt], modulus: &BigInt) -> (Vec<BigInt>, Vec<BigInt>) {
    debug_assert!(b.last().is_some_and(One::is_one));
    let db = b.len() - 1;
    let mut r = a.to_vec();
    zn_reduce(&mut r, modulus);
    if r.len() <= db {
        return (Vec::new(), r);
    }
    let mut q = vec![BigInt::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        let c = std::mem::take(&mut r[i]).mod_floor(modulus);
        if c.is_zero() {
            continue;
        }
        for j in 0..db {
            r[i - db + j] -= &c * &b[j];
        }
        q[i - db] = c;
    }
    r.truncate(db);
    zn_reduce(&mut r, modulus);
    zn_reduce(&mut q, modulus);
    (q, r)
}

/// State of the Hensel iteration: `phi = g * h mod p^k`, `s g + t h = 1`.
#[derive(Clone, Debug)]
pub(crate) struct HenselState {
    pub k: u32,
    pub g: Vec<BigInt>,
    pub h: Vec<BigInt>,
    s: Vec<BigInt>,
    t: Vec<BigInt>,
}

fn to_big(v: &[u64]) -> Vec<BigInt> {
    v.iter().map(|&c| BigInt::from(c)).collect()
}

impl HenselState {
    /// Starts from `Phi_m = cofactor * f mod p` with `f` monic irreducible.
    pub fn new(m: u64, p: u64, f: &[u64]) -> Result<Self> {
        let phi = phi_mod_p(m, p);
        let (g, r) = divrem(&phi, f, p);
        if !r.is_empty() {
            return Err(Error::Arithmetic(format!("factor does not divide Phi_{m} mod {p}")));
        }
        // s g + t f = 1 over F_p; f and its cofactor are coprime since Phi_m
        // is squarefree mod p.
        let s = inverse_mod(&g, f, p)
            .ok_or_else(|| Error::Arithmetic(format!("Phi_{m} not squarefree mod {p}")))?;
        let sg = mul(&s, &g, p);
        let (t, r) = divrem(&sub(&[1], &sg, p), f, p);
        debug_assert!(r.is_empty());
        Ok(Self { k: 1, g: to_big(&g), h: to_big(f), s: to_big(&s), t: to_big(&t) })
    }

    /// One quadratic step, `p^k -> p^(2k)`.
    pub fn step(&mut self, m: u64, p: u64) {
        let k = self.k * 2;
        let modulus = BigInt::from(p).pow(k);
        let phi = cyclotomic_polynomial(m);
        let e = zn_sub(&phi, &zn_mul(&self.g, &self.h, &modulus), &modulus);
        let (q, r) = zn_divrem_monic(&zn_mul(&self.s, &e, &modulus), &self.h, &modulus);
        let g = zn_add(
            &zn_add(&self.g, &zn_mul(&self.t, &e, &modulus), &modulus),
            &zn_mul(&q, &self.g, &modulus),
            &modulus,
        );
        let mut h = self.h.clone();
        h.resize(h.len().max(r.len()), BigInt::zero());
        let h = zn_add(&h, &r, &modulus);
        let b = zn_sub(
            &zn_add(&zn_mul(&self.s, &g, &modulus), &zn_mul(&self.t, &h, &modulus), &modulus),
            &[BigInt::one()],
            &modulus,
        );
        let (c, d) = zn_divrem_monic(&zn_mul(&self.s, &b, &modulus), &h, &modulus);
        let s = zn_sub(&self.s, &d, &modulus);
        let t = zn_sub(
            &zn_sub(&self.t, &zn_mul(&self.t, &b, &modulus), &modulus),
            &zn_mul(&c, &g, &modulus),
            &modulus,
        );
        *self = Self { k, g, h, s, t };
    }
}

/// Lift of the monic factor `f` of `Phi_m mod p` to a monic factor modulo
/// `p^n`.
pub fn hensel_lift(m: u64, p: u64, f: &[u64], n: u32) -> Result<Vec<BigInt>> {
    let mut st = HenselState::new(m, p, f)?;
    while st.k < n {
        st.step(m, p);
    }
    let modulus = BigInt::from(p).pow(n);
    let mut h = st.h;
    zn_reduce(&mut h, &modulus);
    Ok(h)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn phi3_mod_2_is_irreducible() {
        assert_eq!(factor_cyclotomic_mod_p(3, 2).unwrap(), vec![1, 1, 1]);
        assert_eq!(factor_cyclotomic_mod_p_all(3, 2).unwrap().len(), 1);
    }

    #[test]
    fn factor_degrees_follow_the_order_of_p() {
        for (m, p) in [(15, 2), (8, 3), (7, 2), (5, 11), (9, 2), (1, 3), (21, 5)] {
            let d = numtheory::multiplicative_order(p % m, m) as usize;
            let fs = factor_cyclotomic_mod_p_all(m, p).unwrap();
            assert_eq!(fs.len() * d, numtheory::euler_phi(m) as usize, "m={m} p={p}");
            let mut prod: FpPoly = vec![1];
            for f in &fs {
                assert_eq!(f.len() - 1, d);
                prod = mul(&prod, f, p);
            }
            assert_eq!(prod, phi_mod_p(m, p));
        }
        assert!(factor_cyclotomic_mod_p(6, 3).is_err());
    }

    #[test]
    fn hensel_lifts_divide_phi() {
        let f = factor_cyclotomic_mod_p(3, 2).unwrap();
        let f4 = hensel_lift(3, 2, &f, 2).unwrap();
        assert_eq!(f4, to_big(&[1, 1, 1]));
        for (m, p) in [(15, 2), (8, 3), (4, 5), (7, 2)] {
            for f in factor_cyclotomic_mod_p_all(m, p).unwrap() {
                for n in [1, 3, 8, 20] {
                    let modulus = BigInt::from(p).pow(n);
                    let fl = hensel_lift(m, p, &f, n).unwrap();
                    let mut low = fl.clone();
                    zn_reduce(&mut low, &BigInt::from(p));
                    assert_eq!(low, to_big(&f));
                    let (_, r) = zn_divrem_monic(&cyclotomic_polynomial(m), &fl, &modulus);
                    assert!(r.is_empty(), "m={m} p={p} n={n}");
                }
            }
        }
    }
}
