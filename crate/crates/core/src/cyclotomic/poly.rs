//! Dense polynomials over Z and Q, little-endian coefficient order.

use std::collections::HashMap;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Zero};

use crate::numtheory;

/// The `n`-th cyclotomic polynomial, monic with integer coefficients.
pub fn cyclotomic_polynomial(n: u64) -> Arc<Vec<BigInt>> {
    static CACHE: OnceLock<Mutex<HashMap<u64, Arc<Vec<BigInt>>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(phi) = cache.lock().unwrap().get(&n) {
        return phi.clone();
    }
    assert!(n >= 1, "cyclotomic polynomial of index 0");
    // x^n - 1 divided by every Phi_d with d | n, d < n.
    let mut num = vec![BigInt::zero(); n as usize + 1];
    num[0] = BigInt::from(-1);
    num[n as usize] = BigInt::one();
    for d in 1..n {
        if n % d == 0 {
            let phi_d = cyclotomic_polynomial(d);
            num = div_exact_monic(&num, &phi_d);
        }
    }
    debug_assert_eq!(num.len() as u64, numtheory::euler_phi(n) + 1);
    let phi = Arc::new(num);
    cache.lock().unwrap().insert(n, phi.clone());
    phi
}

/// Quotient of `a` by the monic `b`, assuming the division is exact.
fn div_exact_monic(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    let db = b.len() - 1;
    let mut r = a.to_vec();
    let mut q = vec![BigInt::zero(); a.len() - db];
    for i in (db..a.len()).rev() {
        let c = std::mem::take(&mut r[i]);
        if c.is_zero() {
            continue;
        }
        for j in 0..db {
            r[i - db + j] -= &c * &b[j];
        }
        q[i - db] = c;
    }
    debug_assert!(r.iter().all(Zero::is_zero));
    q
}

/// Reduces `v` modulo `Phi_n` in place, leaving exactly `phi(n)` coefficients.
pub fn reduce_mod_cyclotomic(v: &mut Vec<BigInt>, n: u64) {
    let phi = cyclotomic_polynomial(n);
    let deg = phi.len() - 1;
    if v.len() < deg {
        v.resize(deg, BigInt::zero());
        return;
    }
    for i in (deg..v.len()).rev() {
        let c = std::mem::take(&mut v[i]);
        if c.is_zero() {
            continue;
        }
        for j in 0..deg {
            v[i - deg + j] -= &c * &phi[j];
        }
    }
    v.truncate(deg);
}

pub fn mul_int(a: &[BigInt], b: &[BigInt]) -> Vec<BigInt> {
    if a.is_empty() || b.is_empty() {
        return Vec::new();
    }
    let mut out = vec![BigInt::zero(); a.len() + b.len() - 1];
    for (i, x) in a.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            if !y.is_zero() {
                out[i + j] += x * y;
            }
        }
    }
    out
}

fn trim_q(v: &mut Vec<BigRational>) {
    while v.last().is_some_and(Zero::is_zero) {
        v.pop();
    }
}

fn divrem_q(a: &[BigRational], b: &[BigRational]) -> (Vec<BigRational>, Vec<BigRational>) {
    let mut r = a.to_vec();
    trim_q(&mut r);
    let db = b.len() - 1;
    if r.len() < b.len() {
        return (Vec::new(), r);
    }
    let lead_inv = b[db].recip();
    let mut q = vec![BigRational::zero(); r.len() - db];
    for i in (db..r.len()).rev() {
        if r[i].is_zero() {
            continue;
        }
        let c = &r[i] * &lead_inv;
        for j in 0..=db {
            let t = &c * &b[j];
            r[i - db + j] -= t;
        }
        q[i - db] = c;
    }
    trim_q(&mut r);
    (q, r)
}

fn sub_mul_q(a: &[BigRational], q: &[BigRational], b: &[BigRational]) -> Vec<BigRational> {
    let mut out = a.to_vec();
    for (i, x) in q.iter().enumerate() {
        if x.is_zero() {
            continue;
        }
        for (j, y) in b.iter().enumerate() {
            let t = x * y;
            if out.len() <= i + j {
                out.resize(i + j + 1, BigRational::zero());
            }
            out[i + j] -= t;
        }
    }
    trim_q(&mut out);
    out
}

/// Inverse of `a` modulo the irreducible `modulus` by the extended Euclidean
/// algorithm. Returns `None` when `a` is zero modulo `modulus`.
pub fn inverse_mod_q(a: &[BigRational], modulus: &[BigRational]) -> Option<Vec<BigRational>> {
    let mut r0 = modulus.to_vec();
    let mut r1 = a.to_vec();
    trim_q(&mut r0);
    trim_q(&mut r1);
    if r1.is_empty() {
        return None;
    }
    let mut s0: Vec<BigRational> = Vec::new();
    let mut s1: Vec<BigRational> = vec![BigRational::one()];
    while !r1.is_empty() {
        let (q, r) = divrem_q(&r0, &r1);
        let s2 = sub_mul_q(&s0, &q, &s1);
        r0 = std::mem::replace(&mut r1, r);
        s0 = std::mem::replace(&mut s1, s2);
    }
    if r0.len() != 1 {
        return None;
    }
    let c = r0[0].recip();
    Some(s0.into_iter().map(|x| x * &c).collect())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn ints(v: &[i64]) -> Vec<BigInt> {
        v.iter().map(|&x| BigInt::from(x)).collect()
    }

    #[test]
    fn small_cyclotomic_polynomials() {
        assert_eq!(*cyclotomic_polynomial(1), ints(&[-1, 1]));
        assert_eq!(*cyclotomic_polynomial(2), ints(&[1, 1]));
        assert_eq!(*cyclotomic_polynomial(3), ints(&[1, 1, 1]));
        assert_eq!(*cyclotomic_polynomial(4), ints(&[1, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(6), ints(&[1, -1, 1]));
        assert_eq!(*cyclotomic_polynomial(8), ints(&[1, 0, 0, 0, 1]));
        assert_eq!(*cyclotomic_polynomial(9), ints(&[1, 0, 0, 1, 0, 0, 1]));
        // Phi_105 is the first with a coefficient outside {-1, 0, 1}.
        assert!(cyclotomic_polynomial(105).iter().any(|c| *c == BigInt::from(-2)));
    }

    #[test]
    fn reduction_wraps_powers() {
        // x^4 = -1 mod Phi_8
        let mut v = ints(&[0, 0, 0, 0, 1]);
        reduce_mod_cyclotomic(&mut v, 8);
        assert_eq!(v, ints(&[-1, 0, 0, 0]));
    }

    #[test]
    fn inverse_modulo_phi() {
        let q = |v: &[i64]| v.iter().map(|&x| BigRational::from_integer(x.into())).collect::<Vec<_>>();
        let phi4 = q(&[1, 0, 1]);
        // (1 + x)^{-1} = (1 - x)/2 mod x^2 + 1
        let inv = inverse_mod_q(&q(&[1, 1]), &phi4).unwrap();
        let half = BigRational::new(1.into(), 2.into());
        assert_eq!(inv, vec![half.clone(), -half]);
        assert!(inverse_mod_q(&[], &phi4).is_none());
    }
}
