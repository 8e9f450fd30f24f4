//! A fixed prime ideal over p in Q(z_n) for all `n = p^t m'` with `m' | m`,
//! given by an irreducible factor `f` of `Phi_m` over F_p.
//!
//! Two computational routes are available. The norm route maps the relative
//! norm down to `Q(z_m')` into `(Z/p^N)[x]/(f_N)`. The completion route
//! writes the element over `W_N[pi]`, `W_N = (Z/p^N)[x]/(f_N)` and
//! `pi = 1 - z_{p^t}` Eisenstein, which also yields residues of elements with
//! p in their rational denominator.

use std::collections::HashMap;
use std::fmt;
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::Rational64;
use num_traits::{ToPrimitive, Zero};

use super::element::Cyclotomic;
use super::modp::{self, FpPoly, HenselState};
use super::poly::cyclotomic_polynomial;
use crate::error::{Error, Result};
use crate::numtheory;

const START_PRECISION: u32 = 8;
const MAX_PRECISION: u32 = 4096;

pub struct LocalContext {
    p: u64,
    m: u64,
    f: Arc<FpPoly>,
    lifts: Mutex<HenselState>,
}

impl fmt::Debug for LocalContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("LocalContext")
            .field("p", &self.p)
            .field("m", &self.m)
            .field("f", &self.f)
            .finish()
    }
}

impl LocalContext {
    /// Context using the first irreducible factor of `Phi_m` mod `p`.
    pub fn new(p: u64, m: u64) -> Result<Self> {
        let f = modp::factor_cyclotomic_mod_p(m, p)?;
        Self::with_factor(p, m, f)
    }

    /// Context for an explicitly chosen monic irreducible factor `f`.
    pub fn with_factor(p: u64, m: u64, f: FpPoly) -> Result<Self> {
        let d = numtheory::multiplicative_order(p % m, m) as usize;
        if f.len() != d + 1 {
            return Err(Error::Arithmetic(format!("factor of degree {} but ord_{m}({p}) = {d}", f.len() - 1)));
        }
        let lifts = HenselState::new(m, p, &f)?;
        Ok(Self { p, m, f: Arc::new(f), lifts: Mutex::new(lifts) })
    }

    /// Every context for `(p, m)`, one per irreducible factor of `Phi_m`.
    pub fn all(p: u64, m: u64) -> Result<Vec<Self>> {
        modp::factor_cyclotomic_mod_p_all(m, p)?
            .into_iter()
            .map(|f| Self::with_factor(p, m, f))
            .collect()
    }

    /// A process-wide shared context for `(p, m)`.
    pub fn shared(p: u64, m: u64) -> Result<Arc<Self>> {
        static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<LocalContext>>>> = OnceLock::new();
        let cache = CACHE.get_or_init(Default::default);
        if let Some(ctx) = cache.lock().unwrap().get(&(p, m)) {
            return Ok(ctx.clone());
        }
        let ctx = Arc::new(Self::new(p, m)?);
        Ok(cache.lock().unwrap().entry((p, m)).or_insert(ctx).clone())
    }

    pub fn p(&self) -> u64 {
        self.p
    }

    pub fn m(&self) -> u64 {
        self.m
    }

    pub fn factor(&self) -> &[u64] {
        &self.f
    }

    /// Degree of the residue field over F_p.
    pub fn degree(&self) -> usize {
        self.f.len() - 1
    }

    /// The lift `f_N` of `f`, monic, dividing `Phi_m` modulo `p^n`.
    pub fn hensel_lift(&self, n: u32) -> Vec<BigInt> {
        let mut st = self.lifts.lock().unwrap();
        while st.k < n {
            st.step(self.m, self.p);
        }
        let mut h = st.h.clone();
        modp::zn_reduce(&mut h, &BigInt::from(self.p).pow(n));
        h
    }

    /// `phi(p^t)` for `t` the p-adic valuation of `conductor`.
    pub fn ramification_index(&self, conductor: u64) -> u64 {
        numtheory::euler_phi(numtheory::p_part(conductor, self.p))
    }

    fn split_conductor(&self, n: u64) -> Result<(u64, u64)> {
        let pt = numtheory::p_part(n, self.p);
        let mp = n / pt;
        if self.m % mp != 0 {
            return Err(Error::Arithmetic(format!(
                "conductor {n} not covered by the context at p = {}, m = {}",
                self.p, self.m
            )));
        }
        Ok((pt, mp))
    }

    pub fn zero(&self) -> FiniteFieldElem {
        FiniteFieldElem { p: self.p, f: self.f.clone(), poly: Vec::new() }
    }

    pub fn one(&self) -> FiniteFieldElem {
        FiniteFieldElem { p: self.p, f: self.f.clone(), poly: vec![1] }
    }

    fn elem(&self, mut poly: FpPoly) -> FiniteFieldElem {
        modp::trim(&mut poly);
        FiniteFieldElem { p: self.p, f: self.f.clone(), poly: modp::rem(&poly, &self.f, self.p) }
    }

    /// The residue map, `z_{p^t} -> 1`, `z_m' -> x^(m/m')`.
    ///
    /// Elements with p in their denominator are handled through the
    /// completion; only a negative valuation is an error.
    pub fn reduce_mod_prime(&self, a: &Cyclotomic) -> Result<FiniteFieldElem> {
        let n = a.conductor();
        let (pt, mp) = self.split_conductor(n)?;
        let p = self.p;
        let den = a.denominator();
        let pb = BigInt::from(p);
        if !den.is_multiple_of(&pb) {
            let den_inv = numtheory::inv_mod(to_residue(den, p), p).unwrap();
            let (_, w) = crt_exponents(pt, mp);
            let step = self.m / mp;
            let mut acc = vec![0u64; self.m as usize];
            for (i, c) in a.numerators().iter().enumerate() {
                let c = to_residue(c, p);
                if c == 0 {
                    continue;
                }
                let xe = (step * ((w * i as u64) % mp)) as usize;
                acc[xe] = (acc[xe] + numtheory::mul_mod(c, den_inv, p)) % p;
            }
            return Ok(self.elem(acc));
        }
        let s = big_valuation(den, p);
        let unit_inv = numtheory::inv_mod(to_residue(&(den / pb.pow(s)), p), p).unwrap();
        let mut precision = START_PRECISION.max(s + 2);
        loop {
            let exp = self.completion_expand(a.numerators(), n, precision);
            let Some(v) = exp.valuation() else {
                precision = next_precision(precision)?;
                continue;
            };
            if v < exp.e as i64 * s as i64 {
                return Err(Error::NotPIntegral(format!("{a} at p = {p}")));
            }
            // Only the pi^0 coefficient contributes to the residue.
            let ps = pb.pow(s);
            let poly = exp.coeffs[0]
                .iter()
                .map(|c| numtheory::mul_mod(to_residue(&(c / &ps), p), unit_inv, p))
                .collect();
            return Ok(self.elem(poly));
        }
    }

    /// `v_L(a)` in units with `v_L(p) = e`, `e` the ramification index at
    /// the conductor of `a`; via the relative norm to `Q(z_m')`.
    pub fn p_valuation(&self, a: &Cyclotomic) -> Result<i64> {
        if a.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        let n = a.conductor();
        let (pt, mp) = self.split_conductor(n)?;
        let den_val = big_valuation(a.denominator(), self.p) as i64;
        if n == 1 {
            return Ok(big_valuation(&a.numerators()[0], self.p) as i64 - den_val);
        }
        let e = numtheory::euler_phi(pt) as i64;
        let integral = Cyclotomic::from_power_coeffs(n, a.numerators().to_vec(), BigInt::from(1));
        let beta = numtheory::units(n)
            .into_iter()
            .filter(|k| k % mp == 1 % mp)
            .fold(Cyclotomic::one(), |acc, k| acc.mul(&integral.galois_unchecked(k % n)));
        Ok(self.unramified_valuation(&beta)? - e * den_val)
    }

    /// Valuation of a nonzero algebraic integer of `Q(z_m')`.
    fn unramified_valuation(&self, beta: &Cyclotomic) -> Result<i64> {
        debug_assert!(beta.is_integral());
        let c = beta.conductor();
        let step = (self.m / c) as usize;
        let mut precision = START_PRECISION;
        loop {
            let modulus = BigInt::from(self.p).pow(precision);
            let mut v = vec![BigInt::zero(); self.m as usize];
            for (i, x) in beta.numerators().iter().enumerate() {
                v[(i * step) % self.m as usize] += x;
            }
            let (_, r) = modp::zn_divrem_monic(&v, &self.hensel_lift(precision), &modulus);
            if let Some(val) = r.iter().filter(|x| !x.is_zero()).map(|x| big_valuation(x, self.p)).min() {
                return Ok(val as i64);
            }
            precision = next_precision(precision)?;
        }
    }

    /// As [`Self::p_valuation`], computed in the completion.
    pub fn local_valuation(&self, a: &Cyclotomic) -> Result<i64> {
        if a.is_zero() {
            return Err(Error::ValuationOfZero);
        }
        let n = a.conductor();
        self.split_conductor(n)?;
        let den_val = big_valuation(a.denominator(), self.p) as i64;
        let mut precision = START_PRECISION;
        loop {
            let exp = self.completion_expand(a.numerators(), n, precision);
            if let Some(v) = exp.valuation() {
                return Ok(v - exp.e as i64 * den_val);
            }
            precision = next_precision(precision)?;
        }
    }

    /// `v_L(a) / e`, the valuation normalized so that `v(p) = 1`.
    pub fn normalized_valuation(&self, a: &Cyclotomic) -> Result<Rational64> {
        let v = self.local_valuation(a)?;
        Ok(Rational64::new(v, self.ramification_index(a.conductor()) as i64))
    }

    fn completion_expand(&self, num: &[BigInt], n: u64, precision: u32) -> Expansion {
        let (pt, mp) = self.split_conductor(n).expect("checked by caller");
        let e = numtheory::euler_phi(pt) as usize;
        let modulus = BigInt::from(self.p).pow(precision);
        let fl = self.hensel_lift(precision);
        let (u, w) = crt_exponents(pt, mp);
        let step = self.m / mp;
        let mut grid = vec![vec![BigInt::zero(); self.m as usize]; pt as usize];
        for (i, c) in num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let i = i as u64;
            let ye = (u * i % pt) as usize;
            let xe = (step * (w * i % mp)) as usize;
            grid[ye][xe] += c;
        }
        // Coefficients in W_N of the powers of y = z_{p^t}.
        let mut b: Vec<Vec<BigInt>> = grid
            .into_iter()
            .map(|v| modp::zn_divrem_monic(&v, &fl, &modulus).1)
            .collect();
        let phi = cyclotomic_polynomial(pt);
        for j in (e..pt as usize).rev() {
            let c = std::mem::take(&mut b[j]);
            if c.is_empty() {
                continue;
            }
            for l in 0..e {
                if phi[l].is_zero() {
                    continue;
                }
                let target = &mut b[j - e + l];
                target.resize(target.len().max(c.len()), BigInt::zero());
                for (t, x) in target.iter_mut().zip(&c) {
                    *t -= x * &phi[l];
                }
            }
        }
        b.truncate(e);
        // Substitute y = 1 - pi: c_k = (-1)^k sum_{j >= k} binom(j, k) b_j.
        let mut coeffs = vec![Vec::<BigInt>::new(); e];
        let mut binom = vec![BigInt::from(1)];
        for (j, bj) in b.iter().enumerate() {
            if j > 0 {
                let mut next = vec![BigInt::from(1); j + 1];
                for k in 1..j {
                    next[k] = &binom[k - 1] + &binom[k];
                }
                binom = next;
            }
            if bj.is_empty() {
                continue;
            }
            for (k, bk) in binom.iter().enumerate() {
                let ck = &mut coeffs[k];
                ck.resize(ck.len().max(bj.len()), BigInt::zero());
                let sign = if k % 2 == 0 { BigInt::from(1) } else { BigInt::from(-1) };
                let f = bk * sign;
                for (t, x) in ck.iter_mut().zip(bj) {
                    *t += x * &f;
                }
            }
        }
        coeffs.iter_mut().for_each(|c| modp::zn_reduce(c, &modulus));
        Expansion { e: e as u64, coeffs, p: self.p }
    }
}

struct Expansion {
    e: u64,
    /// `coeffs[k]` is the coefficient of `pi^k`, an element of `W_N`.
    coeffs: Vec<Vec<BigInt>>,
    p: u64,
}

impl Expansion {
    fn valuation(&self) -> Option<i64> {
        self.coeffs
            .iter()
            .enumerate()
            .filter_map(|(k, c)| {
                c.iter()
                    .filter(|x| !x.is_zero())
                    .map(|x| big_valuation(x, self.p))
                    .min()
                    .map(|v| self.e as i64 * v as i64 + k as i64)
            })
            .min()
    }
}

fn next_precision(n: u32) -> Result<u32> {
    if n >= MAX_PRECISION {
        return Err(Error::PrecisionExhausted(n));
    }
    Ok(n * 2)
}

/// `(u, w)` with `u m' + w p^t = 1`, so `z_n = z_{p^t}^u z_{m'}^w`.
fn crt_exponents(pt: u64, mp: u64) -> (u64, u64) {
    let u = if pt == 1 { 0 } else { numtheory::inv_mod(mp % pt, pt).unwrap() };
    let w = if mp == 1 { 0 } else { numtheory::inv_mod(pt % mp, mp).unwrap() };
    (u, w)
}

fn to_residue(x: &BigInt, p: u64) -> u64 {
    x.mod_floor(&BigInt::from(p)).to_u64().unwrap()
}

/// p-adic valuation of a nonzero big integer.
pub(crate) fn big_valuation(x: &BigInt, p: u64) -> u32 {
    debug_assert!(!x.is_zero());
    let pb = BigInt::from(p);
    let mut x = x.clone();
    let mut v = 0;
    loop {
        let (q, r) = x.div_rem(&pb);
        if !r.is_zero() {
            return v;
        }
        x = q;
        v += 1;
    }
}

/// An element of `F_p[x]/(f)`, the residue field of a [`LocalContext`].
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct FiniteFieldElem {
    p: u64,
    f: Arc<FpPoly>,
    poly: FpPoly,
}

impl FiniteFieldElem {
    /// Coordinates over `1, x, ..., x^(d-1)`, trailing zeros removed.
    pub fn poly(&self) -> &[u64] {
        &self.poly
    }

    pub fn is_zero(&self) -> bool {
        self.poly.is_empty()
    }

    pub fn is_one(&self) -> bool {
        self.poly == [1]
    }

    fn with(&self, poly: FpPoly) -> Self {
        Self { p: self.p, f: self.f.clone(), poly }
    }

    pub fn add(&self, other: &Self) -> Self {
        self.with(modp::add(&self.poly, &other.poly, self.p))
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.with(modp::sub(&self.poly, &other.poly, self.p))
    }

    pub fn neg(&self) -> Self {
        self.with(modp::sub(&[], &self.poly, self.p))
    }

    pub fn mul(&self, other: &Self) -> Self {
        self.with(modp::rem(&modp::mul(&self.poly, &other.poly, self.p), &self.f, self.p))
    }

    pub fn inv(&self) -> Result<Self> {
        modp::inverse_mod(&self.poly, &self.f, self.p)
            .map(|q| self.with(q))
            .ok_or(Error::ZeroInverse)
    }
}

impl fmt::Debug for FiniteFieldElem {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "F{}{:?}", self.p, self.poly)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn z(n: u64, e: i64) -> Cyclotomic {
        Cyclotomic::root_of_unity(n, e)
    }

    #[test]
    fn residues() {
        let ctx = LocalContext::new(2, 3).unwrap();
        assert!(ctx.reduce_mod_prime(&Cyclotomic::one()).unwrap().is_one());
        assert!(ctx.reduce_mod_prime(&z(2, 1)).unwrap().is_one());
        assert!(ctx.reduce_mod_prime(&z(4, 1)).unwrap().is_one());
        let w = ctx.reduce_mod_prime(&z(3, 1)).unwrap();
        assert_eq!(w.poly(), &[0, 1]);
        // 3/2 is not 2-integral, 2/3 reduces to 0.
        assert!(matches!(ctx.reduce_mod_prime(&Cyclotomic::from_ratio(3, 2)), Err(Error::NotPIntegral(_))));
        assert!(ctx.reduce_mod_prime(&Cyclotomic::from_ratio(2, 3)).unwrap().is_zero());
    }

    #[test]
    fn residue_with_p_in_denominator() {
        // (1 + i)^2 / 2 = i reduces to 1 at p = 2.
        let ctx = LocalContext::new(2, 1).unwrap();
        let one_plus_i = Cyclotomic::one().add(&z(4, 1));
        let x = one_plus_i.mul(&one_plus_i).mul(&Cyclotomic::from_ratio(1, 2));
        assert!(ctx.reduce_mod_prime(&x).unwrap().is_one());
        // (1 + i)/2 has valuation -1.
        let y = one_plus_i.mul(&Cyclotomic::from_ratio(1, 2));
        assert!(ctx.reduce_mod_prime(&y).is_err());
        assert_eq!(ctx.p_valuation(&y).unwrap(), -1);
        // (1 + i)^3 / 2 has positive valuation.
        let w = one_plus_i.mul(&x);
        assert!(ctx.reduce_mod_prime(&w).unwrap().is_zero());
    }

    #[test]
    fn valuations() {
        let ctx = LocalContext::new(3, 4).unwrap();
        assert_eq!(ctx.p_valuation(&Cyclotomic::from_integer(3)).unwrap(), 1);
        assert_eq!(ctx.p_valuation(&Cyclotomic::from_integer(5)).unwrap(), 0);
        let pi = Cyclotomic::one().sub(&z(3, 1));
        assert_eq!(ctx.p_valuation(&pi).unwrap(), 1);
        assert_eq!(ctx.local_valuation(&pi).unwrap(), 1);
        assert_eq!(ctx.ramification_index(3), 2);
        // 3 in Q(z9) has valuation e = 6.
        let three = z(9, 1).mul(&Cyclotomic::from_integer(3)).mul(&z(9, -1));
        assert_eq!(ctx.ramification_index(9), 6);
        let pi9 = Cyclotomic::one().sub(&z(9, 1));
        assert_eq!(ctx.p_valuation(&pi9).unwrap(), 1);
        assert_eq!(ctx.p_valuation(&pi9.mul(&z(4, 1)).mul(&Cyclotomic::from_integer(9))).unwrap(), 13);
        assert_eq!(ctx.p_valuation(&three).unwrap(), 1);
        assert!(matches!(ctx.p_valuation(&Cyclotomic::zero()), Err(Error::ValuationOfZero)));
    }

    #[test]
    fn routes_agree() {
        let ctx = LocalContext::new(2, 15).unwrap();
        let samples = [
            z(8, 1).add(&z(8, 3)).add(&Cyclotomic::from_integer(2)),
            z(15, 1).add(&z(3, 1)).mul(&Cyclotomic::from_ratio(4, 3)),
            z(40, 3).sub(&z(5, 2)),
            Cyclotomic::one().sub(&z(8, 1)).mul(&Cyclotomic::from_ratio(1, 8)),
            z(24, 5).add(&z(24, 7)).add(&Cyclotomic::from_integer(6)),
        ];
        for a in &samples {
            assert_eq!(ctx.p_valuation(a).unwrap(), ctx.local_valuation(a).unwrap(), "{a}");
        }
    }
}
