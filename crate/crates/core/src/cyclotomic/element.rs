//! Canonical elements of cyclotomic fields.

use std::collections::HashMap;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};
use std::sync::{Arc, Mutex, OnceLock};

use num_bigint::BigInt;
use num_integer::Integer;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use super::poly::{cyclotomic_polynomial, inverse_mod_q, mul_int, reduce_mod_cyclotomic};
use crate::error::{Error, Result};
use crate::numtheory;

/// An element of the cyclotomic field `Q(z_n)`, `z_n = exp(2 pi i / n)`.
///
/// Stored as integer coordinates over the power basis `1, z, ..., z^(phi(n)-1)`
/// with one positive common denominator, reduced so that the content of the
/// numerators is coprime to the denominator. The conductor `n` is always the
/// smallest one whose field contains the element, so structural equality is
/// field equality.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Cyclotomic {
    conductor: u64,
    num: Vec<BigInt>,
    den: BigInt,
}

impl Cyclotomic {
    pub fn zero() -> Self {
        Self::from_integer(BigInt::zero())
    }

    pub fn one() -> Self {
        Self::from_integer(BigInt::one())
    }

    pub fn from_integer(n: impl Into<BigInt>) -> Self {
        Self { conductor: 1, num: vec![n.into()], den: BigInt::one() }
    }

    pub fn from_rational(q: BigRational) -> Self {
        let (num, den) = q.into();
        Self { conductor: 1, num: vec![num], den }
    }

    pub fn from_ratio(num: i64, den: i64) -> Self {
        Self::from_rational(BigRational::new(num.into(), den.into()))
    }

    /// `z_n^e` in canonical form.
    pub fn root_of_unity(n: u64, e: i64) -> Self {
        assert!(n >= 1, "root of unity of order 0");
        let mut v = vec![BigInt::zero(); n as usize];
        v[numtheory::residue(e, n) as usize] = BigInt::one();
        Self::from_power_coeffs(n, v, BigInt::one())
    }

    /// `sum_i (v[i] / den) z_n^i` for any length of `v`; exponents are read
    /// modulo `n`.
    pub fn from_power_coeffs(n: u64, v: Vec<BigInt>, den: BigInt) -> Self {
        assert!(!den.is_zero(), "zero denominator");
        let mut folded = vec![BigInt::zero(); n as usize];
        for (i, c) in v.into_iter().enumerate() {
            folded[i % n as usize] += c;
        }
        reduce_mod_cyclotomic(&mut folded, n);
        Self::normalize(n, folded, den)
    }

    /// `sum (num/den) z_n^e` over the given terms.
    pub fn from_terms(n: u64, terms: &[(i64, BigRational)]) -> Self {
        let den = terms
            .iter()
            .fold(BigInt::one(), |acc, (_, q)| acc.lcm(q.denom()));
        let mut v = vec![BigInt::zero(); n as usize];
        for (e, q) in terms {
            v[numtheory::residue(*e, n) as usize] += q.numer() * (&den / q.denom());
        }
        Self::from_power_coeffs(n, v, den)
    }

    pub fn conductor(&self) -> u64 {
        self.conductor
    }

    /// Coordinates over the power basis of `Q(z_conductor)`.
    pub fn coeffs(&self) -> Vec<BigRational> {
        self.num
            .iter()
            .map(|c| BigRational::new(c.clone(), self.den.clone()))
            .collect()
    }

    /// Integer numerators over the power basis, sharing [`Self::denominator`].
    pub fn numerators(&self) -> &[BigInt] {
        &self.num
    }

    pub fn denominator(&self) -> &BigInt {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.conductor == 1 && self.num[0].is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.conductor == 1 && self.num[0].is_one() && self.den.is_one()
    }

    pub fn is_rational(&self) -> bool {
        self.conductor == 1
    }

    pub fn to_rational(&self) -> Option<BigRational> {
        self.is_rational()
            .then(|| BigRational::new(self.num[0].clone(), self.den.clone()))
    }

    pub fn to_integer(&self) -> Option<BigInt> {
        (self.is_rational() && self.den.is_one()).then(|| self.num[0].clone())
    }

    /// Algebraic integer test; the power basis is an integral basis.
    pub fn is_integral(&self) -> bool {
        self.den.is_one()
    }

    fn normalize(n: u64, mut num: Vec<BigInt>, mut den: BigInt) -> Self {
        if den.is_negative() {
            den = -den;
            num.iter_mut().for_each(|c| *c = -&*c);
        }
        let g = num.iter().fold(den.clone(), |g, c| g.gcd(c));
        if !g.is_one() {
            num.iter_mut().for_each(|c| *c /= &g);
            den /= &g;
        }
        if num.iter().all(Zero::is_zero) {
            return Self::zero();
        }
        let (conductor, num) = minimize_conductor(n, num);
        Self { conductor, num, den }
    }

    /// Numerators of `self` written in `Q(z_big)`, `conductor | big`.
    fn embedded(&self, big: u64) -> Vec<BigInt> {
        if big == self.conductor {
            return self.num.clone();
        }
        debug_assert_eq!(big % self.conductor, 0);
        let step = (big / self.conductor) as usize;
        let mut v = vec![BigInt::zero(); big as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[i * step] = c.clone();
        }
        reduce_mod_cyclotomic(&mut v, big);
        v
    }

    pub fn neg(&self) -> Self {
        Self {
            conductor: self.conductor,
            num: self.num.iter().map(|c| -c).collect(),
            den: self.den.clone(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let n = numtheory::lcm(self.conductor, other.conductor);
        let a = self.embedded(n);
        let b = other.embedded(n);
        let num = a
            .iter()
            .zip(&b)
            .map(|(x, y)| x * &other.den + y * &self.den)
            .collect();
        Self::normalize(n, num, &self.den * &other.den)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero();
        }
        if self.is_rational() || other.is_rational() {
            let (r, x) = if self.is_rational() { (self, other) } else { (other, self) };
            let num = x.num.iter().map(|c| c * &r.num[0]).collect();
            return Self::normalize(x.conductor, num, &r.den * &x.den);
        }
        let n = numtheory::lcm(self.conductor, other.conductor);
        let mut prod = mul_int(&self.embedded(n), &other.embedded(n));
        reduce_mod_cyclotomic(&mut prod, n);
        Self::normalize(n, prod, &self.den * &other.den)
    }

    pub fn scale(&self, q: &BigRational) -> Self {
        self.mul(&Self::from_rational(q.clone()))
    }

    pub fn inv(&self) -> Result<Self> {
        if self.is_zero() {
            return Err(Error::ZeroInverse);
        }
        let n = self.conductor;
        if n == 1 {
            return Ok(Self { conductor: 1, num: vec![self.den.clone()], den: self.num[0].clone() }
                .renormalized());
        }
        let a: Vec<BigRational> = self.coeffs();
        let phi: Vec<BigRational> = cyclotomic_polynomial(n)
            .iter()
            .map(|c| BigRational::from_integer(c.clone()))
            .collect();
        let inv = inverse_mod_q(&a, &phi).ok_or(Error::ZeroInverse)?;
        let den = inv.iter().fold(BigInt::one(), |acc, q| acc.lcm(q.denom()));
        let num = inv.iter().map(|q| q.numer() * (&den / q.denom())).collect();
        Ok(Self::from_power_coeffs(n, num, den))
    }

    pub fn div(&self, other: &Self) -> Result<Self> {
        Ok(self.mul(&other.inv()?))
    }

    fn renormalized(self) -> Self {
        Self::normalize(self.conductor, self.num, self.den)
    }

    /// The Galois automorphism `z_n -> z_n^k`.
    pub fn galois(&self, k: i64) -> Result<Self> {
        let n = self.conductor;
        let k = numtheory::residue(k, n);
        if numtheory::gcd(k, n) != 1 {
            return Err(Error::InvalidGaloisIndex { k: k as i64, conductor: n });
        }
        Ok(self.galois_unchecked(k))
    }

    /// As [`Self::galois`], with `k` already known to be a unit mod the
    /// conductor.
    pub(crate) fn galois_unchecked(&self, k: u64) -> Self {
        let n = self.conductor;
        if n == 1 || k % n == 1 {
            return self.clone();
        }
        let mut v = vec![BigInt::zero(); n as usize];
        for (i, c) in self.num.iter().enumerate() {
            v[numtheory::mul_mod(i as u64, k, n) as usize] = c.clone();
        }
        reduce_mod_cyclotomic(&mut v, n);
        Self { conductor: n, num: v, den: self.den.clone() }
    }

    /// Apply `sigma_k` where `k` is a unit modulo some multiple of the
    /// conductor (the usual situation when acting with `(Z/N)^x`).
    pub fn galois_mod(&self, k: u64, modulus: u64) -> Self {
        debug_assert_eq!(modulus % self.conductor, 0);
        debug_assert_eq!(numtheory::gcd(k, modulus), 1);
        self.galois_unchecked(k % self.conductor)
    }

    pub fn conj(&self) -> Self {
        self.galois_unchecked(self.conductor.wrapping_sub(1).max(1))
    }
}

/// Coordinates of a subfield element, per pair `(n, n/q)`.
struct Projection {
    small: u64,
    /// Rows of the embedding matrix used to solve for the small coordinates.
    rows: Vec<usize>,
    /// Inverse of the square submatrix on `rows`.
    inverse: Vec<Vec<BigRational>>,
    /// Columns: images of `z_small^j` in `Q(z_n)`.
    columns: Vec<Vec<BigInt>>,
}

fn projection(n: u64, small: u64) -> Arc<Projection> {
    static CACHE: OnceLock<Mutex<HashMap<(u64, u64), Arc<Projection>>>> = OnceLock::new();
    let cache = CACHE.get_or_init(Default::default);
    if let Some(p) = cache.lock().unwrap().get(&(n, small)) {
        return p.clone();
    }
    let step = (n / small) as usize;
    let phi_small = numtheory::euler_phi(small) as usize;
    let columns: Vec<Vec<BigInt>> = (0..phi_small)
        .map(|j| {
            let mut v = vec![BigInt::zero(); n as usize];
            v[j * step] = BigInt::one();
            reduce_mod_cyclotomic(&mut v, n);
            v
        })
        .collect();
    let (rows, inverse) = independent_rows_inverse(&columns);
    let p = Arc::new(Projection { small, rows, inverse, columns });
    cache.lock().unwrap().insert((n, small), p.clone());
    p
}

/// Picks rows of the (full column rank) matrix given by `columns` forming an
/// invertible square submatrix and returns them with its inverse.
fn independent_rows_inverse(columns: &[Vec<BigInt>]) -> (Vec<usize>, Vec<Vec<BigRational>>) {
    let k = columns.len();
    let height = columns.first().map_or(0, Vec::len);
    // Greedy row selection by elimination on the transpose.
    let mut basis: Vec<Vec<BigRational>> = Vec::new();
    let mut pivots: Vec<usize> = Vec::new();
    let mut rows = Vec::new();
    for r in 0..height {
        let mut v: Vec<BigRational> = columns.iter().map(|c| BigRational::from_integer(c[r].clone())).collect();
        for (b, &pc) in basis.iter().zip(&pivots) {
            if !v[pc].is_zero() {
                let f = v[pc].clone() / &b[pc];
                for (x, y) in v.iter_mut().zip(b) {
                    *x -= &f * y;
                }
            }
        }
        if let Some(pc) = v.iter().position(|x| !x.is_zero()) {
            basis.push(v);
            pivots.push(pc);
            rows.push(r);
            if rows.len() == k {
                break;
            }
        }
    }
    assert_eq!(rows.len(), k, "embedding matrix must have full column rank");
    let square: Vec<Vec<BigRational>> = rows
        .iter()
        .map(|&r| columns.iter().map(|c| BigRational::from_integer(c[r].clone())).collect())
        .collect();
    (rows, invert_rational(square))
}

fn invert_rational(mut a: Vec<Vec<BigRational>>) -> Vec<Vec<BigRational>> {
    let k = a.len();
    let mut inv: Vec<Vec<BigRational>> = (0..k)
        .map(|i| (0..k).map(|j| if i == j { BigRational::one() } else { BigRational::zero() }).collect())
        .collect();
    for c in 0..k {
        let p = (c..k).find(|&r| !a[r][c].is_zero()).expect("singular matrix");
        a.swap(c, p);
        inv.swap(c, p);
        let f = a[c][c].recip();
        for j in 0..k {
            a[c][j] *= &f;
            inv[c][j] *= &f;
        }
        for r in 0..k {
            if r != c && !a[r][c].is_zero() {
                let g = a[r][c].clone();
                for j in 0..k {
                    let t = &g * &a[c][j];
                    a[r][j] -= t;
                    let t = &g * &inv[c][j];
                    inv[r][j] -= t;
                }
            }
        }
    }
    inv
}

/// Coordinates of `num` (in `Q(z_n)`) inside `Q(z_small)` if it lies there.
fn try_descend(n: u64, small: u64, num: &[BigInt]) -> Option<Vec<BigInt>> {
    let step = n / small;
    if numtheory::gcd(step, small) == step && small % step == 0 {
        // step^2 | n: the subfield basis is a subset of the power basis.
        let s = step as usize;
        if num.iter().enumerate().any(|(i, c)| i % s != 0 && !c.is_zero()) {
            return None;
        }
        return Some(num.iter().step_by(s).cloned().collect());
    }
    let p = projection(n, small);
    let coords: Vec<BigRational> = p
        .inverse
        .iter()
        .map(|row| {
            row.iter()
                .zip(&p.rows)
                .fold(BigRational::zero(), |acc, (x, &r)| acc + x * &num[r])
        })
        .collect();
    if coords.iter().any(|c| !c.is_integer()) {
        // Would change the content; cannot equal an integral vector image
        // unless the element is outside the subfield.
        return None;
    }
    let coords: Vec<BigInt> = coords.into_iter().map(|c| c.to_integer()).collect();
    let ok = (0..num.len()).all(|r| {
        let s = p
            .columns
            .iter()
            .zip(&coords)
            .fold(BigInt::zero(), |acc, (col, c)| acc + &col[r] * c);
        s == num[r]
    });
    debug_assert_eq!(p.small, small);
    ok.then_some(coords)
}

fn minimize_conductor(mut n: u64, mut num: Vec<BigInt>) -> (u64, Vec<BigInt>) {
    loop {
        if n == 1 {
            return (1, num);
        }
        if num.iter().skip(1).all(Zero::is_zero) {
            num.truncate(1);
            return (1, num);
        }
        let mut descended = false;
        for q in numtheory::prime_divisors(n) {
            let small = n / q;
            if let Some(c) = try_descend(n, small, &num) {
                n = small;
                num = c;
                descended = true;
                break;
            }
        }
        if !descended {
            return (n, num);
        }
    }
}

impl fmt::Display for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_rational() {
            return write!(f, "{}", BigRational::new(self.num[0].clone(), self.den.clone()));
        }
        let mut first = true;
        for (i, c) in self.num.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = BigRational::new(c.clone(), self.den.clone());
            let (sign, mag) = if q.is_negative() { ("-", -q) } else { ("+", q) };
            if first {
                if sign == "-" {
                    write!(f, "-")?;
                }
            } else {
                write!(f, " {sign} ")?;
            }
            first = false;
            match i {
                0 => write!(f, "{mag}")?,
                _ => {
                    if !mag.is_one() {
                        write!(f, "{mag}*")?;
                    }
                    if i == 1 {
                        write!(f, "z{}", self.conductor)?;
                    } else {
                        write!(f, "z{}^{}", self.conductor, i)?;
                    }
                }
            }
        }
        Ok(())
    }
}

impl fmt::Debug for Cyclotomic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Cyclotomic({self})")
    }
}

impl From<i64> for Cyclotomic {
    fn from(n: i64) -> Self {
        Self::from_integer(n)
    }
}

macro_rules! forward_binop {
    ($tr:ident, $method:ident) => {
        impl $tr<&Cyclotomic> for &Cyclotomic {
            type Output = Cyclotomic;
            fn $method(self, rhs: &Cyclotomic) -> Cyclotomic {
                Cyclotomic::$method(self, rhs)
            }
        }
    };
}

forward_binop!(Add, add);
forward_binop!(Sub, sub);
forward_binop!(Mul, mul);

impl Neg for &Cyclotomic {
    type Output = Cyclotomic;
    fn neg(self) -> Cyclotomic {
        Cyclotomic::neg(self)
    }
}

impl std::iter::Sum for Cyclotomic {
    fn sum<I: Iterator<Item = Self>>(iter: I) -> Self {
        iter.fold(Cyclotomic::zero(), |a, b| a.add(&b))
    }
}
