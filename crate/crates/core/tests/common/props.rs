//! Property suites shared by the `properties` tests and the acceptance run.

use std::sync::Arc;

use blockscope::blocks::BlockDistribution;
use blockscope::chartable::{p_sections, validate_brauer_permutation_lemma, CharacterTable};
use blockscope::numtheory;
use blockscope::sections::{analyze_sections, analyze_sections_with, block_elementary_divisors, verify_section_field_index};
use blockscope::{Cyclotomic, LocalContext};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};
use num_traits::Zero;
use proptest::prelude::*;
use proptest::test_runner::{Config, TestCaseError, TestRunner};

pub const CASES: u32 = 256;

const CONDUCTORS: &[u64] = &[1, 3, 4, 5, 7, 8, 9, 12, 15, 16, 20, 24];

fn runner() -> TestRunner {
    TestRunner::new(Config { cases: CASES, failure_persistence: None, ..Config::default() })
}

fn element_in(n: u64) -> impl Strategy<Value = Cyclotomic> {
    (prop::collection::vec(-6i64..=6, n as usize), 1i64..=4).prop_map(move |(c, den)| {
        let terms: Vec<(i64, BigRational)> = c
            .iter()
            .enumerate()
            .map(|(e, &x)| (e as i64, BigRational::new(BigInt::from(x), BigInt::from(den))))
            .collect();
        Cyclotomic::from_terms(n, &terms)
    })
}

fn integral_in(n: u64) -> impl Strategy<Value = Cyclotomic> {
    prop::collection::vec(-6i64..=6, n as usize)
        .prop_map(move |c| Cyclotomic::from_power_coeffs(n, c.into_iter().map(BigInt::from).collect(), BigInt::from(1)))
}

/// Three elements of one field, of mixed conductors dividing `n`.
fn triple() -> impl Strategy<Value = (u64, Cyclotomic, Cyclotomic, Cyclotomic)> {
    prop::sample::select(CONDUCTORS).prop_flat_map(|n| {
        let divisors: Vec<u64> = (1..=n).filter(|d| n % d == 0).collect();
        let sub = prop::sample::select(divisors).prop_flat_map(element_in);
        (Just(n), element_in(n), sub, element_in(n))
    })
}

fn check(cond: bool, msg: impl FnOnce() -> String) -> Result<(), TestCaseError> {
    if cond {
        Ok(())
    } else {
        Err(TestCaseError::fail(msg()))
    }
}

fn run<S: Strategy>(s: S, f: impl Fn(S::Value) -> Result<(), TestCaseError>) -> Result<(), String> {
    runner().run(&s, f).map_err(|e| e.to_string())
}

pub fn field_axioms() -> Result<(), String> {
    run(triple(), |(_, a, b, c)| {
        check(a.add(&b) == b.add(&a), || "addition commutes".into())?;
        check(a.mul(&b) == b.mul(&a), || "multiplication commutes".into())?;
        check(a.add(&b).add(&c) == a.add(&b.add(&c)), || "addition associates".into())?;
        check(a.mul(&b).mul(&c) == a.mul(&b.mul(&c)), || "multiplication associates".into())?;
        check(a.mul(&b.add(&c)) == a.mul(&b).add(&a.mul(&c)), || "distributive".into())?;
        check(a.add(&a.neg()).is_zero(), || "additive inverse".into())?;
        check(a.mul(&Cyclotomic::one()) == a, || "unit".into())?;
        if !a.is_zero() {
            let inv = a.inv().map_err(|e| TestCaseError::fail(e.to_string()))?;
            check(a.mul(&inv).is_one(), || format!("{a} * {inv} != 1"))?;
        } else {
            check(a.inv().is_err(), || "0 has no inverse".into())?;
        }
        check(a.sub(&b).add(&b) == a, || "subtraction".into())?;
        Ok(())
    })
}

pub fn galois_laws() -> Result<(), String> {
    let s = triple().prop_flat_map(|(n, a, b, c)| {
        let units = numtheory::units(n);
        (Just((n, a, b, c)), prop::sample::select(units.clone()), prop::sample::select(units))
    });
    run(s, |((n, a, b, _), j, k)| {
        let g = |x: &Cyclotomic, k: u64| x.galois_mod(k, n);
        check(g(&a.add(&b), k) == g(&a, k).add(&g(&b, k)), || "additive".into())?;
        check(g(&a.mul(&b), k) == g(&a, k).mul(&g(&b, k)), || "multiplicative".into())?;
        check(g(&g(&a, k), j) == g(&a, numtheory::mul_mod(j, k, n)), || "composition".into())?;
        check(g(&a, 1) == a, || "identity".into())?;
        check(a.conj() == g(&a, numtheory::residue(-1, n)), || "conjugation is k = -1".into())?;
        check(a.conj().conj() == a, || "conjugation is an involution".into())?;
        let q = Cyclotomic::from_ratio(7, 3);
        check(g(&q, k) == q, || "rationals are fixed".into())?;
        Ok(())
    })
}

/// `(p, m, n)` with `n = p^a m'` and `m' | m`.
fn local_setting() -> impl Strategy<Value = (u64, u64, u64)> {
    let cases: Vec<(u64, u64)> = vec![(2, 3), (2, 15), (2, 7), (3, 4), (3, 8), (3, 10), (5, 6), (5, 4), (7, 3)];
    (prop::sample::select(cases), 0u32..=2, any::<bool>()).prop_map(|((p, m), a, full)| {
        let mp = if full { m } else { *numtheory::prime_divisors(m).last().unwrap_or(&1) };
        (p, m, p.pow(a) * mp)
    })
}

pub fn valuation_axioms() -> Result<(), String> {
    let s = local_setting().prop_flat_map(|(p, m, n)| (Just((p, m, n)), element_in(n), element_in(n)));
    run(s, |((p, m, n), a, b)| {
        let ctx = LocalContext::shared(p, m).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let v = |x: &Cyclotomic| ctx.normalized_valuation(x).map_err(|e| TestCaseError::fail(e.to_string()));
        check(v(&Cyclotomic::from_integer(p))? == Rational64::from_integer(1), || "v(p) = 1".into())?;
        check(v(&Cyclotomic::one())? == Rational64::zero(), || "v(1) = 0".into())?;
        if a.is_zero() || b.is_zero() {
            return Ok(());
        }
        check(v(&a.mul(&b))? == v(&a)? + v(&b)?, || format!("v(ab) at {a}, {b}"))?;
        let s = a.add(&b);
        if !s.is_zero() {
            check(v(&s)? >= v(&a)?.min(v(&b)?), || format!("v(a+b) >= min at {a}, {b}"))?;
        }
        let norm_route = ctx.p_valuation(&a).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let local_route = ctx.local_valuation(&a).map_err(|e| TestCaseError::fail(e.to_string()))?;
        check(norm_route == local_route, || format!("valuation routes disagree at {a}"))?;
        // Automorphisms fixing the p'-roots of unity fix the prime ideal.
        let mp = numtheory::p_prime_part(n, p);
        for k in numtheory::units(n).into_iter().filter(|k| k % mp == 1 % mp) {
            check(v(&a.galois_mod(k, n))? == v(&a)?, || format!("sigma_{k} moves the valuation of {a}"))?;
        }
        Ok(())
    })
}

pub fn reduction_homomorphism() -> Result<(), String> {
    let s = local_setting().prop_flat_map(|(p, m, n)| (Just((p, m, n)), integral_in(n), integral_in(n), 1i64..=5));
    run(s, |((p, m, _), a, b, k)| {
        let ctx = LocalContext::shared(p, m).map_err(|e| TestCaseError::fail(e.to_string()))?;
        let r = |x: &Cyclotomic| ctx.reduce_mod_prime(x).map_err(|e| TestCaseError::fail(e.to_string()));
        check(r(&a.add(&b))? == r(&a)?.add(&r(&b)?), || "additive".into())?;
        check(r(&a.mul(&b))? == r(&a)?.mul(&r(&b)?), || "multiplicative".into())?;
        check(r(&Cyclotomic::one())?.is_one(), || "unital".into())?;
        check(r(&Cyclotomic::from_integer(p))?.is_zero(), || "p maps to 0".into())?;
        // A p-integral quotient with p in the denominator.
        let den = k as u64 % p + 1;
        if den % p != 0 && !b.is_zero() {
            let q = a.mul(&Cyclotomic::from_ratio(1, den as i64));
            check(r(&q)?.mul(&r(&Cyclotomic::from_integer(den))?) == r(&a)?, || "division by a unit".into())?;
        }
        Ok(())
    })
}

type Sweep = Result<(), String>;

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Sweep {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

/// Row and column orthogonality with class sizes, checked directly.
pub fn orthogonality(tables: &[(String, CharacterTable)]) -> Sweep {
    for (name, t) in tables {
        let k = t.num_classes();
        let order = Cyclotomic::from_integer(t.order());
        for i in 0..k {
            for j in 0..k {
                let row: Cyclotomic = (0..k)
                    .map(|c| t.value(i, c).mul(&t.value(j, c).conj()).mul(&Cyclotomic::from_integer(t.class(c).size)))
                    .sum();
                let want = if i == j { order.clone() } else { Cyclotomic::zero() };
                ensure(row == want, || format!("{name}: rows {i}, {j}"))?;
                let col: Cyclotomic = (0..k).map(|chi| t.value(chi, i).mul(&t.value(chi, j).conj())).sum();
                let want = if i == j { Cyclotomic::from_integer(t.class(i).centralizer) } else { Cyclotomic::zero() };
                ensure(col == want, || format!("{name}: columns {i}, {j}"))?;
            }
        }
    }
    Ok(())
}

pub fn brauer_permutation(tables: &[(String, CharacterTable)]) -> Sweep {
    for (name, t) in tables {
        for p in numtheory::prime_divisors(t.order()).into_iter().filter(|&p| p != 2) {
            ensure(validate_brauer_permutation_lemma(t, p).map_err(|e| e.to_string())?, || format!("{name} p={p}"))?;
        }
    }
    Ok(())
}

/// Gram matrices, divisors and bookkeeping over every section of every block.
pub fn section_sweep(tables: &[(String, CharacterTable)]) -> Sweep {
    for (name, t) in tables {
        for p in numtheory::prime_divisors(t.order()) {
            let dist = BlockDistribution::new(t, p).map_err(|e| e.to_string())?;
            let sections = p_sections(t, p);
            let mut per_section = vec![0usize; sections.representatives.len()];
            for b in &dist.blocks {
                let ctx = format!("{name} p={p} block {}", b.index);
                let analyses = analyze_sections(t, &dist, b).map_err(|e| e.to_string())?;
                let mut total = 0;
                for (s, a) in analyses.iter().enumerate() {
                    for i in 0..a.gram.len() {
                        for j in 0..a.gram.len() {
                            ensure(a.gram[i][j] == a.gram[j][i].conj(), || format!("{ctx}: Gram not hermitian"))?;
                        }
                    }
                    ensure(a.divisors.iter().all(|&e| e <= b.defect), || format!("{ctx}: divisor exceeds |D|"))?;
                    if a.representative == 0 {
                        ensure(a.major_count == 1, || format!("{ctx}: identity section multiplicity {}", a.major_count))?;
                    }
                    if a.major_count > 0 {
                        ensure(verify_section_field_index(t, b, a), || {
                            format!("{ctx}: field index at class {}", a.representative)
                        })?;
                    }
                    total += a.divisors.len();
                    per_section[s] += a.divisors.len();
                }
                ensure(total == b.k(), || format!("{ctx}: {total} divisors for k(B) = {}", b.k()))?;
            }
            for (s, members) in sections.members.iter().enumerate() {
                ensure(per_section[s] == members.len(), || format!("{name} p={p}: section {s} rank"))?;
            }
            let ks: usize = dist.blocks.iter().map(|b| b.k()).sum();
            ensure(per_section.iter().sum::<usize>() == ks, || format!("{name} p={p}: total rank"))?;
        }
    }
    Ok(())
}

/// Block partitions and divisor multisets agree for every prime ideal over p.
pub fn factor_choice(tables: &[(String, CharacterTable)]) -> Sweep {
    for (name, t) in tables {
        for p in numtheory::prime_divisors(t.order()) {
            let m = numtheory::p_prime_part(t.exponent(), p);
            let sections = p_sections(t, p);
            let mut first: Option<Vec<_>> = None;
            for ctx in LocalContext::all(p, m).map_err(|e| e.to_string())? {
                let ctx = Arc::new(ctx);
                let dist = BlockDistribution::with_context(t, ctx.clone()).map_err(|e| e.to_string())?;
                let mut summary = Vec::new();
                for b in &dist.blocks {
                    let divs: Vec<_> = analyze_sections_with(t, b, &sections, &ctx)
                        .map_err(|e| e.to_string())?
                        .into_iter()
                        .map(|a| a.divisors)
                        .collect();
                    let whole = block_elementary_divisors(t, b, &ctx).map_err(|e| e.to_string())?;
                    summary.push((b.characters.clone(), divs, whole));
                }
                match &first {
                    None => first = Some(summary),
                    Some(f) => ensure(*f == summary, || format!("{name} p={p}: factor choice changes the result"))?,
                }
            }
        }
    }
    Ok(())
}
