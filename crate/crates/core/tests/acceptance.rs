//! One PASS/FAIL line per acceptance criterion. Reports only: the exit status
//! stays 0 so that later test targets still run.

mod common;

use std::time::{Duration, Instant};

use blockscope::blocks::{block_splitting, BlockDistribution};
use blockscope::chartable::CharacterTable;
use blockscope::invariants::{
    analyze_block, cyclic_defect_test, dd4_test, dominated_pairs, single_block_gamma, AnalysisOptions,
    CentralQuotient, TameType,
};
use blockscope::numtheory;
use blockscope::report::{scan_directory, PrimeSelection};
use blockscope::sections::fusion_number;
use common::props;
use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::One;

const FIXTURE_BUDGET: Duration = Duration::from_secs(5);
const PROPERTY_BUDGET: Duration = Duration::from_secs(60);
const SCAN_BUDGET: Duration = Duration::from_secs(60);

type Outcome = Result<String, String>;

fn fail<T>(msg: impl Into<String>) -> Result<T, String> {
    Err(msg.into())
}

fn gamma(t: &CharacterTable, p: u64, chi: usize) -> Result<BigRational, String> {
    let dist = BlockDistribution::new(t, p).map_err(|e| e.to_string())?;
    fusion_number(t, &dist, dist.block_containing(chi)).map(|f| f.gamma).map_err(|e| e.to_string())
}

fn ratio(n: i64, d: i64) -> BigRational {
    BigRational::new(BigInt::from(n), BigInt::from(d))
}

fn criterion_1() -> Outcome {
    let names = ["s3", "s4", "a4", "a5", "c4", "c8", "c9", "c3xc3", "q8", "sl23", "dc_s3xs3"];
    let tables: Vec<(&str, CharacterTable)> = names.iter().map(|&n| (n, common::table(n))).collect();
    let start = Instant::now();
    let mut checked = 0;
    for (name, t) in &tables {
        for p in numtheory::prime_divisors(t.order()) {
            let dist = BlockDistribution::new(t, p).map_err(|e| e.to_string())?;
            let mut ours: Vec<(Vec<u64>, u64, Vec<u64>)> = dist
                .blocks
                .iter()
                .map(|b| {
                    (
                        b.characters.iter().map(|&c| c as u64).collect(),
                        b.defect as u64,
                        b.heights.iter().map(|&h| h as u64).collect(),
                    )
                })
                .collect();
            let mut theirs: Vec<(Vec<u64>, u64, Vec<u64>)> = common::reference(name, p)["blocks"]
                .as_array()
                .unwrap()
                .iter()
                .map(|b| (common::ints(&b["characters"]), b["defect"].as_u64().unwrap(), common::ints(&b["heights"])))
                .collect();
            ours.sort();
            theirs.sort();
            if ours != theirs {
                return fail(format!("{name} p={p}: {ours:?} vs {theirs:?}"));
            }
            checked += 1;
        }
    }
    let elapsed = start.elapsed();
    if elapsed >= FIXTURE_BUDGET {
        return fail(format!("took {elapsed:?}, budget {FIXTURE_BUDGET:?}"));
    }
    Ok(format!("{checked} (table, prime) pairs exact in {elapsed:.2?}"))
}

fn criterion_2() -> Outcome {
    let g = gamma(&common::table("s3"), 3, 0)?;
    if g != ratio(5, 3) {
        return fail(format!("S3 p=3: {g}"));
    }
    let dc = common::table("dc_s3xs3");
    let dist = BlockDistribution::new(&dc, 3).map_err(|e| e.to_string())?;
    let principal = dist.principal(&dc).index;
    let non: Vec<BigRational> = dist
        .blocks
        .iter()
        .filter(|b| b.index != principal)
        .map(|b| fusion_number(&dc, &dist, b).map(|f| f.gamma).map_err(|e| e.to_string()))
        .collect::<Result<_, _>>()?;
    if non != vec![ratio(10, 9)] {
        return fail(format!("double cover of S3xS3 p=3 non-principal: {non:?}"));
    }
    let (mut pgroup_blocks, mut unique) = (0, 0);
    for (name, t) in common::all_tables() {
        let primes = numtheory::prime_divisors(t.order());
        if primes.len() == 1 {
            let p = primes[0];
            if gamma(&t, p, 0)? != BigRational::one() {
                return fail(format!("p-group {name}: gamma != 1"));
            }
            pgroup_blocks += 1;
        }
        for p in primes {
            let dist = BlockDistribution::new(&t, p).map_err(|e| e.to_string())?;
            if dist.blocks.len() == 1 {
                let g = fusion_number(&t, &dist, &dist.blocks[0]).map_err(|e| e.to_string())?.gamma;
                if g != single_block_gamma(&t, p) {
                    return fail(format!("{name} p={p}: {g} vs class sum {}", single_block_gamma(&t, p)));
                }
                unique += 1;
            }
        }
    }
    Ok(format!("S3 5/3, 10/9, {pgroup_blocks} p-group blocks at 1, {unique} single-block tables match the class sum"))
}

fn criterion_3() -> Outcome {
    let expect = [
        ("c9", 3, true),
        ("s3", 3, true),
        ("c4", 2, true),
        ("a5", 5, true),
        ("c3xc3", 3, false),
        ("a4", 2, false),
        ("s4", 2, false),
    ];
    for (name, p, want) in expect {
        let t = common::table(name);
        let dist = BlockDistribution::new(&t, p).map_err(|e| e.to_string())?;
        let got = cyclic_defect_test(&t, dist.principal(&t)).map_err(|e| e.to_string())?;
        if got != want {
            return fail(format!("{name} p={p}: cyclic = {got}"));
        }
    }
    Ok("7 verdicts exact".into())
}

struct Principal {
    name: String,
    p: u64,
    report: blockscope::invariants::BlockReport,
    sylow: serde_json::Value,
}

fn principals() -> Result<Vec<Principal>, String> {
    let mut out = Vec::new();
    for (name, t) in common::all_tables() {
        for p in numtheory::prime_divisors(t.order()) {
            let sylow = common::reference(&name, p)["sylow"].clone();
            let dist = BlockDistribution::new(&t, p).map_err(|e| e.to_string())?;
            let opts = AnalysisOptions { assert_abelian: sylow["abelian"].as_bool().unwrap() };
            let report = analyze_block(&t, &dist, dist.principal(&t), opts).map_err(|e| e.to_string())?;
            out.push(Principal { name: name.clone(), p, report, sylow });
        }
    }
    Ok(out)
}

fn criterion_4(ps: &[Principal]) -> Outcome {
    for x in ps {
        let ours = x.p.pow(x.report.exp_center);
        let theirs = x.sylow["centerExponent"].as_u64().unwrap();
        if ours != theirs {
            return fail(format!("{} p={}: exp(Z(D)) {ours} vs {theirs}", x.name, x.p));
        }
    }
    Ok(format!("{} principal blocks", ps.len()))
}

fn criterion_5(ps: &[Principal]) -> Outcome {
    let mut n = 0;
    let mut seen = Vec::new();
    for x in ps.iter().filter(|x| x.sylow["abelian"] == true) {
        let exp = x.report.abelian.exponent.map(|e| x.p.pow(e));
        if exp != x.sylow["exponent"].as_u64() {
            return fail(format!("{} p={}: exponent {exp:?}", x.name, x.p));
        }
        if x.report.defect <= 5 {
            let want = common::ints(&x.sylow["abelianInvariants"]);
            if x.report.abelian.iso_type.as_deref() != Some(want.as_slice()) {
                return fail(format!("{} p={}: type {:?} vs {want:?}", x.name, x.p, x.report.abelian.iso_type));
            }
            seen.push(x.name.clone());
        }
        n += 1;
    }
    for required in ["c9xc3", "c4xc2xc2"] {
        if !seen.iter().any(|s| s == required) {
            return fail(format!("{required} not covered"));
        }
    }
    Ok(format!("{n} abelian principal blocks, exponents and types exact"))
}

fn criterion_6() -> Outcome {
    for (name, want) in [("s4", true), ("sl23", true), ("gl23", true), ("c8", false), ("c2xc2xc2", false)] {
        let t = common::table(name);
        let dist = BlockDistribution::new(&t, 2).map_err(|e| e.to_string())?;
        let got = dd4_test(&t, dist.principal(&t)).map_err(|e| e.to_string())?;
        if got != want {
            return fail(format!("{name}: dd4 = {got}"));
        }
    }
    for (name, want) in
        [("a4", TameType::KleinFour), ("s4", TameType::DihedralSemidihedralQuaternion), ("c8", TameType::None)]
    {
        let t = common::table(name);
        let dist = BlockDistribution::new(&t, 2).map_err(|e| e.to_string())?;
        let r = analyze_block(&t, &dist, dist.principal(&t), AnalysisOptions::default()).map_err(|e| e.to_string())?;
        if r.tame != want {
            return fail(format!("{name}: tame {}", r.tame));
        }
    }
    Ok("dd4 on S4, SL(2,3), GL(2,3), C8, C2^3; tame on A4, S4, C8".into())
}

fn criterion_7() -> Outcome {
    let tables = common::all_tables();
    let start = Instant::now();
    let suites: Vec<(&str, Box<dyn Fn() -> Result<(), String>>)> = vec![
        ("field axioms", Box::new(props::field_axioms)),
        ("Galois laws", Box::new(props::galois_laws)),
        ("valuation axioms", Box::new(props::valuation_axioms)),
        ("reduction homomorphism", Box::new(props::reduction_homomorphism)),
        ("orthogonality", Box::new(|| props::orthogonality(&tables))),
        ("Brauer permutation lemma", Box::new(|| props::brauer_permutation(&tables))),
        ("section Gram sweep", Box::new(|| props::section_sweep(&tables))),
        ("factor choice", Box::new(|| props::factor_choice(&tables))),
    ];
    for (name, suite) in &suites {
        suite().map_err(|e| format!("{name}: {e}"))?;
    }
    let elapsed = start.elapsed();
    if elapsed >= PROPERTY_BUDGET {
        return fail(format!("took {elapsed:?}, budget {PROPERTY_BUDGET:?}"));
    }
    Ok(format!("{} suites, {} cases per randomized suite, {elapsed:.2?}", suites.len(), props::CASES))
}

fn criterion_8() -> Outcome {
    let mut n = 0;
    for (name, t) in common::all_tables() {
        for p in numtheory::prime_divisors(t.order()) {
            let dist = BlockDistribution::new(&t, p).map_err(|e| e.to_string())?;
            let split = block_splitting(&t, &dist).map_err(|e| format!("{name} p={p}: {e}"))?;
            let gp = BigRational::from_integer(BigInt::from(numtheory::p_part(t.order(), p)));
            for (b, classes) in dist.blocks.iter().zip(&split) {
                let lhs: u64 = classes.iter().map(|&k| numtheory::p_part(t.class(k).size, p)).sum();
                let g = fusion_number(&t, &dist, b).map_err(|e| e.to_string())?.gamma;
                if BigRational::from_integer(BigInt::from(lhs)) != &gp * &g {
                    return fail(format!("{name} p={p} block {}: {lhs} vs |G|_p * {g}", b.index));
                }
                n += 1;
            }
        }
    }
    Ok(format!("{n} blocks, every splitting found"))
}

fn criterion_9() -> Outcome {
    let mut pairs = Vec::new();
    for name in ["q8", "sl23"] {
        let t = common::table(name);
        let cq = CentralQuotient::from_table(&t).map_err(|e| e.to_string())?.ok_or(format!("{name}: no metadata"))?;
        let q = common::table(cq.file.trim_end_matches(".ctj.json"));
        for d in dominated_pairs(&t, &q, &cq).map_err(|e| e.to_string())? {
            if d.gamma != d.quotient_gamma {
                return fail(format!("{name} block {}: {} vs {}", d.block, d.gamma, d.quotient_gamma));
            }
            pairs.push(format!("{name}/{}: {}", cq.file.trim_end_matches(".ctj.json"), d.gamma));
        }
    }
    Ok(pairs.join(", "))
}

fn criterion_10() -> Outcome {
    let start = Instant::now();
    let report = scan_directory(&common::fixtures().join("tables"), &PrimeSelection::All).map_err(|e| e.to_string())?;
    let elapsed = start.elapsed();
    let below = report.anomaly_count();
    let mismatches: Vec<String> = report
        .rows
        .iter()
        .filter(|r| r.degree_mismatch())
        .map(|r| format!("{} p={} block {} (gamma {})", r.table, r.prime, r.block, r.gamma))
        .collect();
    let height_zero = report
        .rows
        .iter()
        .filter(|r| r.nilpotency.gamma_equals_one != r.nilpotency.height_zero_degrees_equal)
        .count();
    println!(
        "  info: {} rows; gamma = 1 vs height-zero degrees equal disagrees on {height_zero} rows",
        report.rows.len()
    );
    if below > 0 {
        return fail(format!("{below} rows with gamma < 1"));
    }
    if elapsed >= SCAN_BUDGET {
        return fail(format!("scan took {elapsed:?}, budget {SCAN_BUDGET:?}"));
    }
    if !mismatches.is_empty() {
        return fail(format!(
            "zero gamma < 1 rows in {elapsed:.2?}, but gamma = 1 also on blocks with unequal degrees: {}",
            mismatches.join("; ")
        ));
    }
    Ok(format!("{} rows, zero gamma < 1, in {elapsed:.2?}", report.rows.len()))
}

fn main() {
    // Only `cargo test` runs this; ignore libtest flags such as `--quiet`.
    if std::env::args().any(|a| a == "--list") {
        return;
    }
    let principal = principals();
    let with_principals = |f: fn(&[Principal]) -> Outcome| match &principal {
        Ok(ps) => f(ps),
        Err(e) => Err(e.clone()),
    };
    let results: Vec<(u32, &str, Outcome)> = vec![
        (1, "fixture exactness", criterion_1()),
        (2, "fusion numbers", criterion_2()),
        (3, "cyclic defect verdicts", criterion_3()),
        (4, "exp(Z(D)) on principal blocks", with_principals(criterion_4)),
        (5, "abelian exponent and type", with_principals(criterion_5)),
        (6, "dd4 and tame type", criterion_6()),
        (7, "property suites", criterion_7()),
        (8, "splitting cross-check", criterion_8()),
        (9, "reduction invariance", criterion_9()),
        (10, "scan surveillance", criterion_10()),
    ];
    let mut failed = 0;
    for (n, what, r) in &results {
        match r {
            Ok(detail) => println!("criterion {n:>2}: PASS  {what}: {detail}"),
            Err(detail) => {
                failed += 1;
                println!("criterion {n:>2}: FAIL  {what}: {detail}");
            }
        }
    }
    println!("acceptance: {} of {} criteria pass", results.len() - failed, results.len());
}
