//! Exponent and isomorphism type of an abelian defect group.

use blockscope::blocks::BlockDistribution;
use blockscope::chartable::load_table;
use blockscope::invariants::{analyze_block, AnalysisOptions};

fn main() -> blockscope::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables");
    let opts = AnalysisOptions { assert_abelian: true };
    for (name, p) in [("c9xc3", 3), ("c4xc2xc2", 2), ("c4xc4", 2), ("a4", 2), ("a5", 2)] {
        let t = load_table(format!("{dir}/{name}.ctj.json"))?;
        let dist = BlockDistribution::new(&t, p)?;
        let r = analyze_block(&t, &dist, dist.principal(&t), opts)?;
        println!(
            "{:<10} p = {p}: |D| = {}, exp Z(D) = {}, exponent {:?}, type {:?}",
            t.name(),
            r.defect_group_order(),
            p.pow(r.exp_center),
            r.abelian.exponent.map(|e| p.pow(e)),
            r.abelian.iso_type
        );
    }
    Ok(())
}
