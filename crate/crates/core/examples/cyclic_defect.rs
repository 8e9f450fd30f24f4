//! Cyclicity of defect groups read off p-conjugacy orbit sizes.

use blockscope::blocks::BlockDistribution;
use blockscope::chartable::load_table;
use blockscope::invariants::cyclic_defect_test;

fn main() -> blockscope::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables");
    for (name, p) in [("c9", 3), ("c3xc3", 3), ("s3", 3), ("a4", 2), ("s4", 2), ("a5", 5)] {
        let t = load_table(format!("{dir}/{name}.ctj.json"))?;
        let dist = BlockDistribution::new(&t, p)?;
        let b = dist.principal(&t);
        println!("{:<10} p = {p}: defect {}, cyclic {}", t.name(), b.defect, cyclic_defect_test(&t, b)?);
    }
    Ok(())
}
