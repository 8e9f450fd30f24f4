//! p-blocks of A5 at every prime: defects, heights, k(B), l(B).

use blockscope::blocks::{defect_class_support, l_of_block, BlockDistribution};
use blockscope::chartable::load_table;

fn main() -> blockscope::Result<()> {
    let t = load_table(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables/a5.ctj.json"))?;
    for p in [2, 3, 5] {
        let dist = BlockDistribution::new(&t, p)?;
        println!("p = {p}");
        for b in &dist.blocks {
            let degrees: Vec<u64> = b.characters.iter().map(|&c| t.degree(c)).collect();
            println!(
                "  block {}: degrees {:?} defect {} heights {:?} k = {} l = {} defect classes {:?}",
                b.index,
                degrees,
                b.defect,
                b.heights,
                b.k(),
                l_of_block(&t, b),
                defect_class_support(&t, b)
            );
        }
    }
    Ok(())
}
