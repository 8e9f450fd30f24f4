//! Assign classes to blocks so that the p-parts of the class sizes in each
//! block sum to |G|_p * gamma(B).

use blockscope::blocks::{block_splitting, BlockDistribution};
use blockscope::chartable::load_table;
use blockscope::numtheory::p_part;
use blockscope::sections::fusion_number;

fn main() -> blockscope::Result<()> {
    let t = load_table(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables/dc_s3xs3.ctj.json"))?;
    let p = 3;
    let dist = BlockDistribution::new(&t, p)?;
    let split = block_splitting(&t, &dist)?;
    for (b, classes) in dist.blocks.iter().zip(&split) {
        let names: Vec<&str> = classes.iter().map(|&k| t.class(k).name.as_str()).collect();
        let total: u64 = classes.iter().map(|&k| p_part(t.class(k).size, p)).sum();
        let gamma = fusion_number(&t, &dist, b)?.gamma;
        println!("block {}: classes [{}], sum {total} = {} * {gamma}", b.index, names.join(", "), p_part(t.order(), p));
    }
    Ok(())
}
