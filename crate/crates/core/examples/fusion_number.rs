//! Fusion numbers from the section Gram matrices. The double cover of S3xS3
//! has a non-principal 3-block with gamma = 10/9.

use blockscope::blocks::BlockDistribution;
use blockscope::chartable::load_table;
use blockscope::sections::fusion_number;

fn main() -> blockscope::Result<()> {
    let t = load_table(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables/dc_s3xs3.ctj.json"))?;
    let dist = BlockDistribution::new(&t, 3)?;
    for b in &dist.blocks {
        let f = fusion_number(&t, &dist, b)?;
        println!(
            "block {} (defect {}, {} Galois conjugates): gamma = {}",
            b.index,
            b.defect,
            f.galois_block_count,
            f.gamma_string()
        );
    }
    Ok(())
}
