//! The dd4 test and tame classification of 2-blocks.

use blockscope::blocks::BlockDistribution;
use blockscope::chartable::load_table;
use blockscope::invariants::{analyze_block, AnalysisOptions};

fn main() -> blockscope::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables");
    for name in ["a4", "s4", "sl23", "gl23", "d8", "q8", "c8", "c2xc2xc2"] {
        let t = load_table(format!("{dir}/{name}.ctj.json"))?;
        let dist = BlockDistribution::new(&t, 2)?;
        let r = analyze_block(&t, &dist, dist.principal(&t), AnalysisOptions::default())?;
        let dd4 = r.dd4.map_or("-".to_string(), |x| x.to_string());
        println!("{:<10} defect {}: dd4 {dd4:<5} tame {}", t.name(), r.defect, r.tame);
    }
    Ok(())
}
