//! Blocks of G dominating blocks of G/Z have the same fusion number.

use blockscope::chartable::load_table;
use blockscope::invariants::{dominated_pairs, CentralQuotient};

fn main() -> blockscope::Result<()> {
    let dir = concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables");
    for name in ["q8", "sl23"] {
        let t = load_table(format!("{dir}/{name}.ctj.json"))?;
        let Some(cq) = CentralQuotient::from_table(&t)? else { continue };
        let q = load_table(format!("{dir}/{}", cq.file))?;
        for d in dominated_pairs(&t, &q, &cq)? {
            println!(
                "{} p = {}: block {} gamma {} / {} block {} gamma {}",
                t.name(),
                cq.prime,
                d.block,
                d.gamma,
                q.name(),
                d.quotient_block,
                d.quotient_gamma
            );
        }
    }
    Ok(())
}
