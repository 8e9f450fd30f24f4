//! Scan a directory of tables and list blocks where gamma = 1 and the
//! degree conditions disagree.

use std::path::PathBuf;

use blockscope::report::{scan_directory, PrimeSelection};

fn main() -> blockscope::Result<()> {
    let dir = std::env::args()
        .nth(1)
        .map(PathBuf::from)
        .unwrap_or_else(|| PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables")));
    let report = scan_directory(&dir, &PrimeSelection::All)?;
    println!("{} tables, {} blocks, {} with gamma < 1", report.files.len(), report.rows.len(), report.anomaly_count());
    for r in report.rows.iter().filter(|r| r.degree_mismatch()) {
        println!(
            "  {} p = {} block {}: gamma {}, all degrees equal {}, height-zero degrees equal {}",
            r.table, r.prime, r.block, r.gamma, r.nilpotency.all_degrees_equal, r.nilpotency.height_zero_degrees_equal
        );
    }
    for w in &report.warnings {
        eprintln!("warning: {w}");
    }
    Ok(())
}
