//! The full block report as markdown, as `blockscope analyze --format md` prints it.

use blockscope::chartable::load_table;
use blockscope::invariants::AnalysisOptions;
use blockscope::report::analyze_table;

fn main() -> blockscope::Result<()> {
    let t = load_table(concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables/gl23.ctj.json"))?;
    let report = analyze_table(&t, 2, AnalysisOptions::default(), None)?;
    print!("{}", report.to_markdown(false));
    Ok(())
}
