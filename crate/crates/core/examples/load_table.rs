//! Load a CTJ character table, validate it and print it.

use blockscope::chartable::load_table;
use blockscope::report::validate;

fn main() -> blockscope::Result<()> {
    let path = std::env::args()
        .nth(1)
        .unwrap_or_else(|| concat!(env!("CARGO_MANIFEST_DIR"), "/fixtures/tables/a5.ctj.json").to_string());
    let t = load_table(&path)?;
    let summary = validate(&t, false)?;
    println!("{}: |G| = {}, exponent {}, {} classes", t.name(), t.order(), t.exponent(), t.num_classes());
    let rows: Vec<Vec<String>> = t.irreducibles().iter().map(|r| r.iter().map(|v| v.to_string()).collect()).collect();
    let width = rows.iter().flatten().map(String::len).max().unwrap_or(1) + 2;
    let header: String = t.classes().iter().map(|c| format!("{:>width$}", c.name)).collect();
    println!("{header}");
    for row in &rows {
        println!("{}", row.iter().map(|v| format!("{v:>width$}")).collect::<String>());
    }
    println!("Brauer permutation lemma checked at {:?}", summary.brauer_permutation);
    Ok(())
}
