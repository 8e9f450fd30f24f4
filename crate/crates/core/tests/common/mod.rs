#![allow(dead_code)]
pub mod props;

use std::path::PathBuf;

use blockscope::chartable::{load_table, CharacterTable};
use serde_json::Value;

pub fn fixtures() -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("fixtures")
}

pub fn table(file: &str) -> CharacterTable {
    load_table(fixtures().join("tables").join(format!("{file}.ctj.json"))).unwrap()
}

/// Every fixture table, by file stem, sorted.
pub fn all_tables() -> Vec<(String, CharacterTable)> {
    let mut names: Vec<String> = std::fs::read_dir(fixtures().join("tables"))
        .unwrap()
        .map(|e| e.unwrap().file_name().into_string().unwrap())
        .filter_map(|n| n.strip_suffix(".ctj.json").map(str::to_owned))
        .collect();
    names.sort();
    names.into_iter().map(|n| { let t = table(&n); (n, t) }).collect()
}

pub fn reference(file: &str, p: u64) -> Value {
    let path = fixtures().join("reference").join(format!("{file}.p{p}.ref.json"));
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

pub fn ints(v: &Value) -> Vec<u64> {
    v.as_array().unwrap().iter().map(|x| x.as_u64().unwrap()).collect()
}
