//! The CTJ file format: JSON with character values written as integers,
//! `[num, den]` pairs or `{"n": n, "coeffs": [[e, num, den], ...]}` sums of
//! powers of `z_n`.

use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::Zero;
use serde_json::Value;

use super::model::{CharacterTable, ClassInfo};
use crate::cyclotomic::Cyclotomic;
use crate::error::{Error, Result};

fn parse_err<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Parse(msg.into()))
}

fn get<'a>(obj: &'a Value, key: &str, path: &str) -> Result<&'a Value> {
    obj.get(key).ok_or_else(|| Error::Parse(format!("{path}: missing \"{key}\"")))
}

fn as_u64(v: &Value, path: &str) -> Result<u64> {
    v.as_u64().ok_or_else(|| Error::Parse(format!("{path}: expected a nonnegative integer")))
}

fn as_int(v: &Value, path: &str) -> Result<BigInt> {
    if let Some(x) = v.as_i64() {
        return Ok(x.into());
    }
    if let Some(x) = v.as_u64() {
        return Ok(x.into());
    }
    parse_err(format!("{path}: expected an integer"))
}

fn as_array<'a>(v: &'a Value, path: &str) -> Result<&'a Vec<Value>> {
    v.as_array().ok_or_else(|| Error::Parse(format!("{path}: expected an array")))
}

fn ratio(num: BigInt, den: BigInt, path: &str) -> Result<BigRational> {
    if den.is_zero() {
        return parse_err(format!("{path}: zero denominator"));
    }
    Ok(BigRational::new(num, den))
}

fn parse_value(v: &Value, path: &str) -> Result<Cyclotomic> {
    match v {
        Value::Number(_) => Ok(Cyclotomic::from_integer(as_int(v, path)?)),
        Value::Array(pair) => {
            if pair.len() != 2 {
                return parse_err(format!("{path}: rational must be [num, den]"));
            }
            let q = ratio(as_int(&pair[0], path)?, as_int(&pair[1], path)?, path)?;
            Ok(Cyclotomic::from_rational(q))
        }
        Value::Object(_) => {
            let n = as_u64(get(v, "n", path)?, &format!("{path}.n"))?;
            if n == 0 {
                return parse_err(format!("{path}.n: must be positive"));
            }
            let mut terms = Vec::new();
            for (t, term) in as_array(get(v, "coeffs", path)?, path)?.iter().enumerate() {
                let tp = format!("{path}.coeffs[{t}]");
                let term = as_array(term, &tp)?;
                if term.len() != 3 {
                    return parse_err(format!("{tp}: expected [exponent, num, den]"));
                }
                let e = as_int(&term[0], &tp)?;
                let e = i64::try_from(e).map_err(|_| Error::Parse(format!("{tp}: exponent out of range")))?;
                terms.push((e, ratio(as_int(&term[1], &tp)?, as_int(&term[2], &tp)?, &tp)?));
            }
            Ok(Cyclotomic::from_terms(n, &terms))
        }
        _ => parse_err(format!("{path}: expected a character value")),
    }
}

/// Parses and validates a CTJ document.
pub fn parse_table(text: &str) -> Result<CharacterTable> {
    let doc: Value = serde_json::from_str(text).map_err(|e| Error::Parse(e.to_string()))?;
    let name = get(&doc, "name", "table")?
        .as_str()
        .ok_or_else(|| Error::Parse("name: expected a string".into()))?
        .to_owned();
    let order = as_u64(get(&doc, "order", "table")?, "order")?;
    let mut classes = Vec::new();
    for (i, c) in as_array(get(&doc, "classes", "table")?, "classes")?.iter().enumerate() {
        let path = format!("classes[{i}]");
        let field = |key: &str| -> Result<u64> { as_u64(get(c, key, &path)?, &format!("{path}.{key}")) };
        classes.push(ClassInfo {
            name: get(c, "name", &path)?
                .as_str()
                .ok_or_else(|| Error::Parse(format!("{path}.name: expected a string")))?
                .to_owned(),
            size: field("size")?,
            centralizer: field("centralizer")?,
            element_order: field("elementOrder")?,
            inverse: field("inverse")? as usize,
        });
    }
    let maps = get(&doc, "powerMaps", "table")?
        .as_object()
        .ok_or_else(|| Error::Parse("powerMaps: expected an object".into()))?;
    let mut power_maps = BTreeMap::new();
    for (key, map) in maps {
        let q: u64 = key.parse().map_err(|_| Error::Parse(format!("powerMaps: key \"{key}\" is not an integer")))?;
        let path = format!("powerMaps[{key}]");
        let map = as_array(map, &path)?
            .iter()
            .enumerate()
            .map(|(i, x)| as_u64(x, &format!("{path}[{i}]")).map(|x| x as usize))
            .collect::<Result<Vec<_>>>()?;
        power_maps.insert(q, map);
    }
    let mut irreducibles = Vec::new();
    for (chi, row) in as_array(get(&doc, "irreducibles", "table")?, "irreducibles")?.iter().enumerate() {
        let path = format!("irreducibles[{chi}]");
        let row = as_array(row, &path)?
            .iter()
            .enumerate()
            .map(|(j, v)| parse_value(v, &format!("{path}[{j}]")))
            .collect::<Result<Vec<_>>>()?;
        irreducibles.push(row);
    }
    let meta = doc.get("meta").cloned();
    CharacterTable::new(name, order, classes, power_maps, irreducibles, meta)
}

/// Reads and parses a CTJ file.
pub fn load_table(path: impl AsRef<Path>) -> Result<CharacterTable> {
    let path = path.as_ref();
    let text = std::fs::read_to_string(path)
        .map_err(|e| std::io::Error::new(e.kind(), format!("{}: {e}", path.display())))?;
    parse_table(&text)
}

fn rational_json(q: &BigRational) -> String {
    format!("[{}, {}]", q.numer(), q.denom())
}

/// The CTJ encoding of one value: the shortest of the three forms.
pub fn encode_value(v: &Cyclotomic) -> String {
    if let Some(n) = v.to_integer() {
        return n.to_string();
    }
    if let Some(q) = v.to_rational() {
        return rational_json(&q);
    }
    let terms: Vec<String> = v
        .coeffs()
        .iter()
        .enumerate()
        .filter(|(_, c)| !c.is_zero())
        .map(|(e, c)| format!("[{e}, {}, {}]", c.numer(), c.denom()))
        .collect();
    format!("{{\"n\": {}, \"coeffs\": [{}]}}", v.conductor(), terms.join(", "))
}

fn json_string(s: &str) -> String {
    serde_json::to_string(s).expect("strings serialize")
}

/// Writes a table in CTJ form; `parse_table` of the result gives back an
/// identical table.
pub fn serialize_table(t: &CharacterTable) -> String {
    let mut out = String::new();
    let _ = writeln!(out, "{{");
    let _ = writeln!(out, "  \"name\": {},", json_string(t.name()));
    let _ = writeln!(out, "  \"order\": {},", t.order());
    let _ = writeln!(out, "  \"classes\": [");
    let classes: Vec<String> = t
        .classes()
        .iter()
        .map(|c| {
            format!(
                "    {{\"name\": {}, \"size\": {}, \"centralizer\": {}, \"elementOrder\": {}, \"inverse\": {}}}",
                json_string(&c.name),
                c.size,
                c.centralizer,
                c.element_order,
                c.inverse
            )
        })
        .collect();
    let _ = writeln!(out, "{}", classes.join(",\n"));
    let _ = writeln!(out, "  ],");
    let _ = writeln!(out, "  \"powerMaps\": {{");
    let maps: Vec<String> = t
        .power_maps()
        .iter()
        .map(|(q, map)| {
            let entries: Vec<String> = map.iter().map(usize::to_string).collect();
            format!("    \"{q}\": [{}]", entries.join(", "))
        })
        .collect();
    let _ = writeln!(out, "{}", maps.join(",\n"));
    let _ = writeln!(out, "  }},");
    let _ = writeln!(out, "  \"irreducibles\": [");
    let rows: Vec<String> = t
        .irreducibles()
        .iter()
        .map(|row| {
            let vals: Vec<String> = row.iter().map(encode_value).collect();
            format!("    [{}]", vals.join(", "))
        })
        .collect();
    let _ = writeln!(out, "{}", rows.join(",\n"));
    match t.meta() {
        Some(meta) => {
            let _ = writeln!(out, "  ],");
            let _ = writeln!(out, "  \"meta\": {}", serde_json::to_string(meta).expect("json value"));
        }
        None => {
            let _ = writeln!(out, "  ]");
        }
    }
    out.push_str("}\n");
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    const C2: &str = r#"{"name": "C2", "order": 2,
        "classes": [{"name": "1a", "size": 1, "centralizer": 2, "elementOrder": 1, "inverse": 0},
                    {"name": "2a", "size": 1, "centralizer": 2, "elementOrder": 2, "inverse": 1}],
        "powerMaps": {"2": [0, 0]},
        "irreducibles": [[1, 1], [1, -1]]}"#;

    #[test]
    fn parses_c2() {
        let t = parse_table(C2).unwrap();
        assert_eq!(t.num_classes(), 2);
        assert_eq!(t.degrees(), &[1, 1]);
        assert_eq!(t.value(1, 1), &Cyclotomic::from_integer(-1));
        let again = parse_table(&serialize_table(&t)).unwrap();
        assert_eq!(again.irreducibles(), t.irreducibles());
    }

    #[test]
    fn value_forms() {
        let v: Value = serde_json::from_str(r#"{"n": 6, "coeffs": [[1, 1, 1]]}"#).unwrap();
        let z6 = parse_value(&v, "x").unwrap();
        assert_eq!(z6, Cyclotomic::root_of_unity(6, 1));
        assert_eq!(encode_value(&z6), r#"{"n": 3, "coeffs": [[0, 1, 1], [1, 1, 1]]}"#);
        assert_eq!(encode_value(&Cyclotomic::from_ratio(-1, 2)), "[-1, 2]");
        let bad: Value = serde_json::from_str("[1, 0]").unwrap();
        assert!(matches!(parse_value(&bad, "x"), Err(Error::Parse(_))));
    }

    #[test]
    fn rejects_broken_tables() {
        assert!(matches!(parse_table("{"), Err(Error::Parse(_))));
        let missing = C2.replace(r#""powerMaps": {"2": [0, 0]}"#, r#""powerMaps": {}"#);
        match parse_table(&missing) {
            Err(Error::Validation(msg)) => assert!(msg.contains("powerMaps incomplete")),
            other => panic!("{other:?}"),
        }
        let wrong = C2.replace("[1, -1]]", "[1, 1]]");
        assert!(matches!(parse_table(&wrong), Err(Error::Validation(_))));
    }
}
