//! Bundled example instances.

use std::collections::BTreeMap;

use crate::document::{CocycleDoc, CocycleSpec, Document};
use crate::error::{Error, Result};

const EX51: &str = include_str!("../fixtures/ex5.1.json");
const EX52: &str = include_str!("../fixtures/ex5.2.json");
const EX53_TRIVIAL: &str = include_str!("../fixtures/ex5.3-trivial.json");

/// Names accepted by [`example`]; `ex5.3(t0,t1)` takes two integers.
pub const NAMES: [&str; 4] = ["ex5.1", "ex5.2", "ex5.3-trivial", "ex5.3(t0,t1)"];

/// The bundled document text for `name`.
pub fn example_text(name: &str) -> Result<String> {
    match name.trim() {
        "ex5.1" => Ok(EX51.to_string()),
        "ex5.2" => Ok(EX52.to_string()),
        "ex5.3-trivial" => Ok(EX53_TRIVIAL.to_string()),
        other => {
            let (t0, t1) =
                parse_ex53_args(other).ok_or_else(|| Error::UnknownExample(other.to_string()))?;
            Ok(ex53(t0, t1).to_json_pretty())
        }
    }
}

pub fn example(name: &str) -> Result<Document> {
    Document::from_json(&example_text(name)?)
}

/// ex5.3 with `φ(1, e0) = t0`, `φ(1, e1) = t1` and `φ(1, f) = 1`.
pub fn ex53(t0: i64, t1: i64) -> Document {
    let mut doc = Document::from_json(EX53_TRIVIAL).expect("bundled fixture parses");
    doc.name = Some(format!("ex5.3({t0},{t1})"));
    let values: BTreeMap<String, i64> = [
        ("e0".to_string(), t0),
        ("e1".to_string(), t1),
        ("f".to_string(), 1),
    ]
    .into();
    doc.cocycle = CocycleDoc::Spec(CocycleSpec::GeneratorValues { values });
    doc
}

fn parse_ex53_args(name: &str) -> Option<(i64, i64)> {
    let inner = name.strip_prefix("ex5.3(")?.strip_suffix(')')?;
    let (a, b) = inner.split_once(',')?;
    Some((a.trim().parse().ok()?, b.trim().parse().ok()?))
}
