//! Line-oriented `key: value` reports, optionally rendered as one JSON
//! object instead.
//!
//! Vertex sets render as `{0,1,2}` in text and as arrays in JSON; a missing
//! value renders as `none` / `null`. Repeated entries (witness lines) render
//! as one line each in text and as an array of strings in JSON. JSON keys
//! keep report order and the document is a single line.

use serde_json::{Map, Value};

use crate::checker::{CheckResult, Witness};
use crate::hypergraph::{Hypergraph, Vertex};

#[derive(Clone, Debug)]
enum Entry {
    Single(String, Value),
    Repeated(String, Vec<String>),
}

#[derive(Clone, Debug, Default)]
pub struct Report {
    entries: Vec<Entry>,
}

pub fn set_value(set: &[Vertex]) -> Value {
    Value::Array(set.iter().map(|&v| Value::from(v)).collect())
}

pub fn set_text(set: &[Vertex]) -> String {
    let inner: Vec<String> = set.iter().map(|v| v.to_string()).collect();
    format!("{{{}}}", inner.join(","))
}

fn text_of(value: &Value) -> String {
    match value {
        Value::Null => "none".into(),
        Value::String(s) => s.clone(),
        Value::Array(items) => {
            let inner: Vec<String> = items.iter().map(text_of).collect();
            format!("{{{}}}", inner.join(","))
        }
        other => other.to_string(),
    }
}

impl Report {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn push(&mut self, key: &str, value: impl Into<Value>) -> &mut Self {
        self.entries.push(Entry::Single(key.into(), value.into()));
        self
    }

    pub fn push_lines(&mut self, key: &str, lines: Vec<String>) -> &mut Self {
        self.entries.push(Entry::Repeated(key.into(), lines));
        self
    }

    pub fn get(&self, key: &str) -> Option<&Value> {
        self.entries.iter().find_map(|e| match e {
            Entry::Single(k, v) if k == key => Some(v),
            _ => None,
        })
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for e in &self.entries {
            match e {
                Entry::Single(k, v) => {
                    out.push_str(&format!("{k}: {}\n", text_of(v)));
                }
                Entry::Repeated(k, lines) => {
                    for l in lines {
                        out.push_str(&format!("{k}: {l}\n"));
                    }
                }
            }
        }
        out
    }

    pub fn to_json(&self) -> String {
        let mut map = Map::new();
        for e in &self.entries {
            match e {
                Entry::Single(k, v) => {
                    map.insert(k.clone(), v.clone());
                }
                Entry::Repeated(k, lines) => {
                    map.insert(k.clone(), Value::from(lines.clone()));
                }
            }
        }
        let mut s = serde_json::to_string(&Value::Object(map)).expect("report serializes");
        s.push('\n');
        s
    }

    pub fn render(&self, json: bool) -> String {
        if json {
            self.to_json()
        } else {
            self.to_text()
        }
    }
}

pub fn witness_line(w: &Witness) -> String {
    format!(
        "S={} T={} X={}",
        set_text(&w.s),
        set_text(&w.t),
        set_text(&w.x)
    )
}

/// The standard check report: `holds`, `n`, `h`, `m`, `edges`,
/// `counterexample_S`, `counterexample_T`, `candidates_examined`,
/// `elapsed_ms`, followed by a few extra statistics and any witnesses.
pub fn check_report(hg: &Hypergraph, result: &CheckResult) -> Report {
    let mut r = Report::new();
    let cx = result.counterexample.as_ref();
    r.push("holds", result.holds)
        .push("n", result.n)
        .push("h", hg.h())
        .push("m", hg.m())
        .push("edges", hg.edge_count())
        .push(
            "counterexample_S",
            cx.map_or(Value::Null, |c| set_value(&c.s)),
        )
        .push(
            "counterexample_T",
            cx.map_or(Value::Null, |c| set_value(&c.t)),
        )
        .push("candidates_examined", result.stats.candidates_examined)
        .push("elapsed_ms", result.stats.elapsed.as_millis() as u64)
        .push("s_sets_examined", result.stats.s_sets_examined)
        .push("too_few_vertices", result.stats.too_few_vertices);
    if let Some(log) = &result.witness_log {
        r.push_lines("witness", log.iter().map(witness_line).collect());
    }
    r
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::checker::is_nec;

    #[test]
    fn text_and_json_agree_on_content() {
        let hg = Hypergraph::new(3, 4, [[0, 1, 2], [0, 2, 3]]).unwrap();
        let r = check_report(&hg, &is_nec(&hg, 2).unwrap());
        let text = r.to_text();
        assert!(text.starts_with("holds: false\nn: 2\nh: 3\nm: 4\nedges: 2\n"));
        assert!(text.contains("counterexample_S: {"));
        let json: Value = serde_json::from_str(&r.to_json()).unwrap();
        assert_eq!(json["holds"], Value::Bool(false));
        assert_eq!(json["edges"], Value::from(2));
        assert!(json["counterexample_T"].is_array());
    }

    #[test]
    fn holding_check_has_no_counterexample() {
        let hg = Hypergraph::new(3, 4, [[0, 1, 2], [0, 2, 3]]).unwrap();
        let r = check_report(&hg, &is_nec(&hg, 1).unwrap());
        assert!(r
            .to_text()
            .contains("counterexample_S: none\ncounterexample_T: none\n"));
        assert_eq!(set_text(&[]), "{}");
    }
}
