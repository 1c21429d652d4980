//! JSON instance files and report fragments.
//!
//! ```json
//! {"name": "p3", "vertices": ["a", "b", "c"], "edges": [[0, 1], [1, 2]], "values": ["1", "2", 1]}
//! ```
//!
//! Values are integers or `"p/q"` strings; output always uses the canonical
//! string form so files round-trip exactly.

use serde::Deserialize;
use serde_json::{json, Value};

use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::function::VertexFunction;
use crate::gadgets::GadgetInstance;
use crate::graph::{Graph, VertexSubset};
use crate::scalar::{format_rational, parse_rational, Rational};
use crate::unimodality::{Contractibility, Piece, StrongViolation, Witness};

#[derive(Clone, Debug, PartialEq)]
pub struct InstanceFile {
    pub name: Option<String>,
    pub graph: Graph,
    pub function: VertexFunction,
    /// Free-form regression values, passed through untouched.
    pub expected: Option<Value>,
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawVertices {
    Names(Vec<String>),
    Count(usize),
}

#[derive(Deserialize)]
#[serde(untagged)]
enum RawValue {
    Int(i64),
    Text(String),
}

#[derive(Deserialize)]
#[serde(deny_unknown_fields)]
struct RawInstance {
    name: Option<String>,
    vertices: RawVertices,
    #[serde(default)]
    edges: Vec<(usize, usize)>,
    values: Option<Vec<RawValue>>,
    expected: Option<Value>,
    /// Accepted so gadget output can be read back.
    #[allow(dead_code)]
    provenance: Option<Value>,
}

/// Parses an instance; errors name the offending field.
pub fn parse_instance(text: &str) -> Result<InstanceFile> {
    let raw: RawInstance = serde_json::from_str(text).map_err(|e| Error::Format(e.to_string()))?;
    let (n, labels) = match raw.vertices {
        // the default names written for unlabelled graphs read back as none
        RawVertices::Names(names) if names.iter().enumerate().all(|(i, s)| *s == i.to_string()) => (names.len(), None),
        RawVertices::Names(names) => (names.len(), Some(names)),
        RawVertices::Count(n) => (n, None),
    };
    let graph = Graph::new(n, raw.edges).map_err(|e| Error::Format(format!("edges: {e}")))?;
    let graph = match labels {
        Some(l) => graph.with_labels(l).map_err(|e| Error::Format(format!("vertices: {e}")))?,
        None => graph,
    };
    let function = match raw.values {
        None => VertexFunction::constant(&graph, Rational::from_integer(1.into())),
        Some(values) => {
            if values.len() != n {
                return Err(Error::Format(format!("values: expected {n} entries, got {}", values.len())));
            }
            let parsed = values
                .into_iter()
                .enumerate()
                .map(|(i, v)| match v {
                    RawValue::Int(x) => Ok(Rational::from_integer(x.into())),
                    RawValue::Text(s) => parse_rational(&s).map_err(|e| Error::Format(format!("values[{i}]: {e}"))),
                })
                .collect::<Result<Vec<_>>>()?;
            VertexFunction::new(&graph, parsed).map_err(|e| Error::Format(format!("values: {e}")))?
        }
    };
    Ok(InstanceFile { name: raw.name, graph, function, expected: raw.expected })
}

pub fn read_instance(path: &std::path::Path) -> Result<InstanceFile> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::Format(format!("{}: {e}", path.display())))?;
    parse_instance(&text)
}

pub fn values_json(f: &VertexFunction) -> Value {
    Value::Array(f.values().iter().map(|v| Value::String(format_rational(v))).collect())
}

pub fn instance_json(name: Option<&str>, g: &Graph, f: &VertexFunction) -> Value {
    let names: Vec<String> = (0..g.vertex_count()).map(|v| g.label(v)).collect();
    let mut doc = json!({
        "vertices": names,
        "edges": g.edges().iter().map(|&(u, v)| [u, v]).collect::<Vec<_>>(),
        "values": values_json(f),
    });
    if let Some(name) = name {
        doc["name"] = json!(name);
    }
    doc
}

/// Serializes an instance; [`parse_instance`] reads it back unchanged.
pub fn write_instance(file: &InstanceFile) -> String {
    let mut doc = instance_json(file.name.as_deref(), &file.graph, &file.function);
    if let Some(expected) = &file.expected {
        doc["expected"] = expected.clone();
    }
    serde_json::to_string_pretty(&doc).expect("JSON values serialize")
}

pub fn subset_json(s: &VertexSubset) -> Value {
    json!(s.to_vec())
}

pub fn decomposition_json(d: &Decomposition) -> Value {
    json!({
        "mode": d.mode,
        "count": d.len(),
        "components": d.components.iter().map(|c| json!({
            "root": c.root,
            "support": c.support.to_vec(),
            "values": values_json(&c.values),
        })).collect::<Vec<_>>(),
    })
}

pub fn witness_json(w: &Witness) -> Value {
    let detail = match w {
        Witness::EmptySupport => json!(null),
        Witness::Cycle(c) => json!(c),
        Witness::Disconnected(a, b) => json!([a, b]),
        Witness::IncreasingEdge { root, from, to } => json!({"root": root, "from": from, "to": to}),
    };
    json!({"kind": w.kind(), "detail": detail})
}

fn piece_json(p: &Piece) -> Value {
    match p {
        Piece::Vertex(v) => json!({"vertex": v}),
        Piece::Interior(e) => json!({"edge_interior": e}),
    }
}

pub fn contractibility_json(c: &Contractibility) -> Value {
    match c {
        Contractibility::Contractible => json!("contractible"),
        Contractibility::Empty => json!("empty"),
        Contractibility::Disconnected(a, b) => json!({"disconnected": [piece_json(a), piece_json(b)]}),
        Contractibility::Cycle(c) => json!({"cycle": c}),
    }
}

pub fn violation_json(v: &StrongViolation<Rational>) -> Value {
    json!({
        "thresholds": v.thresholds.iter().map(|(i, c)| json!({"component": i, "threshold": format_rational(c)})).collect::<Vec<_>>(),
        "reason": contractibility_json(&v.reason),
    })
}

pub fn gadget_json(inst: &GadgetInstance) -> Value {
    let mut doc = instance_json(None, &inst.graph, &inst.function);
    doc["provenance"] = json!({
        "kind": inst.kind,
        "k": inst.k,
        "source": instance_json(None, &inst.source, &VertexFunction::zero(&inst.source))
            .as_object()
            .map(|o| json!({"vertices": o["vertices"], "edges": o["edges"]}))
            .expect("instance JSON is an object"),
        "source_vertices": inst.provenance.source_vertices,
        "apexes": inst.provenance.apexes,
        "midpoints": inst.provenance.midpoints.iter().map(|&(u, v, m)| json!({"edge": [u, v], "vertex": m})).collect::<Vec<_>>(),
        "isolated": inst.provenance.isolated,
    });
    doc
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rational;

    #[test]
    fn parses_and_round_trips() {
        let text = r#"{"name": "p3", "vertices": ["a", "b", "c"], "edges": [[0, 1], [1, 2]], "values": ["1/2", 2, "4/2"]}"#;
        let file = parse_instance(text).unwrap();
        assert_eq!(file.function.value(0), &rational(1, 2));
        assert_eq!(file.function.value(2), &rational(2, 1));
        assert_eq!(file.graph.label(1), "b");
        let again = parse_instance(&write_instance(&file)).unwrap();
        assert_eq!(again, file);
        assert!(write_instance(&file).contains("\"2\""));
    }

    #[test]
    fn field_errors() {
        let neg = r#"{"vertices": ["a"], "edges": [], "values": ["-1"]}"#;
        assert!(parse_instance(neg).unwrap_err().to_string().contains("values"));
        let bad = r#"{"vertices": ["a"], "edges": [], "values": ["1/0"]}"#;
        assert!(parse_instance(bad).unwrap_err().to_string().contains("values[0]"));
        let loops = r#"{"vertices": 2, "edges": [[1, 1]], "values": [1, 1]}"#;
        assert!(parse_instance(loops).unwrap_err().to_string().contains("edges"));
        let short = r#"{"vertices": 2, "edges": [], "values": [1]}"#;
        assert!(parse_instance(short).is_err());
        assert!(parse_instance("{").is_err());
    }

    #[test]
    fn missing_values_mean_constant_one() {
        let file = parse_instance(r#"{"vertices": 3, "edges": [[0, 1]]}"#).unwrap();
        assert_eq!(file.function.values().iter().filter(|v| **v == rational(1, 1)).count(), 3);
    }
}
