//! JSON graph specification files.
//!
//! ```json
//! {
//!   "vertices": ["a", "b", "c"],
//!   "edges": [{"id": "e1", "source": "a", "target": "b", "mass": "1.5"}],
//!   "external_momenta": {"a": ["1", "0", "0", "0"], "b": ["-1", 0, 0, 0]}
//! }
//! ```
//!
//! Numbers may be JSON numbers or strings holding a decimal or `p/q`
//! rational. In exact mode non-integer JSON numbers are rejected, since
//! they have already passed through binary floating point.

use std::collections::{BTreeMap, HashMap};

use serde::{Deserialize, Serialize};

use crate::algebra::gaussian::{format_rational, parse_rational, Rational};
use crate::error::{Error, Result};
use crate::graph::{EdgeSpec, FourVector, Graph};

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Id {
    Text(String),
    Int(u64),
}

impl Id {
    fn into_string(self) -> String {
        match self {
            Id::Text(s) => s,
            Id::Int(i) => i.to_string(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Number {
    Text(String),
    Json(serde_json::Number),
}

impl Number {
    fn parse(&self, exact: bool, field: &str) -> Result<Rational> {
        let text = match self {
            Number::Text(s) => s.clone(),
            Number::Json(n) => {
                if exact && !(n.is_i64() || n.is_u64()) {
                    return Err(Error::Parse(format!(
                        "{field}: binary float {n} in exact mode; quote it as a decimal string"
                    )));
                }
                n.to_string()
            }
        };
        parse_rational(&text).map_err(|e| Error::Parse(format!("{field}: {e}")))
    }
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct EdgeRecord {
    pub id: Id,
    pub source: Id,
    pub target: Id,
    pub mass: Number,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct GraphSpecFile {
    pub vertices: Vec<Id>,
    pub edges: Vec<EdgeRecord>,
    #[serde(default)]
    pub external_momenta: BTreeMap<String, [Number; 4]>,
}

impl GraphSpecFile {
    /// Parses the document; syntax and schema errors carry line and column.
    pub fn from_json(text: &str) -> Result<Self> {
        serde_json::from_str(text).map_err(|e| Error::Parse(format!("invalid graph file: {e}")))
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("spec files serialize")
    }

    pub fn to_graph(&self, exact: bool) -> Result<Graph> {
        let vertices: Vec<String> = self.vertices.iter().cloned().map(Id::into_string).collect();
        let mut edges = Vec::with_capacity(self.edges.len());
        for (i, e) in self.edges.iter().enumerate() {
            edges.push(EdgeSpec {
                id: e.id.clone().into_string(),
                source: e.source.clone().into_string(),
                target: e.target.clone().into_string(),
                mass: e.mass.parse(exact, &format!("edges[{i}].mass"))?,
            });
        }
        let mut momenta = HashMap::new();
        for (v, p) in &self.external_momenta {
            let mut comps = Vec::with_capacity(4);
            for (mu, x) in p.iter().enumerate() {
                comps.push(x.parse(exact, &format!("external_momenta.{v}[{mu}]"))?);
            }
            let comps: [Rational; 4] = comps.try_into().expect("four components");
            momenta.insert(v.clone(), FourVector(comps));
        }
        Graph::new(vertices, edges, &momenta)
    }

    /// Exact description of `g`, numbers written as rational strings.
    pub fn from_graph(g: &Graph) -> Self {
        let vertices = g.vertices().iter().cloned().map(Id::Text).collect();
        let edges = g
            .edges()
            .iter()
            .map(|e| EdgeRecord {
                id: Id::Text(e.id.clone()),
                source: Id::Text(g.vertices()[e.source].clone()),
                target: Id::Text(g.vertices()[e.target].clone()),
                mass: Number::Text(format_rational(&e.mass)),
            })
            .collect();
        let external_momenta = g
            .vertices()
            .iter()
            .zip(g.external_momenta())
            .filter(|(_, p)| !p.is_zero())
            .map(|(v, p)| (v.clone(), p.0.clone().map(|x| Number::Text(format_rational(&x)))))
            .collect();
        GraphSpecFile {
            vertices,
            edges,
            external_momenta,
        }
    }
}

/// Parses and validates a graph file in one step.
pub fn parse_graph(text: &str, exact: bool) -> Result<Graph> {
    GraphSpecFile::from_json(text)?.to_graph(exact)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::algebra::gaussian::rational;
    use crate::graph::topologies;

    const TRIANGLE: &str = r#"{
        "vertices": [1, 2, 3],
        "edges": [
            {"id": "e1", "source": 1, "target": 2, "mass": "1"},
            {"id": "e2", "source": 2, "target": 3, "mass": 2},
            {"id": "e3", "source": 3, "target": 1, "mass": "0.25"}
        ],
        "external_momenta": {"1": ["1/2", 0, 0, 0], "2": ["-0.5", "0", "0", "0"]}
    }"#;

    #[test]
    fn parses_mixed_numbers_exactly() {
        let g = parse_graph(TRIANGLE, true).unwrap();
        assert_eq!(g.n_edges(), 3);
        assert_eq!(g.edges()[2].mass, rational(1, 4));
        assert_eq!(g.external_momenta()[0].0[0], rational(1, 2));
    }

    #[test]
    fn float_literals_only_outside_exact_mode() {
        let text = TRIANGLE.replace("\"0.25\"", "0.25");
        assert!(matches!(parse_graph(&text, true), Err(Error::Parse(msg)) if msg.contains("edges[2].mass")));
        assert_eq!(parse_graph(&text, false).unwrap().edges()[2].mass, rational(1, 4));
    }

    #[test]
    fn syntax_errors_report_position() {
        let err = parse_graph("{\"vertices\": [1,\n 2,", false).unwrap_err();
        assert!(err.to_string().contains("line 2"), "{err}");
        let err = parse_graph(r#"{"vertices": [], "edges": [], "extra": 1}"#, false).unwrap_err();
        assert!(err.to_string().contains("extra"), "{err}");
    }

    #[test]
    fn bad_numbers_name_the_field() {
        let text = TRIANGLE.replace("\"-0.5\"", "\"minus half\"");
        let err = parse_graph(&text, false).unwrap_err();
        assert!(err.to_string().contains("external_momenta.2[0]"), "{err}");
    }

    #[test]
    fn round_trips_through_graph() {
        let g = topologies::box_graph(
            [rational(1, 3), rational(2, 1), rational(5, 7), rational(1, 1)],
            [
                FourVector::from_ints([1, 2, 0, 0]),
                FourVector::zero(),
                FourVector::from_ints([-1, -2, 0, 0]),
                FourVector::zero(),
            ],
        )
        .unwrap();
        let spec = GraphSpecFile::from_graph(&g);
        let back = GraphSpecFile::from_json(&spec.to_json()).unwrap();
        assert_eq!(back, spec);
        assert_eq!(back.to_graph(true).unwrap(), g);
    }
}
