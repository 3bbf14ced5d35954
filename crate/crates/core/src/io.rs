//! Text formats: edge lists, a small JSON document, and DOT export.

use std::fmt::Write as _;
use std::path::Path;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, Label};

/// JSON graph document, `{"vertices": [...], "edges": [[a, b], ...]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphDoc {
    pub vertices: Vec<Label>,
    pub edges: Vec<(Label, Label)>,
}

impl From<&Graph> for GraphDoc {
    fn from(g: &Graph) -> Self {
        GraphDoc {
            vertices: g.labels().to_vec(),
            edges: (0..g.size()).map(|e| g.edge_labels(e)).collect(),
        }
    }
}

impl TryFrom<GraphDoc> for Graph {
    type Error = Error;

    fn try_from(doc: GraphDoc) -> Result<Graph> {
        Graph::from_labeled(doc.vertices, &doc.edges)
    }
}

/// Parses either format; input starting with `{` is treated as JSON.
pub fn parse_graph(text: &str) -> Result<Graph> {
    if text.trim_start().starts_with('{') {
        parse_json(text)
    } else {
        parse_edge_list(text)
    }
}

pub fn parse_json(text: &str) -> Result<Graph> {
    let doc: GraphDoc = serde_json::from_str(text).map_err(|e| Error::Parse {
        line: e.line(),
        msg: e.to_string(),
    })?;
    Graph::try_from(doc)
}

/// Edge-list format. Vertex order is first appearance.
pub fn parse_edge_list(text: &str) -> Result<Graph> {
    let mut labels: Vec<Label> = Vec::new();
    let mut seen = std::collections::HashMap::new();
    let mut edges = Vec::new();
    let mut intern = |l: Label, labels: &mut Vec<Label>| -> usize {
        *seen.entry(l.clone()).or_insert_with(|| {
            labels.push(l);
            labels.len() - 1
        })
    };
    for (i, raw) in text.lines().enumerate() {
        let line = raw.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let tokens: Vec<&str> = line.split_whitespace().collect();
        match tokens.as_slice() {
            ["v", label] => {
                intern(Label::from_token(label), &mut labels);
            }
            [a, b] => {
                let ia = intern(Label::from_token(a), &mut labels);
                let ib = intern(Label::from_token(b), &mut labels);
                edges.push((ia, ib));
            }
            _ => {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected two vertex labels or `v <label>`, got {line:?}"),
                })
            }
        }
    }
    Graph::new(labels, edges)
}

pub fn read_graph(path: &Path) -> Result<Graph> {
    parse_graph(&std::fs::read_to_string(path)?)
}

pub fn to_json(g: &Graph) -> Result<String> {
    Ok(serde_json::to_string(&GraphDoc::from(g))?)
}

/// Edge-list text that round-trips through [`parse_edge_list`] when labels
/// are plain tokens.
pub fn to_edge_list(g: &Graph) -> String {
    let mut out = String::new();
    let mut touched = vec![false; g.order()];
    for &(a, b) in g.edges() {
        touched[a] = true;
        touched[b] = true;
    }
    for v in 0..g.order() {
        if !touched[v] {
            let _ = writeln!(out, "v {}", g.label(v));
        }
    }
    for &(a, b) in g.edges() {
        let _ = writeln!(out, "{} {}", g.label(a), g.label(b));
    }
    out
}

/// Undirected DOT; `highlight` edges are drawn bold.
pub fn to_dot(g: &Graph, highlight: Option<&EdgeSet>) -> String {
    let mut out = String::from("graph G {\n");
    for v in 0..g.order() {
        let _ = writeln!(out, "  {v} [label=\"{}\"];", g.label(v));
    }
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        let bold = highlight.is_some_and(|m| m.contains(e));
        if bold {
            let _ = writeln!(out, "  {a} -- {b} [penwidth=3];");
        } else {
            let _ = writeln!(out, "  {a} -- {b};");
        }
    }
    out.push_str("}\n");
    out
}

/// Parses an edge set against a host graph: either a JSON array of label
/// pairs or one edge per line.
pub fn parse_edge_set(g: &Graph, text: &str) -> Result<EdgeSet> {
    let pairs: Vec<(Label, Label)> = if text.trim_start().starts_with('[') {
        serde_json::from_str(text).map_err(|e| Error::Parse {
            line: e.line(),
            msg: e.to_string(),
        })?
    } else {
        let mut pairs = Vec::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let tokens: Vec<&str> = line.split_whitespace().collect();
            let [a, b] = tokens.as_slice() else {
                return Err(Error::Parse {
                    line: i + 1,
                    msg: format!("expected an edge, got {line:?}"),
                });
            };
            pairs.push((Label::from_token(a), Label::from_token(b)));
        }
        pairs
    };
    EdgeSet::from_labeled(g, &pairs).map_err(|e| match e {
        Error::EdgeNotInHost(s) => Error::EdgeNotInFactor(s),
        other => other,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn edge_list_path() {
        let g = parse_graph("0 1\n1 2").unwrap();
        assert_eq!((g.order(), g.size()), (3, 2));
        assert_eq!(g.labels(), &[Label::Int(0), Label::Int(1), Label::Int(2)]);
    }

    #[test]
    fn edge_list_errors() {
        assert!(matches!(parse_graph("0 0"), Err(Error::InvariantViolation(_))));
        assert!(matches!(parse_graph("0 1 2"), Err(Error::Parse { line: 1, .. })));
        assert!(matches!(parse_graph("# c\n\n"), Err(Error::InvariantViolation(_))));
    }

    #[test]
    fn comments_and_isolated() {
        let g = parse_graph("# header\nv z\na b\n").unwrap();
        assert_eq!(g.order(), 3);
        assert_eq!(g.label(0), &Label::Name("z".into()));
    }

    #[test]
    fn json_single_vertex() {
        let g = parse_graph(r#"{"vertices":["a"],"edges":[]}"#).unwrap();
        assert_eq!((g.order(), g.size()), (1, 0));
        assert!(matches!(
            parse_graph(r#"{"vertices":["a"],"edges":[["a","b"]]}"#),
            Err(Error::InvariantViolation(_))
        ));
        assert!(matches!(parse_graph("{"), Err(Error::Parse { .. })));
    }

    #[test]
    fn round_trips() {
        let g = Graph::star(3);
        assert_eq!(parse_graph(&to_json(&g).unwrap()).unwrap(), g);
        assert_eq!(parse_graph(&to_edge_list(&g)).unwrap().size(), 3);
        let dot = to_dot(&g, None);
        assert!(dot.starts_with("graph G {") && dot.contains("0 -- 3;"));
    }

    #[test]
    fn edge_sets() {
        let g = Graph::path(3);
        assert_eq!(parse_edge_set(&g, "1 2\n").unwrap().ids(), &[1]);
        assert_eq!(parse_edge_set(&g, "[[1,0]]").unwrap().ids(), &[0]);
        assert!(matches!(parse_edge_set(&g, "0 2"), Err(Error::EdgeNotInFactor(_))));
    }
}
