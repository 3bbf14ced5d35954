//! Finite simple undirected graphs with labeled vertices.
//!
//! Vertices are addressed by dense indices in insertion order; labels are
//! opaque and only used for I/O. Edges are stored once, as `(u, v)` with
//! `u < v`, sorted lexicographically. That order is the canonical edge order
//! used everywhere else (edge sets, witnesses, enumeration).

use std::collections::{HashMap, VecDeque};
use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type VertexId = usize;
pub type EdgeId = usize;

/// Vertex label. Product vertices carry the pair of factor labels.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Name(String),
    Pair(Box<Label>, Box<Label>),
}

impl Label {
    pub fn pair(a: Label, b: Label) -> Self {
        Label::Pair(Box::new(a), Box::new(b))
    }

    /// Parses a bare token from the edge-list format. Integers stay integers.
    pub fn from_token(token: &str) -> Self {
        match token.parse::<i64>() {
            Ok(i) => Label::Int(i),
            Err(_) => Label::Name(token.to_string()),
        }
    }
}

impl From<usize> for Label {
    fn from(i: usize) -> Self {
        Label::Int(i as i64)
    }
}

impl From<&str> for Label {
    fn from(s: &str) -> Self {
        Label::Name(s.to_string())
    }
}

impl fmt::Display for Label {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Label::Int(i) => write!(f, "{i}"),
            Label::Name(s) => f.write_str(s),
            Label::Pair(a, b) => write!(f, "({a},{b})"),
        }
    }
}

/// Named graph families.
///
/// `Path(n)` is the path on `n` vertices, not of length `n`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Family {
    Path,
    Cycle,
    Complete,
    Star,
}

impl FromStr for Family {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "path" | "p" => Ok(Family::Path),
            "cycle" | "c" => Ok(Family::Cycle),
            "complete" | "k" => Ok(Family::Complete),
            "star" | "s" => Ok(Family::Star),
            other => Err(Error::InvalidParameter(format!("unknown graph family {other:?}"))),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Family::Path => "path",
            Family::Cycle => "cycle",
            Family::Complete => "complete",
            Family::Star => "star",
        })
    }
}

#[derive(Clone, Debug)]
pub struct Graph {
    labels: Vec<Label>,
    index: HashMap<Label, VertexId>,
    edges: Vec<(VertexId, VertexId)>,
    adj: Vec<Vec<(VertexId, EdgeId)>>,
    edge_index: HashMap<(VertexId, VertexId), EdgeId>,
}

impl PartialEq for Graph {
    fn eq(&self, other: &Self) -> bool {
        self.labels == other.labels && self.edges == other.edges
    }
}

impl Eq for Graph {}

impl Graph {
    /// Builds a graph from labels and index pairs, rejecting anything that
    /// is not a finite simple loop-free graph on a non-empty vertex set.
    pub fn new(
        labels: Vec<Label>,
        edges: impl IntoIterator<Item = (VertexId, VertexId)>,
    ) -> Result<Self> {
        if labels.is_empty() {
            return Err(Error::InvariantViolation("vertex set is empty".into()));
        }
        let mut index = HashMap::with_capacity(labels.len());
        for (i, l) in labels.iter().enumerate() {
            if index.insert(l.clone(), i).is_some() {
                return Err(Error::InvariantViolation(format!("duplicate vertex {l}")));
            }
        }
        let n = labels.len();
        let mut list = Vec::new();
        for (a, b) in edges {
            if a >= n || b >= n {
                return Err(Error::InvariantViolation(format!(
                    "edge ({a},{b}) has an endpoint outside the vertex set"
                )));
            }
            if a == b {
                return Err(Error::InvariantViolation(format!("loop at vertex {}", labels[a])));
            }
            list.push((a.min(b), a.max(b)));
        }
        list.sort_unstable();
        for w in list.windows(2) {
            if w[0] == w[1] {
                let (a, b) = w[0];
                return Err(Error::InvariantViolation(format!(
                    "duplicate edge {{{},{}}}",
                    labels[a], labels[b]
                )));
            }
        }
        Ok(Self::from_sorted(labels, index, list))
    }

    fn from_sorted(
        labels: Vec<Label>,
        index: HashMap<Label, VertexId>,
        edges: Vec<(VertexId, VertexId)>,
    ) -> Self {
        let mut adj = vec![Vec::new(); labels.len()];
        let mut edge_index = HashMap::with_capacity(edges.len());
        for (e, &(a, b)) in edges.iter().enumerate() {
            adj[a].push((b, e));
            adj[b].push((a, e));
            edge_index.insert((a, b), e);
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Graph {
            labels,
            index,
            edges,
            adj,
            edge_index,
        }
    }

    /// Builds a graph from labeled endpoints; every endpoint must be listed
    /// in `labels`.
    pub fn from_labeled(labels: Vec<Label>, edges: &[(Label, Label)]) -> Result<Self> {
        let lookup: HashMap<&Label, usize> = labels.iter().enumerate().map(|(i, l)| (l, i)).collect();
        let mut pairs = Vec::with_capacity(edges.len());
        for (a, b) in edges {
            let ia = lookup
                .get(a)
                .ok_or_else(|| Error::InvariantViolation(format!("dangling endpoint {a}")))?;
            let ib = lookup
                .get(b)
                .ok_or_else(|| Error::InvariantViolation(format!("dangling endpoint {b}")))?;
            pairs.push((*ia, *ib));
        }
        Graph::new(labels, pairs)
    }

    /// Graph on vertices labeled `0..n`.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (VertexId, VertexId)>) -> Result<Self> {
        Graph::new((0..n).map(Label::from).collect(), edges)
    }

    pub fn build_named(family: Family, n: usize) -> Result<Self> {
        if n == 0 {
            return Err(Error::InvalidParameter(format!("{family} needs n >= 1")));
        }
        match family {
            Family::Path => Graph::from_edges(n, (1..n).map(|i| (i - 1, i))),
            Family::Cycle => {
                if n < 3 {
                    return Err(Error::InvalidParameter(format!("cycle needs n >= 3, got {n}")));
                }
                Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n)))
            }
            Family::Complete => {
                Graph::from_edges(n, (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))))
            }
            Family::Star => Graph::from_edges(n + 1, (1..=n).map(|i| (0, i))),
        }
    }

    pub fn path(n: usize) -> Self {
        Graph::build_named(Family::Path, n).expect("path order must be positive")
    }

    pub fn cycle(n: usize) -> Self {
        Graph::build_named(Family::Cycle, n).expect("cycle order must be at least 3")
    }

    pub fn complete(n: usize) -> Self {
        Graph::build_named(Family::Complete, n).expect("complete graph order must be positive")
    }

    pub fn star(n: usize) -> Self {
        Graph::build_named(Family::Star, n).expect("star needs at least one leaf")
    }

    pub fn order(&self) -> usize {
        self.labels.len()
    }

    pub fn size(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[Label] {
        &self.labels
    }

    pub fn label(&self, v: VertexId) -> &Label {
        &self.labels[v]
    }

    pub fn vertex(&self, label: &Label) -> Option<VertexId> {
        self.index.get(label).copied()
    }

    pub fn edges(&self) -> &[(VertexId, VertexId)] {
        &self.edges
    }

    pub fn edge(&self, e: EdgeId) -> (VertexId, VertexId) {
        self.edges[e]
    }

    pub fn edge_id(&self, a: VertexId, b: VertexId) -> Option<EdgeId> {
        self.edge_index.get(&(a.min(b), a.max(b))).copied()
    }

    pub fn has_edge(&self, a: VertexId, b: VertexId) -> bool {
        self.edge_id(a, b).is_some()
    }

    /// Neighbors of `v` with the connecting edge, sorted by neighbor index.
    pub fn neighbors(&self, v: VertexId) -> &[(VertexId, EdgeId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: VertexId) -> usize {
        self.adj[v].len()
    }

    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.order()).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn edge_labels(&self, e: EdgeId) -> (Label, Label) {
        let (a, b) = self.edges[e];
        (self.labels[a].clone(), self.labels[b].clone())
    }

    /// Partition into connected components. Components are listed by their
    /// smallest vertex index; vertices inside a component are sorted.
    pub fn connected_components(&self) -> Vec<Vec<VertexId>> {
        let n = self.order();
        let mut seen = vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            let mut comp = vec![start];
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for &(w, _) in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        comp.push(w);
                        queue.push_back(w);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// Two-coloring witness (`false`/`true` per vertex) if the graph has no
    /// odd cycle. Each component's smallest vertex gets color `false`.
    pub fn bipartition(&self) -> Option<Vec<bool>> {
        let n = self.order();
        let mut color: Vec<Option<bool>> = vec![None; n];
        for start in 0..n {
            if color[start].is_some() {
                continue;
            }
            color[start] = Some(false);
            let mut queue = VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                let cv = color[v].unwrap();
                for &(w, _) in &self.adj[v] {
                    match color[w] {
                        None => {
                            color[w] = Some(!cv);
                            queue.push_back(w);
                        }
                        Some(cw) if cw == cv => return None,
                        Some(_) => {}
                    }
                }
            }
        }
        Some(color.into_iter().map(|c| c.unwrap()).collect())
    }

    pub fn is_bipartite(&self) -> bool {
        self.bipartition().is_some()
    }

    /// Subgraph induced by `vertices`, keeping their order and labels.
    pub fn induced_subgraph(&self, vertices: &[VertexId]) -> Result<Graph> {
        let pos: HashMap<VertexId, usize> = vertices.iter().enumerate().map(|(i, &v)| (v, i)).collect();
        let labels = vertices.iter().map(|&v| self.labels[v].clone()).collect();
        let mut edges = Vec::new();
        for (i, &v) in vertices.iter().enumerate() {
            for &(w, _) in &self.adj[v] {
                if let Some(&j) = pos.get(&w) {
                    if i < j {
                        edges.push((i, j));
                    }
                }
            }
        }
        Graph::new(labels, edges)
    }

    /// The spanning subgraph `(V, m)`.
    pub fn spanning_subgraph(&self, m: &EdgeSet) -> Graph {
        let edges: Vec<_> = m.iter().map(|e| self.edges[e]).collect();
        Graph::from_sorted(self.labels.clone(), self.index.clone(), edges)
    }

    /// Number of `m`-edges at each vertex.
    pub fn degrees_in(&self, m: &EdgeSet) -> Vec<u32> {
        let mut deg = vec![0u32; self.order()];
        for e in m.iter() {
            let (a, b) = self.edges[e];
            deg[a] += 1;
            deg[b] += 1;
        }
        deg
    }

    pub fn all_edges(&self) -> EdgeSet {
        EdgeSet((0..self.size()).collect())
    }
}

/// A set of edge ids of some host graph, kept sorted and duplicate-free.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(transparent)]
pub struct EdgeSet(Vec<EdgeId>);

impl EdgeSet {
    pub fn new() -> Self {
        EdgeSet(Vec::new())
    }

    pub fn ids(&self) -> &[EdgeId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, e: EdgeId) -> bool {
        self.0.binary_search(&e).is_ok()
    }

    pub fn iter(&self) -> impl Iterator<Item = EdgeId> + '_ {
        self.0.iter().copied()
    }

    pub fn is_subset(&self, other: &EdgeSet) -> bool {
        self.0.iter().all(|&e| other.contains(e))
    }

    pub fn union(&self, other: &EdgeSet) -> EdgeSet {
        self.0.iter().chain(other.0.iter()).copied().collect()
    }

    pub fn difference(&self, other: &EdgeSet) -> EdgeSet {
        self.0.iter().copied().filter(|&e| !other.contains(e)).collect()
    }

    pub fn max_id(&self) -> Option<EdgeId> {
        self.0.last().copied()
    }

    /// Fails with `EdgeNotInHost` when an id is not an edge of `g`.
    pub fn check_in(&self, g: &Graph) -> Result<()> {
        match self.max_id() {
            Some(e) if e >= g.size() => Err(Error::EdgeNotInHost(format!("edge id {e}"))),
            _ => Ok(()),
        }
    }

    /// Endpoint labels of every edge, in canonical order.
    pub fn labeled(&self, g: &Graph) -> Vec<(Label, Label)> {
        self.iter().map(|e| g.edge_labels(e)).collect()
    }

    /// Resolves labeled endpoint pairs against `g`.
    pub fn from_labeled(g: &Graph, pairs: &[(Label, Label)]) -> Result<EdgeSet> {
        pairs
            .iter()
            .map(|(a, b)| {
                let missing = || Error::EdgeNotInHost(format!("{{{a},{b}}}"));
                let ia = g.vertex(a).ok_or_else(missing)?;
                let ib = g.vertex(b).ok_or_else(missing)?;
                g.edge_id(ia, ib).ok_or_else(missing)
            })
            .collect()
    }

    /// Vertices touched by at least one edge of the set.
    pub fn covered(&self, g: &Graph) -> Vec<bool> {
        let mut hit = vec![false; g.order()];
        for e in self.iter() {
            let (a, b) = g.edge(e);
            hit[a] = true;
            hit[b] = true;
        }
        hit
    }
}

impl FromIterator<EdgeId> for EdgeSet {
    fn from_iter<I: IntoIterator<Item = EdgeId>>(iter: I) -> Self {
        let mut v: Vec<EdgeId> = iter.into_iter().collect();
        v.sort_unstable();
        v.dedup();
        EdgeSet(v)
    }
}

impl<'a> IntoIterator for &'a EdgeSet {
    type Item = EdgeId;
    type IntoIter = std::iter::Copied<std::slice::Iter<'a, EdgeId>>;

    fn into_iter(self) -> Self::IntoIter {
        self.0.iter().copied()
    }
}

/// True when the two edge sets share no endpoint.
pub fn vertex_disjoint(g: &Graph, a: &EdgeSet, b: &EdgeSet) -> bool {
    let hit = a.covered(g);
    b.iter().all(|e| {
        let (x, y) = g.edge(e);
        !hit[x] && !hit[y]
    })
}
