//! The four standard graph products on `V(G) x V(H)`.
//!
//! Product vertex `(g, h)` has index `g * n_H + h` and label
//! `Label::Pair(label(g), label(h))`.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, Graph, Label, VertexId};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ProductKind {
    Cartesian,
    Strong,
    Direct,
    Lexicographic,
}

impl ProductKind {
    pub const ALL: [ProductKind; 4] = [
        ProductKind::Cartesian,
        ProductKind::Strong,
        ProductKind::Direct,
        ProductKind::Lexicographic,
    ];

    pub fn symbol(self) -> &'static str {
        match self {
            ProductKind::Cartesian => "□",
            ProductKind::Strong => "⊠",
            ProductKind::Direct => "×",
            ProductKind::Lexicographic => "∘",
        }
    }

    /// Adjacency rule on coordinates. `g_adj`/`h_adj` say whether the two
    /// factor coordinates form an edge; equality is passed separately.
    fn adjacent(self, g_eq: bool, g_adj: bool, h_eq: bool, h_adj: bool) -> bool {
        let i = g_adj && h_eq;
        let ii = g_eq && h_adj;
        let iii = g_adj && h_adj;
        match self {
            ProductKind::Cartesian => i || ii,
            ProductKind::Strong => i || ii || iii,
            ProductKind::Direct => iii,
            ProductKind::Lexicographic => g_adj || ii,
        }
    }
}

impl fmt::Display for ProductKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ProductKind::Cartesian => "cartesian",
            ProductKind::Strong => "strong",
            ProductKind::Direct => "direct",
            ProductKind::Lexicographic => "lexicographic",
        })
    }
}

impl FromStr for ProductKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "cartesian" | "box" | "cart" => Ok(ProductKind::Cartesian),
            "strong" => Ok(ProductKind::Strong),
            "direct" | "tensor" => Ok(ProductKind::Direct),
            "lexicographic" | "lex" => Ok(ProductKind::Lexicographic),
            other => Err(Error::InvalidParameter(format!("unknown product kind {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Side {
    Left,
    Right,
}

/// Image of a product item under a projection.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Projection {
    Vertex(VertexId),
    /// Endpoints differ on this side. `factor_edge` is `None` when the pair
    /// is not an edge of the factor (possible for `p_H` on a lexicographic
    /// product).
    Edge {
        ends: (VertexId, VertexId),
        factor_edge: Option<EdgeId>,
    },
    Collapse(VertexId),
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum EdgeClass {
    Cartesian,
    NonCartesian,
}

#[derive(Clone, Debug)]
pub struct ProductGraph {
    pub graph: Graph,
    pub kind: ProductKind,
    pub left: Graph,
    pub right: Graph,
}

pub fn product(g: &Graph, h: &Graph, kind: ProductKind) -> ProductGraph {
    let (ng, nh) = (g.order(), h.order());
    let mut labels = Vec::with_capacity(ng * nh);
    for a in 0..ng {
        for b in 0..nh {
            labels.push(Label::pair(g.label(a).clone(), h.label(b).clone()));
        }
    }
    let mut edges = Vec::new();
    for v in 0..ng * nh {
        let (g1, h1) = (v / nh, v % nh);
        for w in v + 1..ng * nh {
            let (g2, h2) = (w / nh, w % nh);
            if kind.adjacent(g1 == g2, g.has_edge(g1, g2), h1 == h2, h.has_edge(h1, h2)) {
                edges.push((v, w));
            }
        }
    }
    let graph = Graph::new(labels, edges).expect("product of valid graphs is a valid graph");
    ProductGraph {
        graph,
        kind,
        left: g.clone(),
        right: h.clone(),
    }
}

impl ProductGraph {
    pub fn vertex(&self, g: VertexId, h: VertexId) -> VertexId {
        g * self.right.order() + h
    }

    pub fn coords(&self, v: VertexId) -> (VertexId, VertexId) {
        (v / self.right.order(), v % self.right.order())
    }

    /// Product edge id joining `(g1,h1)` and `(g2,h2)`, if any.
    pub fn edge_between(&self, a: (VertexId, VertexId), b: (VertexId, VertexId)) -> Option<EdgeId> {
        self.graph.edge_id(self.vertex(a.0, a.1), self.vertex(b.0, b.1))
    }

    fn factor(&self, side: Side) -> &Graph {
        match side {
            Side::Left => &self.left,
            Side::Right => &self.right,
        }
    }

    fn coord(&self, side: Side, v: VertexId) -> VertexId {
        let (g, h) = self.coords(v);
        match side {
            Side::Left => g,
            Side::Right => h,
        }
    }

    pub fn project_vertex(&self, side: Side, v: VertexId) -> Result<Projection> {
        if v >= self.graph.order() {
            return Err(Error::ItemNotInProduct(format!("vertex {v}")));
        }
        Ok(Projection::Vertex(self.coord(side, v)))
    }

    pub fn project_edge(&self, side: Side, e: EdgeId) -> Result<Projection> {
        if e >= self.graph.size() {
            return Err(Error::ItemNotInProduct(format!("edge {e}")));
        }
        let (v, w) = self.graph.edge(e);
        let (a, b) = (self.coord(side, v), self.coord(side, w));
        if a == b {
            return Ok(Projection::Collapse(a));
        }
        let ends = (a.min(b), a.max(b));
        Ok(Projection::Edge {
            ends,
            factor_edge: self.factor(side).edge_id(a, b),
        })
    }

    /// Layer through `anchor`: `G^anchor` for `Side::Left`, `^anchor H` for
    /// `Side::Right`.
    pub fn layer(&self, side: Side, anchor: VertexId) -> Result<Graph> {
        if self.kind == ProductKind::Direct {
            return Err(Error::UnsupportedKind(self.kind));
        }
        let vertices: Vec<VertexId> = match side {
            Side::Left => {
                if anchor >= self.right.order() {
                    return Err(Error::UnknownAnchor(anchor.to_string()));
                }
                (0..self.left.order()).map(|g| self.vertex(g, anchor)).collect()
            }
            Side::Right => {
                if anchor >= self.left.order() {
                    return Err(Error::UnknownAnchor(anchor.to_string()));
                }
                (0..self.right.order()).map(|h| self.vertex(anchor, h)).collect()
            }
        };
        self.graph.induced_subgraph(&vertices)
    }

    pub fn layer_by_label(&self, side: Side, anchor: &Label) -> Result<Graph> {
        let other = match side {
            Side::Left => &self.right,
            Side::Right => &self.left,
        };
        let v = other
            .vertex(anchor)
            .ok_or_else(|| Error::UnknownAnchor(anchor.to_string()))?;
        self.layer(side, v)
    }

    pub fn classify_edge(&self, e: EdgeId) -> Result<EdgeClass> {
        if e >= self.graph.size() {
            return Err(Error::ItemNotInProduct(format!("edge {e}")));
        }
        let (v, w) = self.graph.edge(e);
        let ((g1, h1), (g2, h2)) = (self.coords(v), self.coords(w));
        Ok(if g1 == g2 || h1 == h2 {
            EdgeClass::Cartesian
        } else {
            EdgeClass::NonCartesian
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::iso::are_isomorphic_small;

    #[test]
    fn k1_factor_is_identity() {
        let h = Graph::cycle(5);
        for kind in [ProductKind::Cartesian, ProductKind::Strong, ProductKind::Lexicographic] {
            let p = product(&Graph::complete(1), &h, kind);
            assert!(are_isomorphic_small(&p.graph, &h).unwrap(), "{kind}");
        }
        let d = product(&Graph::complete(1), &h, ProductKind::Direct);
        assert_eq!(d.graph.size(), 0);
    }

    #[test]
    fn small_identities() {
        let k2 = Graph::complete(2);
        let c4 = product(&k2, &k2, ProductKind::Cartesian);
        assert!(are_isomorphic_small(&c4.graph, &Graph::cycle(4)).unwrap());
        let c6 = product(&k2, &Graph::complete(3), ProductKind::Direct);
        assert!(are_isomorphic_small(&c6.graph, &Graph::cycle(6)).unwrap());
        let k4 = product(&k2, &k2, ProductKind::Strong);
        assert!(are_isomorphic_small(&k4.graph, &Graph::complete(4)).unwrap());
    }

    #[test]
    fn projections_of_cartesian_edge() {
        let k2 = Graph::complete(2);
        let p = product(&k2, &k2, ProductKind::Cartesian);
        let e = p.edge_between((0, 0), (1, 0)).unwrap();
        assert_eq!(
            p.project_edge(Side::Left, e).unwrap(),
            Projection::Edge { ends: (0, 1), factor_edge: Some(0) }
        );
        assert_eq!(p.project_edge(Side::Right, e).unwrap(), Projection::Collapse(0));
        assert!(matches!(p.project_edge(Side::Left, 99), Err(Error::ItemNotInProduct(_))));
    }

    #[test]
    fn layers() {
        let p = product(&Graph::complete(2), &Graph::path(3), ProductKind::Cartesian);
        for h in 0..3 {
            let l = p.layer(Side::Left, h).unwrap();
            assert!(are_isomorphic_small(&l, &Graph::complete(2)).unwrap());
        }
        assert!(matches!(p.layer(Side::Left, 3), Err(Error::UnknownAnchor(_))));
        let d = product(&Graph::complete(2), &Graph::path(3), ProductKind::Direct);
        assert!(matches!(d.layer(Side::Left, 0), Err(Error::UnsupportedKind(ProductKind::Direct))));
    }

    #[test]
    fn strong_k2_edge_classes() {
        let k2 = Graph::complete(2);
        let p = product(&k2, &k2, ProductKind::Strong);
        let classes: Vec<_> = (0..p.graph.size()).map(|e| p.classify_edge(e).unwrap()).collect();
        assert_eq!(classes.iter().filter(|c| **c == EdgeClass::Cartesian).count(), 4);
        assert_eq!(classes.iter().filter(|c| **c == EdgeClass::NonCartesian).count(), 2);
    }

    #[test]
    fn kind_parsing() {
        assert_eq!("lex".parse::<ProductKind>().unwrap(), ProductKind::Lexicographic);
        assert!("sum".parse::<ProductKind>().is_err());
    }
}
