//! The three product constructions built from factor edge sets.
//!
//! For `M_G ⊆ E(G)`, `M_H ⊆ E(H)` with unmatched sets `U_G`, `U_H`:
//! - `box_g` copies `M_G` into every G-layer, `fill_g` copies `M_H` into the
//!   H-layers of the vertices in `U_G`; `box_h`/`fill_h` are the mirror sets.
//! - `fbast` is `box_g ∪ fill_g` (orientation GH) or `box_h ∪ fill_h` (HG).
//! - `fast` joins `(g,h)` to `(g',h')` for every `{g,g'} ∈ M_G`,
//!   `{h,h'} ∈ M_H`, i.e. both diagonals of each edge pair.
//! - `fcast` is `fast ∪ fill_g ∪ fill_h`.
//!
//! The inputs need not be matchings; [`predict`] and
//! [`classify_construction`] say when the result is a k-matching using only
//! factor-level facts.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, Label};
use crate::matching::{check_k, unmatched_count, uniform_degree};
use crate::product::{ProductGraph, ProductKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ConstructionKind {
    Boxast,
    Ast,
    Circledast,
}

impl ConstructionKind {
    pub const ALL: [ConstructionKind; 3] = [ConstructionKind::Boxast, ConstructionKind::Ast, ConstructionKind::Circledast];

    pub fn supports(self, kind: ProductKind) -> bool {
        use ProductKind::*;
        match self {
            ConstructionKind::Boxast => matches!(kind, Cartesian | Strong | Lexicographic),
            ConstructionKind::Ast => matches!(kind, Strong | Direct | Lexicographic),
            ConstructionKind::Circledast => matches!(kind, Strong | Lexicographic),
        }
    }

    fn require(self, kind: ProductKind) -> Result<()> {
        if self.supports(kind) {
            Ok(())
        } else {
            Err(Error::IncompatibleProduct { construction: self, kind })
        }
    }
}

impl fmt::Display for ConstructionKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            ConstructionKind::Boxast => "boxast",
            ConstructionKind::Ast => "ast",
            ConstructionKind::Circledast => "circledast",
        })
    }
}

impl FromStr for ConstructionKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "boxast" | "fbast" => Ok(ConstructionKind::Boxast),
            "ast" | "fast" => Ok(ConstructionKind::Ast),
            "circledast" | "fcast" => Ok(ConstructionKind::Circledast),
            other => Err(Error::InvalidParameter(format!("unknown construction {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Orientation {
    #[default]
    #[serde(rename = "gh")]
    GH,
    #[serde(rename = "hg")]
    HG,
}

impl FromStr for Orientation {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "gh" => Ok(Orientation::GH),
            "hg" => Ok(Orientation::HG),
            other => Err(Error::InvalidParameter(format!("unknown orientation {other:?}"))),
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum PartName {
    BoxG,
    FillG,
    BoxH,
    FillH,
    Diagonal,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Part {
    pub name: PartName,
    pub edges: EdgeSet,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConstructionResult {
    pub kind: ConstructionKind,
    pub product: ProductKind,
    pub orientation: Option<Orientation>,
    pub edges: EdgeSet,
    pub parts: Vec<Part>,
}

impl ConstructionResult {
    pub fn len(&self) -> usize {
        self.edges.len()
    }

    pub fn is_empty(&self) -> bool {
        self.edges.is_empty()
    }

    pub fn part(&self, name: PartName) -> Option<&EdgeSet> {
        self.parts.iter().find(|p| p.name == name).map(|p| &p.edges)
    }

    pub fn labeled(&self, p: &ProductGraph) -> Vec<(Label, Label)> {
        self.edges.labeled(&p.graph)
    }
}

fn check_factor_sets(p: &ProductGraph, mg: &EdgeSet, mh: &EdgeSet) -> Result<()> {
    for (m, g, side) in [(mg, &p.left, "left"), (mh, &p.right, "right")] {
        if let Some(e) = m.max_id() {
            if e >= g.size() {
                return Err(Error::EdgeNotInFactor(format!("{side} edge id {e}")));
            }
        }
    }
    Ok(())
}

fn unmatched(g: &Graph, m: &EdgeSet) -> Vec<usize> {
    m.covered(g)
        .iter()
        .enumerate()
        .filter(|&(_, &hit)| !hit)
        .map(|(v, _)| v)
        .collect()
}

fn link(p: &ProductGraph, a: (usize, usize), b: (usize, usize)) -> usize {
    p.edge_between(a, b).expect("construction edge missing from product")
}

pub fn box_g(p: &ProductGraph, mg: &EdgeSet) -> EdgeSet {
    let mut out = Vec::new();
    for e in mg {
        let (g1, g2) = p.left.edge(e);
        for h in 0..p.right.order() {
            out.push(link(p, (g1, h), (g2, h)));
        }
    }
    out.into_iter().collect()
}

pub fn box_h(p: &ProductGraph, mh: &EdgeSet) -> EdgeSet {
    let mut out = Vec::new();
    for e in mh {
        let (h1, h2) = p.right.edge(e);
        for g in 0..p.left.order() {
            out.push(link(p, (g, h1), (g, h2)));
        }
    }
    out.into_iter().collect()
}

pub fn fill_g(p: &ProductGraph, mg: &EdgeSet, mh: &EdgeSet) -> EdgeSet {
    let mut out = Vec::new();
    for u in unmatched(&p.left, mg) {
        for e in mh {
            let (h1, h2) = p.right.edge(e);
            out.push(link(p, (u, h1), (u, h2)));
        }
    }
    out.into_iter().collect()
}

pub fn fill_h(p: &ProductGraph, mg: &EdgeSet, mh: &EdgeSet) -> EdgeSet {
    let mut out = Vec::new();
    for u in unmatched(&p.right, mh) {
        for e in mg {
            let (g1, g2) = p.left.edge(e);
            out.push(link(p, (g1, u), (g2, u)));
        }
    }
    out.into_iter().collect()
}

pub fn diagonal(p: &ProductGraph, mg: &EdgeSet, mh: &EdgeSet) -> EdgeSet {
    let mut out = Vec::new();
    for e in mg {
        let (g1, g2) = p.left.edge(e);
        for f in mh {
            let (h1, h2) = p.right.edge(f);
            out.push(link(p, (g1, h1), (g2, h2)));
            out.push(link(p, (g1, h2), (g2, h1)));
        }
    }
    out.into_iter().collect()
}

fn assemble(kind: ConstructionKind, p: &ProductGraph, orientation: Option<Orientation>, parts: Vec<Part>) -> ConstructionResult {
    let edges = parts.iter().flat_map(|part| part.edges.iter()).collect();
    ConstructionResult {
        kind,
        product: p.kind,
        orientation,
        edges,
        parts,
    }
}

pub fn fbast(p: &ProductGraph, mg: &EdgeSet, mh: &EdgeSet, orientation: Orientation) -> Result<ConstructionResult> {
    ConstructionKind::Boxast.require(p.kind)?;
    check_factor_sets(p, mg, mh)?;
    let parts = match orientation {
        Orientation::GH => vec![
            Part { name: PartName::BoxG, edges: box_g(p, mg) },
            Part { name: PartName::FillG, edges: fill_g(p, mg, mh) },
        ],
        Orientation::HG => vec![
            Part { name: PartName::BoxH, edges: box_h(p, mh) },
            Part { name: PartName::FillH, edges: fill_h(p, mg, mh) },
        ],
    };
    Ok(assemble(ConstructionKind::Boxast, p, Some(orientation), parts))
}

pub fn fast(p: &ProductGraph, mg: &EdgeSet, mh: &EdgeSet) -> Result<ConstructionResult> {
    ConstructionKind::Ast.require(p.kind)?;
    check_factor_sets(p, mg, mh)?;
    let parts = vec![Part { name: PartName::Diagonal, edges: diagonal(p, mg, mh) }];
    Ok(assemble(ConstructionKind::Ast, p, None, parts))
}

pub fn fcast(p: &ProductGraph, mg: &EdgeSet, mh: &EdgeSet) -> Result<ConstructionResult> {
    ConstructionKind::Circledast.require(p.kind)?;
    check_factor_sets(p, mg, mh)?;
    let parts = vec![
        Part { name: PartName::Diagonal, edges: diagonal(p, mg, mh) },
        Part { name: PartName::FillG, edges: fill_g(p, mg, mh) },
        Part { name: PartName::FillH, edges: fill_h(p, mg, mh) },
    ];
    Ok(assemble(ConstructionKind::Circledast, p, None, parts))
}

pub fn construct(
    kind: ConstructionKind,
    p: &ProductGraph,
    mg: &EdgeSet,
    mh: &EdgeSet,
    orientation: Orientation,
) -> Result<ConstructionResult> {
    match kind {
        ConstructionKind::Boxast => fbast(p, mg, mh, orientation),
        ConstructionKind::Ast => fast(p, mg, mh),
        ConstructionKind::Circledast => fcast(p, mg, mh),
    }
}

/// When one side is a perfect k-matching, the other side is replaced by the
/// empty set; then both `fbast` orientations coincide.
pub fn normalize_boxast(left: &Graph, right: &Graph, mg: &EdgeSet, mh: &EdgeSet, k: u32) -> (EdgeSet, EdgeSet) {
    if FactorFacts::of(left, mg).is_perfect(k) {
        (mg.clone(), EdgeSet::new())
    } else if FactorFacts::of(right, mh).is_perfect(k) {
        (EdgeSet::new(), mh.clone())
    } else {
        (mg.clone(), mh.clone())
    }
}

/// Degree facts about a factor edge set.
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct FactorFacts {
    pub size: usize,
    pub order: usize,
    pub unmatched: usize,
    pub uniform: Option<u32>,
}

impl FactorFacts {
    pub fn of(g: &Graph, m: &EdgeSet) -> Self {
        FactorFacts {
            size: m.len(),
            order: g.order(),
            unmatched: unmatched_count(g, m),
            uniform: uniform_degree(g, m),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.size == 0
    }

    pub fn is_k_matching(&self, k: u32) -> bool {
        self.is_empty() || self.uniform == Some(k)
    }

    pub fn is_perfect(&self, k: u32) -> bool {
        self.uniform == Some(k) && self.unmatched == 0
    }
}

/// Which factor-level condition makes a construction a k-matching.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum ConditionTag {
    /// `fbast`: the primary side is a perfect k-matching, the other side is
    /// arbitrary.
    #[serde(rename = "perfect_primary")]
    PerfectPrimary,
    /// `fbast`: both sides are k-matchings.
    #[serde(rename = "both_k_matchings")]
    BothKMatchings,
    /// `fast`: a k_G-matching and a k_H-matching with `k_G * k_H = k`.
    #[serde(rename = "divisor_pair")]
    DivisorPair,
    #[serde(rename = "M1.a")]
    M1a,
    #[serde(rename = "M1.b")]
    M1b,
    #[serde(rename = "M2.a")]
    M2a,
    #[serde(rename = "M2.b")]
    M2b,
    #[serde(rename = "M3")]
    M3,
    #[serde(rename = "M4")]
    M4,
    /// Valid only because the result is empty.
    #[serde(rename = "none")]
    None,
}

impl fmt::Display for ConditionTag {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = serde_json::to_value(self).expect("tag serializes");
        f.write_str(s.as_str().unwrap_or_default())
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Prediction {
    pub condition: ConditionTag,
    pub k_g: u32,
    pub k_h: u32,
}

fn divisor_pairs(k: u32) -> impl Iterator<Item = (u32, u32)> {
    (1..=k).filter(move |d| k % d == 0).map(move |d| (d, k / d))
}

/// Decides from factor facts alone whether the construction is a k-matching
/// of the product, and under which condition. `None` means it is not.
pub fn predict(
    kind: ConstructionKind,
    orientation: Orientation,
    g: &FactorFacts,
    h: &FactorFacts,
    k: u32,
) -> Option<Prediction> {
    let tag = |condition, k_g, k_h| Some(Prediction { condition, k_g, k_h });
    match kind {
        ConstructionKind::Boxast => {
            let (primary, other) = match orientation {
                Orientation::GH => (g, h),
                Orientation::HG => (h, g),
            };
            if primary.is_perfect(k) {
                tag(ConditionTag::PerfectPrimary, k, k)
            } else if primary.is_k_matching(k) && other.is_k_matching(k) {
                tag(ConditionTag::BothKMatchings, k, k)
            } else {
                None
            }
        }
        ConstructionKind::Ast => {
            if let Some((a, b)) = divisor_pairs(k).find(|&(a, b)| g.is_k_matching(a) && h.is_k_matching(b)) {
                return tag(ConditionTag::DivisorPair, a, b);
            }
            if g.is_empty() || h.is_empty() {
                return tag(ConditionTag::None, 0, 0);
            }
            None
        }
        ConstructionKind::Circledast => {
            if g.is_empty() && h.is_empty() {
                return tag(ConditionTag::M3, 1, 1);
            }
            if g.is_perfect(k) && !h.is_empty() && h.is_k_matching(1) {
                return tag(ConditionTag::M1a, k, 1);
            }
            if !g.is_empty() && g.is_k_matching(k) && h.is_empty() {
                return tag(ConditionTag::M1b, k, 1);
            }
            if !g.is_empty() && g.is_k_matching(1) && h.is_perfect(k) {
                return tag(ConditionTag::M2a, 1, k);
            }
            if g.is_empty() && !h.is_empty() && h.is_k_matching(k) {
                return tag(ConditionTag::M2b, 1, k);
            }
            if k == 1 && g.is_k_matching(1) && h.is_k_matching(1) {
                return tag(ConditionTag::M3, 1, 1);
            }
            divisor_pairs(k)
                .find(|&(a, b)| g.is_perfect(a) && h.is_perfect(b))
                .and_then(|(a, b)| tag(ConditionTag::M4, a, b))
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Classification {
    pub is_k_matching: bool,
    pub k: Option<u32>,
    pub k_g: Option<u32>,
    pub k_h: Option<u32>,
    pub condition: ConditionTag,
}

/// Finds the smallest k for which [`predict`] accepts the pair.
pub fn classify_construction(
    kind: ConstructionKind,
    p: &ProductGraph,
    mg: &EdgeSet,
    mh: &EdgeSet,
    orientation: Orientation,
) -> Result<Classification> {
    kind.require(p.kind)?;
    check_factor_sets(p, mg, mh)?;
    let g = FactorFacts::of(&p.left, mg);
    let h = FactorFacts::of(&p.right, mh);
    let mut candidates: Vec<u32> = vec![1];
    let (dg, dh) = (g.uniform.unwrap_or(1), h.uniform.unwrap_or(1));
    candidates.extend([dg, dh, dg * dh]);
    candidates.sort_unstable();
    candidates.dedup();
    for k in candidates {
        if let Some(pr) = predict(kind, orientation, &g, &h, k) {
            let factored = pr.condition != ConditionTag::None;
            return Ok(Classification {
                is_k_matching: true,
                k: Some(k),
                k_g: factored.then_some(pr.k_g),
                k_h: factored.then_some(pr.k_h),
                condition: pr.condition,
            });
        }
    }
    Ok(Classification {
        is_k_matching: false,
        k: None,
        k_g: None,
        k_h: None,
        condition: ConditionTag::None,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SizeInputs {
    pub n_g: usize,
    pub n_h: usize,
    pub m_g: usize,
    pub m_h: usize,
    pub u_g: usize,
    pub u_h: usize,
    pub k_g: u32,
    pub k_h: u32,
}

impl SizeInputs {
    pub fn of(g: &Graph, h: &Graph, mg: &EdgeSet, mh: &EdgeSet, k_g: u32, k_h: u32) -> Self {
        SizeInputs {
            n_g: g.order(),
            n_h: h.order(),
            m_g: mg.len(),
            m_h: mh.len(),
            u_g: unmatched_count(g, mg),
            u_h: unmatched_count(h, mh),
            k_g,
            k_h,
        }
    }
}

fn consistent(side: &str, m: usize, n: usize, u: usize, k: u32) -> Result<()> {
    if u > n || 2 * m != k as usize * (n - u) {
        return Err(Error::InconsistentInputs(format!(
            "{side}: {m} edges cannot be a {k}-matching on {n} vertices with {u} unmatched"
        )));
    }
    Ok(())
}

/// Closed-form size of a valid construction. For `fbast`, `k_g` is the
/// matching degree and `k_h` must equal it unless the primary side is
/// perfect. For `fast` and `fcast` the product degree is `k_g * k_h`.
pub fn predicted_size(kind: ConstructionKind, orientation: Orientation, s: &SizeInputs) -> Result<usize> {
    check_k(s.k_g)?;
    check_k(s.k_h)?;
    let half = |k: usize, x: usize| k * x / 2;
    match kind {
        ConstructionKind::Boxast => {
            let k = s.k_g;
            let (pm, pn, pu, om, on, ou) = match orientation {
                Orientation::GH => (s.m_g, s.n_g, s.u_g, s.m_h, s.n_h, s.u_h),
                Orientation::HG => (s.m_h, s.n_h, s.u_h, s.m_g, s.n_g, s.u_g),
            };
            consistent("primary factor", pm, pn, pu, k)?;
            if pu > 0 {
                if s.k_h != s.k_g {
                    return Err(Error::InconsistentInputs("fbast needs k_g = k_h".into()));
                }
                consistent("secondary factor", om, on, ou, k)?;
            }
            let eff_ou = if pu > 0 { ou } else { 0 };
            Ok(half(k as usize, pn * on - pu * eff_ou))
        }
        ConstructionKind::Ast => {
            consistent("left factor", s.m_g, s.n_g, s.u_g, s.k_g)?;
            consistent("right factor", s.m_h, s.n_h, s.u_h, s.k_h)?;
            let k = (s.k_g * s.k_h) as usize;
            Ok(half(k, (s.n_g - s.u_g) * (s.n_h - s.u_h)))
        }
        ConstructionKind::Circledast => {
            consistent("left factor", s.m_g, s.n_g, s.u_g, s.k_g)?;
            consistent("right factor", s.m_h, s.n_h, s.u_h, s.k_h)?;
            let k = (s.k_g * s.k_h) as usize;
            Ok(half(k, s.n_g * s.n_h - s.u_g * s.u_h))
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::is_k_matching;
    use crate::product::product;

    fn set(ids: &[usize]) -> EdgeSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn fbast_k2_p3() {
        let p = product(&Graph::complete(2), &Graph::path(3), ProductKind::Cartesian);
        let gh = fbast(&p, &set(&[0]), &set(&[0]), Orientation::GH).unwrap();
        assert_eq!(gh.len(), 3);
        assert!(gh.part(PartName::FillG).unwrap().is_empty());
        let hg = fbast(&p, &set(&[0]), &set(&[0]), Orientation::HG).unwrap();
        assert_eq!(hg.len(), 3);
        let empty = fbast(&p, &set(&[]), &set(&[]), Orientation::GH).unwrap();
        assert!(empty.is_empty());
    }

    #[test]
    fn fast_diagonals() {
        let k2 = Graph::complete(2);
        let p = product(&k2, &k2, ProductKind::Direct);
        let r = fast(&p, &set(&[0]), &set(&[0])).unwrap();
        assert_eq!(r.len(), 2);
        assert!(matches!(
            fast(&product(&k2, &k2, ProductKind::Cartesian), &set(&[0]), &set(&[0])),
            Err(Error::IncompatibleProduct { .. })
        ));
        assert!(fast(&p, &set(&[]), &set(&[0])).unwrap().is_empty());
    }

    #[test]
    fn fcast_k2_p3() {
        let p = product(&Graph::complete(2), &Graph::path(3), ProductKind::Strong);
        let r = fcast(&p, &set(&[0]), &set(&[0])).unwrap();
        assert_eq!(r.part(PartName::Diagonal).unwrap().len(), 2);
        assert!(r.part(PartName::FillG).unwrap().is_empty());
        assert_eq!(r.part(PartName::FillH).unwrap().len(), 1);
        assert_eq!(r.len(), 3);
        assert!(is_k_matching(&p.graph, &r.edges, 1));
        let c = classify_construction(ConstructionKind::Circledast, &p, &set(&[0]), &set(&[0]), Orientation::GH).unwrap();
        assert_eq!(c.condition, ConditionTag::M1a);
    }

    #[test]
    fn classify_examples() {
        let k3 = Graph::complete(3);
        let p = product(&Graph::complete(2), &k3, ProductKind::Cartesian);
        let c = classify_construction(ConstructionKind::Boxast, &p, &set(&[0]), &k3.all_edges(), Orientation::GH).unwrap();
        assert!(c.is_k_matching);
        assert_eq!(c.condition, ConditionTag::PerfectPrimary);
        let r = fbast(&p, &set(&[0]), &k3.all_edges(), Orientation::GH).unwrap();
        assert!(is_k_matching(&p.graph, &r.edges, 1));

        let (c3, c4) = (Graph::cycle(3), Graph::cycle(4));
        let p = product(&c3, &c4, ProductKind::Strong);
        let c = classify_construction(ConstructionKind::Circledast, &p, &c3.all_edges(), &c4.all_edges(), Orientation::GH)
            .unwrap();
        assert_eq!((c.is_k_matching, c.k, c.condition), (true, Some(4), ConditionTag::M4));
        let r = fcast(&p, &c3.all_edges(), &c4.all_edges()).unwrap();
        assert!(is_k_matching(&p.graph, &r.edges, 4));

        let c = classify_construction(ConstructionKind::Circledast, &p, &set(&[]), &set(&[]), Orientation::GH).unwrap();
        assert_eq!((c.k, c.condition), (Some(1), ConditionTag::M3));
    }

    #[test]
    fn sizes() {
        let s = SizeInputs { n_g: 2, n_h: 3, m_g: 1, m_h: 1, u_g: 0, u_h: 1, k_g: 1, k_h: 1 };
        assert_eq!(predicted_size(ConstructionKind::Boxast, Orientation::GH, &s).unwrap(), 3);
        assert_eq!(predicted_size(ConstructionKind::Ast, Orientation::GH, &s).unwrap(), 2);
        let s = SizeInputs { n_g: 3, n_h: 4, m_g: 3, m_h: 4, u_g: 0, u_h: 0, k_g: 2, k_h: 2 };
        assert_eq!(predicted_size(ConstructionKind::Circledast, Orientation::GH, &s).unwrap(), 24);
        let bad = SizeInputs { m_g: 5, ..s };
        assert!(matches!(
            predicted_size(ConstructionKind::Ast, Orientation::GH, &bad),
            Err(Error::InconsistentInputs(_))
        ));
    }

    #[test]
    fn normalization() {
        let (k2, p3) = (Graph::complete(2), Graph::path(3));
        let (a, b) = normalize_boxast(&k2, &p3, &set(&[0]), &set(&[1]), 1);
        assert_eq!((a, b), (set(&[0]), set(&[])));
        let (a, b) = normalize_boxast(&p3, &k2, &set(&[1]), &set(&[0]), 1);
        assert_eq!((a, b), (set(&[]), set(&[0])));
    }
}
