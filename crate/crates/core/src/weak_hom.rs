//! Product k-matchings whose edges project into the factor sets.
//!
//! An edge `e` of `G⋆H` is allowed for `(M_G, M_H)` when, on each side, its
//! projection collapses to a vertex or is an edge of the given factor set.
//! `W_k(G⋆H, M_G, M_H)` is the set of k-matchings made of allowed edges. On
//! a lexicographic product the rule is applied to `p_H` as well, even though
//! `p_H` is not a weak homomorphism there.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Label};
use crate::matching::{max_k_matching_with, OracleReport};
use crate::product::{ProductGraph, Projection, Side};
use crate::search::{self, SearchOptions};

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhpUniverse {
    pub m_g: EdgeSet,
    pub m_h: EdgeSet,
    pub allowed: EdgeSet,
}

fn side_ok(p: &ProductGraph, side: Side, e: EdgeId, m: &EdgeSet) -> bool {
    match p.project_edge(side, e).expect("edge id checked by caller") {
        Projection::Collapse(_) | Projection::Vertex(_) => true,
        Projection::Edge { factor_edge, .. } => factor_edge.is_some_and(|f| m.contains(f)),
    }
}

fn check_factors(p: &ProductGraph, mg: &EdgeSet, mh: &EdgeSet) -> Result<()> {
    for (m, g) in [(mg, &p.left), (mh, &p.right)] {
        m.check_in(g).map_err(|_| Error::EdgeNotInFactor(format!("edge id {}", m.max_id().unwrap_or(0))))?;
    }
    Ok(())
}

pub fn allowed_edges(p: &ProductGraph, mg: &EdgeSet, mh: &EdgeSet) -> Result<WhpUniverse> {
    check_factors(p, mg, mh)?;
    let allowed = (0..p.graph.size())
        .filter(|&e| side_ok(p, Side::Left, e, mg) && side_ok(p, Side::Right, e, mh))
        .collect();
    Ok(WhpUniverse {
        m_g: mg.clone(),
        m_h: mh.clone(),
        allowed,
    })
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WhpCheck {
    pub whp: bool,
    pub first_violation: Option<(Label, Label)>,
}

pub fn is_whp(p: &ProductGraph, m: &EdgeSet, mg: &EdgeSet, mh: &EdgeSet) -> Result<WhpCheck> {
    check_factors(p, mg, mh)?;
    if let Some(e) = m.max_id() {
        if e >= p.graph.size() {
            return Err(Error::ItemNotInProduct(format!("edge id {e}")));
        }
    }
    let bad = m
        .iter()
        .find(|&e| !(side_ok(p, Side::Left, e, mg) && side_ok(p, Side::Right, e, mh)));
    Ok(WhpCheck {
        whp: bad.is_none(),
        first_violation: bad.map(|e| p.graph.edge_labels(e)),
    })
}

/// Largest k-matching inside the allowed universe.
pub fn max_whp_k_matching(p: &ProductGraph, mg: &EdgeSet, mh: &EdgeSet, k: u32, budget: u64) -> Result<OracleReport> {
    let u = allowed_edges(p, mg, mh)?;
    let opts = SearchOptions {
        budget,
        mask: Some(u.allowed),
        ..SearchOptions::default()
    };
    max_k_matching_with(&p.graph, k, &opts)
}

pub const WHP_ENUMERATION_LIMIT: usize = 20;

/// All members of `W_k`, sorted, including the empty set.
pub fn enumerate_whp(p: &ProductGraph, mg: &EdgeSet, mh: &EdgeSet, k: u32) -> Result<Vec<EdgeSet>> {
    let u = allowed_edges(p, mg, mh)?;
    if u.allowed.len() > WHP_ENUMERATION_LIMIT {
        return Err(Error::SizeLimitExceeded {
            what: "allowed edge count",
            actual: u.allowed.len(),
            limit: WHP_ENUMERATION_LIMIT,
        });
    }
    search::enumerate(&p.graph, k, Some(&u.allowed))
}
