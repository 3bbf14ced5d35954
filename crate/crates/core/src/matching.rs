//! k-matching validation and classification.

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, Label, VertexId};
use crate::search::{self, SearchOptions};

pub fn check_k(k: u32) -> Result<()> {
    if k == 0 {
        return Err(Error::InvalidK(k));
    }
    Ok(())
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct DegreeReport {
    pub valid: bool,
    pub k: u32,
    pub degrees: Vec<u32>,
    /// Vertices whose degree is neither 0 nor k.
    pub offending: Vec<VertexId>,
}

pub fn validate_k_matching(g: &Graph, m: &EdgeSet, k: u32) -> Result<DegreeReport> {
    check_k(k)?;
    m.check_in(g)?;
    let degrees = g.degrees_in(m);
    let offending: Vec<VertexId> = degrees
        .iter()
        .enumerate()
        .filter(|&(_, &d)| d != 0 && d != k)
        .map(|(v, _)| v)
        .collect();
    Ok(DegreeReport {
        valid: offending.is_empty(),
        k,
        degrees,
        offending,
    })
}

pub fn is_k_matching(g: &Graph, m: &EdgeSet, k: u32) -> bool {
    validate_k_matching(g, m, k).is_ok_and(|r| r.valid)
}

pub fn unmatched_vertices(g: &Graph, m: &EdgeSet) -> Result<Vec<VertexId>> {
    m.check_in(g)?;
    Ok(m.covered(g)
        .into_iter()
        .enumerate()
        .filter(|&(_, hit)| !hit)
        .map(|(v, _)| v)
        .collect())
}

pub fn unmatched_count(g: &Graph, m: &EdgeSet) -> usize {
    m.covered(g).iter().filter(|&&hit| !hit).count()
}

/// The common non-zero degree of `m`, if every covered vertex has the same
/// degree. `None` for the empty set and for non-uniform sets.
pub fn uniform_degree(g: &Graph, m: &EdgeSet) -> Option<u32> {
    let mut k = None;
    for d in g.degrees_in(m) {
        if d == 0 {
            continue;
        }
        match k {
            None => k = Some(d),
            Some(x) if x != d => return None,
            _ => {}
        }
    }
    k
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct MatchingClass {
    pub k: u32,
    pub valid: bool,
    pub size: usize,
    pub unmatched: usize,
    pub perfect: bool,
    pub near_perfect: bool,
    /// `None` when the extension search ran out of budget.
    pub maximal: Option<bool>,
}

pub fn classify_matching(g: &Graph, m: &EdgeSet, k: u32) -> Result<MatchingClass> {
    classify_matching_with(g, m, k, search::DEFAULT_BUDGET)
}

pub fn classify_matching_with(g: &Graph, m: &EdgeSet, k: u32, budget: u64) -> Result<MatchingClass> {
    let report = validate_k_matching(g, m, k)?;
    let unmatched = unmatched_count(g, m);
    if !report.valid {
        return Ok(MatchingClass {
            k,
            valid: false,
            size: m.len(),
            unmatched,
            perfect: false,
            near_perfect: false,
            maximal: Some(false),
        });
    }
    Ok(MatchingClass {
        k,
        valid: true,
        size: m.len(),
        unmatched,
        perfect: unmatched == 0,
        near_perfect: unmatched == 1,
        maximal: is_maximal(g, m, k, budget)?,
    })
}

/// Whether no k-matching strictly contains `m`. Vertices covered by `m`
/// already have degree k, so any extension is a non-empty k-matching of the
/// subgraph induced by the unmatched vertices.
pub fn is_maximal(g: &Graph, m: &EdgeSet, k: u32, budget: u64) -> Result<Option<bool>> {
    let free = unmatched_vertices(g, m)?;
    if free.len() <= k as usize {
        return Ok(Some(true));
    }
    let sub = g.induced_subgraph(&free)?;
    let opts = SearchOptions {
        budget,
        stop_at: Some(1),
        ..SearchOptions::default()
    };
    let r = search::search(&sub, k, &opts)?;
    if r.best.is_some_and(|b| !b.is_empty()) {
        return Ok(Some(false));
    }
    Ok(r.exhaustive.then_some(true))
}

/// Exact answer of the k-matching number and one canonical maximum witness.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OracleReport {
    pub k: u32,
    pub m_k: usize,
    pub u_k: usize,
    pub witness: Vec<(Label, Label)>,
    #[serde(skip)]
    pub witness_ids: EdgeSet,
    pub exhaustive: bool,
    pub nodes: u64,
}

pub fn max_k_matching(g: &Graph, k: u32, budget: u64) -> Result<OracleReport> {
    max_k_matching_with(g, k, &SearchOptions { budget, ..SearchOptions::default() })
}

pub fn max_k_matching_with(g: &Graph, k: u32, opts: &SearchOptions) -> Result<OracleReport> {
    check_k(k)?;
    let r = search::search(g, k, opts)?;
    let witness_ids = r.best.unwrap_or_default();
    Ok(OracleReport {
        k,
        m_k: witness_ids.len(),
        u_k: unmatched_count(g, &witness_ids),
        witness: witness_ids.labeled(g),
        witness_ids,
        exhaustive: r.exhaustive,
        nodes: r.nodes,
    })
}

impl OracleReport {
    /// Like `self` but failing with `BudgetExceeded` unless exhaustive.
    pub fn certified(self, budget: u64) -> Result<Self> {
        if self.exhaustive {
            Ok(self)
        } else {
            Err(Error::BudgetExceeded(budget))
        }
    }
}

pub const ENUMERATION_EDGE_LIMIT: usize = 20;

/// Every k-matching of `g` (including the empty one) in canonical order.
pub fn enumerate_k_matchings(g: &Graph, k: u32) -> Result<Vec<EdgeSet>> {
    check_k(k)?;
    if g.size() > ENUMERATION_EDGE_LIMIT {
        return Err(Error::SizeLimitExceeded {
            what: "edge count for enumeration",
            actual: g.size(),
            limit: ENUMERATION_EDGE_LIMIT,
        });
    }
    search::enumerate(g, k, None)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn set(ids: &[usize]) -> EdgeSet {
        ids.iter().copied().collect()
    }

    #[test]
    fn validation() {
        let c4 = Graph::cycle(4);
        assert!(validate_k_matching(&c4, &EdgeSet::new(), 3).unwrap().valid);
        assert!(validate_k_matching(&c4, &c4.all_edges(), 2).unwrap().valid);
        let p3 = Graph::path(3);
        let r = validate_k_matching(&p3, &p3.all_edges(), 1).unwrap();
        assert!(!r.valid);
        assert_eq!(r.offending, vec![1]);
        assert!(matches!(validate_k_matching(&p3, &set(&[5]), 1), Err(Error::EdgeNotInHost(_))));
        assert!(matches!(validate_k_matching(&p3, &set(&[0]), 0), Err(Error::InvalidK(0))));
    }

    #[test]
    fn unmatched() {
        let p3 = Graph::path(3);
        assert_eq!(unmatched_vertices(&p3, &set(&[0])).unwrap(), vec![2]);
        assert_eq!(unmatched_vertices(&Graph::complete(3), &EdgeSet::new()).unwrap(), vec![0, 1, 2]);
        let c4 = Graph::cycle(4);
        assert!(unmatched_vertices(&c4, &c4.all_edges()).unwrap().is_empty());
    }

    #[test]
    fn classification() {
        let k2 = Graph::complete(2);
        let c = classify_matching(&k2, &set(&[0]), 1).unwrap();
        assert!(c.valid && c.perfect && c.maximal == Some(true));
        let c = classify_matching(&Graph::path(3), &set(&[0]), 1).unwrap();
        assert!(c.valid && c.near_perfect && c.maximal == Some(true));
        let p4 = Graph::path(4);
        let c = classify_matching(&p4, &set(&[0]), 1).unwrap();
        assert_eq!(c.maximal, Some(false));
    }

    #[test]
    fn oracle_small() {
        let r = max_k_matching(&Graph::star(3), 1, 1000).unwrap();
        assert_eq!((r.m_k, r.u_k, r.exhaustive), (1, 2, true));
        let k4 = Graph::complete(4);
        assert_eq!(max_k_matching(&k4, 3, 1000).unwrap().m_k, 6);
        let r = max_k_matching(&k4, 2, 1000).unwrap();
        assert_eq!((r.m_k, r.u_k), (4, 0));
    }

    #[test]
    fn enumeration() {
        assert_eq!(enumerate_k_matchings(&Graph::complete(2), 1).unwrap(), vec![set(&[]), set(&[0])]);
        assert_eq!(enumerate_k_matchings(&Graph::path(3), 1).unwrap().len(), 3);
        let k3 = Graph::complete(3);
        assert_eq!(enumerate_k_matchings(&k3, 2).unwrap(), vec![set(&[]), k3.all_edges()]);
        assert!(matches!(
            enumerate_k_matchings(&Graph::complete(7), 1),
            Err(Error::SizeLimitExceeded { .. })
        ));
    }

    #[test]
    fn uniform() {
        let c4 = Graph::cycle(4);
        assert_eq!(uniform_degree(&c4, &c4.all_edges()), Some(2));
        assert_eq!(uniform_degree(&c4, &EdgeSet::new()), None);
        assert_eq!(uniform_degree(&Graph::path(3), &set(&[0, 1])), None);
    }
}
