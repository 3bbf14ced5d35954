//! Well-behavedness of k-matching numbers of products.
//!
//! `m_k(G⋆H)` is well-behaved for a construction when some construction
//! built from factor sets is a maximum k-matching of the product. Every
//! verdict here is tri-state: a non-exhaustive oracle run yields `unknown`.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::construct::{
    fast, fbast, fcast, normalize_boxast, predict, ConditionTag, ConstructionKind, FactorFacts, Orientation,
};
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph, Label};
use crate::matching::{enumerate_k_matchings, is_k_matching, max_k_matching, max_k_matching_with, OracleReport};
use crate::product::{product, ProductGraph, ProductKind};
use crate::search::SearchOptions;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Verdict {
    True,
    False,
    Unknown,
}

impl From<bool> for Verdict {
    fn from(b: bool) -> Self {
        if b {
            Verdict::True
        } else {
            Verdict::False
        }
    }
}

impl Verdict {
    pub fn known(self) -> Option<bool> {
        match self {
            Verdict::True => Some(true),
            Verdict::False => Some(false),
            Verdict::Unknown => None,
        }
    }
}

impl fmt::Display for Verdict {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Verdict::True => "true",
            Verdict::False => "false",
            Verdict::Unknown => "unknown",
        })
    }
}

/// Oracle answers and (optionally) all k-matchings of one factor for one k.
#[derive(Clone, Debug)]
pub struct FactorK {
    pub k: u32,
    pub oracle: OracleReport,
    pub matchings: Option<Vec<EdgeSet>>,
}

impl FactorK {
    pub fn all(&self) -> Result<&[EdgeSet]> {
        self.matchings.as_deref().ok_or(Error::SizeLimitExceeded {
            what: "factor edge count for enumeration",
            actual: usize::MAX,
            limit: crate::matching::ENUMERATION_EDGE_LIMIT,
        })
    }

    pub fn maximum(&self) -> Result<Vec<&EdgeSet>> {
        Ok(self.all()?.iter().filter(|m| m.len() == self.oracle.m_k).collect())
    }
}

/// Per-factor cache for k = 1..=max_k.
#[derive(Clone, Debug)]
pub struct FactorData {
    pub graph: Graph,
    per_k: Vec<FactorK>,
}

impl FactorData {
    pub fn new(graph: &Graph, max_k: u32, budget: u64) -> Result<Self> {
        crate::matching::check_k(max_k)?;
        let enumerable = graph.size() <= crate::matching::ENUMERATION_EDGE_LIMIT;
        let per_k = (1..=max_k)
            .map(|k| {
                Ok(FactorK {
                    k,
                    oracle: max_k_matching(graph, k, budget)?,
                    matchings: if enumerable { Some(enumerate_k_matchings(graph, k)?) } else { None },
                })
            })
            .collect::<Result<Vec<_>>>()?;
        Ok(FactorData {
            graph: graph.clone(),
            per_k,
        })
    }

    pub fn max_k(&self) -> u32 {
        self.per_k.len() as u32
    }

    pub fn k(&self, k: u32) -> &FactorK {
        &self.per_k[k as usize - 1]
    }

    fn exhaustive_up_to(&self, k: u32) -> bool {
        self.per_k[..k as usize].iter().all(|f| f.oracle.exhaustive)
    }

    /// Sets that are d-matchings for some divisor d of k, deduplicated and
    /// in canonical order.
    fn divisor_matchings(&self, k: u32) -> Result<Vec<EdgeSet>> {
        let mut out = Vec::new();
        for d in (1..=k).filter(|d| k % d == 0) {
            out.extend(self.k(d).all()?.iter().cloned());
        }
        out.sort();
        out.dedup();
        Ok(out)
    }
}

fn divisor_pairs(k: u32) -> Vec<(u32, u32)> {
    (1..=k).filter(|d| k % d == 0).map(|d| (d, k / d)).collect()
}

/// Maximum k-matching of a product seeded with the largest valid candidate
/// from factor witnesses.
pub fn product_oracle(p: &ProductGraph, k: u32, hints: &[EdgeSet], budget: u64) -> Result<OracleReport> {
    let hint = hints
        .iter()
        .filter(|h| is_k_matching(&p.graph, h, k))
        .max_by_key(|h| h.len())
        .cloned();
    let opts = SearchOptions {
        budget,
        hint,
        ..SearchOptions::default()
    };
    max_k_matching_with(&p.graph, k, &opts)
}

fn witness_hints(p: &ProductGraph, g: &FactorData, h: &FactorData, k: u32) -> Vec<EdgeSet> {
    let mut hints = Vec::new();
    let (wg, wh) = (&g.k(k).oracle.witness_ids, &h.k(k).oracle.witness_ids);
    if ConstructionKind::Boxast.supports(p.kind) {
        let (a, b) = normalize_boxast(&p.left, &p.right, wg, wh, k);
        if let Ok(r) = fbast(p, &a, &b, Orientation::GH) {
            hints.push(r.edges);
        }
    }
    for (kg, kh) in divisor_pairs(k) {
        let (a, b) = (&g.k(kg).oracle.witness_ids, &h.k(kh).oracle.witness_ids);
        if ConstructionKind::Ast.supports(p.kind) {
            hints.push(fast(p, a, b).expect("factor witnesses are factor edges").edges);
        }
        if ConstructionKind::Circledast.supports(p.kind) {
            hints.push(fcast(p, a, b).expect("factor witnesses are factor edges").edges);
            hints.push(fcast(p, a, &EdgeSet::new()).expect("factor witnesses are factor edges").edges);
            hints.push(fcast(p, &EdgeSet::new(), b).expect("factor witnesses are factor edges").edges);
        }
    }
    hints
}

/// Product plus its oracle, shared by all checks on one `(G, H, ⋆, k)`.
pub struct Instance<'a> {
    pub g: &'a FactorData,
    pub h: &'a FactorData,
    pub p: ProductGraph,
    pub k: u32,
    pub oracle: OracleReport,
}

impl<'a> Instance<'a> {
    pub fn new(g: &'a FactorData, h: &'a FactorData, star: ProductKind, k: u32, budget: u64) -> Result<Self> {
        crate::matching::check_k(k)?;
        if k > g.max_k() || k > h.max_k() {
            return Err(Error::InvalidParameter(format!("factor data only covers k <= {}", g.max_k().min(h.max_k()))));
        }
        let p = product(&g.graph, &h.graph, star);
        let hints = witness_hints(&p, g, h, k);
        let oracle = product_oracle(&p, k, &hints, budget)?;
        Ok(Instance { g, h, p, k, oracle })
    }

    pub fn exhaustive(&self) -> bool {
        self.oracle.exhaustive && self.g.exhaustive_up_to(self.k) && self.h.exhaustive_up_to(self.k)
    }

    fn gate(&self, b: bool) -> Verdict {
        if self.exhaustive() {
            b.into()
        } else {
            Verdict::Unknown
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct FactorEvidence {
    pub m_g: Vec<(Label, Label)>,
    pub m_h: Vec<(Label, Label)>,
    pub k_g: u32,
    pub k_h: u32,
    pub u_g: usize,
    pub u_h: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Evidence {
    pub m_k: usize,
    pub u_k: usize,
    pub factors: Option<FactorEvidence>,
    pub condition: Option<ConditionTag>,
    pub construction_size: Option<usize>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct WellBehavedReport {
    pub flavor: ConstructionKind,
    pub star: ProductKind,
    pub k: u32,
    pub verdict: Verdict,
    pub evidence: Evidence,
    pub exhaustive: bool,
}

fn factor_evidence(inst: &Instance, mg: &EdgeSet, mh: &EdgeSet, k_g: u32, k_h: u32) -> FactorEvidence {
    FactorEvidence {
        m_g: mg.labeled(&inst.p.left),
        m_h: mh.labeled(&inst.p.right),
        k_g,
        k_h,
        u_g: crate::matching::unmatched_count(&inst.p.left, mg),
        u_h: crate::matching::unmatched_count(&inst.p.right, mh),
    }
}

fn require(kind: ConstructionKind, star: ProductKind) -> Result<()> {
    if kind.supports(star) {
        Ok(())
    } else {
        Err(Error::IncompatibleProduct { construction: kind, kind: star })
    }
}

/// `u_k(G⋆H) = u_k(G)·u_k(H)` from exact oracles.
pub fn boxast_report(inst: &Instance) -> Result<WellBehavedReport> {
    require(ConstructionKind::Boxast, inst.p.kind)?;
    let k = inst.k;
    let (og, oh) = (&inst.g.k(k).oracle, &inst.h.k(k).oracle);
    let verdict = inst.gate(inst.oracle.u_k == og.u_k * oh.u_k);
    let (mg, mh) = normalize_boxast(&inst.p.left, &inst.p.right, &og.witness_ids, &oh.witness_ids, k);
    let built = fbast(&inst.p, &mg, &mh, Orientation::GH)?;
    Ok(WellBehavedReport {
        flavor: ConstructionKind::Boxast,
        star: inst.p.kind,
        k,
        verdict,
        evidence: Evidence {
            m_k: inst.oracle.m_k,
            u_k: inst.oracle.u_k,
            factors: Some(factor_evidence(inst, &mg, &mh, k, k)),
            condition: crate::construct::predict(
                ConstructionKind::Boxast,
                Orientation::GH,
                &FactorFacts::of(&inst.p.left, &mg),
                &FactorFacts::of(&inst.p.right, &mh),
                k,
            )
            .map(|p| p.condition),
            construction_size: Some(built.len()),
        },
        exhaustive: inst.exhaustive(),
    })
}

/// Some pair satisfying one of M1–M4 with `u_G·u_H = u_k(G⋆H)`.
pub fn circledast_report(inst: &Instance) -> Result<WellBehavedReport> {
    require(ConstructionKind::Circledast, inst.p.kind)?;
    let k = inst.k;
    let gs = inst.g.divisor_matchings(k)?;
    let hs = inst.h.divisor_matchings(k)?;
    let hf: Vec<FactorFacts> = hs.iter().map(|m| FactorFacts::of(&inst.p.right, m)).collect();
    let mut found = None;
    'outer: for mg in &gs {
        let fg = FactorFacts::of(&inst.p.left, mg);
        for (mh, fh) in hs.iter().zip(&hf) {
            if let Some(pr) = predict(ConstructionKind::Circledast, Orientation::GH, &fg, fh, k) {
                if fg.unmatched * fh.unmatched == inst.oracle.u_k {
                    found = Some((mg.clone(), mh.clone(), pr));
                    break 'outer;
                }
            }
        }
    }
    let verdict = inst.gate(found.is_some());
    let evidence = match &found {
        Some((mg, mh, pr)) => Evidence {
            m_k: inst.oracle.m_k,
            u_k: inst.oracle.u_k,
            factors: Some(factor_evidence(inst, mg, mh, pr.k_g, pr.k_h)),
            condition: Some(pr.condition),
            construction_size: Some(fcast(&inst.p, mg, mh)?.len()),
        },
        None => Evidence {
            m_k: inst.oracle.m_k,
            u_k: inst.oracle.u_k,
            factors: None,
            condition: None,
            construction_size: None,
        },
    };
    Ok(WellBehavedReport {
        flavor: ConstructionKind::Circledast,
        star: inst.p.kind,
        k,
        verdict,
        evidence,
        exhaustive: inst.exhaustive(),
    })
}

/// First divisor pair (ascending `k_G`) with
/// `m_k(G⋆H) = 2·m_{k_G}(G)·m_{k_H}(H)`.
pub fn ast_report(inst: &Instance) -> Result<WellBehavedReport> {
    require(ConstructionKind::Ast, inst.p.kind)?;
    let k = inst.k;
    let hit = divisor_pairs(k)
        .into_iter()
        .find(|&(a, b)| inst.oracle.m_k == 2 * inst.g.k(a).oracle.m_k * inst.h.k(b).oracle.m_k);
    let verdict = inst.gate(hit.is_some());
    let evidence = match hit {
        Some((a, b)) => {
            let (mg, mh) = (&inst.g.k(a).oracle.witness_ids, &inst.h.k(b).oracle.witness_ids);
            Evidence {
                m_k: inst.oracle.m_k,
                u_k: inst.oracle.u_k,
                factors: Some(factor_evidence(inst, mg, mh, a, b)),
                condition: Some(ConditionTag::DivisorPair),
                construction_size: Some(fast(&inst.p, mg, mh)?.len()),
            }
        }
        None => Evidence {
            m_k: inst.oracle.m_k,
            u_k: inst.oracle.u_k,
            factors: None,
            condition: None,
            construction_size: None,
        },
    };
    Ok(WellBehavedReport {
        flavor: ConstructionKind::Ast,
        star: inst.p.kind,
        k,
        verdict,
        evidence,
        exhaustive: inst.exhaustive(),
    })
}

fn with_instance<T>(
    g: &Graph,
    h: &Graph,
    star: ProductKind,
    k: u32,
    budget: u64,
    kind: ConstructionKind,
    f: impl FnOnce(&Instance) -> Result<T>,
) -> Result<T> {
    require(kind, star)?;
    let fg = FactorData::new(g, k, budget)?;
    let fh = FactorData::new(h, k, budget)?;
    let inst = Instance::new(&fg, &fh, star, k, budget)?;
    f(&inst)
}

pub fn check_boxast(g: &Graph, h: &Graph, star: ProductKind, k: u32, budget: u64) -> Result<WellBehavedReport> {
    with_instance(g, h, star, k, budget, ConstructionKind::Boxast, boxast_report)
}

pub fn check_circledast(g: &Graph, h: &Graph, star: ProductKind, k: u32, budget: u64) -> Result<WellBehavedReport> {
    with_instance(g, h, star, k, budget, ConstructionKind::Circledast, circledast_report)
}

pub fn check_ast(g: &Graph, h: &Graph, star: ProductKind, k: u32, budget: u64) -> Result<WellBehavedReport> {
    with_instance(g, h, star, k, budget, ConstructionKind::Ast, ast_report)
}

pub fn check(flavor: ConstructionKind, g: &Graph, h: &Graph, star: ProductKind, k: u32, budget: u64) -> Result<WellBehavedReport> {
    match flavor {
        ConstructionKind::Boxast => check_boxast(g, h, star, k, budget),
        ConstructionKind::Ast => check_ast(g, h, star, k, budget),
        ConstructionKind::Circledast => check_circledast(g, h, star, k, budget),
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Condition {
    pub name: String,
    pub verdict: Verdict,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ConditionGroup {
    pub statement: String,
    pub conditions: Vec<Condition>,
    /// `None` when some condition is unknown.
    pub agree: Option<bool>,
}

impl ConditionGroup {
    fn new(statement: &str, conditions: Vec<(&str, Verdict)>) -> Self {
        let conditions: Vec<Condition> = conditions
            .into_iter()
            .map(|(n, v)| Condition { name: n.to_string(), verdict: v })
            .collect();
        let known: Option<Vec<bool>> = conditions.iter().map(|c| c.verdict.known()).collect();
        let agree = known.map(|v| v.windows(2).all(|w| w[0] == w[1]));
        ConditionGroup {
            statement: statement.to_string(),
            conditions,
            agree,
        }
    }

    pub fn verdict(&self, name: &str) -> Option<Verdict> {
        self.conditions.iter().find(|c| c.name == name).map(|c| c.verdict)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct EquivalenceReport {
    pub star: ProductKind,
    pub k: u32,
    pub m_k: usize,
    pub u_k: usize,
    pub groups: Vec<ConditionGroup>,
    pub exhaustive: bool,
}

impl EquivalenceReport {
    pub fn group(&self, statement: &str) -> Option<&ConditionGroup> {
        self.groups.iter().find(|g| g.statement == statement)
    }

    pub fn all_agree(&self) -> Option<bool> {
        self.groups.iter().map(|g| g.agree).try_fold(true, |acc, a| a.map(|a| acc && a))
    }
}

pub const BOXAST_SEVEN: &str = "boxast_seven_conditions";
pub const BOXAST_UNMATCHED: &str = "boxast_unmatched_product";
pub const CIRCLEDAST_CHAR: &str = "circledast_characterization";
pub const AST_CHAR: &str = "ast_characterization";

/// The seven equivalent conditions for `fbast`.
pub fn boxast_seven(inst: &Instance) -> Result<ConditionGroup> {
    let k = inst.k;
    let (fg, fh) = (inst.g.k(k), inst.h.k(k));
    let (og, oh) = (&fg.oracle, &fh.oracle);
    let (ng, nh) = (inst.p.left.order(), inst.p.right.order());
    let (m, u) = (inst.oracle.m_k, inst.oracle.u_k);
    let p = &inst.p;
    let valid = |s: &EdgeSet| is_k_matching(&p.graph, s, k);

    let mut c1 = false;
    'outer: for mg in fg.all()? {
        for mh in fh.all()? {
            let gh = fbast(p, mg, mh, Orientation::GH)?.edges;
            let hg = fbast(p, mg, mh, Orientation::HG)?.edges;
            if valid(&gh) && valid(&hg) && gh.len().max(hg.len()) == m {
                c1 = true;
                break 'outer;
            }
        }
    }
    let (max_g, max_h) = (fg.maximum()?, fh.maximum()?);
    let mut c2 = true;
    let mut c3 = true;
    for mg in &max_g {
        for mh in &max_h {
            let gh = fbast(p, mg, mh, Orientation::GH)?.edges;
            c2 &= valid(&gh) && gh.len() == m;
            let hg = fbast(p, mg, mh, Orientation::HG)?.edges;
            c3 &= valid(&hg) && hg.len() == m;
        }
    }
    let c4 = m == og.m_k * nh + oh.m_k * og.u_k;
    let c5 = m == oh.m_k * ng + og.m_k * oh.u_k;
    let c6 = 2 * m == k as usize * (ng * nh - og.u_k * oh.u_k);
    let c7 = u == og.u_k * oh.u_k;
    Ok(ConditionGroup::new(
        BOXAST_SEVEN,
        vec![
            ("1_exists_fbast_of_size_m_k", inst.gate(c1)),
            ("2_all_maximum_gh_fbast_maximum", inst.gate(c2)),
            ("3_all_maximum_hg_fbast_maximum", inst.gate(c3)),
            ("4_m_k_formula_gh", inst.gate(c4)),
            ("5_m_k_formula_hg", inst.gate(c5)),
            ("6_m_k_closed_form", inst.gate(c6)),
            ("7_u_k_product", inst.gate(c7)),
        ],
    ))
}

/// Well-behavedness against some pair of k-matchings with `u_k = u_G·u_H`.
pub fn boxast_unmatched(inst: &Instance) -> Result<ConditionGroup> {
    let k = inst.k;
    let seven = boxast_seven(inst)?;
    let (fg, fh) = (inst.g.k(k), inst.h.k(k));
    let ug: Vec<usize> = fg.all()?.iter().map(|m| crate::matching::unmatched_count(&inst.p.left, m)).collect();
    let uh: Vec<usize> = fh.all()?.iter().map(|m| crate::matching::unmatched_count(&inst.p.right, m)).collect();
    let hit = ug.iter().any(|a| uh.iter().any(|b| a * b == inst.oracle.u_k));
    Ok(ConditionGroup::new(
        BOXAST_UNMATCHED,
        vec![
            ("well_behaved", seven.conditions[0].verdict),
            ("exists_pair_with_u_k_product", inst.gate(hit)),
        ],
    ))
}

pub fn circledast_characterization(inst: &Instance) -> Result<ConditionGroup> {
    let k = inst.k;
    let p = &inst.p;
    let gs = inst.g.divisor_matchings(k)?;
    let hs = inst.h.divisor_matchings(k)?;
    let mut direct = false;
    'outer: for mg in &gs {
        for mh in &hs {
            let r = fcast(p, mg, mh)?.edges;
            if r.len() == inst.oracle.m_k && is_k_matching(&p.graph, &r, k) {
                direct = true;
                break 'outer;
            }
        }
    }
    let via_conditions = circledast_report(inst)?.verdict;
    Ok(ConditionGroup::new(
        CIRCLEDAST_CHAR,
        vec![
            ("exists_fcast_of_size_m_k", inst.gate(direct)),
            ("exists_m1_to_m4_pair_with_u_k_product", via_conditions),
        ],
    ))
}

/// Outcome of the maximality addendum for the `fast` characterization.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct AstAddendum {
    pub witnesses: usize,
    pub all_maximum: bool,
}

pub fn ast_characterization(inst: &Instance) -> Result<(ConditionGroup, AstAddendum)> {
    let k = inst.k;
    let p = &inst.p;
    let (ng, nh) = (p.left.order(), p.right.order());
    let gs = inst.g.divisor_matchings(k)?;
    let hs = inst.h.divisor_matchings(k)?;
    let mut direct = false;
    'outer: for mg in &gs {
        for mh in &hs {
            let r = fast(p, mg, mh)?.edges;
            if r.len() == inst.oracle.m_k && is_k_matching(&p.graph, &r, k) {
                direct = true;
                break 'outer;
            }
        }
    }
    let mut via_unmatched = false;
    let mut addendum = AstAddendum { witnesses: 0, all_maximum: true };
    for (a, b) in divisor_pairs(k) {
        let (fa, fb) = (inst.g.k(a), inst.h.k(b));
        for mg in fa.all()? {
            let ug = crate::matching::unmatched_count(&p.left, mg);
            for mh in fb.all()? {
                let uh = crate::matching::unmatched_count(&p.right, mh);
                if ng * uh + nh * ug - ug * uh == inst.oracle.u_k {
                    via_unmatched = true;
                    addendum.witnesses += 1;
                    addendum.all_maximum &= mg.len() == fa.oracle.m_k && mh.len() == fb.oracle.m_k;
                }
            }
        }
    }
    let via_numbers = ast_report(inst)?.verdict;
    let group = ConditionGroup::new(
        AST_CHAR,
        vec![
            ("exists_fast_of_size_m_k", inst.gate(direct)),
            ("exists_pair_with_u_k_identity", inst.gate(via_unmatched)),
            ("m_k_divisor_product", via_numbers),
        ],
    );
    Ok((group, addendum))
}

/// Every characterization that applies to `star`, evaluated independently.
pub fn equivalence_suite_on(inst: &Instance) -> Result<EquivalenceReport> {
    let star = inst.p.kind;
    let mut groups = Vec::new();
    if ConstructionKind::Boxast.supports(star) {
        groups.push(boxast_seven(inst)?);
        groups.push(boxast_unmatched(inst)?);
    }
    if ConstructionKind::Circledast.supports(star) {
        groups.push(circledast_characterization(inst)?);
    }
    if ConstructionKind::Ast.supports(star) {
        groups.push(ast_characterization(inst)?.0);
    }
    Ok(EquivalenceReport {
        star,
        k: inst.k,
        m_k: inst.oracle.m_k,
        u_k: inst.oracle.u_k,
        groups,
        exhaustive: inst.exhaustive(),
    })
}

pub fn equivalence_suite(g: &Graph, h: &Graph, star: ProductKind, k: u32, budget: u64) -> Result<EquivalenceReport> {
    let fg = FactorData::new(g, k, budget)?;
    let fh = FactorData::new(h, k, budget)?;
    let inst = Instance::new(&fg, &fh, star, k, budget)?;
    equivalence_suite_on(&inst)
}
