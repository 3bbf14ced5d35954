//! Corpus-wide invariant checks with a deterministic ledger.

use std::collections::BTreeSet;
use std::fmt::Write as _;
use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use serde_json::{json, Value};

use crate::construct::{
    classify_construction, construct, fast, fbast, fcast, fill_g, fill_h, predict, predicted_size, ConditionTag,
    ConstructionKind, FactorFacts, Orientation, SizeInputs,
};
use crate::corpus;
use crate::error::{Error, Result};
use crate::graph::{EdgeSet, Graph};
use crate::iso::are_isomorphic_small;
use crate::matching::{enumerate_k_matchings, is_k_matching, is_maximal, max_k_matching, unmatched_count};
use crate::product::{product, ProductGraph, ProductKind};
use crate::scenario::{builtin_scenarios, run_scenario_with};
use crate::search::DEFAULT_BUDGET;
use crate::weak_hom::{allowed_edges, is_whp};
use crate::well_behaved::{
    equivalence_suite_on, ast_characterization, circledast_report, FactorData, Instance, Verdict, AST_CHAR,
    BOXAST_SEVEN, BOXAST_UNMATCHED, CIRCLEDAST_CHAR,
};

/// Graphs to check. `labeled` feeds the matching-size identity; the other
/// checks use `graphs`.
#[derive(Clone, Debug)]
pub struct Corpus {
    pub name: String,
    pub graphs: Vec<Graph>,
    pub labeled: Vec<Graph>,
}

impl Corpus {
    /// Connected graphs up to isomorphism on at most `max_n` vertices, and
    /// all labeled ones for the size identity.
    pub fn builtin(max_n: usize) -> Result<Self> {
        Ok(Corpus {
            name: format!("builtin-connected-n{max_n}"),
            graphs: corpus::builtin(max_n)?,
            labeled: corpus::builtin_labeled(max_n)?,
        })
    }

    pub fn from_graphs(name: &str, graphs: Vec<Graph>) -> Self {
        Corpus {
            name: name.to_string(),
            labeled: graphs.clone(),
            graphs,
        }
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty() && self.labeled.is_empty()
    }
}

#[derive(Clone, Debug)]
pub struct SuiteConfig {
    pub max_k: u32,
    /// Order bound for the exhaustive construction and weak-homomorphism
    /// checks.
    pub small_n: usize,
    pub budget: u64,
    pub whp_allowed_limit: usize,
    pub scenarios: bool,
    pub determinism: bool,
    pub threads: Option<usize>,
}

impl Default for SuiteConfig {
    fn default() -> Self {
        SuiteConfig {
            max_k: 3,
            small_n: 4,
            budget: DEFAULT_BUDGET,
            whp_allowed_limit: 16,
            scenarios: true,
            determinism: true,
            threads: None,
        }
    }
}

pub const MAX_COUNTEREXAMPLES: usize = 5;

#[derive(Clone, Debug, Default, PartialEq, Eq, Serialize, Deserialize)]
pub struct CriterionResult {
    pub id: String,
    pub title: String,
    pub cases: u64,
    pub failures: u64,
    pub unknown: u64,
    pub counterexamples: Vec<Value>,
    pub pass: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CheckLedger {
    pub corpus: String,
    pub criteria: Vec<CriterionResult>,
    #[serde(skip)]
    pub timings_ms: Vec<(String, u128)>,
}

impl CheckLedger {
    pub fn pass(&self) -> bool {
        self.criteria.iter().all(|c| c.pass)
    }

    pub fn unknown(&self) -> u64 {
        self.criteria.iter().map(|c| c.unknown).sum()
    }

    pub fn get(&self, id: &str) -> Option<&CriterionResult> {
        self.criteria.iter().find(|c| c.id == id)
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    pub fn to_table(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "corpus: {}", self.corpus);
        let _ = writeln!(s, "{:<6} {:<6} {:>10} {:>9} {:>8}  title", "id", "result", "cases", "failures", "unknown");
        for c in &self.criteria {
            let _ = writeln!(
                s,
                "{:<6} {:<6} {:>10} {:>9} {:>8}  {}",
                c.id,
                if c.pass { "PASS" } else { "FAIL" },
                c.cases,
                c.failures,
                c.unknown,
                c.title
            );
        }
        s
    }
}

enum Outcome {
    Pass,
    Fail(Value),
    Unknown,
}

#[derive(Default)]
struct Tally {
    cases: u64,
    failures: u64,
    unknown: u64,
    examples: Vec<Value>,
}

impl Tally {
    fn add(&mut self, o: Outcome) {
        self.cases += 1;
        match o {
            Outcome::Pass => {}
            Outcome::Fail(v) => {
                self.failures += 1;
                if self.examples.len() < MAX_COUNTEREXAMPLES {
                    self.examples.push(v);
                }
            }
            Outcome::Unknown => self.unknown += 1,
        }
    }

    fn check(&mut self, ok: bool, payload: impl FnOnce() -> Value) {
        self.add(if ok { Outcome::Pass } else { Outcome::Fail(payload()) });
    }

    fn verdict(&mut self, ok: Option<bool>, payload: impl FnOnce() -> Value) {
        match ok {
            Some(b) => self.check(b, payload),
            None => self.add(Outcome::Unknown),
        }
    }

    fn merge(mut self, other: Tally) -> Tally {
        self.cases += other.cases;
        self.failures += other.failures;
        self.unknown += other.unknown;
        for v in other.examples {
            if self.examples.len() < MAX_COUNTEREXAMPLES {
                self.examples.push(v);
            }
        }
        self
    }

    fn finish(self, id: &str, title: &str) -> CriterionResult {
        CriterionResult {
            id: id.to_string(),
            title: title.to_string(),
            cases: self.cases,
            failures: self.failures,
            unknown: self.unknown,
            counterexamples: self.examples,
            pass: self.failures == 0,
        }
    }
}

fn merge_all(parts: Vec<Tally>) -> Tally {
    parts.into_iter().fold(Tally::default(), Tally::merge)
}

fn edges_json(g: &Graph) -> Value {
    json!({ "n": g.order(), "edges": g.edges() })
}

fn is_budget_or_size(e: &Error) -> bool {
    matches!(e, Error::BudgetExceeded(_) | Error::SizeLimitExceeded { .. })
}

/// Sets that are d-matchings for some `d <= max_k`, deduplicated.
fn candidate_sets(fd: &FactorData, max_k: u32) -> Option<Vec<EdgeSet>> {
    let mut out = BTreeSet::new();
    for d in 1..=max_k {
        out.extend(fd.k(d).matchings.as_ref()?.iter().cloned());
    }
    Some(out.into_iter().collect())
}

fn divisor_sets(fd: &FactorData, k: u32) -> Option<Vec<EdgeSet>> {
    let mut out = BTreeSet::new();
    for d in (1..=k).filter(|d| k % d == 0) {
        out.extend(fd.k(d).matchings.as_ref()?.iter().cloned());
    }
    Some(out.into_iter().collect())
}

fn ordered_pairs(n: usize) -> Vec<(usize, usize)> {
    (0..n).flat_map(|i| (0..n).map(move |j| (i, j))).collect()
}

/// Size identity `|M| = k(n-u)/2` and the perfection criterion, over
/// every k-matching found by brute force over edge subsets.
pub const BRUTE_FORCE_EDGE_LIMIT: usize = 16;

fn criterion_size_identity(c: &Corpus, cfg: &SuiteConfig) -> CriterionResult {
    let parts: Vec<Tally> = c
        .labeled
        .par_iter()
        .map(|g| {
            let mut t = Tally::default();
            let n = g.order();
            for k in 1..=cfg.max_k {
                if g.size() > BRUTE_FORCE_EDGE_LIMIT {
                    t.add(Outcome::Unknown);
                    continue;
                }
                let mut found = Vec::new();
                for mask in 0u32..1 << g.size() {
                    let m: EdgeSet = (0..g.size()).filter(|i| mask >> i & 1 == 1).collect();
                    if !is_k_matching(g, &m, k) {
                        continue;
                    }
                    let u = unmatched_count(g, &m);
                    let size_ok = 2 * m.len() == k as usize * (n - u);
                    let perfect_ok = (u == 0) == (2 * m.len() == k as usize * n);
                    t.check(size_ok && perfect_ok, || json!({ "graph": edges_json(g), "k": k, "matching": m }));
                    found.push(m);
                }
                found.sort();
                let listed = enumerate_k_matchings(g, k).unwrap_or_default();
                t.check(listed == found, || json!({ "graph": edges_json(g), "k": k, "enumeration_mismatch": true }));
            }
            t
        })
        .collect();
    merge_all(parts).finish("1", "matching size identity |M| = k(n-u)/2 and perfection")
}

struct SmallFactor<'a> {
    g: &'a Graph,
    sets: Vec<EdgeSet>,
}

fn small_factors<'a>(graphs: &'a [Graph], data: &[FactorData], cfg: &SuiteConfig) -> Vec<SmallFactor<'a>> {
    graphs
        .iter()
        .zip(data)
        .filter(|(g, _)| g.order() <= cfg.small_n)
        .filter_map(|(g, fd)| candidate_sets(fd, cfg.max_k).map(|sets| SmallFactor { g, sets }))
        .collect()
}

fn orientations(kind: ConstructionKind) -> &'static [Orientation] {
    match kind {
        ConstructionKind::Boxast => &[Orientation::GH, Orientation::HG],
        _ => &[Orientation::GH],
    }
}

/// Characterization agreement (criterion 2) and size formulas (criterion 3).
fn criteria_constructions(small: &[SmallFactor], cfg: &SuiteConfig) -> (CriterionResult, CriterionResult) {
    let k_max = cfg.max_k * cfg.max_k;
    let parts: Vec<(Tally, Tally)> = ordered_pairs(small.len())
        .par_iter()
        .map(|&(i, j)| {
            let (a, b) = (&small[i], &small[j]);
            let mut char_t = Tally::default();
            let mut size_t = Tally::default();
            for kind in ProductKind::ALL {
                let p = product(a.g, b.g, kind);
                for ck in ConstructionKind::ALL.into_iter().filter(|c| c.supports(kind)) {
                    for mg in &a.sets {
                        let fg = FactorFacts::of(a.g, mg);
                        for mh in &b.sets {
                            let fh = FactorFacts::of(b.g, mh);
                            let mut valid_by_orientation = Vec::new();
                            for &o in orientations(ck) {
                                let built = construct(ck, &p, mg, mh, o).expect("factor sets come from the factors");
                                let payload = || {
                                    json!({ "left": edges_json(a.g), "right": edges_json(b.g), "kind": kind,
                                            "construction": ck, "orientation": o, "m_g": mg, "m_h": mh })
                                };
                                let mut agree = true;
                                let mut valid_ks = Vec::new();
                                for k in 1..=k_max {
                                    let pred = predict(ck, o, &fg, &fh, k);
                                    let actual = is_k_matching(&p.graph, &built.edges, k);
                                    agree &= pred.is_some() == actual;
                                    if let Some(pr) = pred.filter(|_| actual) {
                                        valid_ks.push((k, pr));
                                    }
                                }
                                let class = classify_construction(ck, &p, mg, mh, o).expect("supported kind");
                                let class_ok = match class.k {
                                    Some(k) => class.is_k_matching && is_k_matching(&p.graph, &built.edges, k),
                                    None => !class.is_k_matching && valid_ks.is_empty(),
                                };
                                char_t.check(agree && class_ok, payload);
                                for (k, pr) in &valid_ks {
                                    let ok = size_formulas(ck, o, &p, mg, mh, &fg, &fh, *k, pr.condition, pr.k_g, pr.k_h, built.len());
                                    size_t.check(ok, || {
                                        let mut v = payload();
                                        v["k"] = json!(k);
                                        v["size"] = json!(built.len());
                                        v
                                    });
                                }
                                valid_by_orientation.push(valid_ks.iter().map(|(k, _)| *k).collect::<Vec<_>>());
                            }
                            if ck == ConstructionKind::Boxast {
                                let gh = fbast(&p, mg, mh, Orientation::GH).expect("factor sets").len();
                                let hg = fbast(&p, mg, mh, Orientation::HG).expect("factor sets").len();
                                let both = valid_by_orientation[0].iter().any(|k| valid_by_orientation[1].contains(k));
                                if both {
                                    size_t.check(gh == hg, || json!({ "left": edges_json(a.g), "right": edges_json(b.g),
                                        "kind": kind, "m_g": mg, "m_h": mh, "gh": gh, "hg": hg }));
                                }
                            }
                        }
                    }
                }
            }
            (char_t, size_t)
        })
        .collect();
    let (mut c, mut s) = (Tally::default(), Tally::default());
    for (a, b) in parts {
        c = c.merge(a);
        s = s.merge(b);
    }
    (
        c.finish("2", "construction characterizations agree with direct validation"),
        s.finish("3", "construction size formulas"),
    )
}

#[allow(clippy::too_many_arguments)]
fn size_formulas(
    ck: ConstructionKind,
    o: Orientation,
    p: &ProductGraph,
    mg: &EdgeSet,
    mh: &EdgeSet,
    fg: &FactorFacts,
    fh: &FactorFacts,
    k: u32,
    tag: ConditionTag,
    k_g: u32,
    k_h: u32,
    measured: usize,
) -> bool {
    let (ng, nh, ug, uh) = (fg.order, fh.order, fg.unmatched, fh.unmatched);
    let k = k as usize;
    let ok = match ck {
        ConstructionKind::Boxast => {
            let layered = match o {
                Orientation::GH => mg.len() * nh + mh.len() * ug,
                Orientation::HG => mh.len() * ng + mg.len() * uh,
            };
            measured == layered && 2 * measured == k * (ng * nh - ug * uh)
        }
        ConstructionKind::Ast => {
            measured == 2 * mg.len() * mh.len() && 2 * measured == k * (ng - ug) * (nh - uh)
        }
        ConstructionKind::Circledast => 2 * measured == k * (ng * nh - ug * uh),
    };
    let inputs = SizeInputs::of(&p.left, &p.right, mg, mh, k_g, k_h);
    let predicted_ok = match (tag, predicted_size(ck, o, &inputs)) {
        (ConditionTag::None, _) | (_, Err(_)) => true,
        (_, Ok(s)) => s == measured,
    };
    ok && predicted_ok
}

/// Instance-level checks on every corpus pair: the seven conditions,
/// the product-kind chain, and the remaining characterizations.
struct WbTallies {
    seven: Tally,
    chain: Tally,
    unmatched: Tally,
    circledast: Tally,
    ast: Tally,
    addendum: Tally,
    perfect: Tally,
    near_perfect: Tally,
    empty_side: Tally,
    prime_k: Tally,
}

impl WbTallies {
    fn new() -> Self {
        WbTallies {
            seven: Tally::default(),
            chain: Tally::default(),
            unmatched: Tally::default(),
            circledast: Tally::default(),
            ast: Tally::default(),
            addendum: Tally::default(),
            perfect: Tally::default(),
            near_perfect: Tally::default(),
            empty_side: Tally::default(),
            prime_k: Tally::default(),
        }
    }

    fn merge(self, o: WbTallies) -> WbTallies {
        WbTallies {
            seven: self.seven.merge(o.seven),
            chain: self.chain.merge(o.chain),
            unmatched: self.unmatched.merge(o.unmatched),
            circledast: self.circledast.merge(o.circledast),
            ast: self.ast.merge(o.ast),
            addendum: self.addendum.merge(o.addendum),
            perfect: self.perfect.merge(o.perfect),
            near_perfect: self.near_perfect.merge(o.near_perfect),
            empty_side: self.empty_side.merge(o.empty_side),
            prime_k: self.prime_k.merge(o.prime_k),
        }
    }
}

fn group_agree(t: &mut Tally, r: &crate::well_behaved::EquivalenceReport, name: &str, payload: &Value) {
    if let Some(g) = r.group(name) {
        t.verdict(g.agree, || json!({ "instance": payload, "conditions": g.conditions }));
    }
}

fn pair_instances(g: &FactorData, h: &FactorData, cfg: &SuiteConfig) -> WbTallies {
    let mut t = WbTallies::new();
    let payload_base = json!({ "left": edges_json(&g.graph), "right": edges_json(&h.graph) });
    for k in 1..=cfg.max_k {
        let mut wb: Vec<(ProductKind, Verdict)> = Vec::new();
        for star in ProductKind::ALL {
            let mut payload = payload_base.clone();
            payload["kind"] = json!(star);
            payload["k"] = json!(k);
            let inst = match Instance::new(g, h, star, k, cfg.budget) {
                Ok(i) => i,
                Err(e) if is_budget_or_size(&e) => {
                    t.seven.add(Outcome::Unknown);
                    continue;
                }
                Err(e) => {
                    t.seven.add(Outcome::Fail(json!({ "instance": payload, "error": e.to_string() })));
                    continue;
                }
            };
            let report = match equivalence_suite_on(&inst) {
                Ok(r) => r,
                Err(e) => {
                    let o = if is_budget_or_size(&e) {
                        Outcome::Unknown
                    } else {
                        Outcome::Fail(json!({ "instance": payload, "error": e.to_string() }))
                    };
                    t.seven.add(o);
                    continue;
                }
            };
            group_agree(&mut t.seven, &report, BOXAST_SEVEN, &payload);
            group_agree(&mut t.unmatched, &report, BOXAST_UNMATCHED, &payload);
            group_agree(&mut t.circledast, &report, CIRCLEDAST_CHAR, &payload);
            group_agree(&mut t.ast, &report, AST_CHAR, &payload);
            if let Some(seven) = report.group(BOXAST_SEVEN) {
                wb.push((star, seven.conditions[0].verdict));
            }
            if let Err(e) = instance_properties(&inst, &mut t, &payload) {
                let o = if is_budget_or_size(&e) {
                    Outcome::Unknown
                } else {
                    Outcome::Fail(json!({ "instance": payload, "error": e.to_string() }))
                };
                t.perfect.add(o);
            }
        }
        let get = |s: ProductKind| wb.iter().find(|(k, _)| *k == s).map(|(_, v)| *v);
        let chain = [
            (ProductKind::Lexicographic, ProductKind::Strong),
            (ProductKind::Strong, ProductKind::Cartesian),
        ];
        for (hi, lo) in chain {
            let ok = match (get(hi), get(lo)) {
                (Some(Verdict::False), _) => Some(true),
                (Some(Verdict::True), Some(Verdict::True)) => Some(true),
                (Some(Verdict::True), Some(Verdict::False)) => Some(false),
                _ => None,
            };
            t.chain.verdict(ok, || json!({ "left": edges_json(&g.graph), "right": edges_json(&h.graph), "k": k, "from": hi, "to": lo }));
        }
    }
    t
}

fn instance_properties(inst: &Instance, t: &mut WbTallies, payload: &Value) -> Result<()> {
    let k = inst.k;
    let p = &inst.p;
    let star = p.kind;
    let (fg, fh) = (inst.g.k(k), inst.h.k(k));
    let exhaustive = inst.exhaustive();
    let m = inst.oracle.m_k;
    let (ng, nh) = (p.left.order(), p.right.order());

    if ConstructionKind::Boxast.supports(star) {
        if fg.oracle.u_k == 0 && fg.oracle.exhaustive {
            for mh in fh.all()? {
                let f = fbast(p, &fg.oracle.witness_ids, mh, Orientation::GH)?.edges;
                let ok = is_k_matching(&p.graph, &f, k) && unmatched_count(&p.graph, &f) == 0 && inst.oracle.u_k == 0;
                t.perfect.check(ok, || json!({ "instance": payload, "m_h": mh }));
            }
        }
        let near = |all: &[EdgeSet], g: &Graph| -> Vec<EdgeSet> {
            all.iter().filter(|s| unmatched_count(g, s) == 1 && !s.is_empty()).cloned().collect()
        };
        for mg in near(fg.all()?, &p.left) {
            for mh in near(fh.all()?, &p.right) {
                let f = fbast(p, &mg, &mh, Orientation::GH)?.edges;
                let ok = is_k_matching(&p.graph, &f, k)
                    && 2 * f.len() == k as usize * (ng * nh - 1)
                    && unmatched_count(&p.graph, &f) == 1;
                t.near_perfect.check(ok, || json!({ "instance": payload, "m_g": mg, "m_h": mh }));
            }
        }
    }

    if ConstructionKind::Circledast.supports(star) {
        let empty = EdgeSet::new();
        let mut premise = false;
        for mg in fg.all()? {
            for o in [Orientation::GH, Orientation::HG] {
                let f = fbast(p, mg, &empty, o)?.edges;
                premise |= f.len() == m && is_k_matching(&p.graph, &f, k);
            }
        }
        for mh in fh.all()? {
            for o in [Orientation::GH, Orientation::HG] {
                let f = fbast(p, &empty, mh, o)?.edges;
                premise |= f.len() == m && is_k_matching(&p.graph, &f, k);
            }
        }
        if premise && exhaustive {
            let v = circledast_report(inst)?.verdict;
            t.empty_side.verdict(v.known(), || json!({ "instance": payload }));
        }

        if (k == 2 || k == 3) && ConstructionKind::Ast.supports(star) {
            let ast = crate::well_behaved::ast_report(inst)?.verdict;
            if ast == Verdict::True {
                let gs = divisor_sets(inst.g, k).ok_or(Error::SizeLimitExceeded {
                    what: "factor edge count",
                    actual: p.left.size(),
                    limit: crate::matching::ENUMERATION_EDGE_LIMIT,
                })?;
                let hs = divisor_sets(inst.h, k).ok_or(Error::SizeLimitExceeded {
                    what: "factor edge count",
                    actual: p.right.size(),
                    limit: crate::matching::ENUMERATION_EDGE_LIMIT,
                })?;
                let mut found = false;
                'outer: for mg in &gs {
                    for mh in &hs {
                        let f = fcast(p, mg, mh)?.edges;
                        if f.len() == m
                            && is_k_matching(&p.graph, &f, k)
                            && (fill_g(p, mg, mh).is_empty() || fill_h(p, mg, mh).is_empty())
                        {
                            found = true;
                            break 'outer;
                        }
                    }
                }
                t.prime_k.check(found, || json!({ "instance": payload }));
            }
        }
    }

    if ConstructionKind::Ast.supports(star) && m > 0 {
        let (_, add) = ast_characterization(inst)?;
        if add.witnesses > 0 {
            t.addendum.check(add.all_maximum, || json!({ "instance": payload, "witnesses": add.witnesses }));
        }
    }
    Ok(())
}

struct WbResults {
    seven: CriterionResult,
    chain: CriterionResult,
    extra: Vec<CriterionResult>,
}

fn criteria_well_behaved(data: &[FactorData], cfg: &SuiteConfig) -> WbResults {
    let parts: Vec<WbTallies> = ordered_pairs(data.len())
        .par_iter()
        .map(|&(i, j)| pair_instances(&data[i], &data[j], cfg))
        .collect();
    let t = parts.into_iter().fold(WbTallies::new(), WbTallies::merge);
    WbResults {
        seven: t.seven.finish("4", "seven boxast well-behavedness conditions agree"),
        chain: t.chain.finish("5", "boxast well-behaved: lexicographic => strong => cartesian"),
        extra: vec![
            t.unmatched.finish("S1", "boxast well-behaved iff some k-matchings give u_k = u_G u_H"),
            t.circledast.finish("S2", "circledast characterization via M1-M4"),
            t.ast.finish("S3", "ast characterization: three equivalent conditions"),
            t.addendum.finish("S4", "ast witnesses are maximum when m_k > 0"),
            t.perfect.finish("S5", "perfect k-matching of a factor lifts to the product"),
            t.near_perfect.finish("S6", "near-perfect factor k-matchings give a near-perfect product k-matching"),
            t.empty_side.finish("S7", "fbast optimal with an empty side implies circledast well-behaved"),
            t.prime_k.finish("S8", "prime k: ast well-behaved implies circledast with an empty fill"),
        ],
    }
}

fn criterion_scenarios(cfg: &SuiteConfig) -> CriterionResult {
    let specs = builtin_scenarios();
    let parts: Vec<Tally> = specs
        .par_iter()
        .map(|s| {
            let mut t = Tally::default();
            match run_scenario_with(s, cfg.budget) {
                Ok(r) => {
                    for step in &r.steps {
                        for e in &step.expectations {
                            let ok = if !r.exhaustive && !e.pass { None } else { Some(e.pass) };
                            t.verdict(ok, || json!({ "scenario": s.name, "expectation": e }));
                        }
                    }
                }
                Err(e) => t.add(Outcome::Fail(json!({ "scenario": s.name, "error": e.to_string() }))),
            }
            t
        })
        .collect();
    merge_all(parts).finish("6", "worked-example scenarios")
}

/// Dominance of the constructions among weak-homomorphism preserving
/// k-matchings, checked by full enumeration.
fn criterion_whp(small: &[SmallFactor], data_small: &[&FactorData], cfg: &SuiteConfig) -> CriterionResult {
    let parts: Vec<Tally> = ordered_pairs(small.len())
        .par_iter()
        .map(|&(i, j)| {
            let mut t = Tally::default();
            let (a, b) = (&small[i], &small[j]);
            for kind in ProductKind::ALL {
                let p = product(a.g, b.g, kind);
                for k in 1..=cfg.max_k {
                    let (Some(gs), Some(hs)) = (divisor_sets(data_small[i], k), divisor_sets(data_small[j], k)) else {
                        t.add(Outcome::Unknown);
                        continue;
                    };
                    for mg in &gs {
                        for mh in &hs {
                            if let Some(o) = whp_case(&p, mg, mh, k, cfg) {
                                t.add(o);
                            }
                        }
                    }
                }
            }
            t
        })
        .collect();
    merge_all(parts).finish("7", "constructions dominate weak-homomorphism preserving k-matchings")
}

fn whp_case(p: &ProductGraph, mg: &EdgeSet, mh: &EdgeSet, k: u32, cfg: &SuiteConfig) -> Option<Outcome> {
    let u = allowed_edges(p, mg, mh).expect("factor sets");
    if u.allowed.len() > cfg.whp_allowed_limit {
        return None;
    }
    let members = crate::search::enumerate(&p.graph, k, Some(&u.allowed)).expect("bounded universe");
    let best = members.iter().map(|m| m.len()).max().unwrap_or(0);
    let fail = |why: &str| {
        Some(Outcome::Fail(json!({
            "left": edges_json(&p.left), "right": edges_json(&p.right), "kind": p.kind,
            "k": k, "m_g": mg, "m_h": mh, "violation": why
        })))
    };
    let (fg, fh) = (FactorFacts::of(&p.left, mg), FactorFacts::of(&p.right, mh));
    let (ng, nh, ug, uh) = (fg.order, fh.order, fg.unmatched, fh.unmatched);
    let kk = k as usize;

    if members.iter().any(|m| !is_whp(p, m, mg, mh).expect("ids in range").whp) {
        return fail("member not weak-homomorphism preserving");
    }
    let cg = p.left.degrees_in(mg);
    let ch = p.right.degrees_in(mh);
    for v in 0..p.graph.order() {
        let (g, h) = p.coords(v);
        let both_free = cg[g] == 0 && ch[h] == 0;
        let always_free = members.iter().all(|m| p.graph.degrees_in(m)[v] == 0);
        if both_free && !always_free {
            return fail("unmatched coordinates but matched product vertex");
        }
        let converse_applies = p.kind != ProductKind::Direct && fg.is_k_matching(k) && fh.is_k_matching(k);
        if converse_applies && always_free && !both_free {
            return fail("product vertex never matched but a coordinate is matched");
        }
    }

    let mut fb_len = None;
    if ConstructionKind::Boxast.supports(p.kind) {
        for o in [Orientation::GH, Orientation::HG] {
            let f = fbast(p, mg, mh, o).expect("factor sets").edges;
            if is_k_matching(&p.graph, &f, k) {
                if !is_whp(p, &f, mg, mh).expect("ids").whp || f.len() < best {
                    return fail("fbast not a maximum element");
                }
                if o == Orientation::GH {
                    fb_len = Some(f.len());
                }
            }
        }
        let premise = fg.is_perfect(k) || fh.is_perfect(k) || (fg.is_k_matching(k) && fh.is_k_matching(k));
        if premise && 2 * best != kk * (ng * nh - ug * uh) {
            return fail("fbast closed form");
        }
    }
    if ConstructionKind::Circledast.supports(p.kind) {
        let f = fcast(p, mg, mh).expect("factor sets").edges;
        if is_k_matching(&p.graph, &f, k) {
            if !is_whp(p, &f, mg, mh).expect("ids").whp || f.len() < best {
                return fail("fcast not a maximum element");
            }
            if fb_len.is_some_and(|l| l != f.len()) {
                return fail("fbast and fcast sizes differ");
            }
        }
        if predict(ConstructionKind::Circledast, Orientation::GH, &fg, &fh, k).is_some()
            && 2 * best != kk * (ng * nh - ug * uh)
        {
            return fail("fcast closed form");
        }
    }
    if p.kind == ProductKind::Direct {
        let f = fast(p, mg, mh).expect("factor sets").edges;
        if members.iter().any(|m| !m.is_subset(&f)) {
            return fail("member not inside fast");
        }
        let divisor = (1..=k)
            .filter(|d| k % d == 0)
            .any(|d| fg.is_k_matching(d) && fh.is_k_matching(k / d));
        if divisor && 2 * best != kk * (ng - ug) * (nh - uh) {
            return fail("fast closed form");
        }
    }
    Some(Outcome::Pass)
}

/// Maximality and perfection results for 1-matchings.
fn criterion_one_matchings(small: &[SmallFactor], data_small: &[&FactorData], cfg: &SuiteConfig) -> CriterionResult {
    let with_edges: Vec<usize> = (0..small.len()).filter(|&i| small[i].g.size() > 0).collect();
    let pairs: Vec<(usize, usize)> = with_edges
        .iter()
        .flat_map(|&i| with_edges.iter().map(move |&j| (i, j)))
        .collect();
    let parts: Vec<Tally> = pairs
        .par_iter()
        .map(|&(i, j)| one_matching_pair(small[i].g, small[j].g, data_small[i], data_small[j], cfg))
        .collect();
    merge_all(parts).finish("8", "1-matching maximality and optimality theorems")
}

fn maximal_ones(g: &Graph, fd: &FactorData, budget: u64) -> Vec<EdgeSet> {
    fd.k(1)
        .matchings
        .as_ref()
        .map(|all| {
            all.iter()
                .filter(|m| is_maximal(g, m, 1, budget).ok().flatten() == Some(true))
                .cloned()
                .collect()
        })
        .unwrap_or_default()
}

fn one_matching_pair(g: &Graph, h: &Graph, fd_g: &FactorData, fd_h: &FactorData, cfg: &SuiteConfig) -> Tally {
    let mut t = Tally::default();
    let budget = cfg.budget;
    let base = json!({ "left": edges_json(g), "right": edges_json(h) });
    let maximal_g = maximal_ones(g, fd_g, budget);
    let maximal_h = maximal_ones(h, fd_h, budget);
    let is_max = |p: &ProductGraph, f: &EdgeSet| {
        is_k_matching(&p.graph, f, 1) && is_maximal(&p.graph, f, 1, budget).ok().flatten() == Some(true)
    };
    for kind in ProductKind::ALL {
        let p = product(g, h, kind);
        for mg in &maximal_g {
            for mh in &maximal_h {
                let payload = |check: &str| {
                    let mut v = base.clone();
                    v["check"] = json!(check);
                    v["kind"] = json!(kind);
                    v["m_g"] = json!(mg);
                    v["m_h"] = json!(mh);
                    v
                };
                if ConstructionKind::Boxast.supports(kind) {
                    for o in [Orientation::GH, Orientation::HG] {
                        let f = fbast(&p, mg, mh, o).expect("factor sets").edges;
                        t.check(is_max(&p, &f), || payload("fbast of maximal matchings is maximal"));
                    }
                }
                if ConstructionKind::Circledast.supports(kind) {
                    let f = fcast(&p, mg, mh).expect("factor sets").edges;
                    t.check(is_max(&p, &f), || payload("fcast of maximal matchings is maximal"));
                }
                if kind == ProductKind::Direct {
                    let f = fast(&p, mg, mh).expect("factor sets").edges;
                    t.check(is_max(&p, &f), || payload("fast of maximal matchings is maximal on the direct product"));
                }
            }
        }
    }

    for kind in [ProductKind::Strong, ProductKind::Lexicographic] {
        let p = product(g, h, kind);
        let Ok(oracle) = max_k_matching(&p.graph, 1, budget) else {
            t.add(Outcome::Unknown);
            continue;
        };
        if !oracle.exhaustive {
            t.add(Outcome::Unknown);
            continue;
        }
        let m = oracle.m_k;
        let is_maximum = |f: &EdgeSet| f.len() == m && is_k_matching(&p.graph, f, 1);
        if g.size() <= 6 && h.size() <= 6 {
            let subsets = |x: &Graph| -> Vec<EdgeSet> {
                (0u32..1 << x.size()).map(|mask| (0..x.size()).filter(|i| mask >> i & 1 == 1).collect()).collect()
            };
            let (sg, sh) = (subsets(g), subsets(h));
            for mg in &sg {
                let perfect_g = FactorFacts::of(g, mg).is_perfect(1);
                for mh in &sh {
                    let f = fast(&p, mg, mh).expect("factor sets").edges;
                    let c1 = is_maximum(&f);
                    let c2 = perfect_g && FactorFacts::of(h, mh).is_perfect(1);
                    let c3 = is_k_matching(&p.graph, &f, 1) && unmatched_count(&p.graph, &f) == 0;
                    t.check(c1 == c2 && c2 == c3, || {
                        json!({ "left": edges_json(g), "right": edges_json(h), "kind": kind, "m_g": mg, "m_h": mh,
                                "statement": "fast maximum / factors perfect / fast perfect" })
                    });
                }
            }
        } else {
            t.add(Outcome::Unknown);
        }
        let (Some(og), Some(oh)) = (fd_g.k(1).matchings.as_ref(), fd_h.k(1).matchings.as_ref()) else {
            t.add(Outcome::Unknown);
            continue;
        };
        for mg in og {
            for mh in oh {
                let c1 = is_maximum(&fcast(&p, mg, mh).expect("factor sets").edges);
                let c2 = is_maximum(&fbast(&p, mg, mh, Orientation::GH).expect("factor sets").edges);
                let c3 = is_maximum(&fbast(&p, mg, mh, Orientation::HG).expect("factor sets").edges);
                t.check(c1 == c2 && c2 == c3, || {
                    json!({ "left": edges_json(g), "right": edges_json(h), "kind": kind, "m_g": mg, "m_h": mh,
                            "statement": "fcast / fbast gh / fbast hg maximum" })
                });
            }
        }
    }
    t
}

/// `G×K_2` for bipartite `G`: two copies of `G`, and the same k-matching
/// existence.
fn criterion_double_cover(graphs: &[Graph], cfg: &SuiteConfig) -> CriterionResult {
    let k2 = Graph::complete(2);
    let parts: Vec<Tally> = graphs
        .par_iter()
        .filter(|g| g.is_bipartite())
        .map(|g| {
            let mut t = Tally::default();
            let p = product(g, &k2, ProductKind::Direct);
            let comps = p.graph.connected_components();
            let copies = if g.is_connected() {
                let iso: Result<Vec<bool>> = comps
                    .iter()
                    .map(|c| are_isomorphic_small(&p.graph.induced_subgraph(c)?, g))
                    .collect();
                match iso {
                    Ok(v) => Some(comps.len() == 2 && v.into_iter().all(|b| b)),
                    Err(_) => None,
                }
            } else {
                Some(comps.len() == 2 * g.connected_components().len())
            };
            t.verdict(copies, || json!({ "graph": edges_json(g), "components": comps.len() }));
            for k in 1..=cfg.max_k {
                let (a, b) = (max_k_matching(g, k, cfg.budget), max_k_matching(&p.graph, k, cfg.budget));
                let ok = match (a, b) {
                    (Ok(a), Ok(b)) if a.exhaustive && b.exhaustive => Some((a.m_k > 0) == (b.m_k > 0)),
                    (Ok(a), Ok(b)) if a.m_k > 0 && b.m_k > 0 => Some(true),
                    _ => None,
                };
                t.verdict(ok, || json!({ "graph": edges_json(g), "k": k }));
            }
            t
        })
        .collect();
    merge_all(parts).finish("9", "bipartite double cover G×K2")
}

fn in_pool<T: Send>(threads: Option<usize>, f: impl FnOnce() -> T + Send) -> Result<T> {
    match threads {
        None => Ok(f()),
        Some(n) => {
            let pool = rayon::ThreadPoolBuilder::new()
                .num_threads(n)
                .build()
                .map_err(|e| Error::InvalidParameter(format!("thread pool: {e}")))?;
            Ok(pool.install(f))
        }
    }
}

/// Criteria 1-9 plus supplementary checks, without the determinism
/// comparison.
fn run_checks(corpus: &Corpus, cfg: &SuiteConfig) -> Result<CheckLedger> {
    let mut criteria = Vec::new();
    let mut timings = Vec::new();
    let timed = |id: &str, start: Instant, timings: &mut Vec<(String, u128)>| {
        timings.push((id.to_string(), start.elapsed().as_millis()));
    };
    if !corpus.labeled.is_empty() {
        let s = Instant::now();
        criteria.push(criterion_size_identity(corpus, cfg));
        timed("1", s, &mut timings);
    }
    if !corpus.graphs.is_empty() {
        let s = Instant::now();
        let data: Vec<FactorData> = corpus
            .graphs
            .par_iter()
            .map(|g| FactorData::new(g, cfg.max_k, cfg.budget))
            .collect::<Result<_>>()?;
        let small_idx: Vec<usize> = (0..corpus.graphs.len())
            .filter(|&i| corpus.graphs[i].order() <= cfg.small_n && data[i].k(1).matchings.is_some())
            .collect();
        let small = small_factors(&corpus.graphs, &data, cfg);
        let data_small: Vec<&FactorData> = small_idx.iter().map(|&i| &data[i]).collect();
        timed("factors", s, &mut timings);

        let s = Instant::now();
        let (c2, c3) = criteria_constructions(&small, cfg);
        criteria.push(c2);
        criteria.push(c3);
        timed("2-3", s, &mut timings);

        let s = Instant::now();
        let wb = criteria_well_behaved(&data, cfg);
        criteria.push(wb.seven);
        criteria.push(wb.chain);
        timed("4-5", s, &mut timings);

        if cfg.scenarios {
            let s = Instant::now();
            criteria.push(criterion_scenarios(cfg));
            timed("6", s, &mut timings);
        }

        let s = Instant::now();
        criteria.push(criterion_whp(&small, &data_small, cfg));
        timed("7", s, &mut timings);

        let s = Instant::now();
        criteria.push(criterion_one_matchings(&small, &data_small, cfg));
        timed("8", s, &mut timings);

        let s = Instant::now();
        criteria.push(criterion_double_cover(&corpus.graphs, cfg));
        timed("9", s, &mut timings);

        criteria.extend(wb.extra);
    } else if cfg.scenarios {
        criteria.push(criterion_scenarios(cfg));
    }
    Ok(CheckLedger {
        corpus: corpus.name.clone(),
        criteria,
        timings_ms: timings,
    })
}

/// Runs every check over `corpus`. With `determinism`, the scenarios and
/// the ≤ 3-vertex part of the corpus are rerun on one thread and on four
/// threads and the JSON outputs compared byte for byte.
pub fn run_suite(corpus: &Corpus, cfg: &SuiteConfig) -> Result<CheckLedger> {
    let mut ledger = in_pool(cfg.threads, || run_checks(corpus, cfg))??;
    if cfg.determinism && !corpus.is_empty() {
        let s = Instant::now();
        ledger.criteria.insert(
            ledger.criteria.iter().position(|c| c.id.starts_with('S')).unwrap_or(ledger.criteria.len()),
            criterion_determinism(corpus, cfg)?,
        );
        ledger.timings_ms.push(("10".into(), s.elapsed().as_millis()));
    }
    Ok(ledger)
}

/// Byte-identical reports across repeated runs and worker counts.
pub fn criterion_determinism(corpus: &Corpus, cfg: &SuiteConfig) -> Result<CriterionResult> {
    let sub = Corpus {
        name: format!("{}-determinism", corpus.name),
        graphs: corpus.graphs.iter().filter(|g| g.order() <= 3).cloned().collect(),
        labeled: corpus.labeled.iter().filter(|g| g.order() <= 3).cloned().collect(),
    };
    let sub_cfg = SuiteConfig {
        determinism: false,
        threads: None,
        ..cfg.clone()
    };
    let render = |threads: usize| -> Result<String> {
        in_pool(Some(threads), || -> Result<String> {
            let ledger = run_checks(&sub, &sub_cfg)?;
            let scenarios: Vec<_> = builtin_scenarios()
                .par_iter()
                .map(|s| run_scenario_with(s, cfg.budget))
                .collect::<Result<_>>()?;
            Ok(format!("{}\n{}", ledger.to_json()?, serde_json::to_string(&scenarios)?))
        })?
    };
    let mut t = Tally::default();
    let first = render(1)?;
    for threads in [1, 4] {
        let again = render(threads)?;
        t.check(again == first, || json!({ "threads": threads }));
    }
    Ok(t.finish("10", "byte-identical reports across runs and thread counts"))
}
