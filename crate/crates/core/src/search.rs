//! Exact search over k-matchings.
//!
//! A short lexicographic depth-first pass settles easy graphs. Otherwise
//! the search works on a constraint model: every edge is in or out, every
//! vertex is covered (degree k) or not (degree 0). Branching is on the
//! cover of one vertex at a time. Propagation:
//! - a vertex carrying an edge is covered, and one that cannot reach degree
//!   k is not;
//! - a covered vertex with exactly enough undecided edges takes all of them,
//!   a saturated one drops the rest;
//! - each component of the still-usable graph covers at most its order
//!   (even for odd k), or twice its smaller side when bipartite, and the
//!   total must reach the target;
//! - relaxations bound the total too: a maximum matching for k = 1, a flow
//!   on the bipartite double cover otherwise, then a linear program with
//!   cover variables.
//!
//! Once every vertex is decided the rest is an exact degree problem, solved
//! by perfect matching on Tutte's gadget.
//!
//! The size is found by probing down from the bound. The witness is then fixed edge by edge in canonical order,
//! taking each edge whenever a maximum completion still exists, which gives
//! the lexicographically smallest maximum k-matching.
//!
//! Enumeration is a plain depth-first walk over vertices in index order.

use microlp::{ComparisonOp, OptimizationDirection, Problem, SolveOutcome};
use petgraph::algo::{dinics, maximum_matching};
use petgraph::graph::{DiGraph, UnGraph};

use crate::error::{Error, Result};
use crate::graph::{EdgeId, EdgeSet, Graph};

pub const DEFAULT_BUDGET: u64 = 50_000_000;

#[derive(Clone, Debug)]
pub struct SearchOptions {
    /// Node limit. Exceeding it ends the search with `exhaustive = false`.
    pub budget: u64,
    /// Only look for a k-matching of at least this size; `best` is then
    /// any such k-matching, not a canonical maximum.
    pub stop_at: Option<usize>,
    /// Only edges in this set may be used.
    pub mask: Option<EdgeSet>,
    /// A known k-matching; its size is used as a lower bound.
    pub hint: Option<EdgeSet>,
    /// For k = 1, take the target size from a blossom maximum matching.
    pub blossom: bool,
}

impl Default for SearchOptions {
    fn default() -> Self {
        SearchOptions {
            budget: DEFAULT_BUDGET,
            stop_at: None,
            mask: None,
            hint: None,
            blossom: true,
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchResult {
    pub best: Option<EdgeSet>,
    pub exhaustive: bool,
    pub nodes: u64,
}

fn allowed_vec(g: &Graph, mask: Option<&EdgeSet>) -> Result<Vec<bool>> {
    match mask {
        None => Ok(vec![true; g.size()]),
        Some(m) => {
            m.check_in(g)?;
            let mut a = vec![false; g.size()];
            for e in m {
                a[e] = true;
            }
            Ok(a)
        }
    }
}

fn blossom_size(g: &Graph, allowed: &[bool]) -> usize {
    let mut pg = UnGraph::<(), ()>::with_capacity(g.order(), g.size());
    let nodes: Vec<_> = (0..g.order()).map(|_| pg.add_node(())).collect();
    for (e, &(a, b)) in g.edges().iter().enumerate() {
        if allowed[e] {
            pg.add_edge(nodes[a], nodes[b], ());
        }
    }
    maximum_matching(&pg).len()
}

/// Maximum k-matching search. `best` is `None` only when the budget ran
/// out before any k-matching was available.
pub fn search(g: &Graph, k: u32, opts: &SearchOptions) -> Result<SearchResult> {
    search_staged(g, k, opts, QUICK_BUDGET)
}

fn search_staged(g: &Graph, k: u32, opts: &SearchOptions, quick_budget: u64) -> Result<SearchResult> {
    crate::matching::check_k(k)?;
    let allowed = allowed_vec(g, opts.mask.as_ref())?;
    let mut best = EdgeSet::new();
    if let Some(h) = &opts.hint {
        h.check_in(g)?;
        if !h.iter().all(|e| allowed[e]) || !crate::matching::is_k_matching(g, h, k) {
            return Err(Error::InvalidParameter("hint is not a usable k-matching".into()));
        }
        best = h.clone();
    }
    let k = k as usize;
    let mut spent = 0;
    if opts.stop_at.is_none() {
        let upper = if k == 1 && opts.blossom { blossom_size(g, &allowed) } else { usize::MAX };
        let lower = if k == 1 && opts.blossom { upper } else { best.len() };
        let quick = Lex::run(g, k, &allowed, lower, upper, opts.budget.min(quick_budget));
        if !quick.aborted {
            let best = quick.best.map(|b| b.into_iter().collect()).unwrap_or(best);
            return Ok(SearchResult { best: Some(best), exhaustive: true, nodes: quick.nodes });
        }
        spent = quick.nodes.min(opts.budget);
    }
    let mut cp = Model::new(g, k, &allowed, opts.budget);
    cp.nodes = spent;
    let covered = |m: &EdgeSet| 2 * m.len() / k;
    let Some(mut upper) = cp.root_cap() else {
        return Ok(SearchResult { best: Some(best), exhaustive: true, nodes: cp.nodes });
    };
    if k == 1 && opts.blossom {
        upper = upper.min(2 * blossom_size(g, &allowed));
    }

    if let Some(s) = opts.stop_at {
        let want = cp.admissible_from((2 * s).div_ceil(k));
        if best.len() >= s || want > upper {
            return Ok(SearchResult { best: Some(best), exhaustive: true, nodes: cp.nodes });
        }
        let found = cp.feasible(want);
        let exhaustive = !cp.aborted;
        return Ok(SearchResult { best: Some(found.unwrap_or(best)), exhaustive, nodes: cp.nodes });
    }

    // Size: probe down from the bound.
    let mut want = upper;
    while want > covered(&best) {
        if cp.admissible_from(want) == want {
            match cp.feasible(want) {
                Some(m) => {
                    best = m;
                    break;
                }
                None if cp.aborted => {
                    return Ok(SearchResult { best: Some(best), exhaustive: false, nodes: cp.nodes });
                }
                None => {}
            }
        }
        want -= 1;
    }

    // Canonical witness.
    let target = covered(&best);
    if target == 0 {
        return Ok(SearchResult { best: Some(best), exhaustive: true, nodes: cp.nodes });
    }
    cp.target = target;
    for e in 0..g.size() {
        if cp.edge[e] != FREE {
            continue;
        }
        let mark = cp.trail.len();
        if !best.contains(e) {
            let ok = cp.assign_edge(e, IN) && cp.propagate();
            let found = if ok { cp.solve_here() } else { None };
            if cp.aborted {
                return Ok(SearchResult { best: Some(best), exhaustive: false, nodes: cp.nodes });
            }
            match found {
                Some(m) => {
                    best = m;
                    continue;
                }
                None => cp.undo(mark),
            }
            let ok = cp.assign_edge(e, OUT) && cp.propagate();
            debug_assert!(ok);
        } else {
            let ok = cp.assign_edge(e, IN) && cp.propagate();
            debug_assert!(ok);
        }
    }
    let witness: EdgeSet = (0..g.size()).filter(|&e| cp.edge[e] == IN).collect();
    debug_assert_eq!(witness.len(), best.len());
    Ok(SearchResult { best: Some(witness), exhaustive: true, nodes: cp.nodes })
}

/// Node limit of the lexicographic first pass.
const QUICK_BUDGET: u64 = 3_000;

const FREE: u8 = 0;
const IN: u8 = 1;
const OUT: u8 = 2;
const YES: u8 = 1;
const NO: u8 = 2;

enum Undo {
    Edge(EdgeId),
    Cover(usize),
}

struct Model<'a> {
    g: &'a Graph,
    k: usize,
    edge: Vec<u8>,
    cover: Vec<u8>,
    ins: Vec<usize>,
    free: Vec<usize>,
    alive: usize,
    target: usize,
    trail: Vec<Undo>,
    queue: Vec<usize>,
    budget: u64,
    nodes: u64,
    aborted: bool,
}

impl<'a> Model<'a> {
    fn new(g: &'a Graph, k: usize, allowed: &[bool], budget: u64) -> Self {
        let n = g.order();
        let mut free = vec![0; n];
        let mut edge = vec![OUT; g.size()];
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if allowed[e] {
                edge[e] = FREE;
                free[a] += 1;
                free[b] += 1;
            }
        }
        let mut m = Model {
            g,
            k,
            edge,
            cover: vec![FREE; n],
            ins: vec![0; n],
            free,
            alive: n,
            target: 0,
            trail: Vec::new(),
            queue: (0..n).collect(),
            budget,
            nodes: 0,
            aborted: false,
        };
        let ok = m.propagate();
        debug_assert!(ok);
        m.trail.clear();
        m
    }

    /// Smallest covered-vertex count `>= c` that some k-matching could have.
    fn admissible_from(&self, c: usize) -> usize {
        let mut c = c.max(self.k + 1);
        if self.k % 2 == 1 && c % 2 == 1 {
            c += 1;
        }
        c
    }

    fn root_cap(&mut self) -> Option<usize> {
        self.cap().map(|c| c.min(self.relaxed_cap()).min(self.lp_cap()))
    }

    fn assign_edge(&mut self, e: EdgeId, s: u8) -> bool {
        if self.edge[e] != FREE {
            return self.edge[e] == s;
        }
        let (a, b) = self.g.edges()[e];
        self.edge[e] = s;
        self.free[a] -= 1;
        self.free[b] -= 1;
        if s == IN {
            self.ins[a] += 1;
            self.ins[b] += 1;
        }
        self.trail.push(Undo::Edge(e));
        self.queue.push(a);
        self.queue.push(b);
        true
    }

    fn assign_cover(&mut self, v: usize, s: u8) -> bool {
        if self.cover[v] != FREE {
            return self.cover[v] == s;
        }
        self.cover[v] = s;
        if s == NO {
            self.alive -= 1;
        }
        self.trail.push(Undo::Cover(v));
        self.queue.push(v);
        true
    }

    fn undo(&mut self, mark: usize) {
        while self.trail.len() > mark {
            match self.trail.pop().unwrap() {
                Undo::Edge(e) => {
                    let (a, b) = self.g.edges()[e];
                    if self.edge[e] == IN {
                        self.ins[a] -= 1;
                        self.ins[b] -= 1;
                    }
                    self.free[a] += 1;
                    self.free[b] += 1;
                    self.edge[e] = FREE;
                }
                Undo::Cover(v) => {
                    if self.cover[v] == NO {
                        self.alive += 1;
                    }
                    self.cover[v] = FREE;
                }
            }
        }
        self.queue.clear();
    }

    fn propagate(&mut self) -> bool {
        let k = self.k;
        loop {
            while let Some(v) = self.queue.pop() {
                let (i, f) = (self.ins[v], self.free[v]);
                if i > k {
                    self.queue.clear();
                    return false;
                }
                let ok = (i == 0 || self.assign_cover(v, YES)) && (i + f >= k || self.assign_cover(v, NO));
                if !ok {
                    self.queue.clear();
                    return false;
                }
                let drop = match self.cover[v] {
                    NO => Some(OUT),
                    YES if i == k => Some(OUT),
                    YES if i + f == k => Some(IN),
                    _ => None,
                };
                if let (Some(s), true) = (drop, f > 0) {
                    for &(_, e) in self.g.neighbors(v) {
                        if self.edge[e] == FREE && !self.assign_edge(e, s) {
                            self.queue.clear();
                            return false;
                        }
                    }
                }
            }
            if self.alive < self.target {
                return false;
            }
            if self.alive == self.target {
                for v in 0..self.g.order() {
                    if self.cover[v] == FREE {
                        self.assign_cover(v, YES);
                    }
                }
            }
            if self.queue.is_empty() {
                return true;
            }
        }
    }

    /// Largest covered-vertex count any completion can reach, or `None` when
    /// a covered vertex cannot be served.
    fn cap(&self) -> Option<usize> {
        let (n, k) = (self.g.order(), self.k);
        let mut color: Vec<u8> = vec![2; n];
        let mut stack = Vec::new();
        let mut total = 0;
        for s in 0..n {
            if color[s] != 2 || self.cover[s] == NO {
                continue;
            }
            color[s] = 0;
            stack.push(s);
            let (mut sides, mut bip, mut forced) = ([0usize; 2], true, 0usize);
            while let Some(x) = stack.pop() {
                sides[color[x] as usize] += 1;
                if self.cover[x] == YES {
                    forced += 1;
                }
                for &(y, e) in self.g.neighbors(x) {
                    if self.edge[e] == OUT {
                        continue;
                    }
                    if color[y] == 2 {
                        color[y] = 1 - color[x];
                        stack.push(y);
                    } else if color[y] == color[x] {
                        bip = false;
                    }
                }
            }
            let cap = component_cap(sides, bip, k);
            if forced > cap {
                return None;
            }
            total += cap;
        }
        Some(total)
    }

    /// Covered-vertex bound from a relaxation: for k = 1 a maximum matching
    /// on the undecided edges, otherwise a flow on the bipartite double
    /// cover with capacity k per vertex (the fractional optimum).
    fn relaxed_cap(&self) -> usize {
        let (g, k) = (self.g, self.k);
        let n = g.order();
        if k == 1 {
            let mut pg = UnGraph::<(), ()>::with_capacity(n, 0);
            let nodes: Vec<_> = (0..n).map(|_| pg.add_node(())).collect();
            let mut fixed = 0;
            for (e, &(a, b)) in g.edges().iter().enumerate() {
                match self.edge[e] {
                    IN => fixed += 1,
                    FREE => {
                        pg.add_edge(nodes[a], nodes[b], ());
                    }
                    _ => {}
                }
            }
            return 2 * (fixed + maximum_matching(&pg).len());
        }
        let mut net = DiGraph::<(), u32>::with_capacity(2 * n + 2, 2 * g.size() + 2 * n);
        let src = net.add_node(());
        let dst = net.add_node(());
        let left: Vec<_> = (0..n).map(|_| net.add_node(())).collect();
        let right: Vec<_> = (0..n).map(|_| net.add_node(())).collect();
        let mut fixed = 0;
        for v in 0..n {
            if self.cover[v] != NO && self.ins[v] < k {
                let r = (k - self.ins[v]) as u32;
                net.add_edge(src, left[v], r);
                net.add_edge(right[v], dst, r);
            }
            fixed += self.ins[v];
        }
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if self.edge[e] == FREE {
                net.add_edge(left[a], right[b], 1);
                net.add_edge(left[b], right[a], 1);
            }
        }
        (fixed + dinics(&net, src, dst).0 as usize) / k
    }

    /// Covered-vertex bound from the linear relaxation with cover variables:
    /// degree k times cover, and an edge no more used than either end is
    /// covered. Solver trouble gives no bound.
    fn lp_cap(&self) -> usize {
        let g = self.g;
        let mut lp = Problem::new(OptimizationDirection::Maximize);
        let range = |s: u8| match s {
            IN => (1.0, 1.0),
            OUT => (0.0, 0.0),
            _ => (0.0, 1.0),
        };
        let xs: Vec<_> = self.edge.iter().map(|&s| lp.add_var(0.0, range(s))).collect();
        let ys: Vec<_> = self.cover.iter().map(|&s| lp.add_var(1.0, range(s))).collect();
        for v in 0..g.order() {
            let mut row: Vec<_> = g.neighbors(v).iter().map(|&(_, e)| (xs[e], 1.0)).collect();
            row.push((ys[v], -(self.k as f64)));
            lp.add_constraint(row.as_slice(), ComparisonOp::Eq, 0.0);
        }
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if self.edge[e] == FREE {
                lp.add_constraint([(xs[e], 1.0), (ys[a], -1.0)].as_slice(), ComparisonOp::Le, 0.0);
                lp.add_constraint([(xs[e], 1.0), (ys[b], -1.0)].as_slice(), ComparisonOp::Le, 0.0);
            }
        }
        match lp.solve() {
            Ok(SolveOutcome::Solution(s)) => (s.objective() + 1e-6).floor() as usize,
            Err(microlp::Error::Infeasible) => 0,
            _ => usize::MAX,
        }
    }

    /// Some k-matching covering at least `target` vertices, from scratch.
    fn feasible(&mut self, target: usize) -> Option<EdgeSet> {
        self.target = target;
        self.queue.extend(0..self.g.order());
        if !self.propagate() {
            self.undo(0);
            return None;
        }
        let r = self.solve_here();
        self.undo(0);
        r
    }

    /// Completion of the current state; leaves the state as found.
    fn solve_here(&mut self) -> Option<EdgeSet> {
        let mark = self.trail.len();
        let r = self.dfs();
        let found = r.then(|| (0..self.g.size()).filter(|&e| self.edge[e] == IN).collect());
        self.undo(mark);
        found
    }

    fn dfs(&mut self) -> bool {
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return false;
        }
        match self.cap() {
            Some(c) if c >= self.target => {}
            _ => return false,
        }
        if self.relaxed_cap() < self.target || self.lp_cap() < self.target {
            return false;
        }
        let pick = (0..self.g.order())
            .filter(|&v| self.cover[v] == FREE)
            .min_by_key(|&v| (self.free[v], v));
        match pick {
            None => self.exact_factor(),
            Some(v) => self.branch(|m| m.assign_cover(v, NO)) || (!self.aborted && self.branch(|m| m.assign_cover(v, YES))),
        }
    }

    /// Every remaining vertex is decided, so the rest is a degree-prescribed
    /// factor problem: Tutte's gadget turns it into perfect matching.
    fn exact_factor(&mut self) -> bool {
        let g = self.g;
        let mut pg = UnGraph::<(), ()>::new_undirected();
        let mut ports: Vec<Vec<_>> = vec![Vec::new(); g.order()];
        let mut links = Vec::new();
        for (e, &(a, b)) in g.edges().iter().enumerate() {
            if self.edge[e] == FREE {
                let (x, y) = (pg.add_node(()), pg.add_node(()));
                pg.add_edge(x, y, ());
                ports[a].push(x);
                ports[b].push(y);
                links.push((e, x, y));
            }
        }
        for v in 0..g.order() {
            let need = if self.cover[v] == YES { self.k - self.ins[v] } else { 0 };
            for _ in need..ports[v].len() {
                let c = pg.add_node(());
                for &p in &ports[v] {
                    pg.add_edge(c, p, ());
                }
            }
        }
        let m = maximum_matching(&pg);
        if !m.is_perfect() {
            return false;
        }
        for (e, x, y) in links {
            let s = if m.mate(x) == Some(y) { IN } else { OUT };
            self.assign_edge(e, s);
        }
        self.queue.clear();
        true
    }

    fn branch(&mut self, step: impl FnOnce(&mut Self) -> bool) -> bool {
        let mark = self.trail.len();
        if step(self) && self.propagate() && self.dfs() {
            return true;
        }
        self.undo(mark);
        false
    }
}

/// Lexicographic depth-first search: vertices in index order, at each
/// vertex the edges to higher neighbours in combination order. The first
/// maximum reached is the canonical one. Cheap per node, so it goes first.
struct Lex<'a> {
    g: &'a Graph,
    k: usize,
    n: usize,
    allowed: &'a [bool],
    deg: Vec<usize>,
    in_m: Vec<bool>,
    chosen: Vec<EdgeId>,
    best: Option<Vec<EdgeId>>,
    lower: usize,
    upper: usize,
    budget: u64,
    nodes: u64,
    aborted: bool,
    done: bool,
}

impl<'a> Lex<'a> {
    fn run(g: &'a Graph, k: usize, allowed: &'a [bool], lower: usize, upper: usize, budget: u64) -> Self {
        let mut s = Lex {
            g,
            k,
            n: g.order(),
            allowed,
            deg: vec![0; g.order()],
            in_m: vec![false; g.size()],
            chosen: Vec::new(),
            best: None,
            lower,
            upper,
            budget,
            nodes: 0,
            aborted: false,
            done: false,
        };
        if let Some((b, _)) = s.bound(0) {
            s.upper = s.upper.min(b);
            s.visit(0);
        }
        s
    }

    fn floor(&self) -> usize {
        match &self.best {
            Some(b) => b.len() + 1,
            None => self.lower,
        }
    }

    fn visit(&mut self, v: usize) {
        if self.done || self.aborted {
            return;
        }
        self.nodes += 1;
        if self.nodes > self.budget {
            self.aborted = true;
            return;
        }
        if v == self.n {
            if self.chosen.len() >= self.floor() {
                self.best = Some(self.chosen.clone());
                self.done = self.chosen.len() >= self.upper;
            }
            return;
        }
        let Some((bound, dead)) = self.bound(v) else {
            return;
        };
        if bound < self.floor() {
            return;
        }
        let k = self.k;
        if self.deg[v] == k {
            self.visit(v + 1);
            return;
        }
        let cands: Vec<(usize, EdgeId)> = self
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&(w, e)| w > v && self.allowed[e] && !dead[w] && self.deg[w] < k)
            .collect();
        let need = k - self.deg[v];
        if cands.len() >= need {
            self.combine(v, &cands, 0, need);
        }
        if self.deg[v] == 0 {
            self.visit(v + 1);
        }
    }

    fn combine(&mut self, v: usize, cands: &[(usize, EdgeId)], start: usize, need: usize) {
        if need == 0 {
            self.visit(v + 1);
            return;
        }
        for i in start..=cands.len() - need {
            if self.done || self.aborted {
                return;
            }
            let (w, e) = cands[i];
            self.deg[v] += 1;
            self.deg[w] += 1;
            self.in_m[e] = true;
            self.chosen.push(e);
            self.combine(v, cands, i + 1, need - 1);
            self.chosen.pop();
            self.in_m[e] = false;
            self.deg[w] -= 1;
            self.deg[v] -= 1;
        }
    }

    /// Upper bound on the final size given the decisions for vertices
    /// `< v`, plus the remaining vertices that must stay unmatched.
    fn bound(&self, v: usize) -> Option<(usize, Vec<bool>)> {
        let (n, k) = (self.n, self.k);
        let g = self.g;
        let live_edge = |e: EdgeId, x: usize| self.allowed[e] && x >= v && self.deg[x] < k;

        let mut dead = vec![false; n];
        let mut pot = vec![0usize; n];
        let mut queue = Vec::new();
        for w in v..n {
            if self.deg[w] == k {
                continue;
            }
            let p = self.deg[w] + g.neighbors(w).iter().filter(|&&(x, e)| live_edge(e, x)).count();
            pot[w] = p;
            if p < k {
                dead[w] = true;
                queue.push(w);
            }
        }
        while let Some(w) = queue.pop() {
            if self.deg[w] > 0 {
                return None;
            }
            for &(x, e) in g.neighbors(w) {
                if live_edge(e, x) && !dead[x] {
                    pot[x] -= 1;
                    if pot[x] < k {
                        dead[x] = true;
                        queue.push(x);
                    }
                }
            }
        }

        let usable = |x: usize| if x < v { self.deg[x] == k } else { self.deg[x] == k || !dead[x] };
        let open = |x: usize| x >= v && self.deg[x] < k && !dead[x];
        let mut color: Vec<u8> = vec![2; n];
        let mut possible = 0;
        let mut stack = Vec::new();
        for s in 0..n {
            if color[s] != 2 || !usable(s) {
                continue;
            }
            color[s] = 0;
            stack.push(s);
            let (mut sides, mut bip, mut forced) = ([0usize; 2], true, 0usize);
            while let Some(x) = stack.pop() {
                sides[color[x] as usize] += 1;
                if self.deg[x] > 0 {
                    forced += 1;
                }
                for &(y, e) in g.neighbors(x) {
                    if !(self.in_m[e] || (self.allowed[e] && open(x) && open(y))) {
                        continue;
                    }
                    if color[y] == 2 {
                        color[y] = 1 - color[x];
                        stack.push(y);
                    } else if color[y] == color[x] {
                        bip = false;
                    }
                }
            }
            let cap = component_cap(sides, bip, k);
            if forced > cap {
                return None;
            }
            possible += cap;
        }
        Some((k * possible / 2, dead))
    }
}

/// Most vertices a k-matching can cover in a connected piece with the given
/// 2-colouring sides.
fn component_cap(sides: [usize; 2], bipartite: bool, k: usize) -> usize {
    let mut cap = if bipartite {
        let small = sides[0].min(sides[1]);
        if small < k {
            0
        } else {
            2 * small
        }
    } else {
        let c = sides[0] + sides[1];
        if c <= k {
            0
        } else {
            c
        }
    };
    if k % 2 == 1 {
        cap &= !1;
    }
    cap
}

/// All k-matchings within `mask`, sorted (the empty set first).
pub fn enumerate(g: &Graph, k: u32, mask: Option<&EdgeSet>) -> Result<Vec<EdgeSet>> {
    crate::matching::check_k(k)?;
    let allowed = allowed_vec(g, mask)?;
    let mut w = Walk {
        g,
        k: k as usize,
        allowed,
        deg: vec![0; g.order()],
        chosen: Vec::new(),
        found: Vec::new(),
    };
    w.visit(0);
    let mut out = w.found;
    out.sort();
    Ok(out)
}

struct Walk<'a> {
    g: &'a Graph,
    k: usize,
    allowed: Vec<bool>,
    deg: Vec<usize>,
    chosen: Vec<EdgeId>,
    found: Vec<EdgeSet>,
}

impl Walk<'_> {
    fn visit(&mut self, v: usize) {
        if v == self.g.order() {
            self.found.push(self.chosen.iter().copied().collect());
            return;
        }
        let k = self.k;
        if self.deg[v] == k {
            self.visit(v + 1);
            return;
        }
        let cands: Vec<(usize, EdgeId)> = self
            .g
            .neighbors(v)
            .iter()
            .copied()
            .filter(|&(w, e)| w > v && self.allowed[e] && self.deg[w] < k)
            .collect();
        let need = k - self.deg[v];
        if cands.len() >= need {
            self.combine(v, &cands, 0, need);
        }
        if self.deg[v] == 0 {
            self.visit(v + 1);
        }
    }

    fn combine(&mut self, v: usize, cands: &[(usize, EdgeId)], start: usize, need: usize) {
        if need == 0 {
            self.visit(v + 1);
            return;
        }
        for i in start..=cands.len() - need {
            let (w, e) = cands[i];
            self.deg[v] += 1;
            self.deg[w] += 1;
            self.chosen.push(e);
            self.combine(v, cands, i + 1, need - 1);
            self.chosen.pop();
            self.deg[w] -= 1;
            self.deg[v] -= 1;
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::matching::is_k_matching;

    fn brute(g: &Graph, k: u32) -> (usize, EdgeSet) {
        let m = g.size();
        let mut best: Option<EdgeSet> = None;
        for mask in 0u64..(1 << m) {
            let s: EdgeSet = (0..m).filter(|&e| mask >> e & 1 == 1).collect();
            if is_k_matching(g, &s, k) {
                let better = match &best {
                    None => true,
                    Some(b) => s.len() > b.len() || (s.len() == b.len() && s < *b),
                };
                if better {
                    best = Some(s);
                }
            }
        }
        let b = best.unwrap();
        (b.len(), b)
    }

    #[test]
    fn agrees_with_brute_force() {
        let graphs = [
            Graph::complete(4),
            Graph::complete(5),
            Graph::cycle(5),
            Graph::star(4),
            Graph::path(6),
            Graph::from_edges(6, [(0, 1), (1, 2), (0, 2), (3, 4), (4, 5), (3, 5), (2, 3)]).unwrap(),
        ];
        for g in &graphs {
            for k in 1..=4 {
                for blossom in [false, true] {
                    let opts = SearchOptions { blossom, ..SearchOptions::default() };
                    let r = search(g, k, &opts).unwrap();
                    let (m, w) = brute(g, k);
                    assert!(r.exhaustive);
                    assert_eq!(r.best.as_ref().unwrap().len(), m);
                    assert_eq!(r.best.unwrap(), w, "canonical witness for k={k}");
                }
            }
        }
    }

    #[test]
    fn canonical_on_small_labeled_graphs() {
        for g in crate::corpus::builtin_labeled(5).unwrap() {
            for k in 1..=3 {
                let want = brute(&g, k).1;
                for quick in [0, QUICK_BUDGET] {
                    for blossom in [false, true] {
                        let opts = SearchOptions { blossom, ..SearchOptions::default() };
                        let r = search_staged(&g, k, &opts, quick).unwrap();
                        assert!(r.exhaustive);
                        assert_eq!(r.best.unwrap(), want, "{:?} k={k}", g.edges());
                    }
                }
            }
        }
    }

    #[test]
    fn enumerate_counts() {
        let g = Graph::cycle(4);
        let all = enumerate(&g, 1, None).unwrap();
        assert_eq!(all.len(), 7);
        assert!(all[0].is_empty());
        assert!(all.windows(2).all(|w| w[0] < w[1]));
    }

    #[test]
    fn mask_restricts() {
        let g = Graph::complete(4);
        let mask: EdgeSet = [0].into_iter().collect();
        let opts = SearchOptions { mask: Some(mask), ..SearchOptions::default() };
        assert_eq!(search(&g, 1, &opts).unwrap().best.unwrap().len(), 1);
    }

    #[test]
    fn budget_cuts_search() {
        let g = Graph::complete(5);
        let opts = SearchOptions { budget: 2, blossom: false, ..SearchOptions::default() };
        let r = search(&g, 2, &opts).unwrap();
        assert!(!r.exhaustive);
    }

    #[test]
    fn hint_is_validated() {
        let g = Graph::path(3);
        let opts = SearchOptions { hint: Some(g.all_edges()), ..SearchOptions::default() };
        assert!(matches!(search(&g, 1, &opts), Err(Error::InvalidParameter(_))));
    }
}

