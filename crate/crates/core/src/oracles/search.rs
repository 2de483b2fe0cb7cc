//! Budgeted exact search for `MP`, `γ_b` and `γ`.
//!
//! Every search counts visited nodes and stops at its budget, returning the
//! proven range instead of a guess.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistMatrix, Graph, Vertex};
use crate::metric::radius_center;
use crate::oracles::broadcast::{verify_broadcast, Broadcast};
use crate::oracles::lp::lp_fractional;

/// Default node budget.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct MpOutcome {
    /// Set when the search completed.
    pub value: Option<usize>,
    pub lower: usize,
    pub upper: usize,
    pub witness: Vec<Vertex>,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct GammaBOutcome {
    pub value: Option<usize>,
    /// Proven lower bound; equals `value` when complete.
    pub lower: usize,
    /// Cost of the best broadcast found.
    pub upper: usize,
    pub witness: Broadcast,
    pub efficient: bool,
    /// Closed by `⌈LP⌉` meeting a heuristic without any search.
    pub by_sandwich: bool,
    pub nodes: u64,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DominationOutcome {
    pub value: Option<usize>,
    pub lower: usize,
    pub upper: usize,
    pub witness: Vec<Vertex>,
    pub nodes: u64,
}

struct Budget {
    used: u64,
    limit: u64,
}

impl Budget {
    fn new(limit: u64) -> Budget {
        Budget { used: 0, limit }
    }

    /// Counts one node; false once the limit is exceeded.
    fn tick(&mut self) -> bool {
        self.used += 1;
        self.used <= self.limit
    }
}

/// Greedy multipacking over `candidates` in order, given `count[v][s]` of an
/// already chosen set.
fn greedy_packing(d: &DistMatrix, ecc: &[usize], candidates: &[Vertex], base: &[Vertex]) -> Vec<Vertex> {
    let n = d.n();
    let mut counts = BallCounts::new(d, ecc);
    for &v in base {
        counts.add(d, v);
    }
    let mut chosen = Vec::new();
    for &v in candidates {
        if counts.fits(d, v) {
            counts.add(d, v);
            chosen.push(v);
        }
    }
    debug_assert!(chosen.len() <= n);
    chosen
}

/// Slack `s - |M ∩ N_s[v]|` for `1 <= s <= e(v)`, with suffix minima so a
/// membership test costs one lookup per vertex.
#[derive(Clone)]
struct BallCounts {
    slack: Vec<Vec<i32>>,
    /// `sufmin[v][k] = min_{s >= k} slack[v][s]`.
    sufmin: Vec<Vec<i32>>,
}

impl BallCounts {
    fn new(d: &DistMatrix, ecc: &[usize]) -> BallCounts {
        let slack: Vec<Vec<i32>> = (0..d.n()).map(|v| (0..=ecc[v]).map(|s| s as i32).collect()).collect();
        let mut bc = BallCounts { sufmin: slack.clone(), slack };
        for v in 0..d.n() {
            bc.refresh(v);
        }
        bc
    }

    fn refresh(&mut self, v: Vertex) {
        let (row, suf) = (&self.slack[v], &mut self.sufmin[v]);
        let mut m = i32::MAX;
        for s in (1..row.len()).rev() {
            m = m.min(row[s]);
            suf[s] = m;
        }
    }

    fn fits(&self, d: &DistMatrix, u: Vertex) -> bool {
        let du = d.row(u);
        self.sufmin.iter().enumerate().all(|(v, suf)| {
            let k = (du[v] as usize).max(1);
            k >= suf.len() || suf[k] > 0
        })
    }

    fn shift(&mut self, d: &DistMatrix, u: Vertex, delta: i32) {
        let du = d.row(u);
        for v in 0..self.slack.len() {
            let k = (du[v] as usize).max(1);
            for x in self.slack[v].iter_mut().skip(k) {
                *x -= delta;
            }
            self.refresh(v);
        }
    }

    fn add(&mut self, d: &DistMatrix, u: Vertex) {
        self.shift(d, u, 1);
    }

    fn remove(&mut self, d: &DistMatrix, u: Vertex) {
        self.shift(d, u, -1);
    }
}

/// Greedy cover of `cands` by groups of pairwise distance at most 2. A
/// multipacking holds at most one vertex per group, since two vertices at
/// distance <= 2 share a radius-1 ball.
fn near_clique_cover(d: &DistMatrix, cands: &[Vertex]) -> usize {
    let mut groups: Vec<Vec<Vertex>> = Vec::new();
    for &v in cands {
        match groups.iter_mut().find(|grp| grp.iter().all(|&u| d.get(u, v) <= 2)) {
            Some(grp) => grp.push(v),
            None => groups.push(vec![v]),
        }
    }
    groups.len()
}

struct MpSearch<'a> {
    d: &'a DistMatrix,
    n: usize,
    counts: BallCounts,
    current: Vec<Vertex>,
    best: Vec<Vertex>,
    cap: usize,
    budget: Budget,
}

impl MpSearch<'_> {
    /// Returns false when the budget ran out.
    fn run(&mut self, next: Vertex) -> bool {
        if !self.budget.tick() {
            return false;
        }
        if self.current.len() > self.best.len() {
            self.best = self.current.clone();
        }
        if self.best.len() >= self.cap {
            return true;
        }
        let cands: Vec<Vertex> = (next..self.n).filter(|&v| self.counts.fits(self.d, v)).collect();
        if cands.is_empty() {
            return true;
        }
        let room = self.cap - self.current.len();
        if self.current.len() + near_clique_cover(self.d, &cands).min(room) <= self.best.len() {
            return true;
        }
        let v = cands[0];
        self.counts.add(self.d, v);
        self.current.push(v);
        let ok = self.run(v + 1);
        self.current.pop();
        self.counts.remove(self.d, v);
        if !ok {
            return false;
        }
        if self.best.len() >= self.cap {
            return true;
        }
        let rest = cands.get(1).copied().unwrap_or(self.n);
        self.run(rest)
    }
}

/// Maximum multipacking by in/out branching over vertex ids.
///
/// Bounds: the near-clique cover of the remaining candidates, `rad`, and
/// `⌊MP_f⌋` when the graph has at least two vertices.
pub fn exact_mp(g: &Graph, budget: u64) -> Result<MpOutcome> {
    g.require_connected()?;
    let n = g.n();
    if n == 1 {
        return Ok(MpOutcome { value: Some(1), lower: 1, upper: 1, witness: vec![0], nodes: 0 });
    }
    let report = radius_center(g)?;
    let d = g.distance_matrix();
    let lp = lp_fractional(g)?;
    let lp_floor = (lp.value.numer() / lp.value.denom()).try_into().unwrap_or(usize::MAX);
    let cap = report.radius.min(lp_floor).max(1);
    let all: Vec<Vertex> = (0..n).collect();
    let greedy = greedy_packing(&d, &report.eccentricities, &all, &[]);
    let mut s = MpSearch {
        d: &d,
        n,
        counts: BallCounts::new(&d, &report.eccentricities),
        current: Vec::new(),
        best: greedy,
        cap,
        budget: Budget::new(budget),
    };
    let done = s.run(0);
    let nodes = s.budget.used.min(budget);
    let best = s.best;
    Ok(if done {
        MpOutcome { value: Some(best.len()), lower: best.len(), upper: best.len(), witness: best, nodes }
    } else {
        MpOutcome { value: None, lower: best.len(), upper: cap.min(near_clique_cover(&d, &all)), witness: best, nodes }
    })
}

struct GbSearch<'a> {
    d: &'a DistMatrix,
    ecc: &'a [usize],
    n: usize,
    rad: usize,
    heard: Vec<u32>,
    powers: Vec<usize>,
    /// `(t, p)` pairs already refuted by an earlier sibling branch.
    banned: Vec<Vec<bool>>,
    fresh: BallCounts,
    budget: Budget,
}

impl GbSearch<'_> {
    fn cover(&mut self, t: Vertex, p: usize, delta: i32) {
        for v in 0..self.n {
            if self.d.get(t, v) <= p {
                self.heard[v] = (self.heard[v] as i32 + delta) as u32;
            }
        }
    }

    /// Lower bound on the cost still needed: a multipacking among the
    /// undominated vertices needs one unit of power per member.
    fn remaining_lower(&self) -> usize {
        let open: Vec<Vertex> = (0..self.n).filter(|&v| self.heard[v] == 0).collect();
        let mut counts = self.fresh.clone();
        let mut size = 0;
        for v in open {
            if counts.fits(self.d, v) {
                counts.add(self.d, v);
                size += 1;
            }
        }
        size
    }

    /// Some(true) if cost `left` suffices, Some(false) if not, None on budget.
    fn feasible(&mut self, left: usize) -> Option<bool> {
        if !self.budget.tick() {
            return None;
        }
        let Some(u) = (0..self.n).find(|&v| self.heard[v] == 0) else { return Some(true) };
        if self.remaining_lower() > left {
            return Some(false);
        }
        // Any solution using a refuted pair covers `u`, so it was already
        // explored in that sibling's subtree.
        let mut refuted = Vec::new();
        let mut out = Some(false);
        'towers: for t in 0..self.n {
            if self.powers[t] > 0 {
                continue;
            }
            let lo = self.d.get(t, u).max(1);
            let hi = left.min(self.rad).min(self.ecc[t]);
            for p in lo..=hi {
                if self.banned[t][p] {
                    continue;
                }
                self.cover(t, p, 1);
                self.powers[t] = p;
                let res = self.feasible(left - p);
                if res != Some(false) {
                    // Leave the witness in place.
                    out = res;
                    break 'towers;
                }
                self.powers[t] = 0;
                self.cover(t, p, -1);
                self.banned[t][p] = true;
                refuted.push((t, p));
            }
        }
        for (t, p) in refuted {
            self.banned[t][p] = false;
        }
        out
    }
}

/// Greedy power-1 dominating set.
fn greedy_dominating(g: &Graph) -> Vec<Vertex> {
    let n = g.n();
    let mut dominated = vec![false; n];
    let mut chosen = Vec::new();
    while let Some(u) = (0..n).find(|&v| !dominated[v]) {
        let gain = |w: Vertex| {
            usize::from(!dominated[w]) + g.neighbors(w).iter().filter(|&&x| !dominated[x]).count()
        };
        let best = std::iter::once(u)
            .chain(g.neighbors(u).iter().copied())
            .max_by_key(|&w| (gain(w), std::cmp::Reverse(w)))
            .unwrap();
        dominated[best] = true;
        for &x in g.neighbors(best) {
            dominated[x] = true;
        }
        chosen.push(best);
    }
    chosen.sort_unstable();
    chosen
}

/// Minimum broadcast cost. Starts from `⌈MP_f⌉`; if a heuristic broadcast
/// (center at power `rad`, or a greedy dominating set at power 1) already
/// meets that, the answer is proven without search. Otherwise tries each
/// target cost upward with depth-first branching on the smallest
/// undominated vertex over towers by id and powers ascending.
pub fn exact_gamma_b(g: &Graph, budget: u64) -> Result<GammaBOutcome> {
    exact_gamma_b_with_hints(g, budget, &[])
}

/// As [`exact_gamma_b`], also seeding the upper bound with caller-supplied
/// broadcasts. Hints that fail to dominate are ignored.
pub fn exact_gamma_b_with_hints(g: &Graph, budget: u64, hints: &[Broadcast]) -> Result<GammaBOutcome> {
    g.require_connected()?;
    let n = g.n();
    if n < 2 {
        return Err(Error::SingleVertex);
    }
    let report = radius_center(g)?;
    let rad = report.radius;
    let d = g.distance_matrix();
    let lp = lp_fractional(g)?;
    let lp_ceil: usize = {
        let q = lp.value.numer() / lp.value.denom();
        let q: usize = q.try_into().unwrap_or(usize::MAX);
        if lp.value.is_integer() { q } else { q + 1 }
    };
    let mut best = Broadcast::from_towers(n, &[(report.center(), rad)])?;
    let dom = greedy_dominating(g);
    if dom.len() < best.cost() {
        best = Broadcast::from_towers(n, &dom.iter().map(|&v| (v, 1)).collect::<Vec<_>>())?;
    }
    for h in hints {
        if h.n() == n && h.cost() < best.cost() && verify_broadcast(g, h).is_ok_and(|c| c.dominating) {
            best = h.clone();
        }
    }
    let efficient_of = |b: &Broadcast| verify_broadcast(g, b).map(|c| c.efficient);
    if lp_ceil >= best.cost() {
        let efficient = efficient_of(&best)?;
        return Ok(GammaBOutcome {
            value: Some(best.cost()),
            lower: best.cost(),
            upper: best.cost(),
            witness: best,
            efficient,
            by_sandwich: true,
            nodes: 0,
        });
    }
    let mut s = GbSearch {
        d: &d,
        ecc: &report.eccentricities,
        n,
        rad,
        heard: vec![0; n],
        powers: vec![0; n],
        banned: report.eccentricities.iter().map(|&e| vec![false; e + 1]).collect(),
        fresh: BallCounts::new(&d, &report.eccentricities),
        budget: Budget::new(budget),
    };
    for target in lp_ceil..best.cost() {
        match s.feasible(target) {
            Some(true) => {
                let witness = Broadcast::from_powers(s.powers.clone());
                debug_assert_eq!(witness.cost(), target);
                let efficient = efficient_of(&witness)?;
                return Ok(GammaBOutcome {
                    value: Some(target),
                    lower: target,
                    upper: target,
                    witness,
                    efficient,
                    by_sandwich: false,
                    nodes: s.budget.used,
                });
            }
            Some(false) => {}
            None => {
                let efficient = efficient_of(&best)?;
                return Ok(GammaBOutcome {
                    value: None,
                    lower: target,
                    upper: best.cost(),
                    witness: best,
                    efficient,
                    by_sandwich: false,
                    nodes: budget,
                });
            }
        }
    }
    let efficient = efficient_of(&best)?;
    Ok(GammaBOutcome {
        value: Some(best.cost()),
        lower: best.cost(),
        upper: best.cost(),
        witness: best,
        efficient,
        by_sandwich: false,
        nodes: s.budget.used,
    })
}

struct DomSearch<'a> {
    g: &'a Graph,
    d: &'a DistMatrix,
    n: usize,
    covered: Vec<u32>,
    /// Vertices excluded from the current subtree because an earlier sibling
    /// branch already chose them.
    banned: Vec<bool>,
    current: Vec<Vertex>,
    best: Vec<Vertex>,
    budget: Budget,
}

impl DomSearch<'_> {
    fn options(&self, u: Vertex) -> impl Iterator<Item = Vertex> + '_ {
        std::iter::once(u).chain(self.g.neighbors(u).iter().copied()).filter(|&w| !self.banned[w])
    }

    fn gain(&self, w: Vertex) -> usize {
        usize::from(self.covered[w] == 0) + self.g.neighbors(w).iter().filter(|&&x| self.covered[x] == 0).count()
    }

    /// Max of two bounds: undominated vertices pairwise at distance >= 3
    /// need distinct dominators, and charging each undominated `u` with
    /// `1 / max gain over its options` sums to at most the number of picks.
    /// The charge sum is rounded down past float error so it stays a valid
    /// bound. `None` when some undominated vertex has no option left.
    fn lower(&self) -> Option<usize> {
        let mut picked: Vec<Vertex> = Vec::new();
        let mut charge = 0.0f64;
        for v in (0..self.n).filter(|&v| self.covered[v] == 0) {
            if picked.iter().all(|&u| self.d.get(u, v) >= 3) {
                picked.push(v);
            }
            let top = self.options(v).map(|w| self.gain(w)).max()?;
            charge += 1.0 / top as f64;
        }
        let frac = (charge - 1e-6).ceil().max(0.0) as usize;
        Some(picked.len().max(frac))
    }

    fn toggle(&mut self, w: Vertex, delta: i32) {
        self.covered[w] = (self.covered[w] as i32 + delta) as u32;
        for &x in self.g.neighbors(w) {
            self.covered[x] = (self.covered[x] as i32 + delta) as u32;
        }
    }

    fn run(&mut self) -> bool {
        if !self.budget.tick() {
            return false;
        }
        // Most constrained undominated vertex, ties to the smallest id.
        let Some(u) = (0..self.n).filter(|&v| self.covered[v] == 0).min_by_key(|&v| (self.options(v).count(), v)) else {
            if self.current.len() < self.best.len() {
                self.best = self.current.clone();
            }
            return true;
        };
        match self.lower() {
            Some(lb) if self.current.len() + lb < self.best.len() => {}
            _ => return true,
        }
        let mut options: Vec<Vertex> = self.options(u).collect();
        options.sort_by_key(|&w| (std::cmp::Reverse(self.gain(w)), w));
        let mut ok = true;
        for &w in &options {
            self.toggle(w, 1);
            self.current.push(w);
            ok = self.run();
            self.current.pop();
            self.toggle(w, -1);
            if !ok {
                break;
            }
            self.banned[w] = true;
        }
        for &w in &options {
            self.banned[w] = false;
        }
        ok
    }
}

/// Minimum dominating set size by branching over `N[u]` for the undominated
/// `u` with the fewest remaining choices.
pub fn exact_domination(g: &Graph, budget: u64) -> Result<DominationOutcome> {
    g.require_connected()?;
    let n = g.n();
    let d = g.distance_matrix();
    let mut s = DomSearch {
        g,
        d: &d,
        n,
        covered: vec![0; n],
        banned: vec![false; n],
        current: Vec::new(),
        best: greedy_dominating(g),
        budget: Budget::new(budget),
    };
    let lower0 = s.lower().unwrap_or(0);
    let done = s.run();
    let mut best = s.best;
    best.sort_unstable();
    Ok(if done {
        DominationOutcome { value: Some(best.len()), lower: best.len(), upper: best.len(), witness: best, nodes: s.budget.used }
    } else {
        DominationOutcome { value: None, lower: lower0, upper: best.len(), witness: best, nodes: budget }
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::construct::verify_multipacking;
    use crate::families::gen_gk;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn c5() -> Graph {
        Graph::from_edge_list(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0)]).unwrap()
    }

    #[test]
    fn mp_examples() {
        assert_eq!(exact_mp(&c5(), DEFAULT_BUDGET).unwrap().value, Some(1));
        let p4 = exact_mp(&path(4), DEFAULT_BUDGET).unwrap();
        assert_eq!(p4.value, Some(2));
        assert_eq!(verify_multipacking(&path(4), &p4.witness).unwrap(), None);
        let g1 = gen_gk(1).unwrap();
        assert_eq!(exact_mp(&g1.graph, DEFAULT_BUDGET).unwrap().value, Some(3));
    }

    #[test]
    fn gamma_b_examples() {
        assert_eq!(exact_gamma_b(&path(2), DEFAULT_BUDGET).unwrap().value, Some(1));
        let c = exact_gamma_b(&c5(), DEFAULT_BUDGET).unwrap();
        assert_eq!(c.value, Some(2));
        assert!(verify_broadcast(&c5(), &c.witness).unwrap().dominating);
        let g1 = gen_gk(1).unwrap();
        assert_eq!(exact_gamma_b(&g1.graph, DEFAULT_BUDGET).unwrap().value, Some(4));
        assert!(matches!(exact_gamma_b(&Graph::from_edge_list(1, &[]).unwrap(), 10), Err(Error::SingleVertex)));
    }

    #[test]
    fn domination_examples() {
        let star = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(exact_domination(&star, DEFAULT_BUDGET).unwrap().value, Some(1));
        assert_eq!(exact_domination(&c5(), DEFAULT_BUDGET).unwrap().value, Some(2));
        assert_eq!(exact_domination(&path(4), DEFAULT_BUDGET).unwrap().value, Some(2));
    }

    #[test]
    fn tiny_budget_reports_range() {
        let g = gen_gk(2).unwrap().graph;
        let out = exact_domination(&g, 3).unwrap();
        assert_eq!(out.value, None);
        assert!(out.lower <= out.upper);
    }
}
