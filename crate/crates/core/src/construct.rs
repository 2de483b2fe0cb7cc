//! Multipacking constructions on a cactus and the driver that picks one.

use std::collections::BTreeMap;
use std::collections::VecDeque;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::cactus::require_cactus;
use crate::error::{Error, Result};
use crate::graph::{path_from_distances, require_isometric, Graph, PathSeq, Vertex, UNREACHED};
use crate::metric::{radius_center_linear, RadiusReport};
use crate::radial::{
    attach_r_path_with, build_h, disjoint_radial_path_unchecked, joining_path, radial_path, HSubgraph,
};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Multipacking {
    pub members: Vec<Vertex>,
    pub verified: bool,
}

impl Multipacking {
    fn from_members(mut members: Vec<Vertex>) -> Multipacking {
        members.sort_unstable();
        members.dedup();
        Multipacking { members, verified: false }
    }

    pub fn size(&self) -> usize {
        self.members.len()
    }
}

/// `|N_radius[vertex] ∩ M| = count > radius`.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
pub struct Violation {
    pub vertex: Vertex,
    pub radius: usize,
    pub count: usize,
}

/// Smallest violated `(v, s)` for one ball center, if any.
fn violation_at(g: &Graph, v: Vertex, member: &[bool], dist: &mut [usize], queue: &mut VecDeque<Vertex>) -> Option<Violation> {
    let mut ring: Vec<usize> = Vec::new();
    let mut touched = Vec::new();
    dist[v] = 0;
    touched.push(v);
    queue.push_back(v);
    while let Some(u) = queue.pop_front() {
        let d = dist[u];
        if ring.len() <= d {
            ring.resize(d + 1, 0);
        }
        if member[u] {
            ring[d] += 1;
        }
        for &w in g.neighbors(u) {
            if dist[w] == UNREACHED {
                dist[w] = d + 1;
                touched.push(w);
                queue.push_back(w);
            }
        }
    }
    for w in touched {
        dist[w] = UNREACHED;
    }
    let mut count = ring[0];
    for (s, &k) in ring.iter().enumerate().skip(1) {
        count += k;
        if count > s {
            return Some(Violation { vertex: v, radius: s, count });
        }
    }
    None
}

fn member_mask(g: &Graph, set: &[Vertex]) -> Result<Vec<bool>> {
    let mut member = vec![false; g.n()];
    for &v in set {
        g.check_vertex(v)?;
        member[v] = true;
    }
    Ok(member)
}

/// Checks `|N_s[v] ∩ set| <= s` for every vertex `v` and `1 <= s <= diam`.
/// Returns the lexicographically smallest violation `(v, s)`.
///
/// Radii beyond `e(v)` need no check: the ball stops growing while its
/// capacity keeps increasing.
pub fn verify_multipacking(g: &Graph, set: &[Vertex]) -> Result<Option<Violation>> {
    let centers: Vec<Vertex> = (0..g.n()).collect();
    verify_multipacking_from(g, set, &centers)
}

/// Same check restricted to balls centered in `centers`.
pub fn verify_multipacking_from(g: &Graph, set: &[Vertex], centers: &[Vertex]) -> Result<Option<Violation>> {
    g.require_connected()?;
    let member = member_mask(g, set)?;
    for &c in centers {
        g.check_vertex(c)?;
    }
    let mut sorted = centers.to_vec();
    sorted.sort_unstable();
    sorted.dedup();
    Ok(sorted.par_iter().map_init(
        || (vec![UNREACHED; g.n()], VecDeque::new()),
        |(dist, queue), &v| violation_at(g, v, &member, dist, queue),
    )
    .flatten()
    .min())
}

/// `set` if verification passes, else the violation as an error.
fn certified(g: &Graph, members: Vec<Vertex>) -> Result<Multipacking> {
    let mut mp = Multipacking::from_members(members);
    if let Some(v) = verify_multipacking(g, &mp.members)? {
        return Err(Error::Invariant(format!(
            "|N_{}[{}] ∩ M| = {} exceeds {}",
            v.radius, v.vertex, v.count, v.radius
        )));
    }
    mp.verified = true;
    Ok(mp)
}

fn every_third_members(p: &[Vertex]) -> Vec<Vertex> {
    p.iter().step_by(3).copied().collect()
}

/// `{p_0, p_3, p_6, …}` on an isometric path with `k` vertices; size `⌈k/3⌉`.
pub fn every_third(g: &Graph, p: &PathSeq) -> Result<Multipacking> {
    let p = PathSeq::new(g, p.vertices().to_vec())?;
    require_isometric(g, &p)?;
    certified(g, every_third_members(p.vertices()))
}

/// Which pendant path a one-sided choice is anchored at.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum Root {
    C0,
    Cm,
}

fn choice1_members(h: &HSubgraph, a1: usize, b1: usize) -> Result<Vec<Vertex>> {
    let half = h.gamma / 2;
    if h.m == 0 || a1 > h.m - 1 || b1 + h.m > h.gamma - 1 || a1 + 1 > half || b1 + 1 > half {
        return Err(Error::Precondition(format!(
            "choice 1 needs a1 <= min(m-1, ⌊γ/2⌋-1) and b1 <= min(γ-1-m, ⌊γ/2⌋-1); got a1 = {a1}, b1 = {b1}, m = {}, γ = {}",
            h.m, h.gamma
        )));
    }
    let (c0, cm) = (h.cycle[0], h.cycle[h.m]);
    let mut out = every_third_members(h.p_prime.vertices());
    out.extend((0..=a1).step_by(3).map(|i| h.cycle[i]));
    out.extend(every_third_members(h.q_prime.vertices()));
    out.extend((h.m..=h.m + b1).step_by(3).map(|i| h.cycle[i]));
    out.retain(|&v| v != c0 && v != cm);
    Ok(out)
}

fn choice2_members(h: &HSubgraph, root: Root) -> Vec<Vertex> {
    let (path, offset) = match root {
        Root::C0 => (&h.p_prime, 0),
        Root::Cm => (&h.q_prime, h.m),
    };
    let anchor = h.cycle[offset];
    let mut out = every_third_members(path.vertices());
    // Walk from the root so the wrap-around gap falls next to the removed root.
    out.extend((0..h.gamma).step_by(3).map(|j| h.cycle[(offset + j) % h.gamma]));
    out.retain(|&v| v != anchor);
    out
}

fn choice3_members(h: &HSubgraph, root: Root, d: usize) -> Result<Vec<Vertex>> {
    let r = h.r_prime.as_ref().ok_or_else(|| Error::Precondition("choice 3 needs R'".into()))?;
    if h.delta < d {
        return Err(Error::Precondition(format!("choice 3 needs δ >= {d}, got δ = {}", h.delta)));
    }
    let mut out = choice2_members(h, root);
    out.extend((d + 4..=h.delta).step_by(3).map(|i| r.vertices()[i]));
    Ok(out)
}

/// Every third vertex of `P' ∪ (c_0..c_{a1})` and of `Q' ∪ (c_m..c_{m+b1})`,
/// without `c_0` and `c_m`.
pub fn choice1(g: &Graph, h: &HSubgraph, a1: usize, b1: usize) -> Result<Multipacking> {
    certified(g, choice1_members(h, a1, b1)?)
}

/// Every third cycle vertex counted from the root plus every third vertex of
/// the root's pendant path, without the root.
pub fn choice2(g: &Graph, h: &HSubgraph, root: Root) -> Result<Multipacking> {
    certified(g, choice2_members(h, root))
}

/// [`choice2`] plus `e_i` for `δ' + 2 <= i <= δ`, `i ≡ δ' + 1 (mod 3)`, where
/// `δ' = ⌊γ/2⌋ - d(root, c_t)`.
pub fn choice3(g: &Graph, h: &HSubgraph, root: Root) -> Result<Multipacking> {
    let d = delta_offset(h, root)?;
    certified(g, choice3_members(h, root, d)?)
}

fn delta_offset(h: &HSubgraph, root: Root) -> Result<usize> {
    let t = h.t.ok_or_else(|| Error::Precondition("choice 3 needs c_t".into()))?;
    let anchor = match root {
        Root::C0 => 0,
        Root::Cm => h.m,
    };
    Ok(h.gamma / 2 - h.cycle_distance(anchor, t))
}

/// Which step of the case analysis produced the set.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub enum Branch {
    TrivialRadius,
    NoJoin,
    F1AtLeastF2,
    SrMeetsP,
    SrMeetsQ,
    SrMeetsCycle,
    #[serde(rename = "SrOutside_xGEalpha")]
    SrOutsideXGeAlpha,
    #[serde(rename = "SrOutside_xGEbeta")]
    SrOutsideXGeBeta,
    #[serde(rename = "SrOutside_Case1")]
    SrOutsideCase1,
    #[serde(rename = "SrOutside_Case2_zGEy")]
    SrOutsideCase2ZGeY,
    #[serde(rename = "SrOutside_Case2_zLTy")]
    SrOutsideCase2ZLtY,
    FallbackEveryThird,
}

impl Branch {
    pub const ALL: [Branch; 12] = [
        Branch::TrivialRadius,
        Branch::NoJoin,
        Branch::F1AtLeastF2,
        Branch::SrMeetsP,
        Branch::SrMeetsQ,
        Branch::SrMeetsCycle,
        Branch::SrOutsideXGeAlpha,
        Branch::SrOutsideXGeBeta,
        Branch::SrOutsideCase1,
        Branch::SrOutsideCase2ZGeY,
        Branch::SrOutsideCase2ZLtY,
        Branch::FallbackEveryThird,
    ];

    pub fn tag(self) -> &'static str {
        match self {
            Branch::TrivialRadius => "TrivialRadius",
            Branch::NoJoin => "NoJoin",
            Branch::F1AtLeastF2 => "F1AtLeastF2",
            Branch::SrMeetsP => "SrMeetsP",
            Branch::SrMeetsQ => "SrMeetsQ",
            Branch::SrMeetsCycle => "SrMeetsCycle",
            Branch::SrOutsideXGeAlpha => "SrOutside_xGEalpha",
            Branch::SrOutsideXGeBeta => "SrOutside_xGEbeta",
            Branch::SrOutsideCase1 => "SrOutside_Case1",
            Branch::SrOutsideCase2ZGeY => "SrOutside_Case2_zGEy",
            Branch::SrOutsideCase2ZLtY => "SrOutside_Case2_zLTy",
            Branch::FallbackEveryThird => "FallbackEveryThird",
        }
    }
}

impl std::fmt::Display for Branch {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(self.tag())
    }
}

impl std::str::FromStr for Branch {
    type Err = Error;

    fn from_str(s: &str) -> Result<Branch> {
        Branch::ALL
            .into_iter()
            .find(|b| b.tag() == s)
            .ok_or_else(|| Error::Precondition(format!("unknown branch tag {s:?}")))
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BranchTrace {
    pub branch: Branch,
    /// The prescribed branch whose candidate failed, when `branch` is the
    /// fallback.
    #[serde(skip_serializing_if = "Option::is_none")]
    pub intended: Option<Branch>,
    pub params: BTreeMap<String, i64>,
    pub guaranteed_lower_bound: usize,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct ApproxOptions {
    /// Run the verifier (and the fallback chain on failure).
    pub verify: bool,
}

impl Default for ApproxOptions {
    fn default() -> ApproxOptions {
        ApproxOptions { verify: true }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ApproxResult {
    pub radius: usize,
    pub center: Vertex,
    pub multipacking: Multipacking,
    pub trace: BranchTrace,
    pub h: Option<HSubgraph>,
}

/// Wire format of an approximation result.
#[derive(Clone, Debug, Serialize)]
pub struct ApproxReport<'a> {
    pub radius: usize,
    pub branch: Branch,
    pub params: &'a BTreeMap<String, i64>,
    pub set: &'a [Vertex],
    pub size: usize,
    pub guaranteed_lower_bound: usize,
    pub verified: bool,
}

impl ApproxResult {
    pub fn report(&self) -> ApproxReport<'_> {
        ApproxReport {
            radius: self.radius,
            branch: self.trace.branch,
            params: &self.trace.params,
            set: &self.multipacking.members,
            size: self.multipacking.size(),
            guaranteed_lower_bound: self.trace.guaranteed_lower_bound,
            verified: self.multipacking.verified,
        }
    }
}

/// `⌈2r/3⌉ - 4`, the integer form of `2r/3 - 11/3`, floored at 1.
pub fn radius_bound(r: usize) -> usize {
    (2 * r).div_ceil(3).saturating_sub(4).max(1)
}

fn floor3(v: i64) -> i64 {
    v.div_euclid(3)
}

fn h_params(h: &HSubgraph) -> BTreeMap<String, i64> {
    let mut p = BTreeMap::new();
    for (k, v) in [
        ("gamma", h.gamma),
        ("m", h.m),
        ("k", h.k),
        ("alpha", h.alpha),
        ("beta", h.beta),
        ("x", h.x),
        ("y", h.y),
        ("z", h.z),
        ("g", h.g),
    ] {
        p.insert(k.to_string(), v as i64);
    }
    if let Some(t) = h.t {
        p.insert("t".into(), t as i64);
        p.insert("delta".into(), h.delta as i64);
    }
    p
}

/// A prescribed candidate before verification.
struct Candidate {
    branch: Branch,
    members: Vec<Vertex>,
    params: BTreeMap<String, i64>,
    bound: i64,
}

/// Lower bound on the size of the choice-3 set. The `R'` part contributes
/// `⌊(δ - δ' - 1)/3⌋` vertices, which is one less than `⌊(δ - δ')/3⌋` when
/// `3 | δ - δ'`.
fn choice3_bound(h: &HSubgraph, root: Root, d: usize) -> i64 {
    let side = match root {
        Root::C0 => h.alpha,
        Root::Cm => h.beta,
    } as i64;
    let tail = floor3(h.delta as i64 - d as i64 - 1).max(0);
    floor3(h.gamma as i64) + floor3(side) + tail - 1
}

fn choice2_bound(h: &HSubgraph, root: Root) -> i64 {
    let side = match root {
        Root::C0 => h.alpha,
        Root::Cm => h.beta,
    } as i64;
    floor3(h.gamma as i64) + floor3(side) - 1
}

fn choice1_candidate(h: &HSubgraph, branch: Branch, a1: usize, b1: usize) -> Result<Candidate> {
    let half = h.gamma / 2;
    let a1c = a1.min(h.m - 1).min(half.saturating_sub(1));
    let b1c = b1.min(h.gamma - 1 - h.m).min(half.saturating_sub(1));
    let mut params = h_params(h);
    params.insert("alpha1".into(), a1c as i64);
    params.insert("beta1".into(), b1c as i64);
    if (a1c, b1c) != (a1, b1) {
        params.insert("alpha1_raw".into(), a1 as i64);
        params.insert("beta1_raw".into(), b1 as i64);
    }
    let bound = floor3((h.alpha + a1c + 1) as i64) + floor3((h.beta + b1c + 1) as i64) - 2;
    Ok(Candidate { branch, members: choice1_members(h, a1c, b1c)?, params, bound })
}

fn choice2_candidate(h: &HSubgraph, branch: Branch, root: Root) -> Candidate {
    Candidate { branch, members: choice2_members(h, root), params: h_params(h), bound: choice2_bound(h, root) }
}

fn choice3_candidate(h: &HSubgraph, branch: Branch, root: Root) -> Result<Candidate> {
    let d = delta_offset(h, root)?;
    let mut params = h_params(h);
    params.insert(if root == Root::C0 { "delta1" } else { "delta2" }.into(), d as i64);
    Ok(Candidate { branch, members: choice3_members(h, root, d)?, params, bound: choice3_bound(h, root, d) })
}

fn path_candidate(branch: Branch, path: &[Vertex], params: BTreeMap<String, i64>) -> Candidate {
    Candidate { branch, members: every_third_members(path), params, bound: path.len().div_ceil(3) as i64 }
}

/// Everything the driver computes before choosing a construction.
struct Layout {
    report: RadiusReport,
    p: PathSeq,
    q: PathSeq,
    h: Option<HSubgraph>,
}

/// `P` reversed followed by `Q`, i.e. `v_r … c … w_{r'}`.
fn through_center(p: &PathSeq, q: &PathSeq) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = p.vertices().iter().rev().copied().collect();
    out.extend_from_slice(&q.vertices()[1..]);
    out
}

/// `P'` reversed, `F_1` from `c_0` to `c_m`, then `Q'`.
fn through_f1(h: &HSubgraph) -> Vec<Vertex> {
    let mut out: Vec<Vertex> = h.p_prime.vertices().iter().rev().copied().collect();
    let mut f1 = h.f1();
    f1.reverse();
    out.extend_from_slice(&f1[1..]);
    out.extend_from_slice(&h.q_prime.vertices()[1..]);
    out
}

/// Runs the case analysis and returns the prescribed candidate.
fn prescribe(g: &Graph, lay: &mut Layout) -> Result<Candidate> {
    let r = lay.report.radius;
    let c = lay.report.center();
    let mut params = BTreeMap::new();
    params.insert("r_prime".to_string(), lay.q.len() as i64);
    let Some(h) = lay.h.clone() else {
        return Ok(path_candidate(Branch::NoJoin, &through_center(&lay.p, &lay.q), params));
    };
    if h.x >= h.m {
        let mut params = h_params(&h);
        params.insert("r_prime".to_string(), lay.q.len() as i64);
        return Ok(path_candidate(Branch::F1AtLeastF2, &through_center(&lay.p, &lay.q), params));
    }
    let cg = h.cycle[h.g];
    let dist = g.bfs_distances(cg);
    let hits = |vs: &[Vertex]| vs.iter().any(|&v| dist[v] == r);
    if hits(h.p_prime.vertices()) {
        return choice1_candidate(&h, Branch::SrMeetsP, h.x - 1, h.z.saturating_sub(1));
    }
    if hits(h.q_prime.vertices()) {
        return choice1_candidate(&h, Branch::SrMeetsQ, h.y.saturating_sub(1), h.x - 1);
    }
    if hits(&h.cycle) {
        // Stop at c_{γ-3}: a further member would sit within distance 2 of c_0.
        let members = (0..=h.gamma - 3).step_by(3).map(|i| h.cycle[i]).collect();
        return Ok(Candidate {
            branch: Branch::SrMeetsCycle,
            members,
            params: h_params(&h),
            bound: (h.gamma / 3) as i64,
        });
    }
    let u = (0..g.n()).find(|&v| dist[v] == r).ok_or_else(|| {
        Error::Invariant(format!("no vertex at distance r = {r} from c_g = {cg} although {c} is a center"))
    })?;
    let h = attach_r_path_with(g, &h, u, &dist)?;
    lay.h = Some(h.clone());
    if h.x >= h.alpha {
        return Ok(choice2_candidate(&h, Branch::SrOutsideXGeAlpha, Root::Cm));
    }
    if h.x >= h.beta {
        return Ok(choice2_candidate(&h, Branch::SrOutsideXGeBeta, Root::C0));
    }
    // Never taken: x < alpha and x < beta give 2r >= m + 2x + 2, which
    // exceeds 2(floor(gamma/2) + floor(x/2)). Kept so the case split stays
    // complete.
    if r <= h.gamma / 2 + h.x / 2 {
        return Ok(choice2_candidate(&h, Branch::SrOutsideCase1, Root::C0));
    }
    if h.z >= h.y {
        choice3_candidate(&h, Branch::SrOutsideCase2ZGeY, Root::C0)
    } else {
        choice3_candidate(&h, Branch::SrOutsideCase2ZLtY, Root::Cm)
    }
}

/// Longest readily available isometric path for the fallback.
fn fallback_paths(g: &Graph, lay: &Layout) -> Vec<Vec<Vertex>> {
    let mut out = Vec::new();
    let c = lay.report.center();
    let from_c = g.bfs_distances(c);
    let a = (0..g.n()).max_by_key(|&v| (from_c[v], std::cmp::Reverse(v))).unwrap();
    let from_a = g.bfs_distances(a);
    let b = (0..g.n()).max_by_key(|&v| (from_a[v], std::cmp::Reverse(v))).unwrap();
    out.push(path_from_distances(g, &from_a, b).unwrap().into_vertices());
    match &lay.h {
        Some(h) => {
            out.push(through_f1(h));
            if h.x >= h.m {
                out.push(through_center(&lay.p, &lay.q));
            }
        }
        None => out.push(through_center(&lay.p, &lay.q)),
    }
    out.retain(|p| {
        let d = g.bfs_distances(p[0]);
        d[*p.last().unwrap()] + 1 == p.len()
    });
    out
}

/// Linear-time multipacking of size at least `⌈2r/3⌉ - 4` on a cactus of
/// radius `r`, following the case analysis on `H`.
pub fn approx_multipacking(g: &Graph) -> Result<ApproxResult> {
    approx_multipacking_with(g, ApproxOptions::default())
}

pub fn approx_multipacking_with(g: &Graph, opts: ApproxOptions) -> Result<ApproxResult> {
    require_cactus(g)?;
    let report = radius_center_linear(g)?;
    let r = report.radius;
    let c = report.center();
    if r <= 1 {
        let mut mp = Multipacking::from_members(vec![c]);
        mp.verified = opts.verify;
        return Ok(ApproxResult {
            radius: r,
            center: c,
            multipacking: mp,
            trace: BranchTrace {
                branch: Branch::TrivialRadius,
                intended: None,
                params: BTreeMap::new(),
                guaranteed_lower_bound: 1,
            },
            h: None,
        });
    }
    let p = radial_path(g, c, r)?;
    let dist_c = g.bfs_distances(c);
    let q = disjoint_radial_path_unchecked(g, &p, c, &dist_c)?;
    let h = match joining_path(g, &p, &q, c)? {
        Some(jp) => Some(build_h(g, &p, &q, &jp, c)?),
        None => None,
    };
    let mut lay = Layout { report, p, q, h };
    let prescribed = prescribe(g, &mut lay);

    let finish = |cand: Candidate, intended: Option<Branch>, verified: bool| {
        let mut members = cand.members;
        if members.is_empty() {
            members.push(c);
        }
        let mut mp = Multipacking::from_members(members);
        mp.verified = verified;
        ApproxResult {
            radius: r,
            center: c,
            multipacking: mp,
            trace: BranchTrace {
                branch: cand.branch,
                intended,
                params: cand.params,
                guaranteed_lower_bound: cand.bound.max(1) as usize,
            },
            h: lay.h.clone(),
        }
    };

    if !opts.verify {
        return Ok(finish(prescribed?, None, false));
    }
    let intended = match prescribed {
        Ok(cand) => {
            if cand.members.is_empty() || verify_multipacking(g, &cand.members)?.is_none() {
                return Ok(finish(cand, None, true));
            }
            cand.branch
        }
        // A precondition of the prescribed choice failed; fall back.
        Err(Error::Precondition(_)) | Err(Error::Invariant(_)) => Branch::FallbackEveryThird,
        Err(e) => return Err(e),
    };
    let mut options: Vec<Candidate> = Vec::new();
    if let Some(h) = &lay.h {
        let root = if h.alpha >= h.beta { Root::C0 } else { Root::Cm };
        options.push(choice2_candidate(h, Branch::FallbackEveryThird, root));
    }
    for path in fallback_paths(g, &lay) {
        options.push(path_candidate(Branch::FallbackEveryThird, &path, BTreeMap::new()));
    }
    let mut best: Option<Candidate> = None;
    for cand in options {
        if best.as_ref().is_some_and(|b| b.members.len() >= cand.members.len()) {
            continue;
        }
        if verify_multipacking(g, &cand.members)?.is_none() {
            best = Some(cand);
        }
    }
    let mut best = best.unwrap_or(Candidate {
        branch: Branch::FallbackEveryThird,
        members: vec![c],
        params: BTreeMap::new(),
        bound: 1,
    });
    best.params.insert("r_prime".into(), lay.q.len() as i64);
    best.bound = best.members.len() as i64;
    Ok(finish(best, Some(intended), true))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_gk, gk_canonical_multipacking};

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn verifier_examples() {
        let v = verify_multipacking(&path(2), &[0, 1]).unwrap().unwrap();
        assert_eq!((v.vertex, v.radius, v.count), (0, 1, 2));
        let v = verify_multipacking(&cycle(5), &[0, 2]).unwrap().unwrap();
        assert_eq!((v.vertex, v.radius), (1, 1));
        let inst = gen_gk(2).unwrap();
        assert_eq!(verify_multipacking(&inst.graph, &gk_canonical_multipacking(&inst)).unwrap(), None);
    }

    #[test]
    fn every_third_sizes() {
        let g = path(7);
        assert_eq!(every_third(&g, &PathSeq::new(&g, vec![3]).unwrap()).unwrap().size(), 1);
        let p = PathSeq::new(&g, (0..7).collect()).unwrap();
        let mp = every_third(&g, &p).unwrap();
        assert_eq!(mp.members, vec![0, 3, 6]);
        assert!(mp.verified);
        let c5 = cycle(5);
        assert!(every_third(&c5, &PathSeq::new(&c5, vec![0, 1, 2, 3]).unwrap()).is_err());
    }

    #[test]
    fn gk_diametral_path() {
        let inst = gen_gk(1).unwrap();
        let mut p = Vec::new();
        for i in 1..=3 {
            p.extend([inst.vertex('e', i), inst.vertex('a', i), inst.vertex('b', i)]);
        }
        let p = PathSeq::new(&inst.graph, p).unwrap();
        assert_eq!(every_third(&inst.graph, &p).unwrap().size(), 3);
    }

    #[test]
    fn trivial_and_path_branches() {
        let k1 = Graph::from_edge_list(1, &[]).unwrap();
        let res = approx_multipacking(&k1).unwrap();
        assert_eq!(res.trace.branch, Branch::TrivialRadius);
        assert_eq!(res.multipacking.members, vec![0]);
        let res = approx_multipacking(&path(31)).unwrap();
        assert_eq!(res.radius, 15);
        assert_eq!(res.trace.branch, Branch::NoJoin);
        assert_eq!(res.multipacking.size(), 11);
        assert!(res.multipacking.verified);
    }

    #[test]
    fn branch_tags_round_trip() {
        for b in Branch::ALL {
            assert_eq!(serde_json::to_value(b).unwrap(), serde_json::Value::String(b.tag().into()));
            assert_eq!(b.tag().parse::<Branch>().unwrap(), b);
        }
    }

    #[test]
    fn radius_bound_form() {
        assert_eq!(radius_bound(15), 6);
        assert_eq!(radius_bound(2), 1);
        // Never stronger than the exact ceiling of 2r/3 - 11/3.
        for r in 0..300i64 {
            let exact = (2 * r - 11 + 2).div_euclid(3);
            assert!(radius_bound(r as usize) as i64 <= exact.max(1));
        }
    }

    #[test]
    fn floor_identities() {
        for r in 1..=1_000_000i64 {
            assert!(floor3(r) + floor3(r - 1) >= floor3(2 * r - 1) - 1);
            assert!(3 * floor3(r) >= r - 2);
            assert_eq!(r / 2 + (r + 1) / 2, r);
        }
    }

    #[test]
    fn six_cycle_choices() {
        // C_6 with pendant paths of length 3 at vertices 0 and 3.
        let mut edges: Vec<_> = (0..6).map(|i| (i, (i + 1) % 6)).collect();
        edges.extend([(0, 6), (6, 7), (7, 8), (3, 9), (9, 10), (10, 11)]);
        let g = Graph::from_edge_list(12, &edges).unwrap();
        let h = HSubgraph {
            gamma: 6,
            m: 3,
            t: None,
            k: 1,
            alpha: 3,
            beta: 3,
            delta: 0,
            x: 3,
            y: 1,
            z: 2,
            g: 4,
            cycle: (0..6).collect(),
            p_prime: PathSeq::new(&g, vec![0, 6, 7, 8]).unwrap(),
            q_prime: PathSeq::new(&g, vec![3, 9, 10, 11]).unwrap(),
            r_prime: None,
        };
        let m1 = choice1(&g, &h, 2, 2).unwrap();
        assert!(m1.size() >= 2);
        assert!(choice1(&g, &h, 3, 0).is_err());
        let m2 = choice2(&g, &h, Root::C0).unwrap();
        assert_eq!(m2.members, vec![3, 8]);
        let m2m = choice2(&g, &h, Root::Cm).unwrap();
        assert_eq!(m2m.members, vec![0, 11]);
        assert!(choice3(&g, &h, Root::C0).is_err());
    }
}
