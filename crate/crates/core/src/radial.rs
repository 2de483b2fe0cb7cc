//! Radial paths from a center, the disjoint second radial path, the joining
//! path between them and the cycle-with-pendants subgraph `H` built from all
//! three.

use std::collections::VecDeque;

use serde::Serialize;

use crate::cactus::require_cactus;
use crate::error::{Error, Result};
use crate::graph::{path_from_distances, require_isometric, Graph, PathSeq, Vertex, UNREACHED};

/// The unique path `F_1` from `v_i` on `P` to `w_j` on `Q` avoiding `c`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct JoiningPath {
    pub i: usize,
    pub j: usize,
    pub f1: PathSeq,
}

/// Cycle `c_0 … c_{γ-1}` with pendant isometric paths `P'` at `c_0`, `Q'` at
/// `c_m` and optionally `R'` at `c_t`.
///
/// `F_2 = c_0 … c_m` contains the center `c = c_k`; `F_1` is the rest of the
/// cycle. `x = l(F_1)`, `y = k`, `z = m - k`, and `c_g` with
/// `g = m + ⌊x/2⌋` is the midpoint of `F_1`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct HSubgraph {
    pub gamma: usize,
    pub m: usize,
    pub t: Option<usize>,
    pub k: usize,
    pub alpha: usize,
    pub beta: usize,
    pub delta: usize,
    pub x: usize,
    pub y: usize,
    pub z: usize,
    pub g: usize,
    pub cycle: Vec<Vertex>,
    pub p_prime: PathSeq,
    pub q_prime: PathSeq,
    pub r_prime: Option<PathSeq>,
}

impl HSubgraph {
    /// Cycle distance between `c_a` and `c_b`.
    pub fn cycle_distance(&self, a: usize, b: usize) -> usize {
        let d = a.abs_diff(b);
        d.min(self.gamma - d)
    }

    /// All vertices of `H`, ascending.
    pub fn vertices(&self) -> Vec<Vertex> {
        let mut out: Vec<Vertex> = self.cycle.clone();
        out.extend_from_slice(self.p_prime.vertices());
        out.extend_from_slice(self.q_prime.vertices());
        if let Some(r) = &self.r_prime {
            out.extend_from_slice(r.vertices());
        }
        out.sort_unstable();
        out.dedup();
        out
    }

    /// `F_1` walked from `c_m` to `c_0`.
    pub fn f1(&self) -> Vec<Vertex> {
        let mut out = self.cycle[self.m..].to_vec();
        out.push(self.cycle[0]);
        out
    }

    /// `F_2` walked from `c_0` to `c_m`.
    pub fn f2(&self) -> Vec<Vertex> {
        self.cycle[..=self.m].to_vec()
    }
}

/// Isometric path of length `r` from `c` to the smallest-id vertex at
/// distance `r`.
pub fn radial_path(g: &Graph, c: Vertex, r: usize) -> Result<PathSeq> {
    g.check_vertex(c)?;
    g.require_connected()?;
    let dist = g.bfs_distances(c);
    let ecc = *dist.iter().max().unwrap();
    if ecc != r {
        return Err(Error::Precondition(format!("eccentricity of {c} is {ecc}, not {r}")));
    }
    let far = (0..g.n()).find(|&v| dist[v] == r).unwrap();
    Ok(path_from_distances(g, &dist, far).unwrap())
}

/// Isometric path `Q` from `c` with `V(P) ∩ V(Q) = {c}` and length `r` if
/// possible, else `r - 1`.
///
/// Works on the shortest-path DAG rooted at `c`: a vertex is usable when some
/// DAG path from `c` reaches it without touching `P - c`.
pub fn disjoint_radial_path(g: &Graph, p: &PathSeq, c: Vertex) -> Result<PathSeq> {
    require_cactus(g)?;
    let p = PathSeq::new(g, p.vertices().to_vec())?;
    if p.first() != c {
        return Err(Error::Precondition(format!("P must start at the center {c}")));
    }
    let r = p.len();
    if r == 0 {
        return Err(Error::Precondition("radius must be at least 1".into()));
    }
    require_isometric(g, &p)?;
    let dist = g.bfs_distances(c);
    if *dist.iter().max().unwrap() != r {
        return Err(Error::Precondition(format!("eccentricity of {c} differs from l(P) = {r}")));
    }
    disjoint_radial_path_unchecked(g, &p, c, &dist)
}

pub(crate) fn disjoint_radial_path_unchecked(g: &Graph, p: &PathSeq, c: Vertex, dist: &[usize]) -> Result<PathSeq> {
    let r = p.len();
    let n = g.n();
    let mut on_p = vec![false; n];
    for &v in &p.vertices()[1..] {
        on_p[v] = true;
    }
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| dist[v]);
    let mut usable = vec![false; n];
    usable[c] = true;
    for &v in &order[1..] {
        usable[v] = !on_p[v] && g.neighbors(v).iter().any(|&u| dist[u] + 1 == dist[v] && usable[u]);
    }
    let target = [r, r - 1]
        .iter()
        .find_map(|&len| (0..n).find(|&v| usable[v] && dist[v] == len))
        .ok_or_else(|| Error::Invariant(format!("no path of length >= {} from {c} avoids P", r - 1)))?;
    let mut rev = vec![target];
    let mut cur = target;
    while cur != c {
        cur = *g.neighbors(cur).iter().find(|&&u| dist[u] + 1 == dist[cur] && usable[u]).unwrap();
        rev.push(cur);
    }
    rev.reverse();
    Ok(PathSeq::new_unchecked(rev))
}

/// Multi-source BFS in `G - c` from `P - c`, never entering `P` again and
/// never expanding past a `Q` vertex. Returns the first `(source .. w)` path
/// that reaches `Q - c`. Edges for which `skip` returns true are ignored.
fn search_join(
    g: &Graph,
    p: &[Vertex],
    on_q: &[bool],
    c: Vertex,
    skip: impl Fn(Vertex, Vertex) -> bool,
) -> Option<Vec<Vertex>> {
    let n = g.n();
    let mut parent = vec![UNREACHED; n];
    let mut seen = vec![false; n];
    let mut queue = VecDeque::new();
    let mut sources: Vec<Vertex> = p.iter().copied().filter(|&v| v != c).collect();
    sources.sort_unstable();
    for &s in &sources {
        seen[s] = true;
        queue.push_back(s);
    }
    seen[c] = true;
    while let Some(v) = queue.pop_front() {
        for &w in g.neighbors(v) {
            if seen[w] || skip(v, w) {
                continue;
            }
            seen[w] = true;
            parent[w] = v;
            if on_q[w] {
                let mut walk = vec![w];
                let mut cur = w;
                while parent[cur] != UNREACHED {
                    cur = parent[cur];
                    walk.push(cur);
                }
                walk.reverse();
                return Some(walk);
            }
            queue.push_back(w);
        }
    }
    None
}

/// The joining path between `P - c` and `Q - c` in `G - c`, if any.
///
/// A cactus admits at most one; a second, edge-disjoint connection is
/// reported as an invariant violation.
pub fn joining_path(g: &Graph, p: &PathSeq, q: &PathSeq, c: Vertex) -> Result<Option<JoiningPath>> {
    let n = g.n();
    if p.first() != c || q.first() != c {
        return Err(Error::Precondition(format!("P and Q must both start at {c}")));
    }
    let mut pos_p = vec![UNREACHED; n];
    let mut pos_q = vec![UNREACHED; n];
    for (i, &v) in p.vertices().iter().enumerate() {
        pos_p[v] = i;
    }
    for (j, &w) in q.vertices().iter().enumerate() {
        if pos_p[w] != UNREACHED && w != c {
            return Err(Error::Precondition(format!("P and Q share vertex {w}")));
        }
        pos_q[w] = j;
    }
    let on_q: Vec<bool> = (0..n).map(|v| pos_q[v] != UNREACHED && v != c).collect();
    let Some(walk) = search_join(g, p.vertices(), &on_q, c, |_, _| false) else {
        return Ok(None);
    };
    let mut used = std::collections::HashSet::new();
    for e in walk.windows(2) {
        used.insert((e[0].min(e[1]), e[0].max(e[1])));
    }
    if let Some(other) = search_join(g, p.vertices(), &on_q, c, |a, b| used.contains(&(a.min(b), a.max(b)))) {
        return Err(Error::Invariant(format!(
            "second joining path {:?} besides {:?}; the graph is not a cactus",
            other, walk
        )));
    }
    let i = pos_p[walk[0]];
    let j = pos_q[*walk.last().unwrap()];
    Ok(Some(JoiningPath { i, j, f1: PathSeq::new_unchecked(walk) }))
}

/// Relabels `P ∪ Q ∪ F_1` as `H` with `c_0 = v_i`, `c_k = c`, `c_m = w_j`.
pub fn build_h(g: &Graph, p: &PathSeq, q: &PathSeq, jp: &JoiningPath, c: Vertex) -> Result<HSubgraph> {
    let (pv, qv, fv) = (p.vertices(), q.vertices(), jp.f1.vertices());
    let consistent = p.first() == c
        && q.first() == c
        && (1..pv.len()).contains(&jp.i)
        && (1..qv.len()).contains(&jp.j)
        && fv.len() >= 2
        && fv[0] == pv[jp.i]
        && *fv.last().unwrap() == qv[jp.j]
        && fv.windows(2).all(|e| g.has_edge(e[0], e[1]));
    if !consistent {
        return Err(Error::Precondition("joining path does not fit P and Q".into()));
    }
    let (i, j) = (jp.i, jp.j);
    let mut cycle: Vec<Vertex> = pv[..=i].iter().rev().copied().collect();
    cycle.extend_from_slice(&qv[1..=j]);
    cycle.extend(fv[1..fv.len() - 1].iter().rev());
    let m = i + j;
    let x = fv.len() - 1;
    Ok(HSubgraph {
        gamma: m + x,
        m,
        t: None,
        k: i,
        alpha: p.len() - i,
        beta: q.len() - j,
        delta: 0,
        x,
        y: i,
        z: j,
        g: m + x / 2,
        cycle,
        p_prime: PathSeq::new_unchecked(pv[i..].to_vec()),
        q_prime: PathSeq::new_unchecked(qv[j..].to_vec()),
        r_prime: None,
    })
}

/// Attaches `R'`: the tail of a shortest path from `c_g` to `u` after its last
/// vertex in `H`. That last vertex must be an interior vertex of `F_2`.
pub fn attach_r_path(g: &Graph, h: &HSubgraph, u: Vertex) -> Result<HSubgraph> {
    g.check_vertex(u)?;
    let cg = h.cycle[h.g];
    let dist = g.bfs_distances(cg);
    attach_r_path_with(g, h, u, &dist)
}

pub(crate) fn attach_r_path_with(g: &Graph, h: &HSubgraph, u: Vertex, dist_cg: &[usize]) -> Result<HSubgraph> {
    let r = h.alpha + h.y;
    if dist_cg[u] != r {
        return Err(Error::Precondition(format!("d(c_g, {u}) = {} but r = {r}", dist_cg[u])));
    }
    let path = path_from_distances(g, dist_cg, u).unwrap();
    let mut in_h = vec![false; g.n()];
    for v in h.vertices() {
        in_h[v] = true;
    }
    let rv = path.vertices();
    if in_h[u] {
        return Err(Error::Precondition(format!("{u} lies on H")));
    }
    let last = (0..rv.len()).rev().find(|&i| in_h[rv[i]]).unwrap();
    let ct = rv[last];
    let t = h
        .cycle
        .iter()
        .position(|&v| v == ct)
        .filter(|&t| t >= 1 && t < h.m)
        .ok_or_else(|| Error::Invariant(format!("R leaves H at {ct}, which is not interior to F_2")))?;
    let mut out = h.clone();
    out.t = Some(t);
    out.delta = r - last;
    out.r_prime = Some(PathSeq::new_unchecked(rv[last..].to_vec()));
    Ok(out)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::gen_gk;
    use crate::metric::radius_center;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn path_arms() {
        let g = path(5);
        let p = radial_path(&g, 2, 2).unwrap();
        assert_eq!(p.vertices(), &[2, 1, 0]);
        let q = disjoint_radial_path(&g, &p, 2).unwrap();
        assert_eq!(q.vertices(), &[2, 3, 4]);
        assert_eq!(joining_path(&g, &p, &q, 2).unwrap(), None);
        assert!(radial_path(&g, 0, 2).is_err());
    }

    #[test]
    fn five_cycle_opposite_arc() {
        let g = cycle(5);
        let p = radial_path(&g, 0, 2).unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2]);
        let q = disjoint_radial_path(&g, &p, 0).unwrap();
        assert_eq!(q.vertices(), &[0, 4, 3]);
        let jp = joining_path(&g, &p, &q, 0).unwrap().unwrap();
        assert_eq!((jp.i, jp.j, jp.f1.vertices()), (2, 2, &[2usize, 3][..]));
    }

    #[test]
    fn six_cycle_h() {
        let g = cycle(6);
        let p = radial_path(&g, 0, 3).unwrap();
        assert_eq!(p.vertices(), &[0, 1, 2, 3]);
        let q = disjoint_radial_path(&g, &p, 0).unwrap();
        assert_eq!(q.vertices(), &[0, 5, 4]);
        let jp = joining_path(&g, &p, &q, 0).unwrap().unwrap();
        assert_eq!((jp.i, jp.j), (3, 2));
        assert_eq!(jp.f1.vertices(), &[3, 4]);
        let h = build_h(&g, &p, &q, &jp, 0).unwrap();
        assert_eq!((h.gamma, h.m, h.x, h.alpha, h.beta), (6, 5, 1, 0, 0));
        assert_eq!(h.cycle, vec![3, 2, 1, 0, 5, 4]);
        assert_eq!(h.f1(), vec![4, 3]);
    }

    #[test]
    fn gk_h_identities() {
        let inst = gen_gk(1).unwrap();
        let g = &inst.graph;
        let rep = radius_center(g).unwrap();
        let c = rep.center();
        let p = radial_path(g, c, rep.radius).unwrap();
        assert!(crate::graph::is_isometric_path(g, &p).unwrap());
        let q = disjoint_radial_path(g, &p, c).unwrap();
        assert!(q.len() + 1 >= rep.radius);
        if let Some(jp) = joining_path(g, &p, &q, c).unwrap() {
            let h = build_h(g, &p, &q, &jp, c).unwrap();
            assert_eq!(h.gamma, 5);
            assert_eq!(h.alpha + h.y, rep.radius);
            assert_eq!(h.beta + h.z, q.len());
        }
    }

    #[test]
    fn r_path_from_f2_interior() {
        // C_8 on 0..8 with a pendant path 8..=19 hanging from vertex 2.
        let mut edges: Vec<_> = (0..8).map(|i| (i, (i + 1) % 8)).collect();
        edges.push((2, 8));
        edges.extend((9..20).map(|i| (i - 1, i)));
        let g = Graph::from_edge_list(20, &edges).unwrap();
        let h = HSubgraph {
            gamma: 8,
            m: 5,
            t: None,
            k: 2,
            alpha: 4,
            beta: 0,
            delta: 0,
            x: 3,
            y: 2,
            z: 3,
            g: 6,
            cycle: vec![0, 1, 2, 3, 4, 5, 6, 7],
            p_prime: PathSeq::new_unchecked(vec![0]),
            q_prime: PathSeq::new_unchecked(vec![5]),
            r_prime: None,
        };
        let dist = g.bfs_distances(6);
        let u = (0..20).find(|&v| dist[v] == 6).unwrap();
        assert_eq!(u, 9);
        let out = attach_r_path(&g, &h, u).unwrap();
        assert_eq!(out.t, Some(2));
        assert_eq!(out.delta, 2);
        let rp = out.r_prime.unwrap();
        assert_eq!((rp.first(), rp.last()), (2, u));
    }
}
