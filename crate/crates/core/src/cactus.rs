//! Block decomposition, cactus certificates and linear-time eccentricities.

use std::collections::VecDeque;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};

/// A biconnected block of a cactus.
#[derive(Clone, Debug, PartialEq, Eq, PartialOrd, Ord, Serialize)]
#[serde(tag = "kind", content = "vertices", rename_all = "lowercase")]
pub enum Block {
    /// Bridge `(u, v)` with `u < v`.
    Edge(Vertex, Vertex),
    /// Chordless cycle in traversal order, smallest id first and the smaller
    /// neighbour second.
    Cycle(Vec<Vertex>),
}

impl Block {
    pub fn vertices(&self) -> Vec<Vertex> {
        match self {
            Block::Edge(u, v) => vec![*u, *v],
            Block::Cycle(c) => c.clone(),
        }
    }

    pub fn len(&self) -> usize {
        match self {
            Block::Edge(..) => 2,
            Block::Cycle(c) => c.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        false
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct CactusCertificate {
    pub is_cactus: bool,
    /// Blocks sorted by their canonical vertex lists. Blocks that are neither
    /// an edge nor a chordless cycle are omitted; see `witness`.
    pub blocks: Vec<Block>,
    /// On failure: two distinct cycles sharing at least one edge.
    pub witness: Option<(Vec<Vertex>, Vec<Vertex>)>,
}

/// Raw biconnected components as edge lists (iterative Tarjan, edge stack).
pub(crate) fn biconnected_components(g: &Graph) -> Vec<Vec<(Vertex, Vertex)>> {
    const UNSET: usize = usize::MAX;
    let n = g.n();
    let mut disc = vec![UNSET; n];
    let mut low = vec![0usize; n];
    let mut timer = 0;
    let mut edge_stack: Vec<(Vertex, Vertex)> = Vec::new();
    let mut components = Vec::new();
    // frame: (vertex, parent, next neighbour index)
    let mut stack: Vec<(Vertex, Vertex, usize)> = Vec::new();

    for root in 0..n {
        if disc[root] != UNSET {
            continue;
        }
        disc[root] = timer;
        low[root] = timer;
        timer += 1;
        stack.push((root, UNSET, 0));
        while let Some(frame) = stack.last_mut() {
            let (v, parent, idx) = *frame;
            if idx < g.degree(v) {
                frame.2 += 1;
                let w = g.neighbors(v)[idx];
                if disc[w] == UNSET {
                    edge_stack.push((v, w));
                    disc[w] = timer;
                    low[w] = timer;
                    timer += 1;
                    stack.push((w, v, 0));
                } else if w != parent && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
                continue;
            }
            stack.pop();
            if parent == UNSET {
                continue;
            }
            low[parent] = low[parent].min(low[v]);
            if low[v] >= disc[parent] {
                let mut comp = Vec::new();
                while let Some(e) = edge_stack.pop() {
                    comp.push(e);
                    if e == (parent, v) {
                        break;
                    }
                }
                components.push(comp);
            }
        }
    }
    components
}

fn component_vertices(edges: &[(Vertex, Vertex)]) -> Vec<Vertex> {
    let mut vs: Vec<Vertex> = edges.iter().flat_map(|&(u, v)| [u, v]).collect();
    vs.sort_unstable();
    vs.dedup();
    vs
}

/// Walks a cycle given by its edge list and returns it in canonical order.
fn cycle_order(edges: &[(Vertex, Vertex)]) -> Vec<Vertex> {
    let vs = component_vertices(edges);
    let idx = |v: Vertex| vs.binary_search(&v).unwrap();
    let mut nbrs = vec![Vec::with_capacity(2); vs.len()];
    for &(u, v) in edges {
        nbrs[idx(u)].push(v);
        nbrs[idx(v)].push(u);
    }
    let start = vs[0];
    let next = *nbrs[0].iter().min().unwrap();
    let mut order = vec![start, next];
    while order.len() < vs.len() {
        let cur = order[order.len() - 1];
        let prev = order[order.len() - 2];
        let nx = *nbrs[idx(cur)].iter().find(|&&w| w != prev).unwrap();
        order.push(nx);
    }
    order
}

/// Rotates/reflects a cycle so the smallest id comes first and its smaller
/// neighbour second.
pub fn canonical_cycle(cycle: &[Vertex]) -> Vec<Vertex> {
    let l = cycle.len();
    let (pos, _) = cycle.iter().enumerate().min_by_key(|(_, &v)| v).unwrap();
    let fwd = cycle[(pos + 1) % l];
    let back = cycle[(pos + l - 1) % l];
    if fwd <= back {
        (0..l).map(|i| cycle[(pos + i) % l]).collect()
    } else {
        (0..l).map(|i| cycle[(pos + l - i) % l]).collect()
    }
}

/// Two distinct cycles sharing an edge inside a 2-connected component whose
/// edge count exceeds its vertex count.
fn sharing_cycles(edges: &[(Vertex, Vertex)]) -> (Vec<Vertex>, Vec<Vertex>) {
    let vs = component_vertices(edges);
    let idx = |v: Vertex| vs.binary_search(&v).unwrap();
    let k = vs.len();
    let mut nbrs = vec![Vec::new(); k];
    for &(u, v) in edges {
        nbrs[idx(u)].push(idx(v));
        nbrs[idx(v)].push(idx(u));
    }
    for l in &mut nbrs {
        l.sort_unstable();
    }
    // BFS tree from local vertex 0, then the first non-tree edge closes a cycle.
    let mut parent = vec![usize::MAX; k];
    let mut depth = vec![usize::MAX; k];
    depth[0] = 0;
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &w in &nbrs[v] {
            if depth[w] == usize::MAX {
                depth[w] = depth[v] + 1;
                parent[w] = v;
                queue.push_back(w);
            }
        }
    }
    let (a, b) = (0..k)
        .flat_map(|v| nbrs[v].iter().map(move |&w| (v, w)))
        .find(|&(v, w)| v < w && parent[w] != v && parent[v] != w)
        .expect("component with more edges than vertices has a non-tree edge");
    let (mut x, mut y) = (a, b);
    let mut left = vec![x];
    let mut right = vec![y];
    while x != y {
        if depth[x] >= depth[y] {
            x = parent[x];
            left.push(x);
        } else {
            y = parent[y];
            right.push(y);
        }
    }
    right.pop();
    right.reverse();
    left.extend(right);
    let cycle1 = left;
    let on_cycle: Vec<bool> = (0..k).map(|v| cycle1.contains(&v)).collect();
    let cyc_edge = |u: usize, w: usize| {
        let l = cycle1.len();
        (0..l).any(|i| {
            let (p, q) = (cycle1[i], cycle1[(i + 1) % l]);
            (p == u && q == w) || (p == w && q == u)
        })
    };
    // An ear: a path leaving the cycle at `start` and returning at another vertex.
    let mut ear = None;
    'outer: for &start in &cycle1 {
        for &w in &nbrs[start] {
            if cyc_edge(start, w) {
                continue;
            }
            if on_cycle[w] {
                ear = Some(vec![start, w]);
                break 'outer;
            }
            let mut prev = vec![usize::MAX; k];
            prev[w] = start;
            let mut queue = VecDeque::from([w]);
            while let Some(v) = queue.pop_front() {
                for &u in &nbrs[v] {
                    if u == start || prev[u] != usize::MAX {
                        continue;
                    }
                    prev[u] = v;
                    if on_cycle[u] {
                        let mut path = vec![u];
                        let mut cur = u;
                        while cur != start {
                            cur = prev[cur];
                            path.push(cur);
                        }
                        path.reverse();
                        ear = Some(path);
                        break 'outer;
                    }
                    queue.push_back(u);
                }
            }
        }
    }
    let ear = ear.expect("2-connected component with extra edge has an ear");
    let (s, t) = (ear[0], *ear.last().unwrap());
    // Close the ear along the cycle arc from t back to s.
    let l = cycle1.len();
    let pt = cycle1.iter().position(|&v| v == t).unwrap();
    let mut cycle2 = ear.clone();
    let mut i = (pt + 1) % l;
    while cycle1[i] != s {
        cycle2.push(cycle1[i]);
        i = (i + 1) % l;
    }
    let to_global = |c: Vec<usize>| canonical_cycle(&c.into_iter().map(|v| vs[v]).collect::<Vec<_>>());
    (to_global(cycle1), to_global(cycle2))
}

pub fn validate_cactus(g: &Graph) -> Result<CactusCertificate> {
    g.require_connected()?;
    let mut blocks = Vec::new();
    let mut witness = None;
    for comp in biconnected_components(g) {
        let nv = component_vertices(&comp).len();
        if comp.len() == 1 {
            let (u, v) = comp[0];
            blocks.push(Block::Edge(u.min(v), u.max(v)));
        } else if comp.len() == nv {
            blocks.push(Block::Cycle(cycle_order(&comp)));
        } else if witness.is_none() {
            witness = Some(sharing_cycles(&comp));
        }
    }
    blocks.sort();
    Ok(CactusCertificate { is_cactus: witness.is_none(), blocks, witness })
}

pub(crate) fn require_cactus(g: &Graph) -> Result<Vec<Block>> {
    let cert = validate_cactus(g)?;
    match cert.witness {
        None => Ok(cert.blocks),
        Some((first, second)) => Err(Error::NotCactus { first, second }),
    }
}

/// For every position `i` of a cycle with weights `h`, the maximum over
/// `j != i` of `cycdist(i, j) + h[j]`. Runs in `O(len)`.
pub(crate) fn cycle_far(h: &[i64]) -> Vec<i64> {
    let l = h.len();
    let fwd = l / 2;
    let back = (l - 1) / 2;
    let mut out = vec![i64::MIN; l];
    // forward: j in (i, i + fwd], value j + h[j mod l] - i
    let mut dq: VecDeque<usize> = VecDeque::new();
    let val_f = |j: usize| j as i64 + h[j % l];
    let mut next = 1;
    for (i, slot) in out.iter_mut().enumerate() {
        while next <= i + fwd {
            while dq.back().is_some_and(|&b| val_f(b) <= val_f(next)) {
                dq.pop_back();
            }
            dq.push_back(next);
            next += 1;
        }
        while dq.front().is_some_and(|&f| f <= i) {
            dq.pop_front();
        }
        if let Some(&f) = dq.front() {
            *slot = val_f(f) - i as i64;
        }
    }
    // backward: j' in [i + l - back, i + l - 1], value (i + l - j') + h[j' mod l]
    if back > 0 {
        dq.clear();
        let val_b = |j: usize| h[j % l] - j as i64;
        let mut next = l - back;
        for (i, slot) in out.iter_mut().enumerate() {
            while next < i + l {
                while dq.back().is_some_and(|&b| val_b(b) <= val_b(next)) {
                    dq.pop_back();
                }
                dq.push_back(next);
                next += 1;
            }
            while dq.front().is_some_and(|&f| f < i + l - back) {
                dq.pop_front();
            }
            if let Some(&f) = dq.front() {
                *slot = (*slot).max(val_b(f) + (i + l) as i64);
            }
        }
    }
    out
}

/// Eccentricity of every vertex of a cactus by rerooting over the block-cut
/// tree. `blocks` must be the block list of `g`.
pub(crate) fn cactus_eccentricities(g: &Graph, blocks: &[Block]) -> Vec<usize> {
    let n = g.n();
    let cycles: Vec<Vec<Vertex>> = blocks.iter().map(Block::vertices).collect();
    let mut blocks_of = vec![Vec::new(); n];
    for (b, c) in cycles.iter().enumerate() {
        for &v in c {
            blocks_of[v].push(b);
        }
    }
    const NONE: usize = usize::MAX;
    let mut parent_vertex = vec![NONE; cycles.len()];
    let mut parent_block = vec![NONE; n];
    let mut order = Vec::with_capacity(cycles.len());
    let mut queue = VecDeque::from([0usize]);
    while let Some(v) = queue.pop_front() {
        for &b in &blocks_of[v] {
            if b == parent_block[v] {
                continue;
            }
            parent_vertex[b] = v;
            order.push(b);
            for &u in &cycles[b] {
                if u != v {
                    parent_block[u] = b;
                    queue.push_back(u);
                }
            }
        }
    }

    // Rotate each block so that its parent vertex sits at position 0.
    let rotated: Vec<Vec<Vertex>> = cycles
        .iter()
        .enumerate()
        .map(|(b, c)| {
            let p = c.iter().position(|&v| v == parent_vertex[b]).unwrap();
            (0..c.len()).map(|i| c[(p + i) % c.len()]).collect()
        })
        .collect();

    let mut down = vec![0i64; n];
    let mut contrib = vec![0i64; cycles.len()];
    // best two child-block contributions per vertex
    let mut best = vec![(0i64, NONE, 0i64); n];
    for &b in order.iter().rev() {
        let c = &rotated[b];
        let l = c.len();
        let value = (1..l).map(|i| i.min(l - i) as i64 + down[c[i]]).max().unwrap();
        contrib[b] = value;
        let p = c[0];
        down[p] = down[p].max(value);
        let e = &mut best[p];
        if value > e.0 {
            *e = (value, b, e.0);
        } else if value > e.2 {
            e.2 = value;
        }
    }

    let mut outside = vec![0i64; n];
    for &b in &order {
        let c = &rotated[b];
        let p = c[0];
        let (b1, bb, b2) = best[p];
        let sibling = if bb == b { b2 } else { b1 };
        let h: Vec<i64> =
            c.iter().enumerate().map(|(i, &v)| if i == 0 { outside[p].max(sibling) } else { down[v] }).collect();
        let far = cycle_far(&h);
        for i in 1..c.len() {
            outside[c[i]] = far[i];
        }
    }
    (0..n).map(|v| down[v].max(outside[v]) as usize).collect()
}
