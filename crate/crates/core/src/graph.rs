//! Simple undirected graphs on dense vertex ids, hop distances and paths.

use std::collections::{BTreeMap, VecDeque};

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

pub type Vertex = usize;

/// Marker for "not reached" in distance vectors.
pub const UNREACHED: usize = usize::MAX;

/// Immutable simple undirected graph with sorted adjacency lists.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Graph {
    adj: Vec<Vec<Vertex>>,
    edge_count: usize,
    labels: BTreeMap<Vertex, String>,
    /// Smallest vertex of every connected component, ascending.
    components: Vec<Vertex>,
}

impl Graph {
    /// Builds a graph from an edge list. Duplicate edges (in either
    /// orientation) are collapsed.
    pub fn from_edge_list(n: usize, edges: &[(Vertex, Vertex)]) -> Result<Graph> {
        if n == 0 {
            return Err(Error::EmptyGraph);
        }
        let mut adj = vec![Vec::new(); n];
        for &(u, v) in edges {
            for w in [u, v] {
                if w >= n {
                    return Err(Error::VertexOutOfRange { vertex: w, n });
                }
            }
            if u == v {
                return Err(Error::LoopEdge(u));
            }
            adj[u].push(v);
            adj[v].push(u);
        }
        let mut edge_count = 0;
        for list in &mut adj {
            list.sort_unstable();
            list.dedup();
            edge_count += list.len();
        }
        let mut g = Graph { adj, edge_count: edge_count / 2, labels: BTreeMap::new(), components: Vec::new() };
        g.components = g.component_representatives();
        Ok(g)
    }

    pub fn with_labels(mut self, labels: BTreeMap<Vertex, String>) -> Result<Graph> {
        if let Some((&v, _)) = labels.iter().find(|(&v, _)| v >= self.n()) {
            return Err(Error::VertexOutOfRange { vertex: v, n: self.n() });
        }
        self.labels = labels;
        Ok(self)
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn neighbors(&self, v: Vertex) -> &[Vertex] {
        &self.adj[v]
    }

    pub fn degree(&self, v: Vertex) -> usize {
        self.adj[v].len()
    }

    pub fn has_edge(&self, u: Vertex, v: Vertex) -> bool {
        self.adj[u].binary_search(&v).is_ok()
    }

    pub fn labels(&self) -> &BTreeMap<Vertex, String> {
        &self.labels
    }

    pub fn label(&self, v: Vertex) -> Option<&str> {
        self.labels.get(&v).map(String::as_str)
    }

    /// Vertex carrying the given label, if any.
    pub fn vertex_by_label(&self, name: &str) -> Option<Vertex> {
        self.labels.iter().find(|(_, l)| l.as_str() == name).map(|(&v, _)| v)
    }

    /// Edges `(u, v)` with `u < v`, in ascending order.
    pub fn edges(&self) -> impl Iterator<Item = (Vertex, Vertex)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, list)| list.iter().filter(move |&&v| u < v).map(move |&v| (u, v)))
    }

    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }

    pub fn components(&self) -> &[Vertex] {
        &self.components
    }

    pub fn require_connected(&self) -> Result<()> {
        if self.is_connected() {
            Ok(())
        } else {
            Err(Error::Disconnected { representatives: self.components.clone() })
        }
    }

    pub fn check_vertex(&self, v: Vertex) -> Result<()> {
        if v < self.n() {
            Ok(())
        } else {
            Err(Error::VertexOutOfRange { vertex: v, n: self.n() })
        }
    }

    fn component_representatives(&self) -> Vec<Vertex> {
        let mut seen = vec![false; self.n()];
        let mut reps = Vec::new();
        let mut stack = Vec::new();
        for s in 0..self.n() {
            if seen[s] {
                continue;
            }
            reps.push(s);
            seen[s] = true;
            stack.push(s);
            while let Some(v) = stack.pop() {
                for &w in &self.adj[v] {
                    if !seen[w] {
                        seen[w] = true;
                        stack.push(w);
                    }
                }
            }
        }
        reps
    }

    /// Hop distances from `src`; unreachable vertices get [`UNREACHED`].
    pub fn bfs_distances(&self, src: Vertex) -> Vec<usize> {
        let mut dist = vec![UNREACHED; self.n()];
        let mut queue = VecDeque::with_capacity(self.n());
        dist[src] = 0;
        queue.push_back(src);
        while let Some(v) = queue.pop_front() {
            let dv = dist[v] + 1;
            for &w in &self.adj[v] {
                if dist[w] == UNREACHED {
                    dist[w] = dv;
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest path from `src` to `dst`, choosing the smallest-id predecessor
    /// at every step when walking back from `dst`.
    pub fn shortest_path(&self, src: Vertex, dst: Vertex) -> Option<PathSeq> {
        let dist = self.bfs_distances(src);
        path_from_distances(self, &dist, dst)
    }

    pub fn distance_matrix(&self) -> DistMatrix {
        DistMatrix::new(self)
    }

    /// Induced subgraph on `keep` (relabelled to `0..keep.len()` in the given
    /// order) together with the old→new map.
    pub fn induced(&self, keep: &[Vertex]) -> Result<(Graph, Vec<Option<Vertex>>)> {
        let mut map = vec![None; self.n()];
        for (i, &v) in keep.iter().enumerate() {
            self.check_vertex(v)?;
            map[v] = Some(i);
        }
        let mut edges = Vec::new();
        for &v in keep {
            for &w in &self.adj[v] {
                if let (Some(a), Some(b)) = (map[v], map[w]) {
                    if a < b {
                        edges.push((a, b));
                    }
                }
            }
        }
        Ok((Graph::from_edge_list(keep.len(), &edges)?, map))
    }

    /// Same graph with vertex `v` renamed to `perm[v]`.
    pub fn permuted(&self, perm: &[Vertex]) -> Result<Graph> {
        let edges: Vec<_> = self.edges().map(|(u, v)| (perm[u], perm[v])).collect();
        Graph::from_edge_list(self.n(), &edges)
    }
}

/// Reconstructs a shortest path ending at `dst` from a BFS distance vector,
/// taking the smallest-id predecessor each step. Returned path starts at the
/// BFS source.
pub fn path_from_distances(g: &Graph, dist: &[usize], dst: Vertex) -> Option<PathSeq> {
    if dist[dst] == UNREACHED {
        return None;
    }
    let mut rev = vec![dst];
    let mut cur = dst;
    while dist[cur] > 0 {
        let d = dist[cur];
        cur = *g.neighbors(cur).iter().find(|&&w| dist[w] + 1 == d)?;
        rev.push(cur);
    }
    rev.reverse();
    Some(PathSeq::new_unchecked(rev))
}

/// All-pairs hop distances, row-major `n × n`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct DistMatrix {
    n: usize,
    d: Vec<u32>,
}

impl DistMatrix {
    pub fn new(g: &Graph) -> DistMatrix {
        let n = g.n();
        let mut d = vec![u32::MAX; n * n];
        d.par_chunks_mut(n.max(1)).enumerate().for_each(|(s, row)| {
            for (slot, dist) in row.iter_mut().zip(g.bfs_distances(s)) {
                *slot = if dist == UNREACHED { u32::MAX } else { dist as u32 };
            }
        });
        DistMatrix { n, d }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, u: Vertex, v: Vertex) -> usize {
        self.d[u * self.n + v] as usize
    }

    pub fn row(&self, u: Vertex) -> &[u32] {
        &self.d[u * self.n..(u + 1) * self.n]
    }

    pub fn eccentricity(&self, u: Vertex) -> usize {
        self.row(u).iter().copied().max().unwrap_or(0) as usize
    }

    pub fn diameter(&self) -> usize {
        (0..self.n).map(|u| self.eccentricity(u)).max().unwrap_or(0)
    }
}

/// Ordered vertex sequence forming a path in some host graph.
#[derive(Clone, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(transparent)]
pub struct PathSeq {
    vertices: Vec<Vertex>,
}

impl PathSeq {
    /// Checks adjacency of consecutive vertices and distinctness.
    pub fn new(g: &Graph, vertices: Vec<Vertex>) -> Result<PathSeq> {
        if vertices.is_empty() {
            return Err(Error::NotAPath("empty vertex sequence".into()));
        }
        let mut seen = vec![false; g.n()];
        for &v in &vertices {
            g.check_vertex(v)?;
            if std::mem::replace(&mut seen[v], true) {
                return Err(Error::NotAPath(format!("vertex {v} repeated")));
            }
        }
        if let Some(w) = vertices.windows(2).find(|w| !g.has_edge(w[0], w[1])) {
            return Err(Error::NotAPath(format!("{} and {} are not adjacent", w[0], w[1])));
        }
        Ok(PathSeq { vertices })
    }

    pub(crate) fn new_unchecked(vertices: Vec<Vertex>) -> PathSeq {
        debug_assert!(!vertices.is_empty());
        PathSeq { vertices }
    }

    pub fn vertices(&self) -> &[Vertex] {
        &self.vertices
    }

    pub fn into_vertices(self) -> Vec<Vertex> {
        self.vertices
    }

    /// Number of edges.
    pub fn len(&self) -> usize {
        self.vertices.len() - 1
    }

    pub fn is_empty(&self) -> bool {
        self.vertices.len() == 1
    }

    pub fn first(&self) -> Vertex {
        self.vertices[0]
    }

    pub fn last(&self) -> Vertex {
        *self.vertices.last().unwrap()
    }

    pub fn contains(&self, v: Vertex) -> bool {
        self.vertices.contains(&v)
    }

    pub fn reversed(&self) -> PathSeq {
        let mut v = self.vertices.clone();
        v.reverse();
        PathSeq { vertices: v }
    }

    /// Concatenates `self` with `other`, which must start where `self` ends.
    pub fn join(&self, other: &PathSeq) -> Option<PathSeq> {
        if self.last() != other.first() {
            return None;
        }
        let mut v = self.vertices.clone();
        v.extend_from_slice(&other.vertices[1..]);
        Some(PathSeq { vertices: v })
    }
}

/// True iff the path is a shortest path between its endpoints. Subpaths of
/// shortest paths are shortest, so this decides isometry of the whole path.
pub fn is_isometric_path(g: &Graph, p: &PathSeq) -> Result<bool> {
    PathSeq::new(g, p.vertices.clone())?;
    let dist = g.bfs_distances(p.first());
    Ok(dist[p.last()] == p.len())
}

pub(crate) fn require_isometric(g: &Graph, p: &PathSeq) -> Result<()> {
    let dist = g.bfs_distances(p.first());
    if dist[p.last()] == p.len() {
        Ok(())
    } else {
        Err(Error::NotIsometric { from: p.first(), to: p.last(), length: p.len(), distance: dist[p.last()] })
    }
}
