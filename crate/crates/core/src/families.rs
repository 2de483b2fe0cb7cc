//! Graph generators: the pentagon chain `G_k`, seeded random cacti and an
//! exhaustive catalog of small cacti.

use std::collections::hash_map::DefaultHasher;
use std::collections::{BTreeMap, HashMap};
use std::hash::{Hash, Hasher};

use num_rational::Ratio;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::oracles::broadcast::Broadcast;
use crate::rational::{self, Rational};

/// splitmix64. The state advances by `0x9E3779B97F4A7C15` per draw and the
/// output is the standard three-step mix of the new state.
#[derive(Clone, Debug)]
pub struct SplitMix64 {
    state: u64,
}

impl SplitMix64 {
    pub fn new(seed: u64) -> SplitMix64 {
        SplitMix64 { state: seed }
    }

    pub fn next_u64(&mut self) -> u64 {
        self.state = self.state.wrapping_add(0x9E37_79B9_7F4A_7C15);
        let mut z = self.state;
        z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
        z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
        z ^ (z >> 31)
    }

    /// `next_u64() % bound`; `bound` must be positive.
    pub fn below(&mut self, bound: u64) -> u64 {
        self.next_u64() % bound
    }
}

/// The chain of `3k` pentagons `A_i = (a_i, b_i, c_i, d_i, e_i)` with bridges
/// `b_i - e_{i+1}`.
#[derive(Clone, Debug)]
pub struct GkInstance {
    pub k: usize,
    pub graph: Graph,
}

impl GkInstance {
    pub fn pentagons(&self) -> usize {
        3 * self.k
    }

    /// Vertex id of `letter_i` (`letter` in `a..=e`, `1 <= i <= 3k`).
    pub fn vertex(&self, letter: char, i: usize) -> Vertex {
        assert!((1..=self.pentagons()).contains(&i), "pentagon index {i} out of range");
        let offset = match letter {
            'a' => 0,
            'b' => 1,
            'c' => 2,
            'd' => 3,
            'e' => 4,
            _ => panic!("unknown pentagon letter {letter:?}"),
        };
        5 * (i - 1) + offset
    }

    pub fn pentagon(&self, i: usize) -> [Vertex; 5] {
        let base = 5 * (i - 1);
        [base, base + 1, base + 2, base + 3, base + 4]
    }
}

pub fn gen_gk(k: usize) -> Result<GkInstance> {
    if k == 0 {
        return Err(Error::Precondition("k must be at least 1".into()));
    }
    let count = 3 * k;
    let mut edges = Vec::with_capacity(6 * count);
    let mut labels = BTreeMap::new();
    for i in 0..count {
        let base = 5 * i;
        for j in 0..5 {
            edges.push((base + j, base + (j + 1) % 5));
        }
        for (j, letter) in ['a', 'b', 'c', 'd', 'e'].iter().enumerate() {
            labels.insert(base + j, format!("{letter}{}", i + 1));
        }
        if i + 1 < count {
            // b_i - e_{i+1}
            edges.push((base + 1, base + 5 + 4));
        }
    }
    let graph = Graph::from_edge_list(5 * count, &edges)?.with_labels(labels)?;
    Ok(GkInstance { k, graph })
}

/// `{a_1, …, a_3k}`.
pub fn gk_canonical_multipacking(inst: &GkInstance) -> Vec<Vertex> {
    (1..=inst.pentagons()).map(|i| inst.vertex('a', i)).collect()
}

/// Power 4 on `a_i` for `i ≡ 2 (mod 3)`, zero elsewhere.
pub fn gk_optimal_broadcast(inst: &GkInstance) -> Broadcast {
    let mut b = Broadcast::zero(inst.graph.n());
    for i in (1..=inst.pentagons()).filter(|i| i % 3 == 2) {
        b.set(inst.vertex('a', i), 4);
    }
    b
}

/// Weight 1/3 on `b_i, c_i, d_i, e_i` for every pentagon, zero on `a_i`.
pub fn gk_fractional_weights(inst: &GkInstance) -> Vec<Rational> {
    let third = rational::ratio(1, 3);
    (0..inst.graph.n()).map(|v| if v % 5 == 0 { rational::zero() } else { third.clone() }).collect()
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct RandomCactusParams {
    pub n: usize,
    pub cycle_prob: Ratio<u64>,
    pub max_cycle_len: usize,
    pub seed: u64,
}

impl RandomCactusParams {
    pub fn new(n: usize, cycle_prob: Ratio<u64>, max_cycle_len: usize, seed: u64) -> RandomCactusParams {
        RandomCactusParams { n, cycle_prob, max_cycle_len, seed }
    }
}

/// Grows a cactus from vertex 0. Each step draws an anchor
/// `below(current)`, then a coin `below(den) < num` for a cycle, then (for a
/// cycle) a length `3 + below(max_cycle_len - 2)`. Cycles are truncated to the
/// remaining vertex budget; a cycle that would be shorter than 3 becomes a
/// pendant edge. New vertices get consecutive ids.
pub fn random_cactus(params: &RandomCactusParams) -> Result<Graph> {
    let RandomCactusParams { n, cycle_prob, max_cycle_len, seed } = params;
    if *n == 0 {
        return Err(Error::EmptyGraph);
    }
    if *cycle_prob.numer() > *cycle_prob.denom() {
        return Err(Error::Precondition("cycle_prob must lie in [0, 1]".into()));
    }
    if *max_cycle_len < 3 {
        return Err(Error::Precondition("max_cycle_len must be at least 3".into()));
    }
    let mut rng = SplitMix64::new(*seed);
    let mut edges = Vec::new();
    let mut cur = 1usize;
    while cur < *n {
        let anchor = rng.below(cur as u64) as usize;
        let is_cycle = rng.below(*cycle_prob.denom()) < *cycle_prob.numer();
        let mut len = 0;
        if is_cycle {
            len = 3 + rng.below((*max_cycle_len - 2) as u64) as usize;
            len = len.min(*n - cur + 1);
        }
        if len >= 3 {
            let mut prev = anchor;
            for v in cur..cur + len - 1 {
                edges.push((prev, v));
                prev = v;
            }
            edges.push((prev, anchor));
            cur += len - 1;
        } else {
            edges.push((anchor, cur));
            cur += 1;
        }
    }
    Graph::from_edge_list(*n, &edges)
}

/// Colour-refinement signature; equal for isomorphic graphs.
fn refinement_key(g: &Graph) -> u64 {
    let n = g.n();
    let mut colors: Vec<u64> = (0..n).map(|v| g.degree(v) as u64).collect();
    for _ in 0..n.min(6) {
        colors = (0..n)
            .map(|v| {
                let mut nb: Vec<u64> = g.neighbors(v).iter().map(|&w| colors[w]).collect();
                nb.sort_unstable();
                let mut h = DefaultHasher::new();
                (colors[v], nb).hash(&mut h);
                h.finish()
            })
            .collect();
    }
    colors.sort_unstable();
    let mut h = DefaultHasher::new();
    (n, g.edge_count(), colors).hash(&mut h);
    h.finish()
}

pub fn are_isomorphic(a: &Graph, b: &Graph) -> bool {
    if a.n() != b.n() || a.edge_count() != b.edge_count() {
        return false;
    }
    let n = a.n();
    let mut order: Vec<Vertex> = (0..n).collect();
    order.sort_by_key(|&v| std::cmp::Reverse(a.degree(v)));
    let mut map = vec![usize::MAX; n];
    let mut used = vec![false; n];

    fn extend(a: &Graph, b: &Graph, order: &[Vertex], depth: usize, map: &mut [usize], used: &mut [bool]) -> bool {
        if depth == order.len() {
            return true;
        }
        let v = order[depth];
        for w in 0..b.n() {
            if used[w] || a.degree(v) != b.degree(w) {
                continue;
            }
            let consistent = order[..depth].iter().all(|&u| a.has_edge(u, v) == b.has_edge(map[u], w));
            if !consistent {
                continue;
            }
            map[v] = w;
            used[w] = true;
            if extend(a, b, order, depth + 1, map, used) {
                return true;
            }
            used[w] = false;
            map[v] = usize::MAX;
        }
        false
    }
    extend(a, b, &order, 0, &mut map, &mut used)
}

/// Every connected cactus on `1..=max_n` vertices, one per isomorphism
/// class, grown by attaching a pendant edge or a cycle at any vertex.
pub fn all_cacti(max_n: usize) -> Vec<Graph> {
    let mut levels: Vec<Vec<Graph>> = vec![Vec::new(); max_n + 1];
    if max_n == 0 {
        return Vec::new();
    }
    levels[1].push(Graph::from_edge_list(1, &[]).unwrap());
    let mut buckets: Vec<HashMap<u64, Vec<usize>>> = vec![HashMap::new(); max_n + 1];
    for size in 1..max_n {
        let current = std::mem::take(&mut levels[size]);
        for g in &current {
            let base: Vec<(Vertex, Vertex)> = g.edges().collect();
            for anchor in 0..size {
                for len in std::iter::once(2).chain(3..=max_n - size + 1) {
                    let new_n = size + len - 1;
                    if new_n > max_n {
                        continue;
                    }
                    let mut edges = base.clone();
                    let mut prev = anchor;
                    for v in size..new_n {
                        edges.push((prev, v));
                        prev = v;
                    }
                    if len >= 3 {
                        edges.push((prev, anchor));
                    }
                    let cand = Graph::from_edge_list(new_n, &edges).unwrap();
                    let key = refinement_key(&cand);
                    let bucket = buckets[new_n].entry(key).or_default();
                    if bucket.iter().any(|&i| are_isomorphic(&levels[new_n][i], &cand)) {
                        continue;
                    }
                    bucket.push(levels[new_n].len());
                    levels[new_n].push(cand);
                }
            }
        }
        levels[size] = current;
    }
    levels.into_iter().flatten().collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::cactus::{validate_cactus, Block};

    #[test]
    fn splitmix_reference_values() {
        // First outputs for seed 0 of the reference splitmix64.
        let mut r = SplitMix64::new(0);
        assert_eq!(r.next_u64(), 0xE220_A839_7B1D_CDAF);
        assert_eq!(r.next_u64(), 0x6E78_9E6A_A1B9_65F4);
        assert_eq!(r.next_u64(), 0x06C4_5D18_8009_454F);
    }

    #[test]
    fn gk_sizes() {
        let g1 = gen_gk(1).unwrap();
        assert_eq!(g1.graph.n(), 15);
        assert_eq!(g1.graph.edge_count(), 17);
        assert_eq!(g1.graph.label(6), Some("b2"));
        assert!(g1.graph.has_edge(g1.vertex('b', 1), g1.vertex('e', 2)));
        let g2 = gen_gk(2).unwrap();
        assert_eq!(g2.graph.edge_count(), 18 * 2 - 1);
        let cert = validate_cactus(&g2.graph).unwrap();
        assert!(cert.is_cactus);
        let pentagons = cert.blocks.iter().filter(|b| matches!(b, Block::Cycle(c) if c.len() == 5)).count();
        assert_eq!(pentagons, 6);
        assert!(gen_gk(0).is_err());
    }

    #[test]
    fn gk_witness_shapes() {
        let g2 = gen_gk(2).unwrap();
        assert_eq!(gk_canonical_multipacking(&g2).len(), 6);
        let b = gk_optimal_broadcast(&g2);
        assert_eq!(b.cost(), 8);
        assert_eq!(b.towers(), vec![(g2.vertex('a', 2), 4), (g2.vertex('a', 5), 4)]);
        let w = gk_fractional_weights(&g2);
        let total = w.iter().fold(rational::zero(), |acc, x| acc + x);
        assert_eq!(total, rational::int(8));
    }

    #[test]
    fn random_cactus_basics() {
        let k1 = random_cactus(&RandomCactusParams::new(1, Ratio::new(1, 2), 7, 3)).unwrap();
        assert_eq!(k1.n(), 1);
        let tree = random_cactus(&RandomCactusParams::new(40, Ratio::new(0, 1), 7, 9)).unwrap();
        assert_eq!(tree.edge_count(), 39);
        let g = random_cactus(&RandomCactusParams::new(50, Ratio::new(1, 2), 7, 42)).unwrap();
        assert_eq!(g.n(), 50);
        assert!(validate_cactus(&g).unwrap().is_cactus);
        let again = random_cactus(&RandomCactusParams::new(50, Ratio::new(1, 2), 7, 42)).unwrap();
        assert_eq!(g, again);
    }

    #[test]
    fn catalog_counts() {
        // Unlabelled cacti on 1..=7 vertices.
        let per_size: Vec<usize> =
            (1..=7).map(|n| all_cacti(7).iter().filter(|g| g.n() == n).count()).collect();
        assert_eq!(per_size, vec![1, 1, 2, 4, 9, 23, 63]);
    }
}
