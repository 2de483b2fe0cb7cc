//! Shared helpers for integration tests: random small graphs and brute-force
//! reference oracles that avoid the library's own algorithms.

#![allow(dead_code)]

use cactus_mp::families::SplitMix64;
use cactus_mp::Graph;

/// Random labeled connected graph: a random recursive tree under a random
/// relabeling, plus each remaining pair with probability `num/den`.
pub fn random_connected(n: usize, num: u64, den: u64, rng: &mut SplitMix64) -> Graph {
    let mut perm: Vec<usize> = (0..n).collect();
    for i in (1..n).rev() {
        let j = rng.below(i as u64 + 1) as usize;
        perm.swap(i, j);
    }
    let mut adj = vec![vec![false; n]; n];
    for v in 1..n {
        let u = rng.below(v as u64) as usize;
        adj[perm[u]][perm[v]] = true;
        adj[perm[v]][perm[u]] = true;
    }
    for u in 0..n {
        for v in u + 1..n {
            if !adj[u][v] && rng.below(den) < num {
                adj[u][v] = true;
                adj[v][u] = true;
            }
        }
    }
    let edges: Vec<(usize, usize)> = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v))).filter(|&(u, v)| adj[u][v]).collect();
    Graph::from_edge_list(n, &edges).unwrap()
}

/// All-pairs distances by Floyd-Warshall.
pub fn floyd(g: &Graph) -> Vec<Vec<usize>> {
    let n = g.n();
    let inf = usize::MAX / 4;
    let mut d = vec![vec![inf; n]; n];
    for u in 0..n {
        d[u][u] = 0;
        for &v in g.neighbors(u) {
            d[u][v] = 1;
        }
    }
    for k in 0..n {
        for i in 0..n {
            for j in 0..n {
                if d[i][k] + d[k][j] < d[i][j] {
                    d[i][j] = d[i][k] + d[k][j];
                }
            }
        }
    }
    d
}

pub fn diameter(d: &[Vec<usize>]) -> usize {
    d.iter().flat_map(|r| r.iter().copied()).max().unwrap_or(0)
}

pub fn radius(d: &[Vec<usize>]) -> usize {
    d.iter().map(|r| *r.iter().max().unwrap()).min().unwrap()
}

/// Ball `N_k[u]` as a bitmask.
pub fn ball(d: &[Vec<usize>], u: usize, k: usize) -> u32 {
    (0..d.len()).filter(|&v| d[u][v] <= k).fold(0, |m, v| m | 1 << v)
}

pub fn is_multipacking(d: &[Vec<usize>], mask: u32) -> bool {
    let n = d.len();
    let diam = diameter(d);
    (0..n).all(|v| (1..=diam.max(1)).all(|k| (ball(d, v, k) & mask).count_ones() as usize <= k))
}

/// Maximum multipacking by subset enumeration.
pub fn brute_mp(g: &Graph) -> usize {
    let d = floyd(g);
    let n = g.n();
    (0u32..1 << n).filter(|&m| is_multipacking(&d, m)).map(|m| m.count_ones() as usize).max().unwrap()
}

/// Minimum broadcast cost as a weighted set cover over balls, by DP on the
/// covered mask.
pub fn brute_gamma_b(g: &Graph) -> usize {
    let d = floyd(g);
    let n = g.n();
    let diam = diameter(&d);
    let full = (1u32 << n) - 1;
    let sets: Vec<(u32, usize)> = (0..n).flat_map(|t| (1..=diam).map(move |p| (t, p))).map(|(t, p)| (ball(&d, t, p), p)).collect();
    let inf = usize::MAX / 2;
    let mut dp = vec![inf; 1 << n];
    dp[0] = 0;
    for m in 0..=full {
        if dp[m as usize] == inf {
            continue;
        }
        for &(b, p) in &sets {
            let to = (m | b) as usize;
            dp[to] = dp[to].min(dp[m as usize] + p);
        }
    }
    dp[full as usize]
}

/// Minimum dominating set by subset enumeration.
pub fn brute_domination(g: &Graph) -> usize {
    let d = floyd(g);
    let n = g.n();
    let full = (1u32 << n) - 1;
    (0u32..=full)
        .filter(|&m| (0..n).filter(|&v| m >> v & 1 == 1).fold(0, |acc, v| acc | ball(&d, v, 1)) == full)
        .map(|m| m.count_ones() as usize)
        .min()
        .unwrap()
}
