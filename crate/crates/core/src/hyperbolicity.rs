//! Gromov δ-hyperbolicity by the four-point condition.

use rayon::prelude::*;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::families::gen_gk;
use crate::graph::{Graph, Vertex};
use crate::rational::{self, Rational};

/// Largest `k` accepted by [`check_gk_half_hyperbolic`].
pub const GK_HYPERBOLICITY_MAX_K: usize = 3;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct DeltaReport {
    #[serde(with = "crate::rational")]
    pub delta: Rational,
    /// Lexicographically smallest quadruple attaining `delta`; empty when
    /// `n < 4`.
    pub witness: Vec<Vertex>,
    pub quadruples_scanned: u64,
}

/// Twice the four-point gap of one quadruple.
fn gap(s1: usize, s2: usize, s3: usize) -> usize {
    let mut s = [s1, s2, s3];
    s.sort_unstable();
    s[2] - s[1]
}

/// Exact δ over all unordered quadruples, parallel over the first index.
pub fn delta_hyperbolicity(g: &Graph) -> Result<DeltaReport> {
    g.require_connected()?;
    let n = g.n();
    if n < 4 {
        return Ok(DeltaReport { delta: rational::zero(), witness: Vec::new(), quadruples_scanned: 0 });
    }
    let d = g.distance_matrix();
    // (twice delta, quadruple); ties keep the smaller quadruple.
    let best = (0..n)
        .into_par_iter()
        .map(|a| {
            let mut best: (usize, [Vertex; 4]) = (0, [a, a + 1, a + 2, a + 3]);
            let mut found = false;
            let ra = d.row(a);
            for b in a + 1..n {
                let rb = d.row(b);
                for c in b + 1..n {
                    let rc = d.row(c);
                    let (ab, ac, bc) = (ra[b] as usize, ra[c] as usize, rb[c] as usize);
                    for x in c + 1..n {
                        let gp = gap(ab + rc[x] as usize, ac + rb[x] as usize, ra[x] as usize + bc);
                        if !found || gp > best.0 {
                            best = (gp, [a, b, c, x]);
                            found = true;
                        }
                    }
                }
            }
            found.then_some(best)
        })
        .flatten()
        .reduce_with(|p, q| if q.0 > p.0 || (q.0 == p.0 && q.1 < p.1) { q } else { p })
        .expect("n >= 4 gives at least one quadruple");
    let n64 = n as u64;
    let scanned = n64 * (n64 - 1) * (n64 - 2) * (n64 - 3) / 24;
    Ok(DeltaReport { delta: rational::ratio(best.0 as i64, 2), witness: best.1.to_vec(), quadruples_scanned: scanned })
}

/// Whether `G_k` has δ exactly 1/2, for `1 <= k <= 3`.
pub fn check_gk_half_hyperbolic(k: usize) -> Result<bool> {
    if k > GK_HYPERBOLICITY_MAX_K {
        return Err(Error::ResourceGuard(format!("k = {k} exceeds {GK_HYPERBOLICITY_MAX_K} for the quartic scan")));
    }
    let inst = gen_gk(k)?;
    Ok(delta_hyperbolicity(&inst.graph)?.delta == rational::ratio(1, 2))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn small_cases() {
        assert_eq!(delta_hyperbolicity(&cycle(3)).unwrap().delta, rational::zero());
        let c6 = delta_hyperbolicity(&cycle(6)).unwrap();
        assert_eq!(c6.delta, rational::one());
        assert_eq!(c6.quadruples_scanned, 15);
        assert_eq!(c6.witness, vec![0, 1, 2, 4]);
        let star = Graph::from_edge_list(5, &[(0, 1), (0, 2), (0, 3), (0, 4)]).unwrap();
        assert_eq!(delta_hyperbolicity(&star).unwrap().delta, rational::zero());
        let k4 = Graph::from_edge_list(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(delta_hyperbolicity(&k4).unwrap().delta, rational::zero());
    }

    #[test]
    fn gk_half() {
        assert!(check_gk_half_hyperbolic(1).unwrap());
        assert!(matches!(check_gk_half_hyperbolic(4), Err(Error::ResourceGuard(_))));
    }
}
