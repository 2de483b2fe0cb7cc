//! Exact check of fractional multipacking weights.

use num_traits::Signed;
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex};
use crate::rational::{self, Rational};

/// A ball whose weight exceeds its radius.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightViolation {
    pub vertex: Vertex,
    pub radius: usize,
    #[serde(with = "crate::rational")]
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct WeightCheck {
    pub feasible: bool,
    #[serde(with = "crate::rational")]
    pub value: Rational,
    /// Worst offending ball by excess, ties to the smallest `(vertex, radius)`.
    pub violation: Option<WeightViolation>,
}

/// Checks `w(N_r[v]) <= r` for every vertex `v` and `1 <= r <= diam`.
pub fn verify_fractional_weights(g: &Graph, w: &[Rational]) -> Result<WeightCheck> {
    let n = g.n();
    if w.len() != n {
        return Err(Error::Precondition(format!("{} weights for {n} vertices", w.len())));
    }
    if let Some(v) = w.iter().position(|x| x.is_negative()) {
        return Err(Error::Precondition(format!("negative weight at vertex {v}")));
    }
    g.require_connected()?;
    let d = g.distance_matrix();
    let diam = d.diameter();
    let mut worst: Option<(Rational, WeightViolation)> = None;
    for v in 0..n {
        let mut by_dist = vec![rational::zero(); diam + 1];
        for (u, wu) in w.iter().enumerate() {
            by_dist[d.get(v, u)] += wu;
        }
        let mut acc = rational::zero();
        for (r, part) in by_dist.iter().enumerate() {
            acc += part;
            if r == 0 {
                continue;
            }
            let excess = &acc - rational::int(r as i64);
            if excess.is_positive() && worst.as_ref().is_none_or(|(e, _)| excess > *e) {
                worst = Some((excess, WeightViolation { vertex: v, radius: r, weight: acc.clone() }));
            }
        }
    }
    let value = w.iter().fold(rational::zero(), |s, x| s + x);
    Ok(WeightCheck { feasible: worst.is_none(), value, violation: worst.map(|(_, v)| v) })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::families::{gen_gk, gk_fractional_weights};

    #[test]
    fn zero_and_adjacent_pair() {
        let p3 = Graph::from_edge_list(3, &[(0, 1), (1, 2)]).unwrap();
        let zero = verify_fractional_weights(&p3, &vec![rational::zero(); 3]).unwrap();
        assert!(zero.feasible);
        assert_eq!(zero.value, rational::zero());
        let bad = verify_fractional_weights(&p3, &[rational::one(), rational::one(), rational::zero()]).unwrap();
        assert!(!bad.feasible);
        let viol = bad.violation.unwrap();
        assert_eq!((viol.vertex, viol.radius), (0, 1));
        assert_eq!(viol.weight, rational::int(2));
    }

    #[test]
    fn gk_weights() {
        for k in 1..=2 {
            let inst = gen_gk(k).unwrap();
            let chk = verify_fractional_weights(&inst.graph, &gk_fractional_weights(&inst)).unwrap();
            assert!(chk.feasible);
            assert_eq!(chk.value, rational::int(4 * k as i64));
        }
    }

    #[test]
    fn rejects_bad_input() {
        let p2 = Graph::from_edge_list(2, &[(0, 1)]).unwrap();
        assert!(verify_fractional_weights(&p2, &[rational::one()]).is_err());
        assert!(verify_fractional_weights(&p2, &[rational::int(-1), rational::one()]).is_err());
    }
}
