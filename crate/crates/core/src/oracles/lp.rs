//! Fractional multipacking / fractional broadcast LP pair, solved exactly.
//!
//! Packing side: `max Σ y_v` s.t. `Σ_{v ∈ N_k[u]} y_v <= k` for every ball
//! `(u, k)`, `y >= 0`. Covering side: `min Σ k·x_{u,k}` s.t. every vertex is
//! covered with total weight at least 1. Both optima coincide.
//!
//! Balls with `k > rad` are never binding because the center ball of radius
//! `rad` already contains every vertex, and of several constraints with the
//! same or a nested vertex set only the tightest one matters.

use num_traits::{One, Signed, Zero};
use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{DistMatrix, Graph, Vertex};
use crate::metric::radius_center;
use crate::rational::{self, Rational};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum LpStatus {
    Optimal,
    InfeasibleGuard,
}

/// One covering variable `x_{vertex, power}` with its value.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TowerWeight {
    pub vertex: Vertex,
    pub power: usize,
    #[serde(with = "crate::rational")]
    pub weight: Rational,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct LpSolution {
    #[serde(with = "crate::rational")]
    pub value: Rational,
    pub status: LpStatus,
    /// Nonzero covering weights, ordered by `(vertex, power)`.
    pub primal: Vec<TowerWeight>,
    /// Packing weight per vertex.
    #[serde(serialize_with = "serialize_rationals")]
    pub dual: Vec<Rational>,
    pub rows: usize,
    pub pivots: usize,
}

fn serialize_rationals<S: serde::Serializer>(v: &[Rational], s: S) -> std::result::Result<S::Ok, S::Error> {
    s.collect_seq(v.iter().map(rational::format))
}

/// Ball `N_k[u]` as a bitset.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
struct Ball(Vec<u64>);

impl Ball {
    fn new(d: &DistMatrix, u: Vertex, k: usize) -> Ball {
        let n = d.n();
        let mut bits = vec![0u64; n.div_ceil(64)];
        for (v, &dv) in d.row(u).iter().enumerate() {
            if dv as usize <= k {
                bits[v / 64] |= 1 << (v % 64);
            }
        }
        Ball(bits)
    }

    fn subset_of(&self, other: &Ball) -> bool {
        self.0.iter().zip(&other.0).all(|(a, b)| a & !b == 0)
    }

    fn members(&self) -> impl Iterator<Item = Vertex> + '_ {
        self.0.iter().enumerate().flat_map(|(w, &bits)| (0..64).filter(move |b| bits >> b & 1 == 1).map(move |b| w * 64 + b))
    }
}

/// Non-redundant packing constraints `(u, k, ball)`.
fn reduced_rows(d: &DistMatrix, rad: usize) -> Vec<(Vertex, usize, Ball)> {
    let mut rows: Vec<(Vertex, usize, Ball)> = Vec::new();
    for u in 0..d.n() {
        let top = rad.min(d.eccentricity(u));
        for k in 1..=top {
            rows.push((u, k, Ball::new(d, u, k)));
        }
    }
    // (u, k) is implied by (u', k') when N_k[u] ⊆ N_k'[u'] and k >= k'. Scan in
    // order of increasing capacity so the kept witness is the tightest one.
    rows.sort_by(|a, b| a.1.cmp(&b.1).then(a.0.cmp(&b.0)));
    let mut kept: Vec<(Vertex, usize, Ball)> = Vec::new();
    for row in rows {
        if kept.iter().any(|(_, k, b)| *k <= row.1 && row.2.subset_of(b)) {
            continue;
        }
        kept.push(row);
    }
    kept
}

/// Dictionary `x_B = b + A x_N`, `z = z0 + c x_N`, maximized with Bland's
/// rule. Variables `0..n` are structural, `n..n+m` are slacks.
struct Dictionary {
    b: Vec<Rational>,
    a: Vec<Vec<Rational>>,
    c: Vec<Rational>,
    z0: Rational,
    basic: Vec<usize>,
    nonbasic: Vec<usize>,
}

impl Dictionary {
    fn pivot(&mut self, row: usize, col: usize) {
        let piv = self.a[row][col].clone();
        let inv = piv.recip();
        // Solve row for the entering variable.
        let mut new_row: Vec<Rational> = self.a[row].iter().map(|v| -(v * &inv)).collect();
        new_row[col] = inv.clone();
        let new_b = -(&self.b[row] * &inv);
        for r in 0..self.a.len() {
            if r == row || self.a[r][col].is_zero() {
                continue;
            }
            let f = self.a[r][col].clone();
            self.b[r] += &f * &new_b;
            for (j, v) in new_row.iter().enumerate() {
                if j == col {
                    self.a[r][j] = &f * v;
                } else if !v.is_zero() {
                    self.a[r][j] += &f * v;
                }
            }
        }
        let f = self.c[col].clone();
        if !f.is_zero() {
            self.z0 += &f * &new_b;
            for (j, v) in new_row.iter().enumerate() {
                if j == col {
                    self.c[j] = &f * v;
                } else if !v.is_zero() {
                    self.c[j] += &f * v;
                }
            }
        }
        self.a[row] = new_row;
        self.b[row] = new_b;
        std::mem::swap(&mut self.basic[row], &mut self.nonbasic[col]);
    }

    /// Runs to optimality; returns the pivot count, or `None` past `limit`.
    fn solve(&mut self, limit: usize) -> Option<usize> {
        let mut pivots = 0;
        loop {
            let entering = (0..self.c.len())
                .filter(|&j| self.c[j].is_positive())
                .min_by_key(|&j| self.nonbasic[j]);
            let Some(col) = entering else { return Some(pivots) };
            let mut leave: Option<(Rational, usize, usize)> = None;
            for r in 0..self.a.len() {
                if !self.a[r][col].is_negative() {
                    continue;
                }
                let ratio = -(&self.b[r] / &self.a[r][col]);
                let better = match &leave {
                    None => true,
                    Some((best, _, var)) => ratio < *best || (ratio == *best && self.basic[r] < *var),
                };
                if better {
                    leave = Some((ratio, r, self.basic[r]));
                }
            }
            // Every structural variable sits in some unit-capacity ball, so the
            // LP is bounded and a leaving row always exists.
            let (_, row, _) = leave?;
            self.pivot(row, col);
            pivots += 1;
            if pivots > limit {
                return None;
            }
        }
    }
}

/// Exact `MP_f = γ_{b,f}` with matching primal and dual certificates.
pub fn lp_fractional(g: &Graph) -> Result<LpSolution> {
    g.require_connected()?;
    let n = g.n();
    if n < 2 {
        return Err(Error::SingleVertex);
    }
    let rad = radius_center(g)?.radius;
    let d = g.distance_matrix();
    let rows = reduced_rows(&d, rad);
    let m = rows.len();
    let mut a = vec![vec![rational::zero(); n]; m];
    for (r, (_, _, ball)) in rows.iter().enumerate() {
        for v in ball.members() {
            a[r][v] = -rational::one();
        }
    }
    let mut dict = Dictionary {
        b: rows.iter().map(|(_, k, _)| rational::int(*k as i64)).collect(),
        a,
        c: vec![rational::one(); n],
        z0: rational::zero(),
        basic: (n..n + m).collect(),
        nonbasic: (0..n).collect(),
    };
    let limit = 50 * (n + m) * (n + m);
    let Some(pivots) = dict.solve(limit) else {
        return Ok(LpSolution {
            value: rational::zero(),
            status: LpStatus::InfeasibleGuard,
            primal: Vec::new(),
            dual: Vec::new(),
            rows: m,
            pivots: limit,
        });
    };

    let mut dual = vec![rational::zero(); n];
    for (r, &var) in dict.basic.iter().enumerate() {
        if var < n {
            dual[var] = dict.b[r].clone();
        }
    }
    let mut primal = Vec::new();
    for (j, &var) in dict.nonbasic.iter().enumerate() {
        if var >= n && !dict.c[j].is_zero() {
            let (u, k, _) = &rows[var - n];
            primal.push(TowerWeight { vertex: *u, power: *k, weight: -dict.c[j].clone() });
        }
    }
    primal.sort_by_key(|t| (t.vertex, t.power));
    let sol = LpSolution { value: dict.z0.clone(), status: LpStatus::Optimal, primal, dual, rows: m, pivots };
    check_certificates(g, &d, &sol)?;
    Ok(sol)
}

/// Primal and dual feasibility over all balls up to the diameter, and equal
/// objective values.
fn check_certificates(g: &Graph, d: &DistMatrix, sol: &LpSolution) -> Result<()> {
    let n = g.n();
    let diam = d.diameter();
    if sol.dual.iter().any(|y| y.is_negative()) || sol.primal.iter().any(|t| t.weight.is_negative()) {
        return Err(Error::Invariant("negative LP variable".into()));
    }
    for u in 0..n {
        let mut by_dist = vec![rational::zero(); diam + 1];
        for v in 0..n {
            by_dist[d.get(u, v)] += &sol.dual[v];
        }
        let mut acc = rational::zero();
        for (k, w) in by_dist.iter().enumerate() {
            acc += w;
            if k >= 1 && acc > rational::int(k as i64) {
                return Err(Error::Invariant(format!("packing weight of N_{k}[{u}] is {acc}")));
            }
        }
    }
    let mut cover = vec![rational::zero(); n];
    for t in &sol.primal {
        for (v, c) in cover.iter_mut().enumerate() {
            if d.get(t.vertex, v) <= t.power {
                *c += &t.weight;
            }
        }
    }
    if let Some(v) = cover.iter().position(|c| *c < Rational::one()) {
        return Err(Error::Invariant(format!("vertex {v} covered only {}", cover[v])));
    }
    let y_total: Rational = sol.dual.iter().fold(rational::zero(), |s, y| s + y);
    let x_total: Rational = sol.primal.iter().fold(rational::zero(), |s, t| s + &t.weight * rational::int(t.power as i64));
    if y_total != sol.value || x_total != sol.value {
        return Err(Error::Invariant(format!("LP values disagree: {y_total} vs {x_total} vs {}", sol.value)));
    }
    Ok(())
}
