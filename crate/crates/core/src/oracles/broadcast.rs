//! Broadcasts and their verifier.

use std::collections::BTreeMap;

use serde::Serialize;

use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, UNREACHED};
use crate::metric::radius_center;

/// Power assignment `f: V -> {0, …, diam}`.
#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub struct Broadcast {
    powers: Vec<usize>,
}

impl Broadcast {
    pub fn zero(n: usize) -> Broadcast {
        Broadcast { powers: vec![0; n] }
    }

    pub fn from_powers(powers: Vec<usize>) -> Broadcast {
        Broadcast { powers }
    }

    /// Builds from `(vertex, power)` pairs; later pairs overwrite earlier ones.
    pub fn from_towers(n: usize, towers: &[(Vertex, usize)]) -> Result<Broadcast> {
        let mut b = Broadcast::zero(n);
        for &(v, p) in towers {
            if v >= n {
                return Err(Error::VertexOutOfRange { vertex: v, n });
            }
            b.powers[v] = p;
        }
        Ok(b)
    }

    pub fn n(&self) -> usize {
        self.powers.len()
    }

    pub fn set(&mut self, v: Vertex, power: usize) {
        self.powers[v] = power;
    }

    pub fn power(&self, v: Vertex) -> usize {
        self.powers[v]
    }

    pub fn powers(&self) -> &[usize] {
        &self.powers
    }

    /// σ(f).
    pub fn cost(&self) -> usize {
        self.powers.iter().sum()
    }

    /// Vertices with positive power, ascending.
    pub fn towers(&self) -> Vec<(Vertex, usize)> {
        self.powers.iter().enumerate().filter(|(_, &p)| p > 0).map(|(v, &p)| (v, p)).collect()
    }

    /// `{"id": power}` over towers only.
    pub fn to_map(&self) -> BTreeMap<String, usize> {
        self.towers().into_iter().map(|(v, p)| (v.to_string(), p)).collect()
    }
}

impl Serialize for Broadcast {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_map().serialize(s)
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct BroadcastCheck {
    pub dominating: bool,
    pub efficient: bool,
    pub cost: usize,
    pub undominated: Vec<Vertex>,
}

/// Number of towers each vertex hears, by one truncated BFS per tower.
pub(crate) fn hearing_counts(g: &Graph, f: &Broadcast) -> Vec<usize> {
    let mut heard = vec![0usize; g.n()];
    let mut dist = vec![UNREACHED; g.n()];
    let mut touched = Vec::new();
    let mut queue = std::collections::VecDeque::new();
    for (t, p) in f.towers() {
        dist[t] = 0;
        touched.push(t);
        queue.push_back(t);
        while let Some(v) = queue.pop_front() {
            heard[v] += 1;
            if dist[v] == p {
                continue;
            }
            for &w in g.neighbors(v) {
                if dist[w] == UNREACHED {
                    dist[w] = dist[v] + 1;
                    touched.push(w);
                    queue.push_back(w);
                }
            }
        }
        for v in touched.drain(..) {
            dist[v] = UNREACHED;
        }
    }
    heard
}

pub fn verify_broadcast(g: &Graph, f: &Broadcast) -> Result<BroadcastCheck> {
    if f.n() != g.n() {
        return Err(Error::Precondition(format!("broadcast has {} entries for {} vertices", f.n(), g.n())));
    }
    let diameter = radius_center(g)?.diameter;
    if let Some((v, p)) = f.towers().into_iter().find(|&(_, p)| p > diameter) {
        return Err(Error::PowerOutOfRange { vertex: v, power: p, diameter });
    }
    let heard = hearing_counts(g, f);
    let undominated: Vec<Vertex> = (0..g.n()).filter(|&v| heard[v] == 0).collect();
    Ok(BroadcastCheck {
        dominating: undominated.is_empty(),
        efficient: heard.iter().all(|&h| h <= 1),
        cost: f.cost(),
        undominated,
    })
}
