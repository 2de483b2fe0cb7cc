//! Eccentricity, radius, diameter and center set.

use serde::Serialize;

use crate::cactus::{cactus_eccentricities, require_cactus, validate_cactus};
use crate::error::{Error, Result};
use crate::graph::{Graph, Vertex, UNREACHED};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct RadiusReport {
    pub radius: usize,
    pub diameter: usize,
    pub centers: Vec<Vertex>,
    pub eccentricities: Vec<usize>,
}

impl RadiusReport {
    fn from_eccentricities(eccentricities: Vec<usize>) -> RadiusReport {
        let radius = *eccentricities.iter().min().unwrap();
        let diameter = *eccentricities.iter().max().unwrap();
        let centers = (0..eccentricities.len()).filter(|&v| eccentricities[v] == radius).collect();
        RadiusReport { radius, diameter, centers, eccentricities }
    }

    /// Smallest-id center.
    pub fn center(&self) -> Vertex {
        self.centers[0]
    }
}

/// All-source BFS, `O(n·(n+m))`. Works on any connected graph.
pub fn radius_center_brute(g: &Graph) -> Result<RadiusReport> {
    g.require_connected()?;
    let ecc = (0..g.n())
        .map(|s| g.bfs_distances(s).into_iter().max().unwrap())
        .collect::<Vec<_>>();
    debug_assert!(ecc.iter().all(|&e| e != UNREACHED));
    Ok(RadiusReport::from_eccentricities(ecc))
}

/// Linear-time computation for cacti over the block-cut tree.
pub fn radius_center_linear(g: &Graph) -> Result<RadiusReport> {
    let blocks = require_cactus(g)?;
    Ok(RadiusReport::from_eccentricities(cactus_eccentricities(g, &blocks)))
}

/// Linear-time path on cacti, all-source BFS otherwise.
pub fn radius_center(g: &Graph) -> Result<RadiusReport> {
    match radius_center_linear(g) {
        Err(Error::NotCactus { .. }) => radius_center_brute(g),
        other => other,
    }
}

/// Cheap structural summary used by the CLI `stats` command.
#[derive(Clone, Debug, Serialize)]
pub struct GraphStats {
    pub n: usize,
    pub m: usize,
    pub radius: usize,
    pub diameter: usize,
    pub centers: Vec<Vertex>,
    pub cactus: crate::cactus::CactusCertificate,
}

pub fn graph_stats(g: &Graph) -> Result<GraphStats> {
    let cactus = validate_cactus(g)?;
    let report = radius_center(g)?;
    Ok(GraphStats {
        n: g.n(),
        m: g.edge_count(),
        radius: report.radius,
        diameter: report.diameter,
        centers: report.centers,
        cactus,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn path(n: usize) -> Graph {
        let edges: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        let edges: Vec<_> = (0..n).map(|i| (i, (i + 1) % n)).collect();
        Graph::from_edge_list(n, &edges).unwrap()
    }

    #[test]
    fn path_center() {
        for f in [radius_center_brute, radius_center_linear] {
            let r = f(&path(5)).unwrap();
            assert_eq!((r.radius, r.diameter), (2, 4));
            assert_eq!(r.centers, vec![2]);
        }
    }

    #[test]
    fn even_cycle_all_centers() {
        for f in [radius_center_brute, radius_center_linear] {
            let r = f(&cycle(6)).unwrap();
            assert_eq!((r.radius, r.diameter), (3, 3));
            assert_eq!(r.centers, (0..6).collect::<Vec<_>>());
        }
    }

    #[test]
    fn single_vertex() {
        let g = Graph::from_edge_list(1, &[]).unwrap();
        assert_eq!(radius_center_linear(&g).unwrap().radius, 0);
        assert_eq!(radius_center_brute(&g).unwrap().centers, vec![0]);
    }

    #[test]
    fn non_cactus_falls_back() {
        let edges: Vec<_> = (0..4).flat_map(|u| (u + 1..4).map(move |v| (u, v))).collect();
        let k4 = Graph::from_edge_list(4, &edges).unwrap();
        assert!(radius_center_linear(&k4).is_err());
        assert_eq!(radius_center(&k4).unwrap().radius, 1);
    }
}
