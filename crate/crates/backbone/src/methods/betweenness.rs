//! Edge betweenness scoring. Paths are cheapest by summed raw edge weight
//! (weights act as traversal costs here, unlike the inverse-weight methods),
//! and each edge's share of all-pairs shortest paths is normalized by the
//! number of ordered node pairs.

use crate::backbone::{Backbone, Direction, FilterSet, Target};
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::shortest::edge_betweenness_raw;

/// Fraction of shortest paths crossing each edge, in [0, 1].
pub fn betweenness_scores(g: &WeightedGraph) -> Result<Backbone> {
    let n = g.n();
    let costs: Vec<f64> = (0..g.m()).map(|e| g.edge(e).2).collect();
    let scale = if n >= 2 { 1.0 / (n as f64 * (n as f64 - 1.0)) } else { 0.0 };
    let values: Vec<f64> = edge_betweenness_raw(g, &costs)
        .into_iter()
        .map(|raw| raw * scale)
        .collect();
    Ok(Backbone::new(
        g,
        "edge_betweenness",
        Target::Edges,
        "betweenness",
        Direction::HigherIsStronger,
        values,
        FilterSet::threshold_and_fraction(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::EdgeKey;

    fn graph(edges: &[(&str, &str, f64)]) -> WeightedGraph {
        let (g, _) = WeightedGraph::from_edges(
            edges
                .iter()
                .map(|&(a, b, w)| (a.to_string(), b.to_string(), w)),
            false,
        )
        .unwrap();
        g
    }

    #[test]
    fn path_edges_carry_two_thirds() {
        let g = graph(&[("a", "b", 1.0), ("b", "c", 1.0)]);
        let vals = betweenness_scores(&g).unwrap().edge_values();
        for (_, v) in vals {
            assert!((v - 2.0 / 3.0).abs() < 1e-15);
        }
    }

    #[test]
    fn heavy_edges_are_avoided_as_costs() {
        // b—c is so heavy that even b to c routes around it via a.
        let g = graph(&[("a", "b", 1.0), ("a", "c", 1.0), ("b", "c", 9.0)]);
        let vals = betweenness_scores(&g).unwrap().edge_values();
        assert_eq!(vals[&EdgeKey::new("b", "c")], 0.0);
        // a—b carries (a,b) and (b,c) in both orders: 4 of 6 ordered pairs.
        assert!((vals[&EdgeKey::new("a", "b")] - 4.0 / 6.0).abs() < 1e-15);
    }

    #[test]
    fn tied_paths_split_the_credit() {
        // Unit square: opposite corners have two tied two-hop routes.
        let g = graph(&[
            ("a", "b", 1.0),
            ("b", "d", 1.0),
            ("a", "c", 1.0),
            ("c", "d", 1.0),
        ]);
        let vals = betweenness_scores(&g).unwrap().edge_values();
        // Each edge: one adjacent pair (2 ordered) + half of one diagonal
        // pair (1 ordered equivalent) = 3 of 12 ordered pairs.
        for (_, v) in vals {
            assert!((v - 0.25).abs() < 1e-15);
        }
    }
}
