//! H-backbone: the union of the h-strength set (edges at least as heavy as
//! the weight h-index) and the h-bridge set (edges whose normalized
//! betweenness reaches the bridge h-index), capturing both heavy links and
//! lightweight connectors that many shortest paths depend on.

use crate::backbone::{Backbone, Direction, FilterSet, Target};
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::shortest::edge_betweenness_raw;

/// Largest h such that at least h values are >= h.
fn h_index(values: &[f64]) -> f64 {
    let mut sorted = values.to_vec();
    sorted.sort_by(|a, b| b.total_cmp(a));
    let mut h = 0.0;
    for (i, v) in sorted.iter().enumerate() {
        let rank = (i + 1) as f64;
        if *v >= rank {
            h = rank;
        }
    }
    h
}

/// Boolean backbone keeping edges with weight >= h-index of the weights or
/// bridge score >= h-index of the bridge scores, where an edge's bridge
/// score is its shortest-path betweenness (distance = inverse weight,
/// unordered pairs) divided by the node count.
pub fn h_backbone(g: &WeightedGraph) -> Result<Backbone> {
    let m = g.m();
    let weights: Vec<f64> = (0..m).map(|e| g.edge(e).2).collect();
    let h_strength = h_index(&weights);

    let bridge: Vec<f64> = if g.n() == 0 {
        Vec::new()
    } else {
        let costs = g.inverse_costs();
        edge_betweenness_raw(g, &costs)
            .into_iter()
            .map(|raw| raw / 2.0 / g.n() as f64)
            .collect()
    };
    let h_bridge = h_index(&bridge);

    let marks: Vec<bool> = (0..m)
        .map(|e| weights[e] >= h_strength || bridge[e] >= h_bridge)
        .collect();
    let values: Vec<f64> = marks.iter().map(|&k| if k { 1.0 } else { 0.0 }).collect();
    Ok(Backbone::new(
        g,
        "h_backbone",
        Target::Edges,
        "in_backbone",
        Direction::HigherIsStronger,
        values,
        FilterSet::boolean_only(),
    )
    .with_boolean_marks(marks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::FilterSpec;

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
    fn h_index_matches_hand_counts() {
        assert_eq!(h_index(&[5.0, 5.0, 5.0, 1.0]), 3.0);
        assert_eq!(h_index(&[1.0, 1.0]), 1.0);
        assert_eq!(h_index(&[0.5, 0.5]), 0.0);
        assert_eq!(h_index(&[]), 0.0);
    }

    #[test]
    fn bridge_rescues_light_connector_and_drops_pendant() {
        // Two heavy triangles joined by a light bridge, plus a light
        // pendant. Weight h-index = 5 keeps the triangles; the bridge
        // c—x carries all 12 cross pairs (score 24/2/7 ≈ 1.71 ≥ 1 = bridge
        // h-index) while the pendant p—a carries only 6 (score ≈ 0.86).
        let g = graph(&[
            ("a", "b", 5.0),
            ("b", "c", 5.0),
            ("a", "c", 5.0),
            ("x", "y", 5.0),
            ("y", "z", 5.0),
            ("x", "z", 5.0),
            ("c", "x", 1.0),
            ("p", "a", 1.0),
        ]);
        let b = h_backbone(&g).unwrap();
        let sub = FilterSpec::Boolean.apply(&b).unwrap();
        assert_eq!(sub.edge_count(), 7);
        assert!(sub.edge_weight("c", "x").is_some());
        assert!(sub.edge_weight("p", "a").is_none());
        assert!(!sub.contains_node("p"));
    }

    #[test]
    fn degenerate_h_indices_keep_everything() {
        // All weights below 1 and all bridge scores below 1: both h-indices
        // are 0 and every edge trivially qualifies.
        let g = graph(&[("a", "b", 0.5), ("b", "c", 0.5)]);
        let b = h_backbone(&g).unwrap();
        let sub = FilterSpec::Boolean.apply(&b).unwrap();
        assert_eq!(sub.edge_count(), 2);
    }

    #[test]
    fn only_boolean_filtering_is_offered() {
        let g = graph(&[("a", "b", 2.0)]);
        let b = h_backbone(&g).unwrap();
        assert!(FilterSpec::Threshold(0.5).apply(&b).is_err());
        assert!(FilterSpec::Fraction(0.5).apply(&b).is_err());
    }
}
