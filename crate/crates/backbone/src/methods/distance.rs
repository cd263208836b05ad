//! Distance-preserving backbones. Treating each edge as a distance of
//! 1/weight, the metric backbone keeps edges no indirect route can beat, so
//! all shortest-path distances survive; the ultrametric variant compares
//! against minimax (bottleneck) path costs instead and keeps fewer edges.

use rayon::prelude::*;

use crate::backbone::{Backbone, Direction, FilterSet, Target};
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::shortest::{distances, minimax_distances};

// Direct costs are compared against multi-hop sums of the same values, so
// allow a few ulps of slack before declaring an indirect route shorter.
const SLACK: f64 = 1e-15;

fn keep_direct_when_unbeaten(
    g: &WeightedGraph,
    name: &'static str,
    path_cost: impl Fn(usize, &[f64]) -> Vec<f64> + Sync,
) -> Backbone {
    let costs = g.inverse_costs();
    let per_source: Vec<Vec<f64>> = (0..g.n())
        .into_par_iter()
        .map(|source| path_cost(source, &costs))
        .collect();
    let marks: Vec<bool> = (0..g.m())
        .map(|e| {
            let (u, v, _) = g.edge(e);
            per_source[u][v] >= costs[e] - SLACK
        })
        .collect();
    let values: Vec<f64> = marks.iter().map(|&k| if k { 1.0 } else { 0.0 }).collect();
    Backbone::new(
        g,
        name,
        Target::Edges,
        "in_backbone",
        Direction::HigherIsStronger,
        values,
        FilterSet::boolean_only(),
    )
    .with_boolean_marks(marks)
}

/// Keeps an edge iff no indirect path is shorter than the edge itself
/// (distance = inverse weight); the result preserves every pairwise
/// shortest-path distance of the original graph.
pub fn metric_backbone(g: &WeightedGraph) -> Result<Backbone> {
    Ok(keep_direct_when_unbeaten(g, "metric_backbone", |s, costs| {
        distances(g, costs, s)
    }))
}

/// Keeps an edge iff no indirect path has a smaller maximum step; the
/// result preserves all minimax path costs and is contained in the metric
/// backbone.
pub fn ultrametric_backbone(g: &WeightedGraph) -> Result<Backbone> {
    Ok(keep_direct_when_unbeaten(
        g,
        "ultrametric_backbone",
        |s, costs| minimax_distances(g, costs, s),
    ))
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
    fn metric_drops_edges_beaten_by_two_hops() {
        // a—c costs 1; a—b—c costs 0.2 + 0.2, so a—c is redundant.
        let g = graph(&[("a", "b", 5.0), ("b", "c", 5.0), ("a", "c", 1.0)]);
        let b = metric_backbone(&g).unwrap();
        let sub = FilterSpec::Boolean.apply(&b).unwrap();
        assert_eq!(sub.edge_count(), 2);
        assert!(sub.edge_weight("a", "c").is_none());
    }

    #[test]
    fn metric_keeps_edges_on_tied_routes() {
        // a—c costs 0.4 and so does a—b—c: a tie keeps the direct edge.
        let g = graph(&[("a", "b", 5.0), ("b", "c", 5.0), ("a", "c", 2.5)]);
        let b = metric_backbone(&g).unwrap();
        assert_eq!(FilterSpec::Boolean.apply(&b).unwrap().edge_count(), 3);
    }

    #[test]
    fn ultrametric_is_stricter_than_metric() {
        // a—c (cost 0.4) beats a—b—c (sum 0.5) metrically, but the minimax
        // criterion compares against max(0.25, 0.25) = 0.25 and drops it.
        let g = graph(&[("a", "b", 4.0), ("b", "c", 4.0), ("a", "c", 2.5)]);
        let metric = FilterSpec::Boolean.apply(&metric_backbone(&g).unwrap()).unwrap();
        assert_eq!(metric.edge_count(), 3);
        let ultra = FilterSpec::Boolean
            .apply(&ultrametric_backbone(&g).unwrap())
            .unwrap();
        assert_eq!(ultra.edge_count(), 2);
        assert!(ultra.edge_weight("a", "c").is_none());
    }

    #[test]
    fn every_ultrametric_edge_is_metric() {
        let g = graph(&[
            ("a", "b", 4.0),
            ("b", "c", 4.0),
            ("a", "c", 2.5),
            ("c", "d", 1.0),
            ("b", "d", 2.0),
        ]);
        let metric = metric_backbone(&g).unwrap();
        let ultra = ultrametric_backbone(&g).unwrap();
        let metric_keep = metric.edge_values();
        for (key, kept) in ultra.edge_values() {
            if kept == 1.0 {
                assert_eq!(metric_keep[&key], 1.0, "edge {key} missing from metric");
            }
        }
    }
}
