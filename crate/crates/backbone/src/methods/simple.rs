//! Structural scorers with no model behind them: raw weight, per-node
//! strongest link, neighborhood overlap, and node degree.

use crate::backbone::{Backbone, Direction, FilterSet, Target};
use crate::error::Result;
use crate::graph::WeightedGraph;

/// Scores each edge by its own weight, so thresholding keeps globally heavy
/// edges regardless of local context.
pub fn global_threshold(g: &WeightedGraph) -> Result<Backbone> {
    let values: Vec<f64> = (0..g.m()).map(|e| g.edge(e).2).collect();
    Ok(Backbone::new(
        g,
        "global_threshold",
        Target::Edges,
        "weight",
        Direction::HigherIsStronger,
        values,
        FilterSet::threshold_and_fraction(),
    ))
}

/// Keeps every node's single heaviest edge (first in canonical order on
/// ties); the union over nodes is the backbone.
pub fn primary_linkage(g: &WeightedGraph) -> Result<Backbone> {
    let mut best: Vec<Option<usize>> = vec![None; g.n()];
    for e in 0..g.m() {
        let (u, v, w) = g.edge(e);
        for node in [u, v] {
            let better = match best[node] {
                None => true,
                Some(b) => w > g.edge(b).2,
            };
            if better {
                best[node] = Some(e);
            }
        }
    }
    let mut marks = vec![false; g.m()];
    for slot in best.into_iter().flatten() {
        marks[slot] = true;
    }
    let values: Vec<f64> = marks.iter().map(|&k| if k { 1.0 } else { 0.0 }).collect();
    Ok(Backbone::new(
        g,
        "primary_linkage",
        Target::Edges,
        "in_backbone",
        Direction::HigherIsStronger,
        values,
        FilterSet::boolean_only(),
    )
    .with_boolean_marks(marks))
}

/// Scores each edge by the Jaccard similarity of its endpoints' closed
/// neighborhoods (each node counts itself as well as its neighbors), a
/// purely topological overlap measure.
pub fn global_sparsification(g: &WeightedGraph) -> Result<Backbone> {
    let closed: Vec<Vec<u32>> = (0..g.n())
        .map(|i| {
            let mut set: Vec<u32> = g.adjacency(i).iter().map(|&(nb, _)| nb).collect();
            let pos = set.partition_point(|&nb| nb < i as u32);
            set.insert(pos, i as u32);
            set
        })
        .collect();
    let values: Vec<f64> = (0..g.m())
        .map(|e| {
            let (u, v, _) = g.edge(e);
            let (a, b) = (&closed[u], &closed[v]);
            let mut inter = 0usize;
            let (mut i, mut j) = (0, 0);
            while i < a.len() && j < b.len() {
                match a[i].cmp(&b[j]) {
                    std::cmp::Ordering::Less => i += 1,
                    std::cmp::Ordering::Greater => j += 1,
                    std::cmp::Ordering::Equal => {
                        inter += 1;
                        i += 1;
                        j += 1;
                    }
                }
            }
            let union = a.len() + b.len() - inter;
            inter as f64 / union as f64
        })
        .collect();
    Ok(Backbone::new(
        g,
        "global_sparsification",
        Target::Edges,
        "jaccard_similarity",
        Direction::HigherIsStronger,
        values,
        FilterSet::threshold_and_fraction(),
    ))
}

/// Scores each node by its degree (number of incident edges).
pub fn degree_scores(g: &WeightedGraph) -> Result<Backbone> {
    let values: Vec<f64> = (0..g.n()).map(|i| g.degree_of(i) as f64).collect();
    Ok(Backbone::new(
        g,
        "node_degree",
        Target::Nodes,
        "degree",
        Direction::HigherIsStronger,
        values,
        FilterSet::threshold_and_fraction(),
    ))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::FilterSpec;
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
    fn weight_scores_threshold_inclusively() {
        let g = graph(&[("a", "b", 3.0), ("b", "c", 1.0), ("c", "d", 2.0)]);
        let b = global_threshold(&g).unwrap();
        let cut = FilterSpec::Threshold(2.0).apply(&b).unwrap();
        assert_eq!(cut.edge_count(), 2);
        assert!(cut.edge_weight("b", "c").is_none());
    }

    #[test]
    fn strongest_edge_per_node_survives() {
        // Star with one heavy spoke: the center keeps only the heavy edge,
        // but each leaf keeps its own spoke, so everything survives.
        let star = graph(&[("h", "a", 9.0), ("h", "b", 1.0), ("h", "c", 1.0)]);
        let kept = FilterSpec::Boolean.apply(&primary_linkage(&star).unwrap()).unwrap();
        assert_eq!(kept.edge_count(), 3);

        // A path with a weak middle edge loses it: both of its endpoints
        // prefer their outer edges.
        let path = graph(&[("a", "b", 5.0), ("b", "c", 1.0), ("c", "d", 5.0)]);
        let kept = FilterSpec::Boolean.apply(&primary_linkage(&path).unwrap()).unwrap();
        assert_eq!(kept.edge_count(), 2);
        assert!(kept.edge_weight("b", "c").is_none());
    }

    #[test]
    fn primary_linkage_breaks_ties_canonically() {
        let g = graph(&[("b", "a", 2.0), ("b", "c", 2.0)]);
        let b = primary_linkage(&g).unwrap();
        // Node b's tie goes to a—b, the canonically first edge; b—c is
        // still kept by node c.
        let vals = b.edge_values();
        assert_eq!(vals[&EdgeKey::new("a", "b")], 1.0);
        assert_eq!(vals[&EdgeKey::new("b", "c")], 1.0);

        let leaf_tie = graph(&[("b", "a", 2.0), ("b", "c", 2.0), ("a", "c", 1.0)]);
        let vals = primary_linkage(&leaf_tie).unwrap().edge_values();
        // a and c each prefer their weight-2 spoke over the weight-1 chord.
        assert_eq!(vals[&EdgeKey::new("a", "c")], 0.0);
    }

    #[test]
    fn closed_neighborhood_overlap_matches_hand_values() {
        // Triangle: all three closed neighborhoods coincide.
        let tri = graph(&[("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0)]);
        for (_, v) in global_sparsification(&tri).unwrap().edge_values() {
            assert_eq!(v, 1.0);
        }
        // Path a—b—c: N[a] = {a,b}, N[b] = {a,b,c} -> 2 of 3.
        let path = graph(&[("a", "b", 1.0), ("b", "c", 1.0)]);
        let vals = global_sparsification(&path).unwrap().edge_values();
        assert!((vals[&EdgeKey::new("a", "b")] - 2.0 / 3.0).abs() < 1e-15);
        // Two hubs sharing one common neighbor.
        let bridge = graph(&[
            ("u", "v", 1.0),
            ("u", "x", 1.0),
            ("v", "x", 1.0),
            ("u", "p", 1.0),
            ("v", "q", 1.0),
        ]);
        let vals = global_sparsification(&bridge).unwrap().edge_values();
        // N[u] = {p,u,v,x}, N[v] = {q,u,v,x}: 3 shared of 5 total.
        assert!((vals[&EdgeKey::new("u", "v")] - 3.0 / 5.0).abs() < 1e-15);
    }

    #[test]
    fn weights_do_not_affect_overlap() {
        let light = graph(&[("a", "b", 1.0), ("b", "c", 1.0)]);
        let heavy = graph(&[("a", "b", 9.0), ("b", "c", 2.0)]);
        assert_eq!(
            global_sparsification(&light).unwrap().edge_values(),
            global_sparsification(&heavy).unwrap().edge_values()
        );
    }

    #[test]
    fn degree_scores_count_incident_edges() {
        let g = graph(&[("a", "b", 9.0), ("b", "c", 2.0)]);
        let b = degree_scores(&g).unwrap();
        let vals = b.node_values();
        assert_eq!(vals["a"], 1.0);
        assert_eq!(vals["b"], 2.0);
        let top = FilterSpec::Fraction(0.34).apply(&b).unwrap();
        assert_eq!(top.node_count(), 1);
        assert!(top.contains_node("b"));
    }
}
