//! Graph summary measures used in backbone/original comparison tables, plus
//! the exact two-sample Kolmogorov–Smirnov statistic for distribution
//! comparisons.
//!
//! Every measure takes `(original, backbone)` so fraction-style measures can
//! relate the two; the "original" table row is produced by passing the same
//! graph twice.

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Fraction of the original nodes present in the backbone.
pub fn node_fraction(original: &WeightedGraph, backbone: &WeightedGraph) -> f64 {
    ratio(backbone.node_count() as f64, original.node_count() as f64)
}

/// Fraction of the original edges present in the backbone.
pub fn edge_fraction(original: &WeightedGraph, backbone: &WeightedGraph) -> f64 {
    ratio(backbone.edge_count() as f64, original.edge_count() as f64)
}

/// Fraction of the original total edge weight retained by the backbone.
pub fn weight_fraction(original: &WeightedGraph, backbone: &WeightedGraph) -> f64 {
    ratio(backbone.total_weight(), original.total_weight())
}

/// Mean degree of the backbone itself (2m / n).
pub fn average_degree(_original: &WeightedGraph, backbone: &WeightedGraph) -> f64 {
    backbone.average_degree()
}

/// Edge density of the backbone itself: 2m / (n (n - 1)).
pub fn density(_original: &WeightedGraph, backbone: &WeightedGraph) -> f64 {
    let n = backbone.node_count() as f64;
    if n <= 1.0 {
        return 0.0;
    }
    2.0 * backbone.edge_count() as f64 / (n * (n - 1.0))
}

/// Probability that an ordered pair of distinct backbone nodes is connected
/// by some path: sum over components of c (c - 1), over n (n - 1).
pub fn reachability(_original: &WeightedGraph, backbone: &WeightedGraph) -> f64 {
    let n = backbone.node_count() as f64;
    if n <= 1.0 {
        return 0.0;
    }
    let pairs: f64 = backbone
        .component_sizes()
        .iter()
        .map(|&c| c as f64 * (c as f64 - 1.0))
        .sum();
    pairs / (n * (n - 1.0))
}

fn ratio(num: f64, den: f64) -> f64 {
    if den == 0.0 {
        0.0
    } else {
        num / den
    }
}

/// Exact two-sample Kolmogorov–Smirnov statistic: the supremum distance
/// between the two empirical CDFs. Both samples must be non-empty; an empty
/// sample has no empirical CDF to compare.
pub fn ks_statistic(a: &[f64], b: &[f64]) -> Result<f64> {
    if a.is_empty() || b.is_empty() {
        return Err(Error::arg(
            "distribution comparison requires two non-empty samples",
        ));
    }
    let mut xs: Vec<f64> = a.to_vec();
    let mut ys: Vec<f64> = b.to_vec();
    xs.sort_by(f64::total_cmp);
    ys.sort_by(f64::total_cmp);

    let (n, m) = (xs.len() as f64, ys.len() as f64);
    let (mut i, mut j) = (0usize, 0usize);
    let mut d: f64 = 0.0;
    while i < xs.len() && j < ys.len() {
        let x = xs[i].min(ys[j]);
        while i < xs.len() && xs[i] <= x {
            i += 1;
        }
        while j < ys.len() && ys[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / n - j as f64 / m).abs());
    }
    Ok(d)
}

/// Edge weights of a graph as a sample for distribution comparison.
pub fn weight_sample(graph: &WeightedGraph) -> Vec<f64> {
    graph.edges().map(|(_, _, w)| w).collect()
}

/// Node degrees of a graph as a sample for distribution comparison.
pub fn degree_sample(graph: &WeightedGraph) -> Vec<f64> {
    graph
        .node_labels()
        .map(|l| graph.degree(l).expect("label from the same graph") as f64)
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

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
    fn fractions_compare_backbone_against_original() {
        let g = graph(&[("a", "b", 3.0), ("b", "c", 1.0), ("c", "d", 4.0)]);
        let sub = graph(&[("a", "b", 3.0)]);
        assert_eq!(node_fraction(&g, &sub), 0.5);
        assert!((edge_fraction(&g, &sub) - 1.0 / 3.0).abs() < 1e-15);
        assert_eq!(weight_fraction(&g, &sub), 3.0 / 8.0);
        // Self comparison is the identity row.
        assert_eq!(node_fraction(&g, &g), 1.0);
        assert_eq!(weight_fraction(&g, &g), 1.0);
    }

    #[test]
    fn density_and_average_degree_describe_the_backbone() {
        let g = graph(&[("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0), ("c", "d", 1.0)]);
        let sub = graph(&[("a", "b", 1.0), ("b", "c", 1.0)]);
        assert_eq!(average_degree(&g, &sub), 4.0 / 3.0);
        assert!((density(&g, &sub) - 2.0 / 3.0).abs() < 1e-15);
        assert_eq!(density(&g, &g), 4.0 / 6.0);
    }

    #[test]
    fn reachability_counts_connected_ordered_pairs() {
        // Components of size 3, 2, 2 among 7 nodes.
        let g = graph(&[
            ("a", "b", 1.0),
            ("b", "c", 1.0),
            ("d", "e", 1.0),
            ("f", "g", 1.0),
        ]);
        let expected = (3.0 * 2.0 + 2.0 + 2.0) / (7.0 * 6.0);
        assert!((reachability(&g, &g) - expected).abs() < 1e-15);

        let connected = graph(&[("a", "b", 1.0), ("b", "c", 1.0)]);
        assert_eq!(reachability(&connected, &connected), 1.0);
    }

    #[test]
    fn ks_matches_hand_computed_cases() {
        // Identical samples: distance 0.
        assert_eq!(ks_statistic(&[1.0, 2.0, 3.0], &[1.0, 2.0, 3.0]).unwrap(), 0.0);
        // Disjoint supports: distance 1.
        assert_eq!(ks_statistic(&[1.0, 2.0], &[10.0, 11.0]).unwrap(), 1.0);
        // Classic partial overlap.
        let d = ks_statistic(&[1.0, 2.0], &[2.0, 3.0]).unwrap();
        assert!((d - 0.5).abs() < 1e-15);
    }

    #[test]
    fn ks_brute_force_agreement_on_random_samples() {
        // Compare against the naive evaluation at every sample point.
        let mut state = 0x9e3779b97f4a7c15u64;
        let mut next = move || {
            state ^= state << 13;
            state ^= state >> 7;
            state ^= state << 17;
            (state >> 11) as f64 / (1u64 << 53) as f64
        };
        for trial in 0..50 {
            let a: Vec<f64> = (0..(3 + trial % 7)).map(|_| (next() * 8.0).floor()).collect();
            let b: Vec<f64> = (0..(2 + trial % 5)).map(|_| (next() * 8.0).floor()).collect();
            let mut expected: f64 = 0.0;
            for x in a.iter().chain(b.iter()) {
                let fa = a.iter().filter(|v| **v <= *x).count() as f64 / a.len() as f64;
                let fb = b.iter().filter(|v| **v <= *x).count() as f64 / b.len() as f64;
                expected = expected.max((fa - fb).abs());
            }
            assert!((ks_statistic(&a, &b).unwrap() - expected).abs() < 1e-12);
        }
    }

    #[test]
    fn ks_rejects_empty_samples() {
        assert!(ks_statistic(&[], &[]).is_err());
        assert!(ks_statistic(&[1.0], &[]).is_err());
        assert!(ks_statistic(&[], &[1.0]).is_err());
    }

    #[test]
    fn samples_extract_weights_and_degrees() {
        let g = graph(&[("a", "b", 3.0), ("b", "c", 1.0)]);
        let mut w = weight_sample(&g);
        w.sort_by(f64::total_cmp);
        assert_eq!(w, vec![1.0, 3.0]);
        assert_eq!(degree_sample(&g), vec![1.0, 2.0, 1.0]);
    }
}
