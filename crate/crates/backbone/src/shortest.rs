//! Single-source shortest-path machinery shared by the path-based methods:
//! plain Dijkstra with path counts and predecessor DAGs, minimax (widest
//! bottleneck) distances, and edge betweenness accumulation.

use std::cmp::Ordering;
use std::collections::BinaryHeap;

use rayon::prelude::*;

use crate::graph::WeightedGraph;

/// Heap entry popping smallest distance first; insertion sequence breaks
/// ties so traversal order is reproducible.
#[derive(PartialEq)]
struct Entry {
    dist: f64,
    seq: u64,
    node: u32,
}

impl Eq for Entry {}

impl PartialOrd for Entry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Entry {
    fn cmp(&self, other: &Self) -> Ordering {
        // Reversed: BinaryHeap is a max-heap, we want the minimum distance.
        other
            .dist
            .total_cmp(&self.dist)
            .then_with(|| other.seq.cmp(&self.seq))
    }
}

/// Everything Dijkstra learns from one source.
pub(crate) struct SsspResult {
    /// Shortest distance per node; `f64::INFINITY` when unreachable.
    pub dist: Vec<f64>,
    /// Number of distinct shortest paths from the source to each node.
    pub sigma: Vec<f64>,
    /// Shortest-path DAG: for each node, its predecessors as
    /// `(node, edge index)` pairs in discovery order.
    pub preds: Vec<Vec<(u32, u32)>>,
    /// Nodes in the order they were settled (non-decreasing distance).
    pub settle_order: Vec<u32>,
}

/// Dijkstra with shortest-path counting. Two paths tie only when their
/// accumulated costs are bit-identical, which keeps path counts exact for
/// rational costs and mirrors the usual reference implementations.
pub(crate) fn sssp(graph: &WeightedGraph, costs: &[f64], source: usize) -> SsspResult {
    let n = graph.n();
    debug_assert_eq!(costs.len(), graph.m());
    let mut dist = vec![f64::INFINITY; n];
    let mut sigma = vec![0.0; n];
    let mut preds: Vec<Vec<(u32, u32)>> = vec![Vec::new(); n];
    let mut settled = vec![false; n];
    let mut settle_order = Vec::with_capacity(n);

    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    dist[source] = 0.0;
    sigma[source] = 1.0;
    heap.push(Entry { dist: 0.0, seq, node: source as u32 });

    while let Some(Entry { node, .. }) = heap.pop() {
        let v = node as usize;
        if settled[v] {
            continue;
        }
        settled[v] = true;
        settle_order.push(node);
        for &(w, e) in graph.adjacency(v) {
            let wu = w as usize;
            if settled[wu] {
                continue;
            }
            let nd = dist[v] + costs[e as usize];
            if nd < dist[wu] {
                dist[wu] = nd;
                sigma[wu] = sigma[v];
                preds[wu].clear();
                preds[wu].push((node, e));
                seq += 1;
                heap.push(Entry { dist: nd, seq, node: w });
            } else if nd == dist[wu] {
                sigma[wu] += sigma[v];
                preds[wu].push((node, e));
            }
        }
    }

    SsspResult { dist, sigma, preds, settle_order }
}

/// Shortest distances only.
pub(crate) fn distances(graph: &WeightedGraph, costs: &[f64], source: usize) -> Vec<f64> {
    sssp(graph, costs, source).dist
}

/// Minimax distances: the smallest achievable bottleneck (maximum edge cost
/// along a path) from the source to every node.
pub(crate) fn minimax_distances(graph: &WeightedGraph, costs: &[f64], source: usize) -> Vec<f64> {
    let n = graph.n();
    let mut dist = vec![f64::INFINITY; n];
    let mut settled = vec![false; n];
    let mut heap = BinaryHeap::new();
    let mut seq = 0u64;
    dist[source] = 0.0;
    heap.push(Entry { dist: 0.0, seq, node: source as u32 });

    while let Some(Entry { node, .. }) = heap.pop() {
        let v = node as usize;
        if settled[v] {
            continue;
        }
        settled[v] = true;
        for &(w, e) in graph.adjacency(v) {
            let wu = w as usize;
            if settled[wu] {
                continue;
            }
            let nd = dist[v].max(costs[e as usize]);
            if nd < dist[wu] {
                dist[wu] = nd;
                seq += 1;
                heap.push(Entry { dist: nd, seq, node: w });
            }
        }
    }

    dist
}

/// Raw edge betweenness: for every ordered source/target pair, each edge
/// accumulates the fraction of shortest paths passing through it. Undirected
/// pairs are therefore counted twice; callers apply their own scaling.
pub(crate) fn edge_betweenness_raw(graph: &WeightedGraph, costs: &[f64]) -> Vec<f64> {
    let n = graph.n();
    let m = graph.m();
    let per_source: Vec<Vec<f64>> = (0..n)
        .into_par_iter()
        .map(|s| {
            let sp = sssp(graph, costs, s);
            let mut delta = vec![0.0; n];
            let mut acc = vec![0.0; m];
            for &w in sp.settle_order.iter().rev() {
                let wu = w as usize;
                let coeff = (1.0 + delta[wu]) / sp.sigma[wu];
                for &(v, e) in &sp.preds[wu] {
                    let c = sp.sigma[v as usize] * coeff;
                    acc[e as usize] += c;
                    delta[v as usize] += c;
                }
            }
            acc
        })
        .collect();

    // Sequential reduction in source order keeps float sums reproducible.
    let mut total = vec![0.0; m];
    for acc in per_source {
        for (t, a) in total.iter_mut().zip(acc) {
            *t += a;
        }
    }
    total
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

    fn unit_costs(g: &WeightedGraph) -> Vec<f64> {
        vec![1.0; g.edge_count()]
    }

    #[test]
    fn distances_follow_cheapest_route() {
        let g = graph(&[("a", "b", 1.0), ("b", "c", 1.0), ("a", "c", 1.0)]);
        // Costs: a—b 1, a—c 5, b—c 1 (canonical edge order a—b, a—c, b—c).
        let costs = vec![1.0, 5.0, 1.0];
        let d = distances(&g, &costs, 0);
        assert_eq!(d, vec![0.0, 1.0, 2.0]);
    }

    #[test]
    fn sigma_counts_parallel_shortest_paths() {
        // Diamond: a—b—d and a—c—d, all unit cost.
        let g = graph(&[("a", "b", 1.0), ("a", "c", 1.0), ("b", "d", 1.0), ("c", "d", 1.0)]);
        let sp = sssp(&g, &unit_costs(&g), 0);
        let d_index = 3; // labels sort a,b,c,d
        assert_eq!(sp.sigma[d_index], 2.0);
        assert_eq!(sp.preds[d_index].len(), 2);
        assert_eq!(sp.dist[d_index], 2.0);
    }

    #[test]
    fn unreachable_nodes_stay_infinite() {
        let g = graph(&[("a", "b", 1.0), ("c", "d", 1.0)]);
        let sp = sssp(&g, &unit_costs(&g), 0);
        assert!(sp.dist[2].is_infinite());
        assert_eq!(sp.sigma[2], 0.0);
        assert_eq!(sp.settle_order.len(), 2);
    }

    #[test]
    fn minimax_prefers_small_bottlenecks_over_short_sums() {
        // a—b direct bottleneck 10; a—c—b route bottleneck max(4, 5) = 5.
        let g = graph(&[("a", "b", 1.0), ("a", "c", 1.0), ("b", "c", 1.0)]);
        let costs = vec![10.0, 4.0, 5.0]; // a—b, a—c, b—c
        let d = minimax_distances(&g, &costs, 0);
        assert_eq!(d[1], 5.0);
        assert_eq!(d[2], 4.0);
    }

    #[test]
    fn path_graph_edge_betweenness_matches_hand_count() {
        let g = graph(&[("a", "b", 1.0), ("b", "c", 1.0)]);
        let raw = edge_betweenness_raw(&g, &unit_costs(&g));
        // Each edge carries two of the three unordered pairs, counted twice.
        assert_eq!(raw, vec![4.0, 4.0]);
    }

    #[test]
    fn equal_split_betweenness_on_diamond() {
        let g = graph(&[("a", "b", 1.0), ("a", "c", 1.0), ("b", "d", 1.0), ("c", "d", 1.0)]);
        let raw = edge_betweenness_raw(&g, &unit_costs(&g));
        // Pairs through a—b: (a,b) whole + (a,d) half = 1.5; doubled = 3.
        for v in raw {
            assert!((v - 3.0).abs() < 1e-12);
        }
    }
}
