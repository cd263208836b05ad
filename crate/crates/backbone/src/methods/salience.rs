//! High salience skeleton: each node grows its shortest-path tree (distance
//! = inverse weight); an edge's salience is the fraction of nodes whose tree
//! uses it. Salience is strongly bimodal in real networks, so the boolean
//! view keeps edges that appear in more than 80% of the trees.

use rayon::prelude::*;

use crate::backbone::{Backbone, Direction, FilterSet, Target};
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::shortest::sssp;

/// Fraction of per-node shortest-path trees each edge participates in; the
/// tree for a source is the union of all of its tied shortest paths.
pub fn high_salience_skeleton(g: &WeightedGraph) -> Result<Backbone> {
    let n = g.n();
    let m = g.m();
    let costs = g.inverse_costs();
    let per_source: Vec<Vec<u32>> = (0..n)
        .into_par_iter()
        .map(|source| {
            let run = sssp(g, &costs, source);
            let mut used = Vec::new();
            for e in 0..m {
                let (u, v, _) = g.edge(e);
                let c = costs[e];
                // Bit-exact distance test keeps tied paths symmetric across
                // runs and thread counts.
                if run.dist[u] + c == run.dist[v] || run.dist[v] + c == run.dist[u] {
                    used.push(e as u32);
                }
            }
            used
        })
        .collect();
    let mut counts = vec![0u32; m];
    for used in &per_source {
        for &e in used {
            counts[e as usize] += 1;
        }
    }
    let values: Vec<f64> = counts.iter().map(|&c| c as f64 / n as f64).collect();
    let marks: Vec<bool> = values.iter().map(|&v| v > 0.8).collect();
    Ok(Backbone::new(
        g,
        "high_salience_skeleton",
        Target::Edges,
        "salience",
        Direction::HigherIsStronger,
        values,
        FilterSet::all(),
    )
    .with_boolean_marks(marks))
}
