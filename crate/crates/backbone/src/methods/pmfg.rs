//! Planar maximally filtered graph: scan edges from heaviest to lightest,
//! keeping each one whose addition leaves the kept set planar, up to the
//! 3(n − 2) edges a planar graph can hold.

use crate::backbone::{Backbone, Direction, FilterSet, Target};
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::planarity::is_planar;

/// Greedy planar subgraph by descending weight (canonical edge order breaks
/// ties). Inputs with at most two nodes are kept whole.
pub fn pmfg(g: &WeightedGraph) -> Result<Backbone> {
    let n = g.n();
    let m = g.m();
    let mut order: Vec<usize> = (0..m).collect();
    order.sort_by(|&a, &b| {
        let (_, _, wa) = g.edge(a);
        let (_, _, wb) = g.edge(b);
        wb.total_cmp(&wa).then_with(|| g.edge_key(a).cmp(&g.edge_key(b)))
    });
    let cap = if n >= 3 { 3 * (n - 2) } else { m };
    let mut kept: Vec<(usize, usize)> = Vec::new();
    let mut marks = vec![false; m];
    for e in order {
        if kept.len() >= cap {
            break;
        }
        let (u, v, _) = g.edge(e);
        kept.push((u, v));
        if is_planar(n, &kept) {
            marks[e] = true;
        } else {
            kept.pop();
        }
    }
    let values: Vec<f64> = marks.iter().map(|&k| if k { 1.0 } else { 0.0 }).collect();
    Ok(Backbone::new(
        g,
        "pmfg",
        Target::Edges,
        "in_backbone",
        Direction::HigherIsStronger,
        values,
        FilterSet::boolean_only(),
    )
    .with_boolean_marks(marks))
}
