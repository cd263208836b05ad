//! Maximum spanning tree: the heaviest acyclic subgraph touching every
//! node (a forest when the input is disconnected).

use crate::backbone::{Backbone, Direction, FilterSet, Target};
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::methods::UnionFind;

/// Kruskal's construction on descending weight; ties resolve in canonical
/// edge order so repeated runs keep the same tree.
pub fn maximum_spanning_tree(g: &WeightedGraph) -> Result<Backbone> {
    let mut order: Vec<usize> = (0..g.m()).collect();
    order.sort_by(|&a, &b| {
        let (_, _, wa) = g.edge(a);
        let (_, _, wb) = g.edge(b);
        wb.total_cmp(&wa).then_with(|| g.edge_key(a).cmp(&g.edge_key(b)))
    });
    let mut uf = UnionFind::new(g.n());
    let mut marks = vec![false; g.m()];
    for e in order {
        let (u, v, _) = g.edge(e);
        if uf.union(u as usize, v as usize) {
            marks[e] = true;
        }
    }
    let values: Vec<f64> = marks.iter().map(|&m| if m { 1.0 } else { 0.0 }).collect();
    Ok(Backbone::new(
        g,
        "maximum_spanning_tree",
        Target::Edges,
        "in_backbone",
        Direction::HigherIsStronger,
        values,
        FilterSet::boolean_only(),
    )
    .with_boolean_marks(marks))
}
