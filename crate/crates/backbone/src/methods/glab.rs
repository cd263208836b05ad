//! Gravity-like local filtering of edges by shortest-path involvement.
//!
//! From each node's perspective, an incident edge's involvement is the share
//! of all shortest paths leaving the node that start along that edge
//! (distance = inverse weight, ties counted). Under a uniform null model the
//! chance that an edge reaches involvement I across k − 1 alternatives gives
//! the p-value (1 − I)^(c·(k−1)); the edge keeps the better (smaller) of its
//! two endpoint p-values.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::backbone::{Backbone, Direction, FilterSet, Target};
use crate::error::Result;
use crate::graph::{EdgeKey, WeightedGraph};
use crate::shortest::sssp;

/// Null hypothesis for how a node spreads its paths over incident edges.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum NullModel {
    /// Each incident edge is equally likely to start a shortest path.
    Uniform,
}

/// Involvement of each incident edge from each node's perspective:
/// `table[node][edge]` sums to 1 over the node's incident edges.
pub type InvolvementTable = BTreeMap<String, BTreeMap<EdgeKey, f64>>;

/// Per-source involvement of the source's incident edges: the fraction of
/// shortest paths from the source whose first hop uses that edge.
fn involvement_of(g: &WeightedGraph, costs: &[f64], v: usize) -> Vec<(u32, f64)> {
    let n = g.n();
    let run = sssp(g, costs, v);
    let denom: f64 = (0..n).filter(|&t| t != v).map(|t| run.sigma[t]).sum();
    let mut out = Vec::with_capacity(g.adjacency(v).len());
    for &(u, e) in g.adjacency(v) {
        let u = u as usize;
        let mut sig_u = vec![0.0; n];
        // Paths whose first hop is v -> u: seeded only when the direct edge
        // itself is a shortest path to u.
        if run.dist[u] == costs[e as usize] {
            sig_u[u] = 1.0;
        }
        for &t in &run.settle_order {
            let t = t as usize;
            if t == v {
                continue;
            }
            let mut add = 0.0;
            for &(p, _) in &run.preds[t] {
                add += sig_u[p as usize];
            }
            sig_u[t] += add;
        }
        let num: f64 = (0..n).filter(|&t| t != v).map(|t| sig_u[t]).sum();
        out.push((e, if denom > 0.0 { num / denom } else { 0.0 }));
    }
    out
}

/// Involvement of every (node, incident edge) pair.
pub fn involvement_table(g: &WeightedGraph) -> InvolvementTable {
    let costs = g.inverse_costs();
    let rows: Vec<(String, BTreeMap<EdgeKey, f64>)> = (0..g.n())
        .into_par_iter()
        .map(|v| {
            let row = involvement_of(g, &costs, v)
                .into_iter()
                .map(|(e, i)| (g.edge_key(e as usize), i))
                .collect();
            (g.label(v).to_string(), row)
        })
        .collect();
    rows.into_iter().collect()
}

/// Scores each edge with min over endpoints of (1 − involvement)^(c·(k−1)),
/// the uniform-null probability of seeing the observed path concentration;
/// the exponent never drops below 1.
pub fn glab(g: &WeightedGraph, c: f64, _null: NullModel) -> Result<Backbone> {
    let costs = g.inverse_costs();
    let per_node: Vec<Vec<(u32, f64)>> = (0..g.n())
        .into_par_iter()
        .map(|v| involvement_of(g, &costs, v))
        .collect();
    let mut values = vec![f64::INFINITY; g.m()];
    for v in 0..g.n() {
        let k = g.degree_of(v) as f64;
        let expo = (c * (k - 1.0)).max(1.0);
        for &(e, inv) in &per_node[v] {
            let p = (1.0 - inv).powf(expo).clamp(0.0, 1.0);
            let slot = &mut values[e as usize];
            if p < *slot {
                *slot = p;
            }
        }
    }
    Ok(Backbone::new(
        g,
        "glab",
        Target::Edges,
        "p_value",
        Direction::LowerIsStronger,
        values,
        FilterSet::threshold_and_fraction(),
    ))
}
