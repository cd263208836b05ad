//! Node scoring by modularity vitality: how much the weighted modularity of
//! a fixed community partition drops (or rises) when the node is deleted.
//! Hub-like nodes inside dense communities score positive; bridges whose
//! removal cleans up the partition score negative.

use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::backbone::{Backbone, Direction, FilterSet, Target};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Weighted modularity of a node partition: for each community, the
/// fraction of weight inside it minus the squared fraction of strength
/// attached to it. An edgeless graph scores 0.
pub fn weighted_modularity(g: &WeightedGraph, partition: &BTreeMap<String, usize>) -> Result<f64> {
    let comm: Vec<usize> = (0..g.n())
        .map(|i| {
            partition
                .get(g.label(i))
                .copied()
                .ok_or_else(|| Error::arg(format!("partition is missing node {}", g.label(i))))
        })
        .collect::<Result<_>>()?;
    Ok(q_index(g, &comm))
}

fn q_index(g: &WeightedGraph, comm: &[usize]) -> f64 {
    let two_w = 2.0 * g.total_weight();
    if two_w == 0.0 {
        return 0.0;
    }
    let mut internal: BTreeMap<usize, f64> = BTreeMap::new();
    let mut total: BTreeMap<usize, f64> = BTreeMap::new();
    for e in 0..g.m() {
        let (i, j, w) = g.edge(e);
        if comm[i] == comm[j] {
            *internal.entry(comm[i]).or_insert(0.0) += 2.0 * w;
        }
    }
    for i in 0..g.n() {
        *total.entry(comm[i]).or_insert(0.0) += g.strength_of(i);
    }
    let mut q = 0.0;
    for (c, tot) in &total {
        let inside = internal.get(c).copied().unwrap_or(0.0);
        let frac = tot / two_w;
        q += inside / two_w - frac * frac;
    }
    q
}

fn splitmix64(state: &mut u64) -> u64 {
    *state = state.wrapping_add(0x9E37_79B9_7F4A_7C15);
    let mut z = *state;
    z = (z ^ (z >> 30)).wrapping_mul(0xBF58_476D_1CE4_E5B9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94D0_49BB_1331_11EB);
    z ^ (z >> 31)
}

/// One coarsening level: plain neighbor lists plus a self-loop that stores
/// twice the internal weight, so strengths add up across levels.
struct Level {
    adj: Vec<Vec<(usize, f64)>>,
    self_loop: Vec<f64>,
}

impl Level {
    fn from_graph(g: &WeightedGraph) -> Level {
        let mut adj = vec![Vec::new(); g.n()];
        for e in 0..g.m() {
            let (i, j, w) = g.edge(e);
            adj[i].push((j, w));
            adj[j].push((i, w));
        }
        Level {
            adj,
            self_loop: vec![0.0; g.n()],
        }
    }

    fn len(&self) -> usize {
        self.adj.len()
    }

    fn strengths(&self) -> Vec<f64> {
        (0..self.len())
            .map(|i| self.adj[i].iter().map(|&(_, w)| w).sum::<f64>() + self.self_loop[i])
            .collect()
    }
}

/// Greedy local moves: each node joins the neighboring community with the
/// best modularity gain when that beats staying put by more than a float
/// guard; ties go to the smallest community id. Returns the community per
/// node and whether anything moved.
fn local_phase(level: &Level, order: &[usize]) -> (Vec<usize>, bool) {
    let n = level.len();
    let k = level.strengths();
    let two_w: f64 = k.iter().sum();
    let mut community: Vec<usize> = (0..n).collect();
    if two_w == 0.0 {
        return (community, false);
    }
    let mut tot = k.clone();
    let mut moved_any = false;
    loop {
        let mut moved = false;
        for &i in order {
            let ci = community[i];
            let mut kin: BTreeMap<usize, f64> = BTreeMap::new();
            for &(j, w) in &level.adj[i] {
                *kin.entry(community[j]).or_insert(0.0) += w;
            }
            tot[ci] -= k[i];
            let gain = |kin_c: f64, tot_c: f64| 2.0 / two_w * (kin_c - tot_c * k[i] / two_w);
            let stay = gain(kin.get(&ci).copied().unwrap_or(0.0), tot[ci]);
            let mut best_c = ci;
            let mut best_gain = f64::NEG_INFINITY;
            for (&c, &kc) in &kin {
                if c == ci {
                    continue;
                }
                let gv = gain(kc, tot[c]);
                if gv > best_gain {
                    best_gain = gv;
                    best_c = c;
                }
            }
            if best_c != ci && best_gain > stay + 1e-12 {
                community[i] = best_c;
                tot[best_c] += k[i];
                moved = true;
                moved_any = true;
            } else {
                tot[ci] += k[i];
            }
        }
        if !moved {
            break;
        }
    }
    (community, moved_any)
}

/// Collapses communities into super-nodes; `renumber` maps old community
/// ids to the dense range of the new level.
fn aggregate(level: &Level, community: &[usize], renumber: &BTreeMap<usize, usize>) -> Level {
    let c = renumber.len();
    let mut maps: Vec<BTreeMap<usize, f64>> = vec![BTreeMap::new(); c];
    let mut self_loop = vec![0.0; c];
    for i in 0..level.len() {
        let ci = renumber[&community[i]];
        self_loop[ci] += level.self_loop[i];
        for &(j, w) in &level.adj[i] {
            let cj = renumber[&community[j]];
            if ci == cj {
                // Both traversal directions land here, totalling 2w.
                self_loop[ci] += w;
            } else {
                *maps[ci].entry(cj).or_insert(0.0) += w;
            }
        }
    }
    Level {
        adj: maps
            .into_iter()
            .map(|m| m.into_iter().collect())
            .collect(),
        self_loop,
    }
}

/// Multi-level community detection. Node visit order is ascending (the
/// sorted label order of the original graph) unless a seed requests a
/// shuffled order.
fn louvain(g: &WeightedGraph, seed: Option<u64>) -> Vec<usize> {
    let n = g.n();
    let mut assignment: Vec<usize> = (0..n).collect();
    let mut level = Level::from_graph(g);
    let mut rng = seed;
    loop {
        let mut order: Vec<usize> = (0..level.len()).collect();
        if let Some(state) = rng.as_mut() {
            for i in (1..order.len()).rev() {
                let j = (splitmix64(state) % (i as u64 + 1)) as usize;
                order.swap(i, j);
            }
        }
        let (community, moved) = local_phase(&level, &order);
        if !moved {
            break;
        }
        let mut renumber: BTreeMap<usize, usize> = BTreeMap::new();
        for &c in community.iter() {
            let next = renumber.len();
            renumber.entry(c).or_insert(next);
        }
        for slot in assignment.iter_mut() {
            *slot = renumber[&community[*slot]];
        }
        level = aggregate(&level, &community, &renumber);
    }
    assignment
}

/// Scores each node by Q(partition) − Q(partition with the node deleted),
/// holding the detected communities fixed. Positive values mark nodes that
/// hold their community together; negative values mark bridges.
pub fn modularity_vitality(g: &WeightedGraph, seed: Option<u64>) -> Result<Backbone> {
    let n = g.n();
    let comm = louvain(g, seed);
    let q_full = q_index(g, &comm);
    let values: Vec<f64> = (0..n)
        .into_par_iter()
        .map(|v| {
            let keep: Vec<usize> = (0..n).filter(|&i| i != v).collect();
            let sub = g.induced_subgraph(&keep);
            let sub_comm: Vec<usize> = (0..sub.n())
                .map(|i| comm[g.index(sub.label(i)).expect("node from same graph")])
                .collect();
            q_full - q_index(&sub, &sub_comm)
        })
        .collect();
    Ok(Backbone::new(
        g,
        "modularity_vitality",
        Target::Nodes,
        "vitality",
        Direction::HigherIsStronger,
        values,
        FilterSet::threshold_and_fraction(),
    ))
}
