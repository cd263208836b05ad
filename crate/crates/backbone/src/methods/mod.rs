//! The scoring methods. Each produces a [`Backbone`](crate::Backbone):
//! statistical methods attach p-values, structural methods attach scores or
//! boolean membership marks, and the hybrid method combines both views.

mod betweenness;
mod distance;
mod ecm;
mod glab;
mod hbackbone;
mod modularity;
mod mst;
mod pmfg;
mod salience;
mod simple;
mod sinkhorn;
mod stat;

pub use betweenness::betweenness_scores;
pub use distance::{metric_backbone, ultrametric_backbone};
pub use ecm::{ecm, ecm_fit, ecm_fit_with, ecm_with, EcmFit, EcmOptions};
pub use glab::{glab, involvement_table, InvolvementTable, NullModel};
pub use hbackbone::h_backbone;
pub use modularity::{modularity_vitality, weighted_modularity};
pub use mst::maximum_spanning_tree;
pub use pmfg::pmfg;
pub use salience::high_salience_skeleton;
pub use simple::{degree_scores, global_sparsification, global_threshold, primary_linkage};
pub use sinkhorn::{doubly_stochastic, sinkhorn, SinkhornResult};
pub use stat::{binomial_survival, disparity, lans, marginal_likelihood, mla, noise_corrected};

use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// Union-find over `0..n` with path halving and union by size.
pub(crate) struct UnionFind {
    parent: Vec<u32>,
    size: Vec<u32>,
}

impl UnionFind {
    pub fn new(n: usize) -> UnionFind {
        UnionFind {
            parent: (0..n as u32).collect(),
            size: vec![1; n],
        }
    }

    pub fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] as usize != x {
            self.parent[x] = self.parent[self.parent[x] as usize];
            x = self.parent[x] as usize;
        }
        x
    }

    /// Joins the two sets; returns false if already joined.
    pub fn union(&mut self, a: usize, b: usize) -> bool {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra == rb {
            return false;
        }
        let (big, small) = if self.size[ra] >= self.size[rb] {
            (ra, rb)
        } else {
            (rb, ra)
        };
        self.parent[small as usize] = big as u32;
        self.size[big] += self.size[small];
        true
    }
}

/// The unit-edge null models only make sense on integer weights.
pub(crate) fn require_integer_weights(g: &WeightedGraph, _method: &str) -> Result<()> {
    for e in 0..g.m() {
        let (i, j, w) = g.edge(e);
        if w.fract() != 0.0 {
            return Err(Error::NonIntegerWeight {
                u: g.label(i).to_string(),
                v: g.label(j).to_string(),
                weight: w,
            });
        }
    }
    Ok(())
}
