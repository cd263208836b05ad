//! Statistical scoring: each edge weight is tested against a null model of
//! weight formation and annotated with a p-value (smaller = harder to
//! explain by chance). `mla` is the one boolean member of this family.

use statrs::function::beta::beta_reg;

use crate::backbone::{Backbone, Direction, FilterSet, Target};
use crate::error::Result;
use crate::graph::WeightedGraph;
use crate::methods::require_integer_weights;

/// Survival function P(X ≥ wins) for X ~ Binomial(trials, p), evaluated
/// through the regularized incomplete beta function so it stays accurate
/// for trial counts around 10⁸ where naive summation underflows.
pub fn binomial_survival(trials: f64, p: f64, wins: f64) -> f64 {
    if wins <= 0.0 {
        return 1.0;
    }
    if wins > trials {
        return 0.0;
    }
    if p <= 0.0 {
        return 0.0;
    }
    if p >= 1.0 {
        return 1.0;
    }
    // P(X ≥ w) = I_p(w, n − w + 1).
    beta_reg(wins, trials - wins + 1.0, p)
}

fn p_value_backbone(g: &WeightedGraph, name: &str, values: Vec<f64>) -> Backbone {
    Backbone::new(
        g,
        name,
        Target::Edges,
        "p_value",
        Direction::LowerIsStronger,
        values,
        FilterSet::threshold_and_fraction(),
    )
}

/// Tests each weight against a per-node uniform split of the node's
/// strength: from endpoint v with degree k ≥ 2, p = (1 − w/s_v)^(k−1);
/// degree-1 endpoints cannot reject and contribute 1. The edge keeps the
/// smaller endpoint p-value.
pub fn disparity(g: &WeightedGraph) -> Result<Backbone> {
    let endpoint = |v: usize, w: f64| -> f64 {
        let k = g.degree_of(v);
        if k <= 1 {
            1.0
        } else {
            (1.0 - w / g.strength_of(v)).powf((k - 1) as f64)
        }
    };
    let values = (0..g.m())
        .map(|e| {
            let (i, j, w) = g.edge(e);
            endpoint(i, w).min(endpoint(j, w)).clamp(0.0, 1.0)
        })
        .collect();
    Ok(p_value_backbone(g, "disparity", values))
}

/// Models the graph as T unit edges thrown independently at node pairs with
/// probability s_i·s_j / (2T²) and scores each edge with the probability of
/// drawing at least its observed weight.
pub fn marginal_likelihood(g: &WeightedGraph) -> Result<Backbone> {
    require_integer_weights(g, "marginal_likelihood")?;
    let t = g.total_weight();
    let values = (0..g.m())
        .map(|e| {
            let (i, j, w) = g.edge(e);
            let p = g.strength_of(i) * g.strength_of(j) / (2.0 * t * t);
            binomial_survival(t, p, w)
        })
        .collect();
    Ok(p_value_backbone(g, "marginal_likelihood", values))
}

/// Binomial approximation of the noise-corrected null: pair probability
/// q = (s_i/T)·(s_j/T); p-value = P(X ≥ w) with X ~ Binomial(T, q).
pub fn noise_corrected(g: &WeightedGraph) -> Result<Backbone> {
    require_integer_weights(g, "noise_corrected")?;
    let t = g.total_weight();
    let values = (0..g.m())
        .map(|e| {
            let (i, j, w) = g.edge(e);
            let mut q = (g.strength_of(i) / t) * (g.strength_of(j) / t);
            if q > 1.0 {
                log::warn!(
                    "noise_corrected: pair probability {q} for {} clamped to 1",
                    g.edge_key(e)
                );
                q = 1.0;
            }
            binomial_survival(t, q, w)
        })
        .collect();
    Ok(p_value_backbone(g, "noise_corrected", values))
}

/// Empirical-CDF test: from endpoint v, the p-value of edge e is the share
/// of v's incident edges whose fractional weight strictly exceeds e's. The
/// edge keeps the smaller endpoint p-value.
pub fn lans(g: &WeightedGraph) -> Result<Backbone> {
    let mut values = vec![f64::INFINITY; g.m()];
    for v in 0..g.n() {
        let s = g.strength_of(v);
        let k = g.adjacency(v).len();
        let fracs: Vec<(u32, f64)> = g
            .adjacency(v)
            .iter()
            .map(|&(_, e)| (e, g.edge(e as usize).2 / s))
            .collect();
        for &(e, f) in &fracs {
            let above = fracs.iter().filter(|&&(_, f2)| f2 > f).count();
            let p = above as f64 / k as f64;
            let slot = &mut values[e as usize];
            if p < *slot {
                *slot = p;
            }
        }
    }
    Ok(p_value_backbone(g, "lans", values))
}

/// Pearson correlation of two equally long samples.
fn pearson(a: &[f64], b: &[f64]) -> f64 {
    let n = a.len() as f64;
    let ma = a.iter().sum::<f64>() / n;
    let mb = b.iter().sum::<f64>() / n;
    let mut cov = 0.0;
    let mut va = 0.0;
    let mut vb = 0.0;
    for (x, y) in a.iter().zip(b) {
        cov += (x - ma) * (y - mb);
        va += (x - ma) * (x - ma);
        vb += (y - mb) * (y - mb);
    }
    cov / (va * vb).sqrt()
}

/// For every node, finds the count c whose "evenly spread over c edges"
/// hypothetical best correlates with the node's observed sorted weights and
/// marks that node's top-c edges; an edge survives if either endpoint marks
/// it. Equal-weight nodes keep everything (the data already matches the
/// even-spread hypothesis at c = k).
pub fn mla(g: &WeightedGraph) -> Result<Backbone> {
    let mut marked = vec![false; g.m()];
    for v in 0..g.n() {
        let mut incident: Vec<(u32, f64)> = g
            .adjacency(v)
            .iter()
            .map(|&(_, e)| (e, g.edge(e as usize).2))
            .collect();
        if incident.is_empty() {
            continue;
        }
        // Heaviest first; weight ties resolved by canonical edge order.
        incident.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
        let k = incident.len();
        let weights: Vec<f64> = incident.iter().map(|&(_, w)| w).collect();
        let uniform = weights.iter().all(|&w| w == weights[0]);
        let best_c = if k == 1 || uniform {
            k
        } else {
            let s: f64 = weights.iter().sum();
            let mut best = (1usize, f64::NEG_INFINITY);
            // c = k is skipped: its hypothetical is constant, so the
            // correlation is undefined for a non-uniform observation.
            for c in 1..k {
                let mut hypo = vec![0.0; k];
                for h in hypo.iter_mut().take(c) {
                    *h = s / c as f64;
                }
                let r = pearson(&weights, &hypo);
                if r > best.1 {
                    best = (c, r);
                }
            }
            best.0
        };
        for &(e, _) in incident.iter().take(best_c) {
            marked[e as usize] = true;
        }
    }
    let values = marked.iter().map(|&m| if m { 1.0 } else { 0.0 }).collect();
    Ok(Backbone::new(
        g,
        "mla",
        Target::Edges,
        "in_backbone",
        Direction::HigherIsStronger,
        values,
        FilterSet::boolean_only(),
    ))
}
