//! Doubly stochastic normalization: alternately rescale the rows and
//! columns of the weight matrix until both sum to one, then score each edge
//! by its normalized magnitude. Strong edges keep large entries after their
//! endpoints' total mass is factored out.

use std::collections::BTreeMap;

use crate::backbone::{Backbone, Direction, FilterSet, Target};
use crate::error::{Error, Result};
use crate::graph::{EdgeKey, WeightedGraph};
use crate::methods::UnionFind;

/// Outcome of the alternating row/column normalization.
#[derive(Debug, Clone)]
pub struct SinkhornResult {
    /// Symmetrized normalized weight per edge.
    pub normalized: BTreeMap<EdgeKey, f64>,
    /// Normalization rounds performed.
    pub iterations: usize,
    /// Whether the worst row/column sum came within tolerance of one.
    pub converged: bool,
}

struct Normalized {
    scores: Vec<f64>,
    iterations: usize,
    converged: bool,
    residual: f64,
}

/// Alternating normalization over the dense weight matrix. Zero cells
/// (missing edges and the diagonal) receive a small uniform offset so every
/// row has mass; the offset is proportional to the lightest edge.
fn normalize(g: &WeightedGraph, tol: f64, max_iter: usize) -> Normalized {
    let n = g.n();
    let m = g.m();
    if n == 0 || m == 0 {
        return Normalized {
            scores: Vec::new(),
            iterations: 0,
            converged: true,
            residual: 0.0,
        };
    }
    let min_w = (0..m).map(|e| g.edge(e).2).fold(f64::INFINITY, f64::min);
    let eps = 1e-4 * min_w;
    let mut mat = vec![eps; n * n];
    for e in 0..m {
        let (i, j, w) = g.edge(e);
        mat[i * n + j] += w;
        mat[j * n + i] += w;
    }
    let mut iterations = 0;
    let mut converged = false;
    let mut residual = f64::INFINITY;
    for it in 1..=max_iter {
        iterations = it;
        for i in 0..n {
            let sum: f64 = mat[i * n..(i + 1) * n].iter().sum();
            for j in 0..n {
                mat[i * n + j] /= sum;
            }
        }
        for j in 0..n {
            let mut sum = 0.0;
            for i in 0..n {
                sum += mat[i * n + j];
            }
            for i in 0..n {
                mat[i * n + j] /= sum;
            }
        }
        residual = 0.0;
        for i in 0..n {
            let row: f64 = mat[i * n..(i + 1) * n].iter().sum();
            let mut col = 0.0;
            for r in 0..n {
                col += mat[r * n + i];
            }
            residual = residual.max((row - 1.0).abs()).max((col - 1.0).abs());
        }
        if residual <= tol {
            converged = true;
            break;
        }
    }
    let scores: Vec<f64> = (0..m)
        .map(|e| {
            let (i, j, _) = g.edge(e);
            0.5 * (mat[i * n + j] + mat[j * n + i])
        })
        .collect();
    Normalized {
        scores,
        iterations,
        converged,
        residual,
    }
}

/// Runs the normalization and reports the per-edge scores along with
/// convergence diagnostics; never fails.
pub fn sinkhorn(g: &WeightedGraph, tol: f64, max_iter: usize) -> SinkhornResult {
    let norm = normalize(g, tol, max_iter);
    let normalized = norm
        .scores
        .iter()
        .enumerate()
        .map(|(e, &v)| (g.edge_key(e), v))
        .collect();
    SinkhornResult {
        normalized,
        iterations: norm.iterations,
        converged: norm.converged,
    }
}

/// Scores edges by normalized weight. The boolean view keeps the smallest
/// top-ranked prefix whose subgraph spans every node in one piece (or, for
/// disconnected inputs, reproduces the original component count).
pub fn doubly_stochastic(g: &WeightedGraph, tol: f64, max_iter: usize) -> Result<Backbone> {
    let norm = normalize(g, tol, max_iter);
    if !norm.converged {
        return Err(Error::SinkhornNonConvergence {
            residual: norm.residual,
            iterations: norm.iterations,
        });
    }
    let mut marks = vec![false; g.m()];
    if g.n() > 0 {
        let target = g.component_sizes().len();
        if target > 1 {
            log::warn!(
                "doubly_stochastic: input has {target} components; the boolean view keeps a spanning prefix per component"
            );
        }
        let mut order: Vec<usize> = (0..g.m()).collect();
        order.sort_by(|&a, &b| {
            norm.scores[b]
                .total_cmp(&norm.scores[a])
                .then_with(|| g.edge(b).2.total_cmp(&g.edge(a).2))
                .then_with(|| g.edge_key(a).cmp(&g.edge_key(b)))
        });
        let mut uf = UnionFind::new(g.n());
        let mut components = g.n();
        for e in order {
            if components == target {
                break;
            }
            let (u, v, _) = g.edge(e);
            marks[e] = true;
            if uf.union(u as usize, v as usize) {
                components -= 1;
            }
        }
    }
    Ok(Backbone::new(
        g,
        "doubly_stochastic",
        Target::Edges,
        "normalized_weight",
        Direction::HigherIsStronger,
        norm.scores,
        FilterSet::all(),
    )
    .with_boolean_marks(marks))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::filters::FilterSpec;

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
    fn two_nodes_normalize_to_half() {
        // With one edge, symmetry forces both normalized entries to 1/2
        // (the off-diagonal and diagonal share each row's unit mass, and
        // the offset on the diagonal is tiny).
        let g = graph(&[("a", "b", 7.0)]);
        let r = sinkhorn(&g, 1e-8, 10_000);
        assert!(r.converged);
        let v = r.normalized[&EdgeKey::new("a", "b")];
        assert!((v - 0.5).abs() < 1e-3, "got {v}");
    }

    #[test]
    fn boolean_view_spans_all_nodes_in_one_component() {
        let g = graph(&[
            ("a", "b", 10.0),
            ("b", "c", 10.0),
            ("a", "c", 1.0),
            ("c", "d", 2.0),
        ]);
        let b = doubly_stochastic(&g, 1e-8, 10_000).unwrap();
        let sub = FilterSpec::Boolean.apply(&b).unwrap();
        assert_eq!(sub.node_count(), 4);
        assert_eq!(sub.component_sizes().len(), 1);
        // The prefix stops as soon as the graph is spanned.
        assert_eq!(sub.edge_count(), 3);
    }

    #[test]
    fn disconnected_input_spans_each_component() {
        let g = graph(&[
            ("a", "b", 3.0),
            ("b", "c", 2.0),
            ("a", "c", 1.0),
            ("x", "y", 5.0),
        ]);
        let b = doubly_stochastic(&g, 1e-8, 10_000).unwrap();
        let sub = FilterSpec::Boolean.apply(&b).unwrap();
        assert_eq!(sub.node_count(), 5);
        assert_eq!(sub.component_sizes().len(), 2);
    }

    #[test]
    fn non_convergence_is_an_error() {
        let g = graph(&[("a", "b", 3.0), ("b", "c", 2.0), ("a", "c", 1.0)]);
        assert!(matches!(
            doubly_stochastic(&g, 1e-30, 3),
            Err(Error::SinkhornNonConvergence { iterations: 3, .. })
        ));
    }

    #[test]
    fn scores_are_threshold_filterable() {
        let g = graph(&[("a", "b", 10.0), ("b", "c", 1.0), ("a", "c", 1.0)]);
        let b = doubly_stochastic(&g, 1e-8, 10_000).unwrap();
        let strong = FilterSpec::Threshold(0.4).apply(&b).unwrap();
        assert!(strong.edge_weight("a", "b").is_some());
        assert!(strong.edge_weight("b", "c").is_none());
    }
}
