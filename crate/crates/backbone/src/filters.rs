use std::cmp::Ordering;

use crate::backbone::{Backbone, Direction, FilterKind, Target};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;

/// A concrete filter to turn a scored backbone into a subgraph.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum FilterSpec {
    /// Keep items whose value is exactly 1.0 (or marked by the method's
    /// built-in boolean view).
    Boolean,
    /// Keep items beyond a cut: strictly below it when lower values are
    /// stronger (p-values), at or above it when higher values are stronger.
    Threshold(f64),
    /// Keep the strongest fraction of items, rounded half away from zero,
    /// never fewer than one.
    Fraction(f64),
}

impl FilterSpec {
    pub fn kind(&self) -> FilterKind {
        match self {
            FilterSpec::Boolean => FilterKind::Boolean,
            FilterSpec::Threshold(_) => FilterKind::Threshold,
            FilterSpec::Fraction(_) => FilterKind::Fraction,
        }
    }

    /// Applies the filter, producing the retained subgraph.
    ///
    /// Edge-targeted backbones keep exactly the retained edges and their
    /// endpoints; node-targeted backbones keep the retained nodes and the
    /// subgraph they induce (isolated retained nodes stay).
    pub fn apply(&self, backbone: &Backbone) -> Result<WeightedGraph> {
        if !backbone.compatible_filters().supports(self.kind()) {
            return Err(Error::IncompatibleFilter {
                method: backbone.method_name().to_string(),
                filter: self.kind().to_string(),
            });
        }
        match self {
            FilterSpec::Fraction(f) if !(*f > 0.0 && *f <= 1.0) => {
                return Err(Error::arg(format!(
                    "fraction must lie in (0, 1], got {f}"
                )));
            }
            FilterSpec::Threshold(t) if !t.is_finite() => {
                return Err(Error::arg(format!("threshold must be finite, got {t}")));
            }
            _ => {}
        }

        let keep = self.selected_indices(backbone);
        let graph = backbone.source();
        Ok(match backbone.target() {
            Target::Edges => graph.subgraph_from_edges(&keep),
            Target::Nodes => graph.induced_subgraph(&keep),
        })
    }

    /// Indices (edge or node, per target) retained by this filter.
    fn selected_indices(&self, backbone: &Backbone) -> Vec<usize> {
        let values = backbone.raw_values();
        match self {
            FilterSpec::Boolean => {
                if let Some(marks) = backbone.raw_boolean_marks() {
                    (0..values.len()).filter(|&i| marks[i]).collect()
                } else {
                    (0..values.len()).filter(|&i| values[i] == 1.0).collect()
                }
            }
            FilterSpec::Threshold(t) => {
                let keep = |v: f64| match backbone.direction() {
                    Direction::LowerIsStronger => v < *t,
                    Direction::HigherIsStronger => v >= *t,
                };
                (0..values.len()).filter(|&i| keep(values[i])).collect()
            }
            FilterSpec::Fraction(f) => {
                let count = values.len();
                if count == 0 {
                    return Vec::new();
                }
                let mut order: Vec<usize> = (0..count).collect();
                order.sort_by(|&a, &b| compare_rank(backbone, a, b));
                let keep = ((f * count as f64).round() as usize).clamp(1, count);
                order.truncate(keep);
                order
            }
        }
    }
}

/// Keeps the items the method itself marked (or valued exactly 1.0).
pub fn boolean_filter(backbone: &Backbone) -> Result<WeightedGraph> {
    FilterSpec::Boolean.apply(backbone)
}

/// Keeps items past the cut: value < `threshold` for p-values,
/// value ≥ `threshold` for scores.
pub fn threshold_filter(backbone: &Backbone, threshold: f64) -> Result<WeightedGraph> {
    FilterSpec::Threshold(threshold).apply(backbone)
}

/// Keeps the strongest `fraction` of items (rounded half away from zero,
/// at least one).
pub fn fraction_filter(backbone: &Backbone, fraction: f64) -> Result<WeightedGraph> {
    FilterSpec::Fraction(fraction).apply(backbone)
}

/// Total order putting the strongest item first; value ties break by edge
/// weight (heavier first) and then lexicographic identity, so ranking is
/// deterministic.
fn compare_rank(backbone: &Backbone, a: usize, b: usize) -> Ordering {
    let strength = |i: usize| {
        let v = backbone.raw_values()[i];
        match backbone.direction() {
            Direction::LowerIsStronger => v,
            Direction::HigherIsStronger => -v,
        }
    };
    strength(a)
        .total_cmp(&strength(b))
        .then_with(|| match backbone.target() {
            Target::Edges => {
                let wa = backbone.source().edge(a).2;
                let wb = backbone.source().edge(b).2;
                wb.total_cmp(&wa).then_with(|| {
                    backbone
                        .source()
                        .edge_key(a)
                        .cmp(&backbone.source().edge_key(b))
                })
            }
            Target::Nodes => backbone.source().label(a).cmp(backbone.source().label(b)),
        })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::backbone::FilterSet;

    fn scored(values: Vec<f64>, direction: Direction, filters: FilterSet) -> Backbone {
        let (g, _) = WeightedGraph::from_edges(
            [
                ("a".to_string(), "b".to_string(), 4.0),
                ("a".to_string(), "c".to_string(), 3.0),
                ("b".to_string(), "c".to_string(), 2.0),
                ("c".to_string(), "d".to_string(), 1.0),
            ],
            false,
        )
        .unwrap();
        Backbone::new(&g, "demo", Target::Edges, "v", direction, values, filters)
    }

    #[test]
    fn boolean_keeps_unit_values_and_drops_isolated_endpoints() {
        let b = scored(
            vec![1.0, 0.0, 0.0, 1.0],
            Direction::HigherIsStronger,
            FilterSet::boolean_only(),
        );
        let g = FilterSpec::Boolean.apply(&b).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.node_count(), 4); // a,b from a—b; c,d from c—d
        assert!(g.contains_node("d"));
    }

    #[test]
    fn threshold_is_strict_for_p_values_and_inclusive_for_scores() {
        let p = scored(
            vec![0.01, 0.05, 0.30, 0.90],
            Direction::LowerIsStronger,
            FilterSet::threshold_and_fraction(),
        );
        let g = FilterSpec::Threshold(0.05).apply(&p).unwrap();
        assert_eq!(g.edge_count(), 1); // 0.05 itself excluded

        let s = scored(
            vec![0.01, 0.05, 0.30, 0.90],
            Direction::HigherIsStronger,
            FilterSet::threshold_and_fraction(),
        );
        let g = FilterSpec::Threshold(0.05).apply(&s).unwrap();
        assert_eq!(g.edge_count(), 3); // 0.05 itself included
    }

    #[test]
    fn fraction_rounds_half_away_from_zero_with_floor_of_one() {
        let b = scored(
            vec![0.4, 0.3, 0.2, 0.1],
            Direction::LowerIsStronger,
            FilterSet::threshold_and_fraction(),
        );
        // 0.375 * 4 = 1.5 -> 2 edges.
        let g = FilterSpec::Fraction(0.375).apply(&b).unwrap();
        assert_eq!(g.edge_count(), 2);
        // Tiny fraction still keeps one edge.
        let g = FilterSpec::Fraction(0.001).apply(&b).unwrap();
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge_weight("c", "d"), Some(1.0)); // smallest p wins
    }

    #[test]
    fn fraction_ties_break_by_weight_then_label() {
        let b = scored(
            vec![0.5, 0.5, 0.5, 0.5],
            Direction::LowerIsStronger,
            FilterSet::threshold_and_fraction(),
        );
        let g = FilterSpec::Fraction(0.25).apply(&b).unwrap();
        // All values tie; heaviest edge (a—b, w=4) is ranked first.
        assert_eq!(g.edge_count(), 1);
        assert_eq!(g.edge_weight("a", "b"), Some(4.0));
    }

    #[test]
    fn incompatible_filter_is_rejected() {
        let b = scored(
            vec![1.0, 0.0, 0.0, 1.0],
            Direction::HigherIsStronger,
            FilterSet::boolean_only(),
        );
        let err = FilterSpec::Threshold(0.5).apply(&b).unwrap_err();
        assert!(matches!(err, Error::IncompatibleFilter { .. }));
    }

    #[test]
    fn fraction_outside_unit_interval_is_an_argument_error() {
        let b = scored(
            vec![0.4, 0.3, 0.2, 0.1],
            Direction::LowerIsStronger,
            FilterSet::threshold_and_fraction(),
        );
        assert!(matches!(
            FilterSpec::Fraction(1.5).apply(&b),
            Err(Error::InvalidArgument { .. })
        ));
        assert!(matches!(
            FilterSpec::Fraction(0.0).apply(&b),
            Err(Error::InvalidArgument { .. })
        ));
    }

    #[test]
    fn node_target_keeps_isolated_retained_nodes() {
        let (g, _) = WeightedGraph::from_edges(
            [
                ("a".to_string(), "b".to_string(), 4.0),
                ("c".to_string(), "d".to_string(), 1.0),
            ],
            false,
        )
        .unwrap();
        let b = Backbone::new(
            &g,
            "demo",
            Target::Nodes,
            "degree",
            Direction::HigherIsStronger,
            vec![3.0, 2.0, 1.0, 0.5],
            FilterSet::threshold_and_fraction(),
        );
        let sub = FilterSpec::Fraction(0.75).apply(&b).unwrap();
        // a, b, c retained; only a—b is induced, c stays isolated.
        assert_eq!(sub.node_count(), 3);
        assert_eq!(sub.edge_count(), 1);
        assert!(sub.contains_node("c"));
    }
}
