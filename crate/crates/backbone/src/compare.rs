//! Side-by-side evaluation of scored backbones: measure tables, measure
//! progressions over a filter sweep, distribution distance to the original
//! graph, and the consensus (intersection) of several extracted subgraphs.
//!
//! All functions are deterministic: rows follow the registry's registration
//! order, columns follow the request order.

use indexmap::IndexMap;
use serde::Serialize;

use crate::backbone::{Backbone, FilterKind};
use crate::error::{Error, Result};
use crate::filters::FilterSpec;
use crate::graph::{EdgeKey, WeightedGraph};
use crate::metrics;
use crate::registry::Registry;

/// One labeled row of measure values.
#[derive(Debug, Clone, Serialize)]
pub struct ReportRow {
    pub label: String,
    pub values: IndexMap<String, f64>,
}

/// Measure table: the original network first, then one row per backbone.
#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    /// Requested measure names, in request order (the column order).
    pub measures: Vec<String>,
    pub rows: Vec<ReportRow>,
}

/// One measure evaluated per method across a sweep of filter parameters.
#[derive(Debug, Clone, Serialize)]
pub struct ProgressionSeries {
    pub measure: String,
    /// Sweep interpretation: significance/score cut or retained fraction.
    pub filter: String,
    /// Strictly increasing filter parameter values.
    pub sweep: Vec<f64>,
    /// Per method: values aligned with `sweep`.
    pub series: Vec<ProgressionRow>,
}

/// One method's progression values.
#[derive(Debug, Clone, Serialize)]
pub struct ProgressionRow {
    pub label: String,
    pub values: Vec<f64>,
}

/// Which sample a distribution comparison draws from each graph.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Distribution {
    Weights,
    Degrees,
}

impl Distribution {
    pub fn sample(&self, g: &WeightedGraph) -> Vec<f64> {
        match self {
            Distribution::Weights => metrics::weight_sample(g),
            Distribution::Degrees => metrics::degree_sample(g),
        }
    }

    /// What one sampled value is.
    pub fn item_name(&self) -> &'static str {
        match self {
            Distribution::Weights => "weight",
            Distribution::Degrees => "degree",
        }
    }
}

impl std::fmt::Display for Distribution {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            Distribution::Weights => "weights",
            Distribution::Degrees => "degrees",
        })
    }
}

/// Greatest CDF distance to the original network, per method. Methods whose
/// filtered backbone has no sample report an error instead of a value.
#[derive(Debug, Clone, Serialize)]
pub struct DistributionComparison {
    pub distribution: String,
    pub values: IndexMap<String, f64>,
    pub errors: IndexMap<String, String>,
}

/// Resolves requested measure names (request order, duplicates rejected).
fn resolve_measures<'r, S: AsRef<str>>(
    registry: &'r Registry,
    measures: &[S],
) -> Result<Vec<(String, &'r crate::registry::MeasureFn)>> {
    let mut resolved = Vec::with_capacity(measures.len());
    for name in measures {
        let name = name.as_ref();
        if resolved.iter().any(|(n, _)| n == name) {
            return Err(Error::arg(format!("measure {name} requested twice")));
        }
        resolved.push((name.to_string(), registry.measure_fn(name)?));
    }
    Ok(resolved)
}

/// Stable registration-order view of the backbones (methods the registry
/// does not know keep their input order, after the known ones).
fn registry_ordered<'b>(registry: &Registry, backbones: &'b [Backbone]) -> Vec<&'b Backbone> {
    let mut ordered: Vec<&Backbone> = backbones.iter().collect();
    ordered.sort_by_key(|b| {
        registry.method_position(b.method_name()).unwrap_or(usize::MAX)
    });
    ordered
}

fn check_compatibility(backbones: &[Backbone], filter: &FilterSpec) -> Result<()> {
    for b in backbones {
        if !b.compatible_filters().supports(filter.kind()) {
            return Err(Error::IncompatibleFilter {
                method: b.method_name().to_string(),
                filter: filter.kind().to_string(),
            });
        }
    }
    Ok(())
}

/// Evaluates the requested measures on the original network and on every
/// backbone after applying `filter`.
pub fn properties<S: AsRef<str>>(
    g: &WeightedGraph,
    backbones: &[Backbone],
    measures: &[S],
    filter: &FilterSpec,
    registry: &Registry,
) -> Result<ComparisonReport> {
    let resolved = resolve_measures(registry, measures)?;
    check_compatibility(backbones, filter)?;

    let evaluate = |backbone_graph: &WeightedGraph| -> IndexMap<String, f64> {
        resolved
            .iter()
            .map(|(name, f)| (name.clone(), f.as_ref()(g, backbone_graph)))
            .collect()
    };

    let mut rows = vec![ReportRow { label: "original".to_string(), values: evaluate(g) }];
    for backbone in registry_ordered(registry, backbones) {
        let filtered = filter.apply(backbone)?;
        rows.push(ReportRow {
            label: backbone.method_name().to_string(),
            values: evaluate(&filtered),
        });
    }
    Ok(ComparisonReport {
        measures: resolved.into_iter().map(|(n, _)| n).collect(),
        rows,
    })
}

fn validate_sweep(kind: FilterKind, sweep: &[f64]) -> Result<()> {
    if sweep.is_empty() {
        return Err(Error::arg("sweep must contain at least one value"));
    }
    for window in sweep.windows(2) {
        if !(window[0] < window[1]) {
            return Err(Error::arg(format!(
                "sweep values must be strictly increasing; {} does not follow {}",
                window[1], window[0]
            )));
        }
    }
    for &v in sweep {
        match kind {
            FilterKind::Threshold if !v.is_finite() => {
                return Err(Error::arg(format!("threshold sweep value {v} is not finite")));
            }
            FilterKind::Fraction if !(v > 0.0 && v <= 1.0) => {
                return Err(Error::arg(format!(
                    "fraction sweep value {v} lies outside (0, 1]"
                )));
            }
            _ => {}
        }
    }
    Ok(())
}

/// Evaluates one measure per method at every point of a threshold or
/// fraction sweep.
pub fn properties_progression(
    g: &WeightedGraph,
    backbones: &[Backbone],
    measure: &str,
    kind: FilterKind,
    sweep: &[f64],
    registry: &Registry,
) -> Result<ProgressionSeries> {
    if kind == FilterKind::Boolean {
        return Err(Error::arg(
            "progression sweeps a numeric filter parameter; use threshold or fraction",
        ));
    }
    validate_sweep(kind, sweep)?;
    let measure_fn = registry.measure_fn(measure)?.as_ref();
    let specs: Vec<FilterSpec> = sweep
        .iter()
        .map(|&v| match kind {
            FilterKind::Threshold => FilterSpec::Threshold(v),
            _ => FilterSpec::Fraction(v),
        })
        .collect();
    for spec in &specs {
        check_compatibility(backbones, spec)?;
    }

    let mut series = Vec::with_capacity(backbones.len());
    for backbone in registry_ordered(registry, backbones) {
        let mut values = Vec::with_capacity(sweep.len());
        for spec in &specs {
            let filtered = spec.apply(backbone)?;
            values.push(measure_fn(g, &filtered));
        }
        series.push(ProgressionRow { label: backbone.method_name().to_string(), values });
    }
    Ok(ProgressionSeries {
        measure: measure.to_string(),
        filter: kind.to_string(),
        sweep: sweep.to_vec(),
        series,
    })
}

/// Compares the weight or degree distribution of every filtered backbone to
/// the original network's, as the greatest distance between the two sample
/// CDFs. Backbones left without any sample report per-method errors.
pub fn distribution_ks_statistic(
    g: &WeightedGraph,
    backbones: &[Backbone],
    distribution: Distribution,
    filter: &FilterSpec,
    registry: &Registry,
) -> Result<DistributionComparison> {
    check_compatibility(backbones, filter)?;
    let original_sample = distribution.sample(g);
    let mut values = IndexMap::new();
    let mut errors = IndexMap::new();
    for backbone in registry_ordered(registry, backbones) {
        let label = backbone.method_name().to_string();
        let filtered = filter.apply(backbone)?;
        match metrics::ks_statistic(&original_sample, &distribution.sample(&filtered)) {
            Ok(d) => {
                values.insert(label, d);
            }
            Err(e) => {
                errors.insert(label, e.to_string());
            }
        }
    }
    Ok(DistributionComparison {
        distribution: distribution.to_string(),
        values,
        errors,
    })
}

/// Intersection of two or more backbones extracted from one original graph:
/// edges kept by every backbone, plus — as isolated nodes — the nodes every
/// backbone kept even where their shared edges did not survive.
pub fn consent(backbones: &[WeightedGraph]) -> Result<WeightedGraph> {
    if backbones.len() < 2 {
        return Err(Error::arg(format!(
            "consensus requires at least two backbones, got {}",
            backbones.len()
        )));
    }
    let first = &backbones[0];
    let mut edges: Vec<(String, String, f64)> = Vec::new();
    for (a, b, w) in first.edges() {
        let mut in_all = true;
        for other in &backbones[1..] {
            match other.edge_weight(a, b) {
                Some(ow) if ow == w => {}
                Some(ow) => {
                    return Err(Error::arg(format!(
                        "backbones disagree on the weight of {}: {w} vs {ow}; \
                         consensus inputs must come from one original graph",
                        EdgeKey::new(a, b)
                    )));
                }
                None => {
                    in_all = false;
                    break;
                }
            }
        }
        if in_all {
            edges.push((a.to_string(), b.to_string(), w));
        }
    }
    let common_nodes: Vec<String> = first
        .node_labels()
        .filter(|l| backbones[1..].iter().all(|b| b.contains_node(l)))
        .map(str::to_string)
        .collect();
    let (graph, _) = WeightedGraph::new(common_nodes, edges, false)?;
    Ok(graph)
}
