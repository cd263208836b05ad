//! Named catalog of scoring methods and evaluation measures.
//!
//! The standard registry wires every built-in method to its published
//! characteristics — category, value target, scope, weighted/unweighted
//! applicability, filter compatibility, and parameters — and is the single
//! lookup point the comparison framework and the CLI drive. User code can
//! register additional methods and measures; names must stay unique.

use std::collections::BTreeMap;
use std::fmt;
use std::sync::Arc;

use indexmap::IndexMap;

use crate::backbone::{Backbone, FilterSet, Target};
use crate::error::{Error, Result};
use crate::graph::WeightedGraph;
use crate::methods::{self, EcmOptions, NullModel};
use crate::metrics;

/// Method category: null-model p-values, topology scores/substructures, or
/// a topological score put under a statistical test.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MethodKind {
    Statistical,
    Structural,
    Hybrid,
}

impl fmt::Display for MethodKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            MethodKind::Statistical => "statistical",
            MethodKind::Structural => "structural",
            MethodKind::Hybrid => "hybrid",
        })
    }
}

/// Whether an item's score depends on its neighborhood, on the whole graph,
/// or on both.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Scope {
    Local,
    Global,
    LocalAndGlobal,
}

impl fmt::Display for Scope {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Scope::Local => "local",
            Scope::Global => "global",
            Scope::LocalAndGlobal => "local & global",
        })
    }
}

/// A numeric tunable a scoring function accepts through
/// [`MethodParams::values`].
#[derive(Debug, Clone)]
pub struct ParamSpec {
    pub name: String,
    pub summary: String,
    pub default: Option<f64>,
}

impl ParamSpec {
    pub fn new(
        name: impl Into<String>,
        summary: impl Into<String>,
        default: Option<f64>,
    ) -> ParamSpec {
        ParamSpec { name: name.into(), summary: summary.into(), default }
    }
}

/// Everything the registry records about a method besides its code.
#[derive(Debug, Clone)]
pub struct MethodInfo {
    pub name: String,
    pub kind: MethodKind,
    /// Whether values attach to edges or nodes.
    pub target: Target,
    pub scope: Scope,
    /// Meaningful on weighted input (every built-in method is).
    pub weighted: bool,
    /// Also meaningful on unweighted (all-ones) input.
    pub unweighted: bool,
    pub filters: FilterSet,
    /// Name of the per-item value the method produces.
    pub value_name: String,
    /// The method's user-facing parameters as published: significance levels
    /// and score cutoffs are applied at filter time, constants like the
    /// involvement exponent at scoring time.
    pub published_params: Vec<String>,
    /// Solver tunables accepted via [`MethodParams::values`].
    pub tunables: Vec<ParamSpec>,
    /// Consumes [`MethodParams::seed`].
    pub uses_seed: bool,
}

impl MethodInfo {
    /// Minimal metadata for a weighted-only edge method with no parameters.
    pub fn new(
        name: impl Into<String>,
        kind: MethodKind,
        target: Target,
        scope: Scope,
        filters: FilterSet,
        value_name: impl Into<String>,
    ) -> MethodInfo {
        MethodInfo {
            name: name.into(),
            kind,
            target,
            scope,
            weighted: true,
            unweighted: false,
            filters,
            value_name: value_name.into(),
            published_params: Vec::new(),
            tunables: Vec::new(),
            uses_seed: false,
        }
    }

    fn on_unweighted(mut self) -> MethodInfo {
        self.unweighted = true;
        self
    }

    fn published(mut self, params: &[&str]) -> MethodInfo {
        self.published_params = params.iter().map(|p| p.to_string()).collect();
        self
    }

    fn tunable(mut self, spec: ParamSpec) -> MethodInfo {
        self.tunables.push(spec);
        self
    }

    fn seeded(mut self) -> MethodInfo {
        self.uses_seed = true;
        self
    }

    /// Checks that every supplied tunable is known to this method and within
    /// its valid range.
    pub fn validate_params(&self, params: &MethodParams) -> Result<()> {
        for (key, &value) in &params.values {
            if !self.tunables.iter().any(|t| &t.name == key) {
                let msg = if self.published_params.iter().any(|p| p == key) {
                    format!(
                        "parameter {key} of method {} is applied at filter time; \
                         pass it as the threshold or fraction filter value",
                        self.name
                    )
                } else if self.tunables.is_empty() {
                    format!("method {} takes no tunable parameters", self.name)
                } else {
                    format!(
                        "method {} has no parameter {key}; known: {}",
                        self.name,
                        self.tunables
                            .iter()
                            .map(|t| t.name.as_str())
                            .collect::<Vec<_>>()
                            .join(", ")
                    )
                };
                return Err(Error::arg(msg));
            }
            if !value.is_finite() {
                return Err(Error::arg(format!(
                    "parameter {key} must be finite, got {value}"
                )));
            }
            let bad = |msg: &str| {
                Err(Error::arg(format!("parameter {key} must be {msg}, got {value}")))
            };
            match key.as_str() {
                "tol" if value <= 0.0 => return bad("positive"),
                "max_iter" if value < 1.0 || value.fract() != 0.0 => {
                    return bad("a positive whole number")
                }
                "damping" if !(value > 0.0 && value <= 1.0) => {
                    return bad("in (0, 1]")
                }
                "c" if value <= 0.0 => return bad("positive"),
                _ => {}
            }
        }
        Ok(())
    }
}

/// Per-run knobs for a scoring function.
#[derive(Debug, Clone, Default)]
pub struct MethodParams {
    /// Named numeric tunables (`tol`, `max_iter`, `damping`, `c`, ...).
    pub values: BTreeMap<String, f64>,
    /// Shuffle seed for methods with randomized tie-breaking.
    pub seed: Option<u64>,
    /// Round weights to whole numbers (floored at 1) before scoring.
    pub round_weights: bool,
}

impl MethodParams {
    pub fn get(&self, name: &str) -> Option<f64> {
        self.values.get(name).copied()
    }

    pub fn get_or(&self, name: &str, default: f64) -> f64 {
        self.get(name).unwrap_or(default)
    }
}

/// A scoring function: graph in, scored backbone out.
pub type ScoreFn = Arc<dyn Fn(&WeightedGraph, &MethodParams) -> Result<Backbone> + Send + Sync>;

/// An evaluation measure: (original, backbone) in, number out.
pub type MeasureFn = Arc<dyn Fn(&WeightedGraph, &WeightedGraph) -> f64 + Send + Sync>;

struct MethodEntry {
    info: MethodInfo,
    score: ScoreFn,
}

/// Lookup table of methods and measures, in registration order.
pub struct Registry {
    methods: IndexMap<String, MethodEntry>,
    measures: IndexMap<String, MeasureFn>,
}

impl Default for Registry {
    fn default() -> Registry {
        Registry::standard()
    }
}

impl Registry {
    /// An empty registry with no methods or measures.
    pub fn empty() -> Registry {
        Registry { methods: IndexMap::new(), measures: IndexMap::new() }
    }

    /// The registry of all built-in methods and measures.
    pub fn standard() -> Registry {
        use FilterSet as F;
        use MethodKind::{Hybrid, Statistical, Structural};
        use Scope::{Global, Local, LocalAndGlobal};
        use Target::{Edges, Nodes};

        let mut r = Registry::empty();
        let mut add = |info: MethodInfo, score: ScoreFn| {
            r.register_method_arc(info, score).expect("built-in method names are unique");
        };

        add(
            MethodInfo::new(
                "disparity",
                Statistical,
                Edges,
                Local,
                F::threshold_and_fraction(),
                "p_value",
            )
            .published(&["alpha"]),
            Arc::new(|g, _| methods::disparity(g)),
        );
        add(
            MethodInfo::new(
                "noise_corrected",
                Statistical,
                Edges,
                Local,
                F::threshold_and_fraction(),
                "p_value",
            )
            .published(&["alpha"]),
            Arc::new(|g, _| methods::noise_corrected(g)),
        );
        add(
            MethodInfo::new(
                "marginal_likelihood",
                Statistical,
                Edges,
                Local,
                F::threshold_and_fraction(),
                "p_value",
            )
            .published(&["alpha"]),
            Arc::new(|g, _| methods::marginal_likelihood(g)),
        );
        let ecm_defaults = EcmOptions::default();
        add(
            MethodInfo::new(
                "ecm",
                Statistical,
                Edges,
                Local,
                F::threshold_and_fraction(),
                "p_value",
            )
            .published(&["alpha"])
            .tunable(ParamSpec::new(
                "tol",
                "residual below which the strength/degree fit stops",
                Some(ecm_defaults.tol),
            ))
            .tunable(ParamSpec::new(
                "max_iter",
                "iteration cap for the fit",
                Some(ecm_defaults.max_iter as f64),
            ))
            .tunable(ParamSpec::new(
                "damping",
                "fixed-point update damping in (0, 1]",
                Some(ecm_defaults.damping),
            )),
            Arc::new(|g, p: &MethodParams| {
                let defaults = EcmOptions::default();
                let opts = EcmOptions {
                    tol: p.get_or("tol", defaults.tol),
                    max_iter: p.get_or("max_iter", defaults.max_iter as f64) as usize,
                    damping: p.get_or("damping", defaults.damping),
                };
                methods::ecm_with(g, &opts)
            }),
        );
        add(
            MethodInfo::new(
                "lans",
                Statistical,
                Edges,
                Local,
                F::threshold_and_fraction(),
                "p_value",
            )
            .published(&["alpha"]),
            Arc::new(|g, _| methods::lans(g)),
        );
        add(
            MethodInfo::new("mla", Statistical, Edges, Local, F::boolean_only(), "in_backbone"),
            Arc::new(|g, _| methods::mla(g)),
        );

        add(
            MethodInfo::new(
                "global_threshold",
                Structural,
                Edges,
                Global,
                F::threshold_and_fraction(),
                "weight",
            )
            .published(&["threshold"]),
            Arc::new(|g, _| methods::global_threshold(g)),
        );
        add(
            MethodInfo::new(
                "maximum_spanning_tree",
                Structural,
                Edges,
                Global,
                F::boolean_only(),
                "in_backbone",
            ),
            Arc::new(|g, _| methods::maximum_spanning_tree(g)),
        );
        add(
            MethodInfo::new(
                "doubly_stochastic",
                Structural,
                Edges,
                Local,
                F::all(),
                "normalized_weight",
            )
            .published(&["threshold"])
            .tunable(ParamSpec::new(
                "tol",
                "row/column sum residual below which normalization stops",
                Some(1e-8),
            ))
            .tunable(ParamSpec::new(
                "max_iter",
                "iteration cap for the normalization",
                Some(10_000.0),
            )),
            Arc::new(|g, p: &MethodParams| {
                methods::doubly_stochastic(
                    g,
                    p.get_or("tol", 1e-8),
                    p.get_or("max_iter", 10_000.0) as usize,
                )
            }),
        );
        add(
            MethodInfo::new(
                "high_salience_skeleton",
                Structural,
                Edges,
                Global,
                F::all(),
                "salience",
            )
            .published(&["threshold"]),
            Arc::new(|g, _| methods::high_salience_skeleton(g)),
        );
        add(
            MethodInfo::new(
                "h_backbone",
                Structural,
                Edges,
                Global,
                F::boolean_only(),
                "in_backbone",
            ),
            Arc::new(|g, _| methods::h_backbone(g)),
        );
        add(
            MethodInfo::new(
                "metric_backbone",
                Structural,
                Edges,
                Global,
                F::boolean_only(),
                "in_backbone",
            ),
            Arc::new(|g, _| methods::metric_backbone(g)),
        );
        add(
            MethodInfo::new(
                "ultrametric_backbone",
                Structural,
                Edges,
                Global,
                F::boolean_only(),
                "in_backbone",
            ),
            Arc::new(|g, _| methods::ultrametric_backbone(g)),
        );
        add(
            MethodInfo::new(
                "modularity_vitality",
                Structural,
                Nodes,
                Global,
                F::threshold_and_fraction(),
                "vitality",
            )
            .published(&["threshold"])
            .seeded(),
            Arc::new(|g, p: &MethodParams| methods::modularity_vitality(g, p.seed)),
        );
        add(
            MethodInfo::new("pmfg", Structural, Edges, Global, F::boolean_only(), "in_backbone"),
            Arc::new(|g, _| methods::pmfg(g)),
        );
        add(
            MethodInfo::new(
                "primary_linkage",
                Structural,
                Edges,
                Local,
                F::boolean_only(),
                "in_backbone",
            ),
            Arc::new(|g, _| methods::primary_linkage(g)),
        );
        add(
            MethodInfo::new(
                "global_sparsification",
                Structural,
                Edges,
                Local,
                F::threshold_and_fraction(),
                "jaccard_similarity",
            )
            .published(&["threshold"])
            .on_unweighted(),
            Arc::new(|g, _| methods::global_sparsification(g)),
        );
        add(
            MethodInfo::new(
                "edge_betweenness",
                Structural,
                Edges,
                Global,
                F::threshold_and_fraction(),
                "betweenness",
            )
            .published(&["threshold"])
            .on_unweighted(),
            Arc::new(|g, _| methods::betweenness_scores(g)),
        );
        add(
            MethodInfo::new(
                "node_degree",
                Structural,
                Nodes,
                Global,
                F::threshold_and_fraction(),
                "degree",
            )
            .published(&["threshold"])
            .on_unweighted(),
            Arc::new(|g, _| methods::degree_scores(g)),
        );
        add(
            MethodInfo::new(
                "glab",
                Hybrid,
                Edges,
                LocalAndGlobal,
                F::threshold_and_fraction(),
                "p_value",
            )
            .published(&["c", "alpha"])
            .tunable(ParamSpec::new(
                "c",
                "how strongly node degree sharpens the involvement test",
                Some(1.0),
            ))
            .on_unweighted(),
            Arc::new(|g, p: &MethodParams| {
                methods::glab(g, p.get_or("c", 1.0), NullModel::Uniform)
            }),
        );

        r.register_measure("node_fraction", metrics::node_fraction)
            .expect("unique");
        r.register_measure("edge_fraction", metrics::edge_fraction)
            .expect("unique");
        r.register_measure("weight_fraction", metrics::weight_fraction)
            .expect("unique");
        r.register_measure("density", metrics::density).expect("unique");
        r.register_measure("average_degree", metrics::average_degree)
            .expect("unique");
        r.register_measure("reachability", metrics::reachability)
            .expect("unique");
        r
    }

    /// Registers a scoring method. Names must be unique and non-empty.
    pub fn register_method<F>(&mut self, info: MethodInfo, score: F) -> Result<()>
    where
        F: Fn(&WeightedGraph, &MethodParams) -> Result<Backbone> + Send + Sync + 'static,
    {
        self.register_method_arc(info, Arc::new(score))
    }

    /// [`Registry::register_method`] for an already-shared scoring function.
    pub fn register_method_arc(&mut self, info: MethodInfo, score: ScoreFn) -> Result<()> {
        if info.name.is_empty() {
            return Err(Error::arg("method name must not be empty"));
        }
        if self.methods.contains_key(&info.name) {
            return Err(Error::DuplicateName { name: info.name });
        }
        let name = info.name.clone();
        self.methods.insert(name, MethodEntry { info, score });
        Ok(())
    }

    /// Registers an `(original, backbone) -> value` measure.
    pub fn register_measure<F>(&mut self, name: impl Into<String>, measure: F) -> Result<()>
    where
        F: Fn(&WeightedGraph, &WeightedGraph) -> f64 + Send + Sync + 'static,
    {
        let name = name.into();
        if name.is_empty() {
            return Err(Error::arg("measure name must not be empty"));
        }
        if self.measures.contains_key(&name) {
            return Err(Error::DuplicateName { name });
        }
        self.measures.insert(name, Arc::new(measure));
        Ok(())
    }

    pub fn method_names(&self) -> Vec<&str> {
        self.methods.keys().map(String::as_str).collect()
    }

    pub fn measure_names(&self) -> Vec<&str> {
        self.measures.keys().map(String::as_str).collect()
    }

    pub fn contains_method(&self, name: &str) -> bool {
        self.methods.contains_key(name)
    }

    pub fn contains_measure(&self, name: &str) -> bool {
        self.measures.contains_key(name)
    }

    pub fn info(&self, name: &str) -> Option<&MethodInfo> {
        self.methods.get(name).map(|e| &e.info)
    }

    pub fn method_infos(&self) -> impl Iterator<Item = &MethodInfo> {
        self.methods.values().map(|e| &e.info)
    }

    /// Position of a method in registration order.
    pub fn method_position(&self, name: &str) -> Option<usize> {
        self.methods.get_index_of(name)
    }

    pub(crate) fn unknown_method(&self, name: &str) -> Error {
        Error::UnknownMethod {
            name: name.to_string(),
            known: self.method_names().join(", "),
        }
    }

    pub(crate) fn unknown_measure(&self, name: &str) -> Error {
        Error::UnknownMeasure {
            name: name.to_string(),
            known: self.measure_names().join(", "),
        }
    }

    /// Scores `g` with the named method, validating parameters beforehand and
    /// the produced backbone (values, coverage, declared metadata) afterwards.
    pub fn run(&self, name: &str, g: &WeightedGraph, params: &MethodParams) -> Result<Backbone> {
        let entry = self.methods.get(name).ok_or_else(|| self.unknown_method(name))?;
        entry.info.validate_params(params)?;
        let score = entry.score.as_ref();
        let backbone = if params.round_weights {
            score(&g.with_rounded_weights(), params)?
        } else {
            score(g, params)?
        };
        backbone.validate()?;
        let fail = |msg: String| Error::InvalidBackbone { name: name.to_string(), msg };
        if backbone.method_name() != entry.info.name {
            return Err(fail(format!(
                "scoring function labeled its output {:?} instead of {:?}",
                backbone.method_name(),
                entry.info.name
            )));
        }
        if backbone.target() != entry.info.target {
            return Err(fail("backbone target differs from registered metadata".into()));
        }
        if backbone.compatible_filters() != entry.info.filters {
            return Err(fail(
                "backbone filter compatibility differs from registered metadata".into(),
            ));
        }
        Ok(backbone)
    }

    pub fn measure_fn(&self, name: &str) -> Result<&MeasureFn> {
        self.measures.get(name).ok_or_else(|| self.unknown_measure(name))
    }

    /// Evaluates a registered measure.
    pub fn run_measure(
        &self,
        name: &str,
        original: &WeightedGraph,
        backbone: &WeightedGraph,
    ) -> Result<f64> {
        let measure = self.measure_fn(name)?.as_ref();
        Ok(measure(original, backbone))
    }
}
