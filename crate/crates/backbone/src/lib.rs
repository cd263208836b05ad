//! Backbone extraction for simple undirected weighted networks.
//!
//! A backbone is a subgraph that keeps the structurally important part of a
//! network while discarding the rest. This crate implements twenty published
//! extraction methods — six statistical (edge significance against a null
//! model), thirteen structural (global or local topological rules), and one
//! hybrid — behind a uniform pipeline:
//!
//! 1. **Score** a network with a method ([`registry::Registry::run`] or the
//!    per-method functions in [`methods`]); the result is a [`Backbone`]
//!    holding a score per edge or per node.
//! 2. **Filter** the scores into a subgraph ([`filters::FilterSpec`]):
//!    boolean, threshold, or fraction, as supported by the method.
//! 3. **Compare** backbones: measure tables ([`compare::properties`]),
//!    measure progressions over a filter sweep
//!    ([`compare::properties_progression`]), Kolmogorov–Smirnov distances of
//!    weight and degree distributions
//!    ([`compare::distribution_ks_statistic`]), and the consensus of several
//!    backbones ([`compare::consent`]).
//! 4. **Report** as JSON or CSV ([`report`]) and draw SVG charts
//!    ([`chart`]).
//!
//! ```
//! use backbone::{FilterSpec, Registry, MethodParams};
//!
//! let (graph, _) = backbone::WeightedGraph::from_edges(
//!     [("a", "b", 3.0), ("b", "c", 1.0), ("a", "c", 2.0)],
//!     false,
//! )?;
//! let registry = Registry::standard();
//! let scored = registry.run("disparity", &graph, &MethodParams::default())?;
//! let backbone = FilterSpec::Threshold(0.5).apply(&scored)?;
//! assert!(backbone.edge_count() <= graph.edge_count());
//! # Ok::<(), backbone::Error>(())
//! ```
//!
//! Everything is deterministic: equal inputs produce byte-identical reports
//! and charts. The one stochastic method (community detection inside the
//! modularity vitality scorer) takes an explicit seed.

pub mod backbone;
pub mod chart;
pub mod compare;
pub mod error;
pub mod filters;
pub mod graph;
pub mod methods;
pub mod metrics;
pub mod planarity;
pub mod registry;
pub mod report;
pub(crate) mod shortest;

pub use crate::backbone::{Backbone, Direction, FilterKind, FilterSet, Target};
pub use crate::compare::{
    consent, distribution_ks_statistic, properties, properties_progression, ComparisonReport,
    Distribution, DistributionComparison, ProgressionRow, ProgressionSeries, ReportRow,
};
pub use crate::error::{Error, Result};
pub use crate::filters::{boolean_filter, fraction_filter, threshold_filter, FilterSpec};
pub use crate::graph::{
    load_edge_list, save_edge_list, EdgeKey, EdgeListFormat, LoadOptions, LoadReport,
    WeightedGraph,
};
pub use crate::methods::{
    binomial_survival, degree_scores, disparity, doubly_stochastic, ecm, ecm_fit, ecm_fit_with,
    ecm_with, glab, global_sparsification, global_threshold, h_backbone, high_salience_skeleton,
    lans, marginal_likelihood, maximum_spanning_tree, metric_backbone, mla, modularity_vitality,
    noise_corrected, pmfg, primary_linkage, ultrametric_backbone, EcmFit, EcmOptions, NullModel,
};
pub use crate::registry::{
    MeasureFn, MethodInfo, MethodKind, MethodParams, ParamSpec, Registry, Scope, ScoreFn,
};
