use std::collections::BTreeMap;

use crate::error::{Error, Result};
use crate::graph::{EdgeKey, WeightedGraph};

/// What a backbone's values are attached to.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Target {
    Edges,
    Nodes,
}

/// Whether smaller or larger values mean "keep this item".
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Direction {
    /// p-values: smaller is more significant.
    LowerIsStronger,
    /// scores: larger is stronger.
    HigherIsStronger,
}

/// The three filter kinds a backbone may support.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum FilterKind {
    Boolean,
    Threshold,
    Fraction,
}

impl std::fmt::Display for FilterKind {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(match self {
            FilterKind::Boolean => "boolean",
            FilterKind::Threshold => "threshold",
            FilterKind::Fraction => "fraction",
        })
    }
}

/// Which filters a method's backbones accept.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct FilterSet {
    pub boolean: bool,
    pub fraction: bool,
    pub threshold: bool,
}

impl FilterSet {
    pub const fn boolean_only() -> FilterSet {
        FilterSet { boolean: true, fraction: false, threshold: false }
    }

    pub const fn threshold_and_fraction() -> FilterSet {
        FilterSet { boolean: false, fraction: true, threshold: true }
    }

    pub const fn all() -> FilterSet {
        FilterSet { boolean: true, fraction: true, threshold: true }
    }

    pub fn supports(&self, kind: FilterKind) -> bool {
        match kind {
            FilterKind::Boolean => self.boolean,
            FilterKind::Threshold => self.threshold,
            FilterKind::Fraction => self.fraction,
        }
    }
}

/// A scored view over a graph: one value per edge (or node), plus metadata
/// describing the method, the significance direction, and which filters may
/// be applied. Filtering a backbone yields a concrete subgraph.
#[derive(Debug, Clone)]
pub struct Backbone {
    source: WeightedGraph,
    method_name: String,
    target: Target,
    value_name: String,
    direction: Direction,
    /// Indexed by the source graph's canonical edge order (or sorted node
    /// order for node targets). Booleans are encoded as exactly 1.0 / 0.0.
    values: Vec<f64>,
    compatible_filters: FilterSet,
    /// Substructure methods whose values are scores (not 0/1) carry their
    /// boolean view separately, e.g. the doubly-stochastic connectivity
    /// prefix or the salience cutoff.
    boolean_marks: Option<Vec<bool>>,
}

impl Backbone {
    pub(crate) fn new(
        source: &WeightedGraph,
        method_name: impl Into<String>,
        target: Target,
        value_name: impl Into<String>,
        direction: Direction,
        values: Vec<f64>,
        compatible_filters: FilterSet,
    ) -> Backbone {
        let expected = match target {
            Target::Edges => source.edge_count(),
            Target::Nodes => source.node_count(),
        };
        debug_assert_eq!(values.len(), expected, "one value per targeted item");
        Backbone {
            source: source.clone(),
            method_name: method_name.into(),
            target,
            value_name: value_name.into(),
            direction,
            values,
            compatible_filters,
            boolean_marks: None,
        }
    }

    pub(crate) fn with_boolean_marks(mut self, marks: Vec<bool>) -> Backbone {
        debug_assert_eq!(marks.len(), self.values.len());
        self.boolean_marks = Some(marks);
        self
    }

    /// Builds an edge-scored backbone from a complete per-edge value map.
    /// This is the entry point for user-defined scoring methods; the map must
    /// cover every edge of `source` exactly once.
    pub fn from_edge_scores(
        source: &WeightedGraph,
        method_name: impl Into<String>,
        value_name: impl Into<String>,
        direction: Direction,
        values: &BTreeMap<EdgeKey, f64>,
        compatible_filters: FilterSet,
    ) -> Result<Backbone> {
        let method_name = method_name.into();
        let mut ordered = Vec::with_capacity(source.edge_count());
        for e in 0..source.m() {
            let key = source.edge_key(e);
            match values.get(&key) {
                Some(&v) => ordered.push(v),
                None => {
                    return Err(Error::InvalidBackbone {
                        name: method_name,
                        msg: format!("no value for edge {key}"),
                    })
                }
            }
        }
        if values.len() != source.edge_count() {
            let known: std::collections::BTreeSet<EdgeKey> =
                (0..source.m()).map(|e| source.edge_key(e)).collect();
            let foreign = values.keys().find(|k| !known.contains(k));
            return Err(Error::InvalidBackbone {
                name: method_name,
                msg: match foreign {
                    Some(k) => format!("value for non-existent edge {k}"),
                    None => "duplicate edge values".to_string(),
                },
            });
        }
        let backbone = Backbone {
            source: source.clone(),
            method_name,
            target: Target::Edges,
            value_name: value_name.into(),
            direction,
            values: ordered,
            compatible_filters,
            boolean_marks: None,
        };
        backbone.validate()?;
        Ok(backbone)
    }

    /// Builds a node-scored backbone from a complete per-label value map.
    pub fn from_node_scores(
        source: &WeightedGraph,
        method_name: impl Into<String>,
        value_name: impl Into<String>,
        direction: Direction,
        values: &BTreeMap<String, f64>,
        compatible_filters: FilterSet,
    ) -> Result<Backbone> {
        let method_name = method_name.into();
        let mut ordered = Vec::with_capacity(source.node_count());
        for i in 0..source.n() {
            let label = source.label(i);
            match values.get(label) {
                Some(&v) => ordered.push(v),
                None => {
                    return Err(Error::InvalidBackbone {
                        name: method_name,
                        msg: format!("no value for node {label}"),
                    })
                }
            }
        }
        if values.len() != source.node_count() {
            let foreign = values.keys().find(|l| !source.contains_node(l));
            return Err(Error::InvalidBackbone {
                name: method_name,
                msg: match foreign {
                    Some(l) => format!("value for non-existent node {l}"),
                    None => "duplicate node values".to_string(),
                },
            });
        }
        let backbone = Backbone {
            source: source.clone(),
            method_name,
            target: Target::Nodes,
            value_name: value_name.into(),
            direction,
            values: ordered,
            compatible_filters,
            boolean_marks: None,
        };
        backbone.validate()?;
        Ok(backbone)
    }

    pub fn source(&self) -> &WeightedGraph {
        &self.source
    }

    pub fn method_name(&self) -> &str {
        &self.method_name
    }

    pub fn target(&self) -> Target {
        self.target
    }

    pub fn value_name(&self) -> &str {
        &self.value_name
    }

    pub fn direction(&self) -> Direction {
        self.direction
    }

    pub fn compatible_filters(&self) -> FilterSet {
        self.compatible_filters
    }

    pub(crate) fn raw_values(&self) -> &[f64] {
        &self.values
    }

    pub(crate) fn raw_boolean_marks(&self) -> Option<&[bool]> {
        self.boolean_marks.as_deref()
    }

    /// Per-edge values keyed canonically; empty map for node targets.
    pub fn edge_values(&self) -> BTreeMap<EdgeKey, f64> {
        match self.target {
            Target::Nodes => BTreeMap::new(),
            Target::Edges => (0..self.source.m())
                .map(|e| (self.source.edge_key(e), self.values[e]))
                .collect(),
        }
    }

    /// Per-node values keyed by label; empty map for edge targets.
    pub fn node_values(&self) -> BTreeMap<String, f64> {
        match self.target {
            Target::Edges => BTreeMap::new(),
            Target::Nodes => (0..self.source.n())
                .map(|i| (self.source.label(i).to_string(), self.values[i]))
                .collect(),
        }
    }

    pub fn value_for_edge(&self, key: &EdgeKey) -> Option<f64> {
        if self.target != Target::Edges {
            return None;
        }
        let i = self.source.index(key.u())? as u32;
        let j = self.source.index(key.v())? as u32;
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        (0..self.source.m())
            .find(|&e| {
                let (a, b, _) = self.source.edge(e);
                (a as u32, b as u32) == (i, j)
            })
            .map(|e| self.values[e])
    }

    pub fn value_for_node(&self, label: &str) -> Option<f64> {
        if self.target != Target::Nodes {
            return None;
        }
        self.source.index(label).map(|i| self.values[i])
    }

    /// Checks the structural invariants: complete finite coverage, p-values
    /// in [0,1], and exact 0/1 encoding for boolean-only backbones.
    pub fn validate(&self) -> Result<()> {
        let expected = match self.target {
            Target::Edges => self.source.edge_count(),
            Target::Nodes => self.source.node_count(),
        };
        let fail = |msg: String| Error::InvalidBackbone {
            name: self.method_name.clone(),
            msg,
        };
        if self.values.len() != expected {
            return Err(fail(format!(
                "expected {expected} values, found {}",
                self.values.len()
            )));
        }
        if let Some(bad) = self.values.iter().find(|v| !v.is_finite()) {
            return Err(fail(format!("non-finite value {bad}")));
        }
        if self.direction == Direction::LowerIsStronger {
            if let Some(bad) = self.values.iter().find(|&&v| !(0.0..=1.0).contains(&v)) {
                return Err(fail(format!("p-value {bad} outside [0,1]")));
            }
        }
        let boolean_only = self.compatible_filters.boolean
            && !self.compatible_filters.threshold
            && !self.compatible_filters.fraction;
        if boolean_only && self.boolean_marks.is_none() {
            if let Some(bad) = self.values.iter().find(|&&v| v != 0.0 && v != 1.0) {
                return Err(fail(format!("boolean backbone value {bad} is not 0.0/1.0")));
            }
        }
        Ok(())
    }
}
