//! Deterministic report serialization: versioned JSON documents and plain
//! CSV tables for the comparison flows, plus the per-item score table of a
//! single backbone. Identical inputs always produce byte-identical output.

use indexmap::IndexMap;
use serde::Serialize;

use crate::backbone::{Backbone, Target};
use crate::compare::{ComparisonReport, DistributionComparison, ProgressionSeries};
use crate::graph::WeightedGraph;

/// Version tag embedded in every JSON document.
pub const SCHEMA_VERSION: u32 = 1;

fn to_json<T: Serialize>(doc: &T) -> String {
    let mut text = serde_json::to_string_pretty(doc)
        .expect("report documents contain only finite numbers and strings");
    text.push('\n');
    text
}

/// Quotes a CSV field only when it needs it.
fn csv_field(text: &str) -> String {
    if text.contains([',', '"', '\n', '\r']) {
        format!("\"{}\"", text.replace('"', "\"\""))
    } else {
        text.to_string()
    }
}

#[derive(Serialize)]
struct PropertiesDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    filter: &'a str,
    measures: &'a [String],
    rows: &'a [crate::compare::ReportRow],
    errors: &'a IndexMap<String, String>,
}

/// JSON for a measure table; `filter` describes the applied filter and
/// `errors` carries methods that failed to score.
pub fn properties_json(
    report: &ComparisonReport,
    filter: &str,
    errors: &IndexMap<String, String>,
) -> String {
    to_json(&PropertiesDoc {
        schema_version: SCHEMA_VERSION,
        kind: "properties",
        filter,
        measures: &report.measures,
        rows: &report.rows,
        errors,
    })
}

/// CSV for a measure table: `label,<measure...>`, one row per network.
pub fn properties_csv(report: &ComparisonReport) -> String {
    let mut out = String::from("label");
    for measure in &report.measures {
        out.push(',');
        out.push_str(&csv_field(measure));
    }
    out.push('\n');
    for row in &report.rows {
        out.push_str(&csv_field(&row.label));
        for measure in &report.measures {
            out.push(',');
            out.push_str(&row.values[measure.as_str()].to_string());
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct ProgressionDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    measure: &'a str,
    filter: &'a str,
    sweep: &'a [f64],
    series: &'a [crate::compare::ProgressionRow],
    errors: &'a IndexMap<String, String>,
}

/// JSON for a measure progression over a filter sweep.
pub fn progression_json(series: &ProgressionSeries, errors: &IndexMap<String, String>) -> String {
    to_json(&ProgressionDoc {
        schema_version: SCHEMA_VERSION,
        kind: "progression",
        measure: &series.measure,
        filter: &series.filter,
        sweep: &series.sweep,
        series: &series.series,
        errors,
    })
}

/// CSV for a progression: `method,<sweep value...>`, one row per method.
pub fn progression_csv(series: &ProgressionSeries) -> String {
    let mut out = String::from("method");
    for v in &series.sweep {
        out.push(',');
        out.push_str(&v.to_string());
    }
    out.push('\n');
    for row in &series.series {
        out.push_str(&csv_field(&row.label));
        for v in &row.values {
            out.push(',');
            out.push_str(&v.to_string());
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct DistributionDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    filter: &'a str,
    results: &'a [DistributionComparison],
    errors: &'a IndexMap<String, String>,
}

/// JSON for distribution comparisons (one entry per requested distribution);
/// `errors` carries methods that failed to score, while sample-less methods
/// are reported inside each distribution's own error map.
pub fn distribution_json(
    results: &[DistributionComparison],
    filter: &str,
    errors: &IndexMap<String, String>,
) -> String {
    to_json(&DistributionDoc {
        schema_version: SCHEMA_VERSION,
        kind: "distribution",
        filter,
        results,
        errors,
    })
}

/// CSV for distribution comparisons: `method,<distribution...>`; methods
/// without a statistic leave the cell empty.
pub fn distribution_csv(results: &[DistributionComparison]) -> String {
    let mut out = String::from("method");
    let mut methods: Vec<&str> = Vec::new();
    for result in results {
        out.push(',');
        out.push_str(&csv_field(&result.distribution));
        for name in result.values.keys().chain(result.errors.keys()) {
            if !methods.contains(&name.as_str()) {
                methods.push(name);
            }
        }
    }
    out.push('\n');
    for method in methods {
        out.push_str(&csv_field(method));
        for result in results {
            out.push(',');
            if let Some(d) = result.values.get(method) {
                out.push_str(&d.to_string());
            }
        }
        out.push('\n');
    }
    out
}

#[derive(Serialize)]
struct GraphSizeDoc<'a> {
    label: &'a str,
    nodes: usize,
    edges: usize,
}

#[derive(Serialize)]
struct ConsensusDoc<'a> {
    schema_version: u32,
    kind: &'static str,
    inputs: Vec<GraphSizeDoc<'a>>,
    consensus: GraphSizeDoc<'a>,
}

/// JSON for a consensus run: the size of every input backbone and of their
/// intersection.
pub fn consensus_json(inputs: &[(String, &WeightedGraph)], result: &WeightedGraph) -> String {
    to_json(&ConsensusDoc {
        schema_version: SCHEMA_VERSION,
        kind: "consensus",
        inputs: inputs
            .iter()
            .map(|(label, g)| GraphSizeDoc {
                label,
                nodes: g.node_count(),
                edges: g.edge_count(),
            })
            .collect(),
        consensus: GraphSizeDoc {
            label: "consensus",
            nodes: result.node_count(),
            edges: result.edge_count(),
        },
    })
}

/// CSV for a consensus run: `label,nodes,edges` with the consensus row last.
pub fn consensus_csv(inputs: &[(String, &WeightedGraph)], result: &WeightedGraph) -> String {
    let mut out = String::from("label,nodes,edges\n");
    for (label, g) in inputs {
        out.push_str(&format!(
            "{},{},{}\n",
            csv_field(label),
            g.node_count(),
            g.edge_count()
        ));
    }
    out.push_str(&format!(
        "consensus,{},{}\n",
        result.node_count(),
        result.edge_count()
    ));
    out
}

/// Full per-item score table of a backbone:
/// `source,target,weight,<value_name>` for edge values,
/// `node,<value_name>` for node values.
pub fn scores_csv(backbone: &Backbone) -> String {
    let value_name = csv_field(backbone.value_name());
    match backbone.target() {
        Target::Edges => {
            let mut out = format!("source,target,weight,{value_name}\n");
            let values = backbone.edge_values();
            for (a, b, w) in backbone.source().edges() {
                let key = crate::graph::EdgeKey::new(a, b);
                out.push_str(&format!(
                    "{},{},{},{}\n",
                    csv_field(a),
                    csv_field(b),
                    w,
                    values[&key]
                ));
            }
            out
        }
        Target::Nodes => {
            let mut out = format!("node,{value_name}\n");
            for (label, value) in backbone.node_values() {
                out.push_str(&format!("{},{}\n", csv_field(&label), value));
            }
            out
        }
    }
}
