use std::collections::BTreeMap;
use std::fmt::Write as _;
use std::path::Path;
use std::sync::Arc;

use crate::error::{Error, Result};

/// Canonical unordered node pair: the lexicographically smaller label first.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct EdgeKey {
    u: String,
    v: String,
}

impl EdgeKey {
    /// Builds a canonical key; the two labels must differ.
    pub fn new(a: impl Into<String>, b: impl Into<String>) -> EdgeKey {
        let (a, b) = (a.into(), b.into());
        debug_assert_ne!(a, b, "edge keys must join two distinct nodes");
        if a <= b {
            EdgeKey { u: a, v: b }
        } else {
            EdgeKey { u: b, v: a }
        }
    }

    pub fn u(&self) -> &str {
        &self.u
    }

    pub fn v(&self) -> &str {
        &self.v
    }
}

impl std::fmt::Display for EdgeKey {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "{} -- {}", self.u, self.v)
    }
}

#[derive(Debug)]
struct GraphInner {
    /// Sorted node labels; a node's index is its rank in this ordering.
    labels: Vec<String>,
    index: BTreeMap<String, usize>,
    /// Edges sorted by (a, b) index pairs with a < b; index order equals
    /// lexicographic label order, so this is the canonical edge order.
    edges: Vec<(u32, u32, f64)>,
    /// Per node: (neighbor index, edge index), sorted by neighbor index.
    adjacency: Vec<Vec<(u32, u32)>>,
    strength: Vec<f64>,
    total_weight: f64,
}

/// Immutable simple undirected graph with strictly positive edge weights.
///
/// Cloning is cheap (shared storage). Node labels are opaque UTF-8 text; all
/// orderings are label-lexicographic so results are reproducible.
#[derive(Debug, Clone)]
pub struct WeightedGraph {
    inner: Arc<GraphInner>,
}

/// Counts of rows the loader had to clean up.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct LoadReport {
    pub self_loops_dropped: usize,
    pub duplicates_merged: usize,
}

/// Edge-list input format.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeListFormat {
    /// `source,target,weight` with a header row.
    Csv,
    /// Whitespace-delimited `source target weight`, no header.
    Txt,
}

/// Ingestion options for [`load_edge_list`].
#[derive(Debug, Clone, Copy, Default)]
pub struct LoadOptions {
    /// When `None` the format is chosen by file extension (`.txt` means
    /// whitespace-delimited; anything else is CSV).
    pub format: Option<EdgeListFormat>,
    /// Sum the weights of repeated node pairs instead of failing.
    pub merge_duplicates: bool,
}

impl WeightedGraph {
    /// Builds a graph from explicit node and edge lists. Nodes mentioned only
    /// in `nodes` stay as isolated nodes; edge endpoints are added
    /// automatically. Self-loops are dropped (counted in the report) and
    /// duplicate pairs either merge by summing or fail, per `merge`.
    pub fn new<I, E>(nodes: I, edges: E, merge: bool) -> Result<(WeightedGraph, LoadReport)>
    where
        I: IntoIterator<Item = String>,
        E: IntoIterator<Item = (String, String, f64)>,
    {
        let mut report = LoadReport::default();
        let mut labels: Vec<String> = nodes.into_iter().collect();
        let mut raw_edges = Vec::new();
        for (a, b, w) in edges {
            if !(w.is_finite() && w > 0.0) {
                return Err(Error::NonPositiveWeight { line: 0, value: w });
            }
            if a == b {
                report.self_loops_dropped += 1;
                continue;
            }
            labels.push(a.clone());
            labels.push(b.clone());
            raw_edges.push((a, b, w));
        }
        labels.sort();
        labels.dedup();
        let index: BTreeMap<String, usize> =
            labels.iter().enumerate().map(|(i, l)| (l.clone(), i)).collect();

        let mut weight_of: BTreeMap<(u32, u32), f64> = BTreeMap::new();
        for (a, b, w) in raw_edges {
            let (i, j) = (index[&a] as u32, index[&b] as u32);
            let key = if i < j { (i, j) } else { (j, i) };
            match weight_of.entry(key) {
                std::collections::btree_map::Entry::Vacant(e) => {
                    e.insert(w);
                }
                std::collections::btree_map::Entry::Occupied(mut e) => {
                    if !merge {
                        return Err(Error::DuplicateEdge { u: a, v: b });
                    }
                    *e.get_mut() += w;
                    report.duplicates_merged += 1;
                }
            }
        }

        let edges: Vec<(u32, u32, f64)> =
            weight_of.into_iter().map(|((i, j), w)| (i, j, w)).collect();
        let mut adjacency = vec![Vec::new(); labels.len()];
        let mut strength = vec![0.0; labels.len()];
        let mut total_weight = 0.0;
        for (e, &(i, j, w)) in edges.iter().enumerate() {
            adjacency[i as usize].push((j, e as u32));
            adjacency[j as usize].push((i, e as u32));
            strength[i as usize] += w;
            strength[j as usize] += w;
            total_weight += w;
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }

        Ok((
            WeightedGraph {
                inner: Arc::new(GraphInner {
                    labels,
                    index,
                    edges,
                    adjacency,
                    strength,
                    total_weight,
                }),
            },
            report,
        ))
    }

    /// Builds a graph from edges alone (every node has at least one edge).
    pub fn from_edges<E>(edges: E, merge: bool) -> Result<(WeightedGraph, LoadReport)>
    where
        E: IntoIterator<Item = (String, String, f64)>,
    {
        WeightedGraph::new(std::iter::empty(), edges, merge)
    }

    pub fn node_count(&self) -> usize {
        self.inner.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.inner.edges.len()
    }

    pub fn node_labels(&self) -> impl Iterator<Item = &str> {
        self.inner.labels.iter().map(|s| s.as_str())
    }

    pub fn contains_node(&self, label: &str) -> bool {
        self.inner.index.contains_key(label)
    }

    /// Edges in canonical order as (smaller label, larger label, weight).
    pub fn edges(&self) -> impl Iterator<Item = (&str, &str, f64)> {
        self.inner.edges.iter().map(move |&(i, j, w)| {
            (
                self.inner.labels[i as usize].as_str(),
                self.inner.labels[j as usize].as_str(),
                w,
            )
        })
    }

    pub fn edge_weight(&self, a: &str, b: &str) -> Option<f64> {
        let i = *self.inner.index.get(a)? as u32;
        let j = *self.inner.index.get(b)? as u32;
        let (i, j) = if i < j { (i, j) } else { (j, i) };
        self.inner
            .edges
            .binary_search_by(|&(ei, ej, _)| (ei, ej).cmp(&(i, j)))
            .ok()
            .map(|e| self.inner.edges[e].2)
    }

    pub fn degree(&self, label: &str) -> Result<usize> {
        let i = self.node_index_of(label)?;
        Ok(self.inner.adjacency[i].len())
    }

    pub fn strength(&self, label: &str) -> Result<f64> {
        let i = self.node_index_of(label)?;
        Ok(self.inner.strength[i])
    }

    pub fn total_weight(&self) -> f64 {
        self.inner.total_weight
    }

    pub fn average_degree(&self) -> f64 {
        if self.node_count() == 0 {
            0.0
        } else {
            2.0 * self.edge_count() as f64 / self.node_count() as f64
        }
    }

    /// The shared weight-to-distance transform `d = 1/w` used by every
    /// shortest-path-based method.
    pub fn distance_view(&self) -> BTreeMap<EdgeKey, f64> {
        self.edges()
            .map(|(a, b, w)| (EdgeKey::new(a, b), 1.0 / w))
            .collect()
    }

    fn node_index_of(&self, label: &str) -> Result<usize> {
        self.inner
            .index
            .get(label)
            .copied()
            .ok_or_else(|| Error::UnknownNode { label: label.to_string() })
    }

    // ---- index-based accessors used by the scoring kernels ----

    pub(crate) fn n(&self) -> usize {
        self.inner.labels.len()
    }

    pub(crate) fn m(&self) -> usize {
        self.inner.edges.len()
    }

    pub(crate) fn label(&self, i: usize) -> &str {
        &self.inner.labels[i]
    }

    pub(crate) fn index(&self, label: &str) -> Option<usize> {
        self.inner.index.get(label).copied()
    }

    pub(crate) fn edge(&self, e: usize) -> (usize, usize, f64) {
        let (i, j, w) = self.inner.edges[e];
        (i as usize, j as usize, w)
    }

    /// Per-edge traversal costs `1/w`, indexed like the edge list.
    pub(crate) fn inverse_costs(&self) -> Vec<f64> {
        (0..self.m()).map(|e| 1.0 / self.edge(e).2).collect()
    }

    pub(crate) fn adjacency(&self, i: usize) -> &[(u32, u32)] {
        &self.inner.adjacency[i]
    }

    pub(crate) fn degree_of(&self, i: usize) -> usize {
        self.inner.adjacency[i].len()
    }

    pub(crate) fn strength_of(&self, i: usize) -> f64 {
        self.inner.strength[i]
    }

    pub(crate) fn edge_key(&self, e: usize) -> EdgeKey {
        let (i, j, _) = self.edge(e);
        EdgeKey::new(self.label(i), self.label(j))
    }

    /// Subgraph containing exactly the given edges and their endpoints.
    pub(crate) fn subgraph_from_edges(&self, keep: &[usize]) -> WeightedGraph {
        let edges = keep.iter().map(|&e| {
            let (i, j, w) = self.edge(e);
            (self.label(i).to_string(), self.label(j).to_string(), w)
        });
        let (g, _) = WeightedGraph::from_edges(edges, false)
            .expect("subgraph of a valid graph is valid");
        g
    }

    /// Induced subgraph on the given node indices; retained nodes may end up
    /// isolated.
    pub(crate) fn induced_subgraph(&self, keep: &[usize]) -> WeightedGraph {
        let mut mask = vec![false; self.n()];
        for &i in keep {
            mask[i] = true;
        }
        let nodes = keep.iter().map(|&i| self.label(i).to_string());
        let edges = self.inner.edges.iter().filter_map(|&(i, j, w)| {
            (mask[i as usize] && mask[j as usize]).then(|| {
                (
                    self.label(i as usize).to_string(),
                    self.label(j as usize).to_string(),
                    w,
                )
            })
        });
        let (g, _) = WeightedGraph::new(nodes, edges, false)
            .expect("induced subgraph of a valid graph is valid");
        g
    }

    /// Copy of the graph with every weight rounded to the nearest integer and
    /// floored at 1, for methods whose null models need whole-unit weights.
    pub fn with_rounded_weights(&self) -> WeightedGraph {
        let nodes = self.inner.labels.iter().cloned();
        let edges = (0..self.m()).map(|e| {
            let (i, j, w) = self.edge(e);
            (
                self.label(i).to_string(),
                self.label(j).to_string(),
                w.round().max(1.0),
            )
        });
        let (g, _) = WeightedGraph::new(nodes, edges, false)
            .expect("rounding keeps weights positive and the edge set simple");
        g
    }

    /// True when `other`'s nodes and edges (with equal weights) all exist here.
    pub fn contains_subgraph(&self, other: &WeightedGraph) -> bool {
        other.node_labels().all(|l| self.contains_node(l))
            && other
                .edges()
                .all(|(a, b, w)| self.edge_weight(a, b) == Some(w))
    }

    /// Connected component sizes (by node count), largest first.
    pub fn component_sizes(&self) -> Vec<usize> {
        let n = self.n();
        let mut seen = vec![false; n];
        let mut sizes = Vec::new();
        let mut stack = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            seen[start] = true;
            stack.push(start);
            let mut size = 0;
            while let Some(v) = stack.pop() {
                size += 1;
                for &(u, _) in self.adjacency(v) {
                    if !seen[u as usize] {
                        seen[u as usize] = true;
                        stack.push(u as usize);
                    }
                }
            }
            sizes.push(size);
        }
        sizes.sort_unstable_by(|a, b| b.cmp(a));
        sizes
    }
}

/// Loads an edge list (CSV with `source,target,weight` header, or
/// whitespace-delimited text) into a graph.
pub fn load_edge_list(
    path: impl AsRef<Path>,
    options: LoadOptions,
) -> Result<(WeightedGraph, LoadReport)> {
    let path = path.as_ref();
    let format = options.format.unwrap_or_else(|| {
        match path.extension().and_then(|e| e.to_str()) {
            Some(ext) if ext.eq_ignore_ascii_case("txt") => EdgeListFormat::Txt,
            _ => EdgeListFormat::Csv,
        }
    });
    let io_err = |source| Error::Io { path: path.display().to_string(), source };
    let text = std::fs::read_to_string(path).map_err(io_err)?;
    let rows = match format {
        EdgeListFormat::Csv => parse_csv_rows(&text)?,
        EdgeListFormat::Txt => parse_txt_rows(&text)?,
    };
    let mut edges = Vec::with_capacity(rows.len());
    for (line, a, b, w) in rows {
        let w: f64 = w
            .parse()
            .map_err(|_| Error::MalformedRow { line, msg: format!("bad weight {w:?}") })?;
        if !(w.is_finite() && w > 0.0) {
            return Err(Error::NonPositiveWeight { line, value: w });
        }
        edges.push((a, b, w));
    }
    WeightedGraph::from_edges(edges, options.merge_duplicates)
}

fn parse_csv_rows(text: &str) -> Result<Vec<(usize, String, String, String)>> {
    let mut reader = csv::ReaderBuilder::new()
        .has_headers(true)
        .flexible(true)
        .from_reader(text.as_bytes());
    {
        let headers = reader
            .headers()
            .map_err(|e| Error::MalformedRow { line: 1, msg: e.to_string() })?;
        let got: Vec<String> = headers.iter().map(|h| h.trim().to_ascii_lowercase()).collect();
        if got != ["source", "target", "weight"] {
            return Err(Error::MalformedRow {
                line: 1,
                msg: format!("expected header source,target,weight; found {}", got.join(",")),
            });
        }
    }
    let mut rows = Vec::new();
    for (i, record) in reader.records().enumerate() {
        let line = i + 2; // header is line 1
        let record = record.map_err(|e| Error::MalformedRow { line, msg: e.to_string() })?;
        if record.len() == 1 && record[0].trim().is_empty() {
            continue;
        }
        if record.len() != 3 {
            return Err(Error::MalformedRow {
                line,
                msg: format!("expected 3 fields, found {}", record.len()),
            });
        }
        let (a, b) = (record[0].trim(), record[1].trim());
        if a.is_empty() || b.is_empty() {
            return Err(Error::MalformedRow { line, msg: "empty node label".into() });
        }
        rows.push((line, a.to_string(), b.to_string(), record[2].trim().to_string()));
    }
    Ok(rows)
}

fn parse_txt_rows(text: &str) -> Result<Vec<(usize, String, String, String)>> {
    let mut rows = Vec::new();
    for (i, raw) in text.lines().enumerate() {
        let line = i + 1;
        let trimmed = raw.trim();
        if trimmed.is_empty() || trimmed.starts_with('#') {
            continue;
        }
        let fields: Vec<&str> = trimmed.split_whitespace().collect();
        if fields.len() != 3 {
            return Err(Error::MalformedRow {
                line,
                msg: format!("expected 3 whitespace-separated fields, found {}", fields.len()),
            });
        }
        rows.push((line, fields[0].to_string(), fields[1].to_string(), fields[2].to_string()));
    }
    Ok(rows)
}

/// Writes the graph as a canonical-order CSV edge list; loading it back
/// reproduces the graph exactly (weights are printed in shortest round-trip
/// form).
pub fn save_edge_list(g: &WeightedGraph, path: impl AsRef<Path>) -> Result<()> {
    let path = path.as_ref();
    let mut out = String::from("source,target,weight\n");
    for (a, b, w) in g.edges() {
        writeln!(out, "{a},{b},{w}").expect("writing to string cannot fail");
    }
    std::fs::write(path, out).map_err(|source| Error::Io {
        path: path.display().to_string(),
        source,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    fn triangle() -> WeightedGraph {
        let (g, _) = WeightedGraph::from_edges(
            [
                ("a".to_string(), "b".to_string(), 1.0),
                ("b".to_string(), "c".to_string(), 2.0),
                ("a".to_string(), "c".to_string(), 3.0),
            ],
            false,
        )
        .unwrap();
        g
    }

    #[test]
    fn canonical_edge_key_orders_labels() {
        assert_eq!(EdgeKey::new("b", "a"), EdgeKey::new("a", "b"));
        assert_eq!(EdgeKey::new("b", "a").u(), "a");
    }

    #[test]
    fn degree_strength_and_total_weight() {
        let g = triangle();
        assert_eq!(g.degree("a").unwrap(), 2);
        assert_eq!(g.strength("a").unwrap(), 4.0);
        assert_eq!(g.total_weight(), 6.0);
        let degree_sum: usize = g.node_labels().map(|v| g.degree(v).unwrap()).sum();
        assert_eq!(degree_sum, 2 * g.edge_count());
        let strength_sum: f64 = g.node_labels().map(|v| g.strength(v).unwrap()).sum();
        assert_eq!(strength_sum, 2.0 * g.total_weight());
    }

    #[test]
    fn star_quantities() {
        let (g, _) = WeightedGraph::from_edges(
            [
                ("hub".to_string(), "x".to_string(), 6.0),
                ("hub".to_string(), "y".to_string(), 3.0),
                ("hub".to_string(), "z".to_string(), 1.0),
            ],
            false,
        )
        .unwrap();
        assert_eq!(g.degree("hub").unwrap(), 3);
        assert_eq!(g.strength("hub").unwrap(), 10.0);
    }

    #[test]
    fn self_loops_are_dropped_with_count() {
        let (g, report) = WeightedGraph::from_edges(
            [
                ("a".to_string(), "a".to_string(), 3.0),
                ("a".to_string(), "b".to_string(), 1.0),
            ],
            false,
        )
        .unwrap();
        assert_eq!(report.self_loops_dropped, 1);
        assert_eq!(g.edge_count(), 1);
    }

    #[test]
    fn duplicate_edges_error_without_merge() {
        let result = WeightedGraph::from_edges(
            [
                ("a".to_string(), "b".to_string(), 1.0),
                ("b".to_string(), "a".to_string(), 2.0),
            ],
            false,
        );
        assert!(matches!(result, Err(Error::DuplicateEdge { .. })));
    }

    #[test]
    fn duplicate_edges_merge_by_sum() {
        let (g, report) = WeightedGraph::from_edges(
            [
                ("a".to_string(), "b".to_string(), 1.0),
                ("b".to_string(), "a".to_string(), 2.0),
            ],
            true,
        )
        .unwrap();
        assert_eq!(report.duplicates_merged, 1);
        assert_eq!(g.edge_weight("a", "b"), Some(3.0));
    }

    #[test]
    fn distance_view_is_reciprocal_and_order_reversing() {
        let g = triangle();
        let d = g.distance_view();
        assert_eq!(d[&EdgeKey::new("a", "b")], 1.0);
        assert_eq!(d[&EdgeKey::new("b", "c")], 0.5);
        assert_eq!(d[&EdgeKey::new("a", "c")], 1.0 / 3.0);
        let mut pairs: Vec<(f64, f64)> = g
            .edges()
            .map(|(a, b, w)| (w, d[&EdgeKey::new(a, b)]))
            .collect();
        pairs.sort_by(|x, y| x.0.total_cmp(&y.0));
        assert!(pairs.windows(2).all(|p| p[0].1 > p[1].1));
    }

    #[test]
    fn csv_round_trip_preserves_graph() {
        let g = triangle();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        save_edge_list(&g, &path).unwrap();
        let (back, _) = load_edge_list(&path, LoadOptions::default()).unwrap();
        assert_eq!(
            g.edges().collect::<Vec<_>>(),
            back.edges().collect::<Vec<_>>()
        );
        let (again, _) = load_edge_list(&path, LoadOptions::default()).unwrap();
        save_edge_list(&again, dir.path().join("g2.csv")).unwrap();
        assert_eq!(
            std::fs::read(dir.path().join("g.csv")).unwrap(),
            std::fs::read(dir.path().join("g2.csv")).unwrap()
        );
    }

    #[test]
    fn round_trip_preserves_awkward_weights() {
        let (g, _) = WeightedGraph::from_edges(
            [
                ("a".to_string(), "b".to_string(), 0.1),
                ("b".to_string(), "c".to_string(), 1.0 / 3.0),
                ("c".to_string(), "d".to_string(), 1e-7),
            ],
            false,
        )
        .unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        save_edge_list(&g, &path).unwrap();
        let (back, _) = load_edge_list(&path, LoadOptions::default()).unwrap();
        for (a, b, w) in g.edges() {
            assert_eq!(back.edge_weight(a, b), Some(w));
        }
    }

    #[test]
    fn empty_graph_saves_header_only() {
        let (g, _) = WeightedGraph::from_edges(std::iter::empty(), false).unwrap();
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("empty.csv");
        save_edge_list(&g, &path).unwrap();
        assert_eq!(std::fs::read_to_string(&path).unwrap(), "source,target,weight\n");
    }

    #[test]
    fn txt_format_parses_whitespace_rows() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.txt");
        std::fs::write(&path, "a b 1.5\nb   c\t2\n").unwrap();
        let (g, _) = load_edge_list(&path, LoadOptions::default()).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.edge_weight("b", "c"), Some(2.0));
    }

    #[test]
    fn malformed_rows_report_line_numbers() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        std::fs::write(&path, "source,target,weight\na,b,1\nc,d\n").unwrap();
        match load_edge_list(&path, LoadOptions::default()) {
            Err(Error::MalformedRow { line, .. }) => assert_eq!(line, 3),
            other => panic!("expected malformed row, got {other:?}"),
        }
    }

    #[test]
    fn bad_weights_are_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        std::fs::write(&path, "source,target,weight\na,b,-1\n").unwrap();
        assert!(matches!(
            load_edge_list(&path, LoadOptions::default()),
            Err(Error::NonPositiveWeight { line: 2, .. })
        ));
        std::fs::write(&path, "source,target,weight\na,b,zero\n").unwrap();
        assert!(matches!(
            load_edge_list(&path, LoadOptions::default()),
            Err(Error::MalformedRow { line: 2, .. })
        ));
    }

    #[test]
    fn wrong_header_is_rejected() {
        let dir = tempfile::tempdir().unwrap();
        let path = dir.path().join("g.csv");
        std::fs::write(&path, "from,to,w\na,b,1\n").unwrap();
        assert!(matches!(
            load_edge_list(&path, LoadOptions::default()),
            Err(Error::MalformedRow { line: 1, .. })
        ));
    }

    #[test]
    fn component_sizes_partition_nodes() {
        let (g, _) = WeightedGraph::from_edges(
            [
                ("a".to_string(), "b".to_string(), 1.0),
                ("c".to_string(), "d".to_string(), 1.0),
                ("d".to_string(), "e".to_string(), 1.0),
            ],
            false,
        )
        .unwrap();
        assert_eq!(g.component_sizes(), vec![3, 2]);
    }

    #[test]
    fn induced_subgraph_keeps_isolated_nodes() {
        let g = triangle();
        let sub = g.induced_subgraph(&[0]);
        assert_eq!(sub.node_count(), 1);
        assert_eq!(sub.edge_count(), 0);
    }
}
