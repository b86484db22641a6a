//! Edge-labeled hypergraphs and cluster assignments.
//!
//! A hypergraph here is a set of nodes `0..n` together with hyperedges that
//! each carry exactly one color out of a fixed palette. The central derived
//! quantity is the color degree `d[v][c]`: the number of color-`c` edges
//! containing node `v`. Everything downstream (votes, the LP encoding,
//! metrics) is driven by color degrees and edge membership.
//!
//! The text format is line oriented:
//!
//! ```text
//! # comment
//! nodes 3
//! red 0 1
//! blue 1 2
//! ```
//!
//! The `nodes <n>` header is optional; without it, `n` is one past the
//! largest node id mentioned. Color names are registered in order of first
//! appearance.

use std::collections::HashMap;
use std::fmt::Write as _;

use crate::error::{Error, Result};

/// One colored hyperedge. Node lists are kept sorted and duplicate-free.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Hyperedge {
    pub color: usize,
    pub nodes: Vec<usize>,
}

/// A hypergraph whose edges each carry one color from a fixed palette.
#[derive(Debug, Clone, PartialEq)]
pub struct LabeledHypergraph {
    num_nodes: usize,
    colors: Vec<String>,
    edges: Vec<Hyperedge>,
    // n x k, maintained incrementally by add_edge
    color_degree: Vec<Vec<u32>>,
}

impl LabeledHypergraph {
    /// Empty hypergraph over `num_nodes` nodes and the given color palette.
    /// Color names must be non-empty, whitespace-free and distinct.
    pub fn new(num_nodes: usize, colors: Vec<String>) -> Result<Self> {
        let mut seen = HashMap::new();
        for (i, name) in colors.iter().enumerate() {
            if name.is_empty() || name.chars().any(char::is_whitespace) {
                return Err(Error::invalid(format!("bad color name {name:?}")));
            }
            if seen.insert(name.clone(), i).is_some() {
                return Err(Error::invalid(format!("duplicate color name {name:?}")));
            }
        }
        let k = colors.len();
        Ok(LabeledHypergraph {
            num_nodes,
            colors,
            edges: Vec::new(),
            color_degree: vec![vec![0; k]; num_nodes],
        })
    }

    /// Add one edge. Nodes are sorted; duplicates and out-of-range ids are
    /// rejected. Repeated identical edges are allowed (parallel edges).
    pub fn add_edge(&mut self, color: usize, mut nodes: Vec<usize>) -> Result<()> {
        if color >= self.colors.len() {
            return Err(Error::invalid(format!(
                "color index {color} out of range (k = {})",
                self.colors.len()
            )));
        }
        if nodes.is_empty() {
            return Err(Error::invalid("edge with no nodes"));
        }
        nodes.sort_unstable();
        for w in nodes.windows(2) {
            if w[0] == w[1] {
                return Err(Error::invalid(format!("node {} repeated in edge", w[0])));
            }
        }
        if let Some(&max) = nodes.last() {
            if max >= self.num_nodes {
                return Err(Error::invalid(format!(
                    "node id {max} out of range (n = {})",
                    self.num_nodes
                )));
            }
        }
        for &v in &nodes {
            self.color_degree[v][color] += 1;
        }
        self.edges.push(Hyperedge { color, nodes });
        Ok(())
    }

    pub fn num_nodes(&self) -> usize {
        self.num_nodes
    }

    pub fn num_colors(&self) -> usize {
        self.colors.len()
    }

    pub fn num_edges(&self) -> usize {
        self.edges.len()
    }

    pub fn colors(&self) -> &[String] {
        &self.colors
    }

    pub fn color_index(&self, name: &str) -> Option<usize> {
        self.colors.iter().position(|c| c == name)
    }

    pub fn edges(&self) -> &[Hyperedge] {
        &self.edges
    }

    /// Color degrees of `v`, one entry per color.
    pub fn color_degrees(&self, v: usize) -> &[u32] {
        &self.color_degree[v]
    }

    pub fn color_degree(&self, v: usize, c: usize) -> u32 {
        self.color_degree[v][c]
    }

    /// Total degree d(v) over all colors.
    pub fn total_degree(&self, v: usize) -> u32 {
        self.color_degree[v].iter().sum()
    }

    /// Largest total degree over all nodes; 0 for an edgeless graph.
    pub fn max_total_degree(&self) -> u32 {
        (0..self.num_nodes).map(|v| self.total_degree(v)).max().unwrap_or(0)
    }

    /// Size of the largest edge; 0 for an edgeless graph.
    pub fn max_edge_size(&self) -> usize {
        self.edges.iter().map(|e| e.nodes.len()).max().unwrap_or(0)
    }

    /// Parse the line-oriented text format described at module level.
    pub fn parse(text: &str) -> Result<Self> {
        let mut num_nodes: Option<usize> = None;
        let mut colors: Vec<String> = Vec::new();
        let mut color_ids: HashMap<String, usize> = HashMap::new();
        let mut raw_edges: Vec<(usize, Vec<usize>, usize)> = Vec::new(); // (color, nodes, line)
        let mut max_id = 0usize;
        let mut any_node = false;

        for (idx, line) in text.lines().enumerate() {
            let lineno = idx + 1;
            let line = line.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let mut parts = line.split_whitespace();
            let head = parts.next().unwrap();
            if head == "nodes" && num_nodes.is_none() && colors.is_empty() {
                let count = parts
                    .next()
                    .ok_or_else(|| Error::parse(lineno, "missing node count"))?;
                if parts.next().is_some() {
                    return Err(Error::parse(lineno, "trailing tokens after node count"));
                }
                let n: usize = count
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad node count {count:?}")))?;
                num_nodes = Some(n);
                continue;
            }
            let color = *color_ids.entry(head.to_string()).or_insert_with(|| {
                colors.push(head.to_string());
                colors.len() - 1
            });
            let mut nodes = Vec::new();
            for tok in parts {
                let id: usize = tok
                    .parse()
                    .map_err(|_| Error::parse(lineno, format!("bad node id {tok:?}")))?;
                if let Some(n) = num_nodes {
                    if id >= n {
                        return Err(Error::parse(
                            lineno,
                            format!("node id {id} out of range (nodes {n})"),
                        ));
                    }
                }
                max_id = max_id.max(id);
                any_node = true;
                nodes.push(id);
            }
            if nodes.is_empty() {
                return Err(Error::parse(lineno, "edge with no nodes"));
            }
            raw_edges.push((color, nodes, lineno));
        }

        let n = num_nodes.unwrap_or(if any_node { max_id + 1 } else { 0 });
        let mut h = LabeledHypergraph::new(n, colors)?;
        for (color, nodes, lineno) in raw_edges {
            h.add_edge(color, nodes).map_err(|e| match e {
                Error::InvalidInput(msg) => Error::parse(lineno, msg),
                other => other,
            })?;
        }
        Ok(h)
    }

    /// Serialize back to the text format. `parse(to_text(h))` reproduces `h`
    /// when every color is used by some edge (the format has no way to
    /// declare an unused color).
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(out, "nodes {}", self.num_nodes);
        for e in &self.edges {
            let _ = write!(out, "{}", self.colors[e.color]);
            for v in &e.nodes {
                let _ = write!(out, " {v}");
            }
            out.push('\n');
        }
        out
    }
}

/// A total assignment of nodes to colors. Ordering is lexicographic on the
/// assignment vector, which the exhaustive solvers use for tie-breaking.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Clustering {
    assignment: Vec<usize>,
}

impl Clustering {
    /// Validates every entry against the color count.
    pub fn new(assignment: Vec<usize>, num_colors: usize) -> Result<Self> {
        for (v, &c) in assignment.iter().enumerate() {
            if c >= num_colors {
                return Err(Error::invalid(format!(
                    "node {v} assigned color index {c}, but k = {num_colors}"
                )));
            }
        }
        Ok(Clustering { assignment })
    }

    pub(crate) fn from_raw(assignment: Vec<usize>) -> Self {
        Clustering { assignment }
    }

    pub fn color_of(&self, v: usize) -> usize {
        self.assignment[v]
    }

    pub fn num_nodes(&self) -> usize {
        self.assignment.len()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.assignment
    }

    /// Nodes of each color cluster, indexed by color.
    pub fn clusters(&self, num_colors: usize) -> Vec<Vec<usize>> {
        let mut out = vec![Vec::new(); num_colors];
        for (v, &c) in self.assignment.iter().enumerate() {
            out[c].push(v);
        }
        out
    }
}

/// One `<id> <color-name>` line per node, ascending by id. Empty string for
/// an empty clustering.
pub fn write_clustering(c: &Clustering, colors: &[String]) -> String {
    let mut out = String::new();
    for (v, &color) in c.as_slice().iter().enumerate() {
        let _ = writeln!(out, "{v} {}", colors[color]);
    }
    out
}

/// Parse a clustering written by [`write_clustering`] against a hypergraph's
/// node count and palette. Every node must be assigned exactly once.
pub fn parse_clustering(text: &str, h: &LabeledHypergraph) -> Result<Clustering> {
    let mut assignment: Vec<Option<usize>> = vec![None; h.num_nodes()];
    for (idx, line) in text.lines().enumerate() {
        let lineno = idx + 1;
        let line = line.trim();
        if line.is_empty() || line.starts_with('#') {
            continue;
        }
        let mut parts = line.split_whitespace();
        let id_tok = parts.next().unwrap();
        let color_tok = parts
            .next()
            .ok_or_else(|| Error::parse(lineno, "expected \"<id> <color>\""))?;
        if parts.next().is_some() {
            return Err(Error::parse(lineno, "trailing tokens"));
        }
        let v: usize = id_tok
            .parse()
            .map_err(|_| Error::parse(lineno, format!("bad node id {id_tok:?}")))?;
        if v >= h.num_nodes() {
            return Err(Error::parse(
                lineno,
                format!("node id {v} out of range (n = {})", h.num_nodes()),
            ));
        }
        let c = h
            .color_index(color_tok)
            .ok_or_else(|| Error::parse(lineno, format!("unknown color {color_tok:?}")))?;
        if assignment[v].replace(c).is_some() {
            return Err(Error::parse(lineno, format!("node {v} assigned twice")));
        }
    }
    let mut out = Vec::with_capacity(h.num_nodes());
    for (v, slot) in assignment.into_iter().enumerate() {
        match slot {
            Some(c) => out.push(c),
            None => return Err(Error::invalid(format!("node {v} has no assignment"))),
        }
    }
    Ok(Clustering::from_raw(out))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn three_node() -> LabeledHypergraph {
        LabeledHypergraph::parse("nodes 3\nred 0 1\nblue 1 2\n").unwrap()
    }

    #[test]
    fn parses_worked_example() {
        let h = three_node();
        assert_eq!(h.num_nodes(), 3);
        assert_eq!(h.num_colors(), 2);
        assert_eq!(h.num_edges(), 2);
        assert_eq!(h.colors(), &["red".to_string(), "blue".to_string()]);
        assert_eq!(h.color_degrees(0), &[1, 0]);
        assert_eq!(h.color_degrees(1), &[1, 1]);
        assert_eq!(h.color_degrees(2), &[0, 1]);
        assert_eq!(h.max_total_degree(), 2);
        assert_eq!(h.max_edge_size(), 2);
    }

    #[test]
    fn colors_register_in_first_appearance_order() {
        let h = LabeledHypergraph::parse("b 0 1\na 1 2\nb 2 3\n").unwrap();
        assert_eq!(h.colors(), &["b".to_string(), "a".to_string()]);
        assert_eq!(h.num_nodes(), 4, "n inferred from max id");
    }

    #[test]
    fn header_bounds_are_enforced() {
        let err = LabeledHypergraph::parse("nodes 2\nred 0 5\n").unwrap_err();
        match err {
            Error::Parse { line, .. } => assert_eq!(line, 2),
            other => panic!("expected parse error, got {other:?}"),
        }
    }

    #[test]
    fn duplicate_node_in_edge_rejected() {
        assert!(LabeledHypergraph::parse("red 0 0\n").is_err());
    }

    #[test]
    fn comments_and_blanks_skipped() {
        let h = LabeledHypergraph::parse("# header\n\nnodes 3\n# mid\nred 0 1\n\nblue 1 2\n").unwrap();
        assert_eq!(h.num_edges(), 2);
    }

    #[test]
    fn header_without_edges_gives_empty_palette() {
        let h = LabeledHypergraph::parse("nodes 1\n").unwrap();
        assert_eq!(h.num_nodes(), 1);
        assert_eq!(h.num_colors(), 0);
        assert_eq!(h.num_edges(), 0);
        assert_eq!(h.max_total_degree(), 0);
    }

    #[test]
    fn singleton_edges_allowed() {
        let h = LabeledHypergraph::parse("red 0\nred 0\nblue 0\n").unwrap();
        assert_eq!(h.color_degrees(0), &[2, 1], "parallel edges both count");
    }

    #[test]
    fn degree_sum_matches_edge_sizes() {
        let h = LabeledHypergraph::parse("red 0 1 2\nblue 1 2\nred 3 0\n").unwrap();
        for c in 0..h.num_colors() {
            let degree_sum: u32 = (0..h.num_nodes()).map(|v| h.color_degree(v, c)).sum();
            let size_sum: u32 = h
                .edges()
                .iter()
                .filter(|e| e.color == c)
                .map(|e| e.nodes.len() as u32)
                .sum();
            assert_eq!(degree_sum, size_sum);
        }
    }

    #[test]
    fn round_trip_preserves_graph() {
        let h = three_node();
        let again = LabeledHypergraph::parse(&h.to_text()).unwrap();
        assert_eq!(h, again);
    }

    #[test]
    fn edge_nodes_stored_sorted() {
        let h = LabeledHypergraph::parse("red 2 0 1\n").unwrap();
        assert_eq!(h.edges()[0].nodes, vec![0, 1, 2]);
    }

    #[test]
    fn clustering_round_trip() {
        let h = three_node();
        let c = Clustering::new(vec![0, 0, 1], 2).unwrap();
        let text = write_clustering(&c, h.colors());
        assert_eq!(text, "0 red\n1 red\n2 blue\n");
        assert_eq!(parse_clustering(&text, &h).unwrap(), c);
    }

    #[test]
    fn clustering_requires_total_assignment() {
        let h = three_node();
        assert!(parse_clustering("0 red\n1 red\n", &h).is_err());
        assert!(parse_clustering("0 red\n1 red\n2 green\n", &h).is_err());
        assert!(parse_clustering("0 red\n0 blue\n1 red\n2 red\n", &h).is_err());
    }

    #[test]
    fn clustering_validates_color_range() {
        assert!(Clustering::new(vec![0, 2], 2).is_err());
        assert!(Clustering::new(vec![0, 1], 2).is_ok());
    }

    #[test]
    fn empty_clustering_writes_empty_string() {
        let c = Clustering::new(vec![], 0).unwrap();
        assert_eq!(write_clustering(&c, &[]), "");
    }
}
