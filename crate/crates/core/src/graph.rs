//! Labeled simple graphs on vertex set `{1, ..., k}`.
//!
//! Graphs are immutable after construction, so they can be shared freely
//! across threads. All external formats are 1-based.

use crate::error::{Error, ParseError, Result};
use std::collections::BTreeSet;
use std::fmt;

/// Vertex-count limit applied by the parsing and family constructors unless
/// explicitly overridden. Chromatic computation is exponential in the edge
/// count, so accepting large graphs by accident is worse than asking the
/// caller to opt in.
pub const DEFAULT_MAX_VERTICES: usize = 16;

/// Hard ceiling on the vertex count of any [`Graph`]. The chromatic engine
/// uses 32-bit adjacency rows.
pub const HARD_MAX_VERTICES: usize = 32;

/// A labeled simple graph: `k` vertices `1..=k` and a set of unordered
/// edges `{u, v}` with `u < v`. No self-loops, no duplicates.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    k: usize,
    edges: BTreeSet<(u16, u16)>,
}

/// One connected piece of a graph, relabeled `1..=k_i`, along with the map
/// back to the labels it had in the original graph: `original_labels[i]` is
/// the original label of new vertex `i + 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub graph: Graph,
    pub original_labels: Vec<u16>,
}

/// Structural shapes with known closed-form chromatic polynomials.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum KnownShape {
    Empty,
    /// Any tree (paths and stars included).
    Tree,
    Cycle,
    Complete,
}

impl Graph {
    /// Builds a graph after checking all invariants: endpoints in `[1, k]`,
    /// no self-loops, no duplicate edges (duplicates are a hard error, not
    /// silently removed). Edge order and orientation are normalized.
    pub fn new(k: usize, edges: impl IntoIterator<Item = (u16, u16)>) -> Result<Graph> {
        if k == 0 {
            return Err(Error::invalid("vertex count must be positive"));
        }
        if k > HARD_MAX_VERTICES {
            return Err(Error::VertexLimit {
                k,
                max: HARD_MAX_VERTICES,
            });
        }
        let mut set = BTreeSet::new();
        for (a, b) in edges {
            if a == b {
                return Err(ParseError::SelfLoop { line: 0, vertex: a }.into());
            }
            for v in [a, b] {
                if v == 0 || v as usize > k {
                    return Err(ParseError::EndpointOutOfRange {
                        line: 0,
                        vertex: v as i64,
                        k,
                    }
                    .into());
                }
            }
            let e = (a.min(b), a.max(b));
            if !set.insert(e) {
                return Err(ParseError::DuplicateEdge {
                    line: 0,
                    u: e.0,
                    v: e.1,
                }
                .into());
            }
        }
        Ok(Graph { k, edges: set })
    }

    /// Parses the edge-list text format with the default vertex limit.
    ///
    /// The first non-comment line is the vertex count `k`; every following
    /// non-comment line is an edge `"u v"`. Lines starting with `#` and
    /// blank lines are ignored. LF and CRLF both work.
    pub fn parse(text: &str) -> Result<Graph> {
        Self::parse_with_limit(text, DEFAULT_MAX_VERTICES)
    }

    pub fn parse_with_limit(text: &str, max_k: usize) -> Result<Graph> {
        let mut k: Option<usize> = None;
        let mut edges: BTreeSet<(u16, u16)> = BTreeSet::new();
        for (idx, raw) in text.lines().enumerate() {
            let line_no = idx + 1;
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            match k {
                None => {
                    let parsed: usize = line.parse().map_err(|_| ParseError::BadVertexCount {
                        line: line_no,
                        found: line.to_string(),
                    })?;
                    if parsed == 0 {
                        return Err(ParseError::BadVertexCount {
                            line: line_no,
                            found: line.to_string(),
                        }
                        .into());
                    }
                    if parsed > max_k.min(HARD_MAX_VERTICES) {
                        return Err(Error::VertexLimit {
                            k: parsed,
                            max: max_k.min(HARD_MAX_VERTICES),
                        });
                    }
                    k = Some(parsed);
                }
                Some(k) => {
                    let mut it = line.split_whitespace();
                    let (a, b) = match (it.next(), it.next(), it.next()) {
                        (Some(a), Some(b), None) => (a, b),
                        _ => {
                            return Err(ParseError::MalformedLine {
                                line: line_no,
                                found: line.to_string(),
                            }
                            .into())
                        }
                    };
                    let parse_endpoint = |tok: &str| -> std::result::Result<i64, ParseError> {
                        tok.parse().map_err(|_| ParseError::MalformedLine {
                            line: line_no,
                            found: line.to_string(),
                        })
                    };
                    let (a, b) = (parse_endpoint(a)?, parse_endpoint(b)?);
                    for v in [a, b] {
                        if v < 1 || v as usize > k {
                            return Err(ParseError::EndpointOutOfRange {
                                line: line_no,
                                vertex: v,
                                k,
                            }
                            .into());
                        }
                    }
                    let (a, b) = (a as u16, b as u16);
                    if a == b {
                        return Err(ParseError::SelfLoop {
                            line: line_no,
                            vertex: a,
                        }
                        .into());
                    }
                    let e = (a.min(b), a.max(b));
                    if !edges.insert(e) {
                        return Err(ParseError::DuplicateEdge {
                            line: line_no,
                            u: e.0,
                            v: e.1,
                        }
                        .into());
                    }
                }
            }
        }
        let k = k.ok_or(ParseError::MissingVertexCount)?;
        Ok(Graph { k, edges })
    }

    /// Builds one of the named families with canonical labels `1..=k`:
    /// `path:k`, `cycle:k` (k >= 3), `complete:k`, `empty:k`, `star:k`
    /// (k >= 2, center 1).
    pub fn family(spec: &str) -> Result<Graph> {
        Self::family_with_limit(spec, DEFAULT_MAX_VERTICES)
    }

    pub fn family_with_limit(spec: &str, max_k: usize) -> Result<Graph> {
        let (name, k_str) = spec
            .split_once(':')
            .ok_or_else(|| Error::UnknownFamily(spec.to_string()))?;
        let k: i64 = k_str
            .trim()
            .parse()
            .map_err(|_| Error::UnknownFamily(spec.to_string()))?;
        let positive = |min: i64, reason: &'static str| -> Result<usize> {
            if k < min {
                return Err(Error::BadFamilySize {
                    family: name.to_string(),
                    k,
                    reason,
                });
            }
            Ok(k as usize)
        };
        let (k, edges): (usize, Vec<(u16, u16)>) = match name {
            "path" => {
                let k = positive(1, "path needs k >= 1")?;
                (k, (1..k).map(|i| (i as u16, i as u16 + 1)).collect())
            }
            "cycle" => {
                let k = positive(3, "cycle needs k >= 3")?;
                let mut e: Vec<(u16, u16)> =
                    (1..k).map(|i| (i as u16, i as u16 + 1)).collect();
                e.push((k as u16, 1));
                (k, e)
            }
            "complete" => {
                let k = positive(1, "complete needs k >= 1")?;
                let mut e = Vec::new();
                for i in 1..=k as u16 {
                    for j in (i + 1)..=k as u16 {
                        e.push((i, j));
                    }
                }
                (k, e)
            }
            "empty" => (positive(1, "empty needs k >= 1")?, Vec::new()),
            "star" => {
                let k = positive(2, "star needs k >= 2")?;
                (k, (2..=k as u16).map(|i| (1, i)).collect())
            }
            _ => return Err(Error::UnknownFamily(spec.to_string())),
        };
        if k > max_k.min(HARD_MAX_VERTICES) {
            return Err(Error::VertexLimit {
                k,
                max: max_k.min(HARD_MAX_VERTICES),
            });
        }
        Graph::new(k, edges)
    }

    pub fn k(&self) -> usize {
        self.k
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Edges as normalized `(u, v)` pairs with `u < v`, ascending.
    pub fn edges(&self) -> impl Iterator<Item = (u16, u16)> + '_ {
        self.edges.iter().copied()
    }

    pub fn has_edge(&self, u: u16, v: u16) -> bool {
        self.edges.contains(&(u.min(v), u.max(v)))
    }

    pub fn degree(&self, v: u16) -> usize {
        self.edges.iter().filter(|&&(a, b)| a == v || b == v).count()
    }

    /// Canonical text rendering; `parse(render(g)) == g`.
    pub fn render(&self) -> String {
        let mut out = format!("{}\n", self.k);
        for (u, v) in &self.edges {
            out.push_str(&format!("{} {}\n", u, v));
        }
        out
    }

    /// Whether every edge of `self` is an edge of `other`. Both graphs must
    /// be labeled on the same vertex set.
    pub fn is_subgraph_of(&self, other: &Graph) -> Result<bool> {
        if self.k != other.k {
            return Err(Error::VertexCountMismatch {
                a: self.k,
                b: other.k,
            });
        }
        Ok(self.edges.is_subset(&other.edges))
    }

    /// Splits into maximal connected pieces, each relabeled `1..=k_i` with
    /// a map back to original labels. Isolated vertices form singleton
    /// components. Ordered by smallest original label.
    pub fn connected_components(&self) -> Vec<Component> {
        let mut seen = vec![false; self.k + 1];
        let mut comps = Vec::new();
        for start in 1..=self.k as u16 {
            if seen[start as usize] {
                continue;
            }
            let mut stack = vec![start];
            let mut members = Vec::new();
            seen[start as usize] = true;
            while let Some(v) = stack.pop() {
                members.push(v);
                for &(a, b) in &self.edges {
                    let w = if a == v {
                        b
                    } else if b == v {
                        a
                    } else {
                        continue;
                    };
                    if !seen[w as usize] {
                        seen[w as usize] = true;
                        stack.push(w);
                    }
                }
            }
            members.sort_unstable();
            let index_of = |v: u16| members.iter().position(|&m| m == v).unwrap() as u16 + 1;
            let sub_edges: Vec<(u16, u16)> = self
                .edges
                .iter()
                .filter(|&&(a, _)| members.contains(&a))
                .map(|&(a, b)| (index_of(a), index_of(b)))
                .collect();
            comps.push(Component {
                graph: Graph::new(members.len(), sub_edges).expect("component edges are valid"),
                original_labels: members,
            });
        }
        comps
    }

    pub fn is_connected(&self) -> bool {
        self.connected_components().len() == 1
    }

    /// The graph with one edge removed; labels are unchanged.
    pub fn delete_edge(&self, u: u16, v: u16) -> Result<Graph> {
        let e = (u.min(v), u.max(v));
        if !self.edges.contains(&e) {
            return Err(Error::NoSuchEdge { u: e.0, v: e.1 });
        }
        let mut edges = self.edges.clone();
        edges.remove(&e);
        Ok(Graph { k: self.k, edges })
    }

    /// Contracts the edge `{u, v}`: merges `v` into `u`, collapses any
    /// parallel edges that arise, and relabels compactly (labels above `v`
    /// shift down by one).
    pub fn contract_edge(&self, u: u16, v: u16) -> Result<Graph> {
        let e = (u.min(v), u.max(v));
        if !self.edges.contains(&e) {
            return Err(Error::NoSuchEdge { u: e.0, v: e.1 });
        }
        let (keep, gone) = e;
        let relabel = |w: u16| -> u16 {
            let w = if w == gone { keep } else { w };
            if w > gone {
                w - 1
            } else {
                w
            }
        };
        let mut edges = BTreeSet::new();
        for &(a, b) in &self.edges {
            if (a, b) == e {
                continue;
            }
            let (a, b) = (relabel(a), relabel(b));
            if a != b {
                edges.insert((a.min(b), a.max(b)));
            }
        }
        Ok(Graph {
            k: self.k - 1,
            edges,
        })
    }

    /// Detects shapes with closed-form chromatic polynomials. Used for the
    /// factored rendering in reports; never required for correctness.
    pub fn known_shape(&self) -> Option<KnownShape> {
        let k = self.k;
        let m = self.edges.len();
        if m == 0 {
            return Some(KnownShape::Empty);
        }
        if m == k * (k - 1) / 2 {
            return Some(KnownShape::Complete);
        }
        if !self.is_connected() {
            return None;
        }
        if m == k - 1 {
            return Some(KnownShape::Tree);
        }
        if m == k && k >= 3 && (1..=self.k as u16).all(|v| self.degree(v) == 2) {
            return Some(KnownShape::Cycle);
        }
        None
    }
}

impl fmt::Display for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(k={}, edges={{", self.k)?;
        for (i, (u, v)) in self.edges.iter().enumerate() {
            if i > 0 {
                write!(f, ", ")?;
            }
            write!(f, "{}{}", u, v)?;
        }
        write!(f, "}})")
    }
}
