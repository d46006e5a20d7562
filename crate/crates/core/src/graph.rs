//! Plumbing graphs: the line-oriented file format, structural checks and the
//! intersection form.
//!
//! A graph is parsed without checking the global invariants (tree shape,
//! negative definiteness) so that callers can report exactly which one fails.
//! [`PlumbingGraph::validate`] performs those checks and produces a
//! [`Lattice`], which every numeric routine downstream works with.

use std::collections::{BTreeSet, HashMap, VecDeque};
use std::fmt;

use num_bigint::BigInt;
use thiserror::Error;

use crate::lattice::Lattice;
use crate::linalg;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("{0}")]
    Syntax(String),
    #[error("duplicate vertex `{0}`")]
    DuplicateVertex(String),
    #[error("unknown vertex `{0}`")]
    UnknownVertex(String),
    #[error("self-loop at `{0}`")]
    SelfLoop(String),
    #[error("duplicate edge `{0}` -- `{1}`")]
    DuplicateEdge(String, String),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

/// Structural errors raised while building a graph programmatically.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum GraphError {
    #[error("invalid vertex name `{0}`")]
    InvalidName(String),
    #[error(transparent)]
    Structure(#[from] ParseErrorKind),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValidationError {
    #[error("graph has no vertices")]
    Empty,
    #[error("not a tree: {vertices} vertices, {edges} edges, {components} connected components")]
    NotTree {
        vertices: usize,
        edges: usize,
        components: usize,
    },
    #[error("intersection form is not negative definite: {0}")]
    NotNegativeDefinite(FailingMinor),
}

/// The first leading principal minor of `-M` that is not positive.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct FailingMinor {
    /// Size of the leading principal submatrix (1-based).
    pub order: usize,
    /// Vertex closing that submatrix, i.e. the `order`-th declared vertex.
    pub vertex: String,
    pub value: BigInt,
}

impl fmt::Display for FailingMinor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "leading principal minor of order {} of -M (through vertex `{}`) is {}",
            self.order, self.vertex, self.value
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Definiteness {
    NegativeDefinite,
    Fails(FailingMinor),
}

impl Definiteness {
    pub fn is_negative_definite(&self) -> bool {
        matches!(self, Definiteness::NegativeDefinite)
    }
}

/// Square integer matrix indexed by vertex declaration order.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IntersectionMatrix {
    size: usize,
    entries: Vec<i64>,
}

impl IntersectionMatrix {
    pub fn size(&self) -> usize {
        self.size
    }

    pub fn get(&self, i: usize, j: usize) -> i64 {
        self.entries[i * self.size + j]
    }

    pub fn row(&self, i: usize) -> &[i64] {
        &self.entries[i * self.size..(i + 1) * self.size]
    }

    pub fn to_rows(&self) -> Vec<Vec<i64>> {
        (0..self.size).map(|i| self.row(i).to_vec()).collect()
    }

    pub fn is_symmetric(&self) -> bool {
        (0..self.size).all(|i| (0..i).all(|j| self.get(i, j) == self.get(j, i)))
    }
}

/// A weighted graph whose vertices carry Euler numbers `E_i^2`.
///
/// Vertex genus decorations are always zero and are not represented.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct PlumbingGraph {
    names: Vec<String>,
    euler: Vec<i64>,
    // endpoints stored with the lower index first, in insertion order
    edges: Vec<(usize, usize)>,
    neighbors: Vec<Vec<usize>>,
    index: HashMap<String, usize>,
}

fn valid_name(name: &str) -> bool {
    !name.is_empty() && name.chars().all(|c| c.is_ascii_alphanumeric() || c == '_')
}

impl PlumbingGraph {
    pub fn new() -> Self {
        Self::default()
    }

    /// Appends a vertex and returns its index.
    pub fn add_vertex(&mut self, name: &str, euler: i64) -> Result<usize, GraphError> {
        if !valid_name(name) {
            return Err(GraphError::InvalidName(name.to_string()));
        }
        if self.index.contains_key(name) {
            return Err(ParseErrorKind::DuplicateVertex(name.to_string()).into());
        }
        let idx = self.names.len();
        self.names.push(name.to_string());
        self.euler.push(euler);
        self.neighbors.push(Vec::new());
        self.index.insert(name.to_string(), idx);
        Ok(idx)
    }

    pub fn add_edge(&mut self, a: &str, b: &str) -> Result<(), GraphError> {
        let lookup = |n: &str| {
            self.index
                .get(n)
                .copied()
                .ok_or_else(|| ParseErrorKind::UnknownVertex(n.to_string()))
        };
        let (i, j) = (lookup(a)?, lookup(b)?);
        if i == j {
            return Err(ParseErrorKind::SelfLoop(a.to_string()).into());
        }
        if self.neighbors[i].contains(&j) {
            return Err(ParseErrorKind::DuplicateEdge(a.to_string(), b.to_string()).into());
        }
        self.edges.push((i.min(j), i.max(j)));
        self.neighbors[i].push(j);
        self.neighbors[j].push(i);
        Ok(())
    }

    /// Parses the line-oriented graph format.
    ///
    /// Edges may refer to vertices declared later in the file. Only local
    /// structure is checked here; see [`PlumbingGraph::validate`].
    pub fn parse(text: &str) -> Result<Self, ParseError> {
        let mut graph = PlumbingGraph::new();
        let mut edge_lines = Vec::new();
        for (lineno, raw) in text.lines().enumerate() {
            let line = lineno + 1;
            let trimmed = raw.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let syntax = |msg: String| ParseError {
                line,
                kind: ParseErrorKind::Syntax(msg),
            };
            let tokens: Vec<&str> = trimmed.split_whitespace().collect();
            match tokens[0] {
                "vertex" => {
                    let [_, name, euler] = tokens[..] else {
                        return Err(syntax(format!(
                            "expected `vertex <name> <int>`, found `{trimmed}`"
                        )));
                    };
                    if !valid_name(name) {
                        return Err(syntax(format!("invalid vertex name `{name}`")));
                    }
                    let euler: i64 = euler
                        .parse()
                        .map_err(|_| syntax(format!("invalid Euler number `{euler}`")))?;
                    graph.add_vertex(name, euler).map_err(|e| match e {
                        GraphError::Structure(kind) => ParseError { line, kind },
                        GraphError::InvalidName(n) => syntax(format!("invalid vertex name `{n}`")),
                    })?;
                }
                "edge" => {
                    let [_, a, b] = tokens[..] else {
                        return Err(syntax(format!(
                            "expected `edge <name> <name>`, found `{trimmed}`"
                        )));
                    };
                    for name in [a, b] {
                        if !valid_name(name) {
                            return Err(syntax(format!("invalid vertex name `{name}`")));
                        }
                    }
                    edge_lines.push((line, a, b));
                }
                other => return Err(syntax(format!("unknown directive `{other}`"))),
            }
        }
        for (line, a, b) in edge_lines {
            graph.add_edge(a, b).map_err(|e| match e {
                GraphError::Structure(kind) => ParseError { line, kind },
                GraphError::InvalidName(_) => unreachable!("names checked while tokenizing"),
            })?;
        }
        Ok(graph)
    }

    /// Serializes to the file format: vertices in declaration order, then
    /// edges with lexicographically ordered endpoints, sorted.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for (name, e) in self.names.iter().zip(&self.euler) {
            out.push_str(&format!("vertex {name} {e}\n"));
        }
        let sorted: BTreeSet<(&str, &str)> = self
            .edges
            .iter()
            .map(|&(i, j)| {
                let (a, b) = (self.names[i].as_str(), self.names[j].as_str());
                if a <= b {
                    (a, b)
                } else {
                    (b, a)
                }
            })
            .collect();
        for (a, b) in sorted {
            out.push_str(&format!("edge {a} {b}\n"));
        }
        out
    }

    pub fn len(&self) -> usize {
        self.names.len()
    }

    pub fn is_empty(&self) -> bool {
        self.names.is_empty()
    }

    pub fn names(&self) -> &[String] {
        &self.names
    }

    pub fn name(&self, i: usize) -> &str {
        &self.names[i]
    }

    pub fn index_of(&self, name: &str) -> Option<usize> {
        self.index.get(name).copied()
    }

    pub fn euler(&self, i: usize) -> i64 {
        self.euler[i]
    }

    pub fn euler_numbers(&self) -> &[i64] {
        &self.euler
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, i: usize) -> &[usize] {
        &self.neighbors[i]
    }

    /// `ν_i`: the number of edges at vertex `i`.
    pub fn valence_at(&self, i: usize) -> usize {
        self.neighbors[i].len()
    }

    pub fn valence(&self, name: &str) -> Result<usize, GraphError> {
        self.index_of(name)
            .map(|i| self.valence_at(i))
            .ok_or_else(|| ParseErrorKind::UnknownVertex(name.to_string()).into())
    }

    pub fn intersection_matrix(&self) -> IntersectionMatrix {
        let n = self.len();
        let mut entries = vec![0; n * n];
        for (i, &e) in self.euler.iter().enumerate() {
            entries[i * n + i] = e;
        }
        for &(i, j) in &self.edges {
            entries[i * n + j] = 1;
            entries[j * n + i] = 1;
        }
        IntersectionMatrix { size: n, entries }
    }

    /// Number of connected components of the subgraph induced on `mask`.
    pub(crate) fn components_within(&self, mask: &[bool]) -> usize {
        let mut seen = vec![false; self.len()];
        let mut queue = VecDeque::new();
        let mut count = 0;
        for start in 0..self.len() {
            if !mask[start] || seen[start] {
                continue;
            }
            count += 1;
            seen[start] = true;
            queue.push_back(start);
            while let Some(v) = queue.pop_front() {
                for &w in &self.neighbors[v] {
                    if mask[w] && !seen[w] {
                        seen[w] = true;
                        queue.push_back(w);
                    }
                }
            }
        }
        count
    }

    pub fn component_count(&self) -> usize {
        self.components_within(&vec![true; self.len()])
    }

    pub fn is_tree(&self) -> bool {
        !self.is_empty() && self.edges.len() + 1 == self.len() && self.component_count() == 1
    }

    /// Sylvester's criterion on `-M`, with the minors computed by
    /// fraction-free elimination.
    pub fn definiteness(&self) -> Definiteness {
        let m = self.intersection_matrix();
        let negated: Vec<Vec<BigInt>> = (0..m.size())
            .map(|i| m.row(i).iter().map(|&x| BigInt::from(-x)).collect())
            .collect();
        let minors = linalg::leading_principal_minors(&negated);
        match minors
            .into_iter()
            .enumerate()
            .find(|(_, d)| *d <= BigInt::from(0))
        {
            None => Definiteness::NegativeDefinite,
            Some((k, value)) => Definiteness::Fails(FailingMinor {
                order: k + 1,
                vertex: self.names[k].clone(),
                value,
            }),
        }
    }

    pub fn is_negative_definite(&self) -> bool {
        self.definiteness().is_negative_definite()
    }

    /// Checks the tree and definiteness invariants and precomputes the
    /// lattice data (canonical cycle) used by all numeric routines.
    pub fn validate(self) -> Result<Lattice, ValidationError> {
        if self.is_empty() {
            return Err(ValidationError::Empty);
        }
        if !self.is_tree() {
            return Err(ValidationError::NotTree {
                vertices: self.len(),
                edges: self.edges.len(),
                components: self.component_count(),
            });
        }
        if let Definiteness::Fails(minor) = self.definiteness() {
            return Err(ValidationError::NotNegativeDefinite(minor));
        }
        Ok(Lattice::new(self))
    }
}

impl fmt::Display for PlumbingGraph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}
