//! Ordered bipartite decompositions, their verifier and stage graphs.
//!
//! A decomposition of a template graph `H` is an ordered sequence of vertex
//! parts `V_1, ..., V_l` such that
//!
//! 1. the parts partition the vertex set,
//! 2. every part is an independent set, and
//! 3. for every vertex `v` in `V_i`, all neighbours of `v` outside
//!    `V_1 ∪ ... ∪ V_{i-1}` lie in one single part.
//!
//! Stage `i` anchors `V_i` on `U_i`, the neighbours of `V_i` placed in
//! earlier parts. The stage graph `H_i` is induced by `U_i ∪ V_i`; its edges
//! all run between the two sides, and the stage edge sets partition `E(H)`.

use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::Graph;

/// An ordered sequence of non-empty vertex parts.
#[derive(Clone, Debug, Default, PartialEq, Eq, Hash)]
pub struct Decomposition {
    parts: Vec<Vec<usize>>,
}

impl Decomposition {
    /// Wraps `parts`, sorting each one. Empty parts are rejected.
    pub fn new(parts: Vec<Vec<usize>>) -> Result<Self> {
        let mut parts = parts;
        for (i, p) in parts.iter_mut().enumerate() {
            if p.is_empty() {
                return Err(Error::Structural(format!("part {} is empty", i + 1)));
            }
            p.sort_unstable();
        }
        Ok(Decomposition { parts })
    }

    pub fn empty() -> Self {
        Decomposition::default()
    }

    pub fn parts(&self) -> &[Vec<usize>] {
        &self.parts
    }

    /// Number of stages.
    pub fn len(&self) -> usize {
        self.parts.len()
    }

    pub fn is_empty(&self) -> bool {
        self.parts.is_empty()
    }

    /// Appends the parts of `other` after those of `self`.
    pub fn concat(mut self, other: Decomposition) -> Self {
        self.parts.extend(other.parts);
        self
    }

    /// Renames every vertex through `map`.
    pub fn map_vertices(&self, map: impl Fn(usize) -> usize) -> Decomposition {
        let parts = self
            .parts
            .iter()
            .map(|p| {
                let mut q: Vec<usize> = p.iter().map(|&v| map(v)).collect();
                q.sort_unstable();
                q
            })
            .collect();
        Decomposition { parts }
    }

    /// Stage index (0-based) of every vertex, or `None` if unassigned.
    /// Fails on out-of-range vertices or on vertices assigned twice.
    fn assignment(&self, n: usize) -> Result<Vec<Option<usize>>, PropertyFailure> {
        let mut stage = vec![None; n];
        for (i, part) in self.parts.iter().enumerate() {
            for &v in part {
                if v >= n {
                    return Err(PropertyFailure::vertices(Property::Partition, vec![v]));
                }
                if stage[v].is_some() {
                    return Err(PropertyFailure::vertices(Property::Partition, vec![v]));
                }
                stage[v] = Some(i);
            }
        }
        Ok(stage)
    }

    /// Parses the text format: one part per line in stage order, vertices
    /// separated by whitespace, `#` starting a comment line.
    pub fn parse(text: &str) -> Result<Self> {
        let mut parts = Vec::new();
        for (idx, raw) in text.lines().enumerate() {
            let line = raw.trim();
            if line.is_empty() || line.starts_with('#') {
                continue;
            }
            let part = line
                .split_whitespace()
                .map(|f| {
                    f.parse::<usize>()
                        .map_err(|e| Error::Parse { line: idx + 1, message: format!("bad vertex {f:?}: {e}") })
                })
                .collect::<Result<Vec<_>>>()?;
            parts.push(part);
        }
        Decomposition::new(parts)
    }

    pub fn to_text(&self) -> String {
        let mut out = String::new();
        for part in &self.parts {
            let line: Vec<String> = part.iter().map(ToString::to_string).collect();
            let _ = writeln!(out, "{}", line.join(" "));
        }
        out
    }
}

/// The three defining properties of a decomposition.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum Property {
    /// The parts partition the vertex set.
    Partition,
    /// Every part is independent.
    Independence,
    /// Later neighbours of each vertex share a single part.
    SingleLaterPart,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PropertyFailure {
    pub property: Property,
    pub witness_vertices: Vec<usize>,
    pub witness_edge: Option<(usize, usize)>,
}

impl PropertyFailure {
    fn vertices(property: Property, witness_vertices: Vec<usize>) -> Self {
        PropertyFailure { property, witness_vertices, witness_edge: None }
    }
}

/// Outcome of [`verify`], serialised as
/// `{valid, property_failures: [{property, witness_vertices, witness_edge}]}`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ValidityReport {
    pub valid: bool,
    pub property_failures: Vec<PropertyFailure>,
}

impl ValidityReport {
    fn from_failures(property_failures: Vec<PropertyFailure>) -> Self {
        ValidityReport { valid: property_failures.is_empty(), property_failures }
    }

    /// First failure for `property`, if any.
    pub fn failure(&self, property: Property) -> Option<&PropertyFailure> {
        self.property_failures.iter().find(|f| f.property == property)
    }
}

/// Checks the three decomposition properties, reporting one witness per
/// violated property.
///
/// A decomposition that names a vertex outside `h` is a structural error
/// rather than a property failure.
pub fn verify(h: &Graph, d: &Decomposition) -> Result<ValidityReport> {
    let n = h.vertex_count();
    if let Some(&v) = d.parts.iter().flatten().find(|&&v| v >= n) {
        return Err(Error::Structural(format!("decomposition names vertex {v} but the template has {n} vertices")));
    }
    let stage = match d.assignment(n) {
        Ok(stage) => stage,
        Err(failure) => return Ok(ValidityReport::from_failures(vec![failure])),
    };
    let mut failures = Vec::new();
    if let Some(v) = stage.iter().position(Option::is_none) {
        failures.push(PropertyFailure::vertices(Property::Partition, vec![v]));
    }

    // Independence of each part.
    if let Some((u, v)) = h.edges().find(|&(u, v)| stage[u].is_some() && stage[u] == stage[v]) {
        failures.push(PropertyFailure {
            property: Property::Independence,
            witness_vertices: vec![u, v],
            witness_edge: Some((u, v)),
        });
    }

    // For v in V_i: neighbours not in V_1..V_{i-1} lie in a single part.
    'outer: for v in 0..n {
        let Some(sv) = stage[v] else { continue };
        let mut later: Option<(usize, usize)> = None;
        for &w in h.adjacent(v) {
            let Some(sw) = stage[w] else { continue };
            if sw < sv {
                continue;
            }
            match later {
                None => later = Some((w, sw)),
                Some((first, sf)) if sf != sw => {
                    failures.push(PropertyFailure {
                        property: Property::SingleLaterPart,
                        witness_vertices: vec![v, first, w],
                        witness_edge: None,
                    });
                    break 'outer;
                }
                Some(_) => {}
            }
        }
    }
    Ok(ValidityReport::from_failures(failures))
}

/// The bipartite graph embedded at one stage.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct StageGraph {
    /// 1-based stage index.
    pub index: usize,
    /// `U_i`: neighbours of the part placed in earlier stages.
    pub anchors: Vec<usize>,
    /// `V_i`.
    pub part: Vec<usize>,
    /// Edges `(u, v)` with `u` in `anchors` and `v` in `part`.
    pub edges: Vec<(usize, usize)>,
}

impl StageGraph {
    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }
}

/// Stage graphs of an arbitrary ordered vertex partition, without checking
/// that it is a decomposition. Edges inside a part are not represented.
pub(crate) fn stage_graphs_unchecked(h: &Graph, parts: &[Vec<usize>]) -> Vec<StageGraph> {
    let mut stage = vec![usize::MAX; h.vertex_count()];
    for (i, p) in parts.iter().enumerate() {
        for &v in p {
            stage[v] = i;
        }
    }
    parts
        .iter()
        .enumerate()
        .map(|(i, part)| {
            let mut anchors = Vec::new();
            let mut edges = Vec::new();
            for &v in part {
                for &u in h.adjacent(v) {
                    if stage[u] < i {
                        edges.push((u, v));
                        anchors.push(u);
                    }
                }
            }
            anchors.sort_unstable();
            anchors.dedup();
            edges.sort_unstable();
            StageGraph { index: i + 1, anchors, part: part.clone(), edges }
        })
        .collect()
}

/// Stage graphs `H_1, ..., H_l` of a valid decomposition.
pub fn stage_graphs(h: &Graph, d: &Decomposition) -> Result<Vec<StageGraph>> {
    let report = verify(h, d)?;
    if !report.valid {
        return Err(Error::InvalidDecomposition(Box::new(report)));
    }
    Ok(stage_graphs_unchecked(h, &d.parts))
}

/// Largest stage edge count of a valid decomposition.
pub fn width(h: &Graph, d: &Decomposition) -> Result<usize> {
    Ok(stage_graphs(h, d)?.iter().map(StageGraph::edge_count).max().unwrap_or(0))
}
