//! Constructive decompositions for specific graph classes.
//!
//! Class membership is declared by the caller and validated; nothing here
//! recognises a class from scratch. Each decomposer checks its own output
//! with [`verify`] and asserts its class width bound before returning, so a
//! returned decomposition is always valid.
//!
//! Ties are broken towards the lowest vertex index everywhere.

mod auto;
mod engine;
mod outerplanar;
mod planar;
mod series_parallel;
mod simple;
mod subdivision;

use crate::decomposition::{verify, width, Decomposition};
use crate::error::{Error, Result};
use crate::graph::Graph;

pub use auto::{decompose_auto, AutoDecomposition};
pub use outerplanar::decompose_outerplanar;
pub use planar::{decompose_planar16, thread_partition, ThreadPartition, PLANAR_MIN_GIRTH};
pub(crate) use series_parallel::SpSummary;
pub use series_parallel::{decompose_series_parallel, SpExpr};
pub use simple::{decompose_cycle, decompose_grid, decompose_path, decompose_tree};
pub use subdivision::decompose_subdivision;

/// Class tag plus the structure each class needs beyond the bare graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Structure {
    Path,
    Cycle,
    /// A tree, rooted at vertex 0 unless `root` is given.
    Tree {
        root: Option<usize>,
    },
    Grid {
        rows: usize,
        cols: usize,
    },
    /// A subdivision whose original (branch) vertices are `marked`.
    Subdivision {
        marked: Vec<usize>,
    },
    /// An outerplanar graph with its outer face listed in cyclic order.
    Outerplanar {
        face: Vec<usize>,
    },
    SeriesParallel(SpExpr),
    /// Planar with girth at least 16; planarity is trusted.
    Planar16,
    /// Disjoint union of paths and cycles.
    DegreeLeTwo,
}

impl Structure {
    pub fn name(&self) -> &'static str {
        match self {
            Structure::Path => "path",
            Structure::Cycle => "cycle",
            Structure::Tree { .. } => "tree",
            Structure::Grid { .. } => "grid",
            Structure::Subdivision { .. } => "subdivision",
            Structure::Outerplanar { .. } => "outerplanar",
            Structure::SeriesParallel(_) => "series-parallel",
            Structure::Planar16 => "planar16",
            Structure::DegreeLeTwo => "degree<=2",
        }
    }
}

/// A graph together with its declared class.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ClassInput {
    pub graph: Graph,
    pub structure: Structure,
}

/// Runs the decomposer matching `input.structure`.
///
/// Graphs of maximum degree two go through [`decompose_auto`] and fail if
/// they contain a triangle, since triangles have no decomposition.
pub fn decompose(input: &ClassInput) -> Result<Decomposition> {
    let g = &input.graph;
    match &input.structure {
        Structure::Path => decompose_path(g),
        Structure::Cycle => decompose_cycle(g),
        Structure::Tree { root } => decompose_tree(g, *root),
        Structure::Grid { rows, cols } => decompose_grid(g, *rows, *cols),
        Structure::Subdivision { marked } => decompose_subdivision(g, marked),
        Structure::Outerplanar { face } => decompose_outerplanar(g, face),
        Structure::SeriesParallel(expr) => decompose_series_parallel(g, expr),
        Structure::Planar16 => decompose_planar16(g),
        Structure::DegreeLeTwo => {
            if g.max_degree() > 2 {
                return Err(Error::class("degree<=2", "a vertex has degree above 2"));
            }
            let auto = decompose_auto(g, None)?;
            if !auto.triangles.is_empty() {
                return Err(Error::UseTriangleExtension);
            }
            Ok(auto.decomposition)
        }
    }
}

/// Parses a class hint file.
///
/// Recognised lines (blank lines and `#` comments are skipped; exactly one
/// structure line is allowed):
///
/// ```text
/// face: 0 1 2 3
/// marked: 0 4 7
/// grid: 3 4
/// sp: P(S(e,e),S(e,e))
/// root: 5
/// ```
///
/// A lone `root:` line declares a tree with that root.
pub fn parse_hint(text: &str) -> Result<Structure> {
    let mut found: Option<Structure> = None;
    for (idx, raw) in text.lines().enumerate() {
        let line = idx + 1;
        let body = raw.split('#').next().unwrap_or("").trim();
        if body.is_empty() {
            continue;
        }
        let (key, value) = body
            .split_once(':')
            .ok_or_else(|| Error::Parse { line, message: format!("expected `key: value`, got `{body}`") })?;
        let numbers = || -> Result<Vec<usize>> {
            value
                .split_whitespace()
                .map(|t| t.parse().map_err(|_| Error::Parse { line, message: format!("`{t}` is not a vertex index") }))
                .collect()
        };
        let structure = match key.trim() {
            "face" => Structure::Outerplanar { face: numbers()? },
            "marked" => Structure::Subdivision { marked: numbers()? },
            "grid" => match numbers()?[..] {
                [rows, cols] => Structure::Grid { rows, cols },
                _ => return Err(Error::Parse { line, message: "grid needs exactly two numbers: rows cols".into() }),
            },
            "sp" => Structure::SeriesParallel(
                SpExpr::parse(value.trim()).map_err(|e| Error::Parse { line, message: e.to_string() })?,
            ),
            "root" => match numbers()?[..] {
                [root] => Structure::Tree { root: Some(root) },
                _ => return Err(Error::Parse { line, message: "root needs exactly one vertex".into() }),
            },
            other => return Err(Error::Parse { line, message: format!("unknown hint `{other}`") }),
        };
        if found.replace(structure).is_some() {
            return Err(Error::Parse { line, message: "only one structure line is allowed".into() });
        }
    }
    found.ok_or(Error::Parse { line: 0, message: "hint file declares no structure".into() })
}

/// Verifies a constructed decomposition and enforces its class bound.
fn checked(class: &'static str, h: &Graph, d: Decomposition, bound: usize) -> Result<Decomposition> {
    let report = verify(h, &d)?;
    if !report.valid {
        return Err(Error::Logic(format!("{class} construction produced an invalid decomposition: {report:?}")));
    }
    let w = width(h, &d)?;
    if w > bound {
        return Err(Error::BoundExceeded { class, width: w, bound });
    }
    Ok(d)
}
