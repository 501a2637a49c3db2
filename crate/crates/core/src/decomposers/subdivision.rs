//! Subdivisions of simple graphs.
//!
//! The branch vertices (`marked`) come from the original graph `F`; every
//! other vertex has degree 2 and lies on a path replacing an edge of `F`.
//! As soon as a branch vertex is selected, all its remaining neighbours form
//! the next part. Otherwise the construction extends subdivision paths one
//! vertex at a time, preferring extensions that stop right next to an
//! unselected branch vertex. That preference guarantees that when a branch
//! vertex is later finished, none of its unselected neighbours already has a
//! selected neighbour, which keeps every stage within the maximum degree.

use std::collections::HashSet;

use super::checked;
use super::engine::Builder;
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;

const CLASS: &str = "subdivision";

fn validate(h: &Graph, is_marked: &[bool]) -> Result<()> {
    let n = h.vertex_count();
    for v in 0..n {
        if is_marked[v] {
            if let Some(&w) = h.adjacent(v).iter().find(|&&w| is_marked[w]) {
                return Err(Error::class(CLASS, format!("branch vertices {v} and {w} are adjacent")));
            }
        } else if h.degree(v) != 2 {
            return Err(Error::class(CLASS, format!("subdividing vertex {v} has degree {}", h.degree(v))));
        }
    }
    // Every maximal run of subdividing vertices must join two distinct
    // branch vertices, and no two runs may join the same pair.
    let mut seen_run = vec![false; n];
    let mut joined = HashSet::new();
    for start in 0..n {
        if is_marked[start] || seen_run[start] {
            continue;
        }
        let mut ends = Vec::with_capacity(2);
        let mut stack = vec![start];
        seen_run[start] = true;
        while let Some(v) = stack.pop() {
            for &w in h.adjacent(v) {
                if is_marked[w] {
                    ends.push(w);
                } else if !seen_run[w] {
                    seen_run[w] = true;
                    stack.push(w);
                }
            }
        }
        match ends[..] {
            [a, b] if a != b => {
                if !joined.insert((a.min(b), a.max(b))) {
                    return Err(Error::class(CLASS, format!("two subdivision paths join branch vertices {a} and {b}")));
                }
            }
            _ => {
                return Err(Error::class(
                    CLASS,
                    format!("subdividing vertex {start} is not on a path between two distinct branch vertices"),
                ))
            }
        }
    }
    Ok(())
}

/// Decomposes a subdivision with branch vertices `marked`. Width is at most
/// the maximum degree.
pub fn decompose_subdivision(h: &Graph, marked: &[usize]) -> Result<Decomposition> {
    let n = h.vertex_count();
    h.check_vertices(marked)?;
    let mut is_marked = vec![false; n];
    for &v in marked {
        if std::mem::replace(&mut is_marked[v], true) {
            return Err(Error::class(CLASS, format!("vertex {v} is marked twice")));
        }
    }
    validate(h, &is_marked)?;

    let mut b = Builder::new(h, CLASS);
    while !b.all_selected() {
        let active: Vec<usize> = (0..n).filter(|&v| b.is_active(v)).collect();
        let marked_active: Vec<usize> = active.iter().copied().filter(|&v| is_marked[v]).collect();
        if marked_active.len() > 1 {
            return Err(Error::TheoremViolation(format!(
                "branch vertices {marked_active:?} are simultaneously unfinished"
            )));
        }
        if let Some(&a) = marked_active.first() {
            b.finish(a)?;
            continue;
        }
        let leads_to_branch = |y: usize| {
            b.unselected_neighbors(y)
                .any(|x| !is_marked[x] && h.adjacent(x).iter().any(|&z| z != y && is_marked[z] && !b.is_selected(z)))
        };
        if let Some(&y) = active.iter().find(|&&y| leads_to_branch(y)) {
            b.finish(y)?;
        } else if let Some(&y) = active.first() {
            b.finish(y)?;
        } else {
            let seed = (0..n)
                .find(|&v| is_marked[v] && !b.is_selected(v))
                .or_else(|| (0..n).find(|&v| !b.is_selected(v)))
                .expect("some vertex is unselected");
            b.select([seed])?;
        }
    }
    checked(CLASS, h, b.into_decomposition()?, h.max_degree())
}
