//! Triangle-free outerplanar graphs, given with their outer face order.
//!
//! Two dummy finished vertices sit just before the first and just after the
//! last face position. At every stage the finished positions cut the face
//! order into intervals; the construction takes the first interval holding
//! an active vertex, picks the median active vertex of that interval (lower
//! median for even counts) and finishes it. Selecting its neighbours forces
//! the neighbours of every other affected active vertex, which is exactly the
//! closure applied by the builder.

use super::checked;
use super::engine::Builder;
use crate::decomposition::Decomposition;
use crate::error::{Error, Result};
use crate::graph::Graph;

const CLASS: &str = "outerplanar";

/// Checks that `face` lists each vertex once and that no two edges cross as
/// chords of the face cycle.
fn check_face(h: &Graph, face: &[usize]) -> Result<()> {
    let n = h.vertex_count();
    h.check_vertices(face)?;
    let mut pos = vec![usize::MAX; n];
    for (i, &v) in face.iter().enumerate() {
        if pos[v] != usize::MAX {
            return Err(Error::class(CLASS, format!("vertex {v} appears twice on the face")));
        }
        pos[v] = i;
    }
    if let Some(v) = pos.iter().position(|&p| p == usize::MAX) {
        return Err(Error::class(CLASS, format!("vertex {v} is missing from the face order")));
    }
    let mut chords: Vec<(usize, usize, (usize, usize))> =
        h.edges().map(|(u, v)| (pos[u].min(pos[v]), pos[u].max(pos[v]), (u, v))).collect();
    // Non-crossing chords form a laminar family of intervals.
    chords.sort_by(|a, b| a.0.cmp(&b.0).then(b.1.cmp(&a.1)));
    let mut open: Vec<(usize, usize, (usize, usize))> = Vec::new();
    for chord in chords {
        while open.last().is_some_and(|top| top.1 <= chord.0) {
            open.pop();
        }
        if let Some(top) = open.last() {
            if top.1 < chord.1 {
                return Err(Error::class(
                    CLASS,
                    format!("edges {:?} and {:?} cross under the face order", top.2, chord.2),
                ));
            }
        }
        open.push(chord);
    }
    Ok(())
}

/// Decomposes a triangle-free outerplanar graph whose vertices appear on the
/// outer face in the order `face`. Width is at most `2 * maxdeg^2`.
pub fn decompose_outerplanar(h: &Graph, face: &[usize]) -> Result<Decomposition> {
    let n = h.vertex_count();
    check_face(h, face)?;
    if h.girth() == Some(3) {
        return Err(Error::class(CLASS, "the graph contains a triangle"));
    }
    let max_degree = h.max_degree();
    let mut b = Builder::new(h, CLASS);
    while !b.all_selected() {
        // Face positions shifted by one, with dummies at 0 and n + 1.
        let finished = |p: usize| p == 0 || p == n + 1 || b.is_finished(face[p - 1]);
        let mut chosen = None;
        let mut left = 0;
        while left <= n && chosen.is_none() {
            let right = (left + 1..=n + 1).find(|&p| finished(p)).expect("dummy n + 1 is finished");
            let active: Vec<usize> = (left + 1..right).map(|p| face[p - 1]).filter(|&v| b.is_active(v)).collect();
            if !active.is_empty() {
                chosen = Some(active[(active.len() - 1) / 2]);
            }
            left = right;
        }
        let before: Vec<bool> = (0..n).map(|v| b.is_selected(v)).collect();
        let part = match chosen {
            Some(a) => b.finish(a)?,
            None => {
                let seed = face.iter().copied().find(|&v| !b.is_selected(v)).expect("unselected vertex");
                b.select([seed])?
            }
        };
        let part = part.ok_or_else(|| Error::Logic("outerplanar stage selected nothing".into()))?;
        let anchors = part
            .iter()
            .flat_map(|&v| h.adjacent(v).iter().copied())
            .filter(|&u| before[u])
            .collect::<std::collections::BTreeSet<_>>()
            .len();
        if anchors > 2 * max_degree {
            return Err(Error::TheoremViolation(format!(
                "outerplanar stage has {anchors} anchors, above 2 * {max_degree}"
            )));
        }
    }
    checked(CLASS, h, b.into_decomposition()?, 2 * max_degree * max_degree)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::decomposition::width;
    use crate::generators::{cycle, random_outerplanar};
    use rand::SeedableRng;
    use rand_chacha::ChaCha8Rng;

    #[test]
    fn four_cycle() {
        let c4 = cycle(4).unwrap();
        let d = decompose_outerplanar(&c4, &[0, 1, 2, 3]).unwrap();
        assert_eq!(width(&c4, &d).unwrap(), 2);
    }

    #[test]
    fn hexagon_with_long_chord() {
        // C6 plus the chord 0-3: two 4-cycles sharing an edge, maximum degree 3.
        let mut edges: Vec<(usize, usize)> = (0..6).map(|v| (v, (v + 1) % 6)).collect();
        edges.push((0, 3));
        let g = Graph::from_edges(6, edges).unwrap();
        let d = decompose_outerplanar(&g, &[0, 1, 2, 3, 4, 5]).unwrap();
        assert!(width(&g, &d).unwrap() <= 18);
    }

    #[test]
    fn rejections() {
        // Fan: triangles.
        let fan = Graph::from_edges(4, [(0, 1), (1, 2), (2, 3), (0, 2), (0, 3)]).unwrap();
        assert!(matches!(decompose_outerplanar(&fan, &[0, 1, 2, 3]), Err(Error::ClassValidation { .. })));
        // Crossing chords in an octagon.
        let mut edges: Vec<(usize, usize)> = (0..8).map(|v| (v, (v + 1) % 8)).collect();
        edges.extend([(0, 4), (2, 6)]);
        let g = Graph::from_edges(8, edges).unwrap();
        assert!(decompose_outerplanar(&g, &(0..8).collect::<Vec<_>>()).is_err());
        let c4 = cycle(4).unwrap();
        assert!(decompose_outerplanar(&c4, &[0, 1, 2]).is_err());
        assert!(decompose_outerplanar(&c4, &[0, 1, 2, 2]).is_err());
        // C4 read in the wrong order has crossing chords.
        assert!(decompose_outerplanar(&c4, &[0, 2, 1, 3]).is_err());
    }

    #[test]
    fn random_instances() {
        let mut rng = ChaCha8Rng::seed_from_u64(31);
        for _ in 0..200 {
            let (g, face) = random_outerplanar(60, 6, &mut rng).unwrap();
            let d = decompose_outerplanar(&g, &face).unwrap();
            let dm = g.max_degree();
            assert!(width(&g, &d).unwrap() <= 2 * dm * dm);
        }
    }
}
