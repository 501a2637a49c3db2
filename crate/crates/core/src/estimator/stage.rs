//! Exact counting and unranking of the placements of one part.
//!
//! Vertices of a part whose anchors coincide have the same candidate set, so
//! they are handled as a group: a placement chooses, for each group, an
//! ordered tuple of distinct candidates, with no base vertex used twice
//! overall. Placements are numbered `0..count` and [`StageProblem::unrank`]
//! maps each number to a distinct placement, so a uniform number gives a
//! uniform placement.

use crate::error::{Error, Result};

/// Largest number of dynamic-programming states accepted for one stage.
pub const MAX_STAGE_STATES: usize = 1 << 22;

#[derive(Clone, Debug)]
pub struct Group {
    /// Template vertices to place.
    pub members: Vec<usize>,
    /// Sorted base vertices available to every member.
    pub candidates: Vec<usize>,
}

/// The placements of one part, given each group's candidate set.
pub struct StageProblem {
    groups: Vec<Group>,
    count: u128,
    solver: Solver,
}

enum Solver {
    /// At most one group: ordered selections without repetition.
    Single,
    General(Table),
}

struct Table {
    positions: Vec<usize>,
    /// Groups containing each position.
    owners: Vec<Vec<usize>>,
    strides: Vec<usize>,
    /// `ways[p][state]`: completions using positions `p..`.
    ways: Vec<Vec<u128>>,
    /// `prod of |members|!`: orders within groups.
    orders: u128,
}

fn falling(n: usize, k: usize) -> Result<u128> {
    if k > n {
        return Ok(0);
    }
    (n - k + 1..=n).try_fold(1u128, |acc, x| acc.checked_mul(x as u128).ok_or(Error::Overflow))
}

impl StageProblem {
    pub fn new(groups: Vec<Group>) -> Result<StageProblem> {
        let groups: Vec<Group> = groups.into_iter().filter(|g| !g.members.is_empty()).collect();
        if groups.len() <= 1 {
            let count = match groups.first() {
                Some(g) => falling(g.candidates.len(), g.members.len())?,
                None => 1,
            };
            return Ok(StageProblem { groups, count, solver: Solver::Single });
        }
        let mut strides = Vec::with_capacity(groups.len());
        let mut states = 1usize;
        for g in &groups {
            strides.push(states);
            states = states
                .checked_mul(g.members.len() + 1)
                .filter(|&s| s <= MAX_STAGE_STATES)
                .ok_or_else(|| Error::Parameter("stage has too many vertex groups to count exactly".into()))?;
        }
        let mut positions: Vec<usize> = groups.iter().flat_map(|g| g.candidates.iter().copied()).collect();
        positions.sort_unstable();
        positions.dedup();
        let owners: Vec<Vec<usize>> = positions
            .iter()
            .map(|x| (0..groups.len()).filter(|&gi| groups[gi].candidates.binary_search(x).is_ok()).collect())
            .collect();
        let digit = |state: usize, gi: usize| state / strides[gi] % (groups[gi].members.len() + 1);
        let full: usize = groups.iter().zip(&strides).map(|(g, s)| g.members.len() * s).sum();
        let mut ways = vec![vec![0u128; states]; positions.len() + 1];
        ways[positions.len()][full] = 1;
        for p in (0..positions.len()).rev() {
            for state in 0..states {
                let mut w = ways[p + 1][state];
                for &gi in &owners[p] {
                    if digit(state, gi) < groups[gi].members.len() {
                        w = w.checked_add(ways[p + 1][state + strides[gi]]).ok_or(Error::Overflow)?;
                    }
                }
                ways[p][state] = w;
            }
        }
        let orders = groups.iter().try_fold(1u128, |acc, g| {
            acc.checked_mul(falling(g.members.len(), g.members.len())?).ok_or(Error::Overflow)
        })?;
        let count = ways[0][0].checked_mul(orders).ok_or(Error::Overflow)?;
        Ok(StageProblem { groups, count, solver: Solver::General(Table { positions, owners, strides, ways, orders }) })
    }

    /// Number of placements.
    pub fn count(&self) -> u128 {
        self.count
    }

    /// The placement numbered `r`, as `(template vertex, base vertex)` pairs.
    pub fn unrank(&self, r: u128) -> Result<Vec<(usize, usize)>> {
        if r >= self.count {
            return Err(Error::Logic(format!("rank {r} out of range for {} placements", self.count)));
        }
        let (chosen, mut r) = match &self.solver {
            Solver::Single => (self.groups.iter().map(|g| g.candidates.clone()).collect::<Vec<_>>(), r),
            Solver::General(t) => {
                let mut r_set = r / t.orders;
                let mut chosen = vec![Vec::new(); self.groups.len()];
                let mut state = 0usize;
                for (p, &x) in t.positions.iter().enumerate() {
                    let skip = t.ways[p + 1][state];
                    if r_set < skip {
                        continue;
                    }
                    r_set -= skip;
                    let mut taken = false;
                    for &gi in &t.owners[p] {
                        if chosen[gi].len() == self.groups[gi].members.len() {
                            continue;
                        }
                        let w = t.ways[p + 1][state + t.strides[gi]];
                        if r_set < w {
                            chosen[gi].push(x);
                            state += t.strides[gi];
                            taken = true;
                            break;
                        }
                        r_set -= w;
                    }
                    if !taken {
                        return Err(Error::Logic("stage unranking walked off the table".into()));
                    }
                }
                (chosen, r % t.orders)
            }
        };
        // Mixed-radix decoding of the order in which each group's members
        // take their chosen base vertices.
        let mut placement = Vec::new();
        for (g, mut pool) in self.groups.iter().zip(chosen) {
            for &v in &g.members {
                let radix = pool.len() as u128;
                let idx = (r % radix) as usize;
                r /= radix;
                placement.push((v, pool.remove(idx)));
            }
        }
        Ok(placement)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use itertools::Itertools;
    use proptest::prelude::*;
    use std::collections::HashSet;

    fn brute(groups: &[Group], universe: usize) -> HashSet<Vec<(usize, usize)>> {
        let members: Vec<(usize, &Vec<usize>)> =
            groups.iter().flat_map(|g| g.members.iter().map(move |&v| (v, &g.candidates))).collect();
        (0..universe)
            .permutations(members.len())
            .filter(|img| members.iter().zip(img).all(|((_, c), x)| c.contains(x)))
            .map(|img| members.iter().map(|&(v, _)| v).zip(img).collect())
            .collect()
    }

    fn check(groups: Vec<Group>, universe: usize) {
        let expected = brute(&groups, universe);
        let sp = StageProblem::new(groups).unwrap();
        assert_eq!(sp.count(), expected.len() as u128);
        let mut seen = HashSet::new();
        for r in 0..sp.count() {
            let p = sp.unrank(r).unwrap();
            assert!(expected.contains(&p), "{p:?}");
            assert!(seen.insert(p));
        }
        assert!(sp.unrank(sp.count()).is_err());
    }

    #[test]
    fn trivial_stages() {
        // Star stage: one anchor with three available neighbours, two leaves.
        let star = StageProblem::new(vec![Group { members: vec![1, 2], candidates: vec![4, 5, 6] }]).unwrap();
        assert_eq!(star.count(), 6);
        let free = StageProblem::new(vec![Group { members: vec![0], candidates: (0..5).collect() }]).unwrap();
        assert_eq!(free.count(), 5);
        let closing = StageProblem::new(vec![Group { members: vec![2], candidates: vec![1, 3] }]).unwrap();
        assert_eq!(closing.count(), 2);
        assert_eq!(StageProblem::new(vec![]).unwrap().count(), 1);
        let none = StageProblem::new(vec![Group { members: vec![0, 1], candidates: vec![3] }]).unwrap();
        assert_eq!(none.count(), 0);
        assert!(none.unrank(0).is_err());
    }

    #[test]
    fn overlapping_groups() {
        check(
            vec![
                Group { members: vec![0, 1], candidates: vec![0, 1, 2] },
                Group { members: vec![2], candidates: vec![1, 2, 3] },
                Group { members: vec![3], candidates: vec![2] },
            ],
            4,
        );
    }

    fn groups_strategy() -> impl Strategy<Value = Vec<Group>> {
        proptest::collection::vec((1usize..=2, proptest::collection::btree_set(0usize..6, 0..=6)), 1..=3).prop_map(
            |spec| {
                let mut next = 0;
                spec.into_iter()
                    .map(|(k, cands)| {
                        let members = (next..next + k).collect();
                        next += k;
                        Group { members, candidates: cands.into_iter().collect() }
                    })
                    .collect()
            },
        )
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(400))]
        #[test]
        fn count_and_unrank_match_enumeration(groups in groups_strategy()) {
            check(groups, 6);
        }
    }
}
