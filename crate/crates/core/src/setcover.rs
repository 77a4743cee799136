//! Exact minimum set cover by branch and bound.

use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;

/// A minimum cover: indices into the input family, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Cover {
    pub chosen: Vec<usize>,
    /// Search nodes visited, for diagnostics.
    pub nodes: u64,
}

/// Finds a minimum subfamily of `sets` whose union is `0..universe`.
///
/// Returns `None` when the whole family does not cover the universe. Ties
/// between optimal covers are broken deterministically: sets are tried in
/// order of decreasing new coverage, then by lowest index.
pub fn min_cover(universe: usize, sets: &[FixedBitSet]) -> Option<Cover> {
    if universe == 0 {
        return Some(Cover {
            chosen: Vec::new(),
            nodes: 0,
        });
    }
    let sets: Vec<FixedBitSet> = sets
        .iter()
        .map(|s| {
            let mut s = s.clone();
            s.grow(universe);
            s
        })
        .collect();
    let live = undominated(&sets);
    let mut containing: Vec<Vec<usize>> = vec![Vec::new(); universe];
    for &i in &live {
        for e in sets[i].ones().filter(|&e| e < universe) {
            containing[e].push(i);
        }
    }
    if containing.iter().any(Vec::is_empty) {
        return None;
    }
    let mut solver = Solver {
        universe,
        sets: &sets,
        containing: &containing,
        best: greedy(universe, &sets, &live),
        current: Vec::new(),
        nodes: 0,
    };
    let covered = FixedBitSet::with_capacity(universe);
    solver.search(&covered);
    let mut chosen = solver.best;
    chosen.sort_unstable();
    Some(Cover {
        chosen,
        nodes: solver.nodes,
    })
}

/// Drops duplicate sets and sets strictly contained in another; a minimum
/// cover never needs them.
fn undominated(sets: &[FixedBitSet]) -> Vec<usize> {
    let mut keep = Vec::new();
    'outer: for (i, s) in sets.iter().enumerate() {
        if s.is_clear() {
            continue;
        }
        for (j, t) in sets.iter().enumerate() {
            if i == j || !s.is_subset(t) {
                continue;
            }
            if !t.is_subset(s) || j < i {
                continue 'outer;
            }
        }
        keep.push(i);
    }
    keep
}

fn greedy(universe: usize, sets: &[FixedBitSet], live: &[usize]) -> Vec<usize> {
    let mut covered = FixedBitSet::with_capacity(universe);
    let mut chosen = Vec::new();
    while covered.count_ones(..) < universe {
        let mut best = (0, usize::MAX);
        for &i in live {
            let gain = sets[i].difference(&covered).count();
            if gain > best.0 {
                best = (gain, i);
            }
        }
        covered.union_with(&sets[best.1]);
        chosen.push(best.1);
    }
    chosen
}

struct Solver<'a> {
    universe: usize,
    sets: &'a [FixedBitSet],
    containing: &'a [Vec<usize>],
    best: Vec<usize>,
    current: Vec<usize>,
    nodes: u64,
}

impl Solver<'_> {
    /// Uncovered elements whose candidate sets are pairwise disjoint each
    /// need their own set.
    fn lower_bound(&self, covered: &FixedBitSet) -> usize {
        let mut uncovered: Vec<usize> = (0..self.universe).filter(|&e| !covered[e]).collect();
        uncovered.sort_by_key(|&e| (self.containing[e].len(), e));
        let mut blocked = FixedBitSet::with_capacity(self.sets.len());
        let mut bound = 0;
        for e in uncovered {
            if self.containing[e].iter().all(|&s| !blocked[s]) {
                bound += 1;
                for &s in &self.containing[e] {
                    blocked.insert(s);
                }
            }
        }
        bound
    }

    fn search(&mut self, covered: &FixedBitSet) {
        self.nodes += 1;
        let pivot = (0..self.universe)
            .filter(|&e| !covered[e])
            .min_by_key(|&e| (self.containing[e].len(), e));
        let Some(pivot) = pivot else {
            if self.current.len() < self.best.len() {
                self.best = self.current.clone();
            }
            return;
        };
        if self.current.len() + self.lower_bound(covered) >= self.best.len() {
            return;
        }
        let mut options: Vec<(usize, usize)> = self.containing[pivot]
            .iter()
            .map(|&s| (self.sets[s].difference(covered).count(), s))
            .collect();
        options.sort_by(|a, b| b.0.cmp(&a.0).then(a.1.cmp(&b.1)));
        for (_, s) in options {
            let mut next = covered.clone();
            next.union_with(&self.sets[s]);
            self.current.push(s);
            self.search(&next);
            self.current.pop();
            if self.current.len() + 1 >= self.best.len() {
                // no cover through this node can beat the incumbent
                return;
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn family(universe: usize, sets: &[&[usize]]) -> Vec<FixedBitSet> {
        sets.iter()
            .map(|s| {
                let mut b = FixedBitSet::with_capacity(universe);
                for &e in *s {
                    b.insert(e);
                }
                b
            })
            .collect()
    }

    #[test]
    fn greedy_is_not_optimal_here() {
        // greedy takes the big middle set first and then needs two more
        let sets = family(6, &[&[0, 1, 2], &[3, 4, 5], &[1, 2, 3, 4]]);
        let cover = min_cover(6, &sets).unwrap();
        assert_eq!(cover.chosen, vec![0, 1]);
    }

    #[test]
    fn uncoverable() {
        let sets = family(3, &[&[0], &[1]]);
        assert!(min_cover(3, &sets).is_none());
    }

    #[test]
    fn ties_prefer_low_indices() {
        let sets = family(2, &[&[0, 1], &[0, 1], &[0]]);
        assert_eq!(min_cover(2, &sets).unwrap().chosen, vec![0]);
    }

    #[test]
    fn matches_exhaustive_search() {
        use rand::{Rng, SeedableRng};
        let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(7);
        for _ in 0..200 {
            let universe = rng.random_range(1..9);
            let count = rng.random_range(1..9);
            let sets: Vec<FixedBitSet> = (0..count)
                .map(|_| {
                    let mut b = FixedBitSet::with_capacity(universe);
                    for e in 0..universe {
                        if rng.random_bool(0.35) {
                            b.insert(e);
                        }
                    }
                    b
                })
                .collect();
            let mut brute: Option<usize> = None;
            for mask in 0u32..(1 << count) {
                let mut u = FixedBitSet::with_capacity(universe);
                for (i, s) in sets.iter().enumerate() {
                    if mask >> i & 1 == 1 {
                        u.union_with(s);
                    }
                }
                if u.count_ones(..) == universe {
                    let k = mask.count_ones() as usize;
                    brute = Some(brute.map_or(k, |b| b.min(k)));
                }
            }
            assert_eq!(min_cover(universe, &sets).map(|c| c.chosen.len()), brute);
        }
    }
}
