use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use hashbrown::HashSet;

use crate::group::FiniteGroup;
use crate::setcover::min_cover;
use crate::{Error, Limits, Result};

/// The normal cyclic covering number by exhaustive search.
///
/// Shares no code with [`super::ncc`] beyond the group itself: every cyclic
/// subgroup (not only the maximal ones) is a candidate, its conjugacy class
/// is formed by conjugating with every element, and an exact set cover over
/// the conjugacy classes of elements picks the fewest classes whose union is
/// the group.
pub fn ncc_oracle(g: &FiniteGroup, limits: &Limits) -> Result<usize> {
    let n = g.order();
    if n > limits.oracle {
        return Err(Error::SizeCap {
            what: "NCC oracle",
            order: n,
            cap: limits.oracle,
        });
    }
    // element conjugacy classes by brute force
    let mut class_of = vec![usize::MAX; n];
    let mut class_count = 0;
    for x in g.elements() {
        if class_of[x as usize] != usize::MAX {
            continue;
        }
        for y in g.elements() {
            let c = g.mul(g.mul(g.inv(y), x), y);
            class_of[c as usize] = class_count;
        }
        class_count += 1;
    }
    // distinct cyclic subgroups, then their conjugacy classes
    let mut cyclic: HashSet<Vec<u32>> = HashSet::new();
    for x in g.elements() {
        let mut c = g.powers(x);
        c.sort_unstable();
        cyclic.insert(c);
    }
    let mut cyclic: Vec<Vec<u32>> = cyclic.into_iter().collect();
    cyclic.sort();
    let mut seen: HashSet<Vec<u32>> = HashSet::new();
    let mut sets = Vec::new();
    for c in &cyclic {
        if seen.contains(c) {
            continue;
        }
        let mut covers = FixedBitSet::with_capacity(class_count);
        for y in g.elements() {
            let mut conj: Vec<u32> = c.iter().map(|&x| g.mul(g.mul(g.inv(y), x), y)).collect();
            conj.sort_unstable();
            for &x in &conj {
                covers.insert(class_of[x as usize]);
            }
            seen.insert(conj);
        }
        sets.push(covers);
    }
    let cover = min_cover(class_count, &sets).ok_or_else(|| {
        Error::NotAGroup("cyclic subgroups fail to cover the group".into())
    })?;
    Ok(cover.chosen.len())
}
