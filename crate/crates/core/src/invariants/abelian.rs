use alloc::vec;
use alloc::vec::Vec;

use fixedbitset::FixedBitSet;
use hashbrown::HashMap;

use super::action::{maximal_cyclic_orbits, AutAction, CoverCertificate};
use super::cyclic::CyclicLattice;
use crate::group::{center, Elem, FiniteGroup, SubgroupHandle};
use crate::setcover::min_cover;
use crate::{Error, Limits, Result};

fn nac_cap(g: &FiniteGroup, limits: &Limits) -> Result<()> {
    if g.order() > limits.nac {
        return Err(Error::SizeCap {
            what: "maximal abelian subgroups",
            order: g.order(),
            cap: limits.nac,
        });
    }
    Ok(())
}

/// The maximal abelian subgroups, found as the maximal cliques of the
/// commuting graph. Central elements lie in every clique, so the search runs
/// on the non-central part only.
pub fn maximal_abelian_subgroups(g: &FiniteGroup, limits: &Limits) -> Result<Vec<SubgroupHandle>> {
    nac_cap(g, limits)?;
    let z = center(g);
    let outside: Vec<Elem> = g.elements().filter(|&x| !z.contains(x)).collect();
    let m = outside.len();
    let mut adj = vec![FixedBitSet::with_capacity(m); m];
    for i in 0..m {
        for j in i + 1..m {
            let (a, b) = (outside[i], outside[j]);
            if g.mul(a, b) == g.mul(b, a) {
                adj[i].insert(j);
                adj[j].insert(i);
            }
        }
    }
    let mut cliques = Vec::new();
    let mut all = FixedBitSet::with_capacity(m);
    all.insert_range(..);
    bron_kerbosch(&adj, &mut Vec::new(), all, FixedBitSet::with_capacity(m), &mut cliques);
    let mut out = Vec::with_capacity(cliques.len());
    for clique in cliques {
        let mut elems: Vec<Elem> = clique.iter().map(|&i| outside[i]).collect();
        elems.extend_from_slice(z.elements());
        out.push(SubgroupHandle::from_elements(g, elems)?);
    }
    out.sort_by(|a, b| a.elements().cmp(b.elements()));
    Ok(out)
}

fn bron_kerbosch(
    adj: &[FixedBitSet],
    r: &mut Vec<usize>,
    mut p: FixedBitSet,
    mut x: FixedBitSet,
    out: &mut Vec<Vec<usize>>,
) {
    if p.is_clear() && x.is_clear() {
        out.push(r.clone());
        return;
    }
    let pivot = p
        .ones()
        .chain(x.ones())
        .max_by_key(|&u| (p.intersection(&adj[u]).count(), core::cmp::Reverse(u)))
        .expect("p or x is nonempty");
    let candidates: Vec<usize> = p.difference(&adj[pivot]).collect();
    for v in candidates {
        r.push(v);
        let mut np = p.clone();
        np.intersect_with(&adj[v]);
        let mut nx = x.clone();
        nx.intersect_with(&adj[v]);
        bron_kerbosch(adj, r, np, nx, out);
        r.pop();
        p.set(v, false);
        x.insert(v);
    }
}

/// The normal abelian covering number.
///
/// An abelian subgroup containing an element contains the cyclic subgroup it
/// generates, so covering the group amounts to covering every conjugacy
/// class of maximal cyclic subgroups. The candidate sets are the conjugacy
/// classes of maximal abelian subgroups and the exact minimum is found by
/// set cover.
pub fn nac(g: &FiniteGroup, limits: &Limits) -> Result<CoverCertificate> {
    nac_cap(g, limits)?;
    if g.is_abelian() {
        return Ok(CoverCertificate {
            value: 1,
            witnesses: vec![SubgroupHandle::whole(g)],
            orbit_count: 1,
        });
    }
    let action = AutAction::inner(g);
    let lattice = CyclicLattice::new(g);
    let cyclic_orbits = maximal_cyclic_orbits(&action, &lattice);
    let abelian = maximal_abelian_subgroups(g, limits)?;

    let index: HashMap<&[Elem], usize> = abelian
        .iter()
        .enumerate()
        .map(|(i, a)| (a.elements(), i))
        .collect();
    let mut class_of = vec![usize::MAX; abelian.len()];
    let mut reps = Vec::new();
    for i in 0..abelian.len() {
        if class_of[i] != usize::MAX {
            continue;
        }
        for set in action.orbit_of_set(abelian[i].elements()) {
            let j = *index
                .get(set.as_slice())
                .ok_or_else(|| Error::NotAGroup("conjugate of a maximal abelian subgroup is missing".into()))?;
            class_of[j] = reps.len();
        }
        reps.push(i);
    }

    let sets: Vec<FixedBitSet> = reps
        .iter()
        .map(|&i| {
            let mut s = FixedBitSet::with_capacity(cyclic_orbits.len());
            for (k, orbit) in cyclic_orbits.iter().enumerate() {
                if orbit
                    .iter()
                    .any(|&c| abelian[i].contains(lattice.generator[c]))
                {
                    s.insert(k);
                }
            }
            s
        })
        .collect();
    let cover = min_cover(cyclic_orbits.len(), &sets)
        .ok_or_else(|| Error::NotAGroup("maximal abelian subgroups fail to cover".into()))?;
    Ok(CoverCertificate {
        value: cover.chosen.len(),
        witnesses: cover
            .chosen
            .iter()
            .map(|&k| abelian[reps[k]].clone())
            .collect(),
        orbit_count: reps.len(),
    })
}
