use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashSet;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::cyclic::CyclicLattice;
use crate::group::{Elem, FiniteGroup, SubgroupHandle};
use crate::{Error, Limits, Result};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ActionKind {
    /// Conjugation by the elements of an ambient group.
    Inner,
    Explicit,
}

/// A group `Φ` acting on `group` by automorphisms, given by generators of
/// `Φ` as permutations of element indices.
#[derive(Debug, Clone)]
pub struct AutAction {
    pub group: FiniteGroup,
    pub actors: Vec<Vec<Elem>>,
    pub kind: ActionKind,
}

impl AutAction {
    /// Conjugation of a group on itself.
    pub fn inner(g: &FiniteGroup) -> Self {
        let actors = g
            .generators()
            .iter()
            .map(|&s| g.elements().map(|x| g.conj(x, s)).collect())
            .collect();
        Self {
            group: g.clone(),
            actors,
            kind: ActionKind::Inner,
        }
    }

    /// Conjugation by the ambient group on a normal subgroup `h`. The acted-on
    /// group is `h` renumbered as a group in its own right; the returned
    /// embedding maps its elements back into the ambient group.
    pub fn conjugation_on(h: &SubgroupHandle, limits: &Limits) -> Result<(Self, Vec<Elem>)> {
        let g = h.parent();
        if let Some((x, n)) = h.normality_witness() {
            return Err(Error::NotNormal { g: x, n });
        }
        let (sub, embedding) = h.to_group(format!("{} (normal subgroup)", g.label()), limits)?;
        let mut back = vec![Elem::MAX; g.order()];
        for (i, &x) in embedding.iter().enumerate() {
            back[x as usize] = i as Elem;
        }
        let actors = g
            .generators()
            .iter()
            .map(|&s| {
                embedding
                    .iter()
                    .map(|&x| back[g.conj(x, s) as usize])
                    .collect()
            })
            .collect();
        Ok((
            Self {
                group: sub,
                actors,
                kind: ActionKind::Inner,
            },
            embedding,
        ))
    }

    /// An action by explicitly given automorphisms, each checked to be a
    /// bijective homomorphism (on all pairs up to order 500, on 10⁵ random
    /// pairs above).
    pub fn explicit(group: &FiniteGroup, actors: Vec<Vec<Elem>>) -> Result<Self> {
        let action = Self {
            group: group.clone(),
            actors,
            kind: ActionKind::Explicit,
        };
        action.validate(0x5eed).map_err(Error::InvalidParameter)?;
        Ok(action)
    }

    pub fn validate(&self, seed: u64) -> Result<(), String> {
        let g = &self.group;
        let n = g.order();
        for (k, phi) in self.actors.iter().enumerate() {
            if phi.len() != n {
                return Err(format!("actor {k} has {} images for {n} elements", phi.len()));
            }
            let mut seen = vec![false; n];
            for &y in phi {
                if y as usize >= n || core::mem::replace(&mut seen[y as usize], true) {
                    return Err(format!("actor {k} is not a bijection"));
                }
            }
            let check = |a: Elem, b: Elem| {
                if phi[g.mul(a, b) as usize] != g.mul(phi[a as usize], phi[b as usize]) {
                    Err(format!("actor {k} is not a homomorphism at ({a}, {b})"))
                } else {
                    Ok(())
                }
            };
            if n <= 500 {
                for a in g.elements() {
                    for b in g.elements() {
                        check(a, b)?;
                    }
                }
            } else {
                let mut rng = ChaCha8Rng::seed_from_u64(seed);
                for _ in 0..100_000 {
                    check(rng.random_range(0..n as Elem), rng.random_range(0..n as Elem))?;
                }
            }
        }
        Ok(())
    }

    /// The `Φ`-orbit of a subset, as sorted element vectors.
    pub fn orbit_of_set(&self, set: &[Elem]) -> Vec<Vec<Elem>> {
        let mut start = set.to_vec();
        start.sort_unstable();
        let mut seen: HashSet<Vec<Elem>> = HashSet::new();
        seen.insert(start.clone());
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            for phi in &self.actors {
                let mut image: Vec<Elem> = orbit[i].iter().map(|&x| phi[x as usize]).collect();
                image.sort_unstable();
                if seen.insert(image.clone()) {
                    orbit.push(image);
                }
            }
            i += 1;
        }
        orbit
    }
}

/// A covering number together with the subgroups realizing it.
#[derive(Debug, Clone)]
pub struct CoverCertificate {
    pub value: usize,
    /// One subgroup per chosen orbit; their full orbits cover the group.
    pub witnesses: Vec<SubgroupHandle>,
    /// Number of orbits of maximal cyclic (for NAC: maximal abelian)
    /// subgroups.
    pub orbit_count: usize,
}

impl CoverCertificate {
    /// Checks element by element that the orbits of the witnesses cover the
    /// acted-on group.
    pub fn verify(&self, action: &AutAction) -> Result<(), String> {
        let g = &action.group;
        if self.witnesses.len() != self.value {
            return Err(format!(
                "{} witnesses for value {}",
                self.witnesses.len(),
                self.value
            ));
        }
        let mut covered = vec![false; g.order()];
        for w in &self.witnesses {
            if !w.parent().same(g) {
                return Err("witness lives in a different group".into());
            }
            w.verify()?;
            for set in action.orbit_of_set(w.elements()) {
                for x in set {
                    covered[x as usize] = true;
                }
            }
        }
        match covered.iter().position(|&c| !c) {
            Some(x) => Err(format!("element {x} is not covered")),
            None => Ok(()),
        }
    }
}

/// Orbits of the action on the maximal cyclic subgroups; each orbit is
/// listed by lattice index, orbits ordered by their least index.
pub(crate) fn maximal_cyclic_orbits(action: &AutAction, lattice: &CyclicLattice) -> Vec<Vec<usize>> {
    let mut orbit_of = vec![usize::MAX; lattice.len()];
    let mut orbits = Vec::new();
    for start in lattice.maximal_ids() {
        if orbit_of[start] != usize::MAX {
            continue;
        }
        let id = orbits.len();
        orbit_of[start] = id;
        let mut orbit = vec![start];
        let mut i = 0;
        while i < orbit.len() {
            let x = lattice.generator[orbit[i]];
            for phi in &action.actors {
                let image = lattice.id_of[phi[x as usize] as usize] as usize;
                if orbit_of[image] == usize::MAX {
                    orbit_of[image] = id;
                    orbit.push(image);
                }
            }
            i += 1;
        }
        orbits.push(orbit);
    }
    orbits
}

/// `CC(G, Φ)`: a minimal cover by `Φ`-orbits of cyclic subgroups needs
/// exactly one orbit of maximal cyclic subgroups per orbit, since every
/// cyclic subgroup lies in a maximal one and a maximal one is covered only by
/// itself.
pub fn cc(action: &AutAction) -> CoverCertificate {
    let g = &action.group;
    let lattice = CyclicLattice::new(g);
    let orbits = maximal_cyclic_orbits(action, &lattice);
    let witnesses: Vec<SubgroupHandle> = orbits.iter().map(|o| lattice.handle(g, o[0])).collect();
    CoverCertificate {
        value: orbits.len(),
        orbit_count: orbits.len(),
        witnesses,
    }
}

/// The normal cyclic covering number: the number of conjugacy classes of
/// maximal cyclic subgroups.
pub fn ncc(g: &FiniteGroup) -> CoverCertificate {
    cc(&AutAction::inner(g))
}
