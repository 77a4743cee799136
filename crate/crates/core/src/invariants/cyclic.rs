use alloc::collections::BTreeSet;
use alloc::vec;
use alloc::vec::Vec;

use crate::group::iso::prime_factors;
use crate::group::{gcd, Elem, FiniteGroup, SubgroupHandle};

/// Every cyclic subgroup of a group, indexed by discovery order of its least
/// generator.
#[derive(Debug, Clone)]
pub struct CyclicLattice {
    /// Least generator of each cyclic subgroup.
    pub generator: Vec<Elem>,
    /// Order of each cyclic subgroup.
    pub order: Vec<u32>,
    /// For each element `x`, the index of `⟨x⟩`.
    pub id_of: Vec<u32>,
    /// Whether each subgroup is maximal among cyclic subgroups.
    pub maximal: Vec<bool>,
}

impl CyclicLattice {
    pub fn new(g: &FiniteGroup) -> Self {
        let n = g.order();
        let mut id_of = vec![u32::MAX; n];
        let mut generator = Vec::new();
        let mut order = Vec::new();
        for x in g.elements() {
            if id_of[x as usize] != u32::MAX {
                continue;
            }
            let id = generator.len() as u32;
            let powers = g.powers(x);
            let m = powers.len();
            for (j, &y) in powers.iter().enumerate() {
                if gcd(j, m) == 1 || m == 1 {
                    id_of[y as usize] = id;
                }
            }
            generator.push(x);
            order.push(m as u32);
        }
        // ⟨x⟩ is not maximal iff it is ⟨h^q⟩ for some cyclic ⟨h⟩ and prime q
        // dividing the order of h.
        let mut maximal = vec![true; generator.len()];
        for (&h, &m) in generator.iter().zip(&order) {
            for q in prime_factors(m as usize) {
                let below = id_of[g.pow(h, q as u64) as usize];
                maximal[below as usize] = false;
            }
        }
        Self {
            generator,
            order,
            id_of,
            maximal,
        }
    }

    pub fn len(&self) -> usize {
        self.generator.len()
    }

    pub fn is_empty(&self) -> bool {
        self.generator.is_empty()
    }

    /// Indices of the maximal cyclic subgroups.
    pub fn maximal_ids(&self) -> Vec<usize> {
        (0..self.len()).filter(|&i| self.maximal[i]).collect()
    }

    pub fn handle(&self, g: &FiniteGroup, id: usize) -> SubgroupHandle {
        let mut elems = g.powers(self.generator[id]);
        elems.sort_unstable();
        SubgroupHandle::from_sorted_unchecked(g, elems)
    }
}

/// One handle per distinct cyclic subgroup.
pub fn cyclic_subgroups(g: &FiniteGroup) -> Vec<SubgroupHandle> {
    let lattice = CyclicLattice::new(g);
    (0..lattice.len()).map(|i| lattice.handle(g, i)).collect()
}

/// The cyclic subgroups not properly contained in another cyclic subgroup.
pub fn maximal_cyclic_subgroups(g: &FiniteGroup) -> Vec<SubgroupHandle> {
    let lattice = CyclicLattice::new(g);
    lattice
        .maximal_ids()
        .into_iter()
        .map(|i| lattice.handle(g, i))
        .collect()
}

/// Primitive element orders: the orders of the maximal cyclic subgroups.
pub fn peo(g: &FiniteGroup) -> BTreeSet<u32> {
    let lattice = CyclicLattice::new(g);
    lattice.maximal_ids().into_iter().map(|i| lattice.order[i]).collect()
}

/// Maximal element orders: orders `k > 1` such that no element has order a
/// proper multiple of `k`.
pub fn meo(g: &FiniteGroup) -> BTreeSet<u32> {
    let orders: BTreeSet<u32> = g.element_orders().iter().copied().collect();
    orders
        .iter()
        .copied()
        .filter(|&k| k > 1 && !orders.iter().any(|&m| m != k && m % k == 0))
        .collect()
}
