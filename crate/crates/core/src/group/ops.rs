use alloc::format;
use alloc::vec;
use alloc::vec::Vec;

use super::{close, Elem, FiniteGroup, Law, SubgroupHandle};
use crate::{Error, Limits, Result};

struct ProductLaw(FiniteGroup, FiniteGroup);

impl Law for ProductLaw {
    type Form = (Elem, Elem);

    fn op(&self, a: &(Elem, Elem), b: &(Elem, Elem)) -> (Elem, Elem) {
        (self.0.mul(a.0, b.0), self.1.mul(a.1, b.1))
    }
}

/// `G × H` with componentwise multiplication. The second value gives the
/// coordinates of every element, i.e. both projections.
pub fn direct_product(
    g: &FiniteGroup,
    h: &FiniteGroup,
    limits: &Limits,
) -> Result<(FiniteGroup, Vec<(Elem, Elem)>)> {
    let predicted = g.order() * h.order();
    if predicted > limits.max_order {
        return Err(Error::OrderCap {
            cap: limits.max_order,
            reached: predicted,
        });
    }
    let mut gens: Vec<(Elem, Elem)> = g.generators().iter().map(|&s| (s, 0)).collect();
    gens.extend(h.generators().iter().map(|&t| (0, t)));
    let label = format!("({}) x ({})", g.label(), h.label());
    close(ProductLaw(g.clone(), h.clone()), (0, 0), &gens, label, limits)
}

/// A quotient group together with the natural projection.
#[derive(Debug, Clone)]
pub struct Quotient {
    pub group: FiniteGroup,
    /// `projection[g]` is the image of parent element `g`.
    pub projection: Vec<Elem>,
}

impl Quotient {
    pub fn project(&self, g: Elem) -> Elem {
        self.projection[g as usize]
    }
}

struct CosetLaw {
    parent: FiniteGroup,
    coset: Vec<u32>,
    reps: Vec<Elem>,
}

impl Law for CosetLaw {
    type Form = u32;

    fn op(&self, a: &u32, b: &u32) -> u32 {
        self.coset[self.parent.mul(self.reps[*a as usize], self.reps[*b as usize]) as usize]
    }
}

/// `G/N` for a normal subgroup `N`, verified exhaustively.
pub fn quotient(g: &FiniteGroup, n: &SubgroupHandle, limits: &Limits) -> Result<Quotient> {
    if !n.parent().same(g) {
        return Err(Error::ForeignSubgroup);
    }
    if let Some((x, y)) = n.normality_witness() {
        return Err(Error::NotNormal { g: x, n: y });
    }
    let mut coset = vec![u32::MAX; g.order()];
    let mut reps = Vec::new();
    for x in g.elements() {
        if coset[x as usize] != u32::MAX {
            continue;
        }
        let id = reps.len() as u32;
        for &m in n.elements() {
            coset[g.mul(x, m) as usize] = id;
        }
        reps.push(x);
    }
    let gens: Vec<u32> = g.generators().iter().map(|&s| coset[s as usize]).collect();
    let label = format!("({}) / [order {}]", g.label(), n.order());
    let law = CosetLaw {
        parent: g.clone(),
        coset: coset.clone(),
        reps,
    };
    let (group, forms) = close(law, 0u32, &gens, label, limits)?;
    // forms[i] is the coset id of new element i
    let mut by_coset = vec![0 as Elem; forms.len()];
    for (i, &c) in forms.iter().enumerate() {
        by_coset[c as usize] = i as Elem;
    }
    let projection = coset.iter().map(|&c| by_coset[c as usize]).collect();
    Ok(Quotient { group, projection })
}

/// The conjugacy classes of a group.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConjugacyClasses {
    /// Classes ordered by least element; each class is sorted.
    pub classes: Vec<Vec<Elem>>,
    /// Class index of every element.
    pub class_of: Vec<u32>,
}

impl ConjugacyClasses {
    pub fn len(&self) -> usize {
        self.classes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.classes.is_empty()
    }

    pub fn sizes(&self) -> Vec<usize> {
        self.classes.iter().map(Vec::len).collect()
    }
}

/// Conjugacy classes as orbits of conjugation by the generators.
pub fn conjugacy_classes(g: &FiniteGroup) -> ConjugacyClasses {
    let n = g.order();
    let gens = g.generators();
    let mut class_of = vec![u32::MAX; n];
    let mut classes = Vec::new();
    for x in g.elements() {
        if class_of[x as usize] != u32::MAX {
            continue;
        }
        let id = classes.len() as u32;
        class_of[x as usize] = id;
        let mut orbit = vec![x];
        let mut i = 0;
        while i < orbit.len() {
            for &s in gens {
                let y = g.conj(orbit[i], s);
                if class_of[y as usize] == u32::MAX {
                    class_of[y as usize] = id;
                    orbit.push(y);
                }
            }
            i += 1;
        }
        orbit.sort_unstable();
        classes.push(orbit);
    }
    ConjugacyClasses { classes, class_of }
}

pub fn centralizer(g: &FiniteGroup, x: Elem) -> SubgroupHandle {
    let elems = g
        .elements()
        .filter(|&y| g.mul(x, y) == g.mul(y, x))
        .collect();
    SubgroupHandle::from_sorted_unchecked(g, elems)
}

/// The center: elements commuting with every generator, hence with every
/// element.
pub fn center(g: &FiniteGroup) -> SubgroupHandle {
    let gens = g.generators();
    let elems = g
        .elements()
        .filter(|&y| gens.iter().all(|&s| g.mul(s, y) == g.mul(y, s)))
        .collect();
    SubgroupHandle::from_sorted_unchecked(g, elems)
}

/// Smallest subgroup containing `seeds` that is normalized by every element
/// of `conjugators`.
pub(crate) fn normal_closure_under(
    g: &FiniteGroup,
    conjugators: &[Elem],
    seeds: &[Elem],
) -> SubgroupHandle {
    let mut gens: Vec<Elem> = Vec::new();
    let mut h = SubgroupHandle::trivial(g);
    for &s in seeds {
        if !h.contains(s) {
            gens.push(s);
            h = SubgroupHandle::generated(g, &gens);
        }
    }
    loop {
        let mut grew = false;
        let mut i = 0;
        while i < gens.len() {
            for &c in conjugators {
                let y = g.conj(gens[i], c);
                if !h.contains(y) {
                    gens.push(y);
                    h = SubgroupHandle::generated(g, &gens);
                    grew = true;
                }
            }
            i += 1;
        }
        if !grew {
            return h;
        }
    }
}

/// The normal closure of `seeds` in `g`.
pub fn normal_closure(g: &FiniteGroup, seeds: &[Elem]) -> SubgroupHandle {
    normal_closure_under(g, g.generators(), seeds)
}

/// `[H, H]` for a subgroup `H` (the whole group when `h` is `None`).
pub fn commutator_subgroup(g: &FiniteGroup, h: Option<&SubgroupHandle>) -> SubgroupHandle {
    let gens = match h {
        Some(h) => h.generators(),
        None => g.generators().to_vec(),
    };
    let mut seeds = Vec::new();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            seeds.push(g.commutator(a, b));
        }
    }
    normal_closure_under(g, &gens, &seeds)
}

/// Orders along the derived series, stopping at the first repeat.
pub fn derived_series_orders(g: &FiniteGroup) -> Vec<usize> {
    let mut orders = vec![g.order()];
    let mut current = SubgroupHandle::whole(g);
    loop {
        let next = commutator_subgroup(g, Some(&current));
        if next.order() == current.order() {
            return orders;
        }
        orders.push(next.order());
        current = next;
    }
}

/// Exponent `d` with `order = p^d`, if any.
pub(crate) fn p_power_exponent(order: usize, p: u64) -> Option<u32> {
    let mut n = order as u64;
    let mut d = 0;
    while n > 1 {
        if n % p != 0 {
            return None;
        }
        n /= p;
        d += 1;
    }
    Some(d)
}

pub(crate) fn is_prime(p: u64) -> bool {
    p >= 2 && (2..).take_while(|d| d * d <= p).all(|d| p % d != 0)
}

/// The Frattini subgroup `[P, P]·P^p` of a finite `p`-group.
pub fn frattini_pgroup(g: &FiniteGroup, p: u64) -> Result<SubgroupHandle> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    if p_power_exponent(g.order(), p).is_none() {
        return Err(Error::NotPGroup {
            order: g.order(),
            p,
        });
    }
    let mut seeds: Vec<Elem> = Vec::new();
    let mut is_seed = vec![false; g.order()];
    for x in g.elements() {
        let y = g.pow(x, p);
        if !is_seed[y as usize] {
            is_seed[y as usize] = true;
            seeds.push(y);
        }
    }
    let gens = g.generators();
    for (i, &a) in gens.iter().enumerate() {
        for &b in &gens[i + 1..] {
            let c = g.commutator(a, b);
            if !is_seed[c as usize] {
                is_seed[c as usize] = true;
                seeds.push(c);
            }
        }
    }
    Ok(normal_closure(g, &seeds))
}
