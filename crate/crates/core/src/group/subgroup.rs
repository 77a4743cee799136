use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;
use core::fmt;

use super::build::greedy_generators;
use super::{close, Elem, FiniteGroup, Law};
use crate::{Error, Limits, Result};

/// A subgroup of a [`FiniteGroup`], held as the sorted list of its element
/// indices.
#[derive(Clone)]
pub struct SubgroupHandle {
    parent: FiniteGroup,
    elements: Vec<Elem>,
}

impl fmt::Debug for SubgroupHandle {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("SubgroupHandle")
            .field("parent", &self.parent.label())
            .field("order", &self.order())
            .finish()
    }
}

impl PartialEq for SubgroupHandle {
    fn eq(&self, other: &Self) -> bool {
        self.parent.same(&other.parent) && self.elements == other.elements
    }
}

impl Eq for SubgroupHandle {}

impl SubgroupHandle {
    /// The subgroup generated by `seeds`.
    pub fn generated(parent: &FiniteGroup, seeds: &[Elem]) -> Self {
        let mut member = vec![false; parent.order()];
        member[0] = true;
        let mut elems = vec![0];
        let seeds: Vec<Elem> = seeds.iter().copied().filter(|&s| s != 0).collect();
        let mut i = 0;
        while i < elems.len() {
            for &s in &seeds {
                let y = parent.mul(elems[i], s);
                if !member[y as usize] {
                    member[y as usize] = true;
                    elems.push(y);
                }
            }
            i += 1;
        }
        elems.sort_unstable();
        Self {
            parent: parent.clone(),
            elements: elems,
        }
    }

    /// Wraps an element set, checking closure, identity and Lagrange.
    pub fn from_elements(parent: &FiniteGroup, mut elements: Vec<Elem>) -> Result<Self> {
        elements.sort_unstable();
        elements.dedup();
        let h = Self {
            parent: parent.clone(),
            elements,
        };
        h.verify().map_err(Error::NotAGroup)?;
        Ok(h)
    }

    /// Trusted constructor for sets already known to be subgroups.
    pub(crate) fn from_sorted_unchecked(parent: &FiniteGroup, elements: Vec<Elem>) -> Self {
        debug_assert!(elements.windows(2).all(|w| w[0] < w[1]));
        Self {
            parent: parent.clone(),
            elements,
        }
    }

    pub fn whole(parent: &FiniteGroup) -> Self {
        Self {
            parent: parent.clone(),
            elements: parent.elements().collect(),
        }
    }

    pub fn trivial(parent: &FiniteGroup) -> Self {
        Self {
            parent: parent.clone(),
            elements: vec![0],
        }
    }

    pub fn parent(&self) -> &FiniteGroup {
        &self.parent
    }

    pub fn elements(&self) -> &[Elem] {
        &self.elements
    }

    pub fn order(&self) -> usize {
        self.elements.len()
    }

    pub fn index(&self) -> usize {
        self.parent.order() / self.order()
    }

    pub fn contains(&self, x: Elem) -> bool {
        self.elements.binary_search(&x).is_ok()
    }

    pub fn is_subgroup_of(&self, other: &SubgroupHandle) -> bool {
        self.elements.iter().all(|&x| other.contains(x))
    }

    /// Membership mask over the parent's elements.
    pub fn mask(&self) -> Vec<bool> {
        let mut m = vec![false; self.parent.order()];
        for &x in &self.elements {
            m[x as usize] = true;
        }
        m
    }

    /// Closure, identity and Lagrange checks.
    pub fn verify(&self) -> Result<(), String> {
        let g = &self.parent;
        if self.elements.iter().any(|&x| x as usize >= g.order()) {
            return Err("element index out of range".into());
        }
        if !self.contains(0) {
            return Err("identity missing".into());
        }
        let mask = self.mask();
        for &a in &self.elements {
            if !mask[g.inv(a) as usize] {
                return Err(format!("inverse of {a} missing"));
            }
            for &b in &self.elements {
                let c = g.mul(a, b);
                if !mask[c as usize] {
                    return Err(format!("product of {a} and {b} missing"));
                }
            }
        }
        if g.order() % self.order() != 0 {
            return Err(format!(
                "order {} does not divide {}",
                self.order(),
                g.order()
            ));
        }
        Ok(())
    }

    /// Exhaustive normality check over all pairs; on failure returns the
    /// witness `(g, n)` with `g⁻¹ n g` outside the subgroup.
    pub fn normality_witness(&self) -> Option<(Elem, Elem)> {
        let g = &self.parent;
        let mask = self.mask();
        for x in g.elements() {
            for &n in &self.elements {
                if !mask[g.conj(n, x) as usize] {
                    return Some((x, n));
                }
            }
        }
        None
    }

    pub fn is_normal(&self) -> bool {
        self.normality_witness().is_none()
    }

    /// A small generating set chosen greedily in index order.
    pub fn generators(&self) -> Vec<Elem> {
        let g = &self.parent;
        greedy_generators(g.order(), self.elements.iter().copied(), 0, |a, b| {
            g.mul(a, b)
        })
    }

    /// The subgroup as a group in its own right, together with the embedding
    /// of its elements into the parent.
    pub fn to_group(&self, label: impl Into<String>, limits: &Limits) -> Result<(FiniteGroup, Vec<Elem>)> {
        let gens = self.generators();
        close(
            Restriction(self.parent.clone()),
            0,
            &gens,
            label,
            limits,
        )
    }
}

struct Restriction(FiniteGroup);

impl Law for Restriction {
    type Form = Elem;

    fn op(&self, a: &Elem, b: &Elem) -> Elem {
        self.0.mul(*a, *b)
    }
}
