//! Finite groups on canonical element indices.
//!
//! Every group is stored with elements numbered `0..order` in breadth-first
//! discovery order from its generators, the identity always being `0`. Small
//! groups carry a dense Cayley table; larger ones keep the canonical form of
//! each element and multiply on demand.

mod build;
pub(crate) mod iso;
pub(crate) mod ops;
mod perm;
mod subgroup;

use alloc::boxed::Box;
use alloc::string::String;
use alloc::sync::Arc;
use alloc::vec::Vec;
use core::fmt;
use core::hash::Hash;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub use build::close;
pub use iso::{fingerprint, is_isomorphic, isomorphism, IsoFingerprint};
pub use ops::{
    center, centralizer, commutator_subgroup, conjugacy_classes, derived_series_orders,
    direct_product, frattini_pgroup, normal_closure, quotient, ConjugacyClasses, Quotient,
};
pub use perm::{from_generators, from_generators_labeled, Permutation};
pub use subgroup::SubgroupHandle;

use crate::Limits;

/// Index of an element inside its group.
pub type Elem = u32;

/// A binary operation on canonical element forms.
///
/// Implementors must describe an associative law with the forms passed to
/// [`close`] generating a finite group under it.
pub trait Law: Send + Sync + 'static {
    type Form: Clone + Eq + Hash + Send + Sync + 'static;

    fn op(&self, a: &Self::Form, b: &Self::Form) -> Self::Form;
}

pub(crate) trait LazyMul: Send + Sync {
    fn mul(&self, a: Elem, b: Elem) -> Elem;
}

pub(crate) enum Mult {
    Table(Vec<u16>),
    Lazy(Box<dyn LazyMul>),
}

pub(crate) struct GroupData {
    pub(crate) order: usize,
    pub(crate) gens: Vec<Elem>,
    pub(crate) inv: Vec<Elem>,
    pub(crate) orders: Vec<u32>,
    pub(crate) mult: Mult,
    pub(crate) label: String,
}

/// An immutable finite group. Cloning is cheap and clones compare equal by
/// identity (see [`FiniteGroup::same`]).
#[derive(Clone)]
pub struct FiniteGroup {
    pub(crate) data: Arc<GroupData>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("order", &self.order())
            .field("label", &self.label())
            .field("dense", &self.is_dense())
            .finish()
    }
}

impl FiniteGroup {
    pub const IDENTITY: Elem = 0;

    pub fn order(&self) -> usize {
        self.data.order
    }

    pub fn identity(&self) -> Elem {
        Self::IDENTITY
    }

    pub fn label(&self) -> &str {
        &self.data.label
    }

    /// A copy of this group with a different provenance label.
    pub fn relabel(&self, label: impl Into<String>) -> FiniteGroup {
        let d = &self.data;
        let mult = match &d.mult {
            Mult::Table(t) => Mult::Table(t.clone()),
            Mult::Lazy(_) => Mult::Lazy(Box::new(Delegate(self.clone()))),
        };
        FiniteGroup {
            data: Arc::new(GroupData {
                order: d.order,
                gens: d.gens.clone(),
                inv: d.inv.clone(),
                orders: d.orders.clone(),
                mult,
                label: label.into(),
            }),
        }
    }

    /// Generators used to build the group.
    pub fn generators(&self) -> &[Elem] {
        &self.data.gens
    }

    pub fn is_dense(&self) -> bool {
        matches!(self.data.mult, Mult::Table(_))
    }

    /// Whether two handles refer to the same underlying group object.
    pub fn same(&self, other: &FiniteGroup) -> bool {
        Arc::ptr_eq(&self.data, &other.data)
    }

    pub fn elements(&self) -> core::ops::Range<Elem> {
        0..self.data.order as Elem
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        match &self.data.mult {
            Mult::Table(t) => t[a as usize * self.data.order + b as usize] as Elem,
            Mult::Lazy(l) => l.mul(a, b),
        }
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.data.inv[a as usize]
    }

    /// Order of the element `a`.
    #[inline]
    pub fn element_order(&self, a: Elem) -> u32 {
        self.data.orders[a as usize]
    }

    pub fn element_orders(&self) -> &[u32] {
        &self.data.orders
    }

    /// `g⁻¹ x g`.
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a⁻¹ b⁻¹ a b`.
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn pow(&self, a: Elem, e: u64) -> Elem {
        let e = e % u64::from(self.element_order(a));
        let mut acc = Self::IDENTITY;
        let mut base = a;
        let mut e = e;
        while e > 0 {
            if e & 1 == 1 {
                acc = self.mul(acc, base);
            }
            base = self.mul(base, base);
            e >>= 1;
        }
        acc
    }

    /// The cyclic subgroup `⟨a⟩` listed as `[1, a, a², …]`.
    pub fn powers(&self, a: Elem) -> Vec<Elem> {
        let mut out = Vec::with_capacity(self.element_order(a) as usize);
        let mut x = Self::IDENTITY;
        loop {
            out.push(x);
            x = self.mul(x, a);
            if x == Self::IDENTITY {
                return out;
            }
        }
    }

    pub fn is_abelian(&self) -> bool {
        let gens = self.generators();
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    pub fn is_cyclic(&self) -> bool {
        self.data.orders.iter().any(|&o| o as usize == self.order())
    }

    /// Multiplication table as a flat row-major vector. Materializes the table
    /// for lazily multiplied groups.
    pub fn table(&self) -> Vec<Elem> {
        let n = self.order();
        let mut out = Vec::with_capacity(n * n);
        for a in self.elements() {
            for b in self.elements() {
                out.push(self.mul(a, b));
            }
        }
        out
    }

    /// Checks the group axioms: associativity on every triple when the order
    /// is at most 200 and on `samples` random triples above, two-sided
    /// identity, and inverses.
    pub fn verify_axioms(&self, samples: usize, seed: u64) -> Result<(), String> {
        use alloc::format;
        let n = self.order() as Elem;
        for g in self.elements() {
            if self.mul(0, g) != g || self.mul(g, 0) != g {
                return Err(format!("identity fails at {g}"));
            }
            if self.mul(self.inv(g), g) != 0 || self.mul(g, self.inv(g)) != 0 {
                return Err(format!("inverse fails at {g}"));
            }
        }
        let check = |a: Elem, b: Elem, c: Elem| {
            if self.mul(self.mul(a, b), c) != self.mul(a, self.mul(b, c)) {
                Err(format!("associativity fails at ({a}, {b}, {c})"))
            } else {
                Ok(())
            }
        };
        if n <= 200 {
            for a in 0..n {
                for b in 0..n {
                    for c in 0..n {
                        check(a, b, c)?;
                    }
                }
            }
        } else {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            for _ in 0..samples {
                check(
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                    rng.random_range(0..n),
                )?;
            }
        }
        Ok(())
    }

    pub(crate) fn from_parts(
        order: usize,
        gens: Vec<Elem>,
        mult: Mult,
        label: String,
    ) -> FiniteGroup {
        let mut group = GroupData {
            order,
            gens,
            inv: Vec::new(),
            orders: Vec::new(),
            mult,
            label,
        };
        let (inv, orders) = power_structure(&group);
        group.inv = inv;
        group.orders = orders;
        FiniteGroup {
            data: Arc::new(group),
        }
    }

    /// Builds a group from a full multiplication table on `0..n`, verifying
    /// the axioms exhaustively. Elements are renumbered so that the identity
    /// comes first; the returned vector maps new indices to table indices.
    pub fn from_table(
        n: usize,
        table: &[u32],
        label: impl Into<String>,
        limits: &Limits,
    ) -> crate::Result<(FiniteGroup, Vec<Elem>)> {
        build::from_table(n, table, label.into(), limits)
    }
}

struct Delegate(FiniteGroup);

impl LazyMul for Delegate {
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.0.mul(a, b)
    }
}

/// Walks the cyclic subgroup of every element once to fill inverse and order
/// tables.
fn power_structure(group: &GroupData) -> (Vec<Elem>, Vec<u32>) {
    let n = group.order;
    let mul = |a: Elem, b: Elem| match &group.mult {
        Mult::Table(t) => t[a as usize * n + b as usize] as Elem,
        Mult::Lazy(l) => l.mul(a, b),
    };
    let mut inv = alloc::vec![Elem::MAX; n];
    let mut orders = alloc::vec![0u32; n];
    inv[0] = 0;
    orders[0] = 1;
    let mut powers = Vec::new();
    for g in 0..n as Elem {
        if orders[g as usize] != 0 {
            continue;
        }
        powers.clear();
        let mut x = 0;
        loop {
            powers.push(x);
            x = mul(x, g);
            if x == 0 {
                break;
            }
        }
        let m = powers.len();
        for (j, &y) in powers.iter().enumerate() {
            if orders[y as usize] == 0 {
                orders[y as usize] = (m / gcd(j, m)) as u32;
                inv[y as usize] = powers[(m - j) % m];
            }
        }
    }
    (inv, orders)
}

pub(crate) fn gcd(a: usize, b: usize) -> usize {
    if b == 0 {
        a
    } else {
        gcd(b, a % b)
    }
}
