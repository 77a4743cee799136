use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;

use super::{close, FiniteGroup, Law};
use crate::{Error, Limits, Result};

/// A permutation of `0..degree`, stored as its image list.
///
/// Products compose left to right: `(a * b)(x) = b(a(x))`.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation(Box<[u32]>);

impl Permutation {
    pub fn identity(degree: usize) -> Self {
        Self((0..degree as u32).collect())
    }

    /// Validates that `images` is a bijection on `0..images.len()`.
    pub fn from_images(images: Vec<u32>) -> Option<Self> {
        let n = images.len();
        let mut seen = alloc::vec![false; n];
        for &x in &images {
            let x = x as usize;
            if x >= n || seen[x] {
                return None;
            }
            seen[x] = true;
        }
        Some(Self(images.into_boxed_slice()))
    }

    /// Builds a permutation of `0..degree` from disjoint cycles. Points not
    /// mentioned are fixed.
    pub fn from_cycles(degree: usize, cycles: &[Vec<u32>]) -> Option<Self> {
        let mut images: Vec<u32> = (0..degree as u32).collect();
        let mut touched = alloc::vec![false; degree];
        for cycle in cycles {
            for (i, &x) in cycle.iter().enumerate() {
                let x = x as usize;
                if x >= degree || touched[x] {
                    return None;
                }
                touched[x] = true;
                images[x] = cycle[(i + 1) % cycle.len()];
            }
        }
        Self::from_images(images)
    }

    pub fn degree(&self) -> usize {
        self.0.len()
    }

    pub fn images(&self) -> &[u32] {
        &self.0
    }

    pub fn apply(&self, x: u32) -> u32 {
        self.0[x as usize]
    }

    pub fn compose(&self, other: &Self) -> Self {
        Self(self.0.iter().map(|&x| other.0[x as usize]).collect())
    }

    /// Disjoint cycles of length at least two, each starting at its least point.
    pub fn cycles(&self) -> Vec<Vec<u32>> {
        let n = self.degree();
        let mut seen = alloc::vec![false; n];
        let mut out = Vec::new();
        for start in 0..n {
            if seen[start] {
                continue;
            }
            let mut cycle = Vec::new();
            let mut x = start as u32;
            while !seen[x as usize] {
                seen[x as usize] = true;
                cycle.push(x);
                x = self.0[x as usize];
            }
            if cycle.len() > 1 {
                out.push(cycle);
            }
        }
        out
    }
}

impl fmt::Debug for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

/// Cycle notation with zero-based points, e.g. `(0 1 2)(3 4)`; the identity
/// prints as `()`.
impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let cycles = self.cycles();
        if cycles.is_empty() {
            return f.write_str("()");
        }
        for c in cycles {
            f.write_str("(")?;
            for (i, x) in c.iter().enumerate() {
                if i > 0 {
                    f.write_str(" ")?;
                }
                write!(f, "{x}")?;
            }
            f.write_str(")")?;
        }
        Ok(())
    }
}

pub(crate) struct PermLaw;

impl Law for PermLaw {
    type Form = Permutation;

    fn op(&self, a: &Permutation, b: &Permutation) -> Permutation {
        a.compose(b)
    }
}

/// The permutation group on `0..degree` generated by `gens`.
pub fn from_generators(
    degree: usize,
    gens: &[Permutation],
    limits: &Limits,
) -> Result<FiniteGroup> {
    from_generators_labeled(degree, gens, default_label(degree, gens), limits)
        .map(|(g, _)| g)
}

pub(crate) fn default_label(degree: usize, gens: &[Permutation]) -> String {
    let mut s = format!("perm {degree}:");
    for g in gens {
        s.push(' ');
        s.push_str(&format!("{g}"));
    }
    s
}

/// Like [`from_generators`] but keeps the permutation of every element.
pub fn from_generators_labeled(
    degree: usize,
    gens: &[Permutation],
    label: String,
    limits: &Limits,
) -> Result<(FiniteGroup, Vec<Permutation>)> {
    for (index, g) in gens.iter().enumerate() {
        if g.degree() != degree {
            return Err(Error::NotAPermutation { index, degree });
        }
    }
    close(PermLaw, Permutation::identity(degree), gens, label, limits)
}
