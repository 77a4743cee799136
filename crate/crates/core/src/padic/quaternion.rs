use alloc::format;

use super::ring::UnramifiedQuadraticInt;
use crate::{Error, Result};

/// An element `a + π·b` of `O_D / π^k`, with `π² = p` and `π·w = σ(w)·π`
/// for `w ∈ O_W`.
///
/// Only the residues surviving mod `π^k` are stored: `a` mod `p^⌈k/2⌉` and
/// `b` mod `p^⌊k/2⌋`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct QuaternionIntegral {
    pub a: UnramifiedQuadraticInt,
    pub b: UnramifiedQuadraticInt,
    pub level: u32,
}

impl QuaternionIntegral {
    pub fn new(a: UnramifiedQuadraticInt, b: UnramifiedQuadraticInt, level: u32) -> Result<Self> {
        if a.p != b.p {
            return Err(Error::Precision(format!("mixed primes {} and {}", a.p, b.p)));
        }
        Ok(Self {
            a: a.to_precision(level.div_ceil(2)),
            b: b.to_precision(level / 2),
            level,
        })
    }

    /// `a0 + a1ω + π(b0 + b1ω)` at level `k`.
    pub fn from_coords(p: u64, level: u32, [a0, a1, b0, b1]: [u64; 4]) -> Result<Self> {
        Ok(Self {
            a: UnramifiedQuadraticInt::new(p, level.div_ceil(2), a0, a1)?,
            b: UnramifiedQuadraticInt::new(p, level / 2, b0, b1)?,
            level,
        })
    }

    pub fn coords(&self) -> [u64; 4] {
        [self.a.a0, self.a.a1, self.b.a0, self.b.a1]
    }

    pub fn p(&self) -> u64 {
        self.a.p
    }

    pub fn one(p: u64, level: u32) -> Result<Self> {
        Self::from_coords(p, level, [1, 0, 0, 0])
    }

    /// The uniformizer `π`.
    pub fn pi(p: u64, level: u32) -> Result<Self> {
        Self::from_coords(p, level, [0, 0, 1, 0])
    }

    /// An element of `O_W` seen in `O_D`.
    pub fn from_w(w: UnramifiedQuadraticInt, level: u32) -> Result<Self> {
        let zero = UnramifiedQuadraticInt::zero(w.p, 0)?;
        Self::new(w, zero, level)
    }

    /// The integer `x ∈ Z_p`.
    pub fn from_int(p: u64, level: u32, x: u64) -> Result<Self> {
        Self::from_coords(p, level, [x, 0, 0, 0])
    }

    /// `b` read at the precision of `a`; the extra digits it gains are
    /// multiplied by `p` wherever they are used, so their choice is
    /// irrelevant.
    fn b_lifted(&self) -> UnramifiedQuadraticInt {
        self.b.to_precision(self.a.m)
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        if self.p() != other.p() || self.level != other.level {
            return Err(Error::Precision(format!(
                "level {} over p={} vs level {} over p={}",
                self.level,
                self.p(),
                other.level,
                other.p()
            )));
        }
        Ok(self.mul_unchecked(other))
    }

    /// `(a + πb)(c + πd) = (ac + p·σ(b)d) + π(σ(a)d + bc)`.
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let (a, c) = (self.a, other.a);
        let (b, d) = (self.b_lifted(), other.b_lifted());
        let p = self.p();
        let first = a.mul_unchecked(&c).add(&b.frobenius().mul_unchecked(&d).scale(p)).expect("same ring");
        let second = a
            .frobenius()
            .mul_unchecked(&d)
            .add(&b.mul_unchecked(&c))
            .expect("same ring");
        Self {
            a: first,
            b: second.to_precision(self.level / 2),
            level: self.level,
        }
    }

    /// `Nred(a + πb) = a·σ(a) − p·b·σ(b)`, a residue mod `p^⌈k/2⌉`.
    pub fn reduced_norm(&self) -> u64 {
        let q = self.a.modulus();
        let pb = self.b_lifted().norm() * self.p() % q;
        (self.a.norm() + q - pb) % q
    }

    /// `Tred(a + πb) = a + σ(a)`, a residue mod `p^⌈k/2⌉`.
    pub fn reduced_trace(&self) -> u64 {
        self.a.trace()
    }

    /// `ν(a + πb) = min(2·v_p(a), 1 + 2·v_p(b))`, or `None` when the element
    /// is zero mod `π^k`.
    pub fn valuation(&self) -> Option<u32> {
        let va = self.a.valuation().map(|v| 2 * v);
        let vb = self.b.valuation().map(|v| 1 + 2 * v);
        match (va, vb) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    pub fn is_unit(&self) -> bool {
        self.level == 0 || self.a.is_unit()
    }

    /// Whether the element is `≡ 1 mod π^i`.
    pub fn is_congruent_to_one(&self, i: u32) -> bool {
        let i = i.min(self.level);
        let qa = self.p().pow(i.div_ceil(2));
        let qb = self.p().pow(i / 2);
        (self.a.a0 + qa - 1) % qa == 0 && self.a.a1 % qa == 0 && self.b.a0 % qb == 0 && self.b.a1 % qb == 0
    }

    pub fn to_level(&self, level: u32) -> Self {
        Self {
            a: self.a.to_precision(level.div_ceil(2)),
            b: self.b.to_precision(level / 2),
            level,
        }
    }
}
