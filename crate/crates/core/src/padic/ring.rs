use alloc::format;

use crate::group::ops::is_prime;
use crate::{Error, Result};

/// Least quadratic non-residue mod an odd prime.
pub fn least_nonresidue(p: u64) -> u64 {
    (2..p)
        .find(|&c| pow_mod(c, (p - 1) / 2, p) == p - 1)
        .expect("odd primes have non-residues")
}

pub(crate) fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = mul_mod(acc, b, m);
        }
        b = mul_mod(b, b, m);
        e >>= 1;
    }
    acc
}

#[inline]
pub(crate) fn mul_mod(a: u64, b: u64, m: u64) -> u64 {
    (u128::from(a) * u128::from(b) % u128::from(m)) as u64
}

/// Inverse of a unit modulo `m`.
pub(crate) fn inv_mod(a: u64, m: u64) -> Option<u64> {
    let (mut r0, mut r1) = (i128::from(m), i128::from(a % m));
    let (mut t0, mut t1) = (0i128, 1i128);
    while r1 != 0 {
        let q = r0 / r1;
        (r0, r1) = (r1, r0 - q * r1);
        (t0, t1) = (t1, t0 - q * t1);
    }
    if r0 != 1 {
        return if m == 1 { Some(0) } else { None };
    }
    Some(t0.rem_euclid(i128::from(m)) as u64)
}

/// `p`-adic valuation of a residue mod `p^m`, or `None` for zero.
pub(crate) fn vp(x: u64, p: u64) -> Option<u32> {
    if x == 0 {
        return None;
    }
    let (mut x, mut v) = (x, 0);
    while x % p == 0 {
        x /= p;
        v += 1;
    }
    Some(v)
}

/// An element `a0 + a1·ω` of `O_W / p^m`, where `W` is the unramified
/// quadratic extension of `Q_p`.
///
/// For odd `p`, `ω² = c` with `c` the least quadratic non-residue and
/// Frobenius `ω ↦ −ω`. For `p = 2`, `ω² + ω + 1 = 0` and `ω ↦ −1 − ω`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub struct UnramifiedQuadraticInt {
    pub a0: u64,
    pub a1: u64,
    pub p: u64,
    pub m: u32,
}

impl UnramifiedQuadraticInt {
    pub fn new(p: u64, m: u32, a0: u64, a1: u64) -> Result<Self> {
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        let modulus = p
            .checked_pow(m)
            .filter(|&q| q <= 1 << 31)
            .ok_or_else(|| Error::Precision(format!("{p}^{m} is too large")))?;
        Ok(Self {
            a0: a0 % modulus,
            a1: a1 % modulus,
            p,
            m,
        })
    }

    /// Same ring, new coefficients; callers guarantee `p` is prime.
    #[inline]
    pub(crate) fn with(self, a0: u64, a1: u64) -> Self {
        let q = self.modulus();
        Self {
            a0: a0 % q,
            a1: a1 % q,
            ..self
        }
    }

    pub fn zero(p: u64, m: u32) -> Result<Self> {
        Self::new(p, m, 0, 0)
    }

    pub fn one(p: u64, m: u32) -> Result<Self> {
        Self::new(p, m, 1, 0)
    }

    #[inline]
    pub fn modulus(&self) -> u64 {
        self.p.pow(self.m)
    }

    /// `ω²` expressed as `(u, v)` meaning `u + v·ω`.
    fn omega_squared(&self) -> (u64, u64) {
        let q = self.modulus();
        if self.p == 2 {
            ((q - 1) % q.max(1), (q - 1) % q.max(1))
        } else {
            (least_nonresidue(self.p) % q, 0)
        }
    }

    fn check(&self, other: &Self) -> Result<()> {
        if self.p != other.p || self.m != other.m {
            return Err(Error::Precision(format!(
                "O_W/{}^{} vs O_W/{}^{}",
                self.p, self.m, other.p, other.m
            )));
        }
        Ok(())
    }

    pub fn add(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.with(self.a0 + other.a0, self.a1 + other.a1))
    }

    pub fn neg(&self) -> Self {
        let q = self.modulus();
        self.with(q - self.a0 % q, q - self.a1 % q)
    }

    pub fn sub(&self, other: &Self) -> Result<Self> {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Result<Self> {
        self.check(other)?;
        Ok(self.mul_unchecked(other))
    }

    #[inline]
    pub(crate) fn mul_unchecked(&self, other: &Self) -> Self {
        let q = self.modulus();
        let (u, v) = self.omega_squared();
        let hi = mul_mod(self.a1, other.a1, q);
        let a0 = mul_mod(self.a0, other.a0, q) + mul_mod(hi, u, q);
        let a1 = mul_mod(self.a0, other.a1, q) + mul_mod(self.a1, other.a0, q) + mul_mod(hi, v, q);
        self.with(a0, a1)
    }

    /// Multiplication by an integer.
    pub fn scale(&self, s: u64) -> Self {
        let q = self.modulus();
        self.with(mul_mod(self.a0, s, q), mul_mod(self.a1, s, q))
    }

    /// The Frobenius automorphism `σ`.
    pub fn frobenius(&self) -> Self {
        let q = self.modulus();
        let neg_a1 = (q - self.a1 % q) % q;
        if self.p == 2 {
            // σ(a0 + a1ω) = a0 + a1(−1 − ω)
            self.with(self.a0 + neg_a1, neg_a1)
        } else {
            self.with(self.a0, neg_a1)
        }
    }

    /// `a·σ(a)`, an element of `Z/p^m`.
    pub fn norm(&self) -> u64 {
        let n = self.mul_unchecked(&self.frobenius());
        debug_assert_eq!(n.a1, 0);
        n.a0
    }

    /// `a + σ(a)`, an element of `Z/p^m`.
    pub fn trace(&self) -> u64 {
        let t = self.add(&self.frobenius()).expect("same ring");
        debug_assert_eq!(t.a1, 0);
        t.a0
    }

    pub fn is_unit(&self) -> bool {
        self.m == 0 || self.norm() % self.p != 0
    }

    pub fn inverse(&self) -> Option<Self> {
        let n_inv = inv_mod(self.norm(), self.modulus())?;
        Some(self.frobenius().scale(n_inv))
    }

    pub fn is_zero(&self) -> bool {
        self.a0 == 0 && self.a1 == 0
    }

    /// `v_p`, or `None` for zero at this precision.
    pub fn valuation(&self) -> Option<u32> {
        match (vp(self.a0, self.p), vp(self.a1, self.p)) {
            (Some(x), Some(y)) => Some(x.min(y)),
            (x, y) => x.or(y),
        }
    }

    /// Reduction to a lower precision, or the same residues read at a higher
    /// one.
    pub fn to_precision(&self, m: u32) -> Self {
        let q = self.p.pow(m);
        Self {
            a0: self.a0 % q,
            a1: self.a1 % q,
            p: self.p,
            m,
        }
    }
}
