use alloc::boxed::Box;
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use crate::group::ops::is_prime;
use crate::group::{direct_product, from_generators_labeled, FiniteGroup, Permutation};
use crate::{Error, Limits, Result};

/// A group from the built-in catalog.
///
/// Sizes are group orders, so `Dihedral(8)` is the dihedral group of order 8.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Construct {
    Cyclic(u64),
    ElementaryAbelian { p: u64, d: u32 },
    /// Direct product of cyclic groups of the given orders.
    Abelian(Vec<u64>),
    Dihedral(u64),
    GeneralizedQuaternion(u64),
    Semidihedral(u64),
    ModularMaximalCyclic(u64),
    /// Extraspecial group of order `p³` and exponent `p` or `p²`, `p` odd.
    Extraspecial { p: u64, exponent: u64 },
    /// The nonabelian group of order `pq` for primes `q | p − 1`.
    NonabelianPq { p: u64, q: u64 },
    Symmetric(u32),
    Alternating(u32),
    Product(Box<Construct>, Box<Construct>),
}

fn invalid(msg: String) -> Error {
    Error::InvalidParameter(msg)
}

fn power_of_two(n: u64, min_exp: u32, name: &str) -> Result<u32> {
    if !n.is_power_of_two() || n.trailing_zeros() < min_exp {
        return Err(invalid(format!(
            "{name} needs an order 2^n with n ≥ {min_exp}, got {n}"
        )));
    }
    Ok(n.trailing_zeros())
}

fn pow_mod(mut b: u64, mut e: u64, m: u64) -> u64 {
    let mut acc = 1 % m;
    b %= m;
    while e > 0 {
        if e & 1 == 1 {
            acc = acc * b % m;
        }
        b = b * b % m;
        e >>= 1;
    }
    acc
}

/// Regular representation of `⟨a, b | a^m, b^s = a^t, b⁻¹ab = a^r⟩` on the
/// normal forms `a^i b^j`, point `i + m·j`.
fn metacyclic(m: u64, s: u64, t: u64, r: u64) -> [Permutation; 2] {
    let n = (m * s) as usize;
    let mul = |(i, j): (u64, u64), (k, l): (u64, u64)| {
        let mut e = i + k * pow_mod(r, j, m);
        let mut f = j + l;
        if f >= s {
            f -= s;
            e += t;
        }
        (e % m, f)
    };
    let point = |(i, j): (u64, u64)| (i + m * j) as u32;
    let right = |g: (u64, u64)| {
        let mut images = alloc::vec![0u32; n];
        for j in 0..s {
            for i in 0..m {
                images[point((i, j)) as usize] = point(mul((i, j), g));
            }
        }
        Permutation::from_images(images).expect("right multiplication is a bijection")
    };
    [right((1 % m, 0)), right((0, 1 % s))]
}

fn cycle(degree: usize, points: core::ops::Range<u32>) -> Permutation {
    let c: Vec<u32> = points.collect();
    Permutation::from_cycles(degree, &[c]).expect("valid cycle")
}

/// Disjoint cycles of the given lengths, one generator each.
fn abelian_gens(orders: &[u64]) -> (usize, Vec<Permutation>) {
    let degree: u64 = orders.iter().sum();
    let mut start = 0u32;
    let mut gens = Vec::new();
    for &o in orders {
        if o > 1 {
            gens.push(cycle(degree as usize, start..start + o as u32));
        }
        start += o as u32;
    }
    (degree as usize, gens)
}

impl Construct {
    /// Order of the group this constructor describes.
    pub fn order(&self) -> Option<u64> {
        Some(match self {
            Self::Cyclic(n) => *n,
            Self::ElementaryAbelian { p, d } => p.checked_pow(*d)?,
            Self::Abelian(v) => v.iter().try_fold(1u64, |a, &b| a.checked_mul(b))?,
            Self::Dihedral(n)
            | Self::GeneralizedQuaternion(n)
            | Self::Semidihedral(n)
            | Self::ModularMaximalCyclic(n) => *n,
            Self::Extraspecial { p, .. } => p.checked_pow(3)?,
            Self::NonabelianPq { p, q } => p * q,
            Self::Symmetric(n) => (1..=u64::from(*n)).try_fold(1u64, |a, b| a.checked_mul(b))?,
            Self::Alternating(n) => {
                (1..=u64::from(*n)).try_fold(1u64, |a, b| a.checked_mul(b))? / 2
            }
            Self::Product(a, b) => a.order()?.checked_mul(b.order()?)?,
        })
    }

    /// Number of generators in the defining presentation.
    pub fn presentation_rank(&self) -> usize {
        match self {
            Self::Cyclic(n) => usize::from(*n > 1),
            Self::ElementaryAbelian { d, .. } => *d as usize,
            Self::Abelian(v) => v.iter().filter(|&&o| o > 1).count(),
            Self::Symmetric(n) | Self::Alternating(n) if *n <= 2 => 0,
            Self::Product(a, b) => a.presentation_rank() + b.presentation_rank(),
            _ => 2,
        }
    }

    /// Builds the group as a permutation group and checks its order.
    pub fn build(&self, limits: &Limits) -> Result<FiniteGroup> {
        if let Self::Product(a, b) = self {
            let (g, _) = direct_product(&a.build(limits)?, &b.build(limits)?, limits)?;
            return Ok(g.relabel(self.to_string()));
        }
        let expected = self
            .order()
            .filter(|&o| o as usize <= limits.max_order)
            .ok_or(Error::OrderCap {
                cap: limits.max_order,
                reached: self.order().unwrap_or(u64::MAX) as usize,
            })?;
        let (degree, gens) = self.permutations()?;
        let (g, _) = from_generators_labeled(degree, &gens, self.to_string(), limits)?;
        if g.order() as u64 != expected {
            return Err(Error::NotAGroup(format!(
                "{self} closed to order {} instead of {expected}",
                g.order()
            )));
        }
        Ok(g)
    }

    fn permutations(&self) -> Result<(usize, Vec<Permutation>)> {
        Ok(match *self {
            Self::Cyclic(n) => {
                if n == 0 {
                    return Err(invalid("cyclic group of order 0".into()));
                }
                abelian_gens(&[n])
            }
            Self::ElementaryAbelian { p, d } => {
                if !is_prime(p) {
                    return Err(Error::NotPrime(p));
                }
                abelian_gens(&alloc::vec![p; d as usize])
            }
            Self::Abelian(ref v) => {
                if v.contains(&0) {
                    return Err(invalid("cyclic factor of order 0".into()));
                }
                abelian_gens(v)
            }
            Self::Dihedral(n) => {
                let e = power_of_two(n, 2, "dihedral")?;
                let m = 1 << (e - 1);
                (n as usize, metacyclic(m, 2, 0, m - 1).into())
            }
            Self::GeneralizedQuaternion(n) => {
                let e = power_of_two(n, 3, "generalized_quaternion")?;
                let m = 1 << (e - 1);
                (n as usize, metacyclic(m, 2, m / 2, m - 1).into())
            }
            Self::Semidihedral(n) => {
                let e = power_of_two(n, 4, "semidihedral")?;
                let m = 1 << (e - 1);
                (n as usize, metacyclic(m, 2, 0, m / 2 - 1).into())
            }
            Self::ModularMaximalCyclic(n) => {
                let e = power_of_two(n, 4, "modular_maximal_cyclic")?;
                let m = 1 << (e - 1);
                (n as usize, metacyclic(m, 2, 0, m / 2 + 1).into())
            }
            Self::Extraspecial { p, exponent } => {
                if !is_prime(p) || p == 2 {
                    return Err(invalid(format!(
                        "extraspecial groups are built for odd primes, got {p}"
                    )));
                }
                if exponent == p * p {
                    (
                        (p * p * p) as usize,
                        metacyclic(p * p, p, 0, 1 + p).into(),
                    )
                } else if exponent == p {
                    heisenberg(p)
                } else {
                    return Err(invalid(format!(
                        "extraspecial exponent must be {p} or {}, got {exponent}",
                        p * p
                    )));
                }
            }
            Self::NonabelianPq { p, q } => {
                if !is_prime(p) || !is_prime(q) || (p - 1) % q != 0 {
                    return Err(invalid(format!(
                        "nonabelian group of order pq needs primes with q | p−1, got p={p}, q={q}"
                    )));
                }
                let r = (2..p)
                    .find(|&r| pow_mod(r, q, p) == 1)
                    .expect("an element of order q exists mod p");
                ((p * q) as usize, metacyclic(p, q, 0, r).into())
            }
            Self::Symmetric(n) => {
                let d = n as usize;
                let mut gens = Vec::new();
                if n >= 2 {
                    gens.push(cycle(d, 0..2));
                }
                if n >= 3 {
                    gens.push(cycle(d, 0..n));
                }
                (d, gens)
            }
            Self::Alternating(n) => {
                let d = n as usize;
                let mut gens = Vec::new();
                if n >= 3 {
                    gens.push(cycle(d, 0..3));
                }
                if n >= 4 {
                    gens.push(if n % 2 == 1 { cycle(d, 0..n) } else { cycle(d, 1..n) });
                }
                (d, gens)
            }
            Self::Product(..) => unreachable!("products are built componentwise"),
        })
    }
}

/// Regular representation of the Heisenberg group mod `p` on triples
/// `(x, y, z)` with `(x,y,z)(x',y',z') = (x+x', y+y', z+z'+xy')`.
fn heisenberg(p: u64) -> (usize, Vec<Permutation>) {
    let n = (p * p * p) as usize;
    let point = |x: u64, y: u64, z: u64| (x + p * y + p * p * z) as u32;
    let right = |(a, b, c): (u64, u64, u64)| {
        let mut images = alloc::vec![0u32; n];
        for z in 0..p {
            for y in 0..p {
                for x in 0..p {
                    images[point(x, y, z) as usize] =
                        point((x + a) % p, (y + b) % p, (z + c + x * b) % p);
                }
            }
        }
        Permutation::from_images(images).expect("right multiplication is a bijection")
    };
    (n, alloc::vec![right((1, 0, 0)), right((0, 1, 0))])
}

impl fmt::Display for Construct {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Cyclic(n) => write!(f, "cyclic {n}"),
            Self::ElementaryAbelian { p, d } => write!(f, "elementary_abelian {p} {d}"),
            Self::Abelian(v) => {
                f.write_str("abelian")?;
                for o in v {
                    write!(f, " {o}")?;
                }
                Ok(())
            }
            Self::Dihedral(n) => write!(f, "dihedral {n}"),
            Self::GeneralizedQuaternion(n) => write!(f, "generalized_quaternion {n}"),
            Self::Semidihedral(n) => write!(f, "semidihedral {n}"),
            Self::ModularMaximalCyclic(n) => write!(f, "modular_maximal_cyclic {n}"),
            Self::Extraspecial { p, exponent } => write!(f, "extraspecial {p} {exponent}"),
            Self::NonabelianPq { p, q } => write!(f, "nonabelian_pq {p} {q}"),
            Self::Symmetric(n) => write!(f, "symmetric {n}"),
            Self::Alternating(n) => write!(f, "alternating {n}"),
            Self::Product(a, b) => write!(f, "{a} x {b}"),
        }
    }
}

impl FromStr for Construct {
    type Err = Error;

    /// Parses `name arg…`, with ` x ` separating direct factors.
    fn from_str(s: &str) -> Result<Self> {
        if let Some((a, b)) = s.rsplit_once(" x ") {
            return Ok(Self::Product(Box::new(a.parse()?), Box::new(b.parse()?)));
        }
        let mut words = s.split_whitespace();
        let name = words
            .next()
            .ok_or_else(|| invalid("empty constructor".into()))?;
        let args: Vec<u64> = words
            .map(|w| {
                w.parse::<u64>()
                    .map_err(|_| invalid(format!("argument {w:?} is not a nonnegative integer")))
            })
            .collect::<Result<_>>()?;
        let arity = |k: usize| {
            if args.len() == k {
                Ok(())
            } else {
                Err(invalid(format!(
                    "{name} takes {k} argument(s), got {}",
                    args.len()
                )))
            }
        };
        let small = |x: u64| u32::try_from(x).map_err(|_| invalid(format!("{x} is too large")));
        Ok(match name {
            "cyclic" => {
                arity(1)?;
                Self::Cyclic(args[0])
            }
            "elementary_abelian" => {
                arity(2)?;
                Self::ElementaryAbelian {
                    p: args[0],
                    d: small(args[1])?,
                }
            }
            "abelian" => Self::Abelian(args),
            "dihedral" => {
                arity(1)?;
                Self::Dihedral(args[0])
            }
            "generalized_quaternion" => {
                arity(1)?;
                Self::GeneralizedQuaternion(args[0])
            }
            "semidihedral" => {
                arity(1)?;
                Self::Semidihedral(args[0])
            }
            "modular_maximal_cyclic" => {
                arity(1)?;
                Self::ModularMaximalCyclic(args[0])
            }
            "extraspecial" => {
                arity(2)?;
                Self::Extraspecial {
                    p: args[0],
                    exponent: args[1],
                }
            }
            "nonabelian_pq" => {
                arity(2)?;
                Self::NonabelianPq {
                    p: args[0],
                    q: args[1],
                }
            }
            "symmetric" => {
                arity(1)?;
                Self::Symmetric(small(args[0])?)
            }
            "alternating" => {
                arity(1)?;
                Self::Alternating(small(args[0])?)
            }
            other => return Err(invalid(format!("unknown constructor {other:?}"))),
        })
    }
}

pub fn cyclic(n: u64, limits: &Limits) -> Result<FiniteGroup> {
    Construct::Cyclic(n).build(limits)
}

pub fn elementary_abelian(p: u64, d: u32, limits: &Limits) -> Result<FiniteGroup> {
    Construct::ElementaryAbelian { p, d }.build(limits)
}

pub fn dihedral(n: u64, limits: &Limits) -> Result<FiniteGroup> {
    Construct::Dihedral(n).build(limits)
}

pub fn generalized_quaternion(n: u64, limits: &Limits) -> Result<FiniteGroup> {
    Construct::GeneralizedQuaternion(n).build(limits)
}

pub fn semidihedral(n: u64, limits: &Limits) -> Result<FiniteGroup> {
    Construct::Semidihedral(n).build(limits)
}

pub fn modular_maximal_cyclic(n: u64, limits: &Limits) -> Result<FiniteGroup> {
    Construct::ModularMaximalCyclic(n).build(limits)
}

pub fn extraspecial(p: u64, exponent: u64, limits: &Limits) -> Result<FiniteGroup> {
    Construct::Extraspecial { p, exponent }.build(limits)
}
