use alloc::format;
use alloc::string::String;
use alloc::vec::Vec;
use core::fmt;
use core::str::FromStr;

use hashbrown::HashSet;

use super::quaternion::QuaternionIntegral;
use super::ring::{inv_mod, UnramifiedQuadraticInt};
use crate::group::ops::is_prime;
use crate::group::{close, is_isomorphic, quotient, FiniteGroup, Law, SubgroupHandle};
use crate::{Error, Limits, Result};

/// Which congruence quotient of the unit group of `O_D` to build.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Variant {
    /// `GL₁ⁱ(O_D)/GL₁ᵏ(O_D)`; `i = 0` gives the full unit group mod `πᵏ`.
    GL,
    /// As `GL`, restricted to congruence depth `i ≥ 1`.
    GL1,
    /// `PGL₁ⁱ(O_D)/PGL₁ᵏ(O_D)`, the images modulo the center `Z_p^×`.
    PGL,
    /// As `PGL`, restricted to `i ≥ 1`.
    PGL1,
    /// `SL₁ⁱ(O_D)/SL₁ᵏ(O_D)`, the reduced-norm-one elements.
    SL1,
}

impl Variant {
    pub fn is_projective(self) -> bool {
        matches!(self, Self::PGL | Self::PGL1)
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::GL => "GL",
            Self::GL1 => "GL1",
            Self::PGL => "PGL",
            Self::PGL1 => "PGL1",
            Self::SL1 => "SL1",
        }
    }
}

impl FromStr for Variant {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s {
            "GL" => Self::GL,
            "GL1" => Self::GL1,
            "PGL" => Self::PGL,
            "PGL1" => Self::PGL1,
            "SL1" => Self::SL1,
            _ => return Err(Error::InvalidParameter(format!("unknown variant {s:?}"))),
        })
    }
}

/// A finite congruence quotient, written `quat:p=5,k=3,variant=PGL1,i=1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct QuotientGroupSpec {
    pub p: u64,
    pub k: u32,
    pub variant: Variant,
    pub i: u32,
}

/// Coefficients are packed into 16-bit fields.
const FIELD: u64 = 1 << 16;

impl QuotientGroupSpec {
    pub fn new(p: u64, k: u32, variant: Variant, i: u32) -> Result<Self> {
        let spec = Self { p, k, variant, i };
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        let Self { p, k, variant, i } = *self;
        if !is_prime(p) {
            return Err(Error::NotPrime(p));
        }
        if k == 0 {
            return Err(Error::InvalidParameter("level k must be at least 1".into()));
        }
        if i > 3 || i > k {
            return Err(Error::InvalidParameter(format!(
                "lower level i={i} must lie in 0..=min(3, k={k})"
            )));
        }
        if matches!(variant, Variant::GL1 | Variant::PGL1) && i == 0 {
            return Err(Error::InvalidParameter(format!(
                "{} needs lower level i ≥ 1",
                variant.name()
            )));
        }
        if p == 2 && !matches!(variant, Variant::GL | Variant::GL1) {
            return Err(Error::Unsupported(format!(
                "{} quotients need an odd prime",
                variant.name()
            )));
        }
        if p.checked_pow(k.div_ceil(2)).is_none_or(|q| q >= FIELD) {
            return Err(Error::Precision(format!("{p}^{} does not fit the packed form", k.div_ceil(2))));
        }
        Ok(())
    }

    /// Order from `|GL₁/GL₁¹| = p²−1`, `|GL₁ʲ/GL₁ʲ⁺¹| = p²` and, for the
    /// projective and norm-one variants, the order `(p−1)·p^(⌈k/2⌉−1)` (or
    /// `p^(⌈k/2⌉−⌈i/2⌉)` when `i ≥ 1`) of the central image, respectively of
    /// the reduced norm image.
    pub fn predicted_order(&self) -> Option<u64> {
        let p = self.p;
        let (k, i) = (self.k, self.i);
        let gl = if i == 0 {
            (p * p - 1).checked_mul(p.checked_pow(2 * (k - 1))?)?
        } else {
            p.checked_pow(2 * (k - i))?
        };
        let cut = match self.variant {
            Variant::GL | Variant::GL1 => 1,
            _ if i == 0 => (p - 1) * p.pow(k.div_ceil(2) - 1),
            _ => p.pow(k.div_ceil(2) - i.div_ceil(2)),
        };
        Some(gl / cut)
    }

    fn ring(&self) -> (u64, u64) {
        (self.p.pow(self.k.div_ceil(2)), self.p.pow(self.k / 2))
    }
}

impl fmt::Display for QuotientGroupSpec {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "quat:p={},k={},variant={},i={}",
            self.p,
            self.k,
            self.variant.name(),
            self.i
        )
    }
}

impl FromStr for QuotientGroupSpec {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let body = s
            .trim()
            .strip_prefix("quat:")
            .ok_or_else(|| Error::InvalidParameter(format!("{s:?} does not start with quat:")))?;
        let (mut p, mut k, mut variant, mut i) = (None, None, None, None);
        for part in body.split(',') {
            let (key, value) = part
                .split_once('=')
                .ok_or_else(|| Error::InvalidParameter(format!("expected key=value, got {part:?}")))?;
            let (key, value) = (key.trim(), value.trim());
            let number = || {
                value
                    .parse::<u64>()
                    .map_err(|_| Error::InvalidParameter(format!("{key}={value:?} is not a number")))
            };
            let small = || {
                value
                    .parse::<u32>()
                    .map_err(|_| Error::InvalidParameter(format!("{key}={value:?} is not a number")))
            };
            let slot_taken = match key {
                "p" => p.replace(number()?).is_some(),
                "k" => k.replace(small()?).is_some(),
                "variant" => variant.replace(value.parse::<Variant>()?).is_some(),
                "i" => i.replace(small()?).is_some(),
                _ => return Err(Error::InvalidParameter(format!("unknown key {key:?}"))),
            };
            if slot_taken {
                return Err(Error::InvalidParameter(format!("repeated key {key:?}")));
            }
        }
        let missing = |name: &str| Error::InvalidParameter(format!("missing {name}"));
        Self::new(
            p.ok_or_else(|| missing("p"))?,
            k.ok_or_else(|| missing("k"))?,
            variant.ok_or_else(|| missing("variant"))?,
            i.unwrap_or(match variant {
                Some(Variant::GL1 | Variant::PGL1 | Variant::SL1) => 1,
                _ => 0,
            }),
        )
    }
}

#[derive(Clone, Copy)]
struct QuatLaw {
    p: u64,
    level: u32,
    projective: bool,
}

impl QuatLaw {
    fn unpack(&self, x: u64) -> QuaternionIntegral {
        let f = |s: u32| (x >> s) & (FIELD - 1);
        let w = |m: u32, a0, a1| UnramifiedQuadraticInt {
            a0,
            a1,
            p: self.p,
            m,
        };
        QuaternionIntegral {
            a: w(self.level.div_ceil(2), f(0), f(16)),
            b: w(self.level / 2, f(32), f(48)),
            level: self.level,
        }
    }

    fn pack(x: &QuaternionIntegral) -> u64 {
        let [a0, a1, b0, b1] = x.coords();
        a0 | a1 << 16 | b0 << 32 | b1 << 48
    }

    /// Representative of the class modulo the central units: scaled so
    /// that `a0 = 1`, or `a1 = 1` when `p | a0`.
    fn canonical(&self, x: QuaternionIntegral) -> QuaternionIntegral {
        if !self.projective {
            return x;
        }
        let q = x.a.modulus();
        let lead = if x.a.a0 % self.p != 0 { x.a.a0 } else { x.a.a1 };
        let s = inv_mod(lead, q).expect("units have a unit coordinate");
        QuaternionIntegral {
            a: x.a.scale(s),
            b: x.b.scale(s),
            level: x.level,
        }
    }
}

impl Law for QuatLaw {
    type Form = u64;

    fn op(&self, a: &u64, b: &u64) -> u64 {
        let x = self.unpack(*a).mul_unchecked(&self.unpack(*b));
        Self::pack(&self.canonical(x))
    }
}

/// A built congruence quotient with the residue representative of each
/// element.
#[derive(Debug, Clone)]
pub struct QuaternionQuotient {
    pub spec: QuotientGroupSpec,
    pub group: FiniteGroup,
    pub forms: Vec<QuaternionIntegral>,
}

fn representatives(spec: &QuotientGroupSpec, law: &QuatLaw) -> Vec<u64> {
    let (qa, qb) = spec.ring();
    let p = spec.p;
    let step_a = p.pow(spec.i.div_ceil(2));
    let step_b = p.pow(spec.i / 2);
    let multiples = |step: u64, q: u64| (0..q).step_by(step as usize);
    let a0_values: Vec<u64> = if spec.i == 0 {
        (0..qa).collect()
    } else {
        multiples(step_a, qa).map(|t| (t + 1) % qa).collect()
    };
    let mut out = Vec::new();
    for &a0 in &a0_values {
        for a1 in multiples(if spec.i == 0 { 1 } else { step_a }, qa) {
            let a = UnramifiedQuadraticInt {
                a0,
                a1,
                p,
                m: spec.k.div_ceil(2),
            };
            if !a.is_unit() {
                continue;
            }
            if law.projective {
                // only canonical representatives
                let is_canonical = if a0 % p != 0 { a0 == 1 % qa } else { a1 == 1 % qa };
                if !is_canonical {
                    continue;
                }
            }
            for b1 in multiples(step_b, qb) {
                for b0 in multiples(step_b, qb) {
                    let b = UnramifiedQuadraticInt {
                        a0: b0,
                        a1: b1,
                        p,
                        m: spec.k / 2,
                    };
                    let x = QuaternionIntegral { a, b, level: spec.k };
                    if spec.variant == Variant::SL1 && x.reduced_norm() != 1 % qa {
                        continue;
                    }
                    out.push(QuatLaw::pack(&x));
                }
            }
        }
    }
    out
}

/// Builds the quotient named by `spec` as a group on its residue
/// representatives.
///
/// All representatives are enumerated first and their number checked against
/// the predicted order; a generating set is then picked greedily among them
/// and the group is closed breadth-first, so element indices follow
/// discovery order.
pub fn build_quotient(spec: &QuotientGroupSpec, limits: &Limits) -> Result<QuaternionQuotient> {
    spec.validate()?;
    let predicted = spec.predicted_order().unwrap_or(u64::MAX);
    if predicted > limits.max_order as u64 {
        return Err(Error::OrderCap {
            cap: limits.max_order,
            reached: predicted.min(usize::MAX as u64) as usize,
        });
    }
    let law = QuatLaw {
        p: spec.p,
        level: spec.k,
        projective: spec.variant.is_projective(),
    };
    let reps = representatives(spec, &law);
    if reps.len() as u64 != predicted {
        return Err(Error::NotAGroup(format!(
            "{spec}: {} representatives, expected {predicted}",
            reps.len()
        )));
    }
    let one = QuatLaw::pack(&QuaternionIntegral::one(spec.p, spec.k)?);
    let gens = greedy_form_generators(&law, one, &reps);
    let (group, forms) = close(law, one, &gens, String::from(format!("{spec}")), limits)?;
    if group.order() != reps.len() {
        return Err(Error::NotAGroup(format!(
            "{spec}: closure has order {}, expected {}",
            group.order(),
            reps.len()
        )));
    }
    let forms = forms.iter().map(|&x| law.unpack(x)).collect();
    Ok(QuaternionQuotient {
        spec: *spec,
        group,
        forms,
    })
}

fn greedy_form_generators(law: &QuatLaw, one: u64, reps: &[u64]) -> Vec<u64> {
    let mut member: HashSet<u64> = HashSet::new();
    member.insert(one);
    let mut span = alloc::vec![one];
    let mut gens = Vec::new();
    for &c in reps {
        if member.contains(&c) {
            continue;
        }
        gens.push(c);
        let mut i = 0;
        while i < span.len() {
            for g in &gens {
                let y = law.op(&span[i], g);
                if member.insert(y) {
                    span.push(y);
                }
            }
            i += 1;
        }
        if span.len() == reps.len() {
            break;
        }
    }
    gens
}

/// Outcome of a graded-piece check.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GradedReport {
    pub p: u64,
    pub i: u32,
    pub order: usize,
    pub abelian: bool,
    pub exponent_p: bool,
}

impl GradedReport {
    pub fn holds(&self) -> bool {
        self.order as u64 == self.p * self.p && self.abelian && self.exponent_p
    }
}

/// Builds `GL₁ⁱ/GL₁ᵏ`, takes the image of `GL₁ⁱ⁺¹` and reports on the
/// quotient `GL₁ⁱ/GL₁ⁱ⁺¹`, which should be elementary abelian of order `p²`.
pub fn check_graded_structure(p: u64, i: u32, k: u32, limits: &Limits) -> Result<GradedReport> {
    if i == 0 || k <= i {
        return Err(Error::InvalidParameter(format!(
            "graded pieces need 1 ≤ i < k, got i={i}, k={k}"
        )));
    }
    let built = build_quotient(&QuotientGroupSpec::new(p, k, Variant::GL1, i)?, limits)?;
    let g = &built.group;
    let next: Vec<u32> = g
        .elements()
        .filter(|&x| built.forms[x as usize].is_congruent_to_one(i + 1))
        .collect();
    let n = SubgroupHandle::from_elements(g, next)?;
    let q = quotient(g, &n, limits)?.group;
    Ok(GradedReport {
        p,
        i,
        order: q.order(),
        abelian: q.is_abelian(),
        exponent_p: q.element_orders().iter().all(|&o| p % u64::from(o) == 0),
    })
}

/// Outcome of comparing the norm-one and projective quotients.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IsoReport {
    pub sl_order: usize,
    pub pgl_order: usize,
    pub isomorphic: bool,
}

/// Compares `SL₁ⁱ/SL₁ᵏ` with `PGL₁ⁱ/PGL₁ᵏ` for odd `p` and `i ≥ 1`.
pub fn check_sl_pgl_iso(p: u64, i: u32, k: u32, limits: &Limits) -> Result<IsoReport> {
    if p == 2 {
        return Err(Error::Unsupported("the norm-one and projective quotients are compared for odd p only".into()));
    }
    if i == 0 {
        return Err(Error::InvalidParameter("lower level must be at least 1".into()));
    }
    let sl = build_quotient(&QuotientGroupSpec::new(p, k, Variant::SL1, i)?, limits)?;
    let pgl = build_quotient(&QuotientGroupSpec::new(p, k, Variant::PGL1, i)?, limits)?;
    Ok(IsoReport {
        sl_order: sl.group.order(),
        pgl_order: pgl.group.order(),
        isomorphic: is_isomorphic(&sl.group, &pgl.group, limits)?,
    })
}
