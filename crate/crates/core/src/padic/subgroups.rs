use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use super::quotient::{QuaternionQuotient, Variant};
use crate::group::{frattini_pgroup, quotient, Elem, FiniteGroup, SubgroupHandle};
use crate::{Error, Limits, Result};

/// Every subgroup of index `p` in a `p`-group, as the kernels of the nonzero
/// functionals on `P/Φ(P) ≅ F_p^d` taken up to scalars.
pub fn index_p_subgroups(g: &FiniteGroup, p: u64, limits: &Limits) -> Result<Vec<SubgroupHandle>> {
    let phi = frattini_pgroup(g, p)?;
    let q = quotient(g, &phi, limits)?;
    let v = &q.group;
    // a greedy generating set of an elementary abelian group is a basis
    let mut basis: Vec<Elem> = Vec::new();
    let mut span = vec![false; v.order()];
    span[0] = true;
    for x in v.elements() {
        if span[x as usize] {
            continue;
        }
        basis.push(x);
        let old: Vec<Elem> = v.elements().filter(|&y| span[y as usize]).collect();
        for y in old {
            let mut z = y;
            for _ in 1..p {
                z = v.mul(z, x);
                span[z as usize] = true;
            }
        }
    }
    let d = basis.len();
    let mut coords = vec![Vec::new(); v.order()];
    for code in 0..v.order() {
        let mut c = Vec::with_capacity(d);
        let mut rest = code as u64;
        let mut x = 0;
        for &b in &basis {
            let e = rest % p;
            rest /= p;
            c.push(e);
            x = v.mul(x, v.pow(b, e));
        }
        coords[x as usize] = c;
    }
    let mut out = Vec::new();
    for f in projective_points(p, d) {
        let kernel: Vec<Elem> = g
            .elements()
            .filter(|&x| {
                let c = &coords[q.project(x) as usize];
                c.iter().zip(&f).map(|(a, b)| a * b).sum::<u64>() % p == 0
            })
            .collect();
        out.push(SubgroupHandle::from_elements(g, kernel)?);
    }
    Ok(out)
}

/// Nonzero vectors of `F_p^d` whose first nonzero entry is 1.
fn projective_points(p: u64, d: usize) -> Vec<Vec<u64>> {
    let mut out = Vec::new();
    for lead in 0..d {
        let free = d - lead - 1;
        let count = p.pow(free as u32);
        for code in 0..count {
            let mut v = vec![0; d];
            v[lead] = 1;
            let mut rest = code;
            for slot in v.iter_mut().skip(lead + 1) {
                *slot = rest % p;
                rest /= p;
            }
            out.push(v);
        }
    }
    out
}

/// An index-`p` subgroup of a first-congruence quotient, named by the line
/// `L ⊂ F_p²` it is the preimage of under `a + πb ↦ b mod p`.
#[derive(Debug, Clone)]
pub struct LineSubgroup {
    /// Spanning vector of `L`, normalized as `(1, t)` or `(0, 1)`.
    pub line: (u64, u64),
    pub subgroup: SubgroupHandle,
}

impl LineSubgroup {
    pub fn label(&self) -> String {
        format!("b mod p in <({}, {})>", self.line.0, self.line.1)
    }
}

/// The `p + 1` index-`p` subgroups of a quotient of depth `i = 1` and level
/// `k ≥ 2`, labeled by lines so that the same subgroup can be followed
/// through a tower of levels.
pub fn line_subgroups(q: &QuaternionQuotient) -> Result<Vec<LineSubgroup>> {
    let spec = q.spec;
    if spec.i != 1 || spec.k < 2 || spec.variant == Variant::GL {
        return Err(Error::InvalidParameter(format!(
            "line subgroups need a depth-1 congruence quotient of level ≥ 2, got {spec}"
        )));
    }
    let p = spec.p;
    let mut lines: Vec<(u64, u64)> = (0..p).map(|t| (1, t)).collect();
    lines.push((0, 1));
    let g = &q.group;
    lines
        .into_iter()
        .map(|(u, w)| {
            // (b0, b1) lies on the line spanned by (u, w) iff b0·w − b1·u ≡ 0
            let elems: Vec<Elem> = g
                .elements()
                .filter(|&x| {
                    let [_, _, b0, b1] = q.forms[x as usize].coords();
                    (b0 % p * w + (p - b1 % p) * u) % p == 0
                })
                .collect();
            Ok(LineSubgroup {
                line: (u, w),
                subgroup: SubgroupHandle::from_elements(g, elems)?,
            })
        })
        .collect()
}
