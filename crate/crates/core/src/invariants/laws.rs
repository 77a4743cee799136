use alloc::format;
use alloc::string::String;

use super::action::{cc, ncc, AutAction};
use super::cyclic::{meo, peo};
use crate::group::ops::p_power_exponent;
use crate::group::{
    conjugacy_classes, direct_product, frattini_pgroup, gcd, normal_closure, quotient,
    FiniteGroup, SubgroupHandle,
};
use crate::{Error, Limits, Result};

/// Outcome of checking one inequality on computed values.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LawReport {
    pub law: &'static str,
    pub holds: bool,
    pub detail: String,
}

impl LawReport {
    fn new(law: &'static str, holds: bool, detail: String) -> Self {
        Self { law, holds, detail }
    }
}

/// `d` with `|P/Φ(P)| = p^d`.
pub fn d_min_generators(g: &FiniteGroup, p: u64) -> Result<u32> {
    let phi = frattini_pgroup(g, p)?;
    Ok(p_power_exponent(g.order() / phi.order(), p).expect("index of a subgroup of a p-group"))
}

/// Simple: nontrivial, and the normal closure of every non-identity class is
/// the whole group.
pub fn is_simple(g: &FiniteGroup) -> bool {
    if g.order() == 1 {
        return false;
    }
    conjugacy_classes(g)
        .classes
        .iter()
        .skip(1)
        .all(|class| normal_closure(g, &class[..1]).order() == g.order())
}

/// `ncc(G×H) ≥ ncc(G)·ncc(H)`, with equality when the orders are coprime.
pub fn check_product_law(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<LawReport> {
    let (gh, _) = direct_product(g, h, limits)?;
    let (a, b, c) = (ncc(g).value, ncc(h).value, ncc(&gh).value);
    let coprime = gcd(g.order(), h.order()) == 1;
    let holds = c >= a * b && (!coprime || c == a * b);
    Ok(LawReport::new(
        "product",
        holds,
        format!(
            "ncc(G×H)={c}, ncc(G)·ncc(H)={a}·{b}{}",
            if coprime { " (coprime orders)" } else { "" }
        ),
    ))
}

/// `ncc(H) ≤ [G:H]·ncc(G)`.
pub fn check_index_bound(h: &SubgroupHandle, limits: &Limits) -> Result<LawReport> {
    let g = h.parent();
    let (sub, _) = h.to_group(format!("subgroup of {}", g.label()), limits)?;
    let (a, b) = (ncc(&sub).value, ncc(g).value);
    Ok(LawReport::new(
        "finite index",
        a <= h.index() * b,
        format!("ncc(H)={a}, [G:H]·ncc(G)={}·{b}", h.index()),
    ))
}

/// `ncc(G/N) ≤ ncc(G)`.
pub fn check_quotient_bound(n: &SubgroupHandle, limits: &Limits) -> Result<LawReport> {
    let g = n.parent();
    let q = quotient(g, n, limits)?;
    let (a, b) = (ncc(&q.group).value, ncc(g).value);
    Ok(LawReport::new(
        "quotient",
        a <= b,
        format!("ncc(G/N)={a}, ncc(G)={b}"),
    ))
}

/// `cc(N, conjugation by G) ≤ ncc(G)` for a normal subgroup `N`.
pub fn check_normal_subgroup_bound(n: &SubgroupHandle, limits: &Limits) -> Result<LawReport> {
    let (action, _) = AutAction::conjugation_on(n, limits)?;
    let (a, b) = (cc(&action).value, ncc(n.parent()).value);
    Ok(LawReport::new(
        "normal subgroup",
        a <= b,
        format!("cc(N,G)={a}, ncc(G)={b}"),
    ))
}

/// `|PEO(G)| ≤ ncc(G)` and `MEO(G) ⊆ PEO(G)`.
pub fn check_orders_law(g: &FiniteGroup) -> LawReport {
    let (p, m, n) = (peo(g), meo(g), ncc(g).value);
    LawReport::new(
        "element orders",
        p.len() <= n && m.is_subset(&p),
        format!("peo={p:?}, meo={m:?}, ncc={n}"),
    )
}

/// `ncc(S^k) ≥ k` and `cc(S^k, inner) ≥ k` for a nonabelian simple `S`.
pub fn check_simple_power_bound(s: &FiniteGroup, k: u32, limits: &Limits) -> Result<LawReport> {
    if k == 0 {
        return Ok(LawReport::new("simple power", true, "k=0".into()));
    }
    if s.is_abelian() || !is_simple(s) {
        return Err(Error::InvalidParameter(format!(
            "{} is not a nonabelian simple group",
            s.label()
        )));
    }
    let mut power = s.clone();
    for _ in 1..k {
        power = direct_product(&power, s, limits)?.0;
    }
    let (action, _) = AutAction::conjugation_on(&SubgroupHandle::whole(&power), limits)?;
    let (a, b) = (ncc(&power).value, cc(&action).value);
    let k = k as usize;
    Ok(LawReport::new(
        "simple power",
        a >= k && b >= k,
        format!("ncc(S^{k})={a}, cc(S^{k}, inner)={b}"),
    ))
}
