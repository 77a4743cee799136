use alloc::collections::{BTreeMap, VecDeque};
use alloc::format;
use alloc::string::{String, ToString};
use alloc::vec;
use alloc::vec::Vec;
use core::fmt::Write;

use hashbrown::HashMap;

use super::catalog::Construct;
use crate::group::ops::{is_prime, p_power_exponent};
use crate::group::{
    center, fingerprint, frattini_pgroup, is_isomorphic, quotient, FiniteGroup, IsoFingerprint,
    SubgroupHandle,
};
use crate::invariants::{d_min_generators, ncc};
use crate::padic::{build_quotient, QuotientGroupSpec, Variant};
use crate::{Error, Limits, Result};

/// Order-`p` subgroups of `Z(P) ∩ Φ(P)`.
pub fn central_order_p_in_frattini(g: &FiniteGroup, p: u64) -> Result<Vec<SubgroupHandle>> {
    let phi = frattini_pgroup(g, p)?;
    let z = center(g);
    let mut seen = vec![false; g.order()];
    let mut out = Vec::new();
    for &x in z.elements() {
        if seen[x as usize] || g.element_order(x) as u64 != p || !phi.contains(x) {
            continue;
        }
        let h = SubgroupHandle::generated(g, &[x]);
        for &y in h.elements() {
            seen[y as usize] = true;
        }
        out.push(h);
    }
    Ok(out)
}

/// A vertex of the graph: one isomorphism class of `p`-groups.
#[derive(Debug, Clone)]
pub struct PGroupVertex {
    pub group: FiniteGroup,
    pub fingerprint: IsoFingerprint,
    pub ncc: usize,
    pub d: u32,
    pub order: usize,
}

/// An edge `child → parent` where `parent ≅ child/Z` for a central `Z` of
/// order `p` inside `Φ(child)`. `multiplicity` counts such `Z`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct GammaEdge {
    pub child: usize,
    pub parent: usize,
    pub multiplicity: usize,
}

/// `p`-groups with `d` generators and `ncc ≤ k`, ordered by order then
/// fingerprint then discovery, with the central-quotient edges between them.
#[derive(Debug, Clone)]
pub struct GammaGraph {
    pub p: u64,
    pub d: u32,
    pub k: usize,
    pub max_order: usize,
    pub vertices: Vec<PGroupVertex>,
    pub edges: Vec<GammaEdge>,
}

/// The groups the graph is grown from: catalog families and quaternion
/// congruence quotients of `p`-power order at most `max_order`.
pub fn corpus(p: u64, max_order: usize, limits: &Limits) -> Result<Vec<FiniteGroup>> {
    if !is_prime(p) {
        return Err(Error::NotPrime(p));
    }
    let max = max_order as u64;
    let powers: Vec<u64> = (1..).map(|e| p.pow(e)).take_while(|&q| q <= max).collect();
    let mut cons: Vec<Construct> = Vec::new();
    for &q in &powers {
        cons.push(Construct::Cyclic(q));
    }
    for (i, &a) in powers.iter().enumerate() {
        for &b in &powers[i..] {
            if a * b <= max {
                cons.push(Construct::Abelian(vec![a, b]));
            }
            if a * b * p <= max {
                cons.push(Construct::Abelian(vec![a, b, p]));
            }
        }
    }
    if p == 2 {
        for &n in &powers {
            if n >= 8 {
                cons.push(Construct::Dihedral(n));
                cons.push(Construct::GeneralizedQuaternion(n));
                if 2 * n <= max {
                    cons.push(Construct::Product(
                        Construct::Dihedral(n).into(),
                        Construct::Cyclic(2).into(),
                    ));
                    cons.push(Construct::Product(
                        Construct::GeneralizedQuaternion(n).into(),
                        Construct::Cyclic(2).into(),
                    ));
                }
            }
            if n >= 16 {
                cons.push(Construct::Semidihedral(n));
                cons.push(Construct::ModularMaximalCyclic(n));
            }
        }
    } else if p * p * p <= max {
        cons.push(Construct::Extraspecial { p, exponent: p });
        cons.push(Construct::Extraspecial { p, exponent: p * p });
        if p.pow(4) <= max {
            for exponent in [p, p * p] {
                cons.push(Construct::Product(
                    Construct::Extraspecial { p, exponent }.into(),
                    Construct::Cyclic(p).into(),
                ));
            }
        }
    }
    let mut out = Vec::new();
    for c in cons {
        out.push(c.build(limits)?);
    }
    let variants: &[(Variant, u32)] = if p == 2 {
        &[(Variant::GL1, 1), (Variant::GL1, 2), (Variant::GL1, 3)]
    } else {
        &[(Variant::GL1, 1), (Variant::GL1, 2), (Variant::PGL1, 1), (Variant::PGL1, 2)]
    };
    for &(variant, i) in variants {
        for k in i + 1.. {
            let spec = match QuotientGroupSpec::new(p, k, variant, i) {
                Ok(s) => s,
                Err(_) => break,
            };
            if spec.predicted_order().is_none_or(|o| o > max) {
                break;
            }
            let q = build_quotient(&spec, limits)?;
            out.push(q.group.relabel(spec.to_string()));
        }
    }
    Ok(out)
}

struct Builder<'a> {
    p: u64,
    limits: &'a Limits,
    vertices: Vec<PGroupVertex>,
    by_print: HashMap<IsoFingerprint, Vec<usize>>,
}

impl Builder<'_> {
    /// Index of the vertex isomorphic to `g`, inserting it if new.
    fn intern(&mut self, g: &FiniteGroup, ncc_value: usize, d: u32) -> Result<(usize, bool)> {
        let print = fingerprint(g);
        if let Some(ids) = self.by_print.get(&print) {
            for &id in ids {
                if is_isomorphic(&self.vertices[id].group, g, self.limits)? {
                    return Ok((id, false));
                }
            }
        }
        let id = self.vertices.len();
        self.by_print.entry(print.clone()).or_default().push(id);
        self.vertices.push(PGroupVertex {
            group: g.clone(),
            fingerprint: print,
            ncc: ncc_value,
            d,
            order: g.order(),
        });
        Ok((id, true))
    }

    fn admissible(&self, g: &FiniteGroup, d: u32, k: usize) -> Result<Option<usize>> {
        if p_power_exponent(g.order(), self.p).is_none_or(|e| e == 0) {
            return Ok(None);
        }
        if d_min_generators(g, self.p)? != d {
            return Ok(None);
        }
        let value = ncc(g).value;
        Ok((value <= k).then_some(value))
    }
}

/// Builds `Γ` breadth-first downward from the corpus groups of order at most
/// `max_order` with `d` generators and `ncc ≤ k`.
pub fn build_gamma_graph(p: u64, d: u32, k: usize, max_order: usize, limits: &Limits) -> Result<GammaGraph> {
    build_gamma_graph_from(p, d, k, max_order, corpus(p, max_order, limits)?, limits)
}

/// As [`build_gamma_graph`] over an explicit list of seed groups.
pub fn build_gamma_graph_from(
    p: u64,
    d: u32,
    k: usize,
    max_order: usize,
    seeds: Vec<FiniteGroup>,
    limits: &Limits,
) -> Result<GammaGraph> {
    if max_order > limits.iso {
        return Err(Error::SizeCap {
            what: "Γ graph",
            order: max_order,
            cap: limits.iso,
        });
    }
    let mut b = Builder {
        p,
        limits,
        vertices: Vec::new(),
        by_print: HashMap::new(),
    };
    let mut queue = VecDeque::new();
    for g in seeds.iter().filter(|g| g.order() <= max_order) {
        if let Some(value) = b.admissible(g, d, k)? {
            let (id, fresh) = b.intern(g, value, d)?;
            if fresh {
                queue.push_back(id);
            }
        }
    }
    let mut mult: BTreeMap<(usize, usize), usize> = BTreeMap::new();
    while let Some(id) = queue.pop_front() {
        let g = b.vertices[id].group.clone();
        for z in central_order_p_in_frattini(&g, p)? {
            let q = quotient(&g, &z, limits)?.group;
            let q = q.relabel(format!("{}/Z", g.label()));
            // Z ⊆ Φ keeps d, and ncc does not grow under quotients
            let value = ncc(&q).value;
            let (parent, fresh) = b.intern(&q, value, d)?;
            if fresh {
                queue.push_back(parent);
            }
            *mult.entry((id, parent)).or_default() += 1;
        }
    }

    let mut order: Vec<usize> = (0..b.vertices.len()).collect();
    order.sort_by(|&x, &y| {
        let (u, v) = (&b.vertices[x], &b.vertices[y]);
        (u.order, &u.fingerprint, x).cmp(&(v.order, &v.fingerprint, y))
    });
    let mut rank = vec![0; order.len()];
    for (r, &id) in order.iter().enumerate() {
        rank[id] = r;
    }
    let mut slots: Vec<Option<PGroupVertex>> = b.vertices.into_iter().map(Some).collect();
    let vertices = order.iter().map(|&id| slots[id].take().expect("each once")).collect();
    let mut edges: Vec<GammaEdge> = mult
        .into_iter()
        .map(|((c, q), m)| GammaEdge {
            child: rank[c],
            parent: rank[q],
            multiplicity: m,
        })
        .collect();
    edges.sort();
    Ok(GammaGraph {
        p,
        d,
        k,
        max_order,
        vertices,
        edges,
    })
}

impl GammaGraph {
    /// Index of the elementary abelian vertex of order `p^d`, if present.
    pub fn root(&self) -> Option<usize> {
        let target = self.p.checked_pow(self.d)? as usize;
        self.vertices
            .iter()
            .position(|v| v.order == target && v.group.is_abelian())
    }

    pub fn find(&self, g: &FiniteGroup, limits: &Limits) -> Result<Option<usize>> {
        let print = fingerprint(g);
        for (i, v) in self.vertices.iter().enumerate() {
            if v.fingerprint == print && is_isomorphic(&v.group, g, limits)? {
                return Ok(Some(i));
            }
        }
        Ok(None)
    }

    /// Vertices `P` with an edge `P → vertex`.
    pub fn children(&self, vertex: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.parent == vertex)
            .map(|e| e.child)
            .collect()
    }

    pub fn parents(&self, vertex: usize) -> Vec<usize> {
        self.edges
            .iter()
            .filter(|e| e.child == vertex)
            .map(|e| e.parent)
            .collect()
    }

    /// Every vertex reaches the root along edges.
    pub fn root_reachable(&self) -> bool {
        let Some(root) = self.root() else {
            return self.vertices.is_empty();
        };
        let mut reach = vec![false; self.vertices.len()];
        reach[root] = true;
        // parents have smaller order, so one pass in vertex order suffices
        for v in 0..self.vertices.len() {
            if v != root {
                reach[v] = self.parents(v).iter().any(|&q| reach[q]);
            }
        }
        reach.into_iter().all(|r| r)
    }

    /// Spanning tree toward the root: each non-root vertex keeps the edge to
    /// its lowest-indexed parent.
    pub fn spanning_tree(&self) -> Vec<(usize, usize)> {
        (0..self.vertices.len())
            .filter_map(|v| self.parents(v).into_iter().min().map(|q| (v, q)))
            .collect()
    }

    fn name(&self, v: usize) -> String {
        format!("v{v}")
    }

    /// One line per vertex followed by one line per edge.
    pub fn to_text(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(
            s,
            "gamma p={} d={} k={} max_order={} vertices={} edges={}",
            self.p,
            self.d,
            self.k,
            self.max_order,
            self.vertices.len(),
            self.edges.len()
        );
        for (i, v) in self.vertices.iter().enumerate() {
            let _ = writeln!(
                s,
                "{} order={} ncc={} d={} label={}",
                self.name(i),
                v.order,
                v.ncc,
                v.d,
                v.group.label()
            );
        }
        for e in &self.edges {
            let _ = writeln!(
                s,
                "{} -> {} x{}",
                self.name(e.child),
                self.name(e.parent),
                e.multiplicity
            );
        }
        s
    }

    pub fn to_dot(&self) -> String {
        let mut s = String::new();
        let _ = writeln!(s, "digraph gamma_p{}_d{}_k{} {{", self.p, self.d, self.k);
        let _ = writeln!(s, "  rankdir=BT;");
        for (i, v) in self.vertices.iter().enumerate() {
            let label = v.group.label().replace('\\', "\\\\").replace('"', "\\\"");
            let _ = writeln!(
                s,
                "  {} [label=\"{}\\n|P|={} ncc={}\"];",
                self.name(i),
                label,
                v.order,
                v.ncc
            );
        }
        for e in &self.edges {
            let attr = if e.multiplicity > 1 {
                format!(" [label=\"{}\"]", e.multiplicity)
            } else {
                String::new()
            };
            let _ = writeln!(s, "  {} -> {}{};", self.name(e.child), self.name(e.parent), attr);
        }
        s.push_str("}\n");
        s
    }
}

/// What the graph says about the dihedral branch at order `2^n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BranchReport {
    pub n: u32,
    /// Labels of the children of `D_{2^n}`.
    pub dihedral_children: Vec<String>,
    /// The children are exactly `D`, `Q` and `SD` of order `2^{n+1}`.
    pub dihedral_children_ok: bool,
    pub quaternion_childless: bool,
    /// `None` when `SD_{2^n}` does not exist (`n < 4`).
    pub semidihedral_childless: Option<bool>,
    /// Every central quotient of order `2^n` of `M_{2^{n+1}}` is
    /// `C_{2^{n−1}} × C_2`.
    pub modular_quotients_ok: bool,
}

impl BranchReport {
    pub fn holds(&self) -> bool {
        self.dihedral_children_ok
            && self.quaternion_childless
            && self.semidihedral_childless != Some(false)
            && self.modular_quotients_ok
    }
}

/// Checks the branch structure around `D_{2^n}` inside a `Γ_{k,2}(2)` graph
/// whose corpus reaches order `2^{n+1}`.
pub fn branch_lemma_check(graph: &GammaGraph, n: u32, limits: &Limits) -> Result<BranchReport> {
    if graph.p != 2 || graph.d != 2 {
        return Err(Error::InvalidParameter(format!(
            "branch check needs a p=2, d=2 graph, got p={} d={}",
            graph.p, graph.d
        )));
    }
    if n < 3 || (graph.max_order as u64) < 1u64 << (n + 1) {
        return Err(Error::InvalidParameter(format!(
            "n={n} needs 3 ≤ n and order 2^{} within the graph's max_order {}",
            n + 1,
            graph.max_order
        )));
    }
    let size = 1u64 << n;
    let missing = |what: &str| Error::InvalidParameter(format!("{what} is not a vertex of the graph"));
    let dihedral = graph
        .find(&Construct::Dihedral(size).build(limits)?, limits)?
        .ok_or_else(|| missing("the dihedral group"))?;
    let mut children = graph.children(dihedral);
    children.sort_unstable();
    let mut expected = Vec::new();
    for c in [
        Construct::Dihedral(2 * size),
        Construct::GeneralizedQuaternion(2 * size),
        Construct::Semidihedral(2 * size),
    ] {
        if let Some(v) = graph.find(&c.build(limits)?, limits)? {
            expected.push(v);
        }
    }
    expected.sort_unstable();
    let dihedral_children_ok = expected.len() == 3 && children == expected;

    let childless = |c: Construct| -> Result<bool> {
        let v = graph
            .find(&c.build(limits)?, limits)?
            .ok_or_else(|| missing(&format!("{c}")))?;
        Ok(graph.children(v).is_empty())
    };
    let quaternion_childless = childless(Construct::GeneralizedQuaternion(size))?;
    let semidihedral_childless = if n >= 4 {
        Some(childless(Construct::Semidihedral(size))?)
    } else {
        None
    };

    let modular = Construct::ModularMaximalCyclic(2 * size).build(limits)?;
    let target = Construct::Abelian(vec![size / 2, 2]).build(limits)?;
    let mut modular_quotients_ok = true;
    for z in order_two_normal(&modular) {
        let q = quotient(&modular, &z, limits)?.group;
        if !is_isomorphic(&q, &target, limits)? {
            modular_quotients_ok = false;
        }
    }

    Ok(BranchReport {
        n,
        dihedral_children: children
            .iter()
            .map(|&c| String::from(graph.vertices[c].group.label()))
            .collect(),
        dihedral_children_ok,
        quaternion_childless,
        semidihedral_childless,
        modular_quotients_ok,
    })
}

/// All normal subgroups of order 2, that is the order-2 subgroups of the
/// center.
fn order_two_normal(g: &FiniteGroup) -> Vec<SubgroupHandle> {
    center(g)
        .elements()
        .iter()
        .filter(|&&x| g.element_order(x) == 2)
        .map(|&x| SubgroupHandle::generated(g, &[x]))
        .collect()
}
