use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;

use super::build::greedy_generators;
use super::ops::{center, conjugacy_classes, derived_series_orders, frattini_pgroup, p_power_exponent};
use super::{Elem, FiniteGroup};
use crate::{Error, Limits, Result};

/// Isomorphism invariants. Different fingerprints prove two groups are not
/// isomorphic; equal ones prove nothing.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct IsoFingerprint {
    pub order: usize,
    /// `(element order, count)` sorted by element order.
    pub order_histogram: Vec<(u32, usize)>,
    /// Conjugacy class sizes, sorted.
    pub class_sizes: Vec<usize>,
    pub center_order: usize,
    pub derived_orders: Vec<usize>,
    /// `d` with `|P/Φ(P)| = p^d`, for nontrivial `p`-groups.
    pub frattini_rank: Option<u32>,
}

pub(crate) fn prime_factors(mut n: usize) -> Vec<usize> {
    let mut out = Vec::new();
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += 1;
    }
    if n > 1 {
        out.push(n);
    }
    out
}

pub fn fingerprint(g: &FiniteGroup) -> IsoFingerprint {
    let mut hist: Vec<(u32, usize)> = Vec::new();
    let mut orders = g.element_orders().to_vec();
    orders.sort_unstable();
    for o in orders {
        match hist.last_mut() {
            Some((k, c)) if *k == o => *c += 1,
            _ => hist.push((o, 1)),
        }
    }
    let mut class_sizes = conjugacy_classes(g).sizes();
    class_sizes.sort_unstable();
    let primes = prime_factors(g.order());
    let frattini_rank = match primes.as_slice() {
        [p] => {
            let p = *p as u64;
            frattini_pgroup(g, p)
                .ok()
                .and_then(|phi| p_power_exponent(g.order() / phi.order(), p))
        }
        _ => None,
    };
    IsoFingerprint {
        order: g.order(),
        order_histogram: hist,
        class_sizes,
        center_order: center(g).order(),
        derived_orders: derived_series_orders(g),
        frattini_rank,
    }
}

/// Per-element invariants preserved by any isomorphism: element order,
/// conjugacy class size and the number of `q`-th roots for each prime `q`
/// dividing the group order.
fn element_signatures(g: &FiniteGroup) -> Vec<Vec<u32>> {
    let classes = conjugacy_classes(g);
    let primes = prime_factors(g.order());
    let n = g.order();
    let mut roots = vec![vec![0u32; n]; primes.len()];
    for (i, &q) in primes.iter().enumerate() {
        for x in g.elements() {
            roots[i][g.pow(x, q as u64) as usize] += 1;
        }
    }
    g.elements()
        .map(|x| {
            let mut s = vec![
                g.element_order(x),
                classes.classes[classes.class_of[x as usize] as usize].len() as u32,
            ];
            s.extend(roots.iter().map(|r| r[x as usize]));
            s
        })
        .collect()
}

pub fn is_isomorphic(g: &FiniteGroup, h: &FiniteGroup, limits: &Limits) -> Result<bool> {
    Ok(isomorphism(g, h, limits)?.is_some())
}

/// Searches for an isomorphism `g → h`; the witness maps each element of `g`
/// to its image.
///
/// Fingerprints are compared first. The search then fixes a generating
/// sequence of `g`, tries images with matching element signatures, and
/// extends each partial assignment along the Cayley graph, rejecting it as
/// soon as a relation or injectivity fails.
pub fn isomorphism(
    g: &FiniteGroup,
    h: &FiniteGroup,
    limits: &Limits,
) -> Result<Option<Vec<Elem>>> {
    if g.order() != h.order() {
        return Ok(None);
    }
    if g.order() > limits.iso {
        return Err(Error::SizeCap {
            what: "isomorphism test",
            order: g.order(),
            cap: limits.iso,
        });
    }
    if fingerprint(g) != fingerprint(h) {
        return Ok(None);
    }
    let sig_g = element_signatures(g);
    let sig_h = element_signatures(h);
    let mut by_sig: HashMap<&[u32], Vec<Elem>> = HashMap::new();
    for y in h.elements() {
        by_sig.entry(sig_h[y as usize].as_slice()).or_default().push(y);
    }
    let candidate_count = |x: Elem| by_sig.get(sig_g[x as usize].as_slice()).map_or(0, Vec::len);
    let mut order: Vec<Elem> = g.elements().skip(1).collect();
    order.sort_by_key(|&x| (candidate_count(x), core::cmp::Reverse(g.element_order(x)), x));
    let gens = greedy_generators(g.order(), order, 0, |a, b| g.mul(a, b));
    if gens.is_empty() {
        return Ok(Some(vec![0]));
    }
    let mut search = Search {
        g,
        h,
        sig_g: &sig_g,
        sig_h: &sig_h,
        gens: &gens,
        images: Vec::new(),
    };
    let candidates: Vec<Vec<Elem>> = gens
        .iter()
        .map(|&x| by_sig.get(sig_g[x as usize].as_slice()).cloned().unwrap_or_default())
        .collect();
    Ok(search.run(&candidates))
}

struct Search<'a> {
    g: &'a FiniteGroup,
    h: &'a FiniteGroup,
    sig_g: &'a [Vec<u32>],
    sig_h: &'a [Vec<u32>],
    gens: &'a [Elem],
    images: Vec<Elem>,
}

impl Search<'_> {
    fn run(&mut self, candidates: &[Vec<Elem>]) -> Option<Vec<Elem>> {
        let depth = self.images.len();
        if depth == self.gens.len() {
            return self.extend();
        }
        for &y in &candidates[depth] {
            self.images.push(y);
            let ok = self.extend();
            if let Some(map) = ok {
                if depth + 1 == self.gens.len() {
                    self.images.pop();
                    return Some(map);
                }
                if let Some(found) = self.run(candidates) {
                    self.images.pop();
                    return Some(found);
                }
            }
            self.images.pop();
        }
        None
    }

    /// Extends the current generator images to the subgroup they generate,
    /// returning the partial map if it is a well-defined injective
    /// homomorphism preserving element signatures.
    fn extend(&self) -> Option<Vec<Elem>> {
        let (g, h) = (self.g, self.h);
        let k = self.images.len();
        let mut phi = vec![Elem::MAX; g.order()];
        let mut used = vec![false; h.order()];
        phi[0] = 0;
        used[0] = true;
        let mut queue = vec![0 as Elem];
        let mut i = 0;
        while i < queue.len() {
            let x = queue[i];
            for j in 0..k {
                let y = g.mul(x, self.gens[j]);
                let image = h.mul(phi[x as usize], self.images[j]);
                match phi[y as usize] {
                    Elem::MAX => {
                        if used[image as usize]
                            || self.sig_g[y as usize] != self.sig_h[image as usize]
                        {
                            return None;
                        }
                        used[image as usize] = true;
                        phi[y as usize] = image;
                        queue.push(y);
                    }
                    existing if existing != image => return None,
                    _ => {}
                }
            }
            i += 1;
        }
        Some(phi)
    }
}
