use alloc::boxed::Box;
use alloc::format;
use alloc::string::String;
use alloc::vec;
use alloc::vec::Vec;

use hashbrown::HashMap;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Elem, FiniteGroup, Law, LazyMul, Mult};
use crate::{Error, Limits, Result};

struct Store<L: Law> {
    law: L,
    forms: Vec<L::Form>,
    index: HashMap<L::Form, Elem>,
}

impl<L: Law> LazyMul for Store<L> {
    fn mul(&self, a: Elem, b: Elem) -> Elem {
        let c = self
            .law
            .op(&self.forms[a as usize], &self.forms[b as usize]);
        *self
            .index
            .get(&c)
            .expect("law is not closed on the generated set")
    }
}

/// Closes `gens` under `law` breadth-first from `identity`.
///
/// The resulting element numbering is the discovery order, so the same law
/// and generator list always give the same indices. Returns the group and the
/// canonical form of every element.
pub fn close<L: Law>(
    law: L,
    identity: L::Form,
    gens: &[L::Form],
    label: impl Into<String>,
    limits: &Limits,
) -> Result<(FiniteGroup, Vec<L::Form>)> {
    let ng = gens.len();
    let mut forms = vec![identity.clone()];
    let mut index: HashMap<L::Form, Elem> = HashMap::new();
    index.insert(identity, 0);
    // right multiplication by each generator, and the BFS tree
    let mut rmul: Vec<Elem> = Vec::new();
    let mut parent: Vec<(Elem, u32)> = vec![(0, 0)];
    let mut i = 0;
    while i < forms.len() {
        for (s, g) in gens.iter().enumerate() {
            let y = law.op(&forms[i], g);
            let next = forms.len() as Elem;
            let idx = *index.entry(y.clone()).or_insert(next);
            if idx == next {
                if forms.len() >= limits.max_order {
                    return Err(Error::OrderCap {
                        cap: limits.max_order,
                        reached: forms.len() + 1,
                    });
                }
                forms.push(y);
                parent.push((i as Elem, s as u32));
            }
            rmul.push(idx);
        }
        i += 1;
    }
    let n = forms.len();
    let mut gen_idx: Vec<Elem> = Vec::new();
    for s in 0..ng {
        let g = rmul[s];
        if g != 0 && !gen_idx.contains(&g) {
            gen_idx.push(g);
        }
    }
    let mult = if n <= limits.dense_table.min(Limits::DENSE_HARD_MAX) {
        let mut table = vec![0u16; n * n];
        for x in 0..n {
            let row = x * n;
            table[row] = x as u16;
            for y in 1..n {
                let (py, s) = parent[y];
                let xp = table[row + py as usize] as usize;
                table[row + y] = rmul[xp * ng + s as usize] as u16;
            }
        }
        Mult::Table(table)
    } else {
        Mult::Lazy(Box::new(Store {
            law,
            forms: forms.clone(),
            index,
        }))
    };
    Ok((FiniteGroup::from_parts(n, gen_idx, mult, label.into()), forms))
}

/// Greedy generating set: walks `candidates` in order and keeps each one not
/// already in the span of those kept.
pub(crate) fn greedy_generators(
    n: usize,
    candidates: impl IntoIterator<Item = Elem>,
    identity: Elem,
    mul: impl Fn(Elem, Elem) -> Elem,
) -> Vec<Elem> {
    let mut member = vec![false; n];
    member[identity as usize] = true;
    let mut span = vec![identity];
    let mut gens: Vec<Elem> = Vec::new();
    for c in candidates {
        if member[c as usize] {
            continue;
        }
        gens.push(c);
        // re-close from scratch: every old element times every generator
        let mut i = 0;
        while i < span.len() {
            for &g in &gens {
                let y = mul(span[i], g);
                if !member[y as usize] {
                    member[y as usize] = true;
                    span.push(y);
                }
            }
            i += 1;
        }
        if span.len() == n {
            break;
        }
    }
    gens
}

struct TableLaw {
    n: usize,
    table: Vec<u32>,
}

impl Law for TableLaw {
    type Form = Elem;

    fn op(&self, a: &Elem, b: &Elem) -> Elem {
        self.table[*a as usize * self.n + *b as usize]
    }
}

pub(super) fn from_table(
    n: usize,
    table: &[u32],
    label: String,
    limits: &Limits,
) -> Result<(FiniteGroup, Vec<Elem>)> {
    if n == 0 || table.len() != n * n {
        return Err(Error::NotAGroup(format!(
            "expected {} entries, found {}",
            n * n,
            table.len()
        )));
    }
    if n > limits.max_order {
        return Err(Error::OrderCap {
            cap: limits.max_order,
            reached: n,
        });
    }
    if let Some(pos) = table.iter().position(|&x| x as usize >= n) {
        return Err(Error::NotAGroup(format!(
            "entry at row {}, column {} is out of range",
            pos / n,
            pos % n
        )));
    }
    let at = |a: u32, b: u32| table[a as usize * n + b as usize];
    let e = (0..n as u32)
        .find(|&e| (0..n as u32).all(|x| at(e, x) == x && at(x, e) == x))
        .ok_or_else(|| Error::NotAGroup("no two-sided identity".into()))?;
    for x in 0..n as u32 {
        if !(0..n as u32).any(|y| at(x, y) == e && at(y, x) == e) {
            return Err(Error::NotAGroup(format!("element {x} has no inverse")));
        }
    }
    let assoc = |a: u32, b: u32, c: u32| -> Result<()> {
        if at(at(a, b), c) != at(a, at(b, c)) {
            Err(Error::NotAGroup(format!(
                "associativity fails at ({a}, {b}, {c})"
            )))
        } else {
            Ok(())
        }
    };
    if n <= 200 {
        for a in 0..n as u32 {
            for b in 0..n as u32 {
                for c in 0..n as u32 {
                    assoc(a, b, c)?;
                }
            }
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(0x5eed);
        for _ in 0..100_000 {
            assoc(
                rng.random_range(0..n as u32),
                rng.random_range(0..n as u32),
                rng.random_range(0..n as u32),
            )?;
        }
    }
    let gens = greedy_generators(n, 0..n as u32, e, at);
    let law = TableLaw {
        n,
        table: table.to_vec(),
    };
    let (group, forms) = close(law, e, &gens, label, limits)?;
    if group.order() != n {
        return Err(Error::NotAGroup(format!(
            "table generates only {} of {n} elements",
            group.order()
        )));
    }
    Ok((group, forms))
}
