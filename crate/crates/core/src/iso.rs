//! Isomorphism testing and canonical forms for loops.
//!
//! The two routines are deliberately independent: [`isomorphic`] extends a
//! map from a generating set, [`canonical_form`] runs a branch-and-bound
//! search for the lexicographically least relabeled table.

use std::cmp::Ordering;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::perm::Perm;
use crate::structure::generate;
use crate::table::LoopTable;

/// Default node budget for [`isomorphic`].
pub const DEFAULT_ISO_BUDGET: u64 = 50_000_000;

type Fingerprint = (Vec<usize>, Vec<usize>);

/// Translation cycle types of an element; preserved by isomorphisms.
fn fingerprint(q: &LoopTable, x: usize) -> Fingerprint {
    (q.left_translation(x).cycle_type(), q.right_translation(x).cycle_type())
}

/// Finds an isomorphism `f: q1 -> q2` with `f(xy) = f(x)f(y)`, if any.
pub fn isomorphic(q1: &LoopTable, q2: &LoopTable) -> Result<Option<Perm>> {
    isomorphic_with_budget(q1, q2, DEFAULT_ISO_BUDGET)
}

/// As [`isomorphic`], failing with [`Error::Capped`] after `budget`
/// search nodes.
pub fn isomorphic_with_budget(q1: &LoopTable, q2: &LoopTable, budget: u64) -> Result<Option<Perm>> {
    let n = q1.order();
    if n != q2.order() {
        return Err(Error::OrderMismatch(n, q2.order()));
    }
    let fp1: Vec<_> = (0..n).map(|x| fingerprint(q1, x)).collect();
    let fp2: Vec<_> = (0..n).map(|x| fingerprint(q2, x)).collect();
    let mut classes: HashMap<&Fingerprint, (usize, Vec<usize>)> = HashMap::new();
    for (x, f) in fp2.iter().enumerate() {
        let e = classes.entry(f).or_default();
        e.0 += 1;
        e.1.push(x);
    }
    for f in &fp1 {
        match classes.get_mut(f) {
            Some(e) if e.0 > 0 => e.0 -= 1,
            _ => return Ok(None),
        }
    }

    // Generators of q1, preferring elements with few candidate images.
    let mut gens = Vec::new();
    let mut span = generate(q1, &[]);
    while span.iter().any(|&m| !m) {
        let g = (0..n)
            .filter(|&x| !span[x])
            .min_by_key(|&x| (classes[&fp1[x]].1.len(), x))
            .expect("non-full span has a missing element");
        gens.push(g);
        let seeds: Vec<usize> = (0..n).filter(|&x| span[x]).chain([g]).collect();
        span = generate(q1, &seeds);
    }
    let candidates: Vec<&[usize]> = gens.iter().map(|&g| classes[&fp1[g]].1.as_slice()).collect();

    let mut state = PartialIso::new(n);
    state.map(0, 0);
    if !state.extend(q1, q2) {
        return Ok(None);
    }
    let mut nodes = 0u64;
    let found = search_gens(q1, q2, &gens, &candidates, 0, state, &mut nodes, budget)?;
    Ok(found.map(|s| Perm::from_raw(s.fwd.iter().map(|v| v.expect("total map")).collect())))
}

#[derive(Clone)]
struct PartialIso {
    fwd: Vec<Option<u8>>,
    used: Vec<bool>,
    domain: Vec<usize>,
    processed: usize,
}

impl PartialIso {
    fn new(n: usize) -> Self {
        PartialIso { fwd: vec![None; n], used: vec![false; n], domain: Vec::with_capacity(n), processed: 0 }
    }

    fn map(&mut self, x: usize, y: usize) -> bool {
        match self.fwd[x] {
            Some(v) => v as usize == y,
            None if self.used[y] => false,
            None => {
                self.fwd[x] = Some(y as u8);
                self.used[y] = true;
                self.domain.push(x);
                true
            }
        }
    }

    /// Closes the mapped set under the three operations, checking
    /// consistency on every pair.
    fn extend(&mut self, q1: &LoopTable, q2: &LoopTable) -> bool {
        while self.processed < self.domain.len() {
            let e = self.domain[self.processed];
            self.processed += 1;
            let mut k = 0;
            while k < self.processed {
                let d = self.domain[k];
                k += 1;
                for (a, b) in [(d, e), (e, d)] {
                    let (fa, fb) = (self.fwd[a].unwrap() as usize, self.fwd[b].unwrap() as usize);
                    if !(self.map(q1.mul(a, b), q2.mul(fa, fb))
                        && self.map(q1.ldiv(a, b), q2.ldiv(fa, fb))
                        && self.map(q1.rdiv(a, b), q2.rdiv(fa, fb)))
                    {
                        return false;
                    }
                }
            }
        }
        true
    }
}

#[allow(clippy::too_many_arguments)]
fn search_gens(
    q1: &LoopTable,
    q2: &LoopTable,
    gens: &[usize],
    candidates: &[&[usize]],
    depth: usize,
    state: PartialIso,
    nodes: &mut u64,
    budget: u64,
) -> Result<Option<PartialIso>> {
    if depth == gens.len() {
        return Ok(Some(state));
    }
    let g = gens[depth];
    if let Some(img) = state.fwd[g] {
        // already forced by earlier generators
        let _ = img;
        return search_gens(q1, q2, gens, candidates, depth + 1, state, nodes, budget);
    }
    for &c in candidates[depth] {
        if state.used[c] {
            continue;
        }
        *nodes += 1;
        if *nodes > budget {
            return Err(Error::Capped(*nodes as usize));
        }
        let mut next = state.clone();
        if next.map(g, c) && next.extend(q1, q2) {
            if let Some(done) = search_gens(q1, q2, gens, candidates, depth + 1, next, nodes, budget)? {
                return Ok(Some(done));
            }
        }
    }
    Ok(None)
}

/// The lexicographically least table (row-major) over all relabelings
/// fixing `0`, together with a relabeling that produces it.
pub fn canonical_form(q: &LoopTable) -> (LoopTable, Perm) {
    let n = q.order();
    let mut search = Canon { q, n, best: None, best_sigma: Vec::new(), version: 0 };
    let mut label_of = vec![None; n];
    let mut elem_of = vec![None; n];
    label_of[0] = Some(0u8);
    elem_of[0] = Some(0u8);
    let mut cur = vec![0u8; n * n];
    search.visit(0, &mut label_of, &mut elem_of, 1, Ordering::Equal, &mut cur);
    let sigma = Perm::from_raw(search.best_sigma);
    (q.relabel(&sigma), sigma)
}

/// Canonical table only.
pub fn canonical_table(q: &LoopTable) -> LoopTable {
    canonical_form(q).0
}

struct Canon<'a> {
    q: &'a LoopTable,
    n: usize,
    best: Option<Vec<u8>>,
    best_sigma: Vec<u8>,
    version: u64,
}

impl Canon<'_> {
    /// `label_of[e]` is the new label of element `e`, `elem_of[l]` its inverse.
    /// Labels are handed out in increasing order, so exactly `0..next`
    /// are assigned at any time. `cmp` relates the current prefix to the
    /// incumbent's prefix (`Equal` when there is no incumbent yet).
    fn visit(
        &mut self,
        pos: usize,
        label_of: &mut Vec<Option<u8>>,
        elem_of: &mut Vec<Option<u8>>,
        next: usize,
        cmp: Ordering,
        cur: &mut Vec<u8>,
    ) {
        let n = self.n;
        if pos == n * n {
            if self.best.is_none() || cmp == Ordering::Less {
                self.best = Some(cur.clone());
                self.best_sigma = label_of.iter().map(|l| l.expect("complete labeling")).collect();
                self.version += 1;
            }
            return;
        }
        let (i, j) = (pos / n, pos % n);
        if i == 0 || j == 0 {
            // identity row and column are the same under every relabeling
            cur[pos] = (i + j) as u8;
            self.visit(pos + 1, label_of, elem_of, next, cmp, cur);
            return;
        }

        // At most one of the labels i, j is unassigned, and then it is `next`.
        let need = [i, j].into_iter().find(|&l| elem_of[l].is_none());
        let choices: Vec<Option<usize>> = match need {
            None => vec![None],
            Some(_) => (0..n).filter(|&e| label_of[e].is_none()).map(Some).collect(),
        };
        let resolve = |l: usize, choice: Option<usize>, elem_of: &Vec<Option<u8>>| match (need, choice) {
            (Some(nl), Some(e)) if nl == l => e,
            _ => elem_of[l].expect("assigned label") as usize,
        };
        let mut options: Vec<(u8, Option<usize>)> = Vec::with_capacity(choices.len());
        for choice in choices {
            let nxt = if choice.is_some() { next + 1 } else { next };
            let prod = self.q.mul(resolve(i, choice, elem_of), resolve(j, choice, elem_of));
            let value = match (label_of[prod], choice) {
                (Some(l), _) => l,
                (None, Some(e)) if e == prod => next as u8,
                (None, _) => nxt as u8,
            };
            options.push((value, choice));
        }
        let min = options.iter().map(|o| o.0).min().expect("at least one option");

        let entry_version = self.version;
        for (value, choice) in options {
            if value != min {
                continue;
            }
            // A new incumbent found below this frame shares our prefix.
            let inherited = if self.version != entry_version { Ordering::Equal } else { cmp };
            let c = match (&self.best, inherited) {
                (None, _) => Ordering::Equal,
                (Some(_), Ordering::Less) => Ordering::Less,
                (Some(best), _) => value.cmp(&best[pos]),
            };
            if c == Ordering::Greater {
                continue;
            }
            let mut nxt = next;
            if let (Some(l), Some(e)) = (need, choice) {
                label_of[e] = Some(l as u8);
                elem_of[l] = Some(e as u8);
                nxt += 1;
            }
            let prod = self.q.mul(elem_of[i].unwrap() as usize, elem_of[j].unwrap() as usize);
            let fresh = label_of[prod].is_none();
            if fresh {
                label_of[prod] = Some(nxt as u8);
                elem_of[nxt] = Some(prod as u8);
                nxt += 1;
            }
            debug_assert_eq!(label_of[prod], Some(value));
            cur[pos] = value;
            self.visit(pos + 1, label_of, elem_of, nxt, c, cur);
            if fresh {
                elem_of[nxt - 1] = None;
                label_of[prod] = None;
            }
            if let (Some(l), Some(e)) = (need, choice) {
                label_of[e] = None;
                elem_of[l] = None;
            }
        }
    }
}
