//! Depth-first search over reduced tables with watched-instance identity
//! propagation.
//!
//! Every ground instance of every required identity sits on exactly one
//! watch list, keyed by the piece of table it is currently blocked on: an
//! empty cell, or a value missing from a row or column (needed by a
//! division). Filling `(r, c) = v` resolves three keys; only the instances
//! watching them are re-judged, and each either holds, fails (prune), or
//! moves to the list of its next blocker. Undo replays a trail.

use std::time::Instant;

use super::partial::PartialTable;
use crate::error::{Error, Result};
use crate::table::LoopTable;
use crate::term::{Blocker, Identity, Verdict};

pub(crate) struct Budget {
    pub max_nodes: Option<u64>,
    pub deadline: Option<Instant>,
}

struct Frame {
    r: usize,
    c: usize,
    drained: [(usize, Vec<u64>); 3],
    push_mark: usize,
}

pub(crate) struct Engine<'a> {
    t: PartialTable,
    idents: &'a [Identity],
    watch: Vec<Vec<u64>>,
    pushes: Vec<usize>,
    trail: Vec<Frame>,
    pub nodes: u64,
    budget: &'a Budget,
}

/// What the leaf callback wants next.
pub(crate) enum Flow {
    Continue,
    Stop,
}

impl<'a> Engine<'a> {
    /// `None` when the fixed cells already violate an identity.
    pub fn new(t: PartialTable, idents: &'a [Identity], budget: &'a Budget) -> Option<Self> {
        let n = t.order();
        let mut e = Engine {
            t,
            idents,
            watch: vec![Vec::new(); 3 * n * n],
            pushes: Vec::new(),
            trail: Vec::new(),
            nodes: 0,
            budget,
        };
        let mut vars = [0usize; 16];
        for (k, ident) in idents.iter().enumerate() {
            let a = ident.arity();
            assert!(a <= 16, "identity arity above 16");
            let total = (n as u64).pow(a as u32);
            for inst in 0..total {
                decode(inst, n, &mut vars[..a]);
                match ident.judge(&e.t, &vars[..a]) {
                    Verdict::Holds => {}
                    Verdict::Violated => return None,
                    Verdict::Blocked(b) => {
                        let key = key_of(b, n);
                        e.watch[key].push((k as u64) << 48 | inst);
                    }
                }
            }
        }
        Some(e)
    }

    /// Fills `(r, c) = v`; false on a violated instance. Must be followed by
    /// [`Engine::undo`] either way.
    fn assign(&mut self, r: usize, c: usize, v: usize) -> bool {
        let n = self.t.order();
        self.t.place(r, c, v);
        let keys = [r * n + c, n * n + r * n + v, 2 * n * n + c * n + v];
        let drained = keys.map(|k| (k, std::mem::take(&mut self.watch[k])));
        let push_mark = self.pushes.len();
        let mut ok = true;
        let mut vars = [0usize; 16];
        'all: for (_, list) in &drained {
            for &code in list {
                let ident = &self.idents[(code >> 48) as usize];
                let a = ident.arity();
                decode(code & ((1 << 48) - 1), n, &mut vars[..a]);
                match ident.judge(&self.t, &vars[..a]) {
                    Verdict::Holds => {}
                    Verdict::Violated => {
                        ok = false;
                        break 'all;
                    }
                    Verdict::Blocked(b) => {
                        let key = key_of(b, n);
                        self.watch[key].push(code);
                        self.pushes.push(key);
                    }
                }
            }
        }
        self.trail.push(Frame { r, c, drained, push_mark });
        ok
    }

    fn undo(&mut self) {
        let frame = self.trail.pop().expect("undo without assign");
        while self.pushes.len() > frame.push_mark {
            let key = self.pushes.pop().expect("nonempty");
            self.watch[key].pop();
        }
        for (key, list) in frame.drained {
            debug_assert!(self.watch[key].is_empty());
            self.watch[key] = list;
        }
        self.t.clear(frame.r, frame.c);
    }

    /// Hole with the fewest candidates, row-major on ties.
    fn pick(&self) -> Option<(usize, usize, u128)> {
        let n = self.t.order();
        let mut best: Option<(usize, usize, u128)> = None;
        let mut best_count = u32::MAX;
        for r in 1..n {
            for c in 1..n {
                if self.t.get(r, c).is_some() {
                    continue;
                }
                let cand = self.t.candidates(r, c);
                let k = cand.count_ones();
                if k < best_count {
                    best_count = k;
                    best = Some((r, c, cand));
                    if k <= 1 {
                        return best;
                    }
                }
            }
        }
        best
    }

    fn check_budget(&self) -> Result<()> {
        if let Some(max) = self.budget.max_nodes {
            if self.nodes > max {
                return Err(Error::Budget(format!("node budget of {max} exceeded")));
            }
        }
        if self.nodes.is_multiple_of(1024) {
            if let Some(d) = self.budget.deadline {
                if Instant::now() > d {
                    return Err(Error::Budget("time budget exceeded".into()));
                }
            }
        }
        Ok(())
    }

    pub fn run(&mut self, leaf: &mut dyn FnMut(LoopTable) -> Result<Flow>) -> Result<Flow> {
        self.nodes += 1;
        self.check_budget()?;
        let Some((r, c, mut cand)) = self.pick() else {
            let table = self.t.to_table().expect("no holes left");
            return leaf(table);
        };
        while cand != 0 {
            let v = cand.trailing_zeros() as usize;
            cand &= cand - 1;
            let ok = self.assign(r, c, v);
            let flow = if ok { self.run(leaf) } else { Ok(Flow::Continue) };
            self.undo();
            if matches!(flow?, Flow::Stop) {
                return Ok(Flow::Stop);
            }
        }
        Ok(Flow::Continue)
    }
}

#[inline]
fn decode(mut inst: u64, n: usize, vars: &mut [usize]) {
    for v in vars.iter_mut().rev() {
        *v = (inst % n as u64) as usize;
        inst /= n as u64;
    }
}

#[inline]
fn key_of(b: Blocker, n: usize) -> usize {
    match b {
        Blocker::Cell(r, c) => r * n + c,
        Blocker::RowValue(r, v) => n * n + r * n + v,
        Blocker::ColValue(c, v) => 2 * n * n + c * n + v,
    }
}
