//! Exhaustive enumeration of loops of a given order.
//!
//! Tables are reduced (row 0 and column 0 fixed), the next cell is chosen by
//! fewest remaining values, and the identities of every required equational
//! variety are propagated on the partial table. Forbidden varieties and the
//! G-loop property are checked on complete tables. Isomorph rejection is a
//! separate canonical-form pass.

mod engine;
pub mod partial;

use std::collections::HashSet;
use std::fmt;
use std::time::{Duration, Instant};

use crate::error::{Error, Result};
use crate::iso::canonical_table;
use crate::table::{LoopTable, MAX_ORDER};
use crate::term::Identity;
use crate::varieties::catalog::{check_variety, identities_for, lookup};

use engine::{Budget, Engine, Flow};
pub use partial::{propagate_identity, Consistency, PartialTable};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Mode {
    Count,
    Collect,
    First,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Isomorphs {
    /// Every reduced table. With the identity pinned to 0 these are exactly
    /// the loops on `0..n`.
    Reduced,
    /// One table per isomorphism class, the first one met.
    UpToIso,
}

/// A cell assignment `(row, col, value)`.
pub type Cell = (usize, usize, usize);

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct SearchSpec {
    pub order: usize,
    pub required: Vec<String>,
    pub forbidden: Vec<String>,
    pub mode: Mode,
    pub isomorphs: Isomorphs,
    /// Propagate required identities on partial tables. When off they are
    /// checked on complete tables only.
    pub propagate: bool,
    /// `None` searches the whole tree; otherwise the union of the subtrees
    /// below each listed prefix (possibly none).
    pub prefixes: Option<Vec<Vec<Cell>>>,
    pub max_nodes: Option<u64>,
    pub max_duration: Option<Duration>,
}

impl SearchSpec {
    pub fn new(order: usize) -> Self {
        SearchSpec {
            order,
            required: Vec::new(),
            forbidden: Vec::new(),
            mode: Mode::Collect,
            isomorphs: Isomorphs::Reduced,
            propagate: true,
            prefixes: None,
            max_nodes: None,
            max_duration: None,
        }
    }

    pub fn require(mut self, ids: &[&str]) -> Self {
        self.required.extend(ids.iter().map(|s| s.to_string()));
        self
    }

    pub fn forbid(mut self, ids: &[&str]) -> Self {
        self.forbidden.extend(ids.iter().map(|s| s.to_string()));
        self
    }

    pub fn mode(mut self, mode: Mode) -> Self {
        self.mode = mode;
        self
    }

    pub fn isomorphs(mut self, iso: Isomorphs) -> Self {
        self.isomorphs = iso;
        self
    }

    pub fn propagate(mut self, on: bool) -> Self {
        self.propagate = on;
        self
    }

    pub fn budget(mut self, nodes: Option<u64>, duration: Option<Duration>) -> Self {
        self.max_nodes = nodes;
        self.max_duration = duration;
        self
    }

    pub fn validate(&self) -> Result<()> {
        if self.order == 0 || self.order > MAX_ORDER {
            return Err(Error::InvalidSpec(format!("order {} outside 1..={MAX_ORDER}", self.order)));
        }
        let mut req = HashSet::new();
        for id in &self.required {
            req.insert(lookup(id)?.id);
        }
        for id in &self.forbidden {
            let canon = lookup(id)?.id;
            if req.contains(canon) {
                return Err(Error::InvalidSpec(format!("`{canon}` is both required and forbidden")));
            }
        }
        for prefix in self.prefixes.iter().flatten() {
            for &(r, c, v) in prefix {
                if r == 0 || c == 0 || r >= self.order || c >= self.order || v >= self.order {
                    return Err(Error::InvalidSpec(format!("prefix cell ({r},{c})={v} out of range")));
                }
            }
        }
        Ok(())
    }
}

#[derive(Clone, Debug)]
pub struct SearchOutcome {
    pub order: usize,
    /// Search-tree nodes visited.
    pub visited: u64,
    /// Tables passing every filter (after isomorph rejection if requested).
    pub found: usize,
    /// Collected tables; empty in count mode.
    pub tables: Vec<LoopTable>,
    pub elapsed: Duration,
}

impl SearchOutcome {
    /// `order=<n> visited=<nodes> found=<m> elapsed=<s>`.
    pub fn summary_line(&self) -> String {
        format!(
            "order={} visited={} found={} elapsed={:.3}",
            self.order,
            self.visited,
            self.found,
            self.elapsed.as_secs_f64()
        )
    }
}

impl fmt::Display for SearchOutcome {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.summary_line())
    }
}

struct Plan {
    idents: Vec<Identity>,
    /// Checked on complete tables: equational requirements when not
    /// propagating, plus non-equational ones.
    leaf_required: Vec<&'static str>,
    forbidden: Vec<&'static str>,
}

fn plan(spec: &SearchSpec) -> Result<Plan> {
    spec.validate()?;
    let mut idents = Vec::new();
    let mut leaf_required = Vec::new();
    for id in &spec.required {
        let entry = lookup(id)?;
        if spec.propagate && entry.is_equational() {
            idents.extend(identities_for(entry.id)?);
        } else {
            leaf_required.push(entry.id);
        }
    }
    let forbidden = spec.forbidden.iter().map(|id| lookup(id).map(|e| e.id)).collect::<Result<_>>()?;
    Ok(Plan { idents, leaf_required, forbidden })
}

/// Streams every table selected by `spec` to `emit`, in deterministic order.
/// Isomorph rejection and modes are applied by the caller.
fn walk(spec: &SearchSpec, start: Instant, emit: &mut dyn FnMut(LoopTable) -> Result<Flow>) -> Result<u64> {
    let plan = plan(spec)?;
    let budget = Budget { max_nodes: spec.max_nodes, deadline: spec.max_duration.map(|d| start + d) };
    let roots: Vec<Vec<Cell>> = spec.prefixes.clone().unwrap_or_else(|| vec![Vec::new()]);
    let mut visited = 0;
    let mut leaf = |table: LoopTable| -> Result<Flow> {
        for id in &plan.leaf_required {
            if !check_variety(&table, id)? {
                return Ok(Flow::Continue);
            }
        }
        for id in &plan.forbidden {
            if check_variety(&table, id)? {
                return Ok(Flow::Continue);
            }
        }
        emit(table)
    };
    for prefix in roots {
        let mut t = PartialTable::reduced(spec.order)?;
        if !prefix.iter().all(|&(r, c, v)| {
            let ok = t.can_place(r, c, v);
            if ok {
                t.place(r, c, v);
            }
            ok
        }) {
            continue;
        }
        let Some(mut engine) = Engine::new(t, &plan.idents, &budget) else {
            continue;
        };
        let flow = engine.run(&mut leaf);
        visited += engine.nodes;
        if matches!(flow?, Flow::Stop) {
            break;
        }
    }
    Ok(visited)
}

/// Runs the search described by `spec` on the current thread.
pub fn enumerate(spec: &SearchSpec) -> Result<SearchOutcome> {
    let start = Instant::now();
    let mut seen: HashSet<LoopTable> = HashSet::new();
    let mut tables = Vec::new();
    let mut found = 0usize;
    let visited = walk(spec, start, &mut |table| {
        if spec.isomorphs == Isomorphs::UpToIso && !seen.insert(canonical_table(&table)) {
            return Ok(Flow::Continue);
        }
        found += 1;
        if spec.mode != Mode::Count {
            tables.push(table);
        }
        Ok(if spec.mode == Mode::First { Flow::Stop } else { Flow::Continue })
    })?;
    Ok(SearchOutcome { order: spec.order, visited, found, tables, elapsed: start.elapsed() })
}

/// Number of isomorphism classes among the tables selected by `spec`.
pub fn count_up_to_isomorphism(spec: &SearchSpec) -> Result<usize> {
    let spec = SearchSpec { mode: Mode::Count, isomorphs: Isomorphs::UpToIso, ..spec.clone() };
    Ok(enumerate(&spec)?.found)
}

/// Smallest order in `1..=max_order` with a loop in every required and no
/// forbidden variety, together with the first witness found.
pub fn minimal_order(
    required: &[&str],
    forbidden: &[&str],
    max_order: usize,
    max_nodes: Option<u64>,
    max_duration: Option<Duration>,
) -> Result<Option<(usize, LoopTable)>> {
    for n in 1..=max_order {
        let spec =
            SearchSpec::new(n).require(required).forbid(forbidden).mode(Mode::First).budget(max_nodes, max_duration);
        if let Some(t) = enumerate(&spec)?.tables.into_iter().next() {
            return Ok(Some((n, t)));
        }
    }
    Ok(None)
}

/// Splits `spec` into `k` specs whose searches partition the original
/// tree. The split fixes a prefix of row 1 (cells `(1,1), (1,2), ...`),
/// deep enough to yield at least `k` Latin-consistent prefixes where
/// possible, and deals the prefixes round-robin. Shards may be empty.
pub fn shard(spec: &SearchSpec, k: usize) -> Result<Vec<SearchSpec>> {
    spec.validate()?;
    if k == 0 {
        return Err(Error::InvalidSpec("shard count must be positive".into()));
    }
    if k == 1 {
        return Ok(vec![spec.clone()]);
    }
    let n = spec.order;
    let bases: Vec<Vec<Cell>> = spec.prefixes.clone().unwrap_or_else(|| vec![Vec::new()]);
    let mut pieces = Vec::new();
    for base in bases {
        let mut t = PartialTable::reduced(n)?;
        if !base.iter().all(|&(r, c, v)| {
            t.can_place(r, c, v) && {
                t.place(r, c, v);
                true
            }
        }) {
            continue;
        }
        // extend with row-1 cells not already fixed by the base
        let free_cols: Vec<usize> = (1..n).filter(|&c| t.get(1, c).is_none()).collect();
        let mut level = vec![(t, base)];
        for &c in &free_cols {
            if level.len() >= k {
                break;
            }
            let mut next = Vec::new();
            for (t, p) in &level {
                let mut cand = t.candidates(1, c);
                while cand != 0 {
                    let v = cand.trailing_zeros() as usize;
                    cand &= cand - 1;
                    let mut t2 = t.clone();
                    t2.place(1, c, v);
                    let mut p2 = p.clone();
                    p2.push((1, c, v));
                    next.push((t2, p2));
                }
            }
            level = next;
        }
        pieces.extend(level.into_iter().map(|(_, p)| p));
    }
    let mut out: Vec<SearchSpec> = (0..k).map(|_| SearchSpec { prefixes: Some(Vec::new()), ..spec.clone() }).collect();
    for (i, p) in pieces.into_iter().enumerate() {
        out[i % k].prefixes.as_mut().expect("set above").push(p);
    }
    Ok(out)
}

/// Runs `k` shards on scoped threads and merges the results in shard
/// order. With isomorph rejection the classes are deduplicated across
/// shards, keeping the first representative in shard order. First mode
/// returns the first witness in shard order.
pub fn enumerate_sharded(spec: &SearchSpec, k: usize) -> Result<SearchOutcome> {
    let start = Instant::now();
    let shards = shard(spec, k)?;
    // each shard collects so that cross-shard dedup sees every table
    let results: Vec<Result<SearchOutcome>> = std::thread::scope(|s| {
        let handles: Vec<_> = shards
            .iter()
            .map(|sp| {
                let sp = if spec.mode == Mode::Count && spec.isomorphs == Isomorphs::UpToIso {
                    SearchSpec { mode: Mode::Collect, ..sp.clone() }
                } else {
                    sp.clone()
                };
                s.spawn(move || enumerate(&sp))
            })
            .collect();
        handles.into_iter().map(|h| h.join().expect("shard thread panicked")).collect()
    });
    let mut visited = 0;
    let mut tables = Vec::new();
    let mut found = 0;
    let mut seen = HashSet::new();
    for r in results {
        let r = r?;
        visited += r.visited;
        if spec.isomorphs == Isomorphs::UpToIso {
            for t in r.tables {
                if seen.insert(canonical_table(&t)) {
                    found += 1;
                    if spec.mode != Mode::Count {
                        tables.push(t);
                    }
                }
            }
        } else {
            found += r.found;
            tables.extend(r.tables);
        }
    }
    if spec.mode == Mode::First {
        tables.truncate(1);
        found = found.min(1);
    }
    Ok(SearchOutcome { order: spec.order, visited, found, tables, elapsed: start.elapsed() })
}
