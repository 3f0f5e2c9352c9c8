//! Embedded CDCL engine: two-watched-literal propagation, first-UIP
//! clause learning, activity-based branching with phase saving, Luby
//! restarts, and activity-driven learnt-clause deletion.
//!
//! The engine is deliberately self-contained and fully deterministic:
//! no randomness anywhere, all ties broken by variable index, so a
//! given clause set always produces the same model and statistics.

use std::time::Instant;

const VAL_UNDEF: i8 = 0;
const VAL_TRUE: i8 = 1;
const VAL_FALSE: i8 = -1;

/// Literal encoded as `2 * var + sign` (sign bit set = negated).
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct Lit(u32);

impl Lit {
    fn new(var: usize, negated: bool) -> Lit {
        Lit((var as u32) << 1 | u32::from(negated))
    }

    fn from_dimacs(lit: i32) -> Lit {
        Lit::new(lit.unsigned_abs() as usize - 1, lit < 0)
    }

    fn var(self) -> usize {
        (self.0 >> 1) as usize
    }

    fn negated(self) -> bool {
        self.0 & 1 == 1
    }

    fn inverse(self) -> Lit {
        Lit(self.0 ^ 1)
    }

    fn index(self) -> usize {
        self.0 as usize
    }
}

#[derive(Debug)]
struct Clause {
    lits: Vec<Lit>,
    activity: f64,
    learnt: bool,
    deleted: bool,
}

#[derive(Debug, Clone, Copy)]
struct Watcher {
    cref: u32,
    blocker: Lit,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CdclStatus {
    Sat,
    Unsat,
    Timeout,
}

#[derive(Debug, Clone, Copy, Default)]
pub struct CdclStats {
    pub decisions: u64,
    pub propagations: u64,
    pub conflicts: u64,
}

/// Max-heap over variables keyed by activity, ties broken towards the
/// smaller index.
#[derive(Debug, Default)]
struct VarOrder {
    heap: Vec<u32>,
    pos: Vec<i32>, // -1 when absent
    activity: Vec<f64>,
}

impl VarOrder {
    fn new(num_vars: usize) -> Self {
        let mut order = VarOrder {
            heap: Vec::with_capacity(num_vars),
            pos: vec![-1; num_vars],
            activity: vec![0.0; num_vars],
        };
        for v in 0..num_vars {
            order.insert(v);
        }
        order
    }

    fn before(&self, a: u32, b: u32) -> bool {
        let (aa, ab) = (self.activity[a as usize], self.activity[b as usize]);
        aa > ab || (aa == ab && a < b)
    }

    fn insert(&mut self, var: usize) {
        if self.pos[var] >= 0 {
            return;
        }
        self.pos[var] = self.heap.len() as i32;
        self.heap.push(var as u32);
        self.sift_up(self.heap.len() - 1);
    }

    fn pop(&mut self) -> Option<usize> {
        let top = *self.heap.first()?;
        let last = self.heap.pop().unwrap();
        self.pos[top as usize] = -1;
        if !self.heap.is_empty() {
            self.heap[0] = last;
            self.pos[last as usize] = 0;
            self.sift_down(0);
        }
        Some(top as usize)
    }

    fn bump(&mut self, var: usize, inc: f64) -> bool {
        self.activity[var] += inc;
        if self.pos[var] >= 0 {
            self.sift_up(self.pos[var] as usize);
        }
        self.activity[var] > 1e100
    }

    fn rescale(&mut self) {
        for a in &mut self.activity {
            *a *= 1e-100;
        }
    }

    fn sift_up(&mut self, mut i: usize) {
        while i > 0 {
            let parent = (i - 1) / 2;
            if self.before(self.heap[i], self.heap[parent]) {
                self.swap(i, parent);
                i = parent;
            } else {
                break;
            }
        }
    }

    fn sift_down(&mut self, mut i: usize) {
        loop {
            let (l, r) = (2 * i + 1, 2 * i + 2);
            let mut best = i;
            if l < self.heap.len() && self.before(self.heap[l], self.heap[best]) {
                best = l;
            }
            if r < self.heap.len() && self.before(self.heap[r], self.heap[best]) {
                best = r;
            }
            if best == i {
                break;
            }
            self.swap(i, best);
            i = best;
        }
    }

    fn swap(&mut self, i: usize, j: usize) {
        self.heap.swap(i, j);
        self.pos[self.heap[i] as usize] = i as i32;
        self.pos[self.heap[j] as usize] = j as i32;
    }
}

pub struct Cdcl {
    num_vars: usize,
    clauses: Vec<Clause>,
    learnt_refs: Vec<u32>,
    watches: Vec<Vec<Watcher>>,
    assigns: Vec<i8>,
    phase: Vec<bool>,
    level: Vec<u32>,
    reason: Vec<Option<u32>>,
    trail: Vec<Lit>,
    trail_lim: Vec<usize>,
    qhead: usize,
    order: VarOrder,
    var_inc: f64,
    clause_inc: f64,
    seen: Vec<bool>,
    ok: bool,
    pub stats: CdclStats,
}

impl Cdcl {
    pub fn new(num_vars: usize) -> Self {
        Cdcl {
            num_vars,
            clauses: Vec::new(),
            learnt_refs: Vec::new(),
            watches: vec![Vec::new(); 2 * num_vars],
            assigns: vec![VAL_UNDEF; num_vars],
            phase: vec![false; num_vars],
            level: vec![0; num_vars],
            reason: vec![None; num_vars],
            trail: Vec::with_capacity(num_vars),
            trail_lim: Vec::new(),
            qhead: 0,
            order: VarOrder::new(num_vars),
            var_inc: 1.0,
            clause_inc: 1.0,
            seen: vec![false; num_vars],
            ok: true,
            stats: CdclStats::default(),
        }
    }

    fn value(&self, lit: Lit) -> i8 {
        lit_value(&self.assigns, lit)
    }

    /// Add an input clause (signed DIMACS literals). Tautologies are
    /// dropped, duplicates merged, and literals already false at the
    /// root level removed.
    pub fn add_clause(&mut self, lits: &[i32]) {
        if !self.ok {
            return;
        }
        debug_assert!(self.trail_lim.is_empty());
        let mut clause: Vec<Lit> = Vec::with_capacity(lits.len());
        for &l in lits {
            debug_assert!(l != 0 && l.unsigned_abs() as usize <= self.num_vars);
            let lit = Lit::from_dimacs(l);
            if self.value(lit) == VAL_TRUE || clause.contains(&lit.inverse()) {
                return; // already satisfied or tautological
            }
            if self.value(lit) == VAL_FALSE || clause.contains(&lit) {
                continue;
            }
            clause.push(lit);
        }
        match clause.len() {
            0 => self.ok = false,
            1 => {
                self.enqueue(clause[0], None);
                if self.propagate().is_some() {
                    self.ok = false;
                }
            }
            _ => {
                self.alloc_clause(clause, false);
            }
        }
    }

    fn alloc_clause(&mut self, lits: Vec<Lit>, learnt: bool) -> u32 {
        let cref = self.clauses.len() as u32;
        self.watches[lits[0].inverse().index()].push(Watcher {
            cref,
            blocker: lits[1],
        });
        self.watches[lits[1].inverse().index()].push(Watcher {
            cref,
            blocker: lits[0],
        });
        self.clauses.push(Clause {
            lits,
            activity: 0.0,
            learnt,
            deleted: false,
        });
        if learnt {
            self.learnt_refs.push(cref);
        }
        cref
    }

    fn enqueue(&mut self, lit: Lit, reason: Option<u32>) {
        debug_assert_eq!(self.value(lit), VAL_UNDEF);
        let v = lit.var();
        self.assigns[v] = if lit.negated() { VAL_FALSE } else { VAL_TRUE };
        self.phase[v] = !lit.negated();
        self.level[v] = self.trail_lim.len() as u32;
        self.reason[v] = reason;
        self.trail.push(lit);
    }

    fn propagate(&mut self) -> Option<u32> {
        let mut conflict = None;
        while self.qhead < self.trail.len() {
            let p = self.trail[self.qhead];
            self.qhead += 1;
            self.stats.propagations += 1;

            // clauses in which ¬p is watched may have become unit
            let watch_idx = p.index();
            let watchers = std::mem::take(&mut self.watches[watch_idx]);
            let mut kept = Vec::with_capacity(watchers.len());
            let false_lit = p.inverse();
            let mut iter = watchers.into_iter();
            'watchers: while let Some(w) = iter.next() {
                if self.value(w.blocker) == VAL_TRUE {
                    kept.push(w);
                    continue;
                }
                let first = {
                    let assigns = &self.assigns;
                    let clause = &mut self.clauses[w.cref as usize];
                    if clause.deleted {
                        continue; // lazily drop the watcher
                    }
                    if clause.lits[0] == false_lit {
                        clause.lits.swap(0, 1);
                    }
                    debug_assert_eq!(clause.lits[1], false_lit);
                    let first = clause.lits[0];
                    if first != w.blocker && lit_value(assigns, first) == VAL_TRUE {
                        kept.push(Watcher {
                            cref: w.cref,
                            blocker: first,
                        });
                        continue;
                    }
                    for k in 2..clause.lits.len() {
                        if lit_value(assigns, clause.lits[k]) != VAL_FALSE {
                            clause.lits.swap(1, k);
                            let new_watch = clause.lits[1].inverse().index();
                            self.watches[new_watch].push(Watcher {
                                cref: w.cref,
                                blocker: first,
                            });
                            continue 'watchers;
                        }
                    }
                    first
                };
                // no replacement: unit or conflicting
                kept.push(Watcher {
                    cref: w.cref,
                    blocker: first,
                });
                if self.value(first) == VAL_FALSE {
                    conflict = Some(w.cref);
                    self.qhead = self.trail.len();
                    kept.extend(iter);
                    break;
                }
                self.enqueue(first, Some(w.cref));
            }
            self.watches[watch_idx] = kept;
            if conflict.is_some() {
                break;
            }
        }
        conflict
    }

    /// First-UIP learning. Returns the learnt clause (asserting literal
    /// first) and the level to backtrack to.
    fn analyze(&mut self, mut confl: u32) -> (Vec<Lit>, u32) {
        let current_level = self.trail_lim.len() as u32;
        let mut learnt: Vec<Lit> = vec![Lit(0)]; // slot 0 = asserting literal
        let mut counter = 0usize;
        let mut index = self.trail.len();
        let mut p: Option<Lit> = None;

        loop {
            self.bump_clause(confl);
            let lits: Vec<Lit> = {
                let clause = &self.clauses[confl as usize];
                let skip = usize::from(p.is_some());
                clause.lits[skip..].to_vec()
            };
            for q in lits {
                let v = q.var();
                if !self.seen[v] && self.level[v] > 0 {
                    self.seen[v] = true;
                    self.bump_var(v);
                    if self.level[v] >= current_level {
                        counter += 1;
                    } else {
                        learnt.push(q);
                    }
                }
            }
            loop {
                index -= 1;
                if self.seen[self.trail[index].var()] {
                    break;
                }
            }
            let pl = self.trail[index];
            self.seen[pl.var()] = false;
            counter -= 1;
            if counter == 0 {
                learnt[0] = pl.inverse();
                break;
            }
            confl = self.reason[pl.var()].expect("non-UIP literal must be propagated");
            p = Some(pl);
        }

        for lit in &learnt[1..] {
            self.seen[lit.var()] = false;
        }

        let backtrack = if learnt.len() == 1 {
            0
        } else {
            // move the literal with the highest remaining level to slot 1
            let mut max_i = 1;
            for i in 2..learnt.len() {
                if self.level[learnt[i].var()] > self.level[learnt[max_i].var()] {
                    max_i = i;
                }
            }
            learnt.swap(1, max_i);
            self.level[learnt[1].var()]
        };
        (learnt, backtrack)
    }

    fn bump_var(&mut self, var: usize) {
        if self.order.bump(var, self.var_inc) {
            self.order.rescale();
            self.var_inc *= 1e-100;
        }
    }

    fn bump_clause(&mut self, cref: u32) {
        let clause = &mut self.clauses[cref as usize];
        if !clause.learnt {
            return;
        }
        clause.activity += self.clause_inc;
        if clause.activity > 1e20 {
            for &r in &self.learnt_refs {
                self.clauses[r as usize].activity *= 1e-20;
            }
            self.clause_inc *= 1e-20;
        }
    }

    fn cancel_until(&mut self, level: u32) {
        if self.trail_lim.len() as u32 <= level {
            return;
        }
        let bound = self.trail_lim[level as usize];
        while self.trail.len() > bound {
            let lit = self.trail.pop().unwrap();
            let v = lit.var();
            self.assigns[v] = VAL_UNDEF;
            self.reason[v] = None;
            self.order.insert(v);
        }
        self.trail_lim.truncate(level as usize);
        self.qhead = self.trail.len();
    }

    fn locked(&self, cref: u32) -> bool {
        let lits = &self.clauses[cref as usize].lits;
        !lits.is_empty()
            && self.value(lits[0]) == VAL_TRUE
            && self.reason[lits[0].var()] == Some(cref)
    }

    /// Drop the lower-activity half of the learnt clauses, sparing
    /// binary clauses and clauses that are the reason for a current
    /// assignment.
    fn reduce_db(&mut self) {
        let mut refs = std::mem::take(&mut self.learnt_refs);
        refs.sort_by(|&a, &b| {
            let (ca, cb) = (&self.clauses[a as usize], &self.clauses[b as usize]);
            cb.activity
                .partial_cmp(&ca.activity)
                .unwrap()
                .then(a.cmp(&b))
        });
        let keep_count = refs.len() / 2;
        for (i, &cref) in refs.iter().enumerate() {
            let len = self.clauses[cref as usize].lits.len();
            if i >= keep_count && len > 2 && !self.locked(cref) {
                let clause = &mut self.clauses[cref as usize];
                clause.deleted = true;
                clause.lits = Vec::new();
            }
        }
        refs.retain(|&r| !self.clauses[r as usize].deleted);
        self.learnt_refs = refs;
    }

    fn decide(&mut self) -> bool {
        while let Some(var) = self.order.pop() {
            if self.assigns[var] == VAL_UNDEF {
                self.stats.decisions += 1;
                self.trail_lim.push(self.trail.len());
                self.enqueue(Lit::new(var, !self.phase[var]), None);
                return true;
            }
        }
        false
    }

    pub fn solve(&mut self, deadline: Option<Instant>) -> CdclStatus {
        if !self.ok {
            return CdclStatus::Unsat;
        }
        if self.propagate().is_some() {
            self.ok = false;
            return CdclStatus::Unsat;
        }
        if let Some(d) = deadline {
            if Instant::now() >= d {
                return CdclStatus::Timeout;
            }
        }

        let mut restart_round = 0u64;
        let mut conflicts_until_restart = 100 * luby(restart_round);
        let mut max_learnts = 2000 + self.clauses.len() / 3;

        loop {
            if let Some(confl) = self.propagate() {
                self.stats.conflicts += 1;
                if self.trail_lim.is_empty() {
                    return CdclStatus::Unsat;
                }
                let (learnt, backtrack) = self.analyze(confl);
                self.cancel_until(backtrack);
                if learnt.len() == 1 {
                    self.enqueue(learnt[0], None);
                } else {
                    let cref = self.alloc_clause(learnt, true);
                    self.bump_clause(cref);
                    let assert_lit = self.clauses[cref as usize].lits[0];
                    self.enqueue(assert_lit, Some(cref));
                }
                self.var_inc /= 0.95;
                self.clause_inc /= 0.999;

                conflicts_until_restart = conflicts_until_restart.saturating_sub(1);
                if self.stats.conflicts.is_multiple_of(256) {
                    if let Some(d) = deadline {
                        if Instant::now() >= d {
                            return CdclStatus::Timeout;
                        }
                    }
                }
            } else {
                if conflicts_until_restart == 0 {
                    restart_round += 1;
                    conflicts_until_restart = 100 * luby(restart_round);
                    self.cancel_until(0);
                }
                if self.learnt_refs.len() >= max_learnts {
                    self.reduce_db();
                    max_learnts += max_learnts / 2;
                }
                if !self.decide() {
                    return CdclStatus::Sat;
                }
            }
        }
    }

    /// Total assignment after a SAT answer.
    pub fn model(&self) -> Vec<bool> {
        debug_assert!(self.assigns.iter().all(|&a| a != VAL_UNDEF));
        self.assigns.iter().map(|&a| a == VAL_TRUE).collect()
    }
}

fn lit_value(assigns: &[i8], lit: Lit) -> i8 {
    let v = assigns[lit.var()];
    if lit.negated() {
        -v
    } else {
        v
    }
}

/// Luby restart sequence: 1 1 2 1 1 2 4 1 1 2 1 1 2 4 8 ...
fn luby(mut i: u64) -> u64 {
    // find the finite subsequence containing index i, then walk down
    let (mut size, mut seq) = (1u64, 0u32);
    while size < i + 1 {
        seq += 1;
        size = 2 * size + 1;
    }
    while size - 1 != i {
        size = (size - 1) / 2;
        seq -= 1;
        i %= size;
    }
    1u64 << seq
}
