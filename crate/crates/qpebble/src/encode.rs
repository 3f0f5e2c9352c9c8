//! CNF encoding of the fixed-length pebbling decision problem.
//!
//! For a DAG with node set `V`, a pebble bound `P` and a step count `K`,
//! the encoding uses one Boolean *pebble state variable* per `(node,
//! time)` pair, `time` ranging over `0..=K`, and three clause families:
//!
//! - initial/final: everything unpebbled at time 0; at time `K` exactly
//!   the outputs are pebbled;
//! - move: a node may only change between adjacent times when all of its
//!   dependencies are pebbled at both;
//! - cardinality: at most `P` pebbles at every time.
//!
//! Sequential mode adds per-transition change flags plus an at-most-one
//! constraint over them, so each step moves at most one pebble. Idle
//! steps stay legal in both modes, which makes satisfiability monotone
//! in `K` and lets iterative deepening stop at the first SAT answer.

use crate::graph::{Dag, NodeId};
use crate::strategy::Mode;

/// Mapping from `(node, time)` pairs to pebble variable indices, plus an
/// allocator for auxiliary variables (cardinality counters, change
/// flags). Pebble variables occupy the contiguous range
/// `1..=|V|*(K+1)`; auxiliaries live strictly above.
#[derive(Debug, Clone)]
pub struct VarMap {
    num_nodes: usize,
    steps: usize,
    next_aux: i32,
}

impl VarMap {
    fn new(num_nodes: usize, steps: usize) -> Self {
        let pebble_vars = num_nodes * (steps + 1);
        VarMap {
            num_nodes,
            steps,
            next_aux: pebble_vars as i32 + 1,
        }
    }

    /// The variable that is true iff `node` is pebbled at `time`.
    pub fn pebble(&self, node: NodeId, time: usize) -> i32 {
        debug_assert!(node < self.num_nodes && time <= self.steps);
        (node * (self.steps + 1) + time) as i32 + 1
    }

    pub fn num_pebble_vars(&self) -> usize {
        self.num_nodes * (self.steps + 1)
    }

    pub fn num_vars(&self) -> usize {
        (self.next_aux - 1) as usize
    }

    /// Number of transitions `K` (one less than the number of
    /// configurations).
    pub fn steps(&self) -> usize {
        self.steps
    }

    fn fresh_aux(&mut self) -> i32 {
        let v = self.next_aux;
        self.next_aux += 1;
        v
    }
}

/// Clause totals per family, for diagnostics and size checks.
#[derive(Debug, Clone, Copy, Default, PartialEq, Eq)]
pub struct ClauseCounts {
    pub initial_final: usize,
    pub moves: usize,
    pub cardinality: usize,
    pub change_flags: usize,
    pub exclusivity: usize,
}

/// A clause database in signed-literal form together with its variable
/// map. Within a clause, literals are distinct and nonzero.
#[derive(Debug, Clone)]
pub struct CnfInstance {
    clauses: Vec<Vec<i32>>,
    varmap: VarMap,
    mode: Mode,
    pebbles: usize,
    counts: ClauseCounts,
}

impl CnfInstance {
    pub fn num_vars(&self) -> usize {
        self.varmap.num_vars()
    }

    pub fn clauses(&self) -> &[Vec<i32>] {
        &self.clauses
    }

    pub fn varmap(&self) -> &VarMap {
        &self.varmap
    }

    pub fn mode(&self) -> Mode {
        self.mode
    }

    /// The pebble bound this instance was built with.
    pub fn pebbles(&self) -> usize {
        self.pebbles
    }

    pub fn counts(&self) -> ClauseCounts {
        self.counts
    }

    fn add_clause(&mut self, lits: Vec<i32>) {
        debug_assert!(!lits.is_empty());
        debug_assert!(lits
            .iter()
            .all(|&l| l != 0 && l.unsigned_abs() as usize <= self.num_vars()));
        debug_assert!((1..lits.len()).all(|i| !lits[..i].contains(&lits[i])));
        self.clauses.push(lits);
    }

    /// Append a sequential-counter (unary ladder) encoding of
    /// `Σ lits ≤ bound`. Satisfying assignments of the extended formula
    /// project exactly onto assignments of `lits` with at most `bound`
    /// true literals. Emits nothing when the bound is vacuous; emits
    /// unit negations when `bound` is 0.
    pub fn emit_cardinality(&mut self, lits: &[i32], bound: usize) {
        let n = lits.len();
        if bound >= n {
            return;
        }
        if bound == 0 {
            for &l in lits {
                self.add_clause(vec![-l]);
            }
            return;
        }
        // partial-sum registers: reg[i][j] is true when at least j+1 of
        // the first i+1 literals are true (i in 0..n-1, j in 0..bound)
        let mut reg = vec![vec![0i32; bound]; n - 1];
        for row in &mut reg {
            for slot in row.iter_mut() {
                *slot = self.varmap.fresh_aux();
            }
        }
        self.add_clause(vec![-lits[0], reg[0][0]]);
        for &r in &reg[0][1..] {
            self.add_clause(vec![-r]);
        }
        for i in 1..n - 1 {
            self.add_clause(vec![-lits[i], reg[i][0]]);
            self.add_clause(vec![-reg[i - 1][0], reg[i][0]]);
            for j in 1..bound {
                self.add_clause(vec![-lits[i], -reg[i - 1][j - 1], reg[i][j]]);
                self.add_clause(vec![-reg[i - 1][j], reg[i][j]]);
            }
            self.add_clause(vec![-lits[i], -reg[i - 1][bound - 1]]);
        }
        self.add_clause(vec![-lits[n - 1], -reg[n - 2][bound - 1]]);
    }
}

/// Build the CNF that is satisfiable iff a pebbling strategy with at
/// most `pebbles` pebbles and exactly `steps` transitions exists for
/// `g` under `mode` (idle transitions permitted).
pub fn build_cnf(g: &Dag, pebbles: usize, steps: usize, mode: Mode) -> CnfInstance {
    assert!(pebbles >= 1, "pebbles must be positive");
    let n = g.len();
    let mut cnf = CnfInstance {
        clauses: Vec::new(),
        varmap: VarMap::new(n, steps),
        mode,
        pebbles,
        counts: ClauseCounts::default(),
    };

    // time 0 empty; time K outputs and nothing else
    for v in 0..n {
        cnf.add_clause(vec![-cnf.varmap.pebble(v, 0)]);
        let last = cnf.varmap.pebble(v, steps);
        cnf.add_clause(vec![if g.is_output(v) { last } else { -last }]);
    }
    cnf.counts.initial_final = cnf.clauses.len();

    // a flip of v between i and i+1 needs every dependency of v pebbled
    // at both i and i+1: four ternary clauses per edge per transition
    let mut mark = cnf.clauses.len();
    for i in 0..steps {
        for v in 0..n {
            let a = cnf.varmap.pebble(v, i);
            let b = cnf.varmap.pebble(v, i + 1);
            for &w in g.deps(v) {
                let c = cnf.varmap.pebble(w, i);
                let d = cnf.varmap.pebble(w, i + 1);
                cnf.add_clause(vec![-a, b, c]);
                cnf.add_clause(vec![-a, b, d]);
                cnf.add_clause(vec![a, -b, c]);
                cnf.add_clause(vec![a, -b, d]);
            }
        }
    }
    cnf.counts.moves = cnf.clauses.len() - mark;

    mark = cnf.clauses.len();
    for i in 0..=steps {
        let lits: Vec<i32> = (0..n).map(|v| cnf.varmap.pebble(v, i)).collect();
        cnf.emit_cardinality(&lits, pebbles);
    }
    cnf.counts.cardinality = cnf.clauses.len() - mark;

    if mode == Mode::Sequential {
        for i in 0..steps {
            mark = cnf.clauses.len();
            let mut changes = Vec::with_capacity(n);
            for v in 0..n {
                let a = cnf.varmap.pebble(v, i);
                let b = cnf.varmap.pebble(v, i + 1);
                let e = cnf.varmap.fresh_aux();
                // e <-> (a xor b)
                cnf.add_clause(vec![-e, a, b]);
                cnf.add_clause(vec![-e, -a, -b]);
                cnf.add_clause(vec![e, -a, b]);
                cnf.add_clause(vec![e, a, -b]);
                changes.push(e);
            }
            cnf.counts.change_flags += cnf.clauses.len() - mark;
            mark = cnf.clauses.len();
            cnf.emit_cardinality(&changes, 1);
            cnf.counts.exclusivity += cnf.clauses.len() - mark;
        }
    }

    cnf
}

/// Serialize to DIMACS CNF: `p cnf <vars> <clauses>` then one
/// zero-terminated clause per line, in insertion order.
pub fn to_dimacs(cnf: &CnfInstance) -> String {
    let mut out = String::with_capacity(16 + cnf.clauses.len() * 12);
    out.push_str(&format!("p cnf {} {}\n", cnf.num_vars(), cnf.clauses.len()));
    for clause in &cnf.clauses {
        for lit in clause {
            out.push_str(&lit.to_string());
            out.push(' ');
        }
        out.push_str("0\n");
    }
    out
}

/// Parse DIMACS CNF text into `(num_vars, clauses)`. Accepts `c` comment
/// lines and clauses spanning multiple lines.
pub fn parse_dimacs(text: &str) -> Result<(usize, Vec<Vec<i32>>), String> {
    let mut num_vars = None;
    let mut clauses = Vec::new();
    let mut current = Vec::new();
    for line in text.lines() {
        let line = line.trim();
        if line.is_empty() || line.starts_with('c') || line.starts_with('%') {
            continue;
        }
        if let Some(rest) = line.strip_prefix('p') {
            let fields: Vec<&str> = rest.split_whitespace().collect();
            if fields.len() != 3 || fields[0] != "cnf" {
                return Err(format!("malformed problem line `{line}`"));
            }
            num_vars = Some(
                fields[1]
                    .parse::<usize>()
                    .map_err(|e| format!("bad variable count: {e}"))?,
            );
            continue;
        }
        for tok in line.split_whitespace() {
            let lit: i32 = tok
                .parse()
                .map_err(|e| format!("bad literal `{tok}`: {e}"))?;
            if lit == 0 {
                clauses.push(std::mem::take(&mut current));
            } else {
                current.push(lit);
            }
        }
    }
    if !current.is_empty() {
        return Err("unterminated clause at end of input".into());
    }
    let num_vars = num_vars.ok_or("missing `p cnf` line")?;
    if let Some(l) = clauses
        .iter()
        .flatten()
        .find(|l| l.unsigned_abs() as usize > num_vars)
    {
        return Err(format!("literal {l} out of range"));
    }
    Ok((num_vars, clauses))
}
