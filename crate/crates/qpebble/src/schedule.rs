//! Reversible-circuit schedules: each pebble move becomes one
//! single-target gate application. Placing a pebble computes a node's
//! value onto a freshly allocated ancilla qubit; removing it re-applies
//! the same gate to uncompute the value, after which the qubit is free
//! for reuse. Primary inputs occupy the first qubits, ancillae the
//! rest.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use serde::{Deserialize, Serialize};

use crate::graph::Dag;
use crate::strategy::{to_moves, MoveKind, PebblingStrategy, StrategyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Direction {
    Compute,
    Uncompute,
}

/// One single-target gate application.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Gate {
    pub node: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub label: Option<String>,
    pub qubit: usize,
    pub direction: Direction,
}

/// One pebble lifetime of a node pinned to a qubit: the `lifetime`-th
/// time `node` is pebbled (0-based), its value lives on `qubit`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct AncillaAssignment {
    pub node: String,
    pub lifetime: usize,
    pub qubit: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Schedule {
    pub gates: Vec<Gate>,
    /// Primary inputs plus peak concurrent pebbles.
    pub qubit_total: usize,
    pub num_primary_inputs: usize,
    pub ancilla_assignment: Vec<AncillaAssignment>,
    pub op_counts: BTreeMap<String, usize>,
}

impl Schedule {
    pub fn num_ancillae(&self) -> usize {
        self.qubit_total - self.num_primary_inputs
    }

    /// Text form: a `qubits` header, an `ops` header, then one line per
    /// gate: `<direction> <node> [label] -> q<index>`.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        let _ = writeln!(
            out,
            "qubits {} inputs {} ancillae {}",
            self.qubit_total,
            self.num_primary_inputs,
            self.num_ancillae()
        );
        let ops: Vec<String> = self
            .op_counts
            .iter()
            .map(|(label, count)| format!("{label}:{count}"))
            .collect();
        let _ = writeln!(out, "ops {}", ops.join(" "));
        for gate in &self.gates {
            let dir = match gate.direction {
                Direction::Compute => "compute",
                Direction::Uncompute => "uncompute",
            };
            match &gate.label {
                Some(label) => {
                    let _ = writeln!(out, "{dir} {} {label} -> q{}", gate.node, gate.qubit);
                }
                None => {
                    let _ = writeln!(out, "{dir} {} -> q{}", gate.node, gate.qubit);
                }
            }
        }
        out
    }
}

const UNLABELED: &str = "_unlabeled";

/// Per-label gate counts: every move (compute or uncompute) increments
/// the count of its node's label, `"_unlabeled"` when absent.
pub fn op_counts(g: &Dag, s: &PebblingStrategy) -> Result<BTreeMap<String, usize>, StrategyError> {
    let moves = to_moves(g, s)?;
    let mut counts = BTreeMap::new();
    for m in &moves {
        let id = g.node_id(&m.node).expect("moves reference known nodes");
        let label = g.nodes()[id].label.as_deref().unwrap_or(UNLABELED);
        *counts.entry(label.to_string()).or_insert(0) += 1;
    }
    Ok(counts)
}

/// Pebble count at each step; the maximum is the peak pebble demand.
pub fn memory_profile(s: &PebblingStrategy) -> Vec<usize> {
    s.configs().iter().map(|c| c.len()).collect()
}

/// Turn a valid strategy into a gate schedule. Pebble moves allocate
/// the lowest-index free ancilla; unpebble moves re-target the qubit
/// currently holding the node and free it.
pub fn emit_schedule(g: &Dag, s: &PebblingStrategy) -> Result<Schedule, StrategyError> {
    let moves = to_moves(g, s)?;
    let inputs = g.num_primary_inputs();

    let mut free: std::collections::BinaryHeap<std::cmp::Reverse<usize>> =
        std::collections::BinaryHeap::new();
    let mut next_fresh = 0usize;
    let mut holding: BTreeMap<&str, usize> = BTreeMap::new();
    let mut lifetime: BTreeMap<&str, usize> = BTreeMap::new();
    let mut gates = Vec::with_capacity(moves.len());
    let mut assignment = Vec::new();

    for m in &moves {
        let id = g.node_id(&m.node).expect("moves reference known nodes");
        let label = g.nodes()[id].label.clone();
        match m.kind {
            MoveKind::Pebble => {
                let slot = match free.pop() {
                    Some(std::cmp::Reverse(slot)) => slot,
                    None => {
                        next_fresh += 1;
                        next_fresh - 1
                    }
                };
                let name: &str = g.name(id);
                holding.insert(name, slot);
                let qubit = inputs + slot;
                assignment.push(AncillaAssignment {
                    node: m.node.clone(),
                    lifetime: *lifetime.get(name).unwrap_or(&0),
                    qubit,
                });
                gates.push(Gate {
                    node: m.node.clone(),
                    label,
                    qubit,
                    direction: Direction::Compute,
                });
            }
            MoveKind::Unpebble => {
                let name: &str = g.name(id);
                let slot = holding.remove(name).expect("unpebble of a held node");
                free.push(std::cmp::Reverse(slot));
                *lifetime.entry(name).or_insert(0) += 1;
                gates.push(Gate {
                    node: m.node.clone(),
                    label,
                    qubit: inputs + slot,
                    direction: Direction::Uncompute,
                });
            }
        }
    }

    Ok(Schedule {
        gates,
        qubit_total: inputs + next_fresh,
        num_primary_inputs: inputs,
        ancilla_assignment: assignment,
        op_counts: op_counts(g, s)?,
    })
}
