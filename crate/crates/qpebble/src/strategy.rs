//! Pebbling strategies and everything that certifies them: the rule
//! validator, SAT-model decoding, the compute-everything-then-uncompute
//! baseline, and an exhaustive breadth-first oracle for small graphs.
//!
//! A strategy is a sequence of *configurations* (sets of pebbled nodes)
//! starting from the empty set and ending with exactly the outputs. A
//! node may gain or lose its pebble between adjacent configurations only
//! while all of its dependencies are pebbled on both sides of the move.

use std::collections::BTreeSet;
use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::encode::CnfInstance;
use crate::graph::{Dag, NodeId};

/// Move discipline: at most one pebble change per step, or any legal set
/// of simultaneous changes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Mode {
    Sequential,
    Parallel,
}

impl fmt::Display for Mode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Mode::Sequential => write!(f, "sequential"),
            Mode::Parallel => write!(f, "parallel"),
        }
    }
}

/// An ordered sequence of pebbling configurations.
///
/// Serializes as `{"mode": ..., "pebbles": ..., "configs": [[...], ...]}`
/// with node names sorted inside each configuration.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct PebblingStrategy {
    pub mode: Mode,
    #[serde(rename = "pebbles")]
    pub pebbles_declared: usize,
    configs: Vec<BTreeSet<String>>,
}

impl PebblingStrategy {
    pub fn from_names<I, C, S>(mode: Mode, pebbles_declared: usize, configs: I) -> Self
    where
        I: IntoIterator<Item = C>,
        C: IntoIterator<Item = S>,
        S: Into<String>,
    {
        PebblingStrategy {
            mode,
            pebbles_declared,
            configs: configs
                .into_iter()
                .map(|c| c.into_iter().map(Into::into).collect())
                .collect(),
        }
    }

    pub fn configs(&self) -> &[BTreeSet<String>] {
        &self.configs
    }

    /// Number of transitions (one less than the number of
    /// configurations).
    pub fn num_steps(&self) -> usize {
        self.configs.len().saturating_sub(1)
    }

    /// Largest configuration size.
    pub fn peak_pebbles(&self) -> usize {
        self.configs.iter().map(BTreeSet::len).max().unwrap_or(0)
    }
}

/// A single pebble placement or removal. `step` is the index of the
/// configuration the move produces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Move {
    pub kind: MoveKind,
    pub node: String,
    pub step: usize,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum MoveKind {
    Pebble,
    Unpebble,
}

/// Which pebbling rule a strategy broke.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Rule {
    InitialNotEmpty,
    FinalMismatch,
    UnknownNode,
    CardinalityExceeded,
    IllegalMove,
    MultipleMoves,
    IdleStep,
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let name = match self {
            Rule::InitialNotEmpty => "initial-not-empty",
            Rule::FinalMismatch => "final-mismatch",
            Rule::UnknownNode => "unknown-node",
            Rule::CardinalityExceeded => "cardinality-exceeded",
            Rule::IllegalMove => "illegal-move",
            Rule::MultipleMoves => "multiple-moves",
            Rule::IdleStep => "idle-step",
        };
        write!(f, "{name}")
    }
}

/// First broken rule, with the configuration index where it happened.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("step {step}: {rule}: {detail}")]
pub struct Violation {
    pub step: usize,
    pub rule: Rule,
    pub detail: String,
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum StrategyError {
    #[error("invalid strategy: {0}")]
    Invalid(Violation),
    #[error("decoded model fails validation ({0}); this indicates an encoder bug")]
    DecodeIntegrity(Violation),
    #[error("graph too large for the exhaustive oracle: {0} nodes (limit 12)")]
    OracleTooLarge(usize),
}

fn violation(step: usize, rule: Rule, detail: impl Into<String>) -> Violation {
    Violation {
        step,
        rule,
        detail: detail.into(),
    }
}

/// Check `s` against the pebbling rules for `g`.
///
/// Non-strict validation accepts idle steps; `strict` additionally
/// requires every transition to change something and, in sequential
/// mode, exactly one node. The first violation (by step, then by rule)
/// is returned.
pub fn validate(g: &Dag, s: &PebblingStrategy, strict: bool) -> Result<(), Violation> {
    if s.configs.is_empty() {
        return Err(violation(
            0,
            Rule::InitialNotEmpty,
            "strategy has no configurations",
        ));
    }
    if !s.configs[0].is_empty() {
        return Err(violation(
            0,
            Rule::InitialNotEmpty,
            format!(
                "initial configuration holds {} pebble(s)",
                s.configs[0].len()
            ),
        ));
    }

    // resolve every configuration to node-id sets up front
    let mut id_configs: Vec<Vec<NodeId>> = Vec::with_capacity(s.configs.len());
    for (i, config) in s.configs.iter().enumerate() {
        let mut ids = Vec::with_capacity(config.len());
        for name in config {
            match g.node_id(name) {
                Some(id) => ids.push(id),
                None => {
                    return Err(violation(
                        i,
                        Rule::UnknownNode,
                        format!("`{name}` is not a node of the graph"),
                    ))
                }
            }
        }
        ids.sort_unstable();
        id_configs.push(ids);
    }

    let pebbled = |config: &[NodeId], v: NodeId| config.binary_search(&v).is_ok();

    for i in 0..id_configs.len() {
        if id_configs[i].len() > s.pebbles_declared {
            return Err(violation(
                i,
                Rule::CardinalityExceeded,
                format!(
                    "{} pebbles in use, declared bound is {}",
                    id_configs[i].len(),
                    s.pebbles_declared
                ),
            ));
        }
        if i == 0 {
            continue;
        }
        let (prev, cur) = (&id_configs[i - 1], &id_configs[i]);
        let mut changed: Vec<NodeId> = Vec::new();
        for v in 0..g.len() {
            if pebbled(prev, v) != pebbled(cur, v) {
                changed.push(v);
            }
        }
        for &v in &changed {
            for &w in g.deps(v) {
                if !pebbled(prev, w) || !pebbled(cur, w) {
                    let verb = if pebbled(cur, v) {
                        "pebble"
                    } else {
                        "unpebble"
                    };
                    return Err(violation(
                        i,
                        Rule::IllegalMove,
                        format!(
                            "cannot {verb} `{}`: dependency `{}` is not pebbled on both sides",
                            g.name(v),
                            g.name(w)
                        ),
                    ));
                }
            }
        }
        if s.mode == Mode::Sequential && changed.len() > 1 {
            let names: Vec<&str> = changed.iter().map(|&v| g.name(v)).collect();
            return Err(violation(
                i,
                Rule::MultipleMoves,
                format!(
                    "sequential step changes {} nodes: {}",
                    changed.len(),
                    names.join(", ")
                ),
            ));
        }
        if strict && changed.is_empty() {
            return Err(violation(
                i,
                Rule::IdleStep,
                "configuration repeats its predecessor",
            ));
        }
    }

    let last = id_configs.last().unwrap();
    if last.as_slice() != g.outputs() {
        let have: Vec<&str> = last.iter().map(|&v| g.name(v)).collect();
        let want: Vec<&str> = g.outputs().iter().map(|&v| g.name(v)).collect();
        return Err(violation(
            id_configs.len() - 1,
            Rule::FinalMismatch,
            format!(
                "final configuration {{{}}} != outputs {{{}}}",
                have.join(", "),
                want.join(", ")
            ),
        ));
    }
    Ok(())
}

/// Read the pebble state variables out of a satisfying assignment. The
/// result is re-validated; a violation here means the encoder (not the
/// caller) is broken, reported as [`StrategyError::DecodeIntegrity`].
pub fn decode_model(
    g: &Dag,
    cnf: &CnfInstance,
    model: &[bool],
) -> Result<PebblingStrategy, StrategyError> {
    let varmap = cnf.varmap();
    let configs = (0..=varmap.steps()).map(|t| {
        (0..g.len())
            .filter(move |&v| model[varmap.pebble(v, t) as usize - 1])
            .map(|v| g.name(v).to_string())
    });
    let s = PebblingStrategy::from_names(cnf.mode(), cnf.pebbles(), configs);
    validate(g, &s, false).map_err(StrategyError::DecodeIntegrity)?;
    Ok(s)
}

/// The naive baseline: pebble every node in topological order, then
/// unpebble every non-output in reverse topological order. Uses `|V|`
/// pebbles and `2|V| - |O|` steps, and is always strictly valid.
pub fn bennett(g: &Dag) -> PebblingStrategy {
    let order = g.topological_order();
    let mut configs: Vec<BTreeSet<String>> = Vec::with_capacity(2 * g.len() + 1);
    let mut current = BTreeSet::new();
    configs.push(current.clone());
    for &v in &order {
        current.insert(g.name(v).to_string());
        configs.push(current.clone());
    }
    for &v in order.iter().rev() {
        if !g.is_output(v) {
            current.remove(g.name(v));
            configs.push(current.clone());
        }
    }
    PebblingStrategy {
        mode: Mode::Sequential,
        pebbles_declared: g.len(),
        configs,
    }
}

/// Exact minimum number of transitions from empty to outputs-only under
/// `pebbles`, by BFS over the whole configuration space, or `None` when
/// the outputs are unreachable. Exhaustive, so limited to 12 nodes.
pub fn oracle_min_steps(
    g: &Dag,
    pebbles: usize,
    mode: Mode,
) -> Result<Option<usize>, StrategyError> {
    let n = g.len();
    if n > 12 {
        return Err(StrategyError::OracleTooLarge(n));
    }
    let dep_masks: Vec<u32> = (0..n)
        .map(|v| g.deps(v).iter().fold(0u32, |m, &w| m | (1 << w)))
        .collect();
    let target: u32 = g.outputs().iter().fold(0, |m, &v| m | (1 << v));
    if (target.count_ones() as usize) > pebbles {
        return Ok(None);
    }

    let mut dist = vec![u32::MAX; 1usize << n];
    let mut queue = std::collections::VecDeque::new();
    dist[0] = 0;
    queue.push_back(0u32);
    while let Some(c) = queue.pop_front() {
        if c == target {
            return Ok(Some(dist[c as usize] as usize));
        }
        let d = dist[c as usize] + 1;
        let push = |c2: u32, dist: &mut Vec<u32>, queue: &mut std::collections::VecDeque<u32>| {
            if c2.count_ones() as usize <= pebbles && dist[c2 as usize] == u32::MAX {
                dist[c2 as usize] = d;
                queue.push_back(c2);
            }
        };
        match mode {
            Mode::Sequential => {
                for (v, &mask) in dep_masks.iter().enumerate() {
                    if mask & !c == 0 {
                        push(c ^ (1 << v), &mut dist, &mut queue);
                    }
                }
            }
            Mode::Parallel => {
                // flippable nodes; a set of them may flip together when
                // none of them depends on another member of the set
                let free: Vec<usize> = dep_masks
                    .iter()
                    .enumerate()
                    .filter(|&(_, &m)| m & !c == 0)
                    .map(|(v, _)| v)
                    .collect();
                let m = free.len();
                'subsets: for bits in 1u32..(1 << m) {
                    let mut smask = 0u32;
                    for (i, &v) in free.iter().enumerate() {
                        if bits >> i & 1 == 1 {
                            smask |= 1 << v;
                        }
                    }
                    for (i, &v) in free.iter().enumerate() {
                        if bits >> i & 1 == 1 && dep_masks[v] & smask != 0 {
                            continue 'subsets;
                        }
                    }
                    push(c ^ smask, &mut dist, &mut queue);
                }
            }
        }
    }
    Ok(None)
}

/// Decompose a strategy into pebble/unpebble moves; replaying them from
/// the empty set reproduces the configurations. Within a parallel step,
/// moves come out in node declaration order.
pub fn to_moves(g: &Dag, s: &PebblingStrategy) -> Result<Vec<Move>, StrategyError> {
    validate(g, s, false).map_err(StrategyError::Invalid)?;
    let mut moves = Vec::new();
    for i in 1..s.configs.len() {
        let (prev, cur) = (&s.configs[i - 1], &s.configs[i]);
        for v in 0..g.len() {
            let name = g.name(v);
            match (prev.contains(name), cur.contains(name)) {
                (false, true) => moves.push(Move {
                    kind: MoveKind::Pebble,
                    node: name.to_string(),
                    step: i,
                }),
                (true, false) => moves.push(Move {
                    kind: MoveKind::Unpebble,
                    node: name.to_string(),
                    step: i,
                }),
                _ => {}
            }
        }
    }
    Ok(moves)
}
