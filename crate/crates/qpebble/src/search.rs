//! Outer search loops: iterative deepening on the step count for a
//! fixed pebble budget, and a descending sweep over budgets that maps
//! out the space/time trade-off frontier.
//!
//! Because the encoding tolerates idle steps, satisfiability is
//! monotone in the step count `K`, so probing `K, K+1, K+2, ...` from a
//! sound lower bound and stopping at the first SAT answer yields the
//! exact minimum.

use std::time::Instant;

use thiserror::Error;

use crate::encode::build_cnf;
use crate::graph::Dag;
use crate::solve::{Backend, ExternalError, Status};
use crate::strategy::{decode_model, Mode, PebblingStrategy, StrategyError};

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum SearchStatus {
    /// A strategy with the reported number of steps was found (and is
    /// minimal for the given budget).
    Found,
    /// Every step count up to the cap was unsatisfiable, or the budget
    /// cannot possibly suffice.
    ExhaustedK,
    /// The time budget ran out before a verdict.
    Timeout,
}

/// Result of one `(graph, pebbles)` search point.
#[derive(Debug, Clone)]
pub struct SearchOutcome {
    pub pebbles: usize,
    pub status: SearchStatus,
    pub steps: Option<usize>,
    pub strategy: Option<PebblingStrategy>,
    pub total_time_ms: u64,
    /// Human-readable reason for non-`Found` terminal states.
    pub diagnostic: Option<String>,
}

#[derive(Debug, Error)]
pub enum SearchError {
    #[error(transparent)]
    Solver(#[from] ExternalError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
}

/// Sound lower bound on the number of transitions any strategy needs.
///
/// Sequential mode: every node must be pebbled at least once and every
/// non-output unpebbled at least once, one move per step, giving
/// `2|V| - |O|`. Parallel mode: a node at dependency depth `d` cannot be
/// pebbled before step `d`, so the deepest output's depth is a bound.
pub fn lower_bound_steps(g: &Dag, mode: Mode) -> usize {
    match mode {
        Mode::Sequential => 2 * g.len() - g.outputs().len(),
        Mode::Parallel => {
            let depths = g.node_depths();
            g.outputs().iter().map(|&v| depths[v]).max().unwrap_or(0)
        }
    }
}

/// Minimum steps for a fixed pebble budget, by iterative deepening from
/// [`lower_bound_steps`] up to `k_max`. The time budget covers the whole
/// loop, not one probe.
pub fn min_steps(
    g: &Dag,
    pebbles: usize,
    mode: Mode,
    backend: &Backend,
    k_max: usize,
    timeout_ms: u64,
) -> Result<SearchOutcome, SearchError> {
    assert!(pebbles >= 1, "pebbles must be positive");
    let start = Instant::now();
    let outcome = |status, steps, strategy, diagnostic, start: Instant| SearchOutcome {
        pebbles,
        status,
        steps,
        strategy,
        total_time_ms: start.elapsed().as_millis() as u64,
        diagnostic,
    };

    // placing a pebble on v needs deps(v) pebbled plus v's own pebble,
    // so a budget below max(|deps| + 1) can never succeed at any K
    let needed = g
        .nodes()
        .iter()
        .map(|n| n.deps.len() + 1)
        .max()
        .unwrap_or(1);
    if pebbles < needed {
        return Ok(outcome(
            SearchStatus::ExhaustedK,
            None,
            None,
            Some(format!(
                "infeasible: some node needs {needed} simultaneous pebbles, budget is {pebbles}"
            )),
            start,
        ));
    }

    for k in lower_bound_steps(g, mode)..=k_max {
        let elapsed = start.elapsed().as_millis() as u64;
        let remaining = timeout_ms.saturating_sub(elapsed);
        if remaining == 0 {
            return Ok(outcome(
                SearchStatus::Timeout,
                None,
                None,
                Some(format!("budget exhausted before probing K={k}")),
                start,
            ));
        }
        let cnf = build_cnf(g, pebbles, k, mode);
        let result = backend.solve(&cnf, remaining)?;
        match result.status {
            Status::Sat => {
                let strategy = decode_model(g, &cnf, &result.model.expect("SAT carries a model"))?;
                debug_assert_eq!(strategy.num_steps(), k);
                return Ok(outcome(
                    SearchStatus::Found,
                    Some(k),
                    Some(strategy),
                    None,
                    start,
                ));
            }
            Status::Unsat => continue,
            Status::Timeout => {
                return Ok(outcome(
                    SearchStatus::Timeout,
                    None,
                    None,
                    Some(format!("solver timed out at K={k}")),
                    start,
                ));
            }
        }
    }
    Ok(outcome(
        SearchStatus::ExhaustedK,
        None,
        None,
        Some(format!("no strategy with at most {k_max} steps")),
        start,
    ))
}

/// Sweep the pebble budget downward from `|V|` (where the naive
/// baseline guarantees a solution), running [`min_steps`] with a
/// per-point budget, and stop at the first budget with no strategy
/// found. Returns every outcome along the way; the last `Found` entry
/// is the best budget certified within the time limits.
pub fn min_pebbles(
    g: &Dag,
    mode: Mode,
    backend: &Backend,
    per_point_timeout_ms: u64,
    k_max: usize,
) -> Result<Vec<SearchOutcome>, SearchError> {
    let mut outcomes = Vec::new();
    for pebbles in (1..=g.len()).rev() {
        let outcome = min_steps(g, pebbles, mode, backend, k_max, per_point_timeout_ms)?;
        let found = outcome.status == SearchStatus::Found;
        outcomes.push(outcome);
        if !found {
            break;
        }
    }
    Ok(outcomes)
}

/// Default per-point time budget for sweeps: two minutes.
pub const DEFAULT_TIMEOUT_MS: u64 = 120_000;

/// Default cap on the step count, as a multiple of the node count.
pub fn default_k_max(g: &Dag) -> usize {
    4 * g.len()
}
