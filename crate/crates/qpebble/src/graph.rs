//! Dependency DAGs of computation nodes.
//!
//! Nodes are opaque operations (optionally tagged with a label such as
//! `"Add"`), edges are data dependencies, and a subset of nodes is marked
//! as outputs. Primary inputs are *not* nodes; only their count is kept,
//! for qubit accounting in schedules. A node whose operands are all
//! primary inputs simply has an empty dependency list.

use std::collections::HashMap;
use std::fmt::Write as _;

use thiserror::Error;

/// Index of a node in [`Dag::nodes`], in declaration order.
pub type NodeId = usize;

#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("line {line}, col {col}: {msg}")]
    Syntax {
        line: usize,
        col: usize,
        msg: String,
    },
    #[error("duplicate node `{0}`")]
    DuplicateNode(String),
    #[error("node `{node}` references unknown dependency `{dep}`")]
    UnknownDependency { node: String, dep: String },
    #[error("node `{0}` depends on itself")]
    SelfLoop(String),
    #[error("dependency cycle through `{0}`")]
    Cycle(String),
    #[error("no outputs declared")]
    NoOutputs,
    #[error("output `{0}` is not a declared node")]
    UnknownOutput(String),
    #[error("{0}")]
    InvalidParameter(String),
}

/// One computation node: a name, an optional operation label, and the
/// nodes it reads (primary inputs excluded).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Node {
    pub name: String,
    pub label: Option<String>,
    pub deps: Vec<NodeId>,
}

/// A validated dependency DAG.
///
/// Immutable after construction: acyclic, names unique, every node lies in
/// the cone of at least one output (dead nodes are stripped while
/// building), and every sink is an output. Outputs need not be sinks.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Dag {
    nodes: Vec<Node>,
    name_to_id: HashMap<String, NodeId>,
    outputs: Vec<NodeId>,
    num_primary_inputs: usize,
}

impl Dag {
    pub fn builder() -> DagBuilder {
        DagBuilder::default()
    }

    pub fn len(&self) -> usize {
        self.nodes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.nodes.is_empty()
    }

    pub fn nodes(&self) -> &[Node] {
        &self.nodes
    }

    pub fn name(&self, id: NodeId) -> &str {
        &self.nodes[id].name
    }

    pub fn node_id(&self, name: &str) -> Option<NodeId> {
        self.name_to_id.get(name).copied()
    }

    pub fn deps(&self, id: NodeId) -> &[NodeId] {
        &self.nodes[id].deps
    }

    /// Output ids, sorted by declaration order.
    pub fn outputs(&self) -> &[NodeId] {
        &self.outputs
    }

    pub fn is_output(&self, id: NodeId) -> bool {
        self.outputs.binary_search(&id).is_ok()
    }

    pub fn num_primary_inputs(&self) -> usize {
        self.num_primary_inputs
    }

    /// Largest dependency count over all nodes.
    pub fn max_in_degree(&self) -> usize {
        self.nodes.iter().map(|n| n.deps.len()).max().unwrap_or(0)
    }

    /// Every node after all of its dependencies; ties broken by
    /// declaration order, so the result is deterministic.
    pub fn topological_order(&self) -> Vec<NodeId> {
        let n = self.nodes.len();
        let mut indegree = vec![0usize; n];
        let mut dependents: Vec<Vec<NodeId>> = vec![Vec::new(); n];
        for (v, node) in self.nodes.iter().enumerate() {
            indegree[v] = node.deps.len();
            for &w in &node.deps {
                dependents[w].push(v);
            }
        }
        // min-heap on node id
        let mut ready: std::collections::BinaryHeap<std::cmp::Reverse<NodeId>> = (0..n)
            .filter(|&v| indegree[v] == 0)
            .map(std::cmp::Reverse)
            .collect();
        let mut order = Vec::with_capacity(n);
        while let Some(std::cmp::Reverse(v)) = ready.pop() {
            order.push(v);
            for &w in &dependents[v] {
                indegree[w] -= 1;
                if indegree[w] == 0 {
                    ready.push(std::cmp::Reverse(w));
                }
            }
        }
        debug_assert_eq!(order.len(), n, "Dag invariant: acyclic");
        order
    }

    /// Per-node depth: 1 for nodes reading only primary inputs, else
    /// 1 + max depth over dependencies.
    pub fn node_depths(&self) -> Vec<usize> {
        let mut depth = vec![0usize; self.nodes.len()];
        for v in self.topological_order() {
            depth[v] = 1 + self.nodes[v]
                .deps
                .iter()
                .map(|&w| depth[w])
                .max()
                .unwrap_or(0);
        }
        depth
    }

    /// Render back to the line-oriented text format accepted by
    /// [`parse_dag`]. `parse_dag(to_text(g))` reproduces `g` exactly.
    pub fn to_text(&self) -> String {
        let mut out = String::new();
        if self.num_primary_inputs > 0 {
            let _ = writeln!(out, "inputs {}", self.num_primary_inputs);
        }
        for node in &self.nodes {
            let _ = write!(out, "node {}", node.name);
            if let Some(label) = &node.label {
                let _ = write!(out, " : {label}");
            }
            for &d in &node.deps {
                let _ = write!(out, " {}", self.nodes[d].name);
            }
            out.push('\n');
        }
        for &o in &self.outputs {
            let _ = writeln!(out, "output {}", self.nodes[o].name);
        }
        out
    }
}

/// Incremental [`Dag`] construction; `build` validates and strips dead
/// nodes (nodes outside every output cone).
#[derive(Debug, Default)]
pub struct DagBuilder {
    nodes: Vec<(String, Option<String>, Vec<String>)>,
    outputs: Vec<String>,
    num_primary_inputs: usize,
}

impl DagBuilder {
    pub fn node<S: Into<String>>(mut self, name: S, deps: &[&str]) -> Self {
        self.nodes.push((
            name.into(),
            None,
            deps.iter().map(|d| d.to_string()).collect(),
        ));
        self
    }

    pub fn labeled_node<S: Into<String>, L: Into<String>>(
        mut self,
        name: S,
        label: L,
        deps: &[&str],
    ) -> Self {
        self.nodes.push((
            name.into(),
            Some(label.into()),
            deps.iter().map(|d| d.to_string()).collect(),
        ));
        self
    }

    pub fn output<S: Into<String>>(mut self, name: S) -> Self {
        self.outputs.push(name.into());
        self
    }

    pub fn primary_inputs(mut self, count: usize) -> Self {
        self.num_primary_inputs = count;
        self
    }

    pub fn build(self) -> Result<Dag, GraphError> {
        let mut name_to_id = HashMap::with_capacity(self.nodes.len());
        for (id, (name, _, _)) in self.nodes.iter().enumerate() {
            if name_to_id.insert(name.clone(), id).is_some() {
                return Err(GraphError::DuplicateNode(name.clone()));
            }
        }

        let mut nodes = Vec::with_capacity(self.nodes.len());
        for (name, label, dep_names) in &self.nodes {
            let mut deps = Vec::with_capacity(dep_names.len());
            for dep in dep_names {
                if dep == name {
                    return Err(GraphError::SelfLoop(name.clone()));
                }
                let id = *name_to_id
                    .get(dep)
                    .ok_or_else(|| GraphError::UnknownDependency {
                        node: name.clone(),
                        dep: dep.clone(),
                    })?;
                if !deps.contains(&id) {
                    deps.push(id);
                }
            }
            nodes.push(Node {
                name: name.clone(),
                label: label.clone(),
                deps,
            });
        }

        if self.outputs.is_empty() {
            return Err(GraphError::NoOutputs);
        }
        let mut outputs = Vec::new();
        for name in &self.outputs {
            let id = *name_to_id
                .get(name)
                .ok_or_else(|| GraphError::UnknownOutput(name.clone()))?;
            if !outputs.contains(&id) {
                outputs.push(id);
            }
        }
        outputs.sort_unstable();

        check_acyclic(&nodes)?;

        // keep only the cone of the outputs
        let mut live = vec![false; nodes.len()];
        let mut stack: Vec<NodeId> = outputs.clone();
        while let Some(v) = stack.pop() {
            if std::mem::replace(&mut live[v], true) {
                continue;
            }
            stack.extend_from_slice(&nodes[v].deps);
        }

        let mut remap = vec![usize::MAX; nodes.len()];
        let mut kept = Vec::with_capacity(nodes.len());
        for (old_id, mut node) in nodes.into_iter().enumerate() {
            if !live[old_id] {
                continue;
            }
            remap[old_id] = kept.len();
            for d in &mut node.deps {
                *d = remap[*d]; // deps precede in the cone, already remapped
            }
            kept.push(node);
        }
        let outputs: Vec<NodeId> = outputs.into_iter().map(|o| remap[o]).collect();
        let name_to_id = kept
            .iter()
            .enumerate()
            .map(|(id, n)| (n.name.clone(), id))
            .collect();

        Ok(Dag {
            nodes: kept,
            name_to_id,
            outputs,
            num_primary_inputs: self.num_primary_inputs,
        })
    }
}

fn check_acyclic(nodes: &[Node]) -> Result<(), GraphError> {
    let n = nodes.len();
    let mut indegree = vec![0usize; n];
    let mut dependents: Vec<Vec<NodeId>> = vec![Vec::new(); n];
    for (v, node) in nodes.iter().enumerate() {
        indegree[v] = node.deps.len();
        for &w in &node.deps {
            dependents[w].push(v);
        }
    }
    let mut ready: Vec<NodeId> = (0..n).filter(|&v| indegree[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = ready.pop() {
        seen += 1;
        for &w in &dependents[v] {
            indegree[w] -= 1;
            if indegree[w] == 0 {
                ready.push(w);
            }
        }
    }
    if seen < n {
        let culprit = (0..n).find(|&v| indegree[v] > 0).unwrap();
        return Err(GraphError::Cycle(nodes[culprit].name.clone()));
    }
    Ok(())
}

/// Parse the line-oriented DAG text format:
///
/// ```text
/// # comment
/// inputs <count>
/// node <name> [: <label>] [<dep> ...]
/// output <name>
/// ```
///
/// Dead nodes are stripped; the second tuple element is how many were
/// dropped (callers typically surface it as a warning).
pub fn parse_dag(text: &str) -> Result<(Dag, usize), GraphError> {
    let mut builder = Dag::builder();
    let mut declared = 0usize;
    for (lineno, raw) in text.lines().enumerate() {
        let line = lineno + 1;
        let content = match raw.find('#') {
            Some(pos) => &raw[..pos],
            None => raw,
        };
        let tokens = tokenize(content);
        let Some(&(col, keyword)) = tokens.first() else {
            continue;
        };
        match keyword {
            "node" => {
                let (_, name) = *tokens.get(1).ok_or_else(|| GraphError::Syntax {
                    line,
                    col,
                    msg: "expected `node <name> [: <label>] [deps...]`".into(),
                })?;
                let mut rest = &tokens[2..];
                let mut label = None;
                if let Some(&(_, ":")) = rest.first() {
                    let (lcol, ltext) = *rest.get(1).ok_or_else(|| GraphError::Syntax {
                        line,
                        col: rest[0].0,
                        msg: "expected a label after `:`".into(),
                    })?;
                    if ltext == ":" {
                        return Err(GraphError::Syntax {
                            line,
                            col: lcol,
                            msg: "expected a label after `:`".into(),
                        });
                    }
                    label = Some(ltext.to_string());
                    rest = &rest[2..];
                }
                let deps: Vec<&str> = rest.iter().map(|&(_, t)| t).collect();
                declared += 1;
                builder = match label {
                    Some(l) => builder.labeled_node(name, l, &deps),
                    None => builder.node(name, &deps),
                };
            }
            "output" => {
                let (_, name) = *tokens.get(1).ok_or_else(|| GraphError::Syntax {
                    line,
                    col,
                    msg: "expected `output <name>`".into(),
                })?;
                builder = builder.output(name);
            }
            "inputs" => {
                let (ncol, count) = *tokens.get(1).ok_or_else(|| GraphError::Syntax {
                    line,
                    col,
                    msg: "expected `inputs <count>`".into(),
                })?;
                let count: usize = count.parse().map_err(|_| GraphError::Syntax {
                    line,
                    col: ncol,
                    msg: format!("invalid input count `{count}`"),
                })?;
                builder = builder.primary_inputs(count);
            }
            other => {
                return Err(GraphError::Syntax {
                    line,
                    col,
                    msg: format!("unknown directive `{other}`"),
                });
            }
        }
    }
    let dag = builder.build()?;
    let stripped = declared - dag.len();
    Ok((dag, stripped))
}

/// Tokens with their 1-based column; `:` is always its own token.
fn tokenize(line: &str) -> Vec<(usize, &str)> {
    let mut tokens = Vec::new();
    let mut start = None;
    for (i, c) in line.char_indices() {
        if c.is_whitespace() || c == ':' {
            if let Some(s) = start.take() {
                tokens.push((s + 1, &line[s..i]));
            }
            if c == ':' {
                tokens.push((i + 1, &line[i..i + 1]));
            }
        } else if start.is_none() {
            start = Some(i);
        }
    }
    if let Some(s) = start {
        tokens.push((s + 1, &line[s..]));
    }
    tokens
}

/// Balanced binary reduction tree over `num_inputs` primary inputs:
/// `num_inputs - 1` two-input nodes labeled `"AND"`, one output (the
/// root), depth `ceil(log2 num_inputs)`.
pub fn gen_and_tree(num_inputs: usize) -> Result<Dag, GraphError> {
    if num_inputs < 2 {
        return Err(GraphError::InvalidParameter(format!(
            "an AND tree needs at least 2 inputs, got {num_inputs}"
        )));
    }
    // worklist of values: None = a primary input, Some(name) = a node
    let mut values: Vec<Option<String>> = vec![None; num_inputs];
    let mut builder = Dag::builder().primary_inputs(num_inputs);
    let mut next_id = 0usize;
    while values.len() > 1 {
        let mut reduced = Vec::with_capacity(values.len() / 2 + 1);
        let mut pairs = values.chunks_exact(2);
        for pair in &mut pairs {
            let name = format!("and{next_id}");
            next_id += 1;
            let deps: Vec<&str> = pair.iter().flatten().map(String::as_str).collect();
            builder = builder.labeled_node(&name, "AND", &deps);
            reduced.push(Some(name));
        }
        reduced.extend(pairs.remainder().iter().cloned());
        values = reduced;
    }
    let root = values
        .pop()
        .unwrap()
        .expect("at least one node was created");
    builder.output(root).build()
}

/// Random DAG: node `i` draws between 0 and `max_deps` dependencies from
/// nodes with smaller index; every sink becomes an output. Deterministic
/// for a fixed seed.
pub fn gen_random_dag(num_nodes: usize, max_deps: usize, seed: u64) -> Dag {
    use rand::seq::SliceRandom;
    use rand::{Rng, SeedableRng};

    assert!(num_nodes >= 1, "num_nodes must be positive");
    assert!(max_deps >= 1, "max_deps must be positive");

    let mut rng = rand_chacha::ChaCha8Rng::seed_from_u64(seed);
    let mut builder = Dag::builder();
    let names: Vec<String> = (0..num_nodes).map(|i| format!("n{i}")).collect();
    let mut has_dependent = vec![false; num_nodes];
    for i in 0..num_nodes {
        let k = rng.gen_range(0..=max_deps.min(i));
        let mut pool: Vec<usize> = (0..i).collect();
        pool.shuffle(&mut rng);
        let mut chosen: Vec<usize> = pool.into_iter().take(k).collect();
        chosen.sort_unstable();
        for &d in &chosen {
            has_dependent[d] = true;
        }
        let deps: Vec<&str> = chosen.iter().map(|&d| names[d].as_str()).collect();
        builder = builder.node(&names[i], &deps);
    }
    for i in 0..num_nodes {
        if !has_dependent[i] {
            builder = builder.output(&names[i]);
        }
    }
    builder.build().expect("generated graph is valid")
}
