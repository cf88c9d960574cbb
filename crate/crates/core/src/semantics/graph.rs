//! Small-step configuration graphs.
//!
//! A residual program is a continuation stack of arena node ids; the empty
//! stack is `Terminal`. Sequencing is unfolded when pushed, so the top of a
//! stack is never a `Seq` node.

use std::collections::hash_map::Entry;
use std::collections::HashMap;
use std::fmt::Write;

use crate::error::{Error, Result};
use crate::lang::{Guard, Predicate, Program, StateSpace};

/// Default bound on the number of configurations in one graph.
pub const DEFAULT_NODE_BUDGET: usize = 1_000_000;

type NodeId = u32;

#[derive(Debug, Clone)]
enum Node {
    Skip,
    Diverge,
    /// Successor state for every state index.
    Assign(Vec<usize>),
    Seq(NodeId, NodeId),
    Choice(NodeId, NodeId),
    Ite(Predicate, NodeId, NodeId),
    While(Predicate, NodeId),
}

#[derive(Debug, Clone)]
struct Arena {
    nodes: Vec<Node>,
    programs: Vec<Program>,
    root: NodeId,
}

impl Arena {
    fn build(p: &Program, space: &StateSpace) -> Self {
        let mut arena = Arena {
            nodes: Vec::new(),
            programs: Vec::new(),
            root: 0,
        };
        arena.root = arena.add(p, space);
        arena
    }

    fn add(&mut self, p: &Program, space: &StateSpace) -> NodeId {
        let guard = |g: &Guard| g.to_predicate(space);
        let node = match p {
            Program::Skip => Node::Skip,
            Program::Diverge => Node::Diverge,
            Program::Assign(x, e) => Node::Assign(
                (0..space.size())
                    .map(|i| space.update_index(i, *x, e.eval(space, i)))
                    .collect(),
            ),
            Program::Seq(a, b) => Node::Seq(self.add(a, space), self.add(b, space)),
            Program::Choice(a, b) => Node::Choice(self.add(a, space), self.add(b, space)),
            Program::Ite(g, a, b) => Node::Ite(guard(g), self.add(a, space), self.add(b, space)),
            Program::While(g, b) => Node::While(guard(g), self.add(b, space)),
        };
        self.nodes.push(node);
        self.programs.push(p.clone());
        (self.nodes.len() - 1) as NodeId
    }

    fn push(&self, stack: &mut Vec<NodeId>, id: NodeId) {
        match self.nodes[id as usize] {
            Node::Seq(a, b) => {
                self.push(stack, b);
                self.push(stack, a);
            }
            _ => stack.push(id),
        }
    }

    /// One-step successors of `⟨stack, σ⟩`.
    fn step(&self, stack: &[NodeId], state: usize, out: &mut Vec<(Vec<NodeId>, usize)>) {
        let Some((&top, rest)) = stack.split_last() else {
            return;
        };
        let with = |id: NodeId| {
            let mut s = rest.to_vec();
            self.push(&mut s, id);
            s
        };
        match &self.nodes[top as usize] {
            Node::Skip => out.push((rest.to_vec(), state)),
            Node::Diverge => out.push((stack.to_vec(), state)),
            Node::Assign(table) => out.push((rest.to_vec(), table[state])),
            Node::Seq(..) => unreachable!("sequences are unfolded on push"),
            Node::Choice(a, b) => {
                out.push((with(*a), state));
                out.push((with(*b), state));
            }
            Node::Ite(g, a, b) => {
                let branch = if g.contains(state) { *a } else { *b };
                out.push((with(branch), state));
            }
            Node::While(g, body) => {
                if g.contains(state) {
                    let mut s = stack.to_vec();
                    self.push(&mut s, *body);
                    out.push((s, state));
                } else {
                    out.push((rest.to_vec(), state));
                }
            }
        }
    }
}

/// A configuration `⟨residual, σ⟩`.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Config {
    stack: Vec<NodeId>,
    pub state: usize,
}

impl Config {
    pub fn is_terminal(&self) -> bool {
        self.stack.is_empty()
    }
}

/// All configurations reachable from `{⟨p, σ⟩ | σ ∈ seeds}`.
#[derive(Debug, Clone)]
pub struct TransitionGraph {
    arena: Arena,
    configs: Vec<Config>,
    succ: Vec<Vec<u32>>,
    roots: Vec<Option<u32>>,
}

/// Builds the configuration graph, failing once more than `limit` nodes exist.
pub fn build_graph(
    p: &Program,
    space: &StateSpace,
    seeds: &Predicate,
    limit: usize,
) -> Result<TransitionGraph> {
    let arena = Arena::build(p, space);
    let mut index: HashMap<Config, u32> = HashMap::new();
    let mut configs: Vec<Config> = Vec::new();
    let mut succ: Vec<Vec<u32>> = Vec::new();
    let mut roots = vec![None; space.size()];
    let mut intern =
        |c: Config, configs: &mut Vec<Config>, succ: &mut Vec<Vec<u32>>| -> Result<u32> {
            match index.entry(c) {
                Entry::Occupied(e) => Ok(*e.get()),
                Entry::Vacant(e) => {
                    if configs.len() >= limit {
                        return Err(Error::Budget { limit });
                    }
                    let id = configs.len() as u32;
                    configs.push(e.key().clone());
                    succ.push(Vec::new());
                    e.insert(id);
                    Ok(id)
                }
            }
        };
    for s in seeds.iter() {
        let mut stack = Vec::new();
        arena.push(&mut stack, arena.root);
        let id = intern(Config { stack, state: s }, &mut configs, &mut succ)?;
        roots[s] = Some(id);
    }
    // ids are handed out in discovery order, so a cursor is a BFS queue
    let mut buf = Vec::new();
    let mut cursor = 0;
    while cursor < configs.len() {
        buf.clear();
        let c = configs[cursor].clone();
        arena.step(&c.stack, c.state, &mut buf);
        let mut next = Vec::with_capacity(buf.len());
        for (stack, state) in buf.drain(..) {
            let n = intern(Config { stack, state }, &mut configs, &mut succ)?;
            if !next.contains(&n) {
                next.push(n);
            }
        }
        succ[cursor] = next;
        cursor += 1;
    }
    Ok(TransitionGraph {
        arena,
        configs,
        succ,
        roots,
    })
}

impl TransitionGraph {
    pub fn node_count(&self) -> usize {
        self.configs.len()
    }

    pub fn edge_count(&self) -> usize {
        self.succ.iter().map(Vec::len).sum()
    }

    pub fn config(&self, node: usize) -> &Config {
        &self.configs[node]
    }

    pub fn successors(&self, node: usize) -> impl Iterator<Item = usize> + '_ {
        self.succ[node].iter().map(|&n| n as usize)
    }

    /// Initial configuration `⟨p, σ⟩`, if `σ` was a seed.
    pub fn root(&self, state: usize) -> Option<usize> {
        self.roots[state].map(|n| n as usize)
    }

    /// Final states of terminal configurations reachable from `⟨p, σ⟩`.
    pub fn terminal_states(&self, state: usize) -> Predicate {
        let n = self.roots.len();
        let mut out = Predicate::empty(n);
        let Some(root) = self.root(state) else {
            return out;
        };
        let mut seen = vec![false; self.configs.len()];
        let mut work = vec![root];
        seen[root] = true;
        while let Some(v) = work.pop() {
            if self.configs[v].is_terminal() {
                out.insert(self.configs[v].state);
            }
            for w in self.successors(v) {
                if !seen[w] {
                    seen[w] = true;
                    work.push(w);
                }
            }
        }
        out
    }

    /// Nodes from which every path is finite. Terminal nodes are safe; a
    /// non-terminal node is safe once all its successors are.
    fn safe_nodes(&self) -> Vec<bool> {
        let n = self.configs.len();
        let mut pending: Vec<usize> = self.succ.iter().map(Vec::len).collect();
        let mut preds: Vec<Vec<u32>> = vec![Vec::new(); n];
        for (v, ws) in self.succ.iter().enumerate() {
            for &w in ws {
                preds[w as usize].push(v as u32);
            }
        }
        let mut safe = vec![false; n];
        let mut queue: Vec<usize> = (0..n).filter(|&v| self.configs[v].is_terminal()).collect();
        for &v in &queue {
            safe[v] = true;
        }
        while let Some(w) = queue.pop() {
            for &v in &preds[w] {
                let v = v as usize;
                pending[v] -= 1;
                if pending[v] == 0 && !safe[v] {
                    safe[v] = true;
                    queue.push(v);
                }
            }
        }
        safe
    }

    /// Seeds from which some run is infinite (reaches a cycle).
    pub fn may_diverge(&self) -> Predicate {
        let safe = self.safe_nodes();
        let n = self.roots.len();
        Predicate::from_fn(n, |s| matches!(self.roots[s], Some(r) if !safe[r as usize]))
    }

    pub fn is_acyclic(&self) -> bool {
        self.safe_nodes().iter().all(|&s| s)
    }

    /// Renders the residual of a configuration as program text.
    pub fn render_residual(&self, node: usize, space: &StateSpace) -> String {
        let stack = &self.configs[node].stack;
        if stack.is_empty() {
            return "terminal".into();
        }
        stack
            .iter()
            .rev()
            .map(|&id| {
                let p = &self.arena.programs[id as usize];
                if matches!(p, Program::Seq(..) | Program::Choice(..)) {
                    format!("{{ {} }}", p.render(space))
                } else {
                    p.render(space)
                }
            })
            .collect::<Vec<_>>()
            .join("; ")
    }

    /// Graphviz rendering for debugging.
    pub fn to_dot(&self, space: &StateSpace) -> String {
        let mut out = String::from("digraph ngcl {\n  node [shape=box, fontname=\"monospace\"];\n");
        for v in 0..self.configs.len() {
            let c = &self.configs[v];
            let label = format!(
                "{}\\n{}",
                escape(&self.render_residual(v, space)),
                escape(&space.render_state(c.state))
            );
            let style = if c.is_terminal() {
                ", style=rounded, peripheries=2"
            } else {
                ""
            };
            let _ = writeln!(out, "  n{v} [label=\"{label}\"{style}];");
        }
        for (v, ws) in self.succ.iter().enumerate() {
            for w in ws {
                let _ = writeln!(out, "  n{v} -> n{w};");
            }
        }
        out.push_str("}\n");
        out
    }
}

fn escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// `{σ | some run of p from σ is infinite}`, with the default budget.
pub fn may_diverge(p: &Program, space: &StateSpace) -> Result<Predicate> {
    let g = build_graph(
        p,
        space,
        &Predicate::full(space.size()),
        DEFAULT_NODE_BUDGET,
    )?;
    Ok(g.may_diverge())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lang::parse_program;

    fn x3() -> StateSpace {
        StateSpace::new(&["x"], 3).unwrap()
    }

    #[test]
    fn skip_has_two_nodes() {
        let sp = x3();
        let g = build_graph(&Program::Skip, &sp, &Predicate::singleton(3, 1), 100).unwrap();
        assert_eq!(g.node_count(), 2);
        assert_eq!(g.edge_count(), 1);
        assert!(g.config(1).is_terminal());
        assert_eq!(g.config(1).state, 1);
    }

    #[test]
    fn diverge_self_loops() {
        let sp = x3();
        let g = build_graph(&Program::Diverge, &sp, &Predicate::singleton(3, 0), 100).unwrap();
        assert_eq!(g.node_count(), 1);
        assert_eq!(g.successors(0).collect::<Vec<_>>(), vec![0]);
        assert_eq!(g.may_diverge(), Predicate::singleton(3, 0));
    }

    #[test]
    fn countdown_is_acyclic() {
        let sp = x3();
        let p = parse_program("while x != 0 { x := x - 1 }", &sp).unwrap();
        let g = build_graph(&p, &sp, &Predicate::full(3), 100).unwrap();
        assert!(g.is_acyclic());
        for s in 0..3 {
            assert_eq!(g.terminal_states(s), Predicate::singleton(3, 0));
        }
        assert!(g.may_diverge().is_empty());
    }

    #[test]
    fn branching_divergence() {
        let sp = x3();
        let p = parse_program("{ skip } [] { while true { skip } }", &sp).unwrap();
        assert!(may_diverge(&p, &sp).unwrap().is_full());
    }

    #[test]
    fn budget_is_enforced() {
        let sp = StateSpace::new(&["x", "y"], 4).unwrap();
        let p = parse_program("while x != 0 { x := x - 1 }; y := 0", &sp).unwrap();
        assert_eq!(
            build_graph(&p, &sp, &Predicate::full(16), 5).unwrap_err(),
            Error::Budget { limit: 5 }
        );
    }

    #[test]
    fn dot_mentions_every_node() {
        let sp = x3();
        let p = parse_program("{ x := 1 } [] { diverge }", &sp).unwrap();
        let g = build_graph(&p, &sp, &Predicate::singleton(3, 0), 100).unwrap();
        let dot = g.to_dot(&sp);
        assert!(dot.starts_with("digraph"));
        assert_eq!(dot.matches("label=").count(), g.node_count());
        assert!(dot.contains("diverge"));
    }
}
