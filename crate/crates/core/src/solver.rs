//! Exact game length `c(G)` by memoized minimax over closure states.
//!
//! Which edges are open, which are forced and whether the game is over all
//! depend only on the reachability closure, so the closure (packed row-major)
//! is the memo key. Queries on determined edges are never considered: they
//! cost one and change nothing.

use std::collections::HashMap;
use std::sync::atomic::{AtomicU64, Ordering};
use std::sync::Arc;

use dashmap::DashMap;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::bits::BitMatrix;
use crate::game::{Direction, EdgeStatus, GameError, GameState};
use crate::graph::{Edge, Graph};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolverConfig {
    /// Graphs with at most this many edges are accepted...
    pub max_edges: usize,
    /// ...as are graphs with at most this many vertices.
    pub max_vertices: usize,
    /// Search root moves on the rayon pool with a shared memo table.
    pub parallel: bool,
}

impl Default for SolverConfig {
    fn default() -> Self {
        Self {
            max_edges: 16,
            max_vertices: 7,
            parallel: false,
        }
    }
}

impl SolverConfig {
    pub fn admits(&self, g: &Graph) -> bool {
        g.m() <= self.max_edges || g.n() <= self.max_vertices
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum SolveError {
    #[error("graph with n = {n}, e = {m} exceeds the search guard (e <= {max_edges} or n <= {max_vertices})")]
    Guard {
        n: usize,
        m: usize,
        max_edges: usize,
        max_vertices: usize,
    },
    #[error("the game is already decided")]
    Terminal,
    #[error(transparent)]
    Game(#[from] GameError),
}

/// Outcome of a full solve from the empty state.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct SolveResult {
    pub value: u32,
    /// Lexicographically smallest optimal first query; `None` when nothing needs asking.
    pub best: Option<Edge>,
    pub nodes: u64,
    pub memo_hits: u64,
}

type Key = Box<[u64]>;

trait MemoTable {
    fn lookup(&self, key: &[u64]) -> Option<u16>;
    fn store(&mut self, key: Key, value: u16);
}

impl MemoTable for HashMap<Key, u16> {
    fn lookup(&self, key: &[u64]) -> Option<u16> {
        self.get(key).copied()
    }
    fn store(&mut self, key: Key, value: u16) {
        self.insert(key, value);
    }
}

impl<T: MemoTable> MemoTable for &mut T {
    fn lookup(&self, key: &[u64]) -> Option<u16> {
        (**self).lookup(key)
    }
    fn store(&mut self, key: Key, value: u16) {
        (**self).store(key, value)
    }
}

impl MemoTable for &DashMap<Key, u16> {
    fn lookup(&self, key: &[u64]) -> Option<u16> {
        self.get(key).map(|v| *v)
    }
    fn store(&mut self, key: Key, value: u16) {
        self.insert(key, value);
    }
}

struct Search<'a, M> {
    edges: &'a [Edge],
    memo: M,
    nodes: &'a AtomicU64,
    hits: &'a AtomicU64,
}

fn child(reach: &BitMatrix, d: Direction) -> BitMatrix {
    let mut next = reach.clone();
    next.insert_closed(d.from, d.to);
    next
}

fn is_open(reach: &BitMatrix, e: Edge) -> bool {
    !reach.get(e.lo(), e.hi()) && !reach.get(e.hi(), e.lo())
}

impl<M: MemoTable> Search<'_, M> {
    fn value(&mut self, reach: &BitMatrix) -> u16 {
        let key = reach.pack();
        if let Some(v) = self.memo.lookup(&key) {
            self.hits.fetch_add(1, Ordering::Relaxed);
            return v;
        }
        self.nodes.fetch_add(1, Ordering::Relaxed);
        let mut best = u16::MAX;
        let mut any_open = false;
        for &e in self.edges {
            if !is_open(reach, e) {
                continue;
            }
            any_open = true;
            let cost = self.edge_cost(reach, e, best);
            best = best.min(cost);
            // a decided-in-one-query state cannot do better
            if best == 1 {
                break;
            }
        }
        let v = if any_open { best } else { 0 };
        self.memo.store(key, v);
        v
    }

    /// `1 + max` over both answers to `e`, or any value `>= cutoff` once the
    /// first answer already shows `e` is no improvement.
    fn edge_cost(&mut self, reach: &BitMatrix, e: Edge, cutoff: u16) -> u16 {
        let mut worst = 0;
        for d in [Direction::ascending(e), Direction::descending(e)] {
            worst = worst.max(self.value(&child(reach, d)));
            if worst.saturating_add(1) >= cutoff {
                break;
            }
        }
        worst + 1
    }
}

/// Memoized solver for one graph. The memo table persists across calls, so a
/// solver can back a policy for a whole match.
pub struct Solver {
    graph: Arc<Graph>,
    config: SolverConfig,
    memo: HashMap<Key, u16>,
    nodes: AtomicU64,
    hits: AtomicU64,
}

impl Solver {
    pub fn new(graph: Arc<Graph>, config: SolverConfig) -> Result<Self, SolveError> {
        if !config.admits(&graph) {
            return Err(SolveError::Guard {
                n: graph.n(),
                m: graph.m(),
                max_edges: config.max_edges,
                max_vertices: config.max_vertices,
            });
        }
        Ok(Self {
            graph,
            config,
            memo: HashMap::new(),
            nodes: AtomicU64::new(0),
            hits: AtomicU64::new(0),
        })
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    fn search(&mut self) -> Search<'_, &mut HashMap<Key, u16>> {
        Search {
            edges: self.graph.edges(),
            memo: &mut self.memo,
            nodes: &self.nodes,
            hits: &self.hits,
        }
    }

    fn check_state(&self, state: &GameState) {
        assert!(
            Arc::ptr_eq(state.graph(), &self.graph) || **state.graph() == *self.graph,
            "state belongs to a different graph"
        );
    }

    /// Optimal number of further queries from `state`.
    pub fn remaining_value(&mut self, state: &GameState) -> u32 {
        self.check_state(state);
        self.search().value(state.reach()) as u32
    }

    /// Solves from the empty state.
    pub fn solve(&mut self) -> SolveResult {
        let root = GameState::new(self.graph.clone());
        let open = root.open_edges();
        let costs: Vec<u16> = if self.config.parallel {
            let table: DashMap<Key, u16> = DashMap::new();
            let (edges, nodes, hits) = (self.graph.edges(), &self.nodes, &self.hits);
            let costs = open
                .par_iter()
                .map(|&e| {
                    let mut s = Search {
                        edges,
                        memo: &table,
                        nodes,
                        hits,
                    };
                    s.edge_cost(root.reach(), e, u16::MAX)
                })
                .collect();
            self.memo.extend(table);
            costs
        } else {
            let mut s = self.search();
            open.iter().map(|&e| s.edge_cost(root.reach(), e, u16::MAX)).collect()
        };
        let best = open
            .iter()
            .zip(&costs)
            .min_by_key(|&(e, c)| (*c, *e))
            .map(|(e, c)| (*e, *c));
        SolveResult {
            value: best.map_or(0, |(_, c)| c as u32),
            best: best.map(|(e, _)| e),
            nodes: self.nodes.load(Ordering::Relaxed),
            memo_hits: self.hits.load(Ordering::Relaxed),
        }
    }

    /// Lexicographically smallest open edge achieving the minimax value.
    pub fn optimal_move(&mut self, state: &GameState) -> Result<Edge, SolveError> {
        self.check_state(state);
        let mut best: Option<(u16, Edge)> = None;
        let reach = state.reach();
        let mut s = self.search();
        for e in state.open_edges() {
            let cutoff = best.map_or(u16::MAX, |(c, _)| c);
            let cost = s.edge_cost(reach, e, cutoff);
            if cost < cutoff {
                best = Some((cost, e));
            }
        }
        best.map(|(_, e)| e).ok_or(SolveError::Terminal)
    }

    /// The legal answer to `edge` that leaves the largest remaining value;
    /// ties go to the direction out of the lower-index endpoint.
    pub fn optimal_answer(&mut self, state: &GameState, edge: Edge) -> Result<Direction, SolveError> {
        self.check_state(state);
        match state.edge_status(edge)? {
            EdgeStatus::Queried(_) => Err(GameError::AlreadyQueried(edge).into()),
            EdgeStatus::Forced(d) => Ok(d),
            EdgeStatus::Open => {
                let up = Direction::ascending(edge);
                let down = Direction::descending(edge);
                let mut s = self.search();
                let vu = s.value(&child(state.reach(), up));
                let vd = s.value(&child(state.reach(), down));
                Ok(if vd > vu { down } else { up })
            }
        }
    }
}

/// `c(G)` with the default guard.
pub fn game_value(g: &Graph) -> Result<SolveResult, SolveError> {
    game_value_with(g, SolverConfig::default())
}

pub fn game_value_with(g: &Graph, config: SolverConfig) -> Result<SolveResult, SolveError> {
    Ok(Solver::new(Arc::new(g.clone()), config)?.solve())
}
