//! Rules of the acyclic orientation game.
//!
//! A [`GameState`] records the answers given so far together with the
//! reflexive-transitive closure of the revealed arcs. An unqueried edge `xy`
//! is determined exactly when `x` and `y` are comparable in that closure: if
//! they are incomparable, some linear extension puts `x` first and another
//! puts `y` first, and both yield acyclic completions.

mod play;
mod transcript;

use std::fmt;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::bits::BitMatrix;
use crate::graph::{Edge, Graph};

pub use play::{play_match, AlgyStrategy, MatchError, MatchFault, StrategistStrategy};
pub use transcript::{Move, Transcript, TranscriptMeta};

/// Largest number of unqueried edges [`GameState::extension_count`] enumerates.
pub const EXTENSION_ENUM_LIMIT: usize = 20;

/// An oriented edge `from -> to`.
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
#[serde(from = "[usize; 2]", into = "[usize; 2]")]
pub struct Direction {
    pub from: usize,
    pub to: usize,
}

impl Direction {
    pub fn new(from: usize, to: usize) -> Self {
        Self { from, to }
    }

    /// Panics on `from == to`.
    pub fn edge(self) -> Edge {
        Edge::new(self.from, self.to).expect("direction of a loop")
    }

    pub fn reversed(self) -> Self {
        Self::new(self.to, self.from)
    }

    /// `e` oriented from its lower endpoint.
    pub fn ascending(e: Edge) -> Self {
        Self::new(e.lo(), e.hi())
    }

    /// `e` oriented from its higher endpoint.
    pub fn descending(e: Edge) -> Self {
        Self::new(e.hi(), e.lo())
    }
}

impl From<[usize; 2]> for Direction {
    fn from([from, to]: [usize; 2]) -> Self {
        Self { from, to }
    }
}

impl From<Direction> for [usize; 2] {
    fn from(d: Direction) -> Self {
        [d.from, d.to]
    }
}

impl fmt::Debug for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.from, self.to)
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}->{}", self.from, self.to)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EdgeStatus {
    Queried(Direction),
    /// Not asked, but every acyclic completion orients it this way.
    Forced(Direction),
    Open,
}

impl EdgeStatus {
    pub fn direction(self) -> Option<Direction> {
        match self {
            Self::Queried(d) | Self::Forced(d) => Some(d),
            Self::Open => None,
        }
    }

    pub fn is_open(self) -> bool {
        matches!(self, Self::Open)
    }

    pub fn label(self) -> &'static str {
        match self {
            Self::Queried(_) => "queried",
            Self::Forced(_) => "forced",
            Self::Open => "open",
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum GameError {
    #[error("{0:?} is not an edge of the graph")]
    NotAnEdge((usize, usize)),
    #[error("edge {0} was already queried")]
    AlreadyQueried(Edge),
    #[error("direction {dir} does not orient edge {edge}")]
    WrongEdge { edge: Edge, dir: Direction },
    #[error("direction {dir} closes a directed cycle; only {forced} is legal")]
    CreatesCycle { dir: Direction, forced: Direction },
    #[error("{what} limited to {limit}, got {actual}")]
    Guard {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
}

/// A partial acyclic orientation and its reachability closure. States are
/// values: [`GameState::apply_answer`] returns a new state.
#[derive(Clone)]
pub struct GameState {
    graph: Arc<Graph>,
    oriented: Vec<Option<Direction>>,
    reach: BitMatrix,
    queries: usize,
}

impl GameState {
    pub fn new(graph: Arc<Graph>) -> Self {
        let n = graph.n();
        let m = graph.m();
        Self {
            graph,
            oriented: vec![None; m],
            reach: BitMatrix::identity(n),
            queries: 0,
        }
    }

    pub fn graph(&self) -> &Arc<Graph> {
        &self.graph
    }

    /// `reach().get(u, v)` iff a directed path `u -> ... -> v` is revealed (reflexive).
    pub fn reach(&self) -> &BitMatrix {
        &self.reach
    }

    /// Questions asked so far.
    pub fn queries(&self) -> usize {
        self.queries
    }

    /// Queried edges with their answers, in edge order.
    pub fn oriented(&self) -> impl Iterator<Item = (Edge, Direction)> + '_ {
        self.graph
            .edges()
            .iter()
            .zip(&self.oriented)
            .filter_map(|(&e, d)| d.map(|d| (e, d)))
    }

    /// `a` is known to precede `b` (strictly).
    #[inline]
    pub fn precedes(&self, a: usize, b: usize) -> bool {
        a != b && self.reach.get(a, b)
    }

    #[inline]
    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.precedes(a, b) || self.precedes(b, a)
    }

    fn index_of(&self, e: Edge) -> Result<usize, GameError> {
        self.graph.edge_index(e).ok_or(GameError::NotAnEdge((e.lo(), e.hi())))
    }

    fn status_at(&self, idx: usize) -> EdgeStatus {
        if let Some(d) = self.oriented[idx] {
            return EdgeStatus::Queried(d);
        }
        let e = self.graph.edges()[idx];
        if self.reach.get(e.lo(), e.hi()) {
            EdgeStatus::Forced(Direction::ascending(e))
        } else if self.reach.get(e.hi(), e.lo()) {
            EdgeStatus::Forced(Direction::descending(e))
        } else {
            EdgeStatus::Open
        }
    }

    pub fn edge_status(&self, e: Edge) -> Result<EdgeStatus, GameError> {
        Ok(self.status_at(self.index_of(e)?))
    }

    /// Statuses of all edges, in edge order.
    pub fn statuses(&self) -> impl Iterator<Item = (Edge, EdgeStatus)> + '_ {
        (0..self.graph.m()).map(|i| (self.graph.edges()[i], self.status_at(i)))
    }

    pub fn open_edges(&self) -> Vec<Edge> {
        self.statuses().filter(|(_, s)| s.is_open()).map(|(e, _)| e).collect()
    }

    pub fn is_queried(&self, e: Edge) -> bool {
        self.graph.edge_index(e).is_some_and(|i| self.oriented[i].is_some())
    }

    /// No open edge remains: the revealed arcs extend to a unique acyclic orientation.
    pub fn is_terminal(&self) -> bool {
        (0..self.graph.m()).all(|i| !self.status_at(i).is_open())
    }

    /// The answer Strategist would be forced to give on `e`, if any.
    pub fn forced_direction(&self, e: Edge) -> Option<Direction> {
        if self.reach.get(e.lo(), e.hi()) {
            Some(Direction::ascending(e))
        } else if self.reach.get(e.hi(), e.lo()) {
            Some(Direction::descending(e))
        } else {
            None
        }
    }

    /// Whether answering `d` is allowed (it does not close a cycle).
    pub fn is_legal(&self, d: Direction) -> bool {
        !self.precedes(d.to, d.from)
    }

    /// Records Strategist's answer `d` to the query `e`.
    pub fn apply_answer(&self, e: Edge, d: Direction) -> Result<GameState, GameError> {
        let idx = self.index_of(e)?;
        if self.oriented[idx].is_some() {
            return Err(GameError::AlreadyQueried(e));
        }
        if d.from == d.to || d.edge() != e {
            return Err(GameError::WrongEdge { edge: e, dir: d });
        }
        if !self.is_legal(d) {
            return Err(GameError::CreatesCycle {
                dir: d,
                forced: d.reversed(),
            });
        }
        let mut next = self.clone();
        next.oriented[idx] = Some(d);
        next.reach.insert_closed(d.from, d.to);
        next.queries += 1;
        Ok(next)
    }

    /// Number of acyclic orientations of the whole graph that agree with every
    /// queried edge, by enumerating the unqueried edges.
    pub fn extension_count(&self) -> Result<u64, GameError> {
        let free: Vec<Edge> = self
            .graph
            .edges()
            .iter()
            .zip(&self.oriented)
            .filter(|(_, d)| d.is_none())
            .map(|(&e, _)| e)
            .collect();
        if free.len() > EXTENSION_ENUM_LIMIT {
            return Err(GameError::Guard {
                what: "unqueried edges for extension enumeration",
                limit: EXTENSION_ENUM_LIMIT,
                actual: free.len(),
            });
        }
        let fixed: Vec<Direction> = self.oriented.iter().flatten().copied().collect();
        let n = self.graph.n();
        let mut arcs = Vec::with_capacity(self.graph.m());
        let mut count = 0u64;
        for mask in 0u32..(1u32 << free.len()) {
            arcs.clear();
            arcs.extend_from_slice(&fixed);
            for (i, &e) in free.iter().enumerate() {
                arcs.push(if mask >> i & 1 == 0 {
                    Direction::ascending(e)
                } else {
                    Direction::descending(e)
                });
            }
            if is_acyclic(n, &arcs) {
                count += 1;
            }
        }
        Ok(count)
    }
}

/// Kahn's algorithm.
pub(crate) fn is_acyclic(n: usize, arcs: &[Direction]) -> bool {
    let mut indeg = vec![0usize; n];
    let mut out = vec![Vec::new(); n];
    for d in arcs {
        indeg[d.to] += 1;
        out[d.from].push(d.to);
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == n
}

impl fmt::Debug for GameState {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("GameState")
            .field("oriented", &self.oriented().collect::<Vec<_>>())
            .field("queries", &self.queries)
            .finish()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    fn state(spec: GeneratorSpec) -> GameState {
        GameState::new(Arc::new(generate(&spec).unwrap()))
    }

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    fn d(a: usize, b: usize) -> Direction {
        Direction::new(a, b)
    }

    fn answer(s: &GameState, a: usize, b: usize) -> GameState {
        s.apply_answer(e(a, b), d(a, b)).unwrap()
    }

    #[test]
    fn first_answer_reveals_one_arc() {
        let s0 = state(GeneratorSpec::complete(3));
        let s1 = answer(&s0, 0, 1);
        assert!(s1.precedes(0, 1));
        assert_eq!(s1.queries(), 1);
        assert!(
            s1.statuses()
                .filter(|(_, st)| matches!(st, EdgeStatus::Forced(_)))
                .count()
                == 0
        );
        // the input state is unchanged
        assert_eq!(s0.queries(), 0);
        assert!(!s0.precedes(0, 1));
    }

    #[test]
    fn triangle_path_forces_third_edge() {
        let s = answer(&answer(&state(GeneratorSpec::complete(3)), 0, 1), 1, 2);
        assert_eq!(s.edge_status(e(0, 2)).unwrap(), EdgeStatus::Forced(d(0, 2)));
        assert!(s.is_terminal());
        assert_eq!(s.extension_count().unwrap(), 1);
        let err = s.apply_answer(e(0, 2), d(2, 0)).unwrap_err();
        assert_eq!(
            err,
            GameError::CreatesCycle {
                dir: d(2, 0),
                forced: d(0, 2)
            }
        );
    }

    #[test]
    fn square_path_forces_closing_edge() {
        let s = state(GeneratorSpec::cycle(4));
        let s = answer(&answer(&answer(&s, 0, 1), 1, 2), 2, 3);
        assert_eq!(s.edge_status(e(0, 3)).unwrap(), EdgeStatus::Forced(d(0, 3)));
    }

    #[test]
    fn star_edges_stay_open() {
        let s = answer(&answer(&state(GeneratorSpec::star(3)), 0, 1), 0, 2);
        assert_eq!(s.edge_status(e(0, 3)).unwrap(), EdgeStatus::Open);
        assert_eq!(s.extension_count().unwrap(), 2);
    }

    #[test]
    fn terminal_states() {
        assert!(GameState::new(Arc::new(Graph::empty(3))).is_terminal());
        let s = answer(&answer(&state(GeneratorSpec::complete(3)), 0, 1), 2, 1);
        assert!(!s.is_terminal());
        assert_eq!(s.extension_count().unwrap(), 2);
    }

    #[test]
    fn extension_counts() {
        let s = state(GeneratorSpec::complete(3));
        assert_eq!(s.extension_count().unwrap(), 6);
        assert_eq!(answer(&s, 0, 1).extension_count().unwrap(), 3);
        let big = state(GeneratorSpec::complete(7));
        assert!(matches!(big.extension_count(), Err(GameError::Guard { .. })));
    }

    #[test]
    fn rejects_bad_queries() {
        let s = state(GeneratorSpec::path(3));
        assert_eq!(
            s.apply_answer(e(0, 2), d(0, 2)).unwrap_err(),
            GameError::NotAnEdge((0, 2))
        );
        assert!(matches!(
            s.apply_answer(e(0, 1), d(1, 2)),
            Err(GameError::WrongEdge { .. })
        ));
        let s = answer(&s, 0, 1);
        assert_eq!(
            s.apply_answer(e(0, 1), d(0, 1)).unwrap_err(),
            GameError::AlreadyQueried(e(0, 1))
        );
    }

    #[test]
    fn querying_forced_edge_costs_without_changing_reach() {
        let s = answer(&answer(&state(GeneratorSpec::complete(3)), 0, 1), 1, 2);
        let t = s.apply_answer(e(0, 2), d(0, 2)).unwrap();
        assert_eq!(t.queries(), 3);
        assert_eq!(t.reach(), s.reach());
        assert_eq!(t.edge_status(e(0, 2)).unwrap(), EdgeStatus::Queried(d(0, 2)));
    }
}
