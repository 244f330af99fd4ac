//! Answerers for the orientation game.
//!
//! Every answerer returns the unique legal direction for a determined edge,
//! so replies never close a cycle.

mod poset;

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::sync::Arc;

pub use poset::{parse_poset, serialize_poset, Poset, PosetError};

use crate::game::{Direction, GameState, StrategistStrategy};
use crate::graph::{Edge, Graph};
use crate::solver::{SolveError, Solver, SolverConfig};

/// Failure to build a strategy from a descriptor.
#[derive(Debug, thiserror::Error)]
pub enum StrategyError {
    #[error("bad descriptor {0:?}: {1}")]
    Descriptor(String, String),
    #[error("descriptor does not fit the graph: {0}")]
    Incompatible(String),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error("reading {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum StrategistDescriptor {
    /// `order[0] < order[1] < ...`; every edge points up the order.
    LinearOrder(Vec<usize>),
    Greedy,
    /// Turán graph plus a bipartite graph inside one part, with `u1` one
    /// side of that bipartite graph.
    TuranH {
        u1: Vec<usize>,
    },
    /// Complete 3-partite graph with consecutive parts X, Y, Z.
    Tripartite([usize; 3]),
    CutPoset(Poset),
    /// `cutposet:<file>` before the file has been read.
    CutPosetFile(PathBuf),
    Optimal,
}

impl StrategistDescriptor {
    /// Loads a `CutPosetFile` into a `CutPoset`; other kinds pass through.
    pub fn resolve(self) -> Result<Self, StrategyError> {
        match self {
            Self::CutPosetFile(path) => {
                let text = std::fs::read_to_string(&path).map_err(|source| StrategyError::Io { path, source })?;
                Ok(Self::CutPoset(parse_poset(&text)?))
            }
            other => Ok(other),
        }
    }
}

fn join(xs: &[usize]) -> String {
    xs.iter().map(usize::to_string).collect::<Vec<_>>().join(",")
}

fn parse_list(s: &str) -> Result<Vec<usize>, String> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|x| x.trim().parse::<usize>().map_err(|_| format!("not a vertex: {x:?}")))
        .collect()
}

impl fmt::Display for StrategistDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::LinearOrder(order) => write!(f, "order:{}", join(order)),
            Self::Greedy => f.write_str("greedy"),
            Self::TuranH { u1 } => write!(f, "turanh:u1={}", join(u1)),
            Self::Tripartite(p) => write!(f, "tripartite:{}", join(p)),
            Self::CutPoset(p) => write!(f, "cutposet:<{} elements>", p.size()),
            Self::CutPosetFile(path) => write!(f, "cutposet:{}", path.display()),
            Self::Optimal => f.write_str("optimal"),
        }
    }
}

impl FromStr for StrategistDescriptor {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: &str| StrategyError::Descriptor(s.to_string(), why.to_string());
        let (kind, rest) = s.split_once(':').unwrap_or((s, ""));
        match kind {
            "order" => parse_list(rest).map(Self::LinearOrder).map_err(|e| bad(&e)),
            "greedy" if rest.is_empty() => Ok(Self::Greedy),
            "optimal" if rest.is_empty() => Ok(Self::Optimal),
            "turanh" => {
                let list = rest.strip_prefix("u1=").ok_or_else(|| bad("expected u1=<vertices>"))?;
                parse_list(list).map(|u1| Self::TuranH { u1 }).map_err(|e| bad(&e))
            }
            "tripartite" => {
                let parts = parse_list(rest).map_err(|e| bad(&e))?;
                <[usize; 3]>::try_from(parts)
                    .map(Self::Tripartite)
                    .map_err(|_| bad("expected three part sizes"))
            }
            "cutposet" if !rest.is_empty() => Ok(Self::CutPosetFile(rest.into())),
            _ => Err(bad("unknown strategist")),
        }
    }
}

/// Builds an answerer for `graph`, checking the descriptor fits it.
pub fn make_strategist(
    d: &StrategistDescriptor,
    graph: &Arc<Graph>,
) -> Result<Box<dyn StrategistStrategy + Send>, StrategyError> {
    let name = d.to_string();
    Ok(match d {
        StrategistDescriptor::LinearOrder(order) => Box::new(OrderStrategist::linear(graph, order)?),
        StrategistDescriptor::Greedy => Box::new(GreedyStrategist),
        StrategistDescriptor::TuranH { u1 } => Box::new(turan_h(graph, u1)?),
        StrategistDescriptor::Tripartite(parts) => Box::new(TripartiteStrategist::new(graph, *parts)?),
        StrategistDescriptor::CutPoset(p) => Box::new(OrderStrategist::from_poset(graph, p.clone(), name)?),
        StrategistDescriptor::CutPosetFile(_) => {
            return make_strategist(&d.clone().resolve()?, graph);
        }
        StrategistDescriptor::Optimal => Box::new(OptimalStrategist::new(graph.clone(), SolverConfig::default())?),
    })
}

/// Answers by a fixed partial order that is total on every edge. Such an
/// answerer is non-adaptive and always legal.
#[derive(Debug, Clone)]
pub struct OrderStrategist {
    order: Poset,
    name: String,
}

impl OrderStrategist {
    /// `order` lists the vertices from least to greatest.
    pub fn linear(graph: &Graph, order: &[usize]) -> Result<Self, StrategyError> {
        let n = graph.n();
        let mut seen = vec![false; n];
        for &v in order {
            if v >= n || std::mem::replace(&mut seen[v], true) {
                return Err(StrategyError::Incompatible(format!(
                    "order {} is not a permutation of 0..{n}",
                    join(order)
                )));
            }
        }
        if order.len() != n {
            return Err(StrategyError::Incompatible(format!(
                "order has {} vertices, graph has {n}",
                order.len()
            )));
        }
        Ok(Self {
            order: Poset::chain(order)?,
            name: format!("order:{}", join(order)),
        })
    }

    pub fn from_poset(graph: &Graph, order: Poset, name: String) -> Result<Self, StrategyError> {
        if order.size() != graph.n() {
            return Err(StrategyError::Incompatible(format!(
                "poset on {} elements, graph has {} vertices",
                order.size(),
                graph.n()
            )));
        }
        if let Some(e) = graph.edges().iter().find(|e| !order.comparable(e.lo(), e.hi())) {
            return Err(StrategyError::Incompatible(format!("poset leaves edge {e} unordered")));
        }
        Ok(Self { order, name })
    }

    pub fn poset(&self) -> &Poset {
        &self.order
    }
}

impl StrategistStrategy for OrderStrategist {
    fn name(&self) -> String {
        self.name.clone()
    }

    fn answer(&mut self, _: &GameState, edge: Edge) -> Direction {
        if self.order.lt(edge.lo(), edge.hi()) {
            Direction::ascending(edge)
        } else {
            Direction::descending(edge)
        }
    }
}

/// Turán graph plus a bipartite graph inside one part: the answerer uses the
/// order `U1 < V2 < V1 \ U1`, where `V1` is the part containing `U1`.
pub fn turan_h(graph: &Graph, u1: &[usize]) -> Result<OrderStrategist, StrategyError> {
    let n = graph.n();
    let half = n / 2;
    let incompatible = |why: String| StrategyError::Incompatible(why);
    if let Some(&v) = u1.iter().find(|&&v| v >= n) {
        return Err(incompatible(format!("vertex {v} out of range")));
    }
    // Turán parts as generated: [0, n/2) and [n/2, n).
    let in_first = |v: usize| v < half;
    let v1_is_first = u1.first().is_none_or(|&v| in_first(v));
    if u1.iter().any(|&v| in_first(v) != v1_is_first) {
        return Err(incompatible("U1 spans both Turán parts".into()));
    }
    let in_v1 = |v: usize| in_first(v) == v1_is_first;
    let mut in_u1 = vec![false; n];
    for &v in u1 {
        in_u1[v] = true;
    }

    for a in 0..n {
        for b in a + 1..n {
            let has = graph.has_edge(a, b);
            let ok = match (in_v1(a), in_v1(b)) {
                (true, false) | (false, true) => has,
                (false, false) => !has,
                (true, true) => !has || in_u1[a] != in_u1[b],
            };
            if !ok {
                let what = if has { "unexpected" } else { "missing" };
                return Err(incompatible(format!("{what} edge {a}-{b}")));
            }
        }
    }

    let mut order: Vec<usize> = (0..n).filter(|&v| in_u1[v]).collect();
    order.extend((0..n).filter(|&v| !in_v1(v)));
    order.extend((0..n).filter(|&v| in_v1(v) && !in_u1[v]));
    let mut s = OrderStrategist::linear(graph, &order)?;
    let mut sorted = u1.to_vec();
    sorted.sort_unstable();
    s.name = format!("turanh:u1={}", join(&sorted));
    Ok(s)
}

/// Chooses the legal reply that determines the fewest further edges.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyStrategist;

/// Open edges other than `edge` that become determined by answering `dir`.
pub fn newly_forced(state: &GameState, edge: Edge, dir: Direction) -> Option<usize> {
    let next = state.apply_answer(edge, dir).ok()?;
    let before = state.open_edges().len() - usize::from(state.forced_direction(edge).is_none());
    Some(before - next.open_edges().len())
}

impl StrategistStrategy for GreedyStrategist {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn answer(&mut self, state: &GameState, edge: Edge) -> Direction {
        if let Some(d) = state.forced_direction(edge) {
            return d;
        }
        let up = Direction::ascending(edge);
        let down = Direction::descending(edge);
        match (newly_forced(state, edge, up), newly_forced(state, edge, down)) {
            (Some(a), Some(b)) if b < a => down,
            (None, Some(_)) => down,
            _ => up,
        }
    }
}

/// Complete 3-partite adversary. X→Y edges always point into Y. The first
/// question at each `z` in Z fixes `z` above all of X∪Y if it came from X,
/// below all of X∪Y if it came from Y.
#[derive(Debug, Clone)]
pub struct TripartiteStrategist {
    parts: [usize; 3],
    /// Per vertex of Z: `Some(true)` once committed above X∪Y.
    commitment: Vec<Option<bool>>,
}

impl TripartiteStrategist {
    pub fn new(graph: &Graph, parts: [usize; 3]) -> Result<Self, StrategyError> {
        if parts.contains(&0) {
            return Err(StrategyError::Incompatible("tripartite parts must be nonempty".into()));
        }
        let n: usize = parts.iter().sum();
        if n != graph.n() {
            return Err(StrategyError::Incompatible(format!(
                "parts cover {n} vertices, graph has {}",
                graph.n()
            )));
        }
        let s = Self {
            parts,
            commitment: vec![None; parts[2]],
        };
        for a in 0..n {
            for b in a + 1..n {
                if graph.has_edge(a, b) != (s.part(a) != s.part(b)) {
                    return Err(StrategyError::Incompatible(format!(
                        "graph is not complete 3-partite at {a}-{b}"
                    )));
                }
            }
        }
        Ok(s)
    }

    fn part(&self, v: usize) -> usize {
        if v < self.parts[0] {
            0
        } else if v < self.parts[0] + self.parts[1] {
            1
        } else {
            2
        }
    }
}

impl StrategistStrategy for TripartiteStrategist {
    fn name(&self) -> String {
        format!("tripartite:{}", join(&self.parts))
    }

    fn answer(&mut self, state: &GameState, edge: Edge) -> Direction {
        if let Some(d) = state.forced_direction(edge) {
            return d;
        }
        // Parts are consecutive, so lo is in the lower part.
        let (a, b) = (edge.lo(), edge.hi());
        if self.part(b) != 2 {
            return Direction::new(a, b);
        }
        let slot = b - self.parts[0] - self.parts[1];
        let from_x = self.part(a) == 0;
        let above = *self.commitment[slot].get_or_insert(from_x);
        if above {
            Direction::new(a, b)
        } else {
            Direction::new(b, a)
        }
    }
}

/// Answers so that the remaining game is as long as possible.
pub struct OptimalStrategist {
    solver: Solver,
}

impl OptimalStrategist {
    pub fn new(graph: Arc<Graph>, config: SolverConfig) -> Result<Self, StrategyError> {
        Ok(Self {
            solver: Solver::new(graph, config)?,
        })
    }
}

impl StrategistStrategy for OptimalStrategist {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn answer(&mut self, state: &GameState, edge: Edge) -> Direction {
        self.solver
            .optimal_answer(state, edge)
            .unwrap_or_else(|_| state.forced_direction(edge).unwrap_or(Direction::ascending(edge)))
    }
}
