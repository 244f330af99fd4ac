//! Questioners for the orientation game.

mod claim2;
mod sorting;
mod two_round;

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

pub use claim2::Claim2;
pub use sorting::{
    binary_insertion, merge_insertion, sort_by, sorting_comparison_count, state_less, Less, Pending, SortMethod,
};
pub use two_round::{
    default_probability, probability_for, run_rounds, run_two_round, sample_first_round, TwoRound, TwoRoundReport,
};

use crate::game::{AlgyStrategy, GameState};
use crate::graph::{Edge, Graph};
use crate::reduction::ReducedGraph;
use crate::solver::{Solver, SolverConfig};
use crate::strategist::StrategyError;

/// How the two-round questioner picks its first-round probability.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Rate {
    P(f64),
    /// `p = min(1, C sqrt(ln n / n))`.
    C(f64),
}

impl Rate {
    pub fn probability(self, n: usize) -> f64 {
        match self {
            Rate::P(p) => p,
            Rate::C(c) => probability_for(n, c),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub enum AlgyDescriptor {
    Exhaustive,
    GreedyForcing,
    Sorting(SortMethod),
    TwoRound {
        rate: Rate,
        seed: Option<u64>,
    },
    Claim2(SortMethod),
    /// Plays the solver's minimax move.
    Optimal,
}

impl AlgyDescriptor {
    pub fn two_round_default(seed: u64) -> Self {
        Self::TwoRound {
            rate: Rate::C(2.0),
            seed: Some(seed),
        }
    }

    /// Fills in a seed where the descriptor left it open.
    pub fn with_default_seed(self, seed: u64) -> Self {
        match self {
            Self::TwoRound { rate, seed: None } => Self::TwoRound { rate, seed: Some(seed) },
            other => other,
        }
    }
}

impl fmt::Display for AlgyDescriptor {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Self::Exhaustive => f.write_str("exhaustive"),
            Self::GreedyForcing => f.write_str("greedy"),
            Self::Sorting(m) => write!(f, "sort:{m}"),
            Self::Claim2(m) => write!(f, "claim2:{m}"),
            Self::Optimal => f.write_str("optimal"),
            Self::TwoRound { rate, seed } => {
                f.write_str("tworound")?;
                match rate {
                    Rate::P(p) => write!(f, ":p={p}")?,
                    Rate::C(c) => write!(f, ":C={c}")?,
                }
                match seed {
                    Some(s) => write!(f, ":seed={s}"),
                    None => Ok(()),
                }
            }
        }
    }
}

impl FromStr for AlgyDescriptor {
    type Err = StrategyError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = |why: String| StrategyError::Descriptor(s.to_string(), why);
        let mut parts = s.split(':');
        let kind = parts.next().unwrap_or_default();
        let rest: Vec<&str> = parts.collect();
        let method = |rest: &[&str]| match rest {
            [m] => m.parse::<SortMethod>().map_err(bad),
            _ => Err(bad("expected a sort method".into())),
        };
        match kind {
            "exhaustive" if rest.is_empty() => Ok(Self::Exhaustive),
            "greedy" if rest.is_empty() => Ok(Self::GreedyForcing),
            "optimal" if rest.is_empty() => Ok(Self::Optimal),
            "sort" => method(&rest).map(Self::Sorting),
            "claim2" => method(&rest).map(Self::Claim2),
            "tworound" => {
                let mut rate = Rate::C(2.0);
                let mut seed = None;
                for part in rest {
                    let (key, value) = part
                        .split_once('=')
                        .ok_or_else(|| bad(format!("expected key=value, got {part:?}")))?;
                    let number = || value.parse::<f64>().map_err(|_| bad(format!("bad number {value:?}")));
                    match key {
                        "p" => {
                            let p = number()?;
                            if !(p > 0.0 && p <= 1.0) {
                                return Err(bad(format!("p must lie in (0, 1], got {p}")));
                            }
                            rate = Rate::P(p);
                        }
                        "C" | "c" => {
                            let c = number()?;
                            if !(c > 0.0 && c.is_finite()) {
                                return Err(bad(format!("C must be positive, got {c}")));
                            }
                            rate = Rate::C(c);
                        }
                        "seed" => seed = Some(value.parse().map_err(|_| bad(format!("bad seed {value:?}")))?),
                        _ => return Err(bad(format!("unknown key {key:?}"))),
                    }
                }
                Ok(Self::TwoRound { rate, seed })
            }
            _ => Err(bad("unknown questioner".into())),
        }
    }
}

/// Builds a questioner for `graph`. `claim2` needs the reduction labeling.
pub fn make_algy(
    d: &AlgyDescriptor,
    graph: &Arc<Graph>,
    roles: Option<&ReducedGraph>,
) -> Result<Box<dyn AlgyStrategy + Send>, StrategyError> {
    Ok(match d {
        AlgyDescriptor::Exhaustive => Box::new(Exhaustive),
        AlgyDescriptor::GreedyForcing => Box::new(GreedyForcing),
        AlgyDescriptor::Sorting(m) => {
            if !graph.is_complete() {
                return Err(StrategyError::Incompatible("sorting needs a complete graph".into()));
            }
            Box::new(Sorting(*m))
        }
        AlgyDescriptor::TwoRound { rate, seed } => {
            Box::new(TwoRound::new(rate.probability(graph.n()), seed.unwrap_or(0)))
        }
        AlgyDescriptor::Claim2(m) => {
            let rg = roles.ok_or_else(|| StrategyError::Incompatible("claim2 needs a reduction role map".into()))?;
            if **rg.graph() != **graph {
                return Err(StrategyError::Incompatible(
                    "role map belongs to a different graph".into(),
                ));
            }
            Box::new(Claim2::new(rg.clone(), *m))
        }
        AlgyDescriptor::Optimal => Box::new(OptimalAlgy::new(graph.clone(), SolverConfig::default())?),
    })
}

/// Asks the lexicographically first question of minimum worst-case cost.
pub struct OptimalAlgy {
    solver: Solver,
}

impl OptimalAlgy {
    pub fn new(graph: Arc<Graph>, config: SolverConfig) -> Result<Self, StrategyError> {
        Ok(Self {
            solver: Solver::new(graph, config)?,
        })
    }
}

impl AlgyStrategy for OptimalAlgy {
    fn name(&self) -> String {
        "optimal".into()
    }

    fn next_query(&mut self, state: &GameState) -> Option<Edge> {
        self.solver.optimal_move(state).ok()
    }
}

/// Asks the first open edge in edge order.
#[derive(Debug, Clone, Copy, Default)]
pub struct Exhaustive;

impl AlgyStrategy for Exhaustive {
    fn name(&self) -> String {
        "exhaustive".into()
    }

    fn next_query(&mut self, state: &GameState) -> Option<Edge> {
        state.open_edges().first().copied()
    }
}

/// Asks the open edge whose endpoints have the most known predecessors in
/// total, preferring the first such edge in edge order.
#[derive(Debug, Clone, Copy, Default)]
pub struct GreedyForcing;

impl AlgyStrategy for GreedyForcing {
    fn name(&self) -> String {
        "greedy".into()
    }

    fn next_query(&mut self, state: &GameState) -> Option<Edge> {
        let indeg: Vec<usize> = (0..state.graph().n()).map(|v| state.reach().col_count(v)).collect();
        let mut best: Option<(usize, Edge)> = None;
        for e in state.open_edges() {
            let score = indeg[e.lo()] + indeg[e.hi()];
            if best.is_none_or(|(s, _)| score > s) {
                best = Some((score, e));
            }
        }
        best.map(|(_, e)| e)
    }
}

/// Sorts the vertices of a complete graph.
#[derive(Debug, Clone, Copy)]
pub struct Sorting(pub SortMethod);

impl AlgyStrategy for Sorting {
    fn name(&self) -> String {
        format!("sort:{}", self.0)
    }

    fn next_query(&mut self, state: &GameState) -> Option<Edge> {
        let items: Vec<usize> = (0..state.graph().n()).collect();
        match sort_by(self.0, &items, &mut state_less(state)) {
            Err(Pending(a, b)) => Edge::new(a, b),
            Ok(_) => state.open_edges().first().copied(),
        }
    }
}
