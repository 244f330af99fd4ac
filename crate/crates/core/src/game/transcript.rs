use std::sync::Arc;

use serde::{Deserialize, Serialize};

use super::{Direction, GameError, GameState};
use crate::graph::{parse_graph, serialize_graph, Edge, Graph, GraphError};

/// One question and its answer. `forced` marks questions whose answer was
/// already determined when asked.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Move {
    pub edge: Edge,
    pub dir: Direction,
    pub forced: bool,
}

#[derive(Debug, Clone, PartialEq, Eq, Default, Serialize, Deserialize)]
pub struct TranscriptMeta {
    pub algy: String,
    pub strategist: String,
    pub seed: Option<u64>,
    pub graph_hash: String,
}

/// A played game. Field order is the JSON field order.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Transcript {
    /// The board as an edge-list document.
    pub graph: String,
    pub moves: Vec<Move>,
    pub total: usize,
    pub meta: TranscriptMeta,
}

#[derive(Debug, thiserror::Error)]
pub enum ReplayError {
    #[error("bad graph in transcript: {0}")]
    Graph(#[from] GraphError),
    #[error("move {index}: {source}")]
    Illegal { index: usize, source: GameError },
    #[error("move {index}: forced flag says {recorded}, replay says {actual}")]
    ForcedMismatch { index: usize, recorded: bool, actual: bool },
    #[error("total {recorded} does not match {actual} moves")]
    Total { recorded: usize, actual: usize },
}

impl Transcript {
    pub fn new(graph: &Graph, meta: TranscriptMeta) -> Self {
        Self {
            graph: serialize_graph(graph),
            moves: Vec::new(),
            total: 0,
            meta: TranscriptMeta {
                graph_hash: graph.hash_hex(),
                ..meta
            },
        }
    }

    pub fn push(&mut self, edge: Edge, dir: Direction, forced: bool) {
        self.moves.push(Move { edge, dir, forced });
        self.total = self.moves.len();
    }

    /// Replays every move from the empty state, checking legality and flags.
    pub fn replay(&self) -> Result<GameState, ReplayError> {
        let graph = Arc::new(parse_graph(&self.graph)?);
        let mut state = GameState::new(graph);
        for (index, mv) in self.moves.iter().enumerate() {
            let actual = state.forced_direction(mv.edge).is_some();
            state = state
                .apply_answer(mv.edge, mv.dir)
                .map_err(|source| ReplayError::Illegal { index, source })?;
            if actual != mv.forced {
                return Err(ReplayError::ForcedMismatch {
                    index,
                    recorded: mv.forced,
                    actual,
                });
            }
        }
        if self.total != self.moves.len() {
            return Err(ReplayError::Total {
                recorded: self.total,
                actual: self.moves.len(),
            });
        }
        Ok(state)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("transcript serializes")
    }
}
