use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algy::{make_algy, AlgyDescriptor, GreedyForcing};
use crate::bounds::{bound_report, BoundReport, DEFAULT_C};
use crate::game::{
    AlgyStrategy, Direction, EdgeStatus, GameError, GameState, StrategistStrategy, Transcript, TranscriptMeta,
};
use crate::graph::{generate, parse_graph, Edge, GeneratorSpec, Graph};
use crate::reduction::{ReducedGraph, RoleMap};
use crate::solver::{Solver, SolverConfig};
use crate::strategist::{make_strategist, GreedyStrategist, StrategistDescriptor};

/// Errors surfaced to HTTP clients.
#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum ApiError {
    #[error("no such session")]
    NotFound,
    #[error("{0}")]
    BadRequest(String),
    #[error("{message}")]
    Conflict {
        message: String,
        /// The only legal direction, when a reply was rejected for closing a cycle.
        forced: Option<Direction>,
    },
    #[error("session is busy")]
    Busy,
    #[error("{0}")]
    Internal(String),
}

impl ApiError {
    fn conflict(message: impl Into<String>) -> Self {
        Self::Conflict {
            message: message.into(),
            forced: None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum HumanRole {
    Algy,
    Strategist,
}

/// A board given either as an edge-list document or as generator parameters.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum GraphInput {
    EdgeList(String),
    Generator(GeneratorSpec),
}

impl GraphInput {
    fn build(&self) -> Result<Graph, ApiError> {
        match self {
            Self::EdgeList(text) => parse_graph(text),
            Self::Generator(spec) => generate(spec),
        }
        .map_err(|e| ApiError::BadRequest(format!("graph: {e}")))
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct CreateRequest {
    pub graph: GraphInput,
    pub role: HumanRole,
    /// A strategist descriptor when the human plays Algy, an Algy descriptor
    /// otherwise.
    pub opponent: String,
    /// Reduction labeling, needed by a `claim2` opponent.
    #[serde(default)]
    pub roles: Option<RoleMap>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EdgeView {
    pub e: Edge,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none", default)]
    pub dir: Option<Direction>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct View {
    pub edges: Vec<EdgeView>,
    pub total: usize,
    pub terminal: bool,
    pub bounds: BoundReport,
    pub role: HumanRole,
    pub opponent: String,
    /// The engine's question awaiting the human's answer.
    pub pending: Option<Edge>,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct QueryResponse {
    pub dir: Direction,
    pub newly_forced: Vec<Edge>,
    pub view: View,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct AnswerResponse {
    pub next_query: Option<Edge>,
    pub newly_forced: Vec<Edge>,
    pub view: View,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct Hint {
    pub game_over: bool,
    pub total: usize,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub edge: Option<Edge>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub dir: Option<Direction>,
    /// `"optimal"` when the suggestion comes from the exact solver,
    /// `"heuristic"` otherwise.
    pub source: String,
    pub bounds: BoundReport,
    /// Acyclic completions of the current state, when cheap to count.
    pub extensions: Option<u64>,
}

/// What a session needs to be rebuilt after a restart.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SessionRecord {
    pub id: String,
    pub role: HumanRole,
    pub opponent: String,
    pub roles: Option<RoleMap>,
    pub transcript: Transcript,
}

enum Engine {
    Strategist(Box<dyn StrategistStrategy + Send>),
    Algy(Box<dyn AlgyStrategy + Send>),
}

pub struct Session {
    id: String,
    role: HumanRole,
    opponent: String,
    roles: Option<RoleMap>,
    state: GameState,
    engine: Engine,
    pending: Option<Edge>,
    transcript: Transcript,
    bounds: BoundReport,
    solver: Option<Solver>,
}

fn open_set(state: &GameState) -> Vec<Edge> {
    state.open_edges()
}

fn newly_forced_between(before: &[Edge], after: &GameState, asked: Edge) -> Vec<Edge> {
    before
        .iter()
        .copied()
        .filter(|&e| e != asked && matches!(after.edge_status(e), Ok(EdgeStatus::Forced(_))))
        .collect()
}

impl Session {
    pub fn create(id: String, req: &CreateRequest) -> Result<Self, ApiError> {
        let graph = Arc::new(req.graph.build()?);
        let bad = |e: &dyn std::fmt::Display| ApiError::BadRequest(format!("opponent: {e}"));
        let engine = match req.role {
            HumanRole::Algy => {
                let d: StrategistDescriptor = req.opponent.parse().map_err(|e| bad(&e))?;
                if matches!(d, StrategistDescriptor::CutPosetFile(_)) {
                    return Err(ApiError::BadRequest(
                        "file-based descriptors are not accepted here".into(),
                    ));
                }
                Engine::Strategist(make_strategist(&d, &graph).map_err(|e| bad(&e))?)
            }
            HumanRole::Strategist => {
                let d: AlgyDescriptor = req.opponent.parse().map_err(|e| bad(&e))?;
                let rg = match &req.roles {
                    Some(map) => Some(ReducedGraph::from_roles(&graph, map).map_err(|e| bad(&e))?),
                    None => None,
                };
                Engine::Algy(make_algy(&d, &graph, rg.as_ref()).map_err(|e| bad(&e))?)
            }
        };
        let meta = TranscriptMeta {
            algy: match req.role {
                HumanRole::Algy => "human".into(),
                HumanRole::Strategist => req.opponent.clone(),
            },
            strategist: match req.role {
                HumanRole::Algy => req.opponent.clone(),
                HumanRole::Strategist => "human".into(),
            },
            ..TranscriptMeta::default()
        };
        let mut session = Self {
            id,
            role: req.role,
            opponent: req.opponent.clone(),
            roles: req.roles.clone(),
            state: GameState::new(graph.clone()),
            engine,
            pending: None,
            transcript: Transcript::new(&graph, meta),
            bounds: bound_report(&graph, DEFAULT_C).expect("default constant is valid"),
            solver: None,
        };
        session.advance_engine()?;
        Ok(session)
    }

    pub fn id(&self) -> &str {
        &self.id
    }

    pub fn state(&self) -> &GameState {
        &self.state
    }

    pub fn transcript(&self) -> &Transcript {
        &self.transcript
    }

    pub fn view(&self) -> View {
        View {
            edges: self
                .state
                .statuses()
                .map(|(e, s)| EdgeView {
                    e,
                    status: s.label().to_string(),
                    dir: s.direction(),
                })
                .collect(),
            total: self.transcript.total,
            terminal: self.state.is_terminal(),
            bounds: self.bounds.clone(),
            role: self.role,
            opponent: self.opponent.clone(),
            pending: self.pending,
        }
    }

    /// Human Algy asks about `pair`; the engine answers.
    pub fn query(&mut self, pair: (usize, usize)) -> Result<QueryResponse, ApiError> {
        let Engine::Strategist(engine) = &mut self.engine else {
            return Err(ApiError::conflict("this session expects answers, not questions"));
        };
        if self.state.is_terminal() {
            return Err(ApiError::conflict("game over"));
        }
        let edge = Edge::new(pair.0, pair.1)
            .filter(|e| self.state.graph().edge_index(*e).is_some())
            .ok_or_else(|| ApiError::BadRequest(format!("{pair:?} is not an edge")))?;
        if self.state.is_queried(edge) {
            return Err(ApiError::conflict(format!("{edge} already queried")));
        }
        let before = open_set(&self.state);
        let forced = self.state.forced_direction(edge);
        let dir = engine.answer(&self.state, edge);
        let next = self
            .state
            .apply_answer(edge, dir)
            .map_err(|e| ApiError::Internal(format!("engine answered illegally: {e}")))?;
        self.state = next;
        self.transcript.push(edge, dir, forced.is_some());
        Ok(QueryResponse {
            dir,
            newly_forced: newly_forced_between(&before, &self.state, edge),
            view: self.view(),
        })
    }

    /// Human Strategist answers the pending question.
    pub fn answer(&mut self, pair: (usize, usize)) -> Result<AnswerResponse, ApiError> {
        let Some(edge) = self.pending else {
            return Err(ApiError::conflict("no question is pending"));
        };
        let dir = Direction::new(pair.0, pair.1);
        let before = open_set(&self.state);
        let forced = self.state.forced_direction(edge);
        let next = self.state.apply_answer(edge, dir).map_err(|e| match e {
            GameError::CreatesCycle { .. } => ApiError::Conflict {
                message: e.to_string(),
                forced,
            },
            other => ApiError::BadRequest(other.to_string()),
        })?;
        self.state = next;
        self.transcript.push(edge, dir, forced.is_some());
        self.pending = None;
        self.advance_engine()?;
        Ok(AnswerResponse {
            next_query: self.pending,
            newly_forced: newly_forced_between(&before, &self.state, edge),
            view: self.view(),
        })
    }

    /// In human-Strategist mode, fetches the engine's next question.
    fn advance_engine(&mut self) -> Result<(), ApiError> {
        let Engine::Algy(algy) = &mut self.engine else {
            return Ok(());
        };
        if self.state.is_terminal() {
            return Ok(());
        }
        match algy.next_query(&self.state) {
            Some(e) if self.state.graph().edge_index(e).is_some() && !self.state.is_queried(e) => {
                self.pending = Some(e);
                Ok(())
            }
            other => Err(ApiError::Internal(format!("engine questioner misbehaved: {other:?}"))),
        }
    }

    pub fn hint(&mut self) -> Hint {
        let mut hint = Hint {
            game_over: self.state.is_terminal(),
            total: self.transcript.total,
            edge: None,
            dir: None,
            source: "heuristic".into(),
            bounds: self.bounds.clone(),
            extensions: self.state.extension_count().ok(),
        };
        if hint.game_over {
            return hint;
        }
        let graph = self.state.graph().clone();
        let config = SolverConfig::default();
        if self.solver.is_none() && config.admits(&graph) {
            self.solver = Solver::new(graph, config).ok();
        }
        match (self.role, self.pending) {
            (HumanRole::Algy, _) => {
                if let Some(e) = self.solver.as_mut().and_then(|s| s.optimal_move(&self.state).ok()) {
                    hint.edge = Some(e);
                    hint.source = "optimal".into();
                } else {
                    hint.edge = GreedyForcing.next_query(&self.state);
                }
            }
            (HumanRole::Strategist, Some(edge)) => {
                hint.edge = Some(edge);
                if let Some(d) = self
                    .solver
                    .as_mut()
                    .and_then(|s| s.optimal_answer(&self.state, edge).ok())
                {
                    hint.dir = Some(d);
                    hint.source = "optimal".into();
                } else {
                    hint.dir = Some(GreedyStrategist.answer(&self.state, edge));
                }
            }
            (HumanRole::Strategist, None) => {}
        }
        hint
    }

    pub fn record(&self) -> SessionRecord {
        SessionRecord {
            id: self.id.clone(),
            role: self.role,
            opponent: self.opponent.clone(),
            roles: self.roles.clone(),
            transcript: self.transcript.clone(),
        }
    }

    /// Rebuilds a session by replaying its moves through a fresh engine,
    /// which must reproduce every engine move.
    pub fn restore(record: &SessionRecord) -> Result<Self, ApiError> {
        let req = CreateRequest {
            graph: GraphInput::EdgeList(record.transcript.graph.clone()),
            role: record.role,
            opponent: record.opponent.clone(),
            roles: record.roles.clone(),
        };
        let mut s = Self::create(record.id.clone(), &req)?;
        let diverged = |i: usize| ApiError::Internal(format!("record {} diverges at move {i}", record.id));
        for (i, mv) in record.transcript.moves.iter().enumerate() {
            match record.role {
                HumanRole::Algy => {
                    let r = s.query((mv.edge.lo(), mv.edge.hi())).map_err(|_| diverged(i))?;
                    if r.dir != mv.dir {
                        return Err(diverged(i));
                    }
                }
                HumanRole::Strategist => {
                    if s.pending != Some(mv.edge) {
                        return Err(diverged(i));
                    }
                    s.answer((mv.dir.from, mv.dir.to)).map_err(|_| diverged(i))?;
                }
            }
        }
        Ok(s)
    }
}
