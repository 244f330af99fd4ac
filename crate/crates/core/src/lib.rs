//! Workbench for the acyclic orientation game.
//!
//! Algy asks for the orientation of edges of a known graph; Strategist
//! answers, keeping the revealed orientation acyclic. The game ends once the
//! answers extend to a unique acyclic orientation. This crate provides the
//! rules engine, an exact memoized solver for the game length `c(G)`,
//! questioner and answerer strategies, closed-form bounds, and the gadget
//! reduction that ties `c` to maximum cuts.

pub mod algy;
pub mod api;
pub mod bits;
pub mod bounds;
pub mod game;
pub mod graph;
pub mod reduction;
pub mod seed;
pub mod solver;
pub mod strategist;

pub use game::{Direction, EdgeStatus, GameError, GameState, Transcript};
pub use graph::{Edge, Graph, GraphError};
