// A failed match hands back its partial transcript by value.
#![allow(clippy::result_large_err)]

use std::sync::Arc;

use super::{Direction, GameError, GameState, Transcript, TranscriptMeta};
use crate::graph::{Edge, Graph};

/// The questioner.
pub trait AlgyStrategy {
    fn name(&self) -> String;

    /// Next edge to ask about, or `None` to stop.
    fn next_query(&mut self, state: &GameState) -> Option<Edge>;
}

/// The answerer. Called only for unqueried edges of the graph; must return
/// an orientation of `edge` that keeps the revealed arcs acyclic.
pub trait StrategistStrategy {
    fn name(&self) -> String;

    fn answer(&mut self, state: &GameState, edge: Edge) -> Direction;
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
pub enum MatchFault {
    #[error("Algy asked about non-edge {0:?}")]
    AlgyNonEdge((usize, usize)),
    #[error("Algy repeated query {0}")]
    AlgyDuplicate(Edge),
    #[error("Algy stopped before the game was decided")]
    AlgyStalled,
    #[error("Strategist answered {edge} illegally: {source}")]
    StrategistIllegal { edge: Edge, source: GameError },
}

/// A match that aborted; `transcript` holds the moves up to the fault.
#[derive(Debug, Clone, thiserror::Error)]
#[error("{fault} after {} moves", transcript.total)]
pub struct MatchError {
    pub fault: MatchFault,
    pub transcript: Transcript,
}

/// Plays until the game is decided. Queries on already determined edges are
/// legal: the unique answer is recorded with `forced = true` and counted.
pub fn play_match(
    graph: &Arc<Graph>,
    algy: &mut dyn AlgyStrategy,
    strategist: &mut dyn StrategistStrategy,
) -> Result<Transcript, MatchError> {
    let meta = TranscriptMeta {
        algy: algy.name(),
        strategist: strategist.name(),
        ..TranscriptMeta::default()
    };
    let mut transcript = Transcript::new(graph, meta);
    let mut state = GameState::new(graph.clone());
    let fail = |fault, transcript| Err(MatchError { fault, transcript });

    while !state.is_terminal() {
        let Some(edge) = algy.next_query(&state) else {
            return fail(MatchFault::AlgyStalled, transcript);
        };
        if !graph.has_edge(edge.lo(), edge.hi()) {
            return fail(MatchFault::AlgyNonEdge((edge.lo(), edge.hi())), transcript);
        }
        if state.is_queried(edge) {
            return fail(MatchFault::AlgyDuplicate(edge), transcript);
        }
        let forced = state.forced_direction(edge);
        let dir = strategist.answer(&state, edge);
        match state.apply_answer(edge, dir) {
            Ok(next) => state = next,
            Err(source) => return fail(MatchFault::StrategistIllegal { edge, source }, transcript),
        }
        transcript.push(edge, dir, forced.is_some());
    }
    Ok(transcript)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GeneratorSpec};

    struct Lexicographic;

    impl AlgyStrategy for Lexicographic {
        fn name(&self) -> String {
            "lex".into()
        }
        fn next_query(&mut self, state: &GameState) -> Option<Edge> {
            state.open_edges().first().copied()
        }
    }

    struct Fixed(Vec<Edge>);

    impl AlgyStrategy for Fixed {
        fn name(&self) -> String {
            "fixed".into()
        }
        fn next_query(&mut self, _: &GameState) -> Option<Edge> {
            if self.0.is_empty() {
                None
            } else {
                Some(self.0.remove(0))
            }
        }
    }

    struct Ascending;

    impl StrategistStrategy for Ascending {
        fn name(&self) -> String {
            "asc".into()
        }
        fn answer(&mut self, state: &GameState, edge: Edge) -> Direction {
            state.forced_direction(edge).unwrap_or(Direction::ascending(edge))
        }
    }

    struct Scripted(Vec<Direction>);

    impl StrategistStrategy for Scripted {
        fn name(&self) -> String {
            "scripted".into()
        }
        fn answer(&mut self, _: &GameState, _: Edge) -> Direction {
            self.0.remove(0)
        }
    }

    fn k(n: usize) -> Arc<Graph> {
        Arc::new(generate(&GeneratorSpec::complete(n)).unwrap())
    }

    fn e(a: usize, b: usize) -> Edge {
        Edge::new(a, b).unwrap()
    }

    #[test]
    fn k2_takes_one_query() {
        let t = play_match(&k(2), &mut Lexicographic, &mut Ascending).unwrap();
        assert_eq!(t.total, 1);
    }

    #[test]
    fn k3_linear_order_takes_two() {
        let t = play_match(&k(3), &mut Fixed(vec![e(0, 1), e(1, 2)]), &mut Ascending).unwrap();
        assert_eq!(t.total, 2);
        assert!(t.replay().unwrap().is_terminal());
    }

    #[test]
    fn forced_query_is_recorded() {
        // the game ends after two moves, before the third query is issued
        let t = play_match(&k(3), &mut Fixed(vec![e(0, 1), e(1, 2), e(0, 2)]), &mut Ascending);
        assert_eq!(t.unwrap().total, 2);

        let g = Arc::new(Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap());
        let t = play_match(&g, &mut Fixed(vec![e(0, 1), e(1, 2), e(0, 2), e(2, 3)]), &mut Ascending).unwrap();
        assert_eq!(t.total, 4);
        assert!(t.moves[2].forced);

        let g = Arc::new(generate(&GeneratorSpec::path(4)).unwrap());
        let t = play_match(&g, &mut Lexicographic, &mut Ascending).unwrap();
        assert_eq!(t.total, 3);
        assert!(t.moves.iter().all(|m| !m.forced));
    }

    #[test]
    fn faults_carry_transcripts() {
        let err = play_match(&k(3), &mut Fixed(vec![e(0, 1), e(0, 1)]), &mut Ascending).unwrap_err();
        assert_eq!(err.fault, MatchFault::AlgyDuplicate(e(0, 1)));
        assert_eq!(err.transcript.total, 1);

        let g = Arc::new(generate(&GeneratorSpec::path(3)).unwrap());
        let err = play_match(&g, &mut Fixed(vec![e(0, 2)]), &mut Ascending).unwrap_err();
        assert_eq!(err.fault, MatchFault::AlgyNonEdge((0, 2)));

        let err = play_match(&k(3), &mut Fixed(vec![e(0, 1)]), &mut Ascending).unwrap_err();
        assert_eq!(err.fault, MatchFault::AlgyStalled);

        // triangle plus a pendant edge keeps the game alive after {0,2} is forced
        let g = Arc::new(Graph::new(4, [(0, 1), (1, 2), (0, 2), (2, 3)]).unwrap());
        let mut liar = Scripted(vec![Direction::new(0, 1), Direction::new(1, 2), Direction::new(2, 0)]);
        let err = play_match(&g, &mut Fixed(vec![e(0, 1), e(1, 2), e(0, 2)]), &mut liar).unwrap_err();
        assert!(matches!(err.fault, MatchFault::StrategistIllegal { .. }));
        assert_eq!(err.transcript.total, 2);
    }
}
