// A failed match hands back its partial transcript by value.
#![allow(clippy::result_large_err)]

use std::sync::Arc;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::game::{AlgyStrategy, GameState, MatchError, MatchFault, StrategistStrategy, Transcript, TranscriptMeta};
use crate::graph::{Edge, Graph};

/// Default first-round probability `min(1, 2 sqrt(ln n / n))`.
pub fn default_probability(n: usize) -> f64 {
    probability_for(n, 2.0)
}

/// `min(1, c sqrt(ln n / n))`; 1 for graphs too small for the formula.
pub fn probability_for(n: usize, c: f64) -> f64 {
    if n < 3 {
        return 1.0;
    }
    let n = n as f64;
    (c * (n.ln() / n).sqrt()).min(1.0)
}

/// Keeps each edge independently with probability `p`, drawing one uniform
/// per edge in edge order.
pub fn sample_first_round(g: &Graph, p: f64, seed: u64) -> Vec<Edge> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    g.edges().iter().copied().filter(|_| rng.gen::<f64>() < p).collect()
}

/// Asks about a random edge set, then about every edge still open.
#[derive(Debug, Clone)]
pub struct TwoRound {
    p: f64,
    seed: u64,
    first: Option<Vec<Edge>>,
    second: Option<Vec<Edge>>,
    pos: usize,
}

impl TwoRound {
    pub fn new(p: f64, seed: u64) -> Self {
        Self {
            p,
            seed,
            first: None,
            second: None,
            pos: 0,
        }
    }
}

impl AlgyStrategy for TwoRound {
    fn name(&self) -> String {
        format!("tworound:p={}:seed={}", self.p, self.seed)
    }

    fn next_query(&mut self, state: &GameState) -> Option<Edge> {
        let first = self
            .first
            .get_or_insert_with(|| sample_first_round(state.graph(), self.p, self.seed));
        if self.pos < first.len() {
            self.pos += 1;
            return Some(first[self.pos - 1]);
        }
        let second = self.second.get_or_insert_with(|| state.open_edges());
        let next = second.get(self.pos - first.len()).copied();
        self.pos += 1;
        next
    }
}

#[derive(Debug, Clone, Serialize)]
pub struct TwoRoundReport {
    pub transcript: Transcript,
    /// `|D|`.
    pub round1: usize,
    /// Edges still open after round one.
    pub round2: usize,
}

/// Runs both rounds in full: every edge of `D` and every edge open after
/// round one is asked, even if it became determined in the meantime, so
/// `total = round1 + round2`.
pub fn run_two_round(
    g: &Arc<Graph>,
    strategist: &mut dyn StrategistStrategy,
    p: f64,
    seed: u64,
) -> Result<TwoRoundReport, MatchError> {
    let mut report = run_rounds(g, strategist, &sample_first_round(g, p, seed))?;
    report.transcript.meta.algy = format!("tworound:p={p}:seed={seed}");
    report.transcript.meta.seed = Some(seed);
    Ok(report)
}

/// Both rounds with an explicit first-round edge set.
pub fn run_rounds(
    g: &Arc<Graph>,
    strategist: &mut dyn StrategistStrategy,
    first: &[Edge],
) -> Result<TwoRoundReport, MatchError> {
    let meta = TranscriptMeta {
        algy: "tworound".into(),
        strategist: strategist.name(),
        ..TranscriptMeta::default()
    };
    let mut transcript = Transcript::new(g, meta);
    let mut state = GameState::new(g.clone());

    let mut ask = |state: &mut GameState, transcript: &mut Transcript, edge: Edge| -> Result<(), MatchError> {
        let forced = state.forced_direction(edge);
        let dir = strategist.answer(state, edge);
        match state.apply_answer(edge, dir) {
            Ok(next) => *state = next,
            Err(source) => {
                return Err(MatchError {
                    fault: MatchFault::StrategistIllegal { edge, source },
                    transcript: transcript.clone(),
                })
            }
        }
        transcript.push(edge, dir, forced.is_some());
        Ok(())
    };

    for &e in first {
        ask(&mut state, &mut transcript, e)?;
    }
    let second = state.open_edges();
    for &e in &second {
        ask(&mut state, &mut transcript, e)?;
    }
    debug_assert!(state.is_terminal());
    Ok(TwoRoundReport {
        transcript,
        round1: first.len(),
        round2: second.len(),
    })
}
