use super::sorting::{sort_by, state_less, SortMethod};
use crate::game::{AlgyStrategy, GameState};
use crate::graph::Edge;
use crate::reduction::ReducedGraph;

/// Questioner for `H(G, l)`: sort the clique on `V(G)`, ask every `xx'`,
/// then clear the gadget blocks one vertex at a time.
///
/// The twin answers split `V` into `X` (where `x -> x'`) and `Y`. For a block
/// vertex `u` of an edge `x ≺ y` inside `X`, asking `uy` first settles `ux`
/// or `uy'`; inside `Y`, asking `ux` first settles `uy` or `ux'`. Either way
/// three questions clear `u`. Blocks of `X`–`Y` edges take all four.
#[derive(Debug, Clone)]
pub struct Claim2 {
    rg: ReducedGraph,
    method: SortMethod,
}

impl Claim2 {
    pub fn new(rg: ReducedGraph, method: SortMethod) -> Self {
        Self { rg, method }
    }

    fn open(state: &GameState, a: usize, b: usize) -> Option<Edge> {
        let e = Edge::new(a, b)?;
        (!state.is_queried(e) && state.forced_direction(e).is_none()).then_some(e)
    }
}

impl AlgyStrategy for Claim2 {
    fn name(&self) -> String {
        format!("claim2:{}", self.method)
    }

    fn next_query(&mut self, state: &GameState) -> Option<Edge> {
        let g = self.rg.base();
        let n = g.n();
        let originals: Vec<usize> = (0..n).collect();
        if let Err(p) = sort_by(self.method, &originals, &mut state_less(state)) {
            return Edge::new(p.0, p.1);
        }

        if let Some(e) = (0..n).find_map(|x| Self::open(state, x, self.rg.prime(x))) {
            return Some(e);
        }
        let in_x = |v: usize| state.precedes(v, self.rg.prime(v));

        for (i, e) in g.edges().iter().enumerate() {
            let (x, y) = if state.precedes(e.lo(), e.hi()) {
                (e.lo(), e.hi())
            } else {
                (e.hi(), e.lo())
            };
            let first = match (in_x(x), in_x(y)) {
                (true, true) => Some(y),
                (false, false) => Some(x),
                _ => None,
            };
            for u in self.rg.block(i) {
                let mut nbrs = [e.lo(), e.hi(), self.rg.prime(e.lo()), self.rg.prime(e.hi())];
                nbrs.sort_unstable();
                if let Some(q) = first.into_iter().chain(nbrs).find_map(|w| Self::open(state, w, u)) {
                    return Some(q);
                }
            }
        }
        state.open_edges().first().copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::play_match;
    use crate::game::StrategistStrategy;
    use crate::graph::{generate, max_cut, GeneratorSpec, Graph};
    use crate::reduction::{build_claim1_poset, build_reduction};
    use crate::strategist::{GreedyStrategist, OrderStrategist};

    /// Total plus the claimed bound for the cut read off the twin answers.
    fn run(g: &Graph, l: usize, s: &mut dyn StrategistStrategy) -> (usize, usize) {
        let rg = build_reduction(g, l).unwrap();
        let h = rg.graph().clone();
        let mut algy = Claim2::new(rg.clone(), SortMethod::BinaryInsertion);
        let t = play_match(&h, &mut algy, s).unwrap();
        let end = t.replay().unwrap();
        let n = g.n();
        let sort_used = t.moves.iter().take_while(|m| m.edge.hi() < n).count();
        let cut = g
            .edges()
            .iter()
            .filter(|e| end.precedes(e.lo(), n + e.lo()) != end.precedes(e.hi(), n + e.hi()))
            .count();
        (t.total, sort_used + n + 3 * l * g.m() + l * cut)
    }

    #[test]
    fn k2_within_bound() {
        let k2 = generate(&GeneratorSpec::complete(2)).unwrap();
        let rg = build_reduction(&k2, 1).unwrap();
        let h = rg.graph().clone();
        let (total, bound) = run(&k2, 1, &mut GreedyStrategist);
        assert!(total <= bound && bound <= 7);
        for order in [[0, 1, 2, 3, 4], [4, 3, 2, 1, 0], [2, 0, 4, 1, 3]] {
            let mut s = OrderStrategist::linear(&h, &order).unwrap();
            let (total, bound) = run(&k2, 1, &mut s);
            assert!(total <= bound, "{order:?}");
        }
    }

    #[test]
    fn versus_cut_poset() {
        let g = generate(&GeneratorSpec::path(3)).unwrap();
        for l in 1..=2 {
            let rg = build_reduction(&g, l).unwrap();
            let cut = max_cut(&g).unwrap();
            let (p, _) = build_claim1_poset(&rg, &cut).unwrap();
            let mut s = OrderStrategist::from_poset(rg.graph(), p, "cut".into()).unwrap();
            let (total, bound) = run(&g, l, &mut s);
            assert!(total >= 3 * l * g.m() + l * cut.value());
            assert!(total <= bound);
        }
    }
}
