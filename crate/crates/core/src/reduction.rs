//! Gadget reduction from maximum cut to the orientation game.
//!
//! `H(G, l)` takes a clique on `V(G)`, a pendant twin `x'` for every `x`, and
//! for every edge `xy` a block of `l` vertices joined to `x, y, x', y'`.
//! Vertex numbering: originals `0..n`, twins `n..2n`, then one block of `l`
//! per edge of `G` in edge order.

use std::collections::BTreeMap;
use std::sync::Arc;

use serde::{Deserialize, Serialize};

use crate::algy::{make_algy, sorting_comparison_count, AlgyDescriptor, SortMethod};
use crate::game::play_match;
use crate::graph::{max_cut, Cut, Edge, Graph, GraphError};
use crate::solver::{game_value_with, SolveError, SolverConfig};
use crate::strategist::{make_strategist, Poset, PosetError, StrategistDescriptor, StrategyError};

#[derive(Debug, thiserror::Error)]
pub enum ReductionError {
    #[error("gadget size l must be at least 1")]
    ZeroL,
    #[error("cut has {got} sides for a graph on {n} vertices")]
    CutSize { got: usize, n: usize },
    #[error("role map: {0}")]
    Roles(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Poset(#[from] PosetError),
    #[error(transparent)]
    Solve(#[from] SolveError),
    #[error(transparent)]
    Strategy(#[from] StrategyError),
    #[error("match failed: {0}")]
    Match(String),
}

/// What a vertex of `H` stands for.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Role {
    Original(usize),
    Prime(usize),
    Gadget { edge: Edge, index: usize },
}

#[derive(Debug, Clone)]
pub struct ReducedGraph {
    h: Arc<Graph>,
    base: Graph,
    l: usize,
}

impl ReducedGraph {
    pub fn graph(&self) -> &Arc<Graph> {
        &self.h
    }

    /// The source graph `G`.
    pub fn base(&self) -> &Graph {
        &self.base
    }

    pub fn l(&self) -> usize {
        self.l
    }

    pub fn prime(&self, x: usize) -> usize {
        self.base.n() + x
    }

    /// Vertices of the block for the `i`-th edge of `G`.
    pub fn block(&self, i: usize) -> std::ops::Range<usize> {
        let start = 2 * self.base.n() + i * self.l;
        start..start + self.l
    }

    pub fn role(&self, v: usize) -> Role {
        let n = self.base.n();
        if v < n {
            Role::Original(v)
        } else if v < 2 * n {
            Role::Prime(v - n)
        } else {
            let k = v - 2 * n;
            Role::Gadget {
                edge: self.base.edges()[k / self.l],
                index: k % self.l,
            }
        }
    }

    pub fn is_gadget(&self, v: usize) -> bool {
        v >= 2 * self.base.n()
    }

    pub fn roles(&self) -> RoleMap {
        let n = self.base.n();
        RoleMap {
            orig: (0..n).collect(),
            prime: (n..2 * n).collect(),
            gadget: self
                .base
                .edges()
                .iter()
                .enumerate()
                .map(|(i, e)| (e.to_string(), self.block(i).collect()))
                .collect(),
        }
    }

    /// Recovers the labeling of `h` from a role map, checking it against a
    /// fresh construction.
    pub fn from_roles(h: &Graph, roles: &RoleMap) -> Result<Self, ReductionError> {
        let bad = |why: String| ReductionError::Roles(why);
        let n = roles.orig.len();
        if roles.orig != (0..n).collect::<Vec<_>>() || roles.prime != (n..2 * n).collect::<Vec<_>>() {
            return Err(bad("expected originals 0..n and primes n..2n".into()));
        }
        let mut pairs = Vec::new();
        for key in roles.gadget.keys() {
            let (a, b) = key
                .split_once('-')
                .ok_or_else(|| bad(format!("bad edge key {key:?}")))?;
            let parse = |s: &str| s.parse::<usize>().map_err(|_| bad(format!("bad edge key {key:?}")));
            pairs.push((parse(a)?, parse(b)?));
        }
        let base = Graph::new(n, pairs)?;
        let l = roles.gadget.values().next().map_or(1, Vec::len);
        let rebuilt = build_reduction(&base, l)?;
        if rebuilt.roles() != *roles || *rebuilt.h != *h {
            return Err(bad("role map does not describe this graph".into()));
        }
        Ok(rebuilt)
    }
}

/// JSON role map: `{"orig":[...],"prime":[...],"gadget":{"u-v":[...]}}`.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RoleMap {
    pub orig: Vec<usize>,
    pub prime: Vec<usize>,
    pub gadget: BTreeMap<String, Vec<usize>>,
}

pub fn build_reduction(g: &Graph, l: usize) -> Result<ReducedGraph, ReductionError> {
    if l == 0 {
        return Err(ReductionError::ZeroL);
    }
    let n = g.n();
    let total = 2 * n + l * g.m();
    let mut pairs = Vec::new();
    for a in 0..n {
        pairs.extend((a + 1..n).map(|b| (a, b)));
        pairs.push((a, n + a));
    }
    for (i, e) in g.edges().iter().enumerate() {
        let start = 2 * n + i * l;
        for u in start..start + l {
            for w in [e.lo(), e.hi(), n + e.lo(), n + e.hi()] {
                pairs.push((w, u));
            }
        }
    }
    Ok(ReducedGraph {
        h: Arc::new(Graph::new(total, pairs)?),
        base: g.clone(),
        l,
    })
}

/// The adversary's order on `V(H)` for a cut, together with its generating
/// arcs. `X` is side 0 and `Y` side 1, each chained in ascending order.
pub fn build_claim1_poset(rg: &ReducedGraph, cut: &Cut) -> Result<(Poset, Vec<(usize, usize)>), ReductionError> {
    let g = rg.base();
    if cut.side().len() != g.n() {
        return Err(ReductionError::CutSize {
            got: cut.side().len(),
            n: g.n(),
        });
    }
    let p = |v: usize| rg.prime(v);
    let (xs, ys) = (cut.side0(), cut.side1());
    let mut arcs = Vec::new();
    for w in xs.windows(2) {
        arcs.push((w[0], w[1]));
        arcs.push((p(w[0]), p(w[1])));
    }
    for w in ys.windows(2) {
        arcs.push((w[0], w[1]));
        arcs.push((p(w[0]), p(w[1])));
    }
    arcs.extend(xs.iter().map(|&x| (x, p(x))));
    arcs.extend(ys.iter().map(|&y| (p(y), y)));
    if let (Some(&xa), Some(&y1), Some(&yb), Some(&x1)) = (xs.last(), ys.first(), ys.last(), xs.first()) {
        arcs.push((xa, y1));
        arcs.push((p(yb), p(x1)));
    }
    let side = cut.side();
    for (i, e) in g.edges().iter().enumerate() {
        let (a, b) = (e.lo(), e.hi());
        for u in rg.block(i) {
            match (side[a], side[b]) {
                (false, false) => arcs.extend([(a, u), (u, b), (u, p(a))]),
                (true, true) => arcs.extend([(a, u), (p(b), u), (u, b)]),
                (false, true) => arcs.extend([(a, u), (p(b), u), (u, p(a)), (u, b)]),
                (true, false) => arcs.extend([(b, u), (p(a), u), (u, p(b)), (u, a)]),
            }
        }
    }
    let poset = Poset::from_generators(rg.graph().n(), arcs.iter().copied())?;
    Ok((poset, arcs))
}

/// Generating arcs between `V ∪ V'` and the gadget blocks that are not
/// covering pairs of the poset. Empty when the construction is sound.
pub fn hasse_cross_check(rg: &ReducedGraph, poset: &Poset, arcs: &[(usize, usize)]) -> Vec<(usize, usize)> {
    arcs.iter()
        .copied()
        .filter(|&(a, b)| rg.is_gadget(a) != rg.is_gadget(b))
        .filter(|&(a, b)| !poset.is_cover(a, b))
        .collect()
}

/// Result of checking both sides of the reduction on one instance.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SandwichReport {
    pub n: usize,
    pub m: usize,
    pub l: usize,
    /// Maximum cut of `G`.
    pub t: usize,
    pub lower: usize,
    pub upper: usize,
    pub exact: Option<u32>,
    /// Longest game the Claim-2 questioner was held to, over all answerers.
    pub algy_total: usize,
    /// Shortest game any questioner achieved against the cut-poset answerer.
    pub adversary_total: usize,
    pub hasse_violations: Vec<(usize, usize)>,
    pub holds: bool,
}

/// Plays both halves of the sandwich on `H(g, l)` and optionally solves it.
pub fn sandwich_check(g: &Graph, l: usize, solve: bool, method: SortMethod) -> Result<SandwichReport, ReductionError> {
    let rg = build_reduction(g, l)?;
    let h = rg.graph().clone();
    let cut = max_cut(g)?;
    let (n, m, t) = (g.n(), g.m(), cut.value());
    let lower = 3 * l * m + l * t;
    let upper = lower + sorting_comparison_count(n, method) as usize + n;

    let exact = if solve {
        Some(game_value_with(&h, SolverConfig::default())?.value)
    } else {
        None
    };

    let (poset, arcs) = build_claim1_poset(&rg, &cut)?;
    let hasse_violations = hasse_cross_check(&rg, &poset, &arcs);
    let adversary = StrategistDescriptor::CutPoset(poset);

    let run = |a: &AlgyDescriptor, s: &StrategistDescriptor| -> Result<usize, ReductionError> {
        let mut algy = make_algy(a, &h, Some(&rg))?;
        let mut strategist = make_strategist(s, &h)?;
        play_match(&h, algy.as_mut(), strategist.as_mut())
            .map(|t| t.total)
            .map_err(|e| ReductionError::Match(e.to_string()))
    };

    let claim2 = AlgyDescriptor::Claim2(method);
    let mut algys = vec![
        AlgyDescriptor::Exhaustive,
        AlgyDescriptor::GreedyForcing,
        AlgyDescriptor::two_round_default(0),
        claim2.clone(),
    ];
    if solve {
        algys.push(AlgyDescriptor::Optimal);
    }
    let mut adversary_total = usize::MAX;
    for a in &algys {
        adversary_total = adversary_total.min(run(a, &adversary)?);
    }

    let identity = StrategistDescriptor::LinearOrder((0..h.n()).collect());
    let mut strategists = vec![adversary, StrategistDescriptor::Greedy, identity];
    if solve {
        strategists.push(StrategistDescriptor::Optimal);
    }
    let mut algy_total = 0;
    for s in &strategists {
        algy_total = algy_total.max(run(&claim2, s)?);
    }

    let in_range = |v: usize| lower <= v && v <= upper;
    let holds = hasse_violations.is_empty()
        && adversary_total >= lower
        && algy_total <= upper
        && exact.is_none_or(|c| in_range(c as usize));
    Ok(SandwichReport {
        n,
        m,
        l,
        t,
        lower,
        upper,
        exact,
        algy_total,
        adversary_total,
        hasse_violations,
        holds,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::game::{Direction, GameState};
    use crate::graph::{generate, GeneratorSpec};

    fn k(n: usize) -> Graph {
        generate(&GeneratorSpec::complete(n)).unwrap()
    }

    fn cut(g: &Graph, side: &[bool]) -> Cut {
        Cut::new(g, side.to_vec()).unwrap()
    }

    #[test]
    fn sizes() {
        for (g, l, v, e) in [(k(2), 1, 5, 7), (k(3), 2, 12, 30), (Graph::empty(3), 5, 6, 6)] {
            let rg = build_reduction(&g, l).unwrap();
            assert_eq!((rg.graph().n(), rg.graph().m()), (v, e));
        }
        assert!(matches!(build_reduction(&k(2), 0), Err(ReductionError::ZeroL)));
    }

    #[test]
    fn roles_and_adjacency() {
        let rg = build_reduction(&k(3), 2).unwrap();
        let h = rg.graph();
        assert_eq!(rg.role(4), Role::Prime(1));
        assert_eq!(
            rg.role(9),
            Role::Gadget {
                edge: Edge::new(0, 2).unwrap(),
                index: 1
            }
        );
        // block of edge 1-2 is 10, 11
        let nbrs: Vec<usize> = h.neighbors(10).collect();
        assert_eq!(nbrs, vec![1, 2, 4, 5]);
        assert!(!h.has_edge(3, 4));
        assert!(!h.has_edge(6, 7));
        assert!(h.has_edge(0, 3));

        let roles = rg.roles();
        let json = serde_json::to_string(&roles).unwrap();
        assert_eq!(
            json,
            r#"{"orig":[0,1,2],"prime":[3,4,5],"gadget":{"0-1":[6,7],"0-2":[8,9],"1-2":[10,11]}}"#
        );
        let back = ReducedGraph::from_roles(h, &roles).unwrap();
        assert_eq!(back.base(), rg.base());
        assert!(ReducedGraph::from_roles(&k(12), &roles).is_err());
    }

    #[test]
    fn claim1_poset_cross_edge() {
        let g = k(2);
        let rg = build_reduction(&g, 1).unwrap();
        let (p, arcs) = build_claim1_poset(&rg, &cut(&g, &[false, true])).unwrap();
        // x = 0, y = 1, x' = 2, y' = 3, u = 4
        for (a, b) in [(0, 4), (4, 1), (3, 4), (4, 2), (0, 2), (3, 1), (0, 1), (3, 2)] {
            assert!(p.lt(a, b), "{a} < {b}");
        }
        assert!(hasse_cross_check(&rg, &p, &arcs).is_empty());
        let ext = p.linear_extension();
        let pos = |v: usize| ext.iter().position(|&w| w == v).unwrap();
        assert!(pos(0) < pos(4) && pos(4) < pos(2));
        assert!(pos(3) < pos(4) && pos(4) < pos(1));
    }

    #[test]
    fn claim1_poset_inside_x() {
        let g = k(2);
        let rg = build_reduction(&g, 1).unwrap();
        let (p, arcs) = build_claim1_poset(&rg, &cut(&g, &[false, false])).unwrap();
        assert!(p.lt(0, 4) && p.lt(4, 1) && p.lt(4, 2));
        assert!(hasse_cross_check(&rg, &p, &arcs).is_empty());
        // every edge of H is ordered, so the orientation is fully determined
        let mut st = GameState::new(rg.graph().clone());
        for &e in rg.graph().edges() {
            let d = if p.lt(e.lo(), e.hi()) {
                Direction::ascending(e)
            } else {
                Direction::descending(e)
            };
            st = st.apply_answer(e, d).unwrap();
        }
        assert!(st.is_terminal());
    }

    #[test]
    fn synthetic_shortcut_is_not_a_cover() {
        let g = k(2);
        let rg = build_reduction(&g, 1).unwrap();
        let (p, mut arcs) = build_claim1_poset(&rg, &cut(&g, &[false, false])).unwrap();
        arcs.push((0, 1));
        assert!(p.is_cover(0, 4));
        assert!(!p.is_cover(0, 1));
        assert!(hasse_cross_check(&rg, &p, &arcs).is_empty());
        assert!(build_claim1_poset(&rg, &Cut::new(&k(3), vec![false; 3]).unwrap()).is_err());
    }

    #[test]
    fn sandwich_k2() {
        let r = sandwich_check(&k(2), 1, true, SortMethod::BinaryInsertion).unwrap();
        assert_eq!((r.lower, r.upper), (4, 7));
        assert!(r.holds, "{r:?}");
        let r = sandwich_check(&k(2), 2, true, SortMethod::BinaryInsertion).unwrap();
        assert_eq!((r.lower, r.upper), (8, 11));
        assert!(r.holds, "{r:?}");
    }

    #[test]
    fn sandwich_path() {
        let p3 = generate(&GeneratorSpec::path(3)).unwrap();
        let r = sandwich_check(&p3, 1, false, SortMethod::BinaryInsertion).unwrap();
        assert_eq!((r.t, r.lower, r.upper), (2, 8, 14));
        assert!(r.holds, "{r:?}");
    }
}
