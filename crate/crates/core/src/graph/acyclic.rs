//! Counting acyclic orientations by deletion–contraction.

use std::collections::HashMap;

use num_bigint::BigUint;
use num_traits::One;

use super::{Edge, Graph, GraphError};

/// Largest edge count accepted by [`count_acyclic_orientations`].
pub const ACYCLIC_COUNT_EDGE_LIMIT: usize = 40;

/// `a(G)`, the number of acyclic orientations of `g`.
///
/// Uses `a(G) = a(G - e) + a(G / e)` with contractions kept simple, splitting
/// into connected components and short-circuiting forests (`2^m`) and cliques
/// (`n!`). Subresults are memoized on the edge list.
pub fn count_acyclic_orientations(g: &Graph) -> Result<BigUint, GraphError> {
    if g.m() > ACYCLIC_COUNT_EDGE_LIMIT {
        return Err(GraphError::Guard {
            what: "acyclic-orientation count edge count",
            limit: ACYCLIC_COUNT_EDGE_LIMIT,
            actual: g.m(),
        });
    }
    let mut memo = HashMap::new();
    Ok(count(g, &mut memo))
}

fn factorial(n: usize) -> BigUint {
    (1..=n).fold(BigUint::one(), |acc, k| acc * k)
}

fn count(g: &Graph, memo: &mut HashMap<Vec<Edge>, BigUint>) -> BigUint {
    let (g, _) = g.without_isolated();
    if g.m() == 0 {
        return BigUint::one();
    }
    if let Some(v) = memo.get(g.edges()) {
        return v.clone();
    }
    let comps = g.components();
    let result = if comps.len() > 1 {
        comps
            .iter()
            .map(|c| count(&g.induced(c), memo))
            .fold(BigUint::one(), |acc, x| acc * x)
    } else if g.m() + 1 == g.n() {
        // connected with n - 1 edges: a tree
        BigUint::one() << g.m()
    } else if g.is_complete() {
        factorial(g.n())
    } else {
        // split on an edge at a maximum-degree vertex; contraction then
        // merges the most parallel edges
        let hub = (0..g.n())
            .max_by_key(|&v| (g.degree(v), std::cmp::Reverse(v)))
            .unwrap_or(0);
        let w = g.neighbors(hub).next().expect("connected graph with edges");
        let e = Edge::new(hub, w).expect("neighbors are distinct");
        count(&g.delete_edge(e), memo) + count(&g.contract_edge(e), memo)
    };
    memo.insert(g.edges().to_vec(), result.clone());
    result
}
