//! Brute-force oracles shared by the integration tests. Nothing here calls
//! into the library except to build a `Graph` from an edge list.
#![allow(dead_code)]

use std::collections::HashMap;
use std::sync::Arc;

use aogame::Graph;

pub type Pairs = Vec<(usize, usize)>;

pub fn graph(n: usize, edges: &[(usize, usize)]) -> Arc<Graph> {
    Arc::new(Graph::new(n, edges.iter().copied()).unwrap())
}

/// All unordered pairs of `0..n` in lexicographic order.
pub fn all_pairs(n: usize) -> Pairs {
    (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b))).collect()
}

/// Every labeled graph on `n` vertices, one per edge subset.
pub fn labeled_graphs(n: usize) -> impl Iterator<Item = Pairs> {
    let pairs = all_pairs(n);
    (0u64..1 << pairs.len()).map(move |mask| {
        pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &p)| p)
            .collect()
    })
}

pub fn permutations(n: usize) -> Vec<Vec<usize>> {
    fn rec(prefix: &mut Vec<usize>, used: &mut [bool], out: &mut Vec<Vec<usize>>) {
        if prefix.len() == used.len() {
            out.push(prefix.clone());
            return;
        }
        for v in 0..used.len() {
            if !used[v] {
                used[v] = true;
                prefix.push(v);
                rec(prefix, used, out);
                prefix.pop();
                used[v] = false;
            }
        }
    }
    let mut out = Vec::new();
    rec(&mut Vec::new(), &mut vec![false; n], &mut out);
    out
}

/// One representative per isomorphism class, as the lexicographically
/// smallest edge mask among all relabelings.
pub fn nonisomorphic_graphs(n: usize) -> Vec<Pairs> {
    let pairs = all_pairs(n);
    let index: HashMap<(usize, usize), usize> = pairs.iter().enumerate().map(|(i, &p)| (p, i)).collect();
    let perms = permutations(n);
    // For each permutation, where each pair index goes.
    let maps: Vec<Vec<usize>> = perms
        .iter()
        .map(|p| {
            pairs
                .iter()
                .map(|&(a, b)| index[&(p[a].min(p[b]), p[a].max(p[b]))])
                .collect()
        })
        .collect();
    let mut out = Vec::new();
    for mask in 0u64..1 << pairs.len() {
        let canonical = maps.iter().all(|map| {
            let mut image = 0u64;
            for (i, &j) in map.iter().enumerate() {
                image |= (mask >> i & 1) << j;
            }
            image >= mask
        });
        if canonical {
            out.push(
                pairs
                    .iter()
                    .enumerate()
                    .filter(|(i, _)| mask >> i & 1 == 1)
                    .map(|(_, &p)| p)
                    .collect(),
            );
        }
    }
    out
}

/// Kahn's algorithm on explicit arcs.
pub fn is_acyclic(n: usize, arcs: impl IntoIterator<Item = (usize, usize)>) -> bool {
    let mut indeg = vec![0; n];
    let mut out = vec![Vec::new(); n];
    for (a, b) in arcs {
        out[a].push(b);
        indeg[b] += 1;
    }
    let mut stack: Vec<usize> = (0..n).filter(|&v| indeg[v] == 0).collect();
    let mut seen = 0;
    while let Some(v) = stack.pop() {
        seen += 1;
        for &w in &out[v] {
            indeg[w] -= 1;
            if indeg[w] == 0 {
                stack.push(w);
            }
        }
    }
    seen == n
}

/// Arc of edge `(a, b)`, `a < b`, under orientation bit `flip`.
pub fn arc((a, b): (usize, usize), flip: bool) -> (usize, usize) {
    if flip {
        (b, a)
    } else {
        (a, b)
    }
}

/// Every acyclic orientation as a bitmask; bit `i` set means edge `i` points
/// from its higher to its lower endpoint.
pub fn acyclic_orientations(n: usize, edges: &[(usize, usize)]) -> Vec<u64> {
    (0u64..1 << edges.len())
        .filter(|&o| is_acyclic(n, edges.iter().enumerate().map(|(i, &e)| arc(e, o >> i & 1 == 1))))
        .collect()
}

pub fn triangles(n: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![vec![false; n]; n];
    for &(a, b) in edges {
        adj[a][b] = true;
        adj[b][a] = true;
    }
    let mut t = 0;
    for a in 0..n {
        for b in a + 1..n {
            for c in b + 1..n {
                if adj[a][b] && adj[b][c] && adj[a][c] {
                    t += 1;
                }
            }
        }
    }
    t
}

pub fn max_cut_value(n: usize, edges: &[(usize, usize)]) -> usize {
    (0u64..1 << n)
        .map(|s| edges.iter().filter(|&&(a, b)| (s >> a & 1) != (s >> b & 1)).count())
        .max()
        .unwrap_or(0)
}

/// All vertex 2-colorings achieving the maximum cut, with vertex 0 on side 0.
pub fn max_cuts(n: usize, edges: &[(usize, usize)]) -> Vec<Vec<bool>> {
    let best = max_cut_value(n, edges);
    (0u64..1 << n.saturating_sub(1))
        .map(|s| s << 1)
        .filter(|&s| edges.iter().filter(|&&(a, b)| (s >> a & 1) != (s >> b & 1)).count() == best)
        .map(|s| (0..n).map(|v| s >> v & 1 == 1).collect())
        .collect()
}

pub fn ceil_log2(x: usize) -> u32 {
    if x <= 1 {
        0
    } else {
        usize::BITS - (x - 1).leading_zeros()
    }
}

/// The game played directly on the set of acyclic orientations still
/// consistent with the answers: Algy splits the set by an edge, Strategist
/// keeps the half she prefers, and play ends at a single orientation. On
/// `K_n` this is minimum-comparison sorting.
///
/// `value` is plain minimax. Its only shortcuts are alpha cutoffs and
/// stopping an edge scan once a child meets `ceil(log2 |S|)`, which no
/// questioner can beat; neither changes the result.
pub struct GameOracle {
    orientations: Vec<u64>,
    m: usize,
    pub nodes: u64,
}

impl GameOracle {
    pub fn new(n: usize, edges: &[(usize, usize)]) -> Self {
        Self {
            orientations: acyclic_orientations(n, edges),
            m: edges.len(),
            nodes: 0,
        }
    }

    pub fn clique(n: usize) -> Self {
        Self::new(n, &all_pairs(n))
    }

    /// The value from the position where `known` edges are fixed to the bits
    /// of `dirs`.
    pub fn value_from(&mut self, known: u64, dirs: u64) -> u32 {
        let set: Vec<u64> = self
            .orientations
            .iter()
            .copied()
            .filter(|&o| o & known == dirs)
            .collect();
        self.minimax(&set)
    }

    pub fn value(&mut self) -> u32 {
        self.value_from(0, 0)
    }

    fn split(set: &[u64], i: usize) -> (Vec<u64>, Vec<u64>) {
        set.iter().partition(|&&o| o >> i & 1 == 0)
    }

    fn minimax(&mut self, set: &[u64]) -> u32 {
        self.nodes += 1;
        let floor = ceil_log2(set.len());
        let mut best = u32::MAX;
        for i in 0..self.m {
            let (a, b) = Self::split(set, i);
            if a.is_empty() || b.is_empty() {
                continue;
            }
            let (big, small) = if a.len() >= b.len() { (a, b) } else { (b, a) };
            let v = 1 + self.minimax(&big);
            if v >= best {
                continue;
            }
            let v = v.max(1 + self.minimax(&small));
            best = best.min(v);
            if best == floor {
                break;
            }
        }
        if best == u32::MAX {
            0
        } else {
            best
        }
    }

    /// Memoized on the consistent set, for sizes where plain search is slow.
    pub fn value_memo(&self) -> u32 {
        fn go(m: usize, set: Vec<u64>, memo: &mut HashMap<Vec<u64>, u32>) -> u32 {
            if let Some(&v) = memo.get(&set) {
                return v;
            }
            let mut best = u32::MAX;
            for i in 0..m {
                let (a, b) = GameOracle::split(&set, i);
                if a.is_empty() || b.is_empty() {
                    continue;
                }
                best = best.min(1 + go(m, a, memo).max(go(m, b, memo)));
            }
            let v = if best == u32::MAX { 0 } else { best };
            memo.insert(set, v);
            v
        }
        go(self.m, self.orientations.clone(), &mut HashMap::new())
    }
}

/// `sum_{k=1..n} ceil(log2(3k/4))`, the Ford–Johnson comparison count.
pub fn ford_johnson(n: u64) -> u64 {
    (1..=n)
        .map(|k| {
            let mut c = 0;
            while 4 << c < 3 * k {
                c += 1;
            }
            c
        })
        .sum()
}

/// `sum_{i=2..n} ceil(log2 i)`.
pub fn binary_insertion(n: u64) -> u64 {
    (2..=n).map(|i| u64::from(ceil_log2(i as usize))).sum()
}

/// Proptest strategy: a graph on `min_n..=max_n` vertices with each pair
/// present independently, at most `max_m` edges.
pub fn arb_graph(
    min_n: usize,
    max_n: usize,
    max_m: usize,
) -> impl proptest::strategy::Strategy<Value = (usize, Pairs)> {
    use proptest::prelude::*;
    (min_n..=max_n).prop_flat_map(move |n| {
        let pairs = all_pairs(n);
        proptest::collection::vec(any::<bool>(), pairs.len()).prop_map(move |keep| {
            let mut edges: Pairs = pairs.iter().zip(keep).filter(|(_, k)| *k).map(|(&p, _)| p).collect();
            edges.truncate(max_m);
            (n, edges)
        })
    })
}
