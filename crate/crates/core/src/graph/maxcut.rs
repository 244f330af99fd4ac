use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

/// Enumeration guard for [`max_cut`].
pub const MAX_CUT_VERTEX_LIMIT: usize = 30;

/// A vertex bipartition and the number of edges crossing it.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Cut {
    side: Vec<bool>,
    value: usize,
}

impl Cut {
    /// `side[v] == true` puts `v` on side 1.
    pub fn new(g: &Graph, side: Vec<bool>) -> Result<Self, GraphError> {
        if side.len() != g.n() {
            return Err(GraphError::InvalidSpec(format!(
                "cut covers {} vertices, graph has {}",
                side.len(),
                g.n()
            )));
        }
        let value = g.edges().iter().filter(|e| side[e.lo()] != side[e.hi()]).count();
        Ok(Self { side, value })
    }

    pub fn side(&self) -> &[bool] {
        &self.side
    }

    pub fn value(&self) -> usize {
        self.value
    }

    /// Vertices on side 0, ascending.
    pub fn side0(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| !self.side[v]).collect()
    }

    /// Vertices on side 1, ascending.
    pub fn side1(&self) -> Vec<usize> {
        (0..self.side.len()).filter(|&v| self.side[v]).collect()
    }
}

/// Exact maximum cut by enumerating all `2^(n-1)` cuts with vertex 0 on side 0.
/// Among maximum cuts the lexicographically smallest side vector wins.
pub fn max_cut(g: &Graph) -> Result<Cut, GraphError> {
    let n = g.n();
    if n > MAX_CUT_VERTEX_LIMIT {
        return Err(GraphError::Guard {
            what: "max-cut vertex count",
            limit: MAX_CUT_VERTEX_LIMIT,
            actual: n,
        });
    }
    if n <= 1 {
        return Cut::new(g, vec![false; n]);
    }
    let rows: Vec<u32> = (0..n)
        .map(|v| g.neighbors(v).fold(0u32, |acc, w| acc | 1 << w))
        .collect();
    let free = n - 1;
    let mut best = (0usize, 0u32);
    // vertex 1 is the most significant free bit so counting up walks side
    // vectors in lexicographic order
    for mask in 0u32..(1u32 << free) {
        let mut set = 0u32;
        for i in 0..free {
            if mask >> (free - 1 - i) & 1 == 1 {
                set |= 1 << (i + 1);
            }
        }
        let value: u32 = (0..n)
            .filter(|&v| set >> v & 1 == 1)
            .map(|v| (rows[v] & !set).count_ones())
            .sum();
        if value as usize > best.0 {
            best = (value as usize, set);
        }
    }
    let side = (0..n).map(|v| best.1 >> v & 1 == 1).collect();
    Cut::new(g, side)
}
