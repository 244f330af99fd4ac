use super::Graph;

/// Result of [`min_degree_core`].
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DegreeCore {
    /// Surviving vertices, ascending.
    pub vertices: Vec<usize>,
    /// The peeling threshold `ceil(m / n)`.
    pub threshold: usize,
    /// Minimum degree of the induced subgraph on `vertices` (at least `threshold`).
    pub min_degree: usize,
}

/// Repeatedly deletes the lowest-index vertex whose current degree is below
/// `ceil(m / n)`. Deleting a vertex of degree `< m/n` never lowers the average
/// degree, so the survivor set is nonempty whenever `g` has an edge.
pub fn min_degree_core(g: &Graph) -> DegreeCore {
    let n = g.n();
    if n == 0 {
        return DegreeCore {
            vertices: Vec::new(),
            threshold: 0,
            min_degree: 0,
        };
    }
    let threshold = g.m().div_ceil(n);
    let mut alive = vec![true; n];
    let mut degree: Vec<usize> = (0..n).map(|v| g.degree(v)).collect();
    'peel: loop {
        for v in 0..n {
            if alive[v] && degree[v] < threshold {
                alive[v] = false;
                for w in g.neighbors(v) {
                    if alive[w] {
                        degree[w] -= 1;
                    }
                }
                continue 'peel;
            }
        }
        break;
    }
    let vertices: Vec<usize> = (0..n).filter(|&v| alive[v]).collect();
    let min_degree = vertices.iter().map(|&v| degree[v]).min().unwrap_or(0);
    DegreeCore {
        vertices,
        threshold,
        min_degree,
    }
}
