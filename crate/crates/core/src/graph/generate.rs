use std::fmt;
use std::str::FromStr;

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use super::{Graph, GraphError};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum GeneratorKind {
    Complete,
    CompleteMultipartite,
    Turan,
    Path,
    Cycle,
    Star,
    Gnp,
}

impl FromStr for GeneratorKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Ok(match s {
            "complete" => Self::Complete,
            "complete-multipartite" | "multipartite" => Self::CompleteMultipartite,
            "turan" => Self::Turan,
            "path" => Self::Path,
            "cycle" => Self::Cycle,
            "star" => Self::Star,
            "gnp" => Self::Gnp,
            other => return Err(GraphError::InvalidSpec(format!("unknown kind {other:?}"))),
        })
    }
}

impl fmt::Display for GeneratorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Self::Complete => "complete",
            Self::CompleteMultipartite => "complete-multipartite",
            Self::Turan => "turan",
            Self::Path => "path",
            Self::Cycle => "cycle",
            Self::Star => "star",
            Self::Gnp => "gnp",
        })
    }
}

/// Which family to build and with what parameters.
///
/// `n` is the vertex count for `complete`, `turan`, `path`, `cycle` and `gnp`;
/// for `star` it is the number of leaves `k` (the center is vertex 0).
/// `parts` is only read by `complete-multipartite`, `p` and `seed` only by `gnp`.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct GeneratorSpec {
    pub kind: GeneratorKind,
    #[serde(default)]
    pub n: usize,
    #[serde(default)]
    pub parts: Vec<usize>,
    #[serde(default)]
    pub p: f64,
    #[serde(default)]
    pub seed: u64,
}

impl GeneratorSpec {
    fn with_n(kind: GeneratorKind, n: usize) -> Self {
        Self {
            kind,
            n,
            parts: Vec::new(),
            p: 0.0,
            seed: 0,
        }
    }

    pub fn complete(n: usize) -> Self {
        Self::with_n(GeneratorKind::Complete, n)
    }

    pub fn multipartite(parts: &[usize]) -> Self {
        Self {
            parts: parts.to_vec(),
            ..Self::with_n(GeneratorKind::CompleteMultipartite, 0)
        }
    }

    pub fn turan(n: usize) -> Self {
        Self::with_n(GeneratorKind::Turan, n)
    }

    pub fn path(n: usize) -> Self {
        Self::with_n(GeneratorKind::Path, n)
    }

    pub fn cycle(n: usize) -> Self {
        Self::with_n(GeneratorKind::Cycle, n)
    }

    /// `K_{1,k}`.
    pub fn star(k: usize) -> Self {
        Self::with_n(GeneratorKind::Star, k)
    }

    pub fn gnp(n: usize, p: f64, seed: u64) -> Self {
        Self {
            p,
            seed,
            ..Self::with_n(GeneratorKind::Gnp, n)
        }
    }

    pub fn validate(&self) -> Result<(), GraphError> {
        let bad = |msg: String| Err(GraphError::InvalidSpec(msg));
        match self.kind {
            GeneratorKind::CompleteMultipartite => {
                if self.parts.is_empty() {
                    return bad("complete-multipartite needs at least one part".into());
                }
                if self.parts.contains(&0) {
                    return bad(format!("part sizes must be positive: {:?}", self.parts));
                }
            }
            GeneratorKind::Cycle if self.n < 3 => return bad(format!("cycle needs n >= 3, got {}", self.n)),
            GeneratorKind::Gnp if !(0.0..=1.0).contains(&self.p) => {
                return bad(format!("edge probability {} outside [0, 1]", self.p))
            }
            _ => {}
        }
        Ok(())
    }
}

fn multipartite(parts: &[usize]) -> Graph {
    let n = parts.iter().sum();
    let mut part_of = Vec::with_capacity(n);
    for (i, &s) in parts.iter().enumerate() {
        part_of.extend(std::iter::repeat_n(i, s));
    }
    let pairs = (0..n).flat_map(|a| (a + 1..n).map(move |b| (a, b)));
    Graph::simplified(n, pairs.filter(|&(a, b)| part_of[a] != part_of[b]))
}

/// Builds the graph described by `spec`. Vertex numbering: parts of a
/// multipartite graph are consecutive blocks in the order given; `turan(n)`
/// puts the part of size `floor(n/2)` first.
pub fn generate(spec: &GeneratorSpec) -> Result<Graph, GraphError> {
    spec.validate()?;
    let n = spec.n;
    Ok(match spec.kind {
        GeneratorKind::Complete => multipartite(&vec![1; n]),
        GeneratorKind::CompleteMultipartite => multipartite(&spec.parts),
        GeneratorKind::Turan => {
            let parts: Vec<usize> = [n / 2, n - n / 2].into_iter().filter(|&s| s > 0).collect();
            if parts.is_empty() {
                Graph::empty(0)
            } else {
                multipartite(&parts)
            }
        }
        GeneratorKind::Path => Graph::simplified(n, (1..n).map(|v| (v - 1, v))),
        GeneratorKind::Cycle => Graph::simplified(n, (0..n).map(|v| (v, (v + 1) % n))),
        GeneratorKind::Star => Graph::simplified(n + 1, (1..=n).map(|v| (0, v))),
        GeneratorKind::Gnp => {
            let mut rng = ChaCha8Rng::seed_from_u64(spec.seed);
            let mut pairs = Vec::new();
            for a in 0..n {
                for b in a + 1..n {
                    if rng.gen::<f64>() < spec.p {
                        pairs.push((a, b));
                    }
                }
            }
            Graph::simplified(n, pairs)
        }
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn multipartite_221() {
        let g = generate(&GeneratorSpec::multipartite(&[2, 2, 1])).unwrap();
        assert_eq!((g.n(), g.m()), (5, 8));
        assert!(!g.has_edge(0, 1));
        assert!(!g.has_edge(2, 3));
        assert!(g.has_edge(1, 4));
    }

    #[test]
    fn turan_five_is_k23() {
        let g = generate(&GeneratorSpec::turan(5)).unwrap();
        assert_eq!(g.m(), 6);
        assert!(!g.has_edge(0, 1));
        assert!(g.has_edge(1, 2));
        assert!(!g.has_edge(2, 4));
    }

    #[test]
    fn complete_four() {
        let g = generate(&GeneratorSpec::complete(4)).unwrap();
        assert_eq!(g.m(), 6);
        assert_eq!(g, generate(&GeneratorSpec::multipartite(&[1, 1, 1, 1])).unwrap());
    }

    #[test]
    fn small_families() {
        assert_eq!(generate(&GeneratorSpec::star(4)).unwrap().m(), 4);
        assert_eq!(generate(&GeneratorSpec::cycle(4)).unwrap().m(), 4);
        assert_eq!(generate(&GeneratorSpec::path(4)).unwrap().m(), 3);
        assert_eq!(generate(&GeneratorSpec::turan(1)).unwrap().m(), 0);
        assert_eq!(generate(&GeneratorSpec::multipartite(&[3])).unwrap().m(), 0);
    }

    #[test]
    fn invalid_specs() {
        assert!(generate(&GeneratorSpec::multipartite(&[2, 0])).is_err());
        assert!(generate(&GeneratorSpec::multipartite(&[])).is_err());
        assert!(generate(&GeneratorSpec::gnp(5, 1.5, 0)).is_err());
        assert!(generate(&GeneratorSpec::cycle(2)).is_err());
        assert!("wheel".parse::<GeneratorKind>().is_err());
    }

    #[test]
    fn gnp_seeded() {
        let a = generate(&GeneratorSpec::gnp(30, 0.3, 11)).unwrap();
        let b = generate(&GeneratorSpec::gnp(30, 0.3, 11)).unwrap();
        assert_eq!(a, b);
        assert_eq!(generate(&GeneratorSpec::gnp(6, 1.0, 3)).unwrap().m(), 15);
        assert_eq!(generate(&GeneratorSpec::gnp(6, 0.0, 3)).unwrap().m(), 0);
    }
}
