use std::fmt::Write as _;

use crate::bits::BitMatrix;
use crate::graph::{GraphError, ParseError};

/// A strict partial order on `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Poset {
    lt: BitMatrix,
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum PosetError {
    #[error("relation {0} < {1} closes a cycle")]
    Cycle(usize, usize),
    #[error("element {element} out of range for ground set of size {n}")]
    OutOfRange { element: usize, n: usize },
    #[error(transparent)]
    Parse(#[from] GraphError),
}

impl Poset {
    /// Empty order (antichain).
    pub fn antichain(n: usize) -> Self {
        Self { lt: BitMatrix::new(n) }
    }

    /// Transitive closure of the generating pairs `a < b`.
    pub fn from_generators(n: usize, pairs: impl IntoIterator<Item = (usize, usize)>) -> Result<Self, PosetError> {
        let mut lt = BitMatrix::new(n);
        for (a, b) in pairs {
            for x in [a, b] {
                if x >= n {
                    return Err(PosetError::OutOfRange { element: x, n });
                }
            }
            if a == b {
                return Err(PosetError::Cycle(a, b));
            }
            lt.set(a, b);
        }
        lt.transitive_close();
        if let Some(v) = (0..n).find(|&v| lt.get(v, v)) {
            let w = lt.row_iter(v).find(|&w| lt.get(w, v)).unwrap_or(v);
            return Err(PosetError::Cycle(v, w));
        }
        Ok(Self { lt })
    }

    /// The chain `order[0] < order[1] < ...`.
    pub fn chain(order: &[usize]) -> Result<Self, PosetError> {
        Self::from_generators(order.len(), order.windows(2).map(|w| (w[0], w[1])))
    }

    pub fn size(&self) -> usize {
        self.lt.size()
    }

    #[inline]
    pub fn lt(&self, a: usize, b: usize) -> bool {
        self.lt.get(a, b)
    }

    pub fn comparable(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) || self.lt(b, a)
    }

    pub fn matrix(&self) -> &BitMatrix {
        &self.lt
    }

    /// `a < b` with nothing strictly between: an edge of the Hasse diagram.
    pub fn is_cover(&self, a: usize, b: usize) -> bool {
        self.lt(a, b) && !(0..self.size()).any(|w| self.lt(a, w) && self.lt(w, b))
    }

    /// Elements strictly between `a` and `b`.
    pub fn between(&self, a: usize, b: usize) -> Vec<usize> {
        (0..self.size()).filter(|&w| self.lt(a, w) && self.lt(w, b)).collect()
    }

    /// A total order extending this one: repeatedly take the lowest-index
    /// minimal remaining element.
    pub fn linear_extension(&self) -> Vec<usize> {
        let n = self.size();
        let mut placed = vec![false; n];
        let mut out = Vec::with_capacity(n);
        while out.len() < n {
            let next = (0..n)
                .find(|&v| !placed[v] && (0..n).all(|u| placed[u] || !self.lt(u, v)))
                .expect("strict order always has a minimal element");
            placed[next] = true;
            out.push(next);
        }
        out
    }

    /// Covering pairs, lexicographic.
    pub fn hasse_diagram(&self) -> Vec<(usize, usize)> {
        let n = self.size();
        let mut out = Vec::new();
        for a in 0..n {
            for b in self.lt.row_iter(a) {
                if self.is_cover(a, b) {
                    out.push((a, b));
                }
            }
        }
        out
    }
}

impl std::fmt::Debug for Poset {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Poset(n={}, covers={:?})", self.size(), self.hasse_diagram())
    }
}

/// Reads a poset file: a line `N`, then lines `u v` meaning `u < v`.
/// The order is the transitive closure of the listed pairs.
pub fn parse_poset(text: &str) -> Result<Poset, PosetError> {
    let mut lines = text.split('\n').enumerate().map(|(i, l)| (i + 1, l));
    let bad = |line: usize, msg: String| PosetError::Parse(GraphError::Parse(ParseError { line, message: msg }));
    let (_, header) = lines.next().ok_or_else(|| bad(1, "missing header".into()))?;
    let n: usize = header
        .trim()
        .parse()
        .map_err(|_| bad(1, format!("malformed header: {header:?}")))?;
    let mut pairs = Vec::new();
    for (line_no, line) in lines {
        let line = line.trim();
        if line.is_empty() {
            continue;
        }
        let mut it = line.split_whitespace().map(str::parse::<usize>);
        match (it.next(), it.next(), it.next()) {
            (Some(Ok(a)), Some(Ok(b)), None) => pairs.push((a, b)),
            _ => return Err(bad(line_no, format!("malformed relation: {line:?}"))),
        }
    }
    Poset::from_generators(n, pairs)
}

/// Writes the covering pairs in the poset file format.
pub fn serialize_poset(p: &Poset) -> String {
    let mut out = p.size().to_string();
    for (a, b) in p.hasse_diagram() {
        let _ = write!(out, "\n{a} {b}");
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn linear_extensions() {
        assert_eq!(Poset::antichain(3).linear_extension(), vec![0, 1, 2]);
        let chain = Poset::from_generators(3, [(2, 1), (1, 0)]).unwrap();
        assert_eq!(chain.linear_extension(), vec![2, 1, 0]);
        assert!(chain.lt(2, 0));
        let v = Poset::from_generators(4, [(3, 0), (2, 1)]).unwrap();
        assert_eq!(v.linear_extension(), vec![2, 1, 3, 0]);
    }

    #[test]
    fn rejects_cycles() {
        assert!(matches!(
            Poset::from_generators(3, [(0, 1), (1, 2), (2, 0)]),
            Err(PosetError::Cycle(..))
        ));
        assert!(Poset::from_generators(2, [(1, 1)]).is_err());
        assert!(Poset::from_generators(2, [(0, 2)]).is_err());
    }

    #[test]
    fn covers() {
        let p = Poset::from_generators(3, [(0, 1), (1, 2), (0, 2)]).unwrap();
        assert!(p.is_cover(0, 1));
        assert!(!p.is_cover(0, 2));
        assert_eq!(p.between(0, 2), vec![1]);
        assert_eq!(p.hasse_diagram(), vec![(0, 1), (1, 2)]);
    }

    #[test]
    fn file_format() {
        let p = parse_poset("4\n0 1\n1 2\n\n3 2\n").unwrap();
        assert!(p.lt(0, 2));
        assert!(!p.comparable(0, 3));
        assert_eq!(parse_poset(&serialize_poset(&p)).unwrap(), p);
        assert!(parse_poset("x").is_err());
        assert!(parse_poset("2\n0 1 1").is_err());
        assert!(matches!(parse_poset("2\n0 1\n1 0"), Err(PosetError::Cycle(..))));
    }
}
