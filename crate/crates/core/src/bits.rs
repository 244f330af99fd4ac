//! Dense square bit matrices used for adjacency, reachability and strict orders.

use std::fmt;

const WORD: usize = 64;

/// An `n x n` bit matrix stored row-major, each row padded to whole words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct BitMatrix {
    n: usize,
    words: usize,
    data: Vec<u64>,
}

impl BitMatrix {
    pub fn new(n: usize) -> Self {
        let words = n.div_ceil(WORD).max(1);
        Self {
            n,
            words,
            data: vec![0; n * words],
        }
    }

    /// Matrix with the diagonal set.
    pub fn identity(n: usize) -> Self {
        let mut m = Self::new(n);
        for i in 0..n {
            m.set(i, i);
        }
        m
    }

    #[inline]
    pub fn size(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn get(&self, i: usize, j: usize) -> bool {
        debug_assert!(i < self.n && j < self.n);
        self.data[i * self.words + j / WORD] >> (j % WORD) & 1 == 1
    }

    #[inline]
    pub fn set(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.n && j < self.n);
        self.data[i * self.words + j / WORD] |= 1 << (j % WORD);
    }

    #[inline]
    pub fn clear(&mut self, i: usize, j: usize) {
        debug_assert!(i < self.n && j < self.n);
        self.data[i * self.words + j / WORD] &= !(1 << (j % WORD));
    }

    #[inline]
    pub fn row(&self, i: usize) -> &[u64] {
        &self.data[i * self.words..(i + 1) * self.words]
    }

    /// `row(dst) |= row(src)`.
    pub fn or_row(&mut self, dst: usize, src: usize) {
        if dst == src {
            return;
        }
        let w = self.words;
        let (d, s) = (dst * w, src * w);
        for k in 0..w {
            let v = self.data[s + k];
            self.data[d + k] |= v;
        }
    }

    pub fn row_count(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    /// Indices of set bits in row `i`, ascending.
    pub fn row_iter(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let n = self.n;
        self.row(i).iter().enumerate().flat_map(move |(k, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    return None;
                }
                let b = w.trailing_zeros() as usize;
                w &= w - 1;
                Some(k * WORD + b)
            })
            .filter(move |&j| j < n)
        })
    }

    /// Number of set bits in column `j`.
    pub fn col_count(&self, j: usize) -> usize {
        (0..self.n).filter(|&i| self.get(i, j)).count()
    }

    /// Warshall closure in place (word-parallel): afterwards `get(i, j)` holds
    /// whenever a path `i -> ... -> j` existed.
    pub fn transitive_close(&mut self) {
        for k in 0..self.n {
            for i in 0..self.n {
                if i != k && self.get(i, k) {
                    self.or_row(i, k);
                }
            }
        }
    }

    /// Add arc `a -> b` to a matrix that is already transitively closed and
    /// reflexive, keeping it closed: every row that reaches `a` absorbs `b`'s row.
    pub fn insert_closed(&mut self, a: usize, b: usize) {
        if self.get(a, b) {
            return;
        }
        let w = self.words;
        let src: Vec<u64> = self.row(b).to_vec();
        for x in 0..self.n {
            if self.get(x, a) {
                let d = x * w;
                for (k, v) in src.iter().enumerate() {
                    self.data[d + k] |= v;
                }
            }
        }
    }

    /// The `n*n` bits packed contiguously row-major, without row padding.
    pub fn pack(&self) -> Box<[u64]> {
        let total = self.n * self.n;
        let mut out = vec![0u64; total.div_ceil(WORD).max(1)];
        let mut pos = 0usize;
        for i in 0..self.n {
            for j in self.row_iter(i) {
                let bit = pos + j;
                out[bit / WORD] |= 1 << (bit % WORD);
            }
            pos += self.n;
        }
        out.into_boxed_slice()
    }
}

impl fmt::Debug for BitMatrix {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "BitMatrix({})", self.n)?;
        for i in 0..self.n {
            let row: String = (0..self.n).map(|j| if self.get(i, j) { '1' } else { '.' }).collect();
            writeln!(f, "  {row}")?;
        }
        Ok(())
    }
}
