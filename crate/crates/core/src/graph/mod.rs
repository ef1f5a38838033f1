//! Labeled simple graphs, graph6 interchange, automorphisms and canonical forms.

mod operator;
mod search;

use std::fmt;

use crate::error::{Error, Result};

pub use operator::permutation_operator;
pub use search::{
    automorphism_group, canonical_form, canonical_labeling, canonical_labeling_with_group,
    AutomorphismGroup,
};

/// Largest supported vertex count.
pub const MAX_VERTICES: usize = 16;

/// Simple undirected graph on vertices `0..n`, stored as adjacency bitmasks.
#[derive(Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Graph {
    n: usize,
    adj: Vec<u16>,
}

impl Graph {
    /// Graph on `n` vertices without edges.
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidGraph(format!(
                "vertex count {n} outside 1..={MAX_VERTICES}"
            )));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in edges {
            if i == j {
                return Err(Error::InvalidGraph(format!("self-loop at {i}")));
            }
            if i >= n || j >= n {
                return Err(Error::InvalidGraph(format!("edge ({i},{j}) out of range")));
            }
            if g.has_edge(i, j) {
                return Err(Error::InvalidGraph(format!("duplicate edge ({i},{j})")));
            }
            g.adj[i] |= 1 << j;
            g.adj[j] |= 1 << i;
        }
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    pub fn neighbors_mask(&self, v: usize) -> u16 {
        self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|a| a.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    /// Edges `(i, j)` with `i < j` in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.has_edge(i, j) {
                    out.push((i, j));
                }
            }
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        let full: u16 = if self.n == 16 {
            u16::MAX
        } else {
            (1 << self.n) - 1
        };
        let mut seen: u16 = 1;
        let mut frontier: u16 = 1;
        while frontier != 0 {
            let v = frontier.trailing_zeros() as usize;
            frontier &= frontier - 1;
            let new = self.adj[v] & !seen;
            seen |= new;
            frontier |= new;
        }
        seen == full
    }

    /// Graph with vertex `v` renamed to `p(v)`.
    pub fn permuted(&self, p: &Permutation) -> Graph {
        let mut adj = vec![0u16; self.n];
        for (i, row) in self.adj.iter().enumerate() {
            let mut m = *row;
            while m != 0 {
                let j = m.trailing_zeros() as usize;
                m &= m - 1;
                adj[p.apply(i)] |= 1 << p.apply(j);
            }
        }
        Graph { n: self.n, adj }
    }

    pub fn is_automorphism(&self, p: &Permutation) -> bool {
        p.len() == self.n && self.permuted(p) == *self
    }

    /// Graph with one extra vertex adjacent to `mask`.
    pub fn with_vertex(&self, mask: u16) -> Result<Graph> {
        if self.n >= MAX_VERTICES {
            return Err(Error::InvalidGraph("vertex limit reached".into()));
        }
        let v = self.n;
        let mut adj = self.adj.clone();
        for (i, row) in adj.iter_mut().enumerate() {
            if mask >> i & 1 == 1 {
                *row |= 1 << v;
            }
        }
        adj.push(mask);
        Ok(Graph { n: v + 1, adj })
    }

    /// Graph with vertex `v` removed; later vertices shift down by one.
    pub fn without_vertex(&self, v: usize) -> Graph {
        let low: u16 = (1 << v) - 1;
        let squeeze = |m: u16| (m & low) | ((m >> 1) & !low);
        let adj = (0..self.n)
            .filter(|&i| i != v)
            .map(|i| squeeze(self.adj[i]))
            .collect();
        Graph { n: self.n - 1, adj }
    }

    /// Parse a single graph6 line (no header, `n <= 16`).
    pub fn from_graph6(text: &str) -> Result<Graph> {
        let bytes = text.trim_end_matches(['\n', '\r']).as_bytes();
        let Some(&first) = bytes.first() else {
            return Err(Error::Graph6("empty input".into()));
        };
        if let Some(&b) = bytes.iter().find(|&&b| !(63..=126).contains(&b)) {
            return Err(Error::Graph6(format!("invalid character 0x{b:02x}")));
        }
        if first == 126 {
            return Err(Error::Graph6("vertex count above 62 not supported".into()));
        }
        let n = (first - 63) as usize;
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::Graph6(format!(
                "vertex count {n} outside 1..={MAX_VERTICES}"
            )));
        }
        let nbits = n * (n - 1) / 2;
        let expected = nbits.div_ceil(6);
        let body = &bytes[1..];
        if body.len() != expected {
            return Err(Error::Graph6(format!(
                "expected {expected} data bytes for n={n}, found {}",
                body.len()
            )));
        }
        let mut g = Graph::empty(n)?;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                let byte = body[k / 6] - 63;
                if byte >> (5 - k % 6) & 1 == 1 {
                    g.adj[i] |= 1 << j;
                    g.adj[j] |= 1 << i;
                }
                k += 1;
            }
        }
        if k % 6 != 0 {
            let last = body[body.len() - 1] - 63;
            if last & ((1 << (6 - k % 6)) - 1) != 0 {
                return Err(Error::Graph6("nonzero padding bits".into()));
            }
        }
        Ok(g)
    }

    pub fn to_graph6(&self) -> String {
        let n = self.n;
        let mut out = vec![(n as u8) + 63];
        let mut cur = 0u8;
        let mut k = 0;
        for j in 1..n {
            for i in 0..j {
                cur = (cur << 1) | self.has_edge(i, j) as u8;
                k += 1;
                if k % 6 == 0 {
                    out.push(cur + 63);
                    cur = 0;
                }
            }
        }
        if k % 6 != 0 {
            cur <<= 6 - k % 6;
            out.push(cur + 63);
        }
        String::from_utf8(out).expect("graph6 is ASCII")
    }

    /// Upper-triangle adjacency bits in graph6 order, first bit most significant.
    pub(crate) fn bit_key(&self) -> u128 {
        let mut key = 0u128;
        for j in 1..self.n {
            for i in 0..j {
                key = (key << 1) | self.has_edge(i, j) as u128;
            }
        }
        key
    }

    pub fn path(n: usize) -> Result<Graph> {
        let e: Vec<_> = (1..n).map(|i| (i - 1, i)).collect();
        Graph::from_edges(n, &e)
    }

    pub fn complete(n: usize) -> Result<Graph> {
        let mut e = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                e.push((i, j));
            }
        }
        Graph::from_edges(n, &e)
    }

    pub fn star(leaves: usize) -> Result<Graph> {
        let e: Vec<_> = (1..=leaves).map(|i| (0, i)).collect();
        Graph::from_edges(leaves + 1, &e)
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Graph(n={}, edges={:?})", self.n, self.edges())
    }
}

/// Bijection on `0..n`.
#[derive(Clone, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Permutation {
    image: Vec<u8>,
}

impl Permutation {
    pub fn new(image: Vec<usize>) -> Result<Self> {
        let n = image.len();
        let mut seen = vec![false; n];
        for &x in &image {
            if x >= n || seen[x] {
                return Err(Error::InvalidPermutation(format!(
                    "{image:?} is not a bijection"
                )));
            }
            seen[x] = true;
        }
        Ok(Permutation {
            image: image.into_iter().map(|x| x as u8).collect(),
        })
    }

    pub fn identity(n: usize) -> Self {
        Permutation {
            image: (0..n as u8).collect(),
        }
    }

    /// Transposition of `i` and `j` on `n` points.
    pub fn transposition(n: usize, i: usize, j: usize) -> Self {
        let mut p = Self::identity(n);
        p.image.swap(i, j);
        p
    }

    pub fn len(&self) -> usize {
        self.image.len()
    }

    pub fn is_empty(&self) -> bool {
        self.image.is_empty()
    }

    #[inline]
    pub fn apply(&self, i: usize) -> usize {
        self.image[i] as usize
    }

    pub fn image(&self) -> Vec<usize> {
        self.image.iter().map(|&x| x as usize).collect()
    }

    pub fn is_identity(&self) -> bool {
        self.image.iter().enumerate().all(|(i, &x)| i == x as usize)
    }

    /// `(self * other)(i) = self(other(i))`.
    pub fn compose(&self, other: &Permutation) -> Permutation {
        Permutation {
            image: other
                .image
                .iter()
                .map(|&x| self.image[x as usize])
                .collect(),
        }
    }

    pub fn inverse(&self) -> Permutation {
        let mut inv = vec![0u8; self.len()];
        for (i, &x) in self.image.iter().enumerate() {
            inv[x as usize] = i as u8;
        }
        Permutation { image: inv }
    }
}
