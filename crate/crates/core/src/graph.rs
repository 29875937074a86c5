//! Undirected simple graphs stored as packed adjacency bitrows.

use crate::error::Error;
use crate::Result;

/// Ceiling on vertex counts; guards the dense O(n^2) machinery downstream.
pub const MAX_VERTICES: usize = 10_000;

/// An undirected simple graph. Adjacency is symmetric with a zero diagonal;
/// the edge count is cached at construction.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    words: usize,
    adj: Vec<u64>,
    m: usize,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::GraphTooLarge(n as u64));
        }
        let words = n.div_ceil(64).max(1);
        Ok(Graph {
            n,
            words,
            adj: vec![0; n * words],
            m: 0,
        })
    }

    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in edges {
            g.set_edge(i, j);
        }
        g.recount_edges();
        Ok(g)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn words_per_row(&self) -> usize {
        self.words
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adj[i * self.words + j / 64] >> (j % 64) & 1 == 1
    }

    /// Adjacency bitrow of vertex `i`.
    pub fn row(&self, i: usize) -> &[u64] {
        &self.adj[i * self.words..(i + 1) * self.words]
    }

    pub fn degree(&self, i: usize) -> usize {
        self.row(i).iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn neighbors(&self, i: usize) -> impl Iterator<Item = usize> + '_ {
        let row = self.row(i);
        (0..self.n).filter(move |&j| row[j / 64] >> (j % 64) & 1 == 1)
    }

    /// Edges as unordered pairs (i, j) with i < j, lexicographic.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |i| {
            self.neighbors(i)
                .skip_while(move |&j| j <= i)
                .map(move |j| (i, j))
        })
    }

    pub(crate) fn set_edge(&mut self, i: usize, j: usize) {
        assert!(i != j, "self-loops are not allowed");
        assert!(i < self.n && j < self.n);
        self.adj[i * self.words + j / 64] |= 1 << (j % 64);
        self.adj[j * self.words + i / 64] |= 1 << (i % 64);
    }

    pub(crate) fn recount_edges(&mut self) {
        let total: usize = self.adj.iter().map(|w| w.count_ones() as usize).sum();
        debug_assert!(total % 2 == 0);
        self.m = total / 2;
    }

    pub fn is_complete(&self) -> bool {
        self.n >= 1 && self.m == self.n * (self.n - 1) / 2
    }

    /// Complement graph: every off-diagonal bit flipped.
    pub fn complement(&self) -> Graph {
        let mut g = Graph::empty(self.n).expect("n already validated");
        for i in 0..self.n {
            for j in (i + 1)..self.n {
                if !self.has_edge(i, j) {
                    g.set_edge(i, j);
                }
            }
        }
        g.recount_edges();
        g
    }

    /// Disjoint union; `other`'s vertices are relabeled by offset `self.n`.
    pub fn disjoint_union(&self, other: &Graph) -> Graph {
        let n = self.n + other.n;
        let mut g = Graph::empty(n).expect("sum within ceiling checked by callers");
        for (i, j) in self.edges() {
            g.set_edge(i, j);
        }
        for (i, j) in other.edges() {
            g.set_edge(i + self.n, j + self.n);
        }
        g.recount_edges();
        g
    }

    /// Subgraph induced by `vertices`; vertex k of the result is `vertices[k]`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut g = Graph::empty(vertices.len()).expect("subset of a valid graph");
        for (a, &i) in vertices.iter().enumerate() {
            for (b, &j) in vertices.iter().enumerate().skip(a + 1) {
                if self.has_edge(i, j) {
                    g.set_edge(a, b);
                }
            }
        }
        g.recount_edges();
        g
    }

    /// Relabel vertices: vertex i of the result is `perm[i]` of the original.
    pub fn permuted(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        self.induced(perm)
    }

    pub fn stats(&self) -> GraphStats {
        let degrees: Vec<usize> = (0..self.n).map(|i| self.degree(i)).collect();
        let regular_degree = match degrees.first() {
            Some(&d) if degrees.iter().all(|&x| x == d) => Some(d),
            _ => None,
        };
        let components = self.components();
        GraphStats {
            regular_degree,
            degrees,
            components,
            is_complete: self.is_complete(),
        }
    }

    /// Connected components by breadth-first traversal, each sorted,
    /// ordered by smallest vertex.
    fn components(&self) -> Vec<Vec<usize>> {
        let mut seen = vec![false; self.n];
        let mut out = Vec::new();
        for start in 0..self.n {
            if seen[start] {
                continue;
            }
            let mut comp = vec![start];
            seen[start] = true;
            let mut queue = std::collections::VecDeque::from([start]);
            while let Some(v) = queue.pop_front() {
                for u in self.neighbors(v) {
                    if !seen[u] {
                        seen[u] = true;
                        comp.push(u);
                        queue.push_back(u);
                    }
                }
            }
            comp.sort_unstable();
            out.push(comp);
        }
        out
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges().collect::<Vec<_>>())
    }
}

/// Structural summary: degree sequence, regularity, components, completeness.
#[derive(Clone, Debug)]
pub struct GraphStats {
    pub degrees: Vec<usize>,
    /// Present iff every vertex has the same degree.
    pub regular_degree: Option<usize>,
    pub components: Vec<Vec<usize>>,
    pub is_complete: bool,
}

impl GraphStats {
    pub fn is_connected(&self) -> bool {
        self.components.len() == 1
    }
}

/// Upper-triangle pairs (0,1),(0,2),(1,2),(0,3),... in graph6 column-major
/// order.
pub fn upper_triangle_pairs(n: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..n).flat_map(move |j| (0..j).map(move |i| (i, j)))
}
