//! Small simple graphs on dense vertex ids `0..n`.

use std::collections::VecDeque;
use std::fmt;

use crate::error::{Error, Result};

/// A simple undirected graph. Neighbor lists are kept sorted.
#[derive(Clone, PartialEq, Eq, Default)]
pub struct Graph {
    adj: Vec<Vec<usize>>,
    m: usize,
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Graph")
            .field("n", &self.n())
            .field("edges", &self.edges().collect::<Vec<_>>())
            .finish()
    }
}

impl Graph {
    pub fn empty(n: usize) -> Self {
        Graph {
            adj: vec![Vec::new(); n],
            m: 0,
        }
    }

    /// Builds a graph, rejecting loops, duplicates and out-of-range endpoints.
    pub fn from_edges(n: usize, edges: impl IntoIterator<Item = (usize, usize)>) -> Result<Self> {
        let mut g = Graph::empty(n);
        for (u, v) in edges {
            g.add_edge(u, v)?;
        }
        Ok(g)
    }

    pub fn add_edge(&mut self, u: usize, v: usize) -> Result<()> {
        let n = self.n();
        for w in [u, v] {
            if w >= n {
                return Err(Error::VertexOutOfRange { vertex: w, n });
            }
        }
        if u == v {
            return Err(Error::SelfLoop(u));
        }
        match self.adj[u].binary_search(&v) {
            Ok(_) => Err(Error::DuplicateEdge(u.min(v), u.max(v))),
            Err(pos) => {
                self.adj[u].insert(pos, v);
                let pos = self.adj[v].binary_search(&u).unwrap_err();
                self.adj[v].insert(pos, u);
                self.m += 1;
                Ok(())
            }
        }
    }

    /// Adds a fresh isolated vertex and returns its id.
    pub fn add_vertex(&mut self) -> usize {
        self.adj.push(Vec::new());
        self.adj.len() - 1
    }

    pub fn n(&self) -> usize {
        self.adj.len()
    }

    pub fn m(&self) -> usize {
        self.m
    }

    pub fn neighbors(&self, v: usize) -> &[usize] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn max_degree(&self) -> usize {
        self.adj.iter().map(Vec::len).max().unwrap_or(0)
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n() && self.adj[u].binary_search(&v).is_ok()
    }

    /// Edges as `(u, v)` with `u < v`, in lexicographic order.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        self.adj
            .iter()
            .enumerate()
            .flat_map(|(u, nb)| nb.iter().filter(move |&&v| v > u).map(move |&v| (u, v)))
    }

    /// Breadth-first distances from `src`; `None` marks unreachable vertices.
    pub fn bfs(&self, src: usize) -> Vec<Option<usize>> {
        let mut dist = vec![None; self.n()];
        let mut queue = VecDeque::new();
        dist[src] = Some(0);
        queue.push_back(src);
        while let Some(u) = queue.pop_front() {
            let du = dist[u].unwrap();
            for &w in &self.adj[u] {
                if dist[w].is_none() {
                    dist[w] = Some(du + 1);
                    queue.push_back(w);
                }
            }
        }
        dist
    }

    /// Shortest-path length, `None` when `u` and `v` are disconnected.
    pub fn distance(&self, u: usize, v: usize) -> Option<usize> {
        self.bfs(u)[v]
    }

    /// The square: same vertices, `u ~ v` iff `1 <= dist(u, v) <= 2`.
    pub fn square(&self) -> Graph {
        let mut sq = Graph::empty(self.n());
        for u in 0..self.n() {
            let mut near: Vec<usize> = self.adj[u]
                .iter()
                .flat_map(|&w| std::iter::once(w).chain(self.adj[w].iter().copied()))
                .filter(|&w| w != u)
                .collect();
            near.sort_unstable();
            near.dedup();
            sq.adj[u] = near;
        }
        sq.m = sq.adj.iter().map(Vec::len).sum::<usize>() / 2;
        sq
    }

    pub fn is_subcubic(&self) -> bool {
        self.max_degree() <= 3
    }

    pub fn is_connected(&self) -> bool {
        self.n() == 0 || self.bfs(0).iter().all(Option::is_some)
    }

    /// Subgraph induced on `vertices`; vertex `vertices[i]` becomes `i`.
    pub fn induced(&self, vertices: &[usize]) -> Graph {
        let mut index = vec![usize::MAX; self.n()];
        for (i, &v) in vertices.iter().enumerate() {
            index[v] = i;
        }
        let mut sub = Graph::empty(vertices.len());
        for (i, &v) in vertices.iter().enumerate() {
            for &w in &self.adj[v] {
                let j = index[w];
                if j != usize::MAX && j > i {
                    sub.add_edge(i, j).expect("induced subgraph of a simple graph");
                }
            }
        }
        sub
    }

    /// True iff some simple cycle has length in `lo..=hi`.
    ///
    /// Depth-first search from each start vertex `s` over vertices larger
    /// than `s`, cut off at `hi` vertices.
    pub fn has_cycle_length_in(&self, lo: usize, hi: usize) -> bool {
        let lo = lo.max(3);
        if lo > hi {
            return false;
        }
        let mut on_path = vec![false; self.n()];
        (0..self.n()).any(|s| {
            on_path[s] = true;
            let found = self.cycle_dfs(s, s, 1, lo, hi, &mut on_path);
            on_path[s] = false;
            found
        })
    }

    fn cycle_dfs(
        &self,
        start: usize,
        v: usize,
        len: usize,
        lo: usize,
        hi: usize,
        on_path: &mut [bool],
    ) -> bool {
        for &w in &self.adj[v] {
            if w == start && len >= lo {
                return true;
            }
            if w > start && !on_path[w] && len < hi {
                on_path[w] = true;
                let found = self.cycle_dfs(start, w, len + 1, lo, hi, on_path);
                on_path[w] = false;
                if found {
                    return true;
                }
            }
        }
        false
    }

    /// Length of a shortest cycle, if any.
    pub fn girth(&self) -> Option<usize> {
        (3..=self.n()).find(|&k| self.has_cycle_length_in(k, k))
    }

    /// Adjacency as bitmasks; requires `n <= 64`.
    pub fn adjacency_masks(&self) -> Vec<u64> {
        assert!(self.n() <= 64, "bitmask adjacency needs at most 64 vertices");
        self.adj
            .iter()
            .map(|nb| nb.iter().fold(0u64, |acc, &w| acc | 1 << w))
            .collect()
    }
}

pub fn path(n: usize) -> Graph {
    Graph::from_edges(n, (1..n).map(|i| (i - 1, i))).unwrap()
}

pub fn cycle(n: usize) -> Graph {
    assert!(n >= 3);
    Graph::from_edges(n, (0..n).map(|i| (i, (i + 1) % n))).unwrap()
}

pub fn complete(n: usize) -> Graph {
    Graph::from_edges(n, (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)))).unwrap()
}

pub fn star(leaves: usize) -> Graph {
    Graph::from_edges(leaves + 1, (1..=leaves).map(|i| (0, i))).unwrap()
}

/// Two hexagons `0..6` and `6..12` joined by the spokes `i -- i + 6`.
pub fn hexagonal_prism() -> Graph {
    let edges = (0..6).flat_map(|i| [(i, (i + 1) % 6), (6 + i, 6 + (i + 1) % 6), (i, i + 6)]);
    Graph::from_edges(12, edges).unwrap()
}
