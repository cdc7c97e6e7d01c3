//! Immutable simple graphs on at most 64 vertices.
//!
//! Adjacency is stored as one `u64` bitset per vertex, so every neighborhood
//! operation is a handful of word instructions. Graphs are immutable after
//! construction and all operations are pure functions returning new values,
//! so they can be shared and sent between workers freely.

use std::fmt;

use thiserror::Error;

/// Hard capacity: adjacency rows are single machine words.
pub const MAX_VERTICES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph would have {0} vertices, capacity is {MAX_VERTICES}")]
    TooManyVertices(usize),
    #[error("vertex {0} out of range for a graph on {1} vertices")]
    VertexOutOfRange(usize, usize),
    #[error("loop at vertex {0}")]
    LoopEdge(usize),
    #[error("adjacency not symmetric at ({0}, {1})")]
    Asymmetric(usize, usize),
    #[error("{0}-{1} is not an edge")]
    NotAnEdge(usize, usize),
    #[error("vertex selection is empty")]
    EmptySelection,
    #[error("selected vertices do not induce a clique")]
    NotAClique,
    #[error("clique selections have different sizes ({0} vs {1})")]
    CliqueSizeMismatch(usize, usize),
    #[error("duplicate vertex in clique selection")]
    DuplicateCliqueVertex,
    #[error("parameter out of range: {0}")]
    ParameterOutOfRange(&'static str),
}

/// A set of vertices, backed by a single 64-bit word.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Default, PartialOrd, Ord)]
pub struct VertexSet(u64);

impl VertexSet {
    pub const EMPTY: VertexSet = VertexSet(0);

    pub fn full(n: usize) -> VertexSet {
        debug_assert!(n <= MAX_VERTICES);
        if n == 64 {
            VertexSet(u64::MAX)
        } else {
            VertexSet((1u64 << n) - 1)
        }
    }

    pub fn single(v: usize) -> VertexSet {
        VertexSet(1u64 << v)
    }

    pub fn bits(self) -> u64 {
        self.0
    }

    pub fn from_bits(bits: u64) -> VertexSet {
        VertexSet(bits)
    }

    pub fn contains(self, v: usize) -> bool {
        v < 64 && self.0 >> v & 1 == 1
    }

    pub fn insert(&mut self, v: usize) {
        self.0 |= 1u64 << v;
    }

    pub fn remove(&mut self, v: usize) {
        self.0 &= !(1u64 << v);
    }

    pub fn with(self, v: usize) -> VertexSet {
        VertexSet(self.0 | 1u64 << v)
    }

    pub fn without(self, v: usize) -> VertexSet {
        VertexSet(self.0 & !(1u64 << v))
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    /// Smallest vertex in the set, if any.
    pub fn first(self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            Some(self.0.trailing_zeros() as usize)
        }
    }

    pub fn is_subset_of(self, other: VertexSet) -> bool {
        self.0 & !other.0 == 0
    }

    pub fn iter(self) -> BitIter {
        BitIter(self.0)
    }
}

impl std::ops::BitOr for VertexSet {
    type Output = VertexSet;
    fn bitor(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 | rhs.0)
    }
}

impl std::ops::BitAnd for VertexSet {
    type Output = VertexSet;
    fn bitand(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & rhs.0)
    }
}

impl std::ops::Sub for VertexSet {
    type Output = VertexSet;
    fn sub(self, rhs: VertexSet) -> VertexSet {
        VertexSet(self.0 & !rhs.0)
    }
}

impl FromIterator<usize> for VertexSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> VertexSet {
        let mut s = VertexSet::EMPTY;
        for v in iter {
            s.insert(v);
        }
        s
    }
}

impl IntoIterator for VertexSet {
    type Item = usize;
    type IntoIter = BitIter;
    fn into_iter(self) -> BitIter {
        BitIter(self.0)
    }
}

impl fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Iterates set bits in increasing order.
pub struct BitIter(u64);

impl Iterator for BitIter {
    type Item = usize;
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            None
        } else {
            let v = self.0.trailing_zeros() as usize;
            self.0 &= self.0 - 1;
            Some(v)
        }
    }
}

/// An immutable simple graph: no loops, no parallel edges, undirected.
///
/// Vertices are `0..n`. The zero-vertex graph is allowed (it is the identity
/// for `join` and `disjoint_union`); most analysis entry points reject it.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Builds a graph from an edge list, validating capacity and loops.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = vec![0u64; n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange(u, n));
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange(v, n));
            }
            if u == v {
                return Err(GraphError::LoopEdge(u));
            }
            adj[u] |= 1u64 << v;
            adj[v] |= 1u64 << u;
        }
        Ok(Graph { n, adj })
    }

    /// Builds a graph directly from adjacency bitsets, validating symmetry,
    /// loops and out-of-range bits.
    pub fn from_adj(adj: Vec<u64>) -> Result<Graph, GraphError> {
        let n = adj.len();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mask = VertexSet::full(n).bits();
        for (v, &row) in adj.iter().enumerate() {
            if row & !mask != 0 {
                return Err(GraphError::VertexOutOfRange(
                    63 - row.leading_zeros() as usize,
                    n,
                ));
            }
            if row >> v & 1 == 1 {
                return Err(GraphError::LoopEdge(v));
            }
        }
        for u in 0..n {
            for v in (u + 1)..n {
                if (adj[u] >> v & 1) != (adj[v] >> u & 1) {
                    return Err(GraphError::Asymmetric(u, v));
                }
            }
        }
        Ok(Graph { n, adj })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.adj
            .iter()
            .map(|r| r.count_ones() as usize)
            .sum::<usize>()
            / 2
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        u < self.n && v < self.n && self.adj[u] >> v & 1 == 1
    }

    pub fn neighbors(&self, v: usize) -> VertexSet {
        VertexSet(self.adj[v])
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).max()
    }

    /// Degrees sorted in descending order.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d: Vec<usize> = (0..self.n).map(|v| self.degree(v)).collect();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    pub fn vertex_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    /// Edges as ordered pairs (u, v) with u < v, in lexicographic order.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in (VertexSet(self.adj[u]) - VertexSet::full(u + 1)).iter() {
                out.push((u, v));
            }
        }
        out
    }

    pub fn is_edgeless(&self) -> bool {
        self.adj.iter().all(|&r| r == 0)
    }

    pub fn is_complete(&self) -> bool {
        let full = self.vertex_set();
        (0..self.n).all(|v| VertexSet(self.adj[v]) == full.without(v))
    }

    /// A vertex adjacent to every other vertex, if one exists (smallest index).
    pub fn universal_vertex(&self) -> Option<usize> {
        let full = self.vertex_set();
        (0..self.n).find(|&v| VertexSet(self.adj[v]) == full.without(v))
    }

    /// Connected components as vertex sets, ordered by smallest member.
    pub fn components(&self) -> Vec<VertexSet> {
        let mut out = Vec::new();
        let mut unseen = self.vertex_set();
        while let Some(start) = unseen.first() {
            let mut comp = VertexSet::single(start);
            let mut frontier = comp;
            while !frontier.is_empty() {
                let mut next = VertexSet::EMPTY;
                for v in frontier.iter() {
                    next = next | self.neighbors(v);
                }
                frontier = next - comp;
                comp = comp | next;
            }
            unseen = unseen - comp;
            out.push(comp);
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// Complement on the same vertex set.
    pub fn complement(&self) -> Graph {
        let mask = self.vertex_set().bits();
        let adj = (0..self.n)
            .map(|v| !self.adj[v] & mask & !(1u64 << v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Disjoint union of `self` and `other` plus all edges in between.
    pub fn join(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let self_mask = VertexSet::full(self.n).bits();
        let other_mask = VertexSet::full(n).bits() & !self_mask;
        let mut adj = Vec::with_capacity(n);
        for v in 0..self.n {
            adj.push(self.adj[v] | other_mask);
        }
        for v in 0..other.n {
            adj.push(other.adj[v] << self.n | self_mask);
        }
        Ok(Graph { n, adj })
    }

    /// Disjoint union with `other`'s vertices shifted past `self`'s.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph, GraphError> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut adj = self.adj.clone();
        adj.extend(other.adj.iter().map(|&r| r << self.n));
        Ok(Graph { n, adj })
    }

    /// Returns `self` with edge uv added (no-op if present).
    pub fn with_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if u >= self.n {
            return Err(GraphError::VertexOutOfRange(u, self.n));
        }
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if u == v {
            return Err(GraphError::LoopEdge(u));
        }
        let mut adj = self.adj.clone();
        adj[u] |= 1u64 << v;
        adj[v] |= 1u64 << u;
        Ok(Graph { n: self.n, adj })
    }

    /// Contracts edge uv and suppresses parallel edges. The merged vertex is
    /// relabeled min(u, v) and every vertex past max(u, v) shifts down one.
    pub fn contract_edge(&self, u: usize, v: usize) -> Result<Graph, GraphError> {
        if !self.has_edge(u, v) {
            return Err(GraphError::NotAnEdge(u, v));
        }
        let (lo, hi) = (u.min(v), u.max(v));
        let merged = (self.neighbors(u) | self.neighbors(v))
            .without(u)
            .without(v);
        let mut edges = Vec::new();
        let remap = |w: usize| if w > hi { w - 1 } else { w };
        for (a, b) in self.edges() {
            if a == hi || b == hi || (a, b) == (lo, hi) {
                continue;
            }
            edges.push((remap(a), remap(b)));
        }
        for w in merged.iter() {
            edges.push((lo, remap(w)));
        }
        Graph::from_edges(self.n - 1, &edges)
    }

    /// Induced subgraph on `s`; vertices are relabeled 0..|s|-1 preserving
    /// their relative order.
    pub fn induced_subgraph(&self, s: VertexSet) -> Result<Graph, GraphError> {
        if s.is_empty() {
            return Err(GraphError::EmptySelection);
        }
        if !s.is_subset_of(self.vertex_set()) {
            return Err(GraphError::VertexOutOfRange(
                s.iter().find(|&v| v >= self.n).unwrap_or(self.n),
                self.n,
            ));
        }
        let verts: Vec<usize> = s.iter().collect();
        let mut adj = vec![0u64; verts.len()];
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    adj[i] |= 1u64 << j;
                    adj[j] |= 1u64 << i;
                }
            }
        }
        Ok(Graph {
            n: verts.len(),
            adj,
        })
    }

    pub fn delete_vertex(&self, v: usize) -> Result<Graph, GraphError> {
        if v >= self.n {
            return Err(GraphError::VertexOutOfRange(v, self.n));
        }
        if self.n == 1 {
            return Ok(Graph {
                n: 0,
                adj: Vec::new(),
            });
        }
        self.induced_subgraph(self.vertex_set().without(v))
    }

    /// Relabels vertices: `perm[old] = new`. `perm` must be a permutation.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        assert_eq!(perm.len(), self.n);
        let mut adj = vec![0u64; self.n];
        for (a, b) in self.edges() {
            let (x, y) = (perm[a], perm[b]);
            adj[x] |= 1u64 << y;
            adj[y] |= 1u64 << x;
        }
        Graph { n: self.n, adj }
    }

    /// True if `s` induces a complete subgraph.
    pub fn is_clique(&self, s: VertexSet) -> bool {
        s.iter()
            .all(|v| s.without(v).is_subset_of(self.neighbors(v)))
    }
}

impl fmt::Debug for Graph {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "Graph(n={}, m={}, edges={:?})",
            self.n,
            self.edge_count(),
            self.edges()
        )
    }
}

// ---------------------------------------------------------------------------
// Named constructors
// ---------------------------------------------------------------------------

impl Graph {
    pub fn edgeless(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    pub fn complete(n: usize) -> Result<Graph, GraphError> {
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let full = VertexSet::full(n);
        let adj = (0..n).map(|v| full.without(v).bits()).collect();
        Ok(Graph { n, adj })
    }

    pub fn path(n: usize) -> Result<Graph, GraphError> {
        let edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn cycle(n: usize) -> Result<Graph, GraphError> {
        if n < 3 {
            return Err(GraphError::ParameterOutOfRange("cycle needs n >= 3"));
        }
        let mut edges: Vec<_> = (1..n).map(|v| (v - 1, v)).collect();
        edges.push((n - 1, 0));
        Graph::from_edges(n, &edges)
    }

    /// Complete multipartite graph; `parts` lists the independent-set sizes.
    pub fn complete_multipartite(parts: &[usize]) -> Result<Graph, GraphError> {
        let n: usize = parts.iter().sum();
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut part_of = Vec::with_capacity(n);
        for (i, &p) in parts.iter().enumerate() {
            part_of.extend(std::iter::repeat_n(i, p));
        }
        let mut edges = Vec::new();
        for u in 0..n {
            for v in (u + 1)..n {
                if part_of[u] != part_of[v] {
                    edges.push((u, v));
                }
            }
        }
        Graph::from_edges(n, &edges)
    }

    /// The 7-vertex spider: three paths of length two sharing one endpoint.
    pub fn p32() -> Graph {
        Graph::from_edges(7, &[(0, 1), (0, 2), (0, 3), (1, 4), (2, 5), (3, 6)]).unwrap()
    }

    /// K_t minus the edges of one triangle (on vertices 0, 1, 2).
    pub fn k_minus_triangle(t: usize) -> Result<Graph, GraphError> {
        if t < 3 {
            return Err(GraphError::ParameterOutOfRange(
                "k_minus_triangle needs t >= 3",
            ));
        }
        let mut g = Graph::complete(t)?;
        for &(u, v) in &[(0usize, 1usize), (0, 2), (1, 2)] {
            g.adj[u] &= !(1u64 << v);
            g.adj[v] &= !(1u64 << u);
        }
        Ok(g)
    }

    /// Edge-maximal planar graph grown from K_4 by repeatedly placing a new
    /// vertex inside a face; the face is chosen by a deterministic linear
    /// congruential sequence from `seed`. Always has exactly 3n - 6 edges.
    pub fn stacked_triangulation(n: usize, seed: u64) -> Result<Graph, GraphError> {
        if n < 4 {
            return Err(GraphError::ParameterOutOfRange(
                "stacked_triangulation needs n >= 4",
            ));
        }
        if n > MAX_VERTICES {
            return Err(GraphError::TooManyVertices(n));
        }
        let mut state = seed
            .wrapping_mul(6364136223846793005)
            .wrapping_add(1442695040888963407);
        let mut next = || {
            state = state
                .wrapping_mul(6364136223846793005)
                .wrapping_add(1442695040888963407);
            state >> 33
        };
        let mut faces: Vec<[usize; 3]> = vec![[0, 1, 2], [0, 1, 3], [0, 2, 3], [1, 2, 3]];
        let mut edges: Vec<(usize, usize)> = vec![(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)];
        for v in 4..n {
            let idx = (next() % faces.len() as u64) as usize;
            let [a, b, c] = faces.swap_remove(idx);
            edges.extend_from_slice(&[(a, v), (b, v), (c, v)]);
            faces.push([a, b, v]);
            faces.push([a, c, v]);
            faces.push([b, c, v]);
        }
        Graph::from_edges(n, &edges)
    }

    /// The Petersen graph: outer 5-cycle, inner pentagram, five spokes.
    pub fn petersen() -> Graph {
        let mut edges = Vec::with_capacity(15);
        for i in 0..5 {
            edges.push((i, (i + 1) % 5)); // outer cycle
            edges.push((5 + i, 5 + (i + 2) % 5)); // pentagram
            edges.push((i, 5 + i)); // spoke
        }
        Graph::from_edges(10, &edges).unwrap()
    }
}

// ---------------------------------------------------------------------------
// Pure clique sums
// ---------------------------------------------------------------------------

/// A pure k-clique sum: glue `left` and `right` by identifying the vertices
/// of two k-cliques via the positional bijection
/// `left_clique[i] <-> right_clique[i]`. No glue edges are deleted and no
/// other edges are added.
#[derive(Clone, Debug)]
pub struct CliqueSumSpec {
    pub left: Graph,
    pub right: Graph,
    pub left_clique: Vec<usize>,
    pub right_clique: Vec<usize>,
}

impl CliqueSumSpec {
    pub fn validate(&self) -> Result<(), GraphError> {
        if self.left_clique.len() != self.right_clique.len() {
            return Err(GraphError::CliqueSizeMismatch(
                self.left_clique.len(),
                self.right_clique.len(),
            ));
        }
        let l: VertexSet = self.left_clique.iter().copied().collect();
        let r: VertexSet = self.right_clique.iter().copied().collect();
        if l.len() != self.left_clique.len() || r.len() != self.right_clique.len() {
            return Err(GraphError::DuplicateCliqueVertex);
        }
        for &v in &self.left_clique {
            if v >= self.left.n() {
                return Err(GraphError::VertexOutOfRange(v, self.left.n()));
            }
        }
        for &v in &self.right_clique {
            if v >= self.right.n() {
                return Err(GraphError::VertexOutOfRange(v, self.right.n()));
            }
        }
        if !self.left.is_clique(l) || !self.right.is_clique(r) {
            return Err(GraphError::NotAClique);
        }
        Ok(())
    }
}

/// Glues the spec together. The result keeps `left`'s labels; the unglued
/// `right` vertices are appended in increasing order.
pub fn pure_clique_sum(spec: &CliqueSumSpec) -> Result<Graph, GraphError> {
    spec.validate()?;
    let k = spec.left_clique.len();
    let nl = spec.left.n();
    let n = nl + spec.right.n() - k;
    if n > MAX_VERTICES {
        return Err(GraphError::TooManyVertices(n));
    }
    // Map right-side labels into the glued graph.
    let glued: VertexSet = spec.right_clique.iter().copied().collect();
    let mut right_map = vec![usize::MAX; spec.right.n()];
    for (i, &v) in spec.right_clique.iter().enumerate() {
        right_map[v] = spec.left_clique[i];
    }
    let mut fresh = nl;
    for v in 0..spec.right.n() {
        if !glued.contains(v) {
            right_map[v] = fresh;
            fresh += 1;
        }
    }
    let mut edges = spec.left.edges();
    for (u, v) in spec.right.edges() {
        edges.push((right_map[u], right_map[v]));
    }
    // from_edges suppresses the doubled glue-clique edges via the bitsets.
    Graph::from_edges(n, &edges)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_c5_is_c5_shaped() {
        let c5 = Graph::cycle(5).unwrap();
        let co = c5.complement();
        assert_eq!(co.edge_count(), 5);
        assert!((0..5).all(|v| co.degree(v) == 2));
        assert!(co.is_connected());
    }

    #[test]
    fn complement_of_k4_is_edgeless() {
        let k4 = Graph::complete(4).unwrap();
        assert!(k4.complement().is_edgeless());
    }

    #[test]
    fn complement_of_k22222_is_five_disjoint_edges() {
        // Non-edges of K_{2,2,2,2,2} are exactly the five within-part pairs.
        let g = Graph::complete_multipartite(&[2, 2, 2, 2, 2]).unwrap();
        let co = g.complement();
        assert_eq!(co.edge_count(), 5);
        assert!((0..10).all(|v| co.degree(v) == 1));
        for p in 0..5 {
            assert!(co.has_edge(2 * p, 2 * p + 1));
        }
    }

    #[test]
    fn join_of_k4_and_k2_is_k6() {
        let g = Graph::complete(4)
            .unwrap()
            .join(&Graph::complete(2).unwrap())
            .unwrap();
        assert!(g.is_complete());
        assert_eq!(g.n(), 6);
    }

    #[test]
    fn join_with_zero_vertex_graph_is_identity() {
        let g = Graph::petersen();
        let j = g.join(&Graph::edgeless(0).unwrap()).unwrap();
        assert_eq!(j, g);
    }

    #[test]
    fn join_edge_count_formula() {
        let h = Graph::stacked_triangulation(4, 7).unwrap();
        let g = h.join(&Graph::complete(1).unwrap()).unwrap();
        // t = 4: |E| = 4*5 - C(5,2) = 10
        assert_eq!(g.edge_count(), 10);
        // |E(join)| = |E(h)| + |E(K_1)| + |V(h)|*|V(K_1)|
        assert_eq!(g.edge_count(), h.edge_count() + h.n());
    }

    #[test]
    fn join_capacity_error() {
        let a = Graph::edgeless(40).unwrap();
        let b = Graph::edgeless(30).unwrap();
        assert!(matches!(a.join(&b), Err(GraphError::TooManyVertices(70))));
    }

    #[test]
    fn contract_c4_gives_triangle() {
        let c4 = Graph::cycle(4).unwrap();
        let g = c4.contract_edge(0, 1).unwrap();
        assert_eq!(g.n(), 3);
        assert!(g.is_complete());
    }

    #[test]
    fn contract_k5_gives_k4() {
        let g = Graph::complete(5).unwrap().contract_edge(2, 4).unwrap();
        assert_eq!(g.n(), 4);
        assert!(g.is_complete());
    }

    #[test]
    fn contract_non_edge_is_error() {
        let p3 = Graph::path(3).unwrap();
        assert!(matches!(
            p3.contract_edge(0, 2),
            Err(GraphError::NotAnEdge(0, 2))
        ));
    }

    #[test]
    fn contracting_petersen_spokes_yields_k5() {
        // Contract the five spokes (i, 5+i) from the top down; descending
        // order keeps the remaining spoke labels stable.
        let mut g = Graph::petersen();
        for i in (0..5).rev() {
            g = g.contract_edge(i, 5 + i).unwrap();
        }
        assert_eq!(g.n(), 5);
        assert!(g.is_complete());
    }

    #[test]
    fn induced_subgraph_full_set_is_identity() {
        let g = Graph::petersen();
        assert_eq!(g.induced_subgraph(g.vertex_set()).unwrap(), g);
    }

    #[test]
    fn induced_subgraph_of_k5_is_k3() {
        let g = Graph::complete(5).unwrap();
        let s: VertexSet = [0, 2, 4].into_iter().collect();
        assert!(g.induced_subgraph(s).unwrap().is_complete());
    }

    #[test]
    fn induced_k5_minus_triangle_universal_pair_plus_one() {
        // K_5 - triangle = two universal vertices plus an independent triple;
        // the two universal vertices with any third vertex induce K_3.
        let g = Graph::k_minus_triangle(5).unwrap();
        let universal: Vec<usize> = g.vertices().filter(|&v| g.degree(v) == 4).collect();
        assert_eq!(universal.len(), 2);
        let s: VertexSet = [universal[0], universal[1], 0].into_iter().collect();
        assert!(g.induced_subgraph(s).unwrap().is_complete());
    }

    #[test]
    fn induced_empty_selection_is_error() {
        let g = Graph::path(3).unwrap();
        assert!(matches!(
            g.induced_subgraph(VertexSet::EMPTY),
            Err(GraphError::EmptySelection)
        ));
    }

    #[test]
    fn clique_sum_of_two_k22222_copies() {
        let g = Graph::complete_multipartite(&[2, 2, 2, 2, 2]).unwrap();
        let spec = CliqueSumSpec {
            left: g.clone(),
            right: g.clone(),
            left_clique: vec![0, 2, 4, 6, 8],
            right_clique: vec![0, 2, 4, 6, 8],
        };
        let s = pure_clique_sum(&spec).unwrap();
        assert_eq!(s.n(), 15);
        assert_eq!(s.edge_count(), 70);
        assert_eq!(s.edge_count(), 6 * s.n() - 20);
    }

    #[test]
    fn clique_sum_of_two_k122222_copies() {
        let g = Graph::complete_multipartite(&[1, 2, 2, 2, 2, 2]).unwrap();
        let spec = CliqueSumSpec {
            left: g.clone(),
            right: g.clone(),
            left_clique: vec![0, 1, 3, 5, 7, 9],
            right_clique: vec![0, 1, 3, 5, 7, 9],
        };
        let s = pure_clique_sum(&spec).unwrap();
        assert_eq!(s.n(), 16);
        assert_eq!(s.edge_count(), 85);
        assert_eq!(s.edge_count(), 7 * s.n() - 27);
    }

    #[test]
    fn zero_clique_sum_is_disjoint_union() {
        let a = Graph::cycle(3).unwrap();
        let b = Graph::path(2).unwrap();
        let spec = CliqueSumSpec {
            left: a.clone(),
            right: b.clone(),
            left_clique: vec![],
            right_clique: vec![],
        };
        let s = pure_clique_sum(&spec).unwrap();
        assert_eq!(s, a.disjoint_union(&b).unwrap());
    }

    #[test]
    fn clique_sum_rejects_non_clique() {
        let p4 = Graph::path(4).unwrap();
        let spec = CliqueSumSpec {
            left: p4.clone(),
            right: p4.clone(),
            left_clique: vec![0, 2],
            right_clique: vec![0, 1],
        };
        assert!(matches!(
            pure_clique_sum(&spec),
            Err(GraphError::NotAClique)
        ));
    }

    #[test]
    fn clique_sum_rejects_size_mismatch() {
        let k3 = Graph::complete(3).unwrap();
        let spec = CliqueSumSpec {
            left: k3.clone(),
            right: k3.clone(),
            left_clique: vec![0, 1],
            right_clique: vec![0],
        };
        assert!(matches!(
            pure_clique_sum(&spec),
            Err(GraphError::CliqueSizeMismatch(2, 1))
        ));
    }

    #[test]
    fn p32_shape() {
        let g = Graph::p32();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 6);
        let mut degs = g.degree_sequence();
        degs.sort_unstable();
        assert_eq!(degs, vec![1, 1, 1, 2, 2, 2, 3]);
    }

    #[test]
    fn k5_minus_triangle_is_k113() {
        let g = Graph::k_minus_triangle(5).unwrap();
        assert_eq!(g.n(), 5);
        assert_eq!(g.edge_count(), 7);
        assert_eq!(g, Graph::complete_multipartite(&[3, 1, 1]).unwrap());
    }

    #[test]
    fn stacked_triangulation_edge_count() {
        assert_eq!(Graph::stacked_triangulation(4, 0).unwrap().edge_count(), 6);
        for seed in [1u64, 2, 42] {
            for n in 4..=12 {
                let g = Graph::stacked_triangulation(n, seed).unwrap();
                assert_eq!(g.edge_count(), 3 * n - 6, "n={n} seed={seed}");
            }
        }
    }

    #[test]
    fn stacked_triangulation_deterministic() {
        let a = Graph::stacked_triangulation(9, 5).unwrap();
        let b = Graph::stacked_triangulation(9, 5).unwrap();
        assert_eq!(a, b);
    }

    #[test]
    fn petersen_is_three_regular() {
        let g = Graph::petersen();
        assert_eq!(g.n(), 10);
        assert_eq!(g.edge_count(), 15);
        assert!((0..10).all(|v| g.degree(v) == 3));
    }

    #[test]
    fn graphs_are_shareable_across_workers() {
        fn assert_send_sync<T: Send + Sync>() {}
        assert_send_sync::<Graph>();
        assert_send_sync::<VertexSet>();
        assert_send_sync::<CliqueSumSpec>();
    }

    #[test]
    fn components_of_disjoint_union() {
        let g = Graph::cycle(3)
            .unwrap()
            .disjoint_union(&Graph::path(2).unwrap())
            .unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 2);
        assert_eq!(comps[0].len(), 3);
        assert_eq!(comps[1].len(), 2);
    }
}
