//! Simple undirected labeled graphs on at most 64 vertices.
//!
//! Each neighborhood is a single `u64` bitset, so edge queries, neighborhood
//! intersections, and vertex-set manipulations are one or two machine
//! instructions. Graphs are immutable in spirit: the mutating methods exist
//! for construction code, and every analysis function takes `&Graph`.

use crate::error::{Error, Result};

/// Hard cap on vertex count: one bitset word per neighborhood.
pub const MAX_VERTICES: usize = 64;

#[inline(always)]
pub(crate) const fn bit(v: usize) -> u64 {
    1u64 << v
}

/// Mask with the lowest `n` bits set.
#[inline(always)]
pub(crate) const fn low_mask(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Iterator over the set bit positions of a mask, ascending.
#[derive(Clone)]
pub struct Bits(pub(crate) u64);

impl Iterator for Bits {
    type Item = usize;

    #[inline(always)]
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

/// Set bits of `mask`, ascending.
#[inline(always)]
pub fn bits(mask: u64) -> Bits {
    Bits(mask)
}

/// A simple undirected graph with vertices `0..n`, `n <= 64`.
///
/// Invariants maintained by every constructor and mutator: the adjacency
/// relation is symmetric, has no self-loops, and uses only bits below `n`.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

impl Graph {
    /// Edgeless graph on `n` vertices.
    pub fn empty(n: usize) -> Result<Graph> {
        if n > MAX_VERTICES {
            return Err(Error::SizeCap {
                what: "graph vertex count",
                limit: MAX_VERTICES,
                got: n,
            });
        }
        Ok(Graph {
            n,
            adj: vec![0; n],
        })
    }

    /// Graph on `n` vertices with the given edge list.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph> {
        let mut g = Graph::empty(n)?;
        for &(u, v) in edges {
            if u >= n || v >= n {
                return Err(Error::InvalidSpec(format!(
                    "edge ({u},{v}) out of range for n={n}"
                )));
            }
            if u == v {
                return Err(Error::InvalidSpec(format!("self-loop at {u}")));
            }
            g.add_edge(u, v);
        }
        Ok(g)
    }

    #[inline(always)]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Mask of all vertices.
    #[inline(always)]
    pub fn vertex_mask(&self) -> u64 {
        low_mask(self.n)
    }

    #[inline(always)]
    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u] & bit(v) != 0
    }

    pub fn add_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < self.n && v < self.n && u != v);
        self.adj[u] |= bit(v);
        self.adj[v] |= bit(u);
    }

    pub fn remove_edge(&mut self, u: usize, v: usize) {
        debug_assert!(u < self.n && v < self.n);
        self.adj[u] &= !bit(v);
        self.adj[v] &= !bit(u);
    }

    /// Neighborhood of `v` as a bitset.
    #[inline(always)]
    pub fn neighbors_mask(&self, v: usize) -> u64 {
        debug_assert!(v < self.n);
        self.adj[v]
    }

    pub fn neighbors(&self, v: usize) -> Bits {
        bits(self.neighbors_mask(v))
    }

    #[inline(always)]
    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].count_ones() as usize
    }

    pub fn degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }

    /// Degree sequence, descending.
    pub fn degree_sequence(&self) -> Vec<usize> {
        let mut d = self.degrees();
        d.sort_unstable_by(|a, b| b.cmp(a));
        d
    }

    pub fn min_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).min()
    }

    pub fn max_degree(&self) -> Option<usize> {
        (0..self.n).map(|v| self.degree(v)).max()
    }

    pub fn edge_count(&self) -> usize {
        let total: u32 = self.adj.iter().map(|m| m.count_ones()).sum();
        debug_assert!(total % 2 == 0);
        (total / 2) as usize
    }

    /// Edges as pairs `(u, v)` with `u < v`, lexicographic.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::with_capacity(self.edge_count());
        for u in 0..self.n {
            for v in bits(self.adj[u] & !low_mask(u + 1)) {
                out.push((u, v));
            }
        }
        out
    }

    /// Relabels vertices: old vertex `v` becomes `perm[v]`.
    pub fn relabeled(&self, perm: &[usize]) -> Graph {
        debug_assert_eq!(perm.len(), self.n);
        let mut g = Graph {
            n: self.n,
            adj: vec![0; self.n],
        };
        for u in 0..self.n {
            for v in self.neighbors(u) {
                if u < v {
                    g.add_edge(perm[u], perm[v]);
                }
            }
        }
        g
    }

    /// Induced subgraph on the vertices of `mask`, compacted to `0..k`
    /// preserving the original vertex order.
    pub fn induced(&self, mask: u64) -> Graph {
        let mask = mask & self.vertex_mask();
        let verts: Vec<usize> = bits(mask).collect();
        let mut g = Graph {
            n: verts.len(),
            adj: vec![0; verts.len()],
        };
        for (i, &u) in verts.iter().enumerate() {
            for (j, &v) in verts.iter().enumerate().skip(i + 1) {
                if self.has_edge(u, v) {
                    g.add_edge(i, j);
                }
            }
        }
        g
    }

    /// Copy with the vertices of `mask` deleted.
    pub fn without_vertices(&self, mask: u64) -> Graph {
        self.induced(self.vertex_mask() & !mask)
    }

    pub fn without_edge(&self, u: usize, v: usize) -> Graph {
        let mut g = self.clone();
        g.remove_edge(u, v);
        g
    }

    pub fn complement(&self) -> Graph {
        let full = self.vertex_mask();
        let adj = (0..self.n)
            .map(|v| full & !self.adj[v] & !bit(v))
            .collect();
        Graph { n: self.n, adj }
    }

    /// Block-diagonal union; vertices of `other` are shifted past `self`.
    pub fn disjoint_union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        if n > MAX_VERTICES {
            return Err(Error::SizeCap {
                what: "disjoint union vertex count",
                limit: MAX_VERTICES,
                got: n,
            });
        }
        let mut adj = Vec::with_capacity(n);
        adj.extend_from_slice(&self.adj);
        adj.extend(other.adj.iter().map(|m| m << self.n));
        Ok(Graph { n, adj })
    }

    /// Disjoint union plus all edges between the two sides.
    pub fn join(&self, other: &Graph) -> Result<Graph> {
        let mut g = self.disjoint_union(other)?;
        let left = low_mask(self.n);
        let right = low_mask(g.n) & !left;
        for v in 0..self.n {
            g.adj[v] |= right;
        }
        for v in self.n..g.n {
            g.adj[v] |= left;
        }
        Ok(g)
    }

    /// Connected component containing `v`, restricted to `within`.
    pub fn component_of(&self, v: usize, within: u64) -> u64 {
        debug_assert!(within & bit(v) != 0);
        let mut comp = bit(v);
        let mut frontier = bit(v);
        while frontier != 0 {
            let mut grow = 0u64;
            for u in bits(frontier) {
                grow |= self.adj[u] & within & !comp;
            }
            comp |= grow;
            frontier = grow;
        }
        comp
    }

    /// Connected components as vertex masks, ordered by least vertex.
    pub fn components(&self) -> Vec<u64> {
        self.components_within(self.vertex_mask())
    }

    /// Components of the subgraph induced on `within`.
    pub fn components_within(&self, within: u64) -> Vec<u64> {
        let mut out = Vec::new();
        let mut left = within & self.vertex_mask();
        while left != 0 {
            let v = left.trailing_zeros() as usize;
            let comp = self.component_of(v, left);
            out.push(comp);
            left &= !comp;
        }
        out
    }

    pub fn is_connected(&self) -> bool {
        self.n <= 1 || self.components().len() == 1
    }

    /// A forest has exactly `n - c` edges for `c` components.
    pub fn is_forest(&self) -> bool {
        self.edge_count() + self.components().len() == self.n
    }

    /// Replaces each vertex of `set` by `m` mutually nonadjacent copies;
    /// every edge becomes a complete bipartite bundle between the copies.
    pub fn partial_blowup(&self, set: u64, m: usize) -> Result<Graph> {
        let set = set & self.vertex_mask();
        let grown = set.count_ones() as usize;
        let n = self.n - grown + grown * m;
        if n > MAX_VERTICES {
            return Err(Error::SizeCap {
                what: "blowup vertex count",
                limit: MAX_VERTICES,
                got: n,
            });
        }
        // slots[v] = consecutive new indices standing for old vertex v
        let mut slots: Vec<Vec<usize>> = Vec::with_capacity(self.n);
        let mut next = 0;
        for v in 0..self.n {
            let width = if set & bit(v) != 0 { m } else { 1 };
            slots.push((next..next + width).collect());
            next += width;
        }
        let mut g = Graph::empty(n)?;
        for (u, v) in self.edges() {
            for &a in &slots[u] {
                for &b in &slots[v] {
                    g.add_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Upper-triangle bits packed into a `u128`; total order on labeled
    /// graphs of a fixed small order. Requires `n <= 16`.
    pub(crate) fn pack_key(&self) -> u128 {
        debug_assert!(self.n <= 16);
        let mut key: u128 = 0;
        let mut k = 0;
        for v in 0..self.n {
            for u in 0..v {
                if self.has_edge(u, v) {
                    key |= 1u128 << k;
                }
                k += 1;
            }
        }
        key
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, E={:?})", self.n, self.edges())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn construction_and_queries() {
        let g = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3)]).unwrap();
        assert_eq!(g.n(), 4);
        assert_eq!(g.edge_count(), 3);
        assert!(g.has_edge(1, 0));
        assert!(!g.has_edge(0, 2));
        assert_eq!(g.degree(1), 2);
        assert_eq!(g.edges(), vec![(0, 1), (1, 2), (2, 3)]);
    }

    #[test]
    fn rejects_bad_edges() {
        assert!(Graph::from_edges(3, &[(0, 0)]).is_err());
        assert!(Graph::from_edges(3, &[(0, 3)]).is_err());
        assert!(matches!(
            Graph::empty(65),
            Err(Error::SizeCap { got: 65, .. })
        ));
    }

    #[test]
    fn degree_sum_is_twice_edges() {
        let g = Graph::from_edges(5, &[(0, 1), (0, 2), (3, 4), (1, 2)]).unwrap();
        let sum: usize = g.degrees().iter().sum();
        assert_eq!(sum, 2 * g.edge_count());
    }

    #[test]
    fn union_and_join() {
        let k3 = Graph::from_edges(3, &[(0, 1), (0, 2), (1, 2)]).unwrap();
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let u = k3.disjoint_union(&k2).unwrap();
        assert_eq!((u.n(), u.edge_count()), (5, 4));
        assert!(!u.has_edge(2, 3));

        // K_2 + K_1 = K_3
        let k1 = Graph::empty(1).unwrap();
        let j = k2.join(&k1).unwrap();
        assert_eq!((j.n(), j.edge_count()), (3, 3));

        // empty ∪ G = G up to the labeling, which is exact here
        let e0 = Graph::empty(0).unwrap();
        assert_eq!(e0.disjoint_union(&k3).unwrap(), k3);
    }

    #[test]
    fn induced_and_components() {
        let g = Graph::from_edges(6, &[(0, 1), (1, 2), (4, 5)]).unwrap();
        let comps = g.components();
        assert_eq!(comps.len(), 3); // {0,1,2}, {3}, {4,5}
        assert_eq!(comps[0], 0b111);
        assert_eq!(comps[1], 0b1000);
        let sub = g.induced(0b110011);
        assert_eq!(sub.n(), 4);
        assert_eq!(sub.edge_count(), 2); // 0-1 and 4-5 survive
        assert!(g.is_forest());
    }

    #[test]
    fn complement_involution() {
        let g = Graph::from_edges(5, &[(0, 1), (2, 4)]).unwrap();
        assert_eq!(g.complement().complement(), g);
        assert_eq!(
            g.complement().edge_count(),
            5 * 4 / 2 - g.edge_count()
        );
    }

    #[test]
    fn blowup_of_one_endpoint_is_a_star() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        let b = k2.partial_blowup(bit(0), 4).unwrap();
        assert_eq!((b.n(), b.edge_count()), (5, 4));
        // last vertex is adjacent to all four copies
        assert_eq!(b.degree(4), 4);
    }

    #[test]
    fn blowup_respects_cap() {
        let k2 = Graph::from_edges(2, &[(0, 1)]).unwrap();
        assert!(k2.partial_blowup(0b11, 40).is_err());
    }
}
