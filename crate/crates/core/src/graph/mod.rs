//! Finite simple graphs on `[n]`, their stable sets, class predicates, and
//! enumeration up to isomorphism.

mod classify;
mod enumerate;
mod parse;
mod stable;

pub use classify::{classify, classify_with_cap, GraphClassFlags, DEFAULT_CLASSIFY_CAP};
pub use enumerate::{canonical_code, enumerate_graphs, is_isomorphic, MAX_ENUMERATION_ORDER};
pub use parse::{parse_graph, parse_graph_json, parse_graph_text};
pub use stable::{stable_sets, StableSetFamily};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};

/// Graphs are stored as adjacency bitmasks, which caps the vertex count.
pub const MAX_VERTICES: usize = 64;

/// A finite simple graph on the vertex set `{1, ..., n}`.
///
/// Vertices are 1-based at the API surface; row `i` of `adj` describes vertex `i + 1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub struct Graph {
    n: usize,
    adj: Vec<u64>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GraphJson {
    pub n: usize,
    pub edges: Vec<[usize; 2]>,
}

/// Graph transformations.
#[derive(Clone, Debug)]
pub enum Transform<'a> {
    Complement,
    Union(&'a Graph),
    /// Keep these (1-based) vertices, relabelled in increasing order.
    Induced(&'a [usize]),
}

impl Graph {
    pub fn empty(n: usize) -> Result<Self> {
        if n == 0 || n > MAX_VERTICES {
            return Err(Error::InvalidArgument(format!(
                "vertex count must be in 1..={MAX_VERTICES}, got {n}"
            )));
        }
        Ok(Graph { n, adj: vec![0; n] })
    }

    /// Build from 1-based edges. Rejects loops and out-of-range endpoints;
    /// repeated pairs collapse to one edge.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for &(i, j) in edges {
            for v in [i, j] {
                if v == 0 || v > n {
                    return Err(Error::VertexOutOfRange { vertex: v, n });
                }
            }
            if i == j {
                return Err(Error::InvalidArgument(format!("loop at vertex {i}")));
            }
            g.add_edge(i - 1, j - 1);
        }
        Ok(g)
    }

    pub fn cycle(n: usize) -> Result<Self> {
        if n < 3 {
            return Err(Error::InvalidArgument(format!("cycle needs n >= 3, got {n}")));
        }
        let edges: Vec<(usize, usize)> = (1..=n).map(|i| (i, i % n + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn path(n: usize) -> Result<Self> {
        let edges: Vec<(usize, usize)> = (1..n).map(|i| (i, i + 1)).collect();
        Graph::from_edges(n, &edges)
    }

    pub fn complete(n: usize) -> Result<Self> {
        let mut g = Graph::empty(n)?;
        for i in 0..n {
            for j in i + 1..n {
                g.add_edge(i, j);
            }
        }
        Ok(g)
    }

    /// The complement of the odd cycle `C_{2k+1}`.
    pub fn cbar(k: usize) -> Result<Self> {
        if k < 3 {
            return Err(Error::InvalidArgument(format!(
                "cbar(k) requires k >= 3, got {k}"
            )));
        }
        Ok(Graph::cycle(2 * k + 1)?.complement())
    }

    /// The graph on `[2k+7]` whose complement is `C_7` on `1..7` together with
    /// the disjoint edges `{8,9}, ..., {2k+6, 2k+7}`.
    pub fn family(k: usize) -> Result<Self> {
        if k < 1 {
            return Err(Error::InvalidArgument(format!(
                "family(k) requires k >= 1, got {k}"
            )));
        }
        let mut co = Graph::cycle(7)?;
        for _ in 0..k {
            co = co.union(&Graph::complete(2)?)?;
        }
        Ok(co.complement())
    }

    /// One of the five six-vertex graphs `G1..G5` (hexagon 1-2-3-4-5-6-1 plus chords).
    pub fn fixture(index: usize) -> Result<Self> {
        let chords: &[(usize, usize)] = match index {
            1 => &[(1, 5), (2, 6)],
            2 => &[(2, 4), (2, 6), (4, 6)],
            3 => &[(1, 3), (2, 5), (4, 6)],
            4 => &[(1, 3), (1, 4), (2, 6)],
            5 => &[(1, 4), (2, 4), (3, 5), (4, 6)],
            _ => {
                return Err(Error::InvalidArgument(format!(
                    "fixture index must be 1..=5, got {index}"
                )))
            }
        };
        let mut edges: Vec<(usize, usize)> = (1..=6).map(|i| (i, i % 6 + 1)).collect();
        edges.extend_from_slice(chords);
        Graph::from_edges(6, &edges)
    }

    fn add_edge(&mut self, i: usize, j: usize) {
        self.adj[i] |= 1 << j;
        self.adj[j] |= 1 << i;
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    /// Neighbourhood bitmask of 0-based vertex `i`.
    #[inline]
    pub fn neighbours(&self, i: usize) -> u64 {
        self.adj[i]
    }

    /// 0-based adjacency test.
    #[inline]
    pub fn adjacent(&self, i: usize, j: usize) -> bool {
        self.adj[i] >> j & 1 == 1
    }

    /// 1-based edge test.
    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        i != j && (1..=self.n).contains(&i) && (1..=self.n).contains(&j) && self.adjacent(i - 1, j - 1)
    }

    /// 1-based edges with `i < j`, lexicographically sorted.
    pub fn edges(&self) -> Vec<(usize, usize)> {
        let mut out = Vec::new();
        for i in 0..self.n {
            for j in i + 1..self.n {
                if self.adjacent(i, j) {
                    out.push((i + 1, j + 1));
                }
            }
        }
        out
    }

    pub fn edge_count(&self) -> usize {
        self.adj.iter().map(|m| m.count_ones() as usize).sum::<usize>() / 2
    }

    pub fn full_mask(&self) -> u64 {
        if self.n == 64 {
            u64::MAX
        } else {
            (1u64 << self.n) - 1
        }
    }

    pub fn complement(&self) -> Graph {
        let full = self.full_mask();
        Graph {
            n: self.n,
            adj: (0..self.n).map(|i| !self.adj[i] & full & !(1 << i)).collect(),
        }
    }

    /// Disjoint union; `other`'s vertices become `n+1..n+m`.
    pub fn union(&self, other: &Graph) -> Result<Graph> {
        let n = self.n + other.n;
        let mut g = Graph::empty(n)?;
        for (i, j) in self.edges() {
            g.add_edge(i - 1, j - 1);
        }
        for (i, j) in other.edges() {
            g.add_edge(self.n + i - 1, self.n + j - 1);
        }
        Ok(g)
    }

    /// Induced subgraph on the given 1-based vertices, relabelled to `1..` in increasing order.
    pub fn induced(&self, vertices: &[usize]) -> Result<Graph> {
        let mut vs = vertices.to_vec();
        vs.sort_unstable();
        vs.dedup();
        if vs.len() != vertices.len() {
            return Err(Error::InvalidArgument("repeated vertex in subset".into()));
        }
        for &v in &vs {
            if v == 0 || v > self.n {
                return Err(Error::VertexOutOfRange { vertex: v, n: self.n });
            }
        }
        let mut g = Graph::empty(vs.len())?;
        for (a, &u) in vs.iter().enumerate() {
            for (b, &w) in vs.iter().enumerate().skip(a + 1) {
                if self.adjacent(u - 1, w - 1) {
                    g.add_edge(a, b);
                }
            }
        }
        Ok(g)
    }

    /// Induced subgraph on a 0-based vertex bitmask.
    pub fn induced_mask(&self, mask: u64) -> Graph {
        let vs: Vec<usize> = (0..self.n).filter(|&i| mask >> i & 1 == 1).map(|i| i + 1).collect();
        self.induced(&vs).expect("mask within range")
    }

    pub fn transform(&self, op: Transform<'_>) -> Result<Graph> {
        match op {
            Transform::Complement => Ok(self.complement()),
            Transform::Union(h) => self.union(h),
            Transform::Induced(vs) => self.induced(vs),
        }
    }

    pub fn to_json(&self) -> GraphJson {
        GraphJson {
            n: self.n,
            edges: self.edges().into_iter().map(|(i, j)| [i, j]).collect(),
        }
    }

    /// Permute vertices: vertex `i` (0-based) becomes `perm[i]`.
    pub fn relabel(&self, perm: &[usize]) -> Graph {
        let mut g = Graph {
            n: self.n,
            adj: vec![0; self.n],
        };
        for (i, j) in self.edges() {
            g.add_edge(perm[i - 1], perm[j - 1]);
        }
        g
    }
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        self.to_json().serialize(s)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let j = GraphJson::deserialize(d)?;
        let edges: Vec<(usize, usize)> = j.edges.iter().map(|e| (e[0], e[1])).collect();
        Graph::from_edges(j.n, &edges).map_err(serde::de::Error::custom)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn complement_of_c7_has_fourteen_edges() {
        let g = Graph::cycle(7).unwrap().complement();
        assert_eq!(g.n(), 7);
        assert_eq!(g.edge_count(), 14);
        for (i, j) in g.edges() {
            let d = (j - i).min(7 - (j - i));
            assert!(d >= 2);
        }
    }

    #[test]
    fn complement_is_an_involution() {
        for g in [Graph::fixture(1).unwrap(), Graph::cycle(5).unwrap(), Graph::complete(4).unwrap()] {
            assert_eq!(g.complement().complement(), g);
        }
    }

    #[test]
    fn g3_complement_is_hexagon() {
        let co = Graph::fixture(3).unwrap().complement();
        assert!(is_isomorphic(&co, &Graph::cycle(6).unwrap()));
    }

    #[test]
    fn induced_cycle_is_path() {
        let p = Graph::cycle(5).unwrap().induced(&[1, 2, 3, 4]).unwrap();
        assert_eq!(p, Graph::path(4).unwrap());
        assert!(Graph::cycle(5).unwrap().induced(&[1, 9]).is_err());
        assert!(Graph::cycle(5).unwrap().induced(&[1, 1]).is_err());
    }

    #[test]
    fn union_relabels_second_graph() {
        let g = Graph::path(2).unwrap().union(&Graph::path(3).unwrap()).unwrap();
        assert_eq!(g.edges(), vec![(1, 2), (3, 4), (4, 5)]);
    }

    #[test]
    fn g1_edges_match_figure() {
        let g = Graph::fixture(1).unwrap();
        assert_eq!(
            g.edges(),
            vec![(1, 2), (1, 5), (1, 6), (2, 3), (2, 6), (3, 4), (4, 5), (5, 6)]
        );
    }

    #[test]
    fn family_complement_shape() {
        let g = Graph::family(1).unwrap();
        assert_eq!(g.n(), 9);
        let co = g.complement();
        let mut expect: Vec<(usize, usize)> = (1..=6).map(|i| (i, i + 1)).collect();
        expect.push((1, 7));
        expect.push((8, 9));
        expect.sort();
        assert_eq!(co.edges(), expect);
    }

    #[test]
    fn invalid_construction() {
        assert!(Graph::from_edges(3, &[(1, 1)]).is_err());
        assert!(matches!(
            Graph::from_edges(3, &[(1, 4)]),
            Err(Error::VertexOutOfRange { vertex: 4, n: 3 })
        ));
        assert!(Graph::cbar(2).is_err());
        assert!(Graph::family(0).is_err());
    }

    #[test]
    fn json_round_trip() {
        let g = Graph::fixture(4).unwrap();
        let s = serde_json::to_string(&g).unwrap();
        let h: Graph = serde_json::from_str(&s).unwrap();
        assert_eq!(g, h);
    }
}
