//! The 3-uniform hypergraph whose edges are the cyclic triangles of an
//! oriented graph. A cyclic triangle factor of the graph is exactly a
//! perfect matching here.

use crate::bitset::VertexSet;
use crate::graph::OrientedGraph;

/// Cyclic triangles of a source graph, stored as ordered triples
/// `[a, b, c]` with `a` the least vertex and `a -> b -> c -> a`, sorted by
/// their underlying vertex sets.
#[derive(Clone, Debug)]
pub struct TriangleHypergraph {
    n: usize,
    edges: Vec<[u32; 3]>,
    incidence: Vec<Vec<u32>>,
}

fn sorted_key(e: &[u32; 3]) -> [u32; 3] {
    // the minimum vertex is stored first, so only the tail may need a swap
    [e[0], e[1].min(e[2]), e[1].max(e[2])]
}

impl TriangleHypergraph {
    /// Collects every cyclic triangle by scanning vertex pairs and
    /// intersecting the appropriate out/in neighborhoods.
    pub fn build(g: &OrientedGraph) -> Self {
        let n = g.n();
        let mut edges = Vec::new();
        for a in 0..n {
            for b in (a + 1)..n {
                if g.has_edge(a, b) {
                    // w closes a -> b -> w -> a
                    crate::graph::for_common_above(
                        g.out_neighbors(b),
                        g.in_neighbors(a),
                        b,
                        |w| edges.push([a as u32, b as u32, w as u32]),
                    );
                } else if g.has_edge(b, a) {
                    // w closes a -> w -> b -> a
                    crate::graph::for_common_above(
                        g.out_neighbors(a),
                        g.in_neighbors(b),
                        b,
                        |w| edges.push([a as u32, w as u32, b as u32]),
                    );
                }
            }
        }
        Self::from_oriented_edges(n, edges)
    }

    /// `edges` must already be cyclic triples with the least vertex first;
    /// they are sorted by vertex set and indexed per vertex.
    pub(crate) fn from_oriented_edges(n: usize, mut edges: Vec<[u32; 3]>) -> Self {
        edges.sort_by_key(sorted_key);
        edges.dedup_by_key(|e| sorted_key(e));
        let mut incidence = vec![Vec::new(); n];
        for (i, e) in edges.iter().enumerate() {
            for &v in e {
                incidence[v as usize].push(i as u32);
            }
        }
        TriangleHypergraph { n, edges, incidence }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    /// Ordered triple `(a, b, c)` with `a -> b -> c -> a` in the source graph.
    pub fn edge(&self, i: usize) -> [u32; 3] {
        self.edges[i]
    }

    pub fn edges(&self) -> &[[u32; 3]] {
        &self.edges
    }

    /// Indices of the hyperedges through `v`, ascending.
    pub fn incident(&self, v: usize) -> &[u32] {
        &self.incidence[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.incidence[v].len()
    }

    /// `δ₁(H)`: minimum number of hyperedges through a vertex.
    pub fn min_hyperdegree(&self) -> usize {
        (0..self.n).map(|v| self.degree(v)).min().unwrap_or(0)
    }

    /// Membership by vertex set; `t` must be sorted ascending.
    pub fn contains_sorted(&self, t: [u32; 3]) -> bool {
        self.edges.binary_search_by_key(&t, sorted_key).is_ok()
    }

    /// Sub-hypergraph induced on `s`, with vertices relabeled to
    /// `0..s.len()` in increasing original order. Returns the relabeling.
    pub fn induced(&self, s: &VertexSet) -> (TriangleHypergraph, Vec<usize>) {
        let verts: Vec<usize> = s.iter().collect();
        let mut to_new = vec![u32::MAX; self.n];
        for (new, &old) in verts.iter().enumerate() {
            to_new[old] = new as u32;
        }
        let mut edges = Vec::new();
        for e in &self.edges {
            if e.iter().all(|&v| to_new[v as usize] != u32::MAX) {
                let mapped = [
                    to_new[e[0] as usize],
                    to_new[e[1] as usize],
                    to_new[e[2] as usize],
                ];
                edges.push(rotate_min_first(mapped));
            }
        }
        (
            TriangleHypergraph::from_oriented_edges(verts.len(), edges),
            verts,
        )
    }
}

fn rotate_min_first(e: [u32; 3]) -> [u32; 3] {
    // cyclic rotation only, to preserve the orientation
    if e[0] <= e[1] && e[0] <= e[2] {
        e
    } else if e[1] <= e[2] {
        [e[1], e[2], e[0]]
    } else {
        [e[2], e[0], e[1]]
    }
}

/// Builds `H(G)`.
pub fn build_hypergraph(g: &OrientedGraph) -> TriangleHypergraph {
    TriangleHypergraph::build(g)
}
