//! Oriented graphs and their degree / co-degree / triangle-count primitives.
//!
//! An oriented graph has no loops and at most one directed edge per vertex
//! pair. Adjacency is stored as per-vertex out- and in-bitmasks; every count
//! below is a handful of word operations per vertex pair.

use crate::bitset::VertexSet;
use crate::exact::Rat;

/// Which neighborhood a co-degree query selects: `Plus` is the
/// out-neighborhood, `Minus` the in-neighborhood.
#[derive(Copy, Clone, Debug, PartialEq, Eq)]
pub enum Sign {
    Plus,
    Minus,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("vertex {v} out of range 0..{n}")]
    VertexOutOfRange { v: usize, n: usize },
    #[error("loop at vertex {v}")]
    SelfLoop { v: usize },
    #[error("duplicate edge {u} -> {v}")]
    DuplicateEdge { u: usize, v: usize },
    #[error("antiparallel pair between {u} and {v}")]
    AntiparallelPair { u: usize, v: usize },
}

/// Immutable oriented graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct OrientedGraph {
    n: usize,
    out: Vec<VertexSet>,
    inn: Vec<VertexSet>,
    out_deg: Vec<u32>,
    in_deg: Vec<u32>,
    edge_count: usize,
}

impl OrientedGraph {
    /// Builds a graph from an edge list. Rejects the empty vertex set, loops,
    /// duplicate edges, and antiparallel pairs.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Self, GraphError> {
        if n == 0 {
            return Err(GraphError::EmptyGraph);
        }
        let mut out = vec![VertexSet::empty(n); n];
        let mut inn = vec![VertexSet::empty(n); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::VertexOutOfRange { v: u, n });
            }
            if v >= n {
                return Err(GraphError::VertexOutOfRange { v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop { v });
            }
            if out[u].contains(v) {
                return Err(GraphError::DuplicateEdge { u, v });
            }
            if out[v].contains(u) {
                return Err(GraphError::AntiparallelPair { u, v });
            }
            out[u].insert(v);
            inn[v].insert(u);
        }
        Ok(Self::from_rows(n, out, inn, edges.len()))
    }

    fn from_rows(
        n: usize,
        out: Vec<VertexSet>,
        inn: Vec<VertexSet>,
        edge_count: usize,
    ) -> Self {
        let out_deg = out.iter().map(|s| s.len() as u32).collect();
        let in_deg = inn.iter().map(|s| s.len() as u32).collect();
        OrientedGraph {
            n,
            out,
            inn,
            out_deg,
            in_deg,
            edge_count,
        }
    }

    /// Fast constructor for enumeration leaves: callers guarantee the rows are
    /// loop-free and antisymmetric (checked in debug builds).
    pub(crate) fn from_out_masks(n: usize, rows: &[u64]) -> Self {
        debug_assert!((1..=64).contains(&n) && rows.len() == n);
        let mut out = Vec::with_capacity(n);
        let mut in_masks = vec![0u64; n];
        let mut edge_count = 0;
        for (u, &row) in rows.iter().enumerate() {
            debug_assert_eq!(row & (1 << u), 0, "loop at {u}");
            edge_count += row.count_ones() as usize;
            let mut w = row;
            while w != 0 {
                let v = w.trailing_zeros() as usize;
                w &= w - 1;
                debug_assert_eq!(rows[v] & (1 << u), 0, "antiparallel {u},{v}");
                in_masks[v] |= 1 << u;
            }
            out.push(VertexSet::from_vertices(
                n,
                (0..n).filter(|&v| row & (1 << v) != 0),
            ));
        }
        let inn = in_masks
            .iter()
            .map(|&m| VertexSet::from_vertices(n, (0..n).filter(|&v| m & (1 << v) != 0)))
            .collect();
        Self::from_rows(n, out, inn, edge_count)
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edge_count
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        self.out[u].contains(v)
    }

    pub fn out_neighbors(&self, v: usize) -> &VertexSet {
        &self.out[v]
    }

    pub fn in_neighbors(&self, v: usize) -> &VertexSet {
        &self.inn[v]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_deg[v] as usize
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_deg[v] as usize
    }

    pub fn out_degree_in(&self, v: usize, a: &VertexSet) -> usize {
        self.out[v].intersection_len(a)
    }

    pub fn in_degree_in(&self, v: usize, a: &VertexSet) -> usize {
        self.inn[v].intersection_len(a)
    }

    /// All edges, ascending by `(u, v)`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.out[u].iter().map(move |v| (u, v)))
    }

    pub fn full_set(&self) -> VertexSet {
        VertexSet::full(self.n)
    }

    pub fn is_tournament(&self) -> bool {
        self.edge_count == self.n * (self.n - 1) / 2
    }

    /// Minimum over all vertices of `min(out-degree, in-degree)`.
    pub fn semidegree(&self) -> usize {
        (0..self.n)
            .map(|v| self.out_deg[v].min(self.in_deg[v]))
            .min()
            .expect("graphs are nonempty") as usize
    }

    /// The smallest `c` with `semidegree >= (1/2 - c)·n`, clamped at 0.
    pub fn effective_c(&self) -> Rat {
        let d = self.semidegree() as i64;
        let n = self.n as i64;
        let c = Rat::new(n - 2 * d, 2 * n);
        c.max(Rat::from_integer(0))
    }

    /// `|N^sigma(u) ∩ N^tau(v) ∩ a|`. Panics if `u == v`.
    pub fn pair_codegree(
        &self,
        u: usize,
        v: usize,
        sigma: Sign,
        tau: Sign,
        a: &VertexSet,
    ) -> usize {
        assert_ne!(u, v, "pair co-degree needs distinct vertices");
        let ru = match sigma {
            Sign::Plus => &self.out[u],
            Sign::Minus => &self.inn[u],
        };
        let rv = match tau {
            Sign::Plus => &self.out[v],
            Sign::Minus => &self.inn[v],
        };
        ru.words()
            .iter()
            .zip(rv.words())
            .zip(a.words())
            .map(|((x, y), z)| (x & y & z).count_ones() as usize)
            .sum()
    }

    /// `e⁺(a, b)`: edges `u -> v` with `u ∈ a`, `v ∈ b`; the sets may overlap.
    pub fn directed_edge_count(&self, a: &VertexSet, b: &VertexSet) -> u64 {
        a.iter()
            .map(|u| self.out[u].intersection_len(b) as u64)
            .sum()
    }

    /// Enumerates every cyclic triangle once as `(a, b, w)` with
    /// `a < b < w`; the callback also receives the cyclic successor of `a`
    /// within the triple.
    fn for_each_cyclic_triangle<F: FnMut(usize, usize, usize, usize)>(&self, mut f: F) {
        let n = self.n;
        for a in 0..n {
            for b in (a + 1)..n {
                // Orientation of {a,b} fixes which third vertices close a cycle.
                let (x, y, succ_of_a) = if self.out[a].contains(b) {
                    (&self.out[b], &self.inn[a], b) // w: b->w, w->a
                } else if self.out[b].contains(a) {
                    (&self.out[a], &self.inn[b], usize::MAX) // w: a->w, w->b
                } else {
                    continue;
                };
                for_bits_above(x.words(), y.words(), b, |w| {
                    let succ = if succ_of_a == usize::MAX { w } else { succ_of_a };
                    f(a, b, w, succ);
                });
            }
        }
    }

    /// `cyc(u1, u2, u3)`: cyclic triangles `{v1, v2, v3}` admitting an
    /// assignment with `v_i ∈ u_i` for all three slots. Each triangle counts
    /// at most once, so `cyc(A, A, A)` counts every cyclic triangle inside
    /// `A` exactly once.
    pub fn count_cyclic(&self, u1: &VertexSet, u2: &VertexSet, u3: &VertexSet) -> u64 {
        let same = u1 == u2 && u2 == u3;
        let mut total = 0u64;
        if same {
            for a in u1.iter() {
                for b in u1.iter().filter(|&b| b > a) {
                    let (x, y) = if self.out[a].contains(b) {
                        (&self.out[b], &self.inn[a])
                    } else if self.out[b].contains(a) {
                        (&self.out[a], &self.inn[b])
                    } else {
                        continue;
                    };
                    total += count_bits_above3(x.words(), y.words(), u1.words(), b);
                }
            }
        } else {
            self.for_each_cyclic_triangle(|a, b, w, _| {
                if slots_match(a, b, w, u1, u2, u3) {
                    total += 1;
                }
            });
        }
        total
    }

    /// Cyclic triangles fully inside `a`.
    pub fn cyc(&self, a: &VertexSet) -> u64 {
        self.count_cyclic(a, a, a)
    }

    /// `trn(a)`: transitive triangles (all three edges present, no directed
    /// cycle) fully inside `a`.
    pub fn count_transitive(&self, a: &VertexSet) -> u64 {
        let mut total = 0u64;
        for u in a.iter() {
            for v in a.iter().filter(|&v| v > u) {
                let (cx, cy) = if self.out[u].contains(v) {
                    (&self.out[v], &self.inn[u])
                } else if self.out[v].contains(u) {
                    (&self.out[u], &self.inn[v])
                } else {
                    continue;
                };
                // Common neighbors of u,v inside a (above v), minus the ones
                // that close a cycle, are the transitive thirds.
                let ou = self.out[u].words();
                let iu = self.inn[u].words();
                let ov = self.out[v].words();
                let iv = self.inn[v].words();
                let first = v / 64;
                for i in first..a.words().len() {
                    let mut adj = (ou[i] | iu[i]) & (ov[i] | iv[i]) & a.words()[i];
                    let mut cyc = cx.words()[i] & cy.words()[i] & a.words()[i];
                    if i == first {
                        let mask = mask_above(v % 64);
                        adj &= mask;
                        cyc &= mask;
                    }
                    total += (adj.count_ones() - (cyc & adj).count_ones()) as u64;
                }
            }
        }
        total
    }

    /// `Σ_{v ∈ a} C(d⁺(v, a), 2)`: ordered-out-pair count. Equals
    /// `count_transitive(a)` exactly when `a` induces a tournament; in
    /// general it also counts non-adjacent out-pairs, so it dominates it.
    pub fn out_cherries(&self, a: &VertexSet) -> u64 {
        a.iter()
            .map(|v| {
                let d = self.out[v].intersection_len(a) as u64;
                d * d.saturating_sub(1) / 2
            })
            .sum()
    }
}

fn mask_above(bit: usize) -> u64 {
    // bits strictly above `bit` within one word
    if bit == 63 {
        0
    } else {
        !((1u64 << (bit + 1)) - 1)
    }
}

fn for_bits_above<F: FnMut(usize)>(x: &[u64], y: &[u64], above: usize, mut f: F) {
    let first = above / 64;
    for i in first..x.len() {
        let mut w = x[i] & y[i];
        if i == first {
            w &= mask_above(above % 64);
        }
        while w != 0 {
            let b = w.trailing_zeros() as usize;
            w &= w - 1;
            f(i * 64 + b);
        }
    }
}

/// Visits every vertex of `x ∩ y` strictly above `above`.
pub(crate) fn for_common_above<F: FnMut(usize)>(
    x: &VertexSet,
    y: &VertexSet,
    above: usize,
    f: F,
) {
    for_bits_above(x.words(), y.words(), above, f);
}

fn count_bits_above3(x: &[u64], y: &[u64], z: &[u64], above: usize) -> u64 {
    let first = above / 64;
    let mut total = 0u64;
    for i in first..x.len() {
        let mut w = x[i] & y[i] & z[i];
        if i == first {
            w &= mask_above(above % 64);
        }
        total += w.count_ones() as u64;
    }
    total
}

/// Can `{a, b, w}` be assigned bijectively to the three slots?
fn slots_match(
    a: usize,
    b: usize,
    w: usize,
    u1: &VertexSet,
    u2: &VertexSet,
    u3: &VertexSet,
) -> bool {
    let vs = [a, b, w];
    let m = |v: usize, s: &VertexSet| s.contains(v);
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    PERMS
        .iter()
        .any(|p| m(vs[p[0]], u1) && m(vs[p[1]], u2) && m(vs[p[2]], u3))
}

impl std::fmt::Debug for OrientedGraph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "OrientedGraph(n={}, m={})", self.n, self.edge_count)
    }
}
