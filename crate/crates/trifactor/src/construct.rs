//! Generators: the two extremal constructions, circulant and near-regular
//! tournaments, seeded random high-semidegree oriented graphs, and exhaustive
//! enumeration of labeled regular tournaments.

use crate::exact::{ceil_mul, Rat};
use crate::graph::OrientedGraph;
use crate::partition::Partition;
use num_traits::Signed;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum ConstructError {
    #[error("barrier construction needs m >= 2 (got {0})")]
    BarrierTooSmall(usize),
    #[error("construction needs m >= 1 (got {0})")]
    MTooSmall(usize),
    #[error("circulant tournament needs odd n >= 3 (got {0})")]
    BadCirculant(usize),
    #[error("need n >= 1 (got {0})")]
    BadOrder(usize),
    #[error("c must be a rational in [0, 1] (got {0})")]
    BadC(Rat),
    #[error("regular tournaments need odd n (got {0})")]
    EvenOrder(usize),
    #[error("enumeration guarded at n <= {limit}; pass the override for n = {n}")]
    EnumerationGuard { n: usize, limit: usize },
    #[error("enumeration supports n <= 63 (got {0})")]
    EnumerationTooLarge(usize),
}

/// Default guard for [`enumerate_regular_tournaments`].
pub const ENUMERATION_GUARD: usize = 9;

/// Parameter record for one generator invocation.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum ConstructionSpec {
    Barrier { m: usize },
    Ks { m: usize },
    Circulant { n: usize },
    NearRegular { s: usize },
    RandomMinSemidegree { n: usize, c: Rat, seed: u64 },
    RegularSample { n: usize, seed: u64 },
}

impl ConstructionSpec {
    /// Runs the generator; constructions with a planted partition return it.
    pub fn generate(&self) -> Result<(OrientedGraph, Option<Partition>), ConstructError> {
        match *self {
            ConstructionSpec::Barrier { m } => {
                barrier_tournament(m).map(|(g, p)| (g, Some(p)))
            }
            ConstructionSpec::Ks { m } => ks_construction(m).map(|(g, p)| (g, Some(p))),
            ConstructionSpec::Circulant { n } => circulant_tournament(n).map(|g| (g, None)),
            ConstructionSpec::NearRegular { s } => near_regular_tournament(s).map(|g| (g, None)),
            ConstructionSpec::RandomMinSemidegree { n, c, seed } => {
                random_min_semidegree(n, c, seed).map(|g| (g, None))
            }
            ConstructionSpec::RegularSample { n, seed } => {
                regular_tournament_sample(n, seed).map(|g| (g, None))
            }
        }
    }
}

/// Rotational tournament on odd `n`: `i -> i+1, ..., i+(n-1)/2 (mod n)`.
pub fn circulant_tournament(n: usize) -> Result<OrientedGraph, ConstructError> {
    if n < 3 || n.is_multiple_of(2) {
        return Err(ConstructError::BadCirculant(n));
    }
    let mut edges = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in 1..=(n - 1) / 2 {
            edges.push((i, (i + j) % n));
        }
    }
    Ok(OrientedGraph::from_edges(n, &edges).expect("circulant edges are valid"))
}

/// Tournament on `s` vertices with minimum semidegree `⌊(s-1)/2⌋`.
///
/// Odd `s` gives the circulant; even `s` orients `i -> i+1, ..., i+s/2-1`
/// and splits the diameter ties so `i -> i+s/2` exactly when `i < s/2`.
pub fn near_regular_tournament(s: usize) -> Result<OrientedGraph, ConstructError> {
    if s == 0 {
        return Err(ConstructError::BadOrder(s));
    }
    if s == 1 {
        return OrientedGraph::from_edges(1, &[]).map_err(|_| ConstructError::BadOrder(s));
    }
    if s % 2 == 1 {
        return circulant_tournament(s);
    }
    let mut edges = Vec::with_capacity(s * (s - 1) / 2);
    for i in 0..s {
        for j in 1..s / 2 {
            edges.push((i, (i + j) % s));
        }
        if i < s / 2 {
            edges.push((i, i + s / 2));
        }
    }
    Ok(OrientedGraph::from_edges(s, &edges).expect("near-regular edges are valid"))
}

fn shifted_edges(g: &OrientedGraph, offset: usize, out: &mut Vec<(usize, usize)>) {
    for (u, v) in g.edges() {
        out.push((u + offset, v + offset));
    }
}

/// Tournament on `n = 3m` vertices with parts of sizes `m-1`, `m`, `m+1`:
/// near-regular inside each part, all cross edges directed
/// `V1 -> V2 -> V3 -> V1`. The planted partition is a divisibility barrier,
/// so the output has no cyclic triangle factor.
pub fn barrier_tournament(m: usize) -> Result<(OrientedGraph, Partition), ConstructError> {
    if m < 2 {
        return Err(ConstructError::BarrierTooSmall(m));
    }
    let sizes = [m - 1, m, m + 1];
    let n = 3 * m;
    let mut offsets = [0usize; 3];
    offsets[1] = sizes[0];
    offsets[2] = sizes[0] + sizes[1];
    let mut edges = Vec::new();
    for i in 0..3 {
        let inner = near_regular_tournament(sizes[i])?;
        shifted_edges(&inner, offsets[i], &mut edges);
    }
    for (i, j) in [(0usize, 1usize), (1, 2), (2, 0)] {
        for u in 0..sizes[i] {
            for v in 0..sizes[j] {
                edges.push((offsets[i] + u, offsets[j] + v));
            }
        }
    }
    let g = OrientedGraph::from_edges(n, &edges).expect("barrier edges are valid");
    let parts = (0..3)
        .map(|i| (offsets[i]..offsets[i] + sizes[i]).collect())
        .collect::<Vec<Vec<usize>>>();
    let p = Partition::from_index_lists(n, &parts).expect("barrier parts are valid");
    Ok((g, p))
}

/// Oriented graph on `n = 9(m+1)` vertices with parts of sizes `3m+1`,
/// `3m+4`, `3m+4`: complete cross edges `V1 -> V2 -> V3 -> V1`, and inside
/// each part a cyclic order where every vertex beats exactly the
/// `(|V_i|-1)/3` vertices after it. Minimum semidegree `4n/9 - 2`; every
/// cyclic triangle meets `V1`.
pub fn ks_construction(m: usize) -> Result<(OrientedGraph, Partition), ConstructError> {
    if m < 1 {
        return Err(ConstructError::MTooSmall(m));
    }
    let sizes = [3 * m + 1, 3 * m + 4, 3 * m + 4];
    let n = 9 * (m + 1);
    let mut offsets = [0usize; 3];
    offsets[1] = sizes[0];
    offsets[2] = sizes[0] + sizes[1];
    let mut edges = Vec::new();
    for i in 0..3 {
        let s = sizes[i];
        let reach = (s - 1) / 3;
        for u in 0..s {
            for j in 1..=reach {
                edges.push((offsets[i] + u, offsets[i] + (u + j) % s));
            }
        }
    }
    for (i, j) in [(0usize, 1usize), (1, 2), (2, 0)] {
        for u in 0..sizes[i] {
            for v in 0..sizes[j] {
                edges.push((offsets[i] + u, offsets[j] + v));
            }
        }
    }
    let g = OrientedGraph::from_edges(n, &edges).expect("ks edges are valid");
    let parts = (0..3)
        .map(|i| (offsets[i]..offsets[i] + sizes[i]).collect())
        .collect::<Vec<Vec<usize>>>();
    let p = Partition::from_index_lists(n, &parts).expect("ks parts are valid");
    Ok((g, p))
}

/// Mutable adjacency used by the random walks.
struct Walk {
    n: usize,
    out: Vec<Vec<bool>>,
    out_deg: Vec<usize>,
    in_deg: Vec<usize>,
}

impl Walk {
    fn from_graph(g: &OrientedGraph) -> Self {
        let n = g.n();
        let mut out = vec![vec![false; n]; n];
        for (u, v) in g.edges() {
            out[u][v] = true;
        }
        Walk {
            n,
            out,
            out_deg: (0..n).map(|v| g.out_degree(v)).collect(),
            in_deg: (0..n).map(|v| g.in_degree(v)).collect(),
        }
    }

    fn reverse(&mut self, u: usize, v: usize) {
        self.out[u][v] = false;
        self.out[v][u] = true;
        self.out_deg[u] -= 1;
        self.in_deg[v] -= 1;
        self.out_deg[v] += 1;
        self.in_deg[u] += 1;
    }

    fn delete(&mut self, u: usize, v: usize) {
        self.out[u][v] = false;
        self.out_deg[u] -= 1;
        self.in_deg[v] -= 1;
    }

    fn flip_triangle(&mut self, a: usize, b: usize, c: usize) {
        // a->b->c->a becomes a<-b<-c<-a; all degrees are preserved
        self.reverse(a, b);
        self.reverse(b, c);
        self.reverse(c, a);
    }

    fn into_graph(self) -> OrientedGraph {
        let mut edges = Vec::new();
        for u in 0..self.n {
            for v in 0..self.n {
                if self.out[u][v] {
                    edges.push((u, v));
                }
            }
        }
        OrientedGraph::from_edges(self.n, &edges).expect("walk preserves validity")
    }
}

/// Seeded oriented graph with minimum semidegree at least
/// `min(⌈(1/2 - c)·n⌉, ⌊(n-1)/2⌋)`.
///
/// Starts from a near-regular tournament and applies a deterministic walk of
/// edge reversals, edge deletions, and cyclic-triangle flips, rejecting any
/// move that would push a degree below the floor. The ceiling is clamped to
/// `⌊(n-1)/2⌋` because no oriented graph exceeds that semidegree; at the
/// clamp (for example `c = 0`) deletions and single reversals are always
/// rejected and only triangle flips act, so the output is a regular
/// tournament when `n` is odd.
pub fn random_min_semidegree(n: usize, c: Rat, seed: u64) -> Result<OrientedGraph, ConstructError> {
    if n == 0 {
        return Err(ConstructError::BadOrder(n));
    }
    if c.is_negative() || c > Rat::from_integer(1) {
        return Err(ConstructError::BadC(c));
    }
    let half_minus_c = Rat::new(1, 2) - c;
    let raw = if half_minus_c.is_negative() {
        0
    } else {
        ceil_mul(half_minus_c, n as u64) as usize
    };
    let target = raw.min((n - 1) / 2);
    let start = near_regular_tournament(n)?;
    let mut w = Walk::from_graph(&start);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let proposals = 30 * n * n;
    for _ in 0..proposals {
        match rng.random_range(0..5u32) {
            0 => {
                // deletion
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                if u != v && w.out[u][v] && w.out_deg[u] > target && w.in_deg[v] > target {
                    w.delete(u, v);
                }
            }
            1 => {
                // cyclic-triangle flip, degree-preserving
                let a = rng.random_range(0..n);
                let b = rng.random_range(0..n);
                let c3 = rng.random_range(0..n);
                if a != b && b != c3 && a != c3 && w.out[a][b] && w.out[b][c3] && w.out[c3][a] {
                    w.flip_triangle(a, b, c3);
                }
            }
            _ => {
                // reversal
                let u = rng.random_range(0..n);
                let v = rng.random_range(0..n);
                if u != v && w.out[u][v] && w.out_deg[u] > target && w.in_deg[v] > target {
                    w.reverse(u, v);
                }
            }
        }
    }
    let g = w.into_graph();
    assert!(g.semidegree() >= target, "walk violated the degree floor");
    Ok(g)
}

/// Seeded random regular tournament on odd `n`: a cyclic-triangle-flip walk
/// from the circulant tournament. Flips preserve every degree, and they
/// connect the labeled regular tournaments on a fixed vertex set.
pub fn regular_tournament_sample(n: usize, seed: u64) -> Result<OrientedGraph, ConstructError> {
    if n.is_multiple_of(2) {
        return Err(ConstructError::EvenOrder(n));
    }
    if n == 1 {
        return OrientedGraph::from_edges(1, &[]).map_err(|_| ConstructError::BadOrder(n));
    }
    let start = circulant_tournament(n)?;
    let mut w = Walk::from_graph(&start);
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    for _ in 0..30 * n * n {
        let a = rng.random_range(0..n);
        let b = rng.random_range(0..n);
        let c = rng.random_range(0..n);
        if a != b && b != c && a != c && w.out[a][b] && w.out[b][c] && w.out[c][a] {
            w.flip_triangle(a, b, c);
        }
    }
    let g = w.into_graph();
    debug_assert_eq!(g.semidegree(), (n - 1) / 2);
    Ok(g)
}

/// Visits every labeled regular tournament on odd `n` exactly once and
/// returns the count. Guarded at [`ENUMERATION_GUARD`]; use
/// [`enumerate_regular_tournaments_unguarded`] to go beyond it.
pub fn enumerate_regular_tournaments<F: FnMut(&OrientedGraph)>(
    n: usize,
    visitor: F,
) -> Result<u64, ConstructError> {
    if n > ENUMERATION_GUARD {
        return Err(ConstructError::EnumerationGuard {
            n,
            limit: ENUMERATION_GUARD,
        });
    }
    enumerate_regular_tournaments_unguarded(n, visitor)
}

pub fn enumerate_regular_tournaments_unguarded<F: FnMut(&OrientedGraph)>(
    n: usize,
    visitor: F,
) -> Result<u64, ConstructError> {
    enumerate_regular_tournaments_prefixed(n, 0, 0, visitor)
}

/// Enumeration restricted to a fixed orientation prefix: pair `t` (row-major
/// order `(0,1), (0,2), ..., (n-2,n-1)`) is oriented low-to-high exactly when
/// bit `t` of `prefix` is set, for `t < prefix_len`. Summing the counts over
/// all `2^prefix_len` prefixes recovers the full enumeration; disjoint
/// prefixes can run on different workers.
pub fn enumerate_regular_tournaments_prefixed<F: FnMut(&OrientedGraph)>(
    n: usize,
    prefix_len: usize,
    prefix: u64,
    mut visitor: F,
) -> Result<u64, ConstructError> {
    if n == 0 {
        return Err(ConstructError::BadOrder(n));
    }
    if n.is_multiple_of(2) {
        return Err(ConstructError::EvenOrder(n));
    }
    if n > 63 {
        return Err(ConstructError::EnumerationTooLarge(n));
    }
    let mut pairs = Vec::with_capacity(n * (n - 1) / 2);
    for i in 0..n {
        for j in (i + 1)..n {
            pairs.push((i, j));
        }
    }
    assert!(prefix_len <= pairs.len(), "prefix longer than pair list");
    let target = (n - 1) / 2;
    let mut st = EnumState {
        n,
        target,
        pairs,
        out_deg: vec![0; n],
        undecided: vec![n - 1; n],
        rows: vec![0u64; n],
        count: 0,
    };
    st.run(0, prefix_len, prefix, &mut visitor);
    Ok(st.count)
}

struct EnumState {
    n: usize,
    target: usize,
    pairs: Vec<(usize, usize)>,
    out_deg: Vec<usize>,
    undecided: Vec<usize>,
    rows: Vec<u64>,
    count: u64,
}

impl EnumState {
    fn feasible(&self, v: usize) -> bool {
        self.out_deg[v] <= self.target && self.out_deg[v] + self.undecided[v] >= self.target
    }

    fn run<F: FnMut(&OrientedGraph)>(
        &mut self,
        t: usize,
        prefix_len: usize,
        prefix: u64,
        visitor: &mut F,
    ) {
        if t == self.pairs.len() {
            let g = OrientedGraph::from_out_masks(self.n, &self.rows);
            self.count += 1;
            visitor(&g);
            return;
        }
        let (i, j) = self.pairs[t];
        let dirs: &[bool] = if t < prefix_len {
            if prefix & (1 << t) != 0 {
                &[true]
            } else {
                &[false]
            }
        } else {
            &[true, false]
        };
        for &forward in dirs {
            let (w, l) = if forward { (i, j) } else { (j, i) };
            self.out_deg[w] += 1;
            self.undecided[i] -= 1;
            self.undecided[j] -= 1;
            self.rows[w] |= 1u64 << l;
            if self.feasible(i) && self.feasible(j) {
                self.run(t + 1, prefix_len, prefix, visitor);
            }
            self.rows[w] &= !(1u64 << l);
            self.out_deg[w] -= 1;
            self.undecided[i] += 1;
            self.undecided[j] += 1;
        }
    }
}
