//! Brute-force oracles, independent of the implementation paths they check:
//! plain triple loops over `has_edge`, exhaustive coloring scans, and
//! lowest-vertex matching enumeration.

#![allow(dead_code)]

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use trifactor::bitset::VertexSet;
use trifactor::graph::OrientedGraph;

/// Is `{a, b, c}` a cyclic triangle? Pure `has_edge` logic.
pub fn is_cyclic_triple(g: &OrientedGraph, a: usize, b: usize, c: usize) -> bool {
    (g.has_edge(a, b) && g.has_edge(b, c) && g.has_edge(c, a))
        || (g.has_edge(a, c) && g.has_edge(c, b) && g.has_edge(b, a))
}

/// Is `{a, b, c}` a transitive triangle (all three edges, no cycle)?
pub fn is_transitive_triple(g: &OrientedGraph, a: usize, b: usize, c: usize) -> bool {
    let adjacent = |x: usize, y: usize| g.has_edge(x, y) || g.has_edge(y, x);
    adjacent(a, b) && adjacent(b, c) && adjacent(a, c) && !is_cyclic_triple(g, a, b, c)
}

fn slot_match(vs: [usize; 3], u1: &VertexSet, u2: &VertexSet, u3: &VertexSet) -> bool {
    const PERMS: [[usize; 3]; 6] = [
        [0, 1, 2],
        [0, 2, 1],
        [1, 0, 2],
        [1, 2, 0],
        [2, 0, 1],
        [2, 1, 0],
    ];
    PERMS.iter().any(|p| {
        u1.contains(vs[p[0]]) && u2.contains(vs[p[1]]) && u3.contains(vs[p[2]])
    })
}

/// Triple-enumeration count of cyclic triangles assignable to the slots.
pub fn naive_count_cyclic(
    g: &OrientedGraph,
    u1: &VertexSet,
    u2: &VertexSet,
    u3: &VertexSet,
) -> u64 {
    let n = g.n();
    let mut count = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if is_cyclic_triple(g, a, b, c) && slot_match([a, b, c], u1, u2, u3) {
                    count += 1;
                }
            }
        }
    }
    count
}

/// Triple-enumeration count of transitive triangles inside `a`.
pub fn naive_count_transitive(g: &OrientedGraph, set: &VertexSet) -> u64 {
    let n = g.n();
    let mut count = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if set.contains(a)
                    && set.contains(b)
                    && set.contains(c)
                    && is_transitive_triple(g, a, b, c)
                {
                    count += 1;
                }
            }
        }
    }
    count
}

/// All cyclic triangles as sorted triples, found by triple enumeration.
pub fn naive_triangles(g: &OrientedGraph) -> Vec<[usize; 3]> {
    let n = g.n();
    let mut out = Vec::new();
    for a in 0..n {
        for b in (a + 1)..n {
            for c in (b + 1)..n {
                if is_cyclic_triple(g, a, b, c) {
                    out.push([a, b, c]);
                }
            }
        }
    }
    out
}

/// Does `g` have a perfect matching by cyclic triangles? Lowest-vertex
/// recursion over the naive triangle list.
pub fn brute_has_factor(g: &OrientedGraph) -> bool {
    let n = g.n();
    if !n.is_multiple_of(3) {
        return false;
    }
    let triangles = naive_triangles(g);
    let mut covered = vec![false; n];
    brute_match(&triangles, &mut covered, n)
}

fn brute_match(triangles: &[[usize; 3]], covered: &mut [bool], n: usize) -> bool {
    let Some(v) = (0..n).find(|&v| !covered[v]) else {
        return true;
    };
    for t in triangles {
        if t.contains(&v) && t.iter().all(|&x| !covered[x]) {
            for &x in t {
                covered[x] = true;
            }
            if brute_match(triangles, covered, n) {
                return true;
            }
            for &x in t {
                covered[x] = false;
            }
        }
    }
    false
}

/// Size of a maximum tiling, by exhaustive branch over the naive triangle
/// list (include/exclude on the lowest in-play vertex).
pub fn brute_max_tiling(g: &OrientedGraph) -> usize {
    let triangles = naive_triangles(g);
    let mut state = vec![0u8; g.n()]; // 0 free, 1 covered, 2 excluded
    brute_max(&triangles, &mut state)
}

fn brute_max(triangles: &[[usize; 3]], state: &mut [u8]) -> usize {
    let Some(v) = state.iter().position(|&s| s == 0) else {
        return 0;
    };
    let mut best;
    // exclude v
    state[v] = 2;
    best = brute_max(triangles, state);
    state[v] = 0;
    // or cover it by any triangle
    for t in triangles {
        if t.contains(&v) && t.iter().all(|&x| state[x] == 0) {
            for &x in t {
                state[x] = 1;
            }
            best = best.max(1 + brute_max(triangles, state));
            for &x in t {
                state[x] = 0;
            }
        }
    }
    best
}

/// Does a divisibility barrier exist? Exhaustive scan over all 3-colorings
/// plus the trivial case.
pub fn brute_has_barrier(g: &OrientedGraph) -> bool {
    let n = g.n();
    if !n.is_multiple_of(3) {
        return true;
    }
    let mut assign = vec![0u8; n];
    loop {
        if barrier_coloring_ok(g, &assign) {
            return true;
        }
        let mut i = 0;
        loop {
            if i == n {
                return false;
            }
            assign[i] += 1;
            if assign[i] < 3 {
                break;
            }
            assign[i] = 0;
            i += 1;
        }
    }
}

fn barrier_coloring_ok(g: &OrientedGraph, assign: &[u8]) -> bool {
    let mut sizes = [0usize; 3];
    for &a in assign {
        sizes[a as usize] += 1;
    }
    if sizes.contains(&0) {
        return false;
    }
    if sizes.iter().all(|&s| s % 3 == sizes[0] % 3) {
        return false;
    }
    for (u, v) in g.edges() {
        // allowed: same class or the next one cyclically
        let d = (3 + assign[v] as i8 - assign[u] as i8) % 3;
        if d == 2 {
            return false;
        }
    }
    true
}

/// Linking 2-sets for `(x, y)` by enumerating every pair outside `{x, y}`.
pub fn brute_linking_pairs(g: &OrientedGraph, x: usize, y: usize) -> u64 {
    let n = g.n();
    let mut count = 0;
    for a in 0..n {
        for b in (a + 1)..n {
            if a == x || a == y || b == x || b == y {
                continue;
            }
            if is_cyclic_triple(g, x, a, b) && is_cyclic_triple(g, y, a, b) {
                count += 1;
            }
        }
    }
    count
}

/// Exact count of linking `(3ℓ-1)`-sets by enumerating every subset;
/// feasible for small `n` only.
pub fn brute_linking_sets(g: &OrientedGraph, x: usize, y: usize, ell: usize) -> u64 {
    let n = g.n();
    let k = 3 * ell - 1;
    let others: Vec<usize> = (0..n).filter(|&v| v != x && v != y).collect();
    let mut count = 0;
    let mut subset = Vec::new();
    enumerate_subsets(&others, k, 0, &mut subset, &mut |s: &[usize]| {
        let mut with_x = s.to_vec();
        with_x.push(x);
        let mut with_y = s.to_vec();
        with_y.push(y);
        if brute_sub_factor(g, &with_x) && brute_sub_factor(g, &with_y) {
            count += 1;
        }
    });
    count
}

fn enumerate_subsets<F: FnMut(&[usize])>(
    pool: &[usize],
    k: usize,
    from: usize,
    cur: &mut Vec<usize>,
    f: &mut F,
) {
    if cur.len() == k {
        f(cur);
        return;
    }
    for i in from..pool.len() {
        cur.push(pool[i]);
        enumerate_subsets(pool, k, i + 1, cur, f);
        cur.pop();
    }
}

/// Perfect matching on the triangles inside an explicit vertex list.
fn brute_sub_factor(g: &OrientedGraph, verts: &[usize]) -> bool {
    if !verts.len().is_multiple_of(3) {
        return false;
    }
    let mut triangles = Vec::new();
    for (i, &a) in verts.iter().enumerate() {
        for (j, &b) in verts.iter().enumerate().skip(i + 1) {
            for &c in verts.iter().skip(j + 1) {
                if is_cyclic_triple(g, a, b, c) {
                    triangles.push([a, b, c]);
                }
            }
        }
    }
    brute_match_list(&triangles, verts, &mut std::collections::HashSet::new())
}

fn brute_match_list(
    triangles: &[[usize; 3]],
    verts: &[usize],
    covered: &mut std::collections::HashSet<usize>,
) -> bool {
    let Some(&v) = verts.iter().find(|v| !covered.contains(v)) else {
        return true;
    };
    for t in triangles {
        if t.contains(&v) && t.iter().all(|x| !covered.contains(x)) {
            for &x in t {
                covered.insert(x);
            }
            if brute_match_list(triangles, verts, covered) {
                return true;
            }
            for &x in t {
                covered.remove(&x);
            }
        }
    }
    false
}

/// Visits all `2^C(n,2)` labeled tournaments on `n` vertices.
pub fn for_each_tournament<F: FnMut(&OrientedGraph)>(n: usize, f: F) {
    let pairs = n * (n - 1) / 2;
    for_each_tournament_range(n, 0, 1u64 << pairs, f);
}

/// Tournaments whose orientation code lies in `from..to`; bit `t` of the
/// code orients pair `t` (row-major) low-to-high.
pub fn for_each_tournament_range<F: FnMut(&OrientedGraph)>(
    n: usize,
    from: u64,
    to: u64,
    mut f: F,
) {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|i| ((i + 1)..n).map(move |j| (i, j)))
        .collect();
    let mut edges = Vec::with_capacity(pairs.len());
    for code in from..to {
        edges.clear();
        for (t, &(i, j)) in pairs.iter().enumerate() {
            if code >> t & 1 == 1 {
                edges.push((i, j));
            } else {
                edges.push((j, i));
            }
        }
        let g = OrientedGraph::from_edges(n, &edges).expect("tournament is valid");
        f(&g);
    }
}

pub fn is_regular_tournament(g: &OrientedGraph) -> bool {
    let n = g.n();
    n % 2 == 1
        && g.is_tournament()
        && (0..n).all(|v| g.out_degree(v) == (n - 1) / 2)
}

/// Seeded random oriented graph: each unordered pair is forward, backward,
/// or absent with equal probability.
pub fn random_oriented_graph(n: usize, seed: u64) -> OrientedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            match rng.random_range(0..3u32) {
                0 => edges.push((i, j)),
                1 => edges.push((j, i)),
                _ => {}
            }
        }
    }
    OrientedGraph::from_edges(n, &edges).expect("random edges are valid")
}

/// Seeded random tournament: every unordered pair gets one direction.
pub fn random_tournament(n: usize, seed: u64) -> OrientedGraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges = Vec::new();
    for i in 0..n {
        for j in (i + 1)..n {
            if rng.random_range(0..2u32) == 0 {
                edges.push((i, j));
            } else {
                edges.push((j, i));
            }
        }
    }
    OrientedGraph::from_edges(n, &edges).expect("random edges are valid")
}

/// Bounded-coefficient membership search: is `v` an integer combination of
/// `gens` with every coefficient in `[-bound, bound]`?
pub fn brute_lattice_member(gens: &[Vec<i64>], v: &[i64], bound: i64) -> bool {
    fn rec(gens: &[Vec<i64>], acc: &mut [i64], v: &[i64], i: usize, bound: i64) -> bool {
        if i == gens.len() {
            return acc == v;
        }
        for c in -bound..=bound {
            for (a, g) in acc.iter_mut().zip(&gens[i]) {
                *a += c * g;
            }
            if rec(gens, acc, v, i + 1, bound) {
                return true;
            }
            for (a, g) in acc.iter_mut().zip(&gens[i]) {
                *a -= c * g;
            }
        }
        false
    }
    let mut acc = vec![0i64; v.len()];
    rec(gens, &mut acc, v, 0, bound)
}
