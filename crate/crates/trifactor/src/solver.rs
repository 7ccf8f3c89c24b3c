//! Exact cyclic-triangle factor search, maximum tilings, certificate
//! verification, and the factor-or-barrier decision pipeline.
//!
//! The factor search is exact-cover backtracking over the triangle
//! hypergraph: branch on the uncovered vertex with the fewest remaining
//! triangles, ties to the lowest index. "Proven none" always means the
//! search space was exhausted; timeouts are reported as a distinct outcome.

use std::collections::HashSet;
use std::time::{Duration, Instant};

use crate::barrier::{self, BarrierCertificate, BarrierSearch};
use crate::graph::OrientedGraph;
use crate::hypergraph::TriangleHypergraph;

#[derive(Clone, Debug, Default, PartialEq, Eq)]
pub struct SearchStats {
    pub nodes: u64,
    pub millis: u64,
}

/// Vertex-disjoint ordered cyclic triangles `(a, b, c)` with `a -> b -> c -> a`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Tiling {
    pub triangles: Vec<[u32; 3]>,
}

impl Tiling {
    pub fn len(&self) -> usize {
        self.triangles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.triangles.is_empty()
    }

    pub fn covered(&self) -> usize {
        3 * self.triangles.len()
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum FactorOutcome {
    Factor(Tiling),
    ProvenNone,
    TimedOut,
}

#[derive(Clone, Debug)]
pub struct FactorResult {
    pub outcome: FactorOutcome,
    pub stats: SearchStats,
}

#[derive(Clone, Debug)]
pub struct MaxTilingResult {
    pub tiling: Tiling,
    /// False when the bound-and-branch search hit the timeout before
    /// exhausting the space; the tiling is then only a best-so-far.
    pub optimal: bool,
    pub stats: SearchStats,
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum TilingDefect {
    #[error("vertex {0} out of range")]
    OutOfRange(u32),
    #[error("triple ({0}, {1}, {2}) is not a cyclic triangle")]
    NotCyclic(u32, u32, u32),
    #[error("vertex {0} covered twice")]
    Overlap(u32),
    #[error("covers {covered} of {n} vertices")]
    Incomplete { covered: usize, n: usize },
}

/// Checks disjointness and cyclic orientation of every triple, and full
/// coverage when `require_factor` is set. Rejection is a value, not an error.
pub fn verify_tiling(
    g: &OrientedGraph,
    t: &Tiling,
    require_factor: bool,
) -> Result<(), TilingDefect> {
    let n = g.n();
    let mut seen = vec![false; n];
    for &[a, b, c] in &t.triangles {
        for v in [a, b, c] {
            if v as usize >= n {
                return Err(TilingDefect::OutOfRange(v));
            }
        }
        let (au, bu, cu) = (a as usize, b as usize, c as usize);
        if au == bu || bu == cu || au == cu {
            return Err(TilingDefect::NotCyclic(a, b, c));
        }
        if !(g.has_edge(au, bu) && g.has_edge(bu, cu) && g.has_edge(cu, au)) {
            return Err(TilingDefect::NotCyclic(a, b, c));
        }
        for v in [a, b, c] {
            if seen[v as usize] {
                return Err(TilingDefect::Overlap(v));
            }
            seen[v as usize] = true;
        }
    }
    if require_factor {
        let covered = seen.iter().filter(|&&s| s).count();
        if covered != n {
            return Err(TilingDefect::Incomplete { covered, n });
        }
    }
    Ok(())
}

const DEADLINE_CHECK_MASK: u64 = 0xFFF;
const MEMO_CAP: usize = 1 << 22;
const MEMO_MIN_N: usize = 12;

struct CoverSearch<'h> {
    h: &'h TriangleHypergraph,
    covered: Vec<u64>,
    uncovered: usize,
    chosen: Vec<u32>,
    nodes: u64,
    deadline: Option<Instant>,
    // masks whose subtree was exhausted without a factor; only for n <= 64
    memo: Option<HashSet<u64>>,
}

enum Flow {
    Found,
    Exhausted,
    TimedOut,
}

impl<'h> CoverSearch<'h> {
    fn new(h: &'h TriangleHypergraph, deadline: Option<Instant>) -> Self {
        let n = h.n();
        CoverSearch {
            h,
            covered: vec![0u64; n.div_ceil(64)],
            uncovered: n,
            chosen: Vec::with_capacity(n / 3 + 1),
            nodes: 0,
            deadline,
            memo: (MEMO_MIN_N..=64).contains(&n).then(HashSet::new),
        }
    }

    #[inline]
    fn is_covered(&self, v: u32) -> bool {
        self.covered[(v / 64) as usize] & (1u64 << (v % 64)) != 0
    }

    #[inline]
    fn alive(&self, e: u32) -> bool {
        let [a, b, c] = self.h.edge(e as usize);
        !self.is_covered(a) && !self.is_covered(b) && !self.is_covered(c)
    }

    fn cover(&mut self, e: u32) {
        for v in self.h.edge(e as usize) {
            self.covered[(v / 64) as usize] |= 1u64 << (v % 64);
        }
        self.uncovered -= 3;
    }

    fn uncover(&mut self, e: u32) {
        for v in self.h.edge(e as usize) {
            self.covered[(v / 64) as usize] &= !(1u64 << (v % 64));
        }
        self.uncovered += 3;
    }

    fn out_of_time(&self) -> bool {
        self.nodes & DEADLINE_CHECK_MASK == 0
            && self.deadline.is_some_and(|d| Instant::now() >= d)
    }

    fn remember_failure(&mut self) {
        if let Some(memo) = &mut self.memo {
            if memo.len() < MEMO_CAP {
                memo.insert(self.covered[0]);
            }
        }
    }

    fn run(&mut self) -> Flow {
        self.nodes += 1;
        if self.out_of_time() {
            return Flow::TimedOut;
        }
        if self.uncovered == 0 {
            return Flow::Found;
        }
        if let Some(memo) = &self.memo {
            if memo.contains(&self.covered[0]) {
                return Flow::Exhausted;
            }
        }
        // fail-first: vertex with the fewest remaining triangles, lowest index wins ties
        let mut branch = usize::MAX;
        let mut best = usize::MAX;
        for v in 0..self.h.n() {
            if self.is_covered(v as u32) {
                continue;
            }
            let cnt = self
                .h
                .incident(v)
                .iter()
                .filter(|&&e| self.alive(e))
                .count();
            if cnt == 0 {
                self.remember_failure();
                return Flow::Exhausted;
            }
            if cnt < best {
                best = cnt;
                branch = v;
            }
        }
        let candidates: Vec<u32> = self
            .h
            .incident(branch)
            .iter()
            .copied()
            .filter(|&e| self.alive(e))
            .collect();
        for e in candidates {
            self.cover(e);
            self.chosen.push(e);
            match self.run() {
                Flow::Found => return Flow::Found,
                Flow::TimedOut => return Flow::TimedOut,
                Flow::Exhausted => {}
            }
            self.chosen.pop();
            self.uncover(e);
        }
        self.remember_failure();
        Flow::Exhausted
    }
}

/// Searches for a perfect matching of `h`. Exhausted search is reported as
/// `ProvenNone`; hitting the timeout is a distinct indeterminate outcome.
pub fn find_factor(h: &TriangleHypergraph, timeout: Option<Duration>) -> FactorResult {
    let start = Instant::now();
    if !h.n().is_multiple_of(3) {
        // no triple cover can hit every vertex
        return FactorResult {
            outcome: FactorOutcome::ProvenNone,
            stats: SearchStats {
                nodes: 0,
                millis: start.elapsed().as_millis() as u64,
            },
        };
    }
    let mut search = CoverSearch::new(h, timeout.map(|t| start + t));
    let outcome = match search.run() {
        Flow::Found => {
            let mut triangles: Vec<[u32; 3]> = search
                .chosen
                .iter()
                .map(|&e| h.edge(e as usize))
                .collect();
            triangles.sort_by_key(|t| t[0]);
            FactorOutcome::Factor(Tiling { triangles })
        }
        Flow::Exhausted => FactorOutcome::ProvenNone,
        Flow::TimedOut => FactorOutcome::TimedOut,
    };
    FactorResult {
        outcome,
        stats: SearchStats {
            nodes: search.nodes,
            millis: start.elapsed().as_millis() as u64,
        },
    }
}

struct MaxSearch<'h> {
    h: &'h TriangleHypergraph,
    covered: Vec<u64>,
    excluded: Vec<u64>,
    chosen: Vec<u32>,
    best: Vec<u32>,
    nodes: u64,
    deadline: Option<Instant>,
    timed_out: bool,
}

impl<'h> MaxSearch<'h> {
    fn bit(words: &[u64], v: u32) -> bool {
        words[(v / 64) as usize] & (1u64 << (v % 64)) != 0
    }

    fn set(words: &mut [u64], v: u32) {
        words[(v / 64) as usize] |= 1u64 << (v % 64);
    }

    fn clear(words: &mut [u64], v: u32) {
        words[(v / 64) as usize] &= !(1u64 << (v % 64));
    }

    fn alive(&self, e: u32) -> bool {
        self.h.edge(e as usize).iter().all(|&v| {
            !Self::bit(&self.covered, v) && !Self::bit(&self.excluded, v)
        })
    }

    fn run(&mut self) {
        self.nodes += 1;
        if self.timed_out
            || (self.nodes & DEADLINE_CHECK_MASK == 0
                && self.deadline.is_some_and(|d| Instant::now() >= d))
        {
            self.timed_out = true;
            return;
        }
        if self.chosen.len() > self.best.len() {
            self.best = self.chosen.clone();
        }
        // branch vertex: fewest alive triangles among vertices still in play
        let mut branch = usize::MAX;
        let mut best_cnt = usize::MAX;
        let mut coverable = 0usize;
        for v in 0..self.h.n() {
            let vb = v as u32;
            if Self::bit(&self.covered, vb) || Self::bit(&self.excluded, vb) {
                continue;
            }
            let cnt = self
                .h
                .incident(v)
                .iter()
                .filter(|&&e| self.alive(e))
                .count();
            if cnt == 0 {
                continue; // can never be covered; no branch needed
            }
            coverable += 1;
            if cnt < best_cnt {
                best_cnt = cnt;
                branch = v;
            }
        }
        if branch == usize::MAX {
            return;
        }
        if self.chosen.len() + coverable / 3 <= self.best.len() {
            return; // even covering every candidate cannot beat the incumbent
        }
        let candidates: Vec<u32> = self
            .h
            .incident(branch)
            .iter()
            .copied()
            .filter(|&e| self.alive(e))
            .collect();
        for e in candidates {
            for v in self.h.edge(e as usize) {
                Self::set(&mut self.covered, v);
            }
            self.chosen.push(e);
            self.run();
            self.chosen.pop();
            for v in self.h.edge(e as usize) {
                Self::clear(&mut self.covered, v);
            }
            if self.timed_out {
                return;
            }
        }
        // leave the branch vertex uncovered
        Self::set(&mut self.excluded, branch as u32);
        self.run();
        Self::clear(&mut self.excluded, branch as u32);
    }
}

/// Maximum-cardinality tiling by branch and bound with the `⌊coverable/3⌋`
/// upper bound. On timeout the best tiling found so far is returned with
/// `optimal = false`.
pub fn max_tiling(h: &TriangleHypergraph, timeout: Option<Duration>) -> MaxTilingResult {
    let start = Instant::now();
    let words = h.n().div_ceil(64);
    let mut search = MaxSearch {
        h,
        covered: vec![0; words],
        excluded: vec![0; words],
        chosen: Vec::new(),
        best: greedy_tiling(h),
        nodes: 0,
        deadline: timeout.map(|t| start + t),
        timed_out: false,
    };
    search.run();
    let mut triangles: Vec<[u32; 3]> = search
        .best
        .iter()
        .map(|&e| h.edge(e as usize))
        .collect();
    triangles.sort_by_key(|t| t[0]);
    MaxTilingResult {
        tiling: Tiling { triangles },
        optimal: !search.timed_out,
        stats: SearchStats {
            nodes: search.nodes,
            millis: start.elapsed().as_millis() as u64,
        },
    }
}

/// First-fit disjoint triangles, for the initial branch-and-bound incumbent.
fn greedy_tiling(h: &TriangleHypergraph) -> Vec<u32> {
    let mut covered = vec![false; h.n()];
    let mut picked = Vec::new();
    for e in 0..h.edge_count() {
        let t = h.edge(e);
        if t.iter().all(|&v| !covered[v as usize]) {
            for v in t {
                covered[v as usize] = true;
            }
            picked.push(e as u32);
        }
    }
    picked
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum DecisionOutcome {
    Factor(Tiling),
    Barrier(BarrierCertificate),
    /// Both searches were exhausted: no factor and no divisibility barrier.
    /// Possible at desk scale, where the degree hypothesis may not buy the
    /// dichotomy.
    Neither,
    /// At least one search timed out before either certificate was found.
    Unknown,
}

#[derive(Clone, Debug)]
pub struct Decision {
    pub outcome: DecisionOutcome,
    pub stats: SearchStats,
}

/// Factor-or-barrier decision. `n` not divisible by 3 yields the trivial
/// barrier immediately; otherwise the barrier search runs first (a verified
/// barrier already proves there is no factor), then the factor search on the
/// remaining budget.
pub fn decide(g: &OrientedGraph, timeout: Option<Duration>) -> Decision {
    let start = Instant::now();
    let mut nodes = 0u64;
    if !g.n().is_multiple_of(3) {
        return Decision {
            outcome: DecisionOutcome::Barrier(BarrierCertificate::Trivial),
            stats: SearchStats {
                nodes,
                millis: start.elapsed().as_millis() as u64,
            },
        };
    }
    let barrier_deadline = timeout.map(|t| start + t / 2);
    let deadline = timeout.map(|t| start + t);
    let barrier_result = barrier::find_divisibility_barrier_deadline(g, barrier_deadline);
    nodes += barrier_result.nodes;
    let barrier_timed_out = match barrier_result.outcome {
        BarrierSearch::Found(cert) => {
            return Decision {
                outcome: DecisionOutcome::Barrier(cert),
                stats: SearchStats {
                    nodes,
                    millis: start.elapsed().as_millis() as u64,
                },
            };
        }
        BarrierSearch::NoneProven => false,
        BarrierSearch::TimedOut => true,
    };
    let h = TriangleHypergraph::build(g);
    let remaining = deadline.map(|d| d.saturating_duration_since(Instant::now()));
    let fr = find_factor(&h, remaining);
    nodes += fr.stats.nodes;
    let outcome = match fr.outcome {
        FactorOutcome::Factor(t) => DecisionOutcome::Factor(t),
        FactorOutcome::ProvenNone if !barrier_timed_out => DecisionOutcome::Neither,
        _ => DecisionOutcome::Unknown,
    };
    Decision {
        outcome,
        stats: SearchStats {
            nodes,
            millis: start.elapsed().as_millis() as u64,
        },
    }
}
