//! Divisibility barriers: verification and exhaustive search.
//!
//! A barrier is either the trivial partition with `n` not divisible by 3, or
//! a 3-partition whose cross edges only run `V1 -> V2 -> V3 -> V1` and whose
//! part sizes are not all congruent mod 3. The search is a mod-3 difference
//! CSP: color vertices with Z_3 so that every edge `u -> v` has
//! `color(v) - color(u)` in `{0, 1}`.

use std::time::Instant;

use crate::graph::OrientedGraph;
use crate::partition::Partition;

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BarrierCertificate {
    Trivial,
    ThreePart(Partition),
}

impl BarrierCertificate {
    pub fn to_partition(&self, n: usize) -> Partition {
        match self {
            BarrierCertificate::Trivial => Partition::trivial(n),
            BarrierCertificate::ThreePart(p) => p.clone(),
        }
    }
}

#[derive(Debug, thiserror::Error, PartialEq, Eq)]
pub enum BarrierReject {
    #[error("trivial partition but {0} is divisible by 3")]
    TrivialDivisible(usize),
    #[error("partition has {0} parts; barriers have 1 or 3")]
    WrongPartCount(usize),
    #[error("{count} edges directed from part {from} to part {to}")]
    BackwardEdges {
        from: usize,
        to: usize,
        count: u64,
    },
    #[error("part sizes {0:?} are all congruent mod 3")]
    SizesCongruent(Vec<usize>),
}

/// Accepts exactly the partitions that witness a divisibility barrier.
pub fn verify_divisibility_barrier(
    g: &OrientedGraph,
    p: &Partition,
) -> Result<(), BarrierReject> {
    match p.len() {
        1 => {
            if g.n().is_multiple_of(3) {
                Err(BarrierReject::TrivialDivisible(g.n()))
            } else {
                Ok(())
            }
        }
        3 => {
            // forbidden directions: V2 -> V1, V3 -> V2, V1 -> V3
            for (from, to) in [(1usize, 0usize), (2, 1), (0, 2)] {
                let count = g.directed_edge_count(p.part(from), p.part(to));
                if count > 0 {
                    return Err(BarrierReject::BackwardEdges { from, to, count });
                }
            }
            if p.sizes_all_congruent_mod3() {
                return Err(BarrierReject::SizesCongruent(p.sizes()));
            }
            Ok(())
        }
        k => Err(BarrierReject::WrongPartCount(k)),
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum BarrierSearch {
    Found(BarrierCertificate),
    NoneProven,
    TimedOut,
}

#[derive(Clone, Debug)]
pub struct BarrierSearchResult {
    pub outcome: BarrierSearch,
    pub nodes: u64,
}

/// Exhaustive barrier search. `n` not divisible by 3 gives the trivial
/// certificate; otherwise the coloring CSP is searched to completion.
pub fn find_divisibility_barrier(g: &OrientedGraph) -> Option<BarrierCertificate> {
    match find_divisibility_barrier_deadline(g, None).outcome {
        BarrierSearch::Found(c) => Some(c),
        BarrierSearch::NoneProven => None,
        BarrierSearch::TimedOut => unreachable!("no deadline was set"),
    }
}

pub(crate) fn find_divisibility_barrier_deadline(
    g: &OrientedGraph,
    deadline: Option<Instant>,
) -> BarrierSearchResult {
    if !g.n().is_multiple_of(3) {
        return BarrierSearchResult {
            outcome: BarrierSearch::Found(BarrierCertificate::Trivial),
            nodes: 0,
        };
    }
    let mut csp = Csp::new(g, deadline);
    // the constraint family is invariant under rotating all colors, so
    // vertex 0's color can be pinned
    let outcome = match csp.assign_and_search(0, 0) {
        CspFlow::Found(p) => BarrierSearch::Found(BarrierCertificate::ThreePart(p)),
        CspFlow::Exhausted => BarrierSearch::NoneProven,
        CspFlow::TimedOut => BarrierSearch::TimedOut,
    };
    BarrierSearchResult {
        outcome,
        nodes: csp.nodes,
    }
}

const ALL_COLORS: u8 = 0b111;

enum CspFlow {
    Found(Partition),
    Exhausted,
    TimedOut,
}

struct Csp<'g> {
    g: &'g OrientedGraph,
    dom: Vec<u8>,
    color: Vec<u8>,
    assigned: Vec<bool>,
    assigned_nbrs: Vec<u32>,
    // undo log: (vertex, previous domain)
    trail: Vec<(usize, u8)>,
    // stack of assigned vertices, for neighbor-count undo
    assigned_stack: Vec<usize>,
    nodes: u64,
    deadline: Option<Instant>,
}

impl<'g> Csp<'g> {
    fn new(g: &'g OrientedGraph, deadline: Option<Instant>) -> Self {
        let n = g.n();
        Csp {
            g,
            dom: vec![ALL_COLORS; n],
            color: vec![3; n],
            assigned: vec![false; n],
            assigned_nbrs: vec![0; n],
            trail: Vec::new(),
            assigned_stack: Vec::new(),
            nodes: 0,
            deadline,
        }
    }

    fn narrow(&mut self, v: usize, allowed: u8, queue: &mut Vec<usize>) -> bool {
        let old = self.dom[v];
        let new = old & allowed;
        if new == old {
            return true;
        }
        self.trail.push((v, old));
        self.dom[v] = new;
        if new == 0 {
            return false;
        }
        if new.count_ones() == 1 && !self.assigned[v] {
            queue.push(v);
        }
        true
    }

    /// Colors `v`, propagating forced colors along the difference
    /// constraints. Returns false on a wipe-out.
    fn assign(&mut self, v: usize, c: u8) -> bool {
        let mut queue = vec![];
        if !self.narrow(v, 1 << c, &mut queue) {
            return false;
        }
        queue.push(v);
        while let Some(u) = queue.pop() {
            if self.assigned[u] {
                continue;
            }
            let cu = self.dom[u].trailing_zeros() as u8;
            self.assigned[u] = true;
            self.color[u] = cu;
            self.assigned_stack.push(u);
            // counters first, in full: undo_to assumes every stacked vertex
            // contributed one increment per neighbor
            for w in self.g.out_neighbors(u).iter() {
                self.assigned_nbrs[w] += 1;
            }
            for w in self.g.in_neighbors(u).iter() {
                self.assigned_nbrs[w] += 1;
            }
            for w in self.g.out_neighbors(u).iter() {
                // edge u -> w: color(w) in {cu, cu+1}
                let allowed = (1 << cu) | (1 << ((cu + 1) % 3));
                if !self.narrow(w, allowed, &mut queue) {
                    return false;
                }
            }
            for w in self.g.in_neighbors(u).iter() {
                // edge w -> u: color(w) in {cu, cu-1}
                let allowed = (1 << cu) | (1 << ((cu + 2) % 3));
                if !self.narrow(w, allowed, &mut queue) {
                    return false;
                }
            }
        }
        true
    }

    fn undo_to(&mut self, trail_mark: usize, assigned_mark: usize) {
        while self.assigned_stack.len() > assigned_mark {
            let u = self.assigned_stack.pop().unwrap();
            self.assigned[u] = false;
            self.color[u] = 3;
            for w in self.g.out_neighbors(u).iter() {
                self.assigned_nbrs[w] -= 1;
            }
            for w in self.g.in_neighbors(u).iter() {
                self.assigned_nbrs[w] -= 1;
            }
        }
        while self.trail.len() > trail_mark {
            let (v, old) = self.trail.pop().unwrap();
            self.dom[v] = old;
        }
    }

    fn assign_and_search(&mut self, v: usize, c: u8) -> CspFlow {
        let trail_mark = self.trail.len();
        let assigned_mark = self.assigned_stack.len();
        let flow = if self.assign(v, c) {
            self.search()
        } else {
            CspFlow::Exhausted
        };
        if !matches!(flow, CspFlow::Found(_)) {
            self.undo_to(trail_mark, assigned_mark);
        }
        flow
    }

    fn leaf_certificate(&self) -> Option<Partition> {
        let n = self.g.n();
        let mut classes: [Vec<usize>; 3] = [vec![], vec![], vec![]];
        for v in 0..n {
            classes[self.color[v] as usize].push(v);
        }
        if classes.iter().any(|c| c.is_empty()) {
            return None;
        }
        let sizes: Vec<usize> = classes.iter().map(|c| c.len()).collect();
        if sizes.iter().all(|s| s % 3 == sizes[0] % 3) {
            return None;
        }
        // color classes already run V1 -> V2 -> V3 -> V1
        let lists: Vec<Vec<usize>> = classes.into_iter().collect();
        Some(Partition::from_index_lists(n, &lists).expect("classes partition the vertices"))
    }

    fn search(&mut self) -> CspFlow {
        self.nodes += 1;
        if self.nodes & 0xFF == 0 && self.deadline.is_some_and(|d| Instant::now() >= d) {
            return CspFlow::TimedOut;
        }
        // most-constrained next: highest count of already-colored neighbors
        let mut pick = usize::MAX;
        let mut best = 0u32;
        for v in 0..self.g.n() {
            if !self.assigned[v] && (pick == usize::MAX || self.assigned_nbrs[v] > best) {
                best = self.assigned_nbrs[v];
                pick = v;
            }
        }
        if pick == usize::MAX {
            return match self.leaf_certificate() {
                Some(p) => CspFlow::Found(p),
                None => CspFlow::Exhausted,
            };
        }
        for c in 0..3u8 {
            if self.dom[pick] & (1 << c) == 0 {
                continue;
            }
            match self.assign_and_search(pick, c) {
                CspFlow::Exhausted => {}
                other => return other,
            }
        }
        CspFlow::Exhausted
    }
}
