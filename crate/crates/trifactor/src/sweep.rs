//! Sweeps every labeled regular tournament of a given order: each visited
//! tournament is factor-checked, and optionally barrier-checked, with a
//! parallel split over orientation prefixes.

use std::sync::atomic::{AtomicU64, AtomicUsize, Ordering};

use crate::barrier::find_divisibility_barrier;
use crate::construct::{
    enumerate_regular_tournaments_prefixed, ConstructError, ENUMERATION_GUARD,
};
use crate::dg::format_dg;
use crate::hypergraph::build_hypergraph;
use crate::solver::{find_factor, FactorOutcome};

/// Counterexample listings are capped; the counts stay exact.
const MAX_WITNESSES: usize = 10;

#[derive(Clone, Debug, Default)]
pub struct SweepReport {
    /// Labeled regular tournaments visited.
    pub count: u64,
    /// Tournaments with no cyclic triangle factor (".dg" text, sorted).
    pub factorless: Vec<String>,
    pub factorless_count: u64,
    /// Tournaments with a divisibility barrier (".dg" text, sorted).
    pub barriered: Vec<String>,
    pub barriered_count: u64,
}

/// Enumerates all regular tournaments on `n` vertices and checks each one.
/// `progress` is invoked roughly every 10_000 visits with the running count.
pub fn regular_tournament_sweep(
    n: usize,
    jobs: usize,
    allow_large: bool,
    check_barriers: bool,
    progress: Option<&(dyn Fn(u64) + Sync)>,
) -> Result<SweepReport, ConstructError> {
    if !allow_large && n > ENUMERATION_GUARD {
        return Err(ConstructError::EnumerationGuard {
            n,
            limit: ENUMERATION_GUARD,
        });
    }
    let pair_count = n * (n - 1) / 2;
    let jobs = jobs.max(1);
    if jobs == 1 || pair_count < 12 {
        let mut report = SweepReport::default();
        let mut visited = 0u64;
        enumerate_regular_tournaments_prefixed(n, 0, 0, |g| {
            visited += 1;
            if visited.is_multiple_of(10_000) {
                if let Some(p) = progress {
                    p(visited);
                }
            }
            check_one(g, check_barriers, &mut report);
        })?;
        report.count = visited;
        finish(&mut report);
        return Ok(report);
    }

    // split the search tree over orientation prefixes
    let prefix_len = 10usize.min(pair_count);
    let tasks = 1u64 << prefix_len;
    let next = AtomicUsize::new(0);
    let visited = AtomicU64::new(0);
    let mut results: Vec<Result<SweepReport, ConstructError>> = Vec::new();
    std::thread::scope(|scope| {
        let mut handles = Vec::new();
        for _ in 0..jobs {
            let next = &next;
            let visited = &visited;
            handles.push(scope.spawn(move || {
                let mut local = SweepReport::default();
                loop {
                    let t = next.fetch_add(1, Ordering::Relaxed) as u64;
                    if t >= tasks {
                        break;
                    }
                    let r = enumerate_regular_tournaments_prefixed(n, prefix_len, t, |g| {
                        let before = visited.fetch_add(1, Ordering::Relaxed);
                        if (before + 1).is_multiple_of(10_000) {
                            if let Some(p) = progress {
                                p(before + 1);
                            }
                        }
                        check_one(g, check_barriers, &mut local);
                    });
                    match r {
                        Ok(c) => local.count += c,
                        Err(e) => return Err(e),
                    }
                }
                Ok(local)
            }));
        }
        for h in handles {
            results.push(h.join().expect("sweep worker panicked"));
        }
    });
    let mut report = SweepReport::default();
    for r in results {
        let r = r?;
        report.count += r.count;
        report.factorless_count += r.factorless_count;
        report.barriered_count += r.barriered_count;
        report.factorless.extend(r.factorless);
        report.barriered.extend(r.barriered);
    }
    finish(&mut report);
    Ok(report)
}

fn check_one(g: &crate::graph::OrientedGraph, check_barriers: bool, report: &mut SweepReport) {
    let h = build_hypergraph(g);
    match find_factor(&h, None).outcome {
        FactorOutcome::Factor(_) => {}
        FactorOutcome::ProvenNone => {
            report.factorless_count += 1;
            if report.factorless.len() < MAX_WITNESSES {
                report.factorless.push(format_dg(g));
            }
        }
        FactorOutcome::TimedOut => unreachable!("no deadline was set"),
    }
    if check_barriers && find_divisibility_barrier(g).is_some() {
        report.barriered_count += 1;
        if report.barriered.len() < MAX_WITNESSES {
            report.barriered.push(format_dg(g));
        }
    }
}

fn finish(report: &mut SweepReport) {
    // deterministic listings regardless of worker scheduling
    report.factorless.sort();
    report.factorless.truncate(MAX_WITNESSES);
    report.barriered.sort();
    report.barriered.truncate(MAX_WITNESSES);
}
