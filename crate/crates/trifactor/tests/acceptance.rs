//! Acceptance suite: one test per criterion, each printing a PASS/FAIL line
//! (visible with `cargo test -- --nocapture`). Every tolerance is pinned in
//! code; the exhaustive checks are exact.

mod common;

use std::sync::OnceLock;
use std::time::Instant;

use common::*;
use trifactor::audit::{audit, AuditInputs};
use trifactor::barrier::{find_divisibility_barrier, verify_divisibility_barrier, BarrierCertificate};
use trifactor::construct;
use trifactor::exact::Rat;
use trifactor::graph::OrientedGraph;
use trifactor::hypergraph::build_hypergraph;
use trifactor::lattice::total_index_in_edge_lattice;
use trifactor::partition::Partition;
use trifactor::reach::count_linking_pairs;
use trifactor::solver::{decide, find_factor, max_tiling, verify_tiling, DecisionOutcome, FactorOutcome};
use trifactor::sweep::{regular_tournament_sweep, SweepReport};
use trifactor::thresholds::Thresholds;

fn jobs() -> usize {
    std::thread::available_parallelism().map_or(1, |p| p.get())
}

fn report(criterion: &str, ok: bool, detail: &str, started: Instant) {
    println!(
        "criterion {criterion}: {} — {detail} ({:.1?})",
        if ok { "PASS" } else { "FAIL" },
        started.elapsed()
    );
}

#[test]
fn criterion_1_construction_fidelity() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for m in 2..=8usize {
        let (g, _) = construct::barrier_tournament(m).unwrap();
        let n = 3 * m;
        let expected = if m % 2 == 0 { (n - 4) / 2 } else { (n - 3) / 2 };
        if g.semidegree() != expected {
            failures.push(format!(
                "barrier m={m}: semidegree {} != {expected}",
                g.semidegree()
            ));
        }
    }
    for m in 1..=4usize {
        let (g, p) = construct::ks_construction(m).unwrap();
        let n = 9 * (m + 1);
        if g.semidegree() != 4 * n / 9 - 2 {
            failures.push(format!(
                "ks m={m}: semidegree {} != {}",
                g.semidegree(),
                4 * n / 9 - 2
            ));
        }
        let v23 = p.part(1).union(p.part(2));
        let cyc = g.count_cyclic(&v23, &v23, &v23);
        if cyc != 0 {
            failures.push(format!("ks m={m}: {cyc} cyclic triangles avoid part 1"));
        }
    }
    let ok = failures.is_empty();
    report(
        "1 (construction fidelity)",
        ok,
        "barrier m=2..8 semidegree closed form; ks m=1..4 semidegree 4n/9-2 and no triangle avoids part 1",
        started,
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_2_barrier_side_of_the_dichotomy() {
    let started = Instant::now();
    let mut failures = Vec::new();
    for m in 2..=6usize {
        let (g, planted) = construct::barrier_tournament(m).unwrap();
        let h = build_hypergraph(&g);
        match find_factor(&h, None).outcome {
            FactorOutcome::ProvenNone => {}
            other => failures.push(format!("m={m}: factor search returned {other:?}")),
        }
        match find_divisibility_barrier(&g) {
            Some(BarrierCertificate::ThreePart(p)) => {
                if let Err(e) = verify_divisibility_barrier(&g, &p) {
                    failures.push(format!("m={m}: found barrier fails verification: {e}"));
                }
            }
            other => failures.push(format!("m={m}: barrier search returned {other:?}")),
        }
        if total_index_in_edge_lattice(&h, &planted) {
            failures.push(format!(
                "m={m}: total index vector unexpectedly inside the edge-vector lattice"
            ));
        }
    }
    let ok = failures.is_empty();
    report(
        "2 (dichotomy, barrier side)",
        ok,
        "barrier m=2..6: proven-none factor, verified barrier certificate, total index outside the lattice",
        started,
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_3_factor_side_on_random_high_semidegree_graphs() {
    let started = Instant::now();
    let c = Rat::new(1, 20);
    let mut failures = Vec::new();
    let mut factors = 0u32;
    let mut barriers = 0u32;
    let mut neither = 0u32;
    let mut total = 0u32;
    for &n in &[9usize, 12, 15] {
        let per = if n == 15 { 66 } else { 67 };
        for seed in 0..per {
            total += 1;
            let g = construct::random_min_semidegree(n, c, seed).unwrap();
            let floor = trifactor::exact::ceil_mul(Rat::new(1, 2) - c, n as u64) as usize;
            let target = floor.min((n - 1) / 2);
            if g.semidegree() < target {
                failures.push(format!("n={n} seed={seed}: semidegree below the floor"));
                continue;
            }
            match decide(&g, None).outcome {
                DecisionOutcome::Factor(t) => {
                    factors += 1;
                    if verify_tiling(&g, &t, true).is_err() {
                        failures.push(format!("n={n} seed={seed}: invalid factor"));
                    }
                }
                DecisionOutcome::Barrier(cert) => {
                    barriers += 1;
                    let p = cert.to_partition(g.n());
                    if verify_divisibility_barrier(&g, &p).is_err() {
                        failures.push(format!("n={n} seed={seed}: invalid barrier"));
                    }
                    // a found barrier must coexist with proven-none
                    let h = build_hypergraph(&g);
                    match find_factor(&h, None).outcome {
                        FactorOutcome::ProvenNone => {}
                        other => failures.push(format!(
                            "n={n} seed={seed}: barrier found but factor search says {other:?}"
                        )),
                    }
                }
                DecisionOutcome::Neither => neither += 1,
                DecisionOutcome::Unknown => {
                    failures.push(format!("n={n} seed={seed}: unexpected timeout"))
                }
            }
        }
    }
    let ok = failures.is_empty() && total == 200;
    report(
        "3 (dichotomy, factor side)",
        ok,
        &format!(
            "200 seeded graphs at semidegree floor: {factors} factors, {barriers} barriers, {neither} neither; zero mutual-exclusion violations"
        ),
        started,
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_4_tiling_bound_on_the_ks_construction() {
    let started = Instant::now();
    let (g, _) = construct::ks_construction(1).unwrap();
    let h = build_hypergraph(&g);
    let r = max_tiling(&h, None);
    let ok = r.tiling.len() == 4 && r.optimal && verify_tiling(&g, &r.tiling, false).is_ok();
    report(
        "4 (tiling bound)",
        ok,
        &format!(
            "ks m=1: maximum tiling {} (optimal: {}), bound n/3 - 2 = 4",
            r.tiling.len(),
            r.optimal
        ),
        started,
    );
    assert!(ok);
}

static SWEEP9: OnceLock<SweepReport> = OnceLock::new();

fn sweep9() -> &'static SweepReport {
    SWEEP9.get_or_init(|| {
        regular_tournament_sweep(9, jobs(), false, true, None).expect("sweep runs")
    })
}

#[test]
fn criterion_5_conjecture_verification_at_9() {
    let started = Instant::now();
    let mut failures = Vec::new();
    // enumerator counts against the full orientation filter
    for n in [3usize, 5, 7] {
        let mut filtered = 0u64;
        for_each_tournament(n, |g| {
            if is_regular_tournament(g) {
                filtered += 1;
            }
        });
        let enumerated = construct::enumerate_regular_tournaments(n, |_| {}).unwrap();
        if enumerated != filtered {
            failures.push(format!(
                "n={n}: enumerator visits {enumerated}, filter finds {filtered}"
            ));
        }
    }
    let sweep = sweep9();
    if sweep.factorless_count != 0 {
        failures.push(format!(
            "{} regular tournaments on 9 vertices without a factor; first witnesses: {:?}",
            sweep.factorless_count, sweep.factorless
        ));
    }
    let ok = failures.is_empty();
    report(
        "5 (conjecture verification at n=9)",
        ok,
        &format!(
            "enumerator matches the filter at n=3,5,7; all {} labeled regular tournaments on 9 vertices have a factor",
            sweep.count
        ),
        started,
    );
    assert!(ok, "{failures:?}");
}

#[test]
fn criterion_6_exact_lemma_audit_suite() {
    let started = Instant::now();
    let mut failures = Vec::new();
    let mut audited = 0u32;
    let th = Thresholds::default();
    let mut instances: Vec<(String, OrientedGraph, Option<Partition>)> = Vec::new();
    for m in 2..=8usize {
        let (g, p) = construct::barrier_tournament(m).unwrap();
        instances.push((format!("barrier m={m}"), g, Some(p)));
    }
    for m in 1..=2usize {
        let (g, p) = construct::ks_construction(m).unwrap();
        instances.push((format!("ks m={m}"), g, Some(p)));
    }
    for n in (3..=29usize).step_by(2) {
        instances.push((
            format!("circulant n={n}"),
            construct::circulant_tournament(n).unwrap(),
            None,
        ));
    }
    for s in 3..=30usize {
        instances.push((
            format!("near-regular s={s}"),
            construct::near_regular_tournament(s).unwrap(),
            None,
        ));
    }
    for n in (9..=30usize).step_by(3) {
        for (ci, c) in [Rat::new(1, 20), Rat::new(1, 10)].into_iter().enumerate() {
            instances.push((
                format!("random n={n} c#{ci}"),
                construct::random_min_semidegree(n, c, 7 + ci as u64).unwrap(),
                None,
            ));
        }
    }
    for seed in 0..4u64 {
        instances.push((
            format!("regular-sample seed={seed}"),
            construct::regular_tournament_sample(15, seed).unwrap(),
            None,
        ));
    }
    for (label, g, planted) in &instances {
        assert!(g.n() <= 30, "{label}: audit population is capped at n=30");
        if g.effective_c() >= Rat::new(1, 2) {
            continue;
        }
        audited += 1;
        let mut inputs = AuditInputs::defaults_for(g, 42);
        if let Some(p) = planted {
            inputs.partitions.push(p.clone());
        }
        let report = audit(g, &th, &inputs);
        for rec in report.failed_asserted() {
            failures.push(format!("{label}: {} lhs={} rhs={}", rec.name, rec.lhs, rec.rhs));
        }
    }
    let ok = failures.is_empty() && audited >= 50;
    report(
        "6 (exact-lemma audit suite)",
        ok,
        &format!("{audited} generator outputs with effective c < 1/2, all asserted checks hold"),
        started,
    );
    assert!(ok, "audited={audited} {failures:?}");
}

#[test]
fn criterion_7_oracle_equivalence() {
    let started = Instant::now();
    let mut failures: Vec<String> = Vec::new();

    // exhaustive over all labeled tournaments with n <= 7, split by
    // orientation code ranges across workers
    for n in 1..=7usize {
        let pairs = n * (n - 1) / 2;
        let total = 1u64 << pairs;
        let workers = jobs().min(4) as u64;
        let chunk = total.div_ceil(workers);
        let fail_lists: Vec<Vec<String>> = std::thread::scope(|scope| {
            let mut handles = Vec::new();
            for w in 0..workers {
                let from = w * chunk;
                let to = ((w + 1) * chunk).min(total);
                handles.push(scope.spawn(move || {
                    let mut local = Vec::new();
                    for_each_tournament_range(n, from, to, |g| {
                        check_oracles(g, &mut local);
                    });
                    local
                }));
            }
            handles.into_iter().map(|h| h.join().unwrap()).collect()
        });
        for mut l in fail_lists {
            failures.append(&mut l);
        }
    }

    // 100 seeded random oriented graphs with n <= 12
    for seed in 0..100u64 {
        let n = 3 + (seed as usize % 10); // 3..=12
        let g = random_oriented_graph(n, 1000 + seed);
        check_oracles(&g, &mut failures);
    }

    let ok = failures.is_empty();
    failures.truncate(10);
    report(
        "7 (oracle equivalence)",
        ok,
        "counts, factor search, barrier search, and linking pairs agree with brute force on all tournaments with n<=7 and 100 random oriented graphs",
        started,
    );
    assert!(ok, "{failures:?}");
}

fn check_oracles(g: &OrientedGraph, failures: &mut Vec<String>) {
    let all = g.full_set();
    let n = g.n();
    let cyc = g.count_cyclic(&all, &all, &all);
    if cyc != naive_count_cyclic(g, &all, &all, &all) {
        failures.push(format!("cyc mismatch on {}", trifactor::dg::format_dg(g)));
    }
    if g.count_transitive(&all) != naive_count_transitive(g, &all) {
        failures.push(format!("trn mismatch on {}", trifactor::dg::format_dg(g)));
    }
    let h = build_hypergraph(g);
    let got_factor = match find_factor(&h, None).outcome {
        FactorOutcome::Factor(t) => {
            if verify_tiling(g, &t, true).is_err() {
                failures.push(format!("invalid factor on {}", trifactor::dg::format_dg(g)));
            }
            true
        }
        FactorOutcome::ProvenNone => false,
        FactorOutcome::TimedOut => unreachable!(),
    };
    if got_factor != brute_has_factor(g) {
        failures.push(format!("factor mismatch on {}", trifactor::dg::format_dg(g)));
    }
    let found = find_divisibility_barrier(g);
    if let Some(BarrierCertificate::ThreePart(ref p)) = found {
        if verify_divisibility_barrier(g, p).is_err() {
            failures.push(format!("invalid barrier on {}", trifactor::dg::format_dg(g)));
        }
    }
    if found.is_some() != brute_has_barrier(g) {
        failures.push(format!("barrier mismatch on {}", trifactor::dg::format_dg(g)));
    }
    for x in 0..n {
        for y in (x + 1)..n {
            if count_linking_pairs(&h, x, y) != brute_linking_pairs(g, x, y) {
                failures.push(format!(
                    "linking mismatch at ({x},{y}) on {}",
                    trifactor::dg::format_dg(g)
                ));
            }
        }
    }
}

#[test]
fn criterion_8_no_barrier_on_regular_tournaments() {
    let started = Instant::now();
    let sweep = sweep9();
    let ok = sweep.barriered_count == 0;
    report(
        "8 (no barrier on regular tournaments)",
        ok,
        &format!(
            "all {} regular tournaments on 9 vertices are barrier-free",
            sweep.count
        ),
        started,
    );
    assert!(
        ok,
        "{} regular tournaments carry a barrier; witnesses: {:?}",
        sweep.barriered_count, sweep.barriered
    );
}
