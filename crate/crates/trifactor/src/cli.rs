//! Command-line front end.
//!
//! Exit codes: 0 affirmative (factor found / barrier found / all asserted
//! audit checks pass), 1 negative (proven none / not found / an asserted
//! check failed), 2 usage or I/O error, 3 timeout or indeterminate.

use std::path::{Path, PathBuf};
use std::time::Duration;

use clap::{Parser, Subcommand};
use serde_json::json;

use crate::audit::{audit, find_gamma_extremal, find_gamma_extremal_exhaustive, AuditInputs, SearchEffort};
use crate::barrier::{find_divisibility_barrier, BarrierCertificate};
use crate::construct::ConstructionSpec;
use crate::dg::{format_dg, parse_dg, partition_from_json, partition_to_json};
use crate::exact::{parse_rat, Rat};
use crate::graph::OrientedGraph;
use crate::hypergraph::build_hypergraph;
use crate::lattice::{edge_vectors, find_2_transferral, index_vector, LatticeBasis};
use crate::partition::Partition;
use crate::reach::{linking_stats, SamplerConfig};
use crate::solver::{decide, find_factor, max_tiling, DecisionOutcome, FactorOutcome, Tiling};
use crate::sweep::regular_tournament_sweep;
use crate::thresholds::Thresholds;

pub const EXIT_OK: i32 = 0;
pub const EXIT_NEGATIVE: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_INDETERMINATE: i32 = 3;

#[derive(Parser)]
#[command(name = "trifactor", version, about = "Cyclic-triangle factors, divisibility barriers, and lattice audits for oriented graphs")]
pub struct Cli {
    /// Master seed for every randomized component.
    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,
    /// Search budget in milliseconds for solver-backed subcommands.
    #[arg(long, global = true, default_value_t = 60_000)]
    pub timeout_ms: u64,
    /// Worker threads; 1 guarantees bitwise-deterministic output.
    #[arg(long, global = true, default_value_t = 1)]
    pub jobs: usize,
    #[command(subcommand)]
    pub cmd: Cmd,
}

#[derive(Subcommand)]
pub enum Cmd {
    /// Generate a graph (and for the planted constructions, its partition).
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Factor search (or maximum tiling) on a ".dg" file.
    Solve {
        file: PathBuf,
        /// Branch-and-bound maximum tiling instead of the factor search.
        #[arg(long)]
        max_tiling: bool,
    },
    /// Factor-or-barrier decision.
    Decide { file: PathBuf },
    /// Exhaustive divisibility-barrier search.
    Barrier { file: PathBuf },
    /// Edge-vectors, 2-transferrals, and total-index lattice membership.
    Lattice {
        file: PathBuf,
        #[arg(long)]
        partition: PathBuf,
        #[arg(long, default_value = "0")]
        mu: String,
    },
    /// Linking statistics for one vertex pair.
    Reach {
        file: PathBuf,
        #[arg(long)]
        x: usize,
        #[arg(long)]
        y: usize,
        #[arg(long, default_value_t = 1)]
        ell: u32,
        #[arg(long, default_value = "1/100")]
        beta: String,
        #[arg(long, default_value_t = 2000)]
        samples: u64,
    },
    /// Search for a gamma-extremal partition.
    Extremal {
        file: PathBuf,
        #[arg(long)]
        gamma: String,
        /// Force the exhaustive scan regardless of order.
        #[arg(long)]
        exhaustive: bool,
    },
    /// Exact-inequality audit report.
    Audit {
        file: PathBuf,
        #[arg(long, default_value = "1/100")]
        alpha: String,
        #[arg(long, default_value = "1/100")]
        beta: String,
        #[arg(long, default_value = "1/20")]
        xi: String,
        #[arg(long, default_value = "1/10")]
        eta: String,
    },
    /// Enumerate regular tournaments of order n and factor-check each one.
    VerifyConjecture {
        #[arg(long)]
        n: usize,
        /// Lift the default n <= 9 enumeration guard.
        #[arg(long)]
        allow_large: bool,
    },
}

#[derive(Subcommand)]
pub enum GenKind {
    /// Barrier tournament on 3m vertices (parts m-1, m, m+1).
    Barrier {
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        partition_out: Option<PathBuf>,
    },
    /// High-semidegree construction on 9(m+1) vertices with no barrier.
    Ks {
        #[arg(long)]
        m: usize,
        #[arg(short, long)]
        output: PathBuf,
        #[arg(long)]
        partition_out: Option<PathBuf>,
    },
    /// Rotational tournament on odd n.
    Circulant {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Tournament with minimum semidegree floor((s-1)/2).
    NearRegular {
        #[arg(long)]
        s: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Seeded oriented graph with semidegree at least (1/2 - c)n.
    Random {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        c: String,
        #[arg(short, long)]
        output: PathBuf,
    },
    /// Seeded random regular tournament on odd n.
    RegularSample {
        #[arg(long)]
        n: usize,
        #[arg(short, long)]
        output: PathBuf,
    },
}

fn usage_err(msg: impl std::fmt::Display) -> i32 {
    eprintln!("error: {msg}");
    EXIT_USAGE
}

fn read_graph(path: &Path) -> Result<OrientedGraph, i32> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage_err(format_args!("{}: {e}", path.display())))?;
    parse_dg(&text).map_err(|e| usage_err(format_args!("{}: {e}", path.display())))
}

fn read_partition(path: &Path, n: usize) -> Result<Partition, i32> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| usage_err(format_args!("{}: {e}", path.display())))?;
    partition_from_json(&text, n).map_err(|e| usage_err(format_args!("{}: {e}", path.display())))
}

fn parse_rat_arg(s: &str, name: &str) -> Result<Rat, i32> {
    parse_rat(s).map_err(|e| usage_err(format_args!("--{name}: {e}")))
}

fn write_file(path: &Path, contents: &str) -> Result<(), i32> {
    std::fs::write(path, contents)
        .map_err(|e| usage_err(format_args!("{}: {e}", path.display())))
}

fn print_json(value: &serde_json::Value) {
    println!("{}", serde_json::to_string_pretty(value).expect("json encodes"));
}

fn tiling_json(t: &Tiling) -> serde_json::Value {
    json!(t.triangles)
}

fn partition_json_value(p: &Partition) -> serde_json::Value {
    json!(p.to_index_lists())
}

pub fn run(cli: Cli) -> i32 {
    match run_inner(cli) {
        Ok(code) => code,
        Err(code) => code,
    }
}

fn run_inner(cli: Cli) -> Result<i32, i32> {
    let timeout = Duration::from_millis(cli.timeout_ms);
    match cli.cmd {
        Cmd::Gen { kind } => run_gen(kind, cli.seed),
        Cmd::Solve { file, max_tiling: want_max } => {
            let g = read_graph(&file)?;
            let h = build_hypergraph(&g);
            if want_max {
                let r = max_tiling(&h, Some(timeout));
                print_json(&json!({
                    "outcome": "tiling",
                    "triangles": tiling_json(&r.tiling),
                    "size": r.tiling.len(),
                    "optimal": r.optimal,
                    "nodes": r.stats.nodes,
                    "millis": r.stats.millis,
                }));
                Ok(if r.optimal { EXIT_OK } else { EXIT_INDETERMINATE })
            } else {
                let r = find_factor(&h, Some(timeout));
                let (outcome, triangles, code) = match &r.outcome {
                    FactorOutcome::Factor(t) => ("factor", Some(tiling_json(t)), EXIT_OK),
                    FactorOutcome::ProvenNone => ("proven-none", None, EXIT_NEGATIVE),
                    FactorOutcome::TimedOut => ("timeout", None, EXIT_INDETERMINATE),
                };
                print_json(&json!({
                    "outcome": outcome,
                    "triangles": triangles,
                    "optimal": serde_json::Value::Null,
                    "nodes": r.stats.nodes,
                    "millis": r.stats.millis,
                }));
                Ok(code)
            }
        }
        Cmd::Decide { file } => {
            let g = read_graph(&file)?;
            let d = decide(&g, Some(timeout));
            let (outcome, payload, code) = match &d.outcome {
                DecisionOutcome::Factor(t) => (
                    "factor",
                    json!({"triangles": tiling_json(t)}),
                    EXIT_OK,
                ),
                DecisionOutcome::Barrier(cert) => ("barrier", barrier_json(cert), EXIT_OK),
                DecisionOutcome::Neither => ("neither", json!({}), EXIT_NEGATIVE),
                DecisionOutcome::Unknown => ("unknown", json!({}), EXIT_INDETERMINATE),
            };
            print_json(&json!({
                "outcome": outcome,
                "detail": payload,
                "nodes": d.stats.nodes,
                "millis": d.stats.millis,
            }));
            Ok(code)
        }
        Cmd::Barrier { file } => {
            let g = read_graph(&file)?;
            match find_divisibility_barrier(&g) {
                Some(cert) => {
                    print_json(&json!({"found": true, "certificate": barrier_json(&cert)}));
                    Ok(EXIT_OK)
                }
                None => {
                    print_json(&json!({"found": false, "certificate": null}));
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Cmd::Lattice { file, partition, mu } => {
            let g = read_graph(&file)?;
            let p = read_partition(&partition, g.n())?;
            let mu = parse_rat_arg(&mu, "mu")?;
            if mu < Rat::new(0, 1) {
                return Err(usage_err("--mu must be nonnegative"));
            }
            let h = build_hypergraph(&g);
            let robust = edge_vectors(&h, &p, mu);
            let all = edge_vectors(&h, &p, Rat::new(0, 1));
            let basis = LatticeBasis::from_edge_vectors(&all);
            let total = index_vector(&p, &g.full_set());
            let contains = basis
                .contains(&total.as_i64())
                .expect("dimensions agree by construction");
            let transferral = find_2_transferral(&robust);
            print_json(&json!({
                "edge_vectors": robust
                    .vectors
                    .iter()
                    .map(|(v, m)| json!({"vec": v.entries(), "mult": m}))
                    .collect::<Vec<_>>(),
                "transferral": transferral.map(|t| json!({
                    "plus": t.plus,
                    "minus": t.minus,
                    "v1": t.v1.entries(),
                    "v2": t.v2.entries(),
                })),
                "total_index": total.entries(),
                "contains_total": contains,
            }));
            Ok(EXIT_OK)
        }
        Cmd::Reach { file, x, y, ell, beta, samples } => {
            let g = read_graph(&file)?;
            if x == y || x >= g.n() || y >= g.n() {
                return Err(usage_err("--x and --y must be distinct vertices of the graph"));
            }
            if ell == 0 || ell > 4 {
                return Err(usage_err("--ell must be in 1..=4"));
            }
            let beta = parse_rat_arg(&beta, "beta")?;
            if beta < Rat::new(0, 1) {
                return Err(usage_err("--beta must be nonnegative"));
            }
            let h = build_hypergraph(&g);
            let cfg = SamplerConfig {
                samples,
                seed: cli.seed,
            };
            let stats = linking_stats(&h, x, y, beta, ell, &cfg);
            print_json(&serde_json::to_value(&stats).expect("stats encode"));
            Ok(if stats.threshold_met {
                EXIT_OK
            } else if stats.indeterminate {
                EXIT_INDETERMINATE
            } else {
                EXIT_NEGATIVE
            })
        }
        Cmd::Extremal { file, gamma, exhaustive } => {
            let g = read_graph(&file)?;
            let gamma = parse_rat_arg(&gamma, "gamma")?;
            let effort = SearchEffort {
                seed: cli.seed,
                ..SearchEffort::default()
            };
            let found = if exhaustive {
                find_gamma_extremal_exhaustive(&g, gamma)
            } else {
                find_gamma_extremal(&g, gamma, &effort)
            }
            .map_err(usage_err)?;
            match found {
                Some(p) => {
                    let check = crate::audit::verify_gamma_extremal(&g, &p, gamma)
                        .expect("found partition verifies");
                    print_json(&json!({
                        "found": true,
                        "partition": partition_json_value(&p),
                        "sizes": check.sizes,
                        "backward": check.backward,
                        "exhaustive": exhaustive || g.n() <= 12,
                    }));
                    Ok(EXIT_OK)
                }
                None => {
                    print_json(&json!({
                        "found": false,
                        "partition": null,
                        "exhaustive": exhaustive || g.n() <= 12,
                    }));
                    Ok(EXIT_NEGATIVE)
                }
            }
        }
        Cmd::Audit { file, alpha, beta, xi, eta } => {
            let g = read_graph(&file)?;
            let th = Thresholds::new(
                g.effective_c().min(Rat::new(1, 2)).max(Rat::new(0, 1)),
                parse_rat_arg(&alpha, "alpha")?,
                parse_rat_arg(&beta, "beta")?,
                Thresholds::default().gamma,
                Thresholds::default().mu,
                parse_rat_arg(&xi, "xi")?,
                parse_rat_arg(&eta, "eta")?,
                1,
            )
            .map_err(usage_err)?;
            let inputs = AuditInputs::defaults_for(&g, cli.seed);
            let report = audit(&g, &th, &inputs);
            print_json(&serde_json::to_value(&report).expect("report encodes"));
            Ok(if report.all_asserted_pass() {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
        Cmd::VerifyConjecture { n, allow_large } => {
            let progress = |count: u64| {
                eprintln!("visited {count} regular tournaments");
            };
            let report =
                regular_tournament_sweep(n, cli.jobs, allow_large, true, Some(&progress))
                    .map_err(usage_err)?;
            print_json(&json!({
                "n": n,
                "count": report.count,
                "factorless": report.factorless_count,
                "barriered": report.barriered_count,
                "factorless_witnesses": report.factorless,
                "barriered_witnesses": report.barriered,
            }));
            for witness in &report.factorless {
                eprintln!("factorless regular tournament:\n{witness}");
            }
            Ok(if report.factorless_count == 0 {
                EXIT_OK
            } else {
                EXIT_NEGATIVE
            })
        }
    }
}

fn barrier_json(cert: &BarrierCertificate) -> serde_json::Value {
    match cert {
        BarrierCertificate::Trivial => json!({"kind": "trivial"}),
        BarrierCertificate::ThreePart(p) => json!({
            "kind": "three-part",
            "parts": p.to_index_lists(),
        }),
    }
}

fn run_gen(kind: GenKind, seed: u64) -> Result<i32, i32> {
    let (spec, output, partition_out) = match kind {
        GenKind::Barrier { m, output, partition_out } => {
            (ConstructionSpec::Barrier { m }, output, partition_out)
        }
        GenKind::Ks { m, output, partition_out } => {
            (ConstructionSpec::Ks { m }, output, partition_out)
        }
        GenKind::Circulant { n, output } => (ConstructionSpec::Circulant { n }, output, None),
        GenKind::NearRegular { s, output } => (ConstructionSpec::NearRegular { s }, output, None),
        GenKind::Random { n, c, output } => {
            let c = parse_rat_arg(&c, "c")?;
            (ConstructionSpec::RandomMinSemidegree { n, c, seed }, output, None)
        }
        GenKind::RegularSample { n, output } => {
            (ConstructionSpec::RegularSample { n, seed }, output, None)
        }
    };
    let (g, p) = spec.generate().map_err(usage_err)?;
    write_file(&output, &format_dg(&g))?;
    if let Some(path) = partition_out {
        let p = p.as_ref().expect("planted constructions carry a partition");
        write_file(&path, &partition_to_json(p))?;
    }
    print_json(&json!({
        "file": output.display().to_string(),
        "n": g.n(),
        "m": g.edge_count(),
        "semidegree": g.semidegree(),
    }));
    Ok(EXIT_OK)
}
