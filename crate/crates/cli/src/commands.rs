// SPDX-License-Identifier: Apache-2.0

use std::path::Path;
use std::sync::Arc;

use anyhow::{bail, Context, Result};
use rand::Rng;
use serde::Serialize;

use congest_core::comm::BitString;
use congest_core::gadgets::{
    build_apsp_star, build_identical_subgraphs, decode_star_row, identical_weight_bound, star_batch_width,
    BuildFault, InstanceKind, LowerBoundInstance,
};
use congest_core::graph::{apsp_exact, BlockPartition, Graph, Partition};
use congest_core::io::{to_dot, GraphFile, Loaded};
use congest_core::lemma::{evaluate, summarize, sweep, LemmaSpec, Sampling};
use congest_core::oracles::check_identical;
use congest_core::protocol::{apsp_blackboard, apsp_two_party, simulate_two_party_on, PartyDistances};
use congest_core::rng::{
    named_rng, random_blocks, random_clique_weights, random_connected_graph, random_disj_input, random_partition,
    sha256_hex,
};
use congest_core::sim::{
    default_bandwidth, fingerprint_len, flood_program, ident_program, identical_subgraphs_detect_with, nth_primes,
    run as run_sim, IdentDetect, NodeProgram, SimConfig,
};
use congest_core::Error;

use crate::report::{Counters, Emitter};
use crate::{
    Algo, BenchAlgo, BenchArgs, CheckLemmaArgs, Ctx, Fault, Format, GenArgs, Kind, ProtocolAlgo, ProtocolArgs,
    SimulateArgs, Status, VerifyArgs,
};

pub fn is_invariant_error(e: &Error) -> bool {
    matches!(
        e,
        Error::BandwidthViolation { .. } | Error::NotNeighbor { .. } | Error::DuplicateMessage { .. }
    )
}

fn core_kind(k: Kind) -> InstanceKind {
    match k {
        Kind::Mvc => InstanceKind::Mvc,
        Kind::Col3 => InstanceKind::Coloring3,
        Kind::Colc => InstanceKind::ColoringC,
        Kind::Colapprox => InstanceKind::ColoringApprox,
        Kind::Cycle8 => InstanceKind::Cycle8,
        Kind::Ident => InstanceKind::Identical,
        Kind::Star => InstanceKind::ApspStar,
    }
}

fn load(path: &Path) -> Result<Loaded> {
    let text = std::fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))?;
    Ok(GraphFile::parse(&text)?)
}

fn instance_digest(g: &Graph, p: Option<&Partition>) -> Result<String> {
    Ok(sha256_hex(GraphFile::from_graph(g, p).to_json()?.as_bytes()))
}

fn outputs_digest<T: Serialize>(outputs: &T) -> Result<String> {
    Ok(sha256_hex(&serde_json::to_vec(outputs)?))
}

fn parse_bits(s: &str) -> Result<BitString> {
    Ok(s.parse::<BitString>()?)
}

fn nodes_and_cut(g: &Graph, p: Option<&Partition>) -> Result<Counters> {
    Ok(Counters {
        nodes: Some(g.n()),
        cut_size: match p {
            Some(p) => Some(congest_core::graph::cut_edges(g, p)?.len()),
            None => None,
        },
        ..Counters::default()
    })
}

pub fn gen(ctx: &Ctx, em: &mut Emitter, a: GenArgs) -> Result<Status> {
    let kind = core_kind(a.kind);
    let mut rx = named_rng(ctx.seed, "gen/x");
    let mut ry = named_rng(ctx.seed, "gen/y");
    let given = |s: &Option<String>| s.as_deref().map(parse_bits).transpose();
    let inst = match kind {
        InstanceKind::ApspStar => {
            let n = a.k;
            let len = n.saturating_sub(2) * star_batch_width(n);
            let x = given(&a.x)?.unwrap_or_else(|| BitString::random(len, &mut rx));
            build_apsp_star(n, &x)?
        }
        InstanceKind::Identical => {
            let w = a.w_bound.unwrap_or_else(|| identical_weight_bound(a.k));
            let x = given(&a.x)?.unwrap_or_else(|| random_clique_weights(a.k, w, &mut rx));
            let y = match given(&a.y)? {
                Some(y) => y,
                None if a.equal => x.clone(),
                None => random_clique_weights(a.k, w, &mut ry),
            };
            build_identical_subgraphs(a.k, &x, &y, Some(w))?
        }
        _ => {
            let bits = a.k * a.k;
            let x = given(&a.x)?.unwrap_or_else(|| random_disj_input(bits, 0.5, &mut rx));
            let y = given(&a.y)?.unwrap_or_else(|| random_disj_input(bits, 0.5, &mut ry));
            let mut spec = LemmaSpec::new(kind, a.k);
            spec.c = a.c;
            spec.build(&x, &y)?
        }
    };
    match ctx.format {
        Format::Json => em.raw(&GraphFile::from_instance(&inst).to_json()?)?,
        Format::Dot => em.raw(&to_dot(&inst.graph, Some(&inst.partition)))?,
    }
    Ok(Status::Pass)
}

pub fn verify(_ctx: &Ctx, em: &mut Emitter, a: VerifyArgs) -> Result<Status> {
    let mut loaded = load(&a.input)?;
    if let Some(k) = a.kind {
        loaded.kind = Some(core_kind(k));
    }
    let inst = loaded.into_instance()?;
    let v = evaluate(&inst)?;
    let pass = v.matches_lemma;
    let r = em
        .report()
        .digest(instance_digest(&inst.graph, Some(&inst.partition))?)
        .field("kind", inst.kind)?
        .merge(&v)?
        .counters(nodes_and_cut(&inst.graph, Some(&inst.partition))?)
        .pass(pass);
    em.emit(r)?;
    Ok(if pass { Status::Pass } else { Status::Counterexample })
}

fn trial_seed(root: u64, name: &str, t: usize) -> u64 {
    named_rng(root, &format!("{name}/{t}")).random()
}

fn ident_parts(inst: &LowerBoundInstance) -> (u64, Arc<Vec<u64>>) {
    let w = inst.params.w_bound.unwrap_or(inst.params.w_max + 1);
    let primes = nth_primes(fingerprint_len(inst.params.k, w).pow(2));
    (w, Arc::new(primes))
}

pub fn simulate(ctx: &Ctx, em: &mut Emitter, a: SimulateArgs) -> Result<Status> {
    let loaded = load(&a.input)?;
    let g = loaded.graph.clone();
    let bandwidth = a.bandwidth.unwrap_or_else(|| default_bandwidth(g.n()));
    let digest = instance_digest(&g, loaded.partition.as_ref())?;
    let diameter = g.diameter().ok_or(Error::Disconnected)?;
    let mut status = Status::Pass;
    match a.algo {
        Algo::Ident => {
            let inst = loaded.into_instance()?;
            let truth = check_identical(&inst)?;
            let (w, primes) = ident_parts(&inst);
            let bound = IdentDetect {
                k: inst.params.k,
                w_bound: w,
                primes: primes.clone(),
            }
            .round_bound(bandwidth);
            for t in 0..a.trials {
                let cfg = SimConfig::for_graph(&g, trial_seed(ctx.seed, "simulate", t))
                    .with_bandwidth(bandwidth)
                    .with_max_rounds(a.max_rounds)
                    .with_exec(ctx.exec);
                let (verdicts, trace) = identical_subgraphs_detect_with(&inst, &cfg, primes.clone())?;
                let agree = verdicts.iter().all(|v| v == &verdicts[0]);
                let said = verdicts[0].identical;
                let within = trace.rounds_used <= bound.rounds(diameter);
                let one_sided = !truth || said;
                status = status.worst(if !agree || !within {
                    Status::InvariantViolation
                } else if !one_sided {
                    Status::Counterexample
                } else {
                    Status::Pass
                });
                let r = em
                    .report()
                    .digest(digest.clone())
                    .field("trial", t)?
                    .field("verdicts", verdicts.iter().map(|v| v.identical).collect::<Vec<_>>())?
                    .field("prime", verdicts[0].prime)?
                    .field("identical", truth)?
                    .field("false_positive", said && !truth)?
                    .field("diameter", diameter)?
                    .field("round_bound", bound)?
                    .field("bound_rounds", bound.rounds(diameter))?
                    .field("rounds", trace.rounds_used)?
                    .field("bits_total", trace.total_bits())?
                    .field("bits_per_edge", &trace.per_edge)?
                    .counters(Counters {
                        rounds: Some(trace.rounds_used),
                        bits: Some(trace.total_bits()),
                        nodes: Some(g.n()),
                        cut_size: Some(inst.cut().len()),
                    })
                    .pass(agree && within && one_sided);
                em.emit(r)?;
            }
        }
        Algo::Flood => {
            let expected = g.bfs_depths(0);
            for t in 0..a.trials {
                let cfg = SimConfig::for_graph(&g, trial_seed(ctx.seed, "simulate", t))
                    .with_bandwidth(bandwidth)
                    .with_max_rounds(a.max_rounds)
                    .with_exec(ctx.exec);
                let (out, trace) = run_sim(&g, &flood_program(0), &cfg)?;
                let pass = out == expected;
                if !pass {
                    status = status.worst(Status::InvariantViolation);
                }
                let r = em
                    .report()
                    .digest(digest.clone())
                    .field("trial", t)?
                    .field("verdicts", &out)?
                    .field("rounds", trace.rounds_used)?
                    .field("bits_total", trace.total_bits())?
                    .field("bits_per_edge", &trace.per_edge)?
                    .counters(Counters {
                        rounds: Some(trace.rounds_used),
                        bits: Some(trace.total_bits()),
                        nodes: Some(g.n()),
                        cut_size: None,
                    })
                    .pass(pass);
                em.emit(r)?;
            }
        }
    }
    Ok(status)
}

fn rows_exact(g: &Graph, parties: &[&PartyDistances]) -> bool {
    let exact = apsp_exact(g);
    parties
        .iter()
        .all(|p| p.sources.iter().zip(&p.rows).all(|(&s, row)| exact.row(s) == row.as_slice()))
}

fn simulate_report<P>(em: &mut Emitter, g: &Graph, p: &Partition, prog: &P, cfg: &SimConfig, digest: String) -> Result<Status>
where
    P: NodeProgram,
    P::Output: Serialize,
{
    let (direct, _) = run_sim(g, prog, cfg)?;
    let tp = simulate_two_party_on(g, p, prog, cfg)?;
    let identical = direct == tp.outputs;
    let bound = tp.bit_bound();
    let ok = tp.transcript.total_bits <= bound;
    let r = em
        .report()
        .digest(digest)
        .field("outputs_digest", outputs_digest(&tp.outputs)?)?
        .field("outputs_match_run", identical)?
        .field("total_bits", tp.transcript.total_bits)?
        .field("bound", bound)?
        .field("bound_satisfied", ok)?
        .counters(Counters {
            rounds: Some(tp.rounds_used),
            bits: Some(tp.transcript.total_bits),
            cut_size: Some(tp.cut_size),
            nodes: Some(g.n()),
        })
        .pass(identical && ok);
    em.emit(r)?;
    Ok(if identical && ok { Status::Pass } else { Status::InvariantViolation })
}

pub fn protocol(ctx: &Ctx, em: &mut Emitter, a: ProtocolArgs) -> Result<Status> {
    let loaded = load(&a.input)?;
    let g = loaded.graph.clone();
    let digest = instance_digest(&g, loaded.partition.as_ref())?;
    let need_partition = || {
        loaded
            .partition
            .clone()
            .context("graph file has no partition")
    };
    match a.algo {
        ProtocolAlgo::Apsp2 => {
            let p = need_partition()?;
            let r = apsp_two_party(&g, &p)?;
            let exact = rows_exact(&g, &[&r.alice, &r.bob]);
            let bound = r.bound();
            let ok = r.transcript.total_bits <= bound;
            let rep = em
                .report()
                .digest(digest)
                .field("outputs_digest", outputs_digest(&(&r.alice, &r.bob))?)?
                .field("exact", exact)?
                .field("field_bits", r.field_bits)?
                .field("cut_nodes", r.cut_nodes)?
                .field("total_bits", r.transcript.total_bits)?
                .field("bound", bound)?
                .field("bound_satisfied", ok)?
                .counters(Counters {
                    bits: Some(r.transcript.total_bits),
                    ..nodes_and_cut(&g, Some(&p))?
                })
                .pass(exact && ok);
            em.emit(rep)?;
            Ok(if exact && ok { Status::Pass } else { Status::InvariantViolation })
        }
        ProtocolAlgo::ApspT => {
            let blocks = match (&loaded.partition, a.t) {
                (Some(p), 2) => BlockPartition::from_partition(p)?,
                _ => random_blocks(g.n(), a.t, &mut named_rng(ctx.seed, "protocol/blocks")),
            };
            let r = apsp_blackboard(&g, &blocks)?;
            let players: Vec<&PartyDistances> = r.players.iter().collect();
            let exact = rows_exact(&g, &players);
            let bound = r.bound();
            let ok = r.transcript.total_bits <= bound;
            let rep = em
                .report()
                .digest(digest)
                .field("t", a.t)?
                .field("outputs_digest", outputs_digest(&r.players)?)?
                .field("exact", exact)?
                .field("field_bits", r.field_bits)?
                .field("cut_edges", r.cut_edges)?
                .field("cut_nodes", r.cut_nodes)?
                .field("total_bits", r.transcript.total_bits)?
                .field("bound", bound)?
                .field("bound_satisfied", ok)?
                .counters(Counters {
                    bits: Some(r.transcript.total_bits),
                    nodes: Some(g.n()),
                    cut_size: Some(r.cut_edges),
                    rounds: None,
                })
                .pass(exact && ok);
            em.emit(rep)?;
            Ok(if exact && ok { Status::Pass } else { Status::InvariantViolation })
        }
        ProtocolAlgo::Simulate => {
            let p = need_partition()?;
            let bandwidth = a.bandwidth.unwrap_or_else(|| default_bandwidth(g.n()));
            let cfg = SimConfig::for_graph(&g, trial_seed(ctx.seed, "protocol/simulate", 0))
                .with_bandwidth(bandwidth)
                .with_exec(ctx.exec);
            match a.program {
                Algo::Ident => {
                    let inst = loaded.clone().into_instance()?;
                    inst.kind.expect(InstanceKind::Identical)?;
                    let (w, primes) = ident_parts(&inst);
                    let prog = ident_program(inst.params.k, w, primes);
                    simulate_report(em, &g, &p, &prog, &cfg, digest)
                }
                Algo::Flood => simulate_report(em, &g, &p, &flood_program(0), &cfg, digest),
            }
        }
    }
}

pub fn check_lemma(ctx: &Ctx, em: &mut Emitter, a: CheckLemmaArgs) -> Result<Status> {
    let mut spec = LemmaSpec::new(core_kind(a.kind), a.k);
    spec.c = a.c;
    spec.fault = a.inject_fault.map(|Fault::DropBinEdge| BuildFault::DropBinEdge);
    let sampling = match (a.exhaustive, a.sample, a.sparse) {
        (true, _, _) => Sampling::Exhaustive,
        (_, Some(count), _) => Sampling::Sample {
            count,
            seed: ctx.seed,
            density: a.density,
        },
        (_, _, Some(max_ones)) => Sampling::Sparse { max_ones },
        _ => bail!("choose --exhaustive, --sample N or --sparse S"),
    };
    let outcomes = sweep(&spec, sampling, ctx.exec)?;
    for o in &outcomes {
        if a.failures_only && o.holds {
            continue;
        }
        let r = em.report().field("kind", spec.kind)?.merge(o)?.pass(o.holds);
        em.emit(r)?;
    }
    let s = summarize(&spec, &outcomes);
    let pass = s.passed();
    let r = em
        .report()
        .field("summary", true)?
        .merge(spec)?
        .field("sampling", sampling)?
        .field("pairs", s.pairs)?
        .field("disj_true", s.disj_true)?
        .field("disj_false", s.disj_false)?
        .field("failures", s.failures.len())?
        .field("counterexample", s.failures.first())?
        .pass(pass);
    em.emit(r)?;
    Ok(if pass { Status::Pass } else { Status::Counterexample })
}

pub fn bench(ctx: &Ctx, em: &mut Emitter, a: BenchArgs) -> Result<Status> {
    let mut status = Status::Pass;
    match a.algo {
        BenchAlgo::Ident => {
            for &k in a.sizes.as_deref().unwrap_or(&[4, 8, 16]) {
                let w = identical_weight_bound(k);
                for t in 0..a.trials {
                    let mut rng = named_rng(ctx.seed, &format!("bench/ident/{k}/{t}"));
                    let x = random_clique_weights(k, w, &mut rng);
                    let inst = build_identical_subgraphs(k, &x, &x, Some(w))?;
                    let g = &inst.graph;
                    let (_, primes) = ident_parts(&inst);
                    let cfg = SimConfig::for_graph(g, rng.random()).with_exec(ctx.exec);
                    let bound = IdentDetect {
                        k,
                        w_bound: w,
                        primes: primes.clone(),
                    }
                    .round_bound(cfg.bandwidth_bits);
                    let (verdicts, trace) = identical_subgraphs_detect_with(&inst, &cfg, primes)?;
                    let d = g.diameter().ok_or(Error::Disconnected)?;
                    let pass = verdicts.iter().all(|v| v.identical) && trace.rounds_used <= bound.rounds(d);
                    if !pass {
                        status = status.worst(Status::InvariantViolation);
                    }
                    let r = em
                        .report()
                        .field("algo", "ident")?
                        .field("k", k)?
                        .field("bandwidth", cfg.bandwidth_bits)?
                        .field("diameter", d)?
                        .field("round_bound", bound)?
                        .field("bound_rounds", bound.rounds(d))?
                        .field("rounds_per_diameter", trace.rounds_used as f64 / d as f64)?
                        .counters(Counters {
                            rounds: Some(trace.rounds_used),
                            bits: Some(trace.total_bits()),
                            cut_size: Some(1),
                            nodes: Some(g.n()),
                        })
                        .pass(pass);
                    em.emit(r)?;
                }
            }
        }
        BenchAlgo::Apsp2 => {
            for &n in a.sizes.as_deref().unwrap_or(&[10, 20, 30, 40]) {
                for t in 0..a.trials {
                    let mut rng = named_rng(ctx.seed, &format!("bench/apsp2/{n}/{t}"));
                    let w_max = (n * n) as u64;
                    let g = random_connected_graph(n, 0.1, w_max, &mut rng);
                    let p = random_partition(n, &mut rng);
                    let r = apsp_two_party(&g, &p)?;
                    let exact = rows_exact(&g, &[&r.alice, &r.bob]);
                    let bound = r.bound();
                    let pass = exact && r.transcript.total_bits <= bound;
                    if !pass {
                        status = status.worst(Status::InvariantViolation);
                    }
                    let rep = em
                        .report()
                        .field("algo", "apsp2")?
                        .field("n", n)?
                        .field("cut_nodes", r.cut_nodes)?
                        .field("field_bits", r.field_bits)?
                        .field("bound", bound)?
                        .field("ratio", r.transcript.total_bits as f64 / bound.max(1) as f64)?
                        .field("exact", exact)?
                        .counters(Counters {
                            bits: Some(r.transcript.total_bits),
                            ..nodes_and_cut(&g, Some(&p))?
                        })
                        .pass(pass);
                    em.emit(rep)?;
                }
            }
        }
        BenchAlgo::Star => {
            for &n in a.sizes.as_deref().unwrap_or(&[8, 16, 32]) {
                for t in 0..a.trials {
                    let mut rng = named_rng(ctx.seed, &format!("bench/star/{n}/{t}"));
                    let x = BitString::random((n - 2) * star_batch_width(n), &mut rng);
                    let inst = build_apsp_star(n, &x)?;
                    let row = apsp_exact(&inst.graph).row(n - 1).to_vec();
                    let pass = decode_star_row(n, &row).as_ref() == Some(&x);
                    if !pass {
                        status = status.worst(Status::InvariantViolation);
                    }
                    let r = em
                        .report()
                        .field("algo", "star")?
                        .field("n", n)?
                        .field("x_bits", x.len())?
                        .field("decoded", pass)?
                        .counters(nodes_and_cut(&inst.graph, Some(&inst.partition))?)
                        .pass(pass);
                    em.emit(r)?;
                }
            }
        }
    }
    Ok(status)
}
