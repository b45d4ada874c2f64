//! Acceptance criteria, one PASS/FAIL line each. Exits nonzero if any fails.

use std::path::Path;
use std::process::Command;
use std::time::{Duration, Instant};

use num_bigint::BigInt;
use odometry_cli::{format_graph, recover_closed_loop, ClosedLoopReport};
use odometry_core::oracle::{default_cap, enumerate_closed_nb_walks, revealable_span};
use odometry_core::revealer::transfer_neighbor_walk;
use odometry_core::{
    extract_minimal_basis, fixtures, reveal_all, verify_certificate, Graph, Rational, Walk,
    WalkMatrix, WeightedGraph,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

struct Outcome {
    pass: bool,
    detail: String,
}

fn outcome(pass: bool, detail: impl Into<String>) -> Outcome {
    Outcome {
        pass,
        detail: detail.into(),
    }
}

fn random_min_degree_three(rng: &mut ChaCha8Rng) -> Graph {
    loop {
        let g = if rng.gen_bool(0.5) {
            let n = rng.gen_range(5..=20);
            fixtures::random_odometric(rng, n)
        } else {
            fixtures::random_composite(rng, 20)
        };
        if (5..=20).contains(&g.vertex_count()) {
            return g;
        }
    }
}

/// The graphs of the sufficiency run, with random rational weights.
fn sufficiency_graphs() -> Vec<WeightedGraph> {
    let mut rng = ChaCha8Rng::seed_from_u64(0x0D0_2024);
    (0..100)
        .map(|_| {
            let g = random_min_degree_three(&mut rng);
            fixtures::random_weights(&mut rng, g)
        })
        .collect()
}

fn criterion_1(graphs: &[WeightedGraph], reports: &mut Vec<(usize, ClosedLoopReport)>) -> Outcome {
    let mut runs = 0;
    let mut failures = Vec::new();
    for (i, g) in graphs.iter().enumerate() {
        for start in 0..g.graph().vertex_count() {
            runs += 1;
            match recover_closed_loop(g, start) {
                Ok(r) if r.recovered.as_slice() == g.weights() => reports.push((i, r)),
                Ok(_) => failures.push(format!("graph {i} start {start}: wrong weights")),
                Err(e) => failures.push(format!("graph {i} start {start}: {e}")),
            }
        }
    }
    let detail = match failures.first() {
        None => format!(
            "{} graphs, {runs} start vertices, all weights bit-exact",
            graphs.len()
        ),
        Some(first) => format!("{} of {runs} runs failed, first: {first}", failures.len()),
    };
    outcome(failures.is_empty(), detail)
}

fn criterion_2() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0002);
    let mut graphs: Vec<Graph> = vec![
        fixtures::cycle(3).graph().clone(),
        fixtures::cycle(5).graph().clone(),
        fixtures::subdivided_k4().graph().clone(),
    ];
    while graphs.len() < 63 {
        let n = rng.gen_range(3..=8);
        let p = rng.gen_range(0.1..0.6);
        let g = fixtures::random_connected(&mut rng, n, p);
        if g.min_degree().is_some_and(|d| d <= 2) {
            graphs.push(g);
        }
    }
    let mut bad = Vec::new();
    let mut degree_two_checks = 0;
    for (i, g) in graphs.iter().enumerate() {
        let low = g.low_degree_vertices();
        let x = low[0].0;
        let home = (0..g.vertex_count())
            .find(|&v| v != x)
            .expect("at least two vertices");
        let span = revealable_span(g, home, default_cap(g));
        if span.rank >= g.edge_count() {
            bad.push(format!(
                "graph {i}: rank {} of {}",
                span.rank,
                g.edge_count()
            ));
        }
        for &(v, d) in &low {
            if v == home {
                continue;
            }
            let edges: Vec<usize> = g.neighbors(v).iter().map(|&(_, e)| e).collect();
            let same = |a: usize, b: usize| span.span_basis.iter().all(|row| row[a] == row[b]);
            if d == 2 {
                degree_two_checks += 1;
                if !same(edges[0], edges[1]) {
                    bad.push(format!("graph {i}: rows at degree-2 vertex {v} differ"));
                }
            }
            if d == 1 && !span.zero_rows.contains(&edges[0]) {
                bad.push(format!("graph {i}: leaf edge at {v} is observed"));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!(
            "{} graphs (C3, C5, subdivided K4 + {} sampled), rank < |E| at cap 2|E|+3, {degree_two_checks} degree-2 row pairs identical",
            graphs.len(),
            graphs.len() - 3
        )
    } else {
        format!("{} violations, first: {}", bad.len(), bad[0])
    };
    outcome(bad.is_empty(), detail)
}

fn criterion_3(graphs: &[WeightedGraph], reports: &[(usize, ClosedLoopReport)]) -> Outcome {
    let mut total = 0;
    let mut unsound = 0;
    for (i, r) in reports {
        for cert in r.certificates.values() {
            total += 1;
            if !verify_certificate(graphs[*i].graph(), cert) {
                unsound += 1;
            }
        }
    }
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0003);
    let mutations = 1000;
    let mut flipped = 0;
    for _ in 0..mutations {
        let (i, r) = &reports[rng.gen_range(0..reports.len())];
        let certs: Vec<_> = r.certificates.values().collect();
        let mut cert = certs[rng.gen_range(0..certs.len())].clone();
        let delta = loop {
            let d: i64 = rng.gen_range(-3..=3);
            if d != 0 {
                break BigInt::from(d);
            }
        };
        let slot = rng.gen_range(0..=cert.terms.len());
        if slot == cert.terms.len() {
            cert.target_coefficient += delta;
        } else {
            cert.terms[slot].coefficient += delta;
        }
        if !verify_certificate(graphs[*i].graph(), &cert) {
            flipped += 1;
        }
    }
    let pass = unsound == 0 && total > 0 && flipped * 100 >= mutations * 99;
    outcome(
        pass,
        format!(
            "{total} certificates, {unsound} unsound; {flipped}/{mutations} mutations rejected"
        ),
    )
}

fn criterion_4() -> Outcome {
    let mut graphs = vec![
        ("K4".to_string(), fixtures::k4().graph().clone()),
        ("Petersen".to_string(), fixtures::petersen().graph().clone()),
        (
            "k4_bridge".to_string(),
            fixtures::k4_bridge().graph().clone(),
        ),
    ];
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0004);
    for k in 0..20 {
        graphs.push((format!("random {k}"), random_min_degree_three(&mut rng)));
    }
    let mut bad = Vec::new();
    for (name, g) in &graphs {
        let m = g.edge_count();
        let basis = match reveal_all(g, 0)
            .map_err(|e| e.to_string())
            .and_then(|r| r.flattened().map_err(|e| e.to_string()))
            .and_then(|c| extract_minimal_basis(g, &c).map_err(|e| e.to_string()))
        {
            Ok(b) => b,
            Err(e) => {
                bad.push(format!("{name}: {e}"));
                continue;
            }
        };
        let rank = WalkMatrix::build(g, &basis).map(|w| w.rank()).unwrap_or(0);
        if basis.len() != m || rank != m {
            bad.push(format!(
                "{name}: {} walks of rank {rank}, |E| = {m}",
                basis.len()
            ));
            continue;
        }
        for skip in 0..m {
            let rest: Vec<Walk> = basis
                .iter()
                .enumerate()
                .filter(|&(i, _)| i != skip)
                .map(|(_, w)| w.clone())
                .collect();
            if WalkMatrix::build(g, &rest).map(|w| w.rank()).unwrap_or(m) != m - 1 {
                bad.push(format!("{name}: dropping walk {skip} keeps full rank"));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!(
            "{} graphs, every basis has |E| walks of rank |E| and is minimal",
            graphs.len()
        )
    } else {
        format!("{} failures, first: {}", bad.len(), bad[0])
    };
    outcome(bad.is_empty(), detail)
}

fn criterion_5(graphs: &[WeightedGraph], reports: &[(usize, ClosedLoopReport)]) -> Outcome {
    let two = Rational::from_integer(BigInt::from(2));
    let mut identities = 0usize;
    let mut edge_identities = 0usize;
    let mut composites = 0usize;
    let mut bad = Vec::new();
    for (i, r) in reports {
        let g = &graphs[*i];
        for d in &r.doublings {
            identities += 1;
            let Ok((once, twice)) = d.closed_walks() else {
                bad.push(format!("graph {i}: doubling does not compose"));
                continue;
            };
            composites += 2;
            if !(g.graph().is_valid_nb_walk(&once) && g.graph().is_valid_nb_walk(&twice)) {
                bad.push(format!("graph {i}: backtracking composite {once}"));
                continue;
            }
            let lhs = &two * g.walk_weight(&d.approach).unwrap();
            let rhs = &two * g.walk_weight(&once).unwrap() - g.walk_weight(&twice).unwrap();
            if lhs != rhs {
                bad.push(format!("graph {i}: identity fails for {}", d.approach));
            }
            if d.approach.len() == 1 {
                edge_identities += 1;
            }
        }
        for cert in r.certificates.values() {
            for w in cert.walks() {
                composites += 1;
                if !g.graph().is_valid_nb_walk(w) {
                    bad.push(format!("graph {i}: certificate walk {w} backtracks"));
                }
            }
        }
    }
    let pass = bad.is_empty() && identities > 0 && edge_identities > 0;
    let detail = if bad.is_empty() {
        format!("{identities} doublings ({edge_identities} on single edges) hold exactly, {composites} composite walks valid")
    } else {
        format!("{} failures, first: {}", bad.len(), bad[0])
    };
    outcome(pass, detail)
}

fn criterion_6() -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0006);
    let mut bad = Vec::new();
    let mut counts = [0usize; 3];
    let mut done = 0;
    while done < 1000 {
        let topology = random_min_degree_three(&mut rng);
        let g = fixtures::random_weights(&mut rng, topology);
        for _ in 0..10 {
            let home = rng.gen_range(0..g.graph().vertex_count());
            let nbrs = g.graph().neighbors(home);
            let (u, f) = nbrs[rng.gen_range(0..nbrs.len())];
            let walks = enumerate_closed_nb_walks(g.graph(), u, 7);
            if walks.is_empty() {
                continue;
            }
            let w = &walks[rng.gen_range(0..walks.len())];
            done += 1;
            match transfer_neighbor_walk(g.graph(), home, u, f, w) {
                Ok((moved, eps)) => {
                    let idx = match eps {
                        -2 => 0,
                        0 => 1,
                        2 => 2,
                        _ => {
                            bad.push(format!("epsilon {eps} for {w}"));
                            continue;
                        }
                    };
                    counts[idx] += 1;
                    let valid = g.graph().is_valid_nb_walk(&moved)
                        && moved.is_closed()
                        && moved.first() == home;
                    let shift = g.weight(f) * Rational::from_integer(BigInt::from(eps));
                    if !valid || g.walk_weight(&moved).unwrap() != g.walk_weight(w).unwrap() + shift
                    {
                        bad.push(format!("{w} -> {moved}"));
                    }
                }
                Err(e) => bad.push(format!("{w}: {e}")),
            }
        }
    }
    let detail = if bad.is_empty() {
        format!(
            "{done} instances exact (epsilon -2: {}, 0: {}, 2: {})",
            counts[0], counts[1], counts[2]
        )
    } else {
        format!("{} failures, first: {}", bad.len(), bad[0])
    };
    outcome(bad.is_empty(), detail)
}

fn run_binary(args: &[&str]) -> (i32, Vec<u8>) {
    let out = Command::new(env!("CARGO_BIN_EXE_odometry"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().unwrap_or(-1), out.stdout)
}

fn criterion_7(dir: &Path) -> Outcome {
    let mut rng = ChaCha8Rng::seed_from_u64(0x5EED_0007);
    let petersen = fixtures::random_weights(&mut rng, fixtures::petersen().graph().clone());
    let topology = fixtures::random_composite(&mut rng, 16);
    let composite = fixtures::random_weights(&mut rng, topology);
    let files = [
        ("k4", fixtures::k4()),
        ("bridge", fixtures::k4_bridge()),
        ("petersen", petersen),
        ("composite", composite),
    ];
    let mut compared = 0;
    let mut bad = Vec::new();
    for (name, g) in &files {
        let path = dir.join(format!("{name}.graph"));
        std::fs::write(&path, format_graph(g)).expect("temp file");
        let p = path.to_str().expect("utf-8 temp path");
        let invocations: [&[&str]; 4] = [
            &["reveal", p, "--start", "0"],
            &["reveal", p, "--start", "1", "--minimal", "--format", "json"],
            &["reveal", p, "--start", "2", "--minimal"],
            &["recover", p, "--start", "0"],
        ];
        for args in invocations {
            let first = run_binary(args);
            let second = run_binary(args);
            compared += 1;
            if first != second || first.0 != 0 || first.1.is_empty() {
                bad.push(format!("{name}: {}", args.join(" ")));
            }
        }
    }
    let detail = if bad.is_empty() {
        format!("{compared} invocations byte-identical across two processes")
    } else {
        format!("{} differ, first: {}", bad.len(), bad[0])
    };
    outcome(bad.is_empty(), detail)
}

fn report(number: usize, name: &str, elapsed: Duration, o: &Outcome) {
    let verdict = if o.pass { "PASS" } else { "FAIL" };
    println!(
        "[{verdict}] criterion {number} ({name}, {:.1}s): {}",
        elapsed.as_secs_f64(),
        o.detail
    );
}

fn main() {
    let dir = tempfile::tempdir().expect("temp dir");
    let graphs = sufficiency_graphs();
    let mut reports = Vec::new();
    let mut all = true;

    let mut timed = |number: usize, name: &str, f: &mut dyn FnMut() -> Outcome| {
        let t = Instant::now();
        let o = f();
        report(number, name, t.elapsed(), &o);
        all &= o.pass;
    };
    timed(1, "constructive sufficiency", &mut || {
        criterion_1(&graphs, &mut reports)
    });
    timed(2, "low-degree necessity", &mut criterion_2);
    timed(3, "certificate soundness", &mut || {
        criterion_3(&graphs, &reports)
    });
    timed(4, "minimal measuring sets", &mut criterion_4);
    timed(5, "doubling identities", &mut || {
        criterion_5(&graphs, &reports)
    });
    timed(6, "neighbor transfer", &mut criterion_6);
    timed(7, "determinism", &mut || criterion_7(dir.path()));

    if !all {
        std::process::exit(1);
    }
}
