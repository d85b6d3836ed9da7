//! Acceptance suite: one PASS/FAIL line per criterion. Run with
//! `cargo test --test acceptance -- --nocapture` to see the report.

mod common;

use std::alloc::{GlobalAlloc, Layout, System};
use std::collections::HashSet;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::time::{Duration, Instant};

use common::{
    all_assignments, catalog, extension_mismatches, random_forbidden, random_graphs, random_query,
    run_po, run_refined, run_simple, sorted, ExtensionOracles,
};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use rdfenum::graph::{gen_c5_power, gen_null, gen_random, gen_star, Graph};
use rdfenum::oracle::BruteOracle;
use rdfenum::refined::{enumerate_minimal_rdf_refined_with, RefinedOptions};
use rdfenum::stats::REFINED_BASE;
use rdfenum::{
    enumerate_minimal_rdf_refined, ext_rd, is_minimal_rdf, Assignment, EnumStats, Order, VertexSet,
};

/// Tracks live and peak heap bytes so the bounded-memory check can measure
/// what the enumerator itself holds.
struct CountingAlloc;

static LIVE: AtomicUsize = AtomicUsize::new(0);
static PEAK: AtomicUsize = AtomicUsize::new(0);

unsafe impl GlobalAlloc for CountingAlloc {
    unsafe fn alloc(&self, layout: Layout) -> *mut u8 {
        let p = System.alloc(layout);
        if !p.is_null() {
            let live = LIVE.fetch_add(layout.size(), Ordering::Relaxed) + layout.size();
            PEAK.fetch_max(live, Ordering::Relaxed);
        }
        p
    }

    unsafe fn dealloc(&self, ptr: *mut u8, layout: Layout) {
        System.dealloc(ptr, layout);
        LIVE.fetch_sub(layout.size(), Ordering::Relaxed);
    }
}

#[global_allocator]
static ALLOC: CountingAlloc = CountingAlloc;

#[derive(Default)]
struct Report {
    lines: Vec<String>,
    failed: Vec<usize>,
}

impl Report {
    fn record(&mut self, criterion: usize, title: &str, problems: &[String], summary: String) {
        let verdict = if problems.is_empty() { "PASS" } else { "FAIL" };
        let mut lines = vec![format!(
            "criterion {criterion} [{verdict}] {title}: {summary}"
        )];
        lines.extend(problems.iter().take(10).map(|p| format!("    {p}")));
        for line in lines {
            println!("{line}");
            self.lines.push(line);
        }
        if !problems.is_empty() {
            self.failed.push(criterion);
        }
    }
}

/// Delay and tree-size observations shared by criteria 5 and 7.
#[derive(Default)]
struct Observations {
    /// (label, n, max_gap) of every tree-based run.
    gaps: Vec<(String, usize, u64)>,
    /// (label, n, max_gap) of subset-walk runs, reported only.
    subset_gaps: Vec<(String, usize, u64)>,
    /// (label, n, tree_nodes) of refined runs.
    trees: Vec<(String, usize, u64)>,
}

impl Observations {
    fn refined(&mut self, label: &str, n: usize, stats: &EnumStats) {
        self.gaps
            .push((format!("refined {label}"), n, stats.max_gap));
        self.trees.push((label.to_string(), n, stats.tree_nodes));
    }

    fn po(&mut self, label: &str, n: usize, stats: &EnumStats) {
        self.gaps.push((format!("po {label}"), n, stats.max_gap));
    }

    fn simple(&mut self, label: &str, n: usize, stats: &EnumStats) {
        self.subset_gaps
            .push((format!("simple {label}"), n, stats.max_gap));
    }
}

fn timed<T>(f: impl FnOnce() -> T) -> (T, Duration) {
    let start = Instant::now();
    let out = f();
    (out, start.elapsed())
}

fn criterion_1(report: &mut Report, obs: &mut Observations) {
    let mut problems = Vec::new();
    let mut summary = Vec::new();
    let limit = Duration::from_secs(60);
    for c in 1..=3 {
        let g = gen_c5_power(c);
        let n = g.order();
        let expected = 16usize.pow(c as u32);
        let label = format!("c5pow{c}");

        let ((simple, s_stats), t_simple) = timed(|| run_simple(&g));
        obs.simple(&label, n, &s_stats);
        let ((refined, r_stats), t_refined) = timed(|| run_refined(&g));
        obs.refined(&label, n, &r_stats);
        let mut runs = vec![
            ("simple", simple.len(), t_simple),
            ("refined", refined.len(), t_refined),
        ];
        if c <= 2 {
            let (oracle, t_oracle) =
                timed(|| BruteOracle::new(&g, Order::Standard).unwrap().count());
            runs.push(("oracle", oracle, t_oracle));
        }
        for (mode, count, time) in runs {
            if count != expected {
                problems.push(format!(
                    "{label} {mode}: {count} solutions, expected {expected}"
                ));
            }
            if time > limit {
                problems.push(format!("{label} {mode}: took {time:?}"));
            }
            summary.push(format!(
                "{label}/{mode}={count} ({:.0}ms)",
                time.as_secs_f64() * 1e3
            ));
        }
    }
    report.record(
        1,
        "exact counts on c5pow 1..3",
        &problems,
        summary.join(" "),
    );
}

fn criterion_2(report: &mut Report, obs: &mut Observations) {
    let mut problems = Vec::new();
    for rays in 2..=8 {
        let g = gen_star(rays).unwrap();
        let (out, stats) = run_po(&g);
        obs.po(&format!("K1,{rays}"), g.order(), &stats);
        let expected = (1 << rays) + 1;
        let unique: HashSet<String> = out.iter().map(|f| f.to_string()).collect();
        if out.len() != expected || unique.len() != expected {
            problems.push(format!(
                "K1,{rays}: {} solutions ({} distinct), expected {expected}",
                out.len(),
                unique.len()
            ));
        }
    }
    for n in 1..=10 {
        let g = gen_null(n);
        let (out, stats) = run_po(&g);
        obs.po(&format!("null{n}"), n, &stats);
        if out.len() != 1 << n {
            problems.push(format!(
                "null{n}: {} solutions, expected {}",
                out.len(),
                1 << n
            ));
        }
    }
    report.record(
        2,
        "PO counts",
        &problems,
        "K1,n for n=2..8 gives 2^n+1; null graphs of order 1..10 give 2^n".into(),
    );
}

fn criterion_3(report: &mut Report, obs: &mut Observations) {
    let mut graphs = catalog(6);
    let catalog_len = graphs.len();
    graphs.extend(random_graphs(240, 8, 2024));
    let mut problems = Vec::new();
    let mut solutions = 0;

    for (i, g) in graphs.iter().enumerate() {
        let n = g.order();
        let label = format!("#{i}");
        let expected = BruteOracle::new(g, Order::Standard).unwrap().minimal_rdfs();
        let (simple, s_stats) = run_simple(g);
        let (refined, r_stats) = run_refined(g);
        obs.simple(&label, n, &s_stats);
        obs.refined(&label, n, &r_stats);
        solutions += expected.len();

        for (mode, out) in [("simple", &simple), ("refined", &refined)] {
            if sorted(out.clone()) != expected {
                problems.push(format!("{mode} differs from oracle on {g:?}"));
            }
            for f in out {
                if !is_minimal_rdf(g, f) {
                    problems.push(format!("{mode} output {f} fails the checker on {g:?}"));
                }
                if 2 * f.level(2).len() > n {
                    problems.push(format!("{mode} output {f} has 2|V2| > n on {g:?}"));
                }
            }
        }

        let po_expected = BruteOracle::new(g, Order::Po).unwrap().minimal_rdfs();
        let (po, p_stats) = run_po(g);
        obs.po(&label, n, &p_stats);
        if sorted(po) != po_expected {
            problems.push(format!("po differs from oracle on {g:?}"));
        }
    }
    report.record(
        3,
        "oracle equivalence",
        &problems,
        format!(
            "{} graphs ({catalog_len} connected n<=6, {} random n<=8), {solutions} minimal rdfs",
            graphs.len(),
            graphs.len() - catalog_len
        ),
    );
}

fn criterion_4(report: &mut Report) {
    let mut rng = ChaCha8Rng::seed_from_u64(4);
    let mut problems = Vec::new();
    let mut exhaustive = 0;
    for g in catalog(5) {
        let oracles = ExtensionOracles::new(&g);
        let none = VertexSet::new(g.order());
        for f in all_assignments(g.order()) {
            let forbidden = random_forbidden(&f, &mut rng);
            problems.extend(extension_mismatches(&g, &oracles, &f, &none));
            problems.extend(extension_mismatches(&g, &oracles, &f, &forbidden));
            exhaustive += 1;
        }
    }

    let mut graphs = catalog(6);
    graphs.extend(random_graphs(100, 8, 77));
    let mut sampled = 0;
    while sampled < 1200 {
        for g in &graphs {
            let oracles = ExtensionOracles::new(g);
            for _ in 0..4 {
                let (f, forbidden) = random_query(g.order(), &mut rng);
                problems.extend(extension_mismatches(g, &oracles, &f, &forbidden));
                sampled += 1;
            }
        }
    }
    report.record(
        4,
        "extension correctness",
        &problems,
        format!("{exhaustive} exhaustive assignments (n<=5, with and without forbidden sets), {sampled} sampled pairs (n<=8), 4 solvers each"),
    );
}

fn criterion_5(report: &mut Report, obs: &Observations) {
    let problems: Vec<String> = obs
        .gaps
        .iter()
        .filter(|(_, n, gap)| *gap > 2 * *n as u64)
        .map(|(label, n, gap)| format!("{label}: max_gap {gap} > 2n = {}", 2 * n))
        .collect();
    let worst = obs
        .gaps
        .iter()
        .map(|(_, n, gap)| *gap as f64 / (2 * *n).max(1) as f64)
        .fold(0.0, f64::max);
    let subset_worst = obs.subset_gaps.iter().max_by(|a, b| {
        (a.2 as f64 / a.1.max(1) as f64).total_cmp(&(b.2 as f64 / b.1.max(1) as f64))
    });
    let mut summary = format!(
        "{} refined/po runs, worst max_gap/(2n) = {worst:.2}",
        obs.gaps.len()
    );
    if let Some((label, n, gap)) = subset_worst {
        summary.push_str(&format!(
            "; subset walk (no delay guarantee, not asserted) worst: {label} n={n} max_gap={gap}"
        ));
    }
    report.record(5, "delay bound", &problems, summary);
}

fn criterion_6(report: &mut Report) {
    let g = gen_c5_power(3);
    let mut problems = Vec::new();
    let mut seen = HashSet::with_capacity(8192);
    let mut emitted = 0;
    let stats = enumerate_minimal_rdf_refined(&g, |f| {
        emitted += 1;
        if !seen.insert(f.to_string()) {
            problems.push(format!("duplicate {f}"));
        }
    });
    if emitted != 4096 || seen.len() != 4096 || stats.solutions != 4096 {
        problems.push(format!(
            "{emitted} emitted, {} distinct, expected 4096",
            seen.len()
        ));
    }

    // Peak heap held by the enumerator while outputs are discarded.
    let store_bytes = 4096 * std::mem::size_of::<Assignment>();
    let peak = |c| {
        let g = gen_c5_power(c);
        let base = LIVE.load(Ordering::Relaxed);
        PEAK.store(base, Ordering::Relaxed);
        let mut count = 0;
        enumerate_minimal_rdf_refined(&g, |_| count += 1);
        PEAK.load(Ordering::Relaxed).saturating_sub(base)
    };
    let (p2, p3) = (peak(2), peak(3));
    if p3 >= store_bytes {
        problems.push(format!(
            "peak heap {p3} B on c5pow3 is at least a 4096-entry store ({store_bytes} B)"
        ));
    }
    if p3 > 4 * p2.max(1024) {
        problems.push(format!(
            "peak heap grew from {p2} B (n=10) to {p3} B (n=15)"
        ));
    }
    report.record(
        6,
        "no duplicates, bounded memory",
        &problems,
        format!(
            "4096 distinct outputs on c5pow3; peak enumerator heap {p2} B (n=10), {p3} B (n=15)"
        ),
    );
}

fn criterion_7(report: &mut Report, obs: &mut Observations) {
    // Larger instances up to n = 20 on top of the runs from criteria 1 and 3.
    let mut rng = ChaCha8Rng::seed_from_u64(7);
    for n in 12..=20 {
        for _ in 0..2 {
            let p = rng.gen_range(0.1..0.5);
            let g = gen_random(n, p, rng.gen()).unwrap();
            let opts = RefinedOptions {
                assert_invariants: n <= 16,
                ..Default::default()
            };
            let stats = enumerate_minimal_rdf_refined_with(&g, opts, |_| {});
            obs.refined(&format!("random n={n} p={p:.2}"), n, &stats);
        }
    }
    let g = gen_c5_power(4);
    let stats = enumerate_minimal_rdf_refined(&g, |_| {});
    obs.refined("c5pow4", g.order(), &stats);

    let bound = |n: usize| 50.0 * REFINED_BASE.powi(n as i32);
    let problems: Vec<String> = obs
        .trees
        .iter()
        .filter(|(_, n, nodes)| *n <= 20 && *nodes as f64 > bound(*n))
        .map(|(label, n, nodes)| format!("{label}: {nodes} tree nodes > {:.0}", bound(*n)))
        .collect();
    let worst = obs
        .trees
        .iter()
        .map(|(_, n, nodes)| *nodes as f64 / REFINED_BASE.powi(*n as i32))
        .fold(0.0, f64::max);
    report.record(
        7,
        "tree size",
        &problems,
        format!(
            "{} refined runs, worst tree_nodes/1.9332^n = {worst:.3} (limit 50)",
            obs.trees.len()
        ),
    );
}

fn criterion_8(report: &mut Report) {
    let mut problems = Vec::new();
    let mut per_call = Vec::new();
    for (i, n) in [200usize, 400, 800].into_iter().enumerate() {
        let g: Graph = gen_random(n, 4.0 / n as f64, 800 + i as u64).unwrap();
        let mut rng = ChaCha8Rng::seed_from_u64(n as u64);
        // Half arbitrary sparse inputs, half lowerings of a minimal rdf (always YES).
        let mut inputs: Vec<Assignment> = (0..32)
            .map(|_| {
                let values = (0..n)
                    .map(|_| match rng.gen_range(0..10) {
                        0 => 2,
                        1 => 1,
                        _ => 0,
                    })
                    .collect();
                Assignment::new(values).unwrap()
            })
            .collect();
        while inputs.len() < 64 {
            let seed = (0..n)
                .map(|_| if rng.gen_range(0..50) == 0 { 2 } else { 0 })
                .collect();
            let Some(w) = ext_rd(&g, &Assignment::new(seed).unwrap()) else {
                continue;
            };
            let lowered = w.values().iter().map(|&x| {
                if rng.gen_bool(0.5) {
                    x
                } else {
                    rng.gen_range(0..=x)
                }
            });
            inputs.push(Assignment::new(lowered.collect()).unwrap());
        }

        let start = Instant::now();
        let mut calls = 0u64;
        let mut yes = 0u64;
        while start.elapsed() < Duration::from_millis(200) || calls < inputs.len() as u64 {
            let f = &inputs[calls as usize % inputs.len()];
            yes += ext_rd(&g, f).is_some() as u64;
            calls += 1;
            if start.elapsed() > Duration::from_secs(30) {
                problems.push(format!("n={n}: over 30 s"));
                break;
            }
        }
        let avg = start.elapsed().as_secs_f64() / calls as f64;
        per_call.push((n, avg, calls, yes));
    }
    let mut summary = Vec::new();
    for w in per_call.windows(2) {
        let ratio = w[1].1 / w[0].1;
        if ratio > 10.0 {
            problems.push(format!(
                "n={} -> n={}: time ratio {ratio:.2} > 10",
                w[0].0, w[1].0
            ));
        }
        summary.push(format!("ratio {}->{} = {ratio:.2}", w[0].0, w[1].0));
    }
    for (n, avg, calls, yes) in &per_call {
        summary.push(format!(
            "n={n}: {:.1}us/call over {calls} calls ({yes} yes)",
            avg * 1e6
        ));
    }
    report.record(8, "extension scalability", &problems, summary.join(", "));
}

#[test]
fn acceptance() {
    let mut report = Report::default();
    let mut obs = Observations::default();

    criterion_1(&mut report, &mut obs);
    criterion_2(&mut report, &mut obs);
    criterion_3(&mut report, &mut obs);
    criterion_4(&mut report);
    criterion_5(&mut report, &obs);
    criterion_6(&mut report);
    criterion_7(&mut report, &mut obs);
    criterion_8(&mut report);

    assert!(
        report.failed.is_empty(),
        "failed criteria {:?}:\n{}",
        report.failed,
        report.lines.join("\n")
    );
}
