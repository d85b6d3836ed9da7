#![allow(dead_code)]

use std::collections::HashSet;

use rand::Rng;
use rdfenum::graph::{gen_random, Graph};
use rdfenum::oracle::BruteOracle;
use rdfenum::rdf::{is_minimal, leq};
use rdfenum::refined::{enumerate_minimal_rdf_refined_with, RefinedOptions};
use rdfenum::{
    enumerate_minimal_rdf_simple, enumerate_po_minimal_simple, ext_po_rd, ext_rd, gen_ext_po_rd,
    gen_ext_rd, Assignment, EnumStats, ExtensionInstance, Order, VertexSet,
};

/// Every connected graph on `n` vertices, one per isomorphism class.
pub fn connected_graphs(n: usize) -> Vec<Graph> {
    let pairs: Vec<(usize, usize)> = (0..n)
        .flat_map(|u| (u + 1..n).map(move |v| (u, v)))
        .collect();
    let perms = permutations(n);
    let mut seen = HashSet::new();
    let mut out = Vec::new();
    for mask in 0u32..(1 << pairs.len()) {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|(i, _)| mask >> i & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        if !is_connected(n, &edges) {
            continue;
        }
        let canon = perms
            .iter()
            .map(|p| {
                let mut key: Vec<(usize, usize)> = edges
                    .iter()
                    .map(|&(u, v)| (p[u].min(p[v]), p[u].max(p[v])))
                    .collect();
                key.sort_unstable();
                key
            })
            .min()
            .unwrap_or_default();
        if seen.insert(canon) {
            out.push(Graph::from_edges(n, edges).unwrap());
        }
    }
    out
}

/// Connected catalog for all orders 1..=max_n.
pub fn catalog(max_n: usize) -> Vec<Graph> {
    (1..=max_n).flat_map(connected_graphs).collect()
}

/// Seeded random graphs with orders 1..=max_n and varying density.
pub fn random_graphs(count: usize, max_n: usize, seed: u64) -> Vec<Graph> {
    (0..count)
        .map(|i| {
            let n = 1 + i % max_n;
            let p = [0.15, 0.3, 0.5, 0.7][i % 4];
            gen_random(n, p, seed.wrapping_add(i as u64)).unwrap()
        })
        .collect()
}

fn permutations(n: usize) -> Vec<Vec<usize>> {
    if n == 0 {
        return vec![vec![]];
    }
    let mut out = Vec::new();
    for p in permutations(n - 1) {
        for i in 0..=p.len() {
            let mut q = p.clone();
            q.insert(i, n - 1);
            out.push(q);
        }
    }
    out
}

fn is_connected(n: usize, edges: &[(usize, usize)]) -> bool {
    if n == 0 {
        return true;
    }
    let mut reached = vec![false; n];
    reached[0] = true;
    let mut changed = true;
    while changed {
        changed = false;
        for &(u, v) in edges {
            if reached[u] != reached[v] {
                reached[u] = true;
                reached[v] = true;
                changed = true;
            }
        }
    }
    reached.into_iter().all(|r| r)
}

pub fn run_simple(g: &Graph) -> (Vec<Assignment>, EnumStats) {
    let mut out = Vec::new();
    let stats = enumerate_minimal_rdf_simple(g, |f| out.push(f.clone()));
    (out, stats)
}

pub fn run_refined(g: &Graph) -> (Vec<Assignment>, EnumStats) {
    let mut out = Vec::new();
    let opts = RefinedOptions {
        assert_invariants: true,
        ..Default::default()
    };
    let stats = enumerate_minimal_rdf_refined_with(g, opts, |f| out.push(f.clone()));
    (out, stats)
}

pub fn run_po(g: &Graph) -> (Vec<Assignment>, EnumStats) {
    let mut out = Vec::new();
    let stats = enumerate_po_minimal_simple(g, |f| out.push(f.clone()));
    (out, stats)
}

pub fn sorted(mut v: Vec<Assignment>) -> Vec<Assignment> {
    v.sort_by_key(|f| f.to_string());
    v
}

/// Oracles for both orders on one graph.
pub struct ExtensionOracles {
    pub standard: BruteOracle,
    pub po: BruteOracle,
}

impl ExtensionOracles {
    pub fn new(g: &Graph) -> Self {
        ExtensionOracles {
            standard: BruteOracle::new(g, Order::Standard).unwrap(),
            po: BruteOracle::new(g, Order::Po).unwrap(),
        }
    }
}

/// Runs all four extension solvers on `(f, forbidden)` and describes every
/// disagreement with the oracles or invalid witness.
pub fn extension_mismatches(
    g: &Graph,
    oracles: &ExtensionOracles,
    f: &Assignment,
    forbidden: &VertexSet,
) -> Vec<String> {
    let none = VertexSet::new(g.order());
    let inst = ExtensionInstance::new(g, f.clone(), forbidden.clone()).unwrap();
    let runs = [
        ("ext_rd", Order::Standard, &none, ext_rd(g, f)),
        ("gen_ext_rd", Order::Standard, forbidden, gen_ext_rd(&inst)),
        ("ext_po_rd", Order::Po, &none, ext_po_rd(g, f)),
        ("gen_ext_po_rd", Order::Po, forbidden, gen_ext_po_rd(&inst)),
    ];
    let mut problems = Vec::new();
    for (name, order, forb, answer) in runs {
        let oracle = match order {
            Order::Standard => &oracles.standard,
            Order::Po => &oracles.po,
        };
        let expected = oracle.extends(f, forb);
        let context = || {
            format!(
                "{name} on {:?} with f={f}, forbidden={:?}",
                g,
                forb.iter().collect::<Vec<_>>()
            )
        };
        match answer {
            Some(w) if !expected => {
                problems.push(format!("{}: said YES ({w}), oracle says NO", context()))
            }
            None if expected => problems.push(format!("{}: said NO, oracle says YES", context())),
            Some(w) => {
                if !is_minimal(g, &w, order) {
                    problems.push(format!("{}: witness {w} is not minimal", context()));
                }
                if !leq(f, &w, order) {
                    problems.push(format!("{}: witness {w} is not above f", context()));
                }
                if !w.level(2).is_disjoint(forb) {
                    problems.push(format!(
                        "{}: witness {w} uses a forbidden vertex",
                        context()
                    ));
                }
            }
            None => {}
        }
    }
    problems
}

/// All 3^n assignments of length n.
pub fn all_assignments(n: usize) -> Vec<Assignment> {
    let mut out = Vec::new();
    let mut digits = vec![0u8; n];
    loop {
        out.push(Assignment::new(digits.clone()).unwrap());
        match digits.iter().position(|&d| d < 2) {
            Some(i) => {
                digits[..i].iter_mut().for_each(|d| *d = 0);
                digits[i] += 1;
            }
            None => return out,
        }
    }
}

/// A random assignment and a random forbidden set disjoint from its 2-vertices.
pub fn random_query(n: usize, rng: &mut impl Rng) -> (Assignment, VertexSet) {
    let values: Vec<u8> = (0..n).map(|_| rng.gen_range(0..3)).collect();
    let forbidden =
        VertexSet::from_vertices(n, (0..n).filter(|&v| values[v] != 2 && rng.gen_bool(0.3)));
    (Assignment::new(values).unwrap(), forbidden)
}

/// Random subset of the non-2 vertices of `f`.
pub fn random_forbidden(f: &Assignment, rng: &mut impl Rng) -> VertexSet {
    VertexSet::from_vertices(
        f.len(),
        (0..f.len()).filter(|&v| f.get(v) != 2 && rng.gen_bool(0.4)),
    )
}
