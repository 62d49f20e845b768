#![allow(dead_code)]

use std::path::PathBuf;

use ssc_core::document::{parse_document, NetworkDocument};
use ssc_core::{decompose, PactusDecomposition, StructuredNetwork};

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("fixtures")
        .join(name)
}

pub fn document(name: &str) -> NetworkDocument {
    let text = std::fs::read_to_string(fixture_path(name)).unwrap();
    parse_document(&text).unwrap()
}

pub fn network(name: &str) -> StructuredNetwork {
    document(name).to_network().unwrap()
}

pub fn decomposition(name: &str) -> (StructuredNetwork, PactusDecomposition) {
    let doc = document(name);
    let net = doc.to_network().unwrap();
    let dec = decompose(&net, doc.decomposition.as_deref()).unwrap();
    (net, dec)
}

pub const FIXTURES: &[&str] = &[
    "fig1a.json",
    "fig1b.json",
    "fig2a.json",
    "fig2b.json",
    "fig3.json",
    "fig3-state-only.json",
    "fig5.json",
    "k4.json",
    "single-cycle.json",
    "single-node.json",
    "single-path.json",
];

use rand::seq::SliceRandom;
use rand::Rng;
use ssc_core::{build_network, ComponentKind, ComponentSeed};

/// Random tree on `n` nodes labelled 1..=n (random recursive tree).
pub fn random_tree_edges<R: Rng>(rng: &mut R, n: u32) -> Vec<(u32, u32)> {
    (2..=n).map(|v| (rng.gen_range(1..v), v)).collect()
}

pub fn path_edges(n: u32) -> Vec<(u32, u32)> {
    (1..n).map(|v| (v, v + 1)).collect()
}

pub fn cycle_edges(n: u32) -> Vec<(u32, u32)> {
    let mut e = path_edges(n);
    e.push((1, n));
    e
}

/// `k` inputs u1..uk on random targets (repeats allowed).
pub fn random_inputs<R: Rng>(rng: &mut R, n: u32, k: u32) -> Vec<(u32, u32)> {
    (1..=k).map(|u| (u, rng.gen_range(1..=n))).collect()
}

/// Random pactus with at most `max_nodes` nodes and `max_components`
/// components, labels shuffled, returned with its seed decomposition.
pub fn random_pactus<R: Rng>(
    rng: &mut R,
    max_nodes: usize,
    max_components: usize,
) -> (StructuredNetwork, Vec<ComponentSeed>) {
    let m = rng.gen_range(1..=max_components);
    let mut sizes = Vec::new();
    let mut total = 0;
    for _ in 0..m {
        let room = max_nodes - total;
        if room == 0 {
            break;
        }
        let cycle = room >= 3 && rng.gen_bool(0.5);
        let (kind, size) = if cycle {
            (ComponentKind::Cycle, rng.gen_range(3..=room.min(6)))
        } else {
            (ComponentKind::Path, rng.gen_range(1..=room.min(5)))
        };
        sizes.push((kind, size));
        total += size;
    }
    let mut labels: Vec<u32> = (1..=total as u32).collect();
    labels.shuffle(rng);

    let mut comps: Vec<Vec<u32>> = Vec::new();
    let mut edges = Vec::new();
    let mut next = 0;
    for &(kind, size) in &sizes {
        let nodes = labels[next..next + size].to_vec();
        next += size;
        for w in nodes.windows(2) {
            edges.push((w[0], w[1]));
        }
        if kind == ComponentKind::Cycle {
            edges.push((nodes[0], nodes[size - 1]));
        }
        comps.push(nodes);
    }

    let mut pairs = Vec::new();
    for j in 1..comps.len() {
        pairs.push((rng.gen_range(0..j), j));
    }
    for i in 0..comps.len() {
        for j in i + 1..comps.len() {
            if !pairs.contains(&(i, j)) && rng.gen_bool(0.2) {
                pairs.push((i, j));
            }
        }
    }
    for (i, j) in pairs {
        let cap = comps[i].len().min(comps[j].len()).min(3);
        let count = rng.gen_range(1..=cap);
        let mut a = comps[i].clone();
        let mut b = comps[j].clone();
        a.shuffle(rng);
        b.shuffle(rng);
        for k in 0..count {
            edges.push((a[k], b[k]));
        }
    }

    let net = build_network(&labels, &edges, &[]).unwrap();
    let seeds = sizes
        .iter()
        .zip(comps)
        .map(|(&(kind, _), nodes)| ComponentSeed { nodes, kind })
        .collect();
    (net, seeds)
}

/// Random SSC network: a random tree or a cycle, with random inputs added
/// until it is SSC.
pub fn random_ssc_network<R: Rng>(rng: &mut R, n: u32) -> StructuredNetwork {
    let edges = if n >= 3 && rng.gen_bool(0.5) {
        cycle_edges(n)
    } else {
        random_tree_edges(rng, n)
    };
    let nodes: Vec<u32> = (1..=n).collect();
    let mut inputs: Vec<(u32, u32)> = Vec::new();
    loop {
        let net = build_network(&nodes, &edges, &inputs).unwrap();
        if ssc_core::forcing::is_ssc_by_forcing(&net) {
            return net;
        }
        inputs.push((inputs.len() as u32 + 1, rng.gen_range(1..=n)));
    }
}
