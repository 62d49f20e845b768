//! Pactus decomposition: disjoint path and cycle components joined by
//! one-to-one bridge graphs, plus the structural SSC shortcuts for paths,
//! trees and cycles.

use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forcing::is_ssc_by_forcing;
use crate::graph::{build_network, GraphError, StructuredNetwork};
use crate::ssc::{evaluate_ssc, is_ssc_exact, SscError, DEFAULT_EXACT_LIMIT};
use crate::treecover::min_extra_inputs;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PactusError {
    #[error("state graph is not connected")]
    DisconnectedState,
    #[error("not a pactus decomposition: {0}")]
    NotAPactus(String),
    #[error("state graph is not a path")]
    NotAPath,
    #[error("state graph is not a tree")]
    NotATree,
    #[error("state graph is not a cycle")]
    NotACycle,
    #[error("need at least two inputs, found {0}")]
    TooFewInputs(usize),
    #[error("cycle check needs exactly two inputs, found {0}")]
    WrongInputCount(usize),
    #[error("components {0} and {1} are joined by more than one bridge edge")]
    MultiBridge(usize, usize),
    #[error("component is not SSC on its own")]
    ComponentNotSsc,
    #[error("components share state label {0}")]
    OverlappingLabels(u32),
    #[error(transparent)]
    Graph(#[from] GraphError),
    #[error(transparent)]
    Ssc(#[from] SscError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ComponentKind {
    Path,
    Cycle,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Component {
    pub index: usize,
    /// Dense node indices in traversal order along the path or cycle.
    pub nodes: Vec<usize>,
    /// Induced edges, `(i, j)` with `i < j`, sorted.
    pub edges: Vec<(usize, usize)>,
    pub kind: ComponentKind,
}

impl Component {
    pub fn sorted_nodes(&self) -> Vec<usize> {
        let mut v = self.nodes.clone();
        v.sort_unstable();
        v
    }

    pub fn contains(&self, node: usize) -> bool {
        self.nodes.contains(&node)
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BridgeGraph {
    pub from_index: usize,
    pub to_index: usize,
    /// `(node in from, node in to)`, sorted.
    pub edges: Vec<(usize, usize)>,
}

/// A component seed as given by a user: labels plus kind.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct ComponentSeed {
    pub nodes: Vec<u32>,
    pub kind: ComponentKind,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PactusDecomposition {
    pub components: Vec<Component>,
    /// Keyed by `(i, j)` with `i < j`.
    pub bridges: BTreeMap<(usize, usize), BridgeGraph>,
    pub neighbor_sets: Vec<BTreeSet<usize>>,
    component_of: Vec<usize>,
}

impl PactusDecomposition {
    pub fn m(&self) -> usize {
        self.components.len()
    }

    pub fn component_of(&self, node: usize) -> usize {
        self.component_of[node]
    }

    /// Bridge edges between `i` and `j`, oriented `(node in i, node in j)`.
    pub fn bridge_edges(&self, i: usize, j: usize) -> Vec<(usize, usize)> {
        if i < j {
            self.bridges
                .get(&(i, j))
                .map(|b| b.edges.clone())
                .unwrap_or_default()
        } else {
            self.bridges
                .get(&(j, i))
                .map(|b| b.edges.iter().map(|&(a, b)| (b, a)).collect())
                .unwrap_or_default()
        }
    }

    /// Seeds that reproduce this decomposition.
    pub fn seeds(&self, net: &StructuredNetwork) -> Vec<ComponentSeed> {
        self.components
            .iter()
            .map(|c| ComponentSeed {
                nodes: c.nodes.iter().map(|&i| net.label(i)).collect(),
                kind: c.kind,
            })
            .collect()
    }
}

/// Order the nodes of an induced path or cycle, checking the kind.
fn traverse(
    net: &StructuredNetwork,
    nodes: &[usize],
    kind: ComponentKind,
) -> Result<Vec<usize>, String> {
    let set: BTreeSet<usize> = nodes.iter().copied().collect();
    let inner = |v: usize| -> Vec<usize> {
        net.neighbors(v)
            .iter()
            .copied()
            .filter(|w| set.contains(w))
            .collect()
    };
    let degrees: BTreeMap<usize, usize> = set.iter().map(|&v| (v, inner(v).len())).collect();
    let edge_count: usize = degrees.values().sum::<usize>() / 2;
    let describe = |k: &str| {
        let labels: Vec<String> = set.iter().map(|&v| net.label(v).to_string()).collect();
        format!("nodes {{{}}} do not induce a {k}", labels.join(","))
    };
    let start = match kind {
        ComponentKind::Path => {
            if edge_count + 1 != set.len() || degrees.values().any(|&d| d > 2) {
                return Err(describe("path"));
            }
            *set.iter().find(|v| degrees[v] <= 1).expect("acyclic")
        }
        ComponentKind::Cycle => {
            if set.len() < 3 || degrees.values().any(|&d| d != 2) {
                return Err(describe("cycle"));
            }
            *set.iter().next().unwrap()
        }
    };
    let mut order = vec![start];
    let mut prev = usize::MAX;
    let mut cur = start;
    loop {
        let mut next: Vec<usize> = inner(cur).into_iter().filter(|&w| w != prev).collect();
        next.sort_unstable();
        let Some(&w) = next.first() else { break };
        if w == start {
            break;
        }
        order.push(w);
        prev = cur;
        cur = w;
    }
    if order.len() != set.len() {
        return Err(describe(match kind {
            ComponentKind::Path => "path",
            ComponentKind::Cycle => "cycle",
        }));
    }
    Ok(order)
}

enum Violation {
    Fatal(String),
    // component `comp` has nodes at traversal positions `a < b` adjacent to one outside node
    Crowded { comp: usize, a: usize, b: usize },
}

fn assemble(
    net: &StructuredNetwork,
    comps: Vec<(Vec<usize>, ComponentKind)>,
) -> Result<PactusDecomposition, Violation> {
    let n = net.n();
    let mut component_of = vec![usize::MAX; n];
    for (ci, (nodes, _)) in comps.iter().enumerate() {
        for &v in nodes {
            if component_of[v] != usize::MAX {
                return Err(Violation::Fatal(format!(
                    "node {} appears in more than one component",
                    net.label(v)
                )));
            }
            component_of[v] = ci;
        }
    }
    if let Some(v) = component_of.iter().position(|&c| c == usize::MAX) {
        return Err(Violation::Fatal(format!(
            "node {} is not in any component",
            net.label(v)
        )));
    }

    let mut components = Vec::with_capacity(comps.len());
    for (index, (nodes, kind)) in comps.into_iter().enumerate() {
        let edges = net
            .edges()
            .iter()
            .copied()
            .filter(|&(a, b)| component_of[a] == index && component_of[b] == index)
            .collect();
        components.push(Component {
            index,
            nodes,
            edges,
            kind,
        });
    }

    // one-to-one: no node may have two neighbours in the same other component
    for v in 0..n {
        let mut seen: BTreeMap<usize, usize> = BTreeMap::new();
        for &w in net.neighbors(v) {
            let cw = component_of[w];
            if cw == component_of[v] {
                continue;
            }
            if let Some(&prev) = seen.get(&cw) {
                let order = &components[cw].nodes;
                let pa = order.iter().position(|&x| x == prev).unwrap();
                let pb = order.iter().position(|&x| x == w).unwrap();
                return Err(Violation::Crowded {
                    comp: cw,
                    a: pa.min(pb),
                    b: pa.max(pb),
                });
            }
            seen.insert(cw, w);
        }
    }

    let mut bridges: BTreeMap<(usize, usize), BridgeGraph> = BTreeMap::new();
    let mut neighbor_sets = vec![BTreeSet::new(); components.len()];
    for &(a, b) in net.edges() {
        let (ca, cb) = (component_of[a], component_of[b]);
        if ca == cb {
            continue;
        }
        let (i, j, e) = if ca < cb {
            (ca, cb, (a, b))
        } else {
            (cb, ca, (b, a))
        };
        bridges
            .entry((i, j))
            .or_insert_with(|| BridgeGraph {
                from_index: i,
                to_index: j,
                edges: Vec::new(),
            })
            .edges
            .push(e);
        neighbor_sets[i].insert(j);
        neighbor_sets[j].insert(i);
    }
    for b in bridges.values_mut() {
        b.edges.sort_unstable();
    }
    Ok(PactusDecomposition {
        components,
        bridges,
        neighbor_sets,
        component_of,
    })
}

/// Validate seeds, or find a decomposition heuristically when none are given.
///
/// The heuristic turns each biconnected block that is a simple cycle into a
/// cycle component, groups the remaining nodes into maximal induced paths and
/// then splits components until every bridge graph is one-to-one. It always
/// succeeds on a connected graph, since single-node components are paths.
pub fn decompose(
    net: &StructuredNetwork,
    seeds: Option<&[ComponentSeed]>,
) -> Result<PactusDecomposition, PactusError> {
    if !net.is_state_connected() {
        return Err(PactusError::DisconnectedState);
    }
    match seeds {
        Some(seeds) => {
            let mut comps = Vec::with_capacity(seeds.len());
            for seed in seeds {
                let mut nodes = Vec::with_capacity(seed.nodes.len());
                for &l in &seed.nodes {
                    nodes.push(net.index_of(l).ok_or_else(|| {
                        PactusError::NotAPactus(format!("unknown node {l} in decomposition"))
                    })?);
                }
                if nodes.is_empty() {
                    return Err(PactusError::NotAPactus("empty component".into()));
                }
                let order = traverse(net, &nodes, seed.kind).map_err(PactusError::NotAPactus)?;
                comps.push((order, seed.kind));
            }
            match assemble(net, comps) {
                Ok(d) => Ok(d),
                Err(Violation::Fatal(msg)) => Err(PactusError::NotAPactus(msg)),
                Err(Violation::Crowded { comp, .. }) => Err(PactusError::NotAPactus(format!(
                    "a node has two bridge edges into component {}",
                    comp + 1
                ))),
            }
        }
        None => Ok(heuristic(net)),
    }
}

fn heuristic(net: &StructuredNetwork) -> PactusDecomposition {
    let n = net.n();
    let mut assigned = vec![false; n];
    let mut comps: Vec<(Vec<usize>, ComponentKind)> = Vec::new();

    let adjacency: Vec<Vec<usize>> = (0..n).map(|v| net.neighbors(v).to_vec()).collect();
    let mut cycles: Vec<Vec<usize>> = biconnected_blocks(&adjacency)
        .into_iter()
        .filter_map(|block| {
            let nodes: BTreeSet<usize> = block.iter().flat_map(|&(a, b)| [a, b]).collect();
            (nodes.len() >= 3 && nodes.len() == block.len()).then(|| nodes.into_iter().collect())
        })
        .collect();
    cycles.sort();
    for cycle in cycles {
        if cycle.iter().any(|&v| assigned[v]) {
            continue;
        }
        let order = traverse(net, &cycle, ComponentKind::Cycle).expect("block is a cycle");
        for &v in &order {
            assigned[v] = true;
        }
        comps.push((order, ComponentKind::Cycle));
    }

    let free_degree =
        |v: usize, assigned: &[bool]| net.neighbors(v).iter().filter(|&&w| !assigned[w]).count();
    while let Some(start) = (0..n)
        .filter(|&v| !assigned[v])
        .min_by_key(|&v| (free_degree(v, &assigned), v))
    {
        assigned[start] = true;
        let mut path = std::collections::VecDeque::from([start]);
        for side in 0..2 {
            loop {
                let end = if side == 0 {
                    *path.back().unwrap()
                } else {
                    *path.front().unwrap()
                };
                let next = net
                    .neighbors(end)
                    .iter()
                    .copied()
                    .filter(|&w| !assigned[w])
                    .filter(|&w| {
                        net.neighbors(w)
                            .iter()
                            .all(|&x| x == end || !path.contains(&x))
                    })
                    .min_by_key(|&w| (free_degree(w, &assigned), w));
                let Some(w) = next else { break };
                assigned[w] = true;
                if side == 0 {
                    path.push_back(w);
                } else {
                    path.push_front(w);
                }
            }
        }
        comps.push((path.into_iter().collect(), ComponentKind::Path));
    }

    loop {
        comps.sort_by_key(|(nodes, _)| *nodes.iter().min().unwrap());
        match assemble(net, comps.clone()) {
            Ok(d) => return d,
            Err(Violation::Fatal(msg)) => unreachable!("heuristic produced a bad partition: {msg}"),
            Err(Violation::Crowded { comp, a, b }) => {
                let (nodes, kind) = comps.remove(comp);
                match kind {
                    ComponentKind::Path => {
                        comps.push((nodes[..=a].to_vec(), ComponentKind::Path));
                        comps.push((nodes[a + 1..].to_vec(), ComponentKind::Path));
                    }
                    ComponentKind::Cycle => {
                        comps.push((nodes[a + 1..=b].to_vec(), ComponentKind::Path));
                        let mut rest = nodes[b + 1..].to_vec();
                        rest.extend_from_slice(&nodes[..=a]);
                        comps.push((rest, ComponentKind::Path));
                    }
                }
            }
        }
    }
}

/// Biconnected blocks as edge lists (iterative Tarjan).
fn biconnected_blocks(adjacency: &[Vec<usize>]) -> Vec<Vec<(usize, usize)>> {
    let n = adjacency.len();
    let mut disc = vec![usize::MAX; n];
    let mut low = vec![0; n];
    let mut time = 0;
    let mut blocks = Vec::new();
    let mut edge_stack: Vec<(usize, usize)> = Vec::new();
    for s in 0..n {
        if disc[s] != usize::MAX {
            continue;
        }
        disc[s] = time;
        low[s] = time;
        time += 1;
        // (node, parent, next neighbour position)
        let mut stack = vec![(s, usize::MAX, 0usize)];
        while let Some(top) = stack.last_mut() {
            let (v, p) = (top.0, top.1);
            if top.2 < adjacency[v].len() {
                let w = adjacency[v][top.2];
                top.2 += 1;
                if disc[w] == usize::MAX {
                    edge_stack.push((v, w));
                    disc[w] = time;
                    low[w] = time;
                    time += 1;
                    stack.push((w, v, 0));
                } else if w != p && disc[w] < disc[v] {
                    edge_stack.push((v, w));
                    low[v] = low[v].min(disc[w]);
                }
            } else {
                stack.pop();
                if let Some(&(u, _, _)) = stack.last() {
                    low[u] = low[u].min(low[v]);
                    if low[v] >= disc[u] {
                        let mut block = Vec::new();
                        while let Some(e) = edge_stack.pop() {
                            block.push(e);
                            if e == (u, v) {
                                break;
                            }
                        }
                        blocks.push(block);
                    }
                }
            }
        }
    }
    blocks
}

fn is_path_graph(net: &StructuredNetwork) -> bool {
    net.is_state_connected()
        && net.edges().len() + 1 == net.n()
        && (0..net.n()).all(|v| net.degree(v) <= 2)
}

fn is_tree(net: &StructuredNetwork) -> bool {
    net.is_state_connected() && net.edges().len() + 1 == net.n()
}

fn is_cycle_graph(net: &StructuredNetwork) -> bool {
    net.n() >= 3 && net.is_state_connected() && (0..net.n()).all(|v| net.degree(v) == 2)
}

/// Path rule: SSC iff an input sits at a terminal node, or two inputs sit on
/// adjacent nodes.
pub fn check_path_ssc(net: &StructuredNetwork) -> Result<bool, PactusError> {
    if !is_path_graph(net) {
        return Err(PactusError::NotAPath);
    }
    let targets = net.input_targets();
    let terminal = targets.iter().any(|&t| net.degree(t) <= 1);
    let adjacent_pair = net
        .edges()
        .iter()
        .any(|&(a, b)| targets.contains(&a) && targets.contains(&b));
    Ok(terminal || adjacent_pair)
}

/// Tree rule: SSC iff the tree splits into paths, one per input node, each
/// with its input node at a terminal. Inputs sharing a target count once.
pub fn check_tree_ssc(net: &StructuredNetwork) -> Result<bool, PactusError> {
    if !is_tree(net) {
        return Err(PactusError::NotATree);
    }
    if net.inputs().len() < 2 {
        return Err(PactusError::TooFewInputs(net.inputs().len()));
    }
    let n = net.n();
    let adjacency: Vec<Vec<usize>> = (0..n).map(|v| net.neighbors(v).to_vec()).collect();
    let mut has_input = vec![false; n];
    for t in net.input_targets() {
        has_input[t] = true;
    }
    Ok(min_extra_inputs(&adjacency, &has_input, &vec![false; n], &vec![true; n]) == Some(0))
}

/// Two-input cycle rule: SSC iff the two input nodes are adjacent. With more
/// than two inputs the exact checker decides.
pub fn check_cycle_ssc(net: &StructuredNetwork) -> Result<bool, PactusError> {
    if !is_cycle_graph(net) {
        return Err(PactusError::NotACycle);
    }
    let inputs = net.inputs();
    match inputs.len() {
        k if k < 2 => Err(PactusError::WrongInputCount(k)),
        2 => Ok(net.has_edge(inputs[0].target, inputs[1].target)),
        _ => decide(net),
    }
}

fn decide(net: &StructuredNetwork) -> Result<bool, PactusError> {
    if net.n() <= DEFAULT_EXACT_LIMIT {
        Ok(evaluate_ssc(net, DEFAULT_EXACT_LIMIT)?.is_ssc)
    } else {
        Ok(is_ssc_by_forcing(net))
    }
}

/// Sufficient pactus test for single-edge bridge graphs: every component,
/// with the inputs attached to it, passes its own path or cycle check.
/// `false` means inconclusive.
pub fn check_pactus_ssc(
    net: &StructuredNetwork,
    dec: &PactusDecomposition,
) -> Result<bool, PactusError> {
    if let Some(b) = dec.bridges.values().find(|b| b.edges.len() > 1) {
        return Err(PactusError::MultiBridge(b.from_index, b.to_index));
    }
    for comp in &dec.components {
        let sub = net.induced(&comp.sorted_nodes());
        let ok = match comp.kind {
            ComponentKind::Path => check_path_ssc(&sub)?,
            ComponentKind::Cycle => match check_cycle_ssc(&sub) {
                Ok(v) => v,
                Err(PactusError::WrongInputCount(_)) => false,
                Err(e) => return Err(e),
            },
        };
        if !ok {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Join two disjoint SSC networks with one bridge edge `(a in net_i, b in
/// net_j)` and report whether the result is SSC. Input labels of `net_j` are
/// shifted past those of `net_i`.
pub fn merge_preserves_ssc(
    net_i: &StructuredNetwork,
    net_j: &StructuredNetwork,
    bridge: (u32, u32),
) -> Result<bool, PactusError> {
    let merged = merge(net_i, net_j, &[bridge])?;
    if !is_ssc_exact(net_i, DEFAULT_EXACT_LIMIT)?.is_ssc
        || !is_ssc_exact(net_j, DEFAULT_EXACT_LIMIT)?.is_ssc
    {
        return Err(PactusError::ComponentNotSsc);
    }
    Ok(is_ssc_exact(&merged, DEFAULT_EXACT_LIMIT)?.is_ssc)
}

/// Disjoint union of two networks plus the given bridge edges (labels).
pub fn merge(
    net_i: &StructuredNetwork,
    net_j: &StructuredNetwork,
    bridges: &[(u32, u32)],
) -> Result<StructuredNetwork, PactusError> {
    if let Some(&l) = net_j
        .labels()
        .iter()
        .find(|&&l| net_i.index_of(l).is_some())
    {
        return Err(PactusError::OverlappingLabels(l));
    }
    let mut nodes = net_i.labels().to_vec();
    nodes.extend_from_slice(net_j.labels());
    let label_edges = |net: &StructuredNetwork| -> Vec<(u32, u32)> {
        net.edges()
            .iter()
            .map(|&(a, b)| (net.label(a), net.label(b)))
            .collect()
    };
    let mut edges = label_edges(net_i);
    edges.extend(label_edges(net_j));
    for &(a, b) in bridges {
        if net_i.index_of(a).is_none() {
            return Err(GraphError::UnknownNode(a).into());
        }
        if net_j.index_of(b).is_none() {
            return Err(GraphError::UnknownNode(b).into());
        }
        edges.push((a, b));
    }
    let shift = net_i.inputs().iter().map(|a| a.input).max().unwrap_or(0);
    let mut inputs: Vec<(u32, u32)> = net_i
        .inputs()
        .iter()
        .map(|a| (a.input, net_i.label(a.target)))
        .collect();
    inputs.extend(
        net_j
            .inputs()
            .iter()
            .map(|a| (a.input + shift, net_j.label(a.target))),
    );
    Ok(build_network(&nodes, &edges, &inputs)?)
}

#[cfg(test)]
mod tests {
    use super::*;

    fn net(nodes: &[u32], edges: &[(u32, u32)], inputs: &[(u32, u32)]) -> StructuredNetwork {
        build_network(nodes, edges, inputs).unwrap()
    }

    fn fig5() -> StructuredNetwork {
        net(
            &(1..=16).collect::<Vec<_>>(),
            &[
                (1, 2),
                (2, 3),
                (2, 6),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 9),
                (4, 9),
                (4, 10),
                (10, 11),
                (10, 12),
                (11, 12),
                (9, 12),
                (12, 13),
                (13, 14),
                (14, 15),
                (15, 16),
                (13, 16),
            ],
            &[],
        )
    }

    fn fig5_seeds() -> Vec<ComponentSeed> {
        vec![
            ComponentSeed {
                nodes: vec![1, 2, 3],
                kind: ComponentKind::Path,
            },
            ComponentSeed {
                nodes: vec![4, 5, 6, 7, 8, 9],
                kind: ComponentKind::Cycle,
            },
            ComponentSeed {
                nodes: vec![10, 11, 12],
                kind: ComponentKind::Cycle,
            },
            ComponentSeed {
                nodes: vec![13, 14, 15, 16],
                kind: ComponentKind::Cycle,
            },
        ]
    }

    fn label_pairs(n: &StructuredNetwork, edges: &[(usize, usize)]) -> Vec<(u32, u32)> {
        edges
            .iter()
            .map(|&(a, b)| (n.label(a), n.label(b)))
            .collect()
    }

    #[test]
    fn seeded_fig5() {
        let g = fig5();
        let d = decompose(&g, Some(&fig5_seeds())).unwrap();
        assert_eq!(d.m(), 4);
        assert_eq!(label_pairs(&g, &d.bridge_edges(0, 1)), vec![(2, 6), (3, 4)]);
        assert_eq!(
            label_pairs(&g, &d.bridge_edges(1, 2)),
            vec![(4, 10), (9, 12)]
        );
        assert_eq!(label_pairs(&g, &d.bridge_edges(2, 3)), vec![(12, 13)]);
        assert_eq!(d.neighbor_sets[1], BTreeSet::from([0, 2]));
        assert!(matches!(
            check_pactus_ssc(&g, &d),
            Err(PactusError::MultiBridge(0, 1))
        ));
    }

    #[test]
    fn bad_seeds() {
        let g = fig5();
        let mut seeds = fig5_seeds();
        seeds[0].kind = ComponentKind::Cycle;
        assert!(matches!(
            decompose(&g, Some(&seeds)),
            Err(PactusError::NotAPactus(_))
        ));
        let mut seeds = fig5_seeds();
        seeds.pop();
        assert!(matches!(
            decompose(&g, Some(&seeds)),
            Err(PactusError::NotAPactus(_))
        ));
        // 4 is adjacent to both ends of the path 5-6-7-8-9
        let seeds = vec![
            ComponentSeed {
                nodes: vec![1, 2, 3],
                kind: ComponentKind::Path,
            },
            ComponentSeed {
                nodes: vec![5, 6, 7, 8, 9],
                kind: ComponentKind::Path,
            },
            ComponentSeed {
                nodes: vec![4],
                kind: ComponentKind::Path,
            },
            ComponentSeed {
                nodes: vec![10, 11, 12],
                kind: ComponentKind::Cycle,
            },
            ComponentSeed {
                nodes: vec![13, 14, 15, 16],
                kind: ComponentKind::Cycle,
            },
        ];
        assert!(matches!(
            decompose(&g, Some(&seeds)),
            Err(PactusError::NotAPactus(_))
        ));
    }

    #[test]
    fn heuristic_single_path_and_k4() {
        let p = net(&[1, 2, 3, 4], &[(1, 2), (2, 3), (3, 4)], &[]);
        let d = decompose(&p, None).unwrap();
        assert_eq!(d.m(), 1);
        assert!(d.bridges.is_empty());

        let k4 = net(
            &[1, 2, 3, 4],
            &[(1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
            &[],
        );
        let d = decompose(&k4, None).unwrap();
        assert_eq!(d.m(), 4);

        let split = net(&[1, 2, 3], &[(1, 2)], &[]);
        assert_eq!(decompose(&split, None), Err(PactusError::DisconnectedState));
    }

    #[test]
    fn heuristic_finds_fig3_cycles() {
        let g = net(
            &(1..=16).collect::<Vec<_>>(),
            &[
                (1, 2),
                (2, 3),
                (3, 4),
                (4, 5),
                (5, 6),
                (6, 7),
                (7, 8),
                (8, 9),
                (9, 4),
                (9, 12),
                (10, 11),
                (11, 12),
                (12, 10),
                (11, 16),
                (13, 14),
                (14, 15),
                (15, 16),
                (16, 13),
            ],
            &[],
        );
        let d = decompose(&g, None).unwrap();
        let kinds: Vec<_> = d
            .components
            .iter()
            .map(|c| (c.kind, c.sorted_nodes().len()))
            .collect();
        assert_eq!(
            kinds,
            vec![
                (ComponentKind::Path, 3),
                (ComponentKind::Cycle, 6),
                (ComponentKind::Cycle, 3),
                (ComponentKind::Cycle, 4)
            ]
        );
        assert!(d.bridges.values().all(|b| b.edges.len() == 1));
    }

    #[test]
    fn path_rule() {
        assert!(check_path_ssc(&net(&[1, 2, 3], &[(3, 2), (2, 1)], &[(1, 3)])).unwrap());
        assert!(!check_path_ssc(&net(&[1, 2, 3], &[(1, 2), (2, 3)], &[(1, 2)])).unwrap());
        assert!(check_path_ssc(&net(&[1], &[], &[(1, 1)])).unwrap());
        assert!(check_path_ssc(&net(
            &[1, 2, 3, 4],
            &[(1, 2), (2, 3), (3, 4)],
            &[(1, 2), (2, 3)]
        ))
        .unwrap());
        assert_eq!(
            check_path_ssc(&net(&[1, 2, 3], &[(1, 2), (2, 3), (1, 3)], &[(1, 1)])),
            Err(PactusError::NotAPath)
        );
    }

    #[test]
    fn tree_rule() {
        let edges = [(1, 2), (2, 3), (2, 4), (4, 5)];
        assert!(check_tree_ssc(&net(&[1, 2, 3, 4, 5], &edges, &[(1, 3), (2, 5)])).unwrap());
        assert!(!check_tree_ssc(&net(&[1, 2, 3, 4, 5], &edges, &[(1, 4), (2, 5)])).unwrap());
        // star: centre 1, leaves 2, 3, 4 all driven
        let star = net(
            &[1, 2, 3, 4],
            &[(1, 2), (1, 3), (1, 4)],
            &[(1, 2), (2, 3), (3, 4)],
        );
        assert!(check_tree_ssc(&star).unwrap());
        assert_eq!(
            check_tree_ssc(&net(&[1, 2], &[(1, 2)], &[(1, 1)])),
            Err(PactusError::TooFewInputs(1))
        );
    }

    #[test]
    fn cycle_rule() {
        let c = [(1, 2), (2, 3), (3, 4), (4, 1)];
        assert!(check_cycle_ssc(&net(&[1, 2, 3, 4], &c, &[(1, 2), (2, 3)])).unwrap());
        assert!(!check_cycle_ssc(&net(&[1, 2, 3, 4], &c, &[(1, 1), (2, 3)])).unwrap());
        for (a, b) in [(1, 2), (1, 3), (2, 3)] {
            let t = net(&[1, 2, 3], &[(1, 2), (2, 3), (1, 3)], &[(1, a), (2, b)]);
            assert!(check_cycle_ssc(&t).unwrap());
        }
        assert_eq!(
            check_cycle_ssc(&net(&[1, 2, 3, 4], &c, &[(1, 1)])),
            Err(PactusError::WrongInputCount(1))
        );
    }

    #[test]
    fn merging() {
        let g1 = net(&[1, 2, 3], &[(1, 2), (2, 3)], &[(1, 3)]);
        let g2 = net(&[4, 5], &[(4, 5)], &[(1, 5)]);
        assert!(merge_preserves_ssc(&g1, &g2, (2, 4)).unwrap());
        let bad = net(&[4, 5, 6], &[(4, 5), (5, 6)], &[(1, 5)]);
        assert_eq!(
            merge_preserves_ssc(&g1, &bad, (2, 4)),
            Err(PactusError::ComponentNotSsc)
        );
    }
}
