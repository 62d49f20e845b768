//! Minimum input placement for a pactus, component by component.
//!
//! Components are processed in breadth-first order over the component graph.
//! The stage graph of a component is the component itself plus its bridge
//! edges to components not yet processed; the far endpoints of those bridges
//! are leaves of the stage graph. A bridge from an already processed
//! component acts as an input on its endpoint inside the current component.
//! Each stage adds the fewest external inputs that make its stage graph SSC,
//! so every stage ends with all of its nodes forced, and the whole network is
//! SSC after the last stage.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::forcing::close;
use crate::graph::{InputAttachment, StructuredNetwork};
use crate::pactus::{ComponentKind, PactusDecomposition};
use crate::ssc::{binomial, evaluate_ssc, unrank_combination, SscError, SscReport};
use crate::treecover::min_extra_inputs;

/// Default node cap for [`minimality_audit`].
pub const DEFAULT_AUDIT_BUDGET: usize = 12;

/// Largest component count accepted by [`OrderPolicy::AllOrders`].
pub const MAX_ORDER_SEARCH: usize = 8;

/// Closure evaluations allowed per cycle-type stage search.
pub const CYCLE_SEARCH_BUDGET: u64 = 4_000_000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ComposerError {
    #[error("components {0} and {1} are not neighbours")]
    NotNeighbors(usize, usize),
    #[error("network already has input nodes")]
    ExistingInputs,
    #[error("placement search for component {0} exceeded its budget")]
    SearchBudgetExceeded(usize),
    #[error("{m} components is too many to try every order (limit {limit})")]
    TooManyComponents { m: usize, limit: usize },
    #[error("{n} nodes exceeds the audit budget of {budget}")]
    TooLarge { n: usize, budget: usize },
    #[error(transparent)]
    Ssc(#[from] SscError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum StageType {
    PathType,
    TreeType,
    CycleType,
}

impl fmt::Display for StageType {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            StageType::PathType => "path-type",
            StageType::TreeType => "tree-type",
            StageType::CycleType => "cycle-type",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum TieBreak {
    #[default]
    Smallest,
    Largest,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum OrderPolicy {
    /// Breadth-first from the first component.
    #[default]
    FirstComponent,
    /// Breadth-first from every component in turn, keeping the smallest
    /// placement (earliest root on ties).
    BestRoot,
    /// Every processing order of the components, keeping the smallest
    /// placement (lexicographically first order on ties). Limited to
    /// [`MAX_ORDER_SEARCH`] components.
    AllOrders,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct ComposerConfig {
    pub tie_break: TieBreak,
    pub order: OrderPolicy,
}

/// Labels are document labels throughout; component indices are 0-based.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StageRecord {
    pub component: usize,
    pub graph_type: StageType,
    /// Nodes of processed neighbours whose bridges drive this component.
    pub component_inputs: Vec<u32>,
    /// Targets of the external inputs added at this stage.
    pub externals_added: Vec<u32>,
    pub stage_ssc_nodes: Vec<u32>,
    pub cumulative_ssc_nodes: Vec<u32>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InputPlacement {
    /// `(input label, target label)`; input labels run 1, 2, ...
    pub external: Vec<(u32, u32)>,
    pub component_inputs: BTreeMap<usize, Vec<u32>>,
    pub per_stage: Vec<StageRecord>,
}

impl InputPlacement {
    pub fn len(&self) -> usize {
        self.external.len()
    }

    pub fn is_empty(&self) -> bool {
        self.external.is_empty()
    }

    /// The network with the external inputs attached.
    pub fn apply(&self, net: &StructuredNetwork) -> StructuredNetwork {
        let inputs = self
            .external
            .iter()
            .map(|&(u, t)| InputAttachment {
                input: u,
                target: net
                    .index_of(t)
                    .expect("placement targets belong to the network"),
            })
            .collect();
        net.with_inputs(inputs)
    }
}

/// Component input nodes of `j` provided by `i`: the `i`-side endpoints of
/// the bridges between them, if the processed part containing `i` is SSC.
pub fn component_input_nodes(
    dec: &PactusDecomposition,
    i: usize,
    j: usize,
    current_subgraph_ssc: bool,
) -> Result<Vec<usize>, ComposerError> {
    if !dec.neighbor_sets[i].contains(&j) {
        return Err(ComposerError::NotNeighbors(i, j));
    }
    if !current_subgraph_ssc {
        return Ok(Vec::new());
    }
    let mut nodes: Vec<usize> = dec.bridge_edges(i, j).into_iter().map(|(a, _)| a).collect();
    nodes.sort_unstable();
    Ok(nodes)
}

/// Stage graph of component `c` given the processed set.
struct Stage {
    /// Stage-local index -> network index. Component nodes come first.
    nodes: Vec<usize>,
    adjacency: Vec<Vec<usize>>,
    /// Local indices that are far bridge endpoints.
    boundary: Vec<bool>,
    comp_len: usize,
}

fn stage_graph(dec: &PactusDecomposition, c: usize, processed: &[bool]) -> Stage {
    let comp = &dec.components[c];
    let mut nodes = comp.sorted_nodes();
    let comp_len = nodes.len();
    let mut far_edges = Vec::new();
    for &j in &dec.neighbor_sets[c] {
        if !processed[j] {
            far_edges.extend(dec.bridge_edges(c, j));
        }
    }
    far_edges.sort_unstable_by_key(|&(_, b)| b);
    nodes.extend(far_edges.iter().map(|&(_, b)| b));
    let local: BTreeMap<usize, usize> = nodes.iter().enumerate().map(|(k, &v)| (v, k)).collect();
    let mut adjacency = vec![Vec::new(); nodes.len()];
    for &(a, b) in comp.edges.iter().chain(far_edges.iter()) {
        let (la, lb) = (local[&a], local[&b]);
        adjacency[la].push(lb);
        adjacency[lb].push(la);
    }
    let boundary = (0..nodes.len()).map(|k| k >= comp_len).collect();
    Stage {
        nodes,
        adjacency,
        boundary,
        comp_len,
    }
}

/// Classify the stage graph of component `i` given which components are
/// already processed.
pub fn stage_type(dec: &PactusDecomposition, i: usize, processed: &[bool]) -> StageType {
    if dec.components[i].kind == ComponentKind::Cycle {
        return StageType::CycleType;
    }
    let stage = stage_graph(dec, i, processed);
    if stage.adjacency.iter().all(|a| a.len() <= 2) {
        StageType::PathType
    } else {
        StageType::TreeType
    }
}

fn bfs_order(dec: &PactusDecomposition, root: usize) -> Vec<usize> {
    let m = dec.m();
    let mut seen = vec![false; m];
    let mut order = Vec::with_capacity(m);
    let mut queue = VecDeque::from([root]);
    seen[root] = true;
    while let Some(c) = queue.pop_front() {
        order.push(c);
        for &j in &dec.neighbor_sets[c] {
            if !seen[j] {
                seen[j] = true;
                queue.push_back(j);
            }
        }
    }
    order
}

/// Place the fewest external inputs, stage by stage, so that the network
/// becomes SSC. The network must have no inputs.
pub fn min_inputs(
    net: &StructuredNetwork,
    dec: &PactusDecomposition,
    config: &ComposerConfig,
) -> Result<InputPlacement, ComposerError> {
    if !net.inputs().is_empty() {
        return Err(ComposerError::ExistingInputs);
    }
    let orders: Vec<Vec<usize>> = match config.order {
        OrderPolicy::FirstComponent => vec![bfs_order(dec, 0)],
        OrderPolicy::BestRoot => (0..dec.m()).map(|r| bfs_order(dec, r)).collect(),
        OrderPolicy::AllOrders => {
            if dec.m() > MAX_ORDER_SEARCH {
                return Err(ComposerError::TooManyComponents {
                    m: dec.m(),
                    limit: MAX_ORDER_SEARCH,
                });
            }
            permutations(dec.m())
        }
    };
    let mut best: Option<InputPlacement> = None;
    for order in &orders {
        let p = compose(net, dec, config.tie_break, order)?;
        if best.as_ref().is_none_or(|b| p.len() < b.len()) {
            best = Some(p);
        }
    }
    Ok(best.expect("at least one component"))
}

/// All permutations of `0..m` in lexicographic order.
fn permutations(m: usize) -> Vec<Vec<usize>> {
    let mut current: Vec<usize> = (0..m).collect();
    let mut out = vec![current.clone()];
    loop {
        let Some(i) = (1..m).rev().find(|&i| current[i - 1] < current[i]) else {
            return out;
        };
        let j = (i..m).rev().find(|&j| current[j] > current[i - 1]).unwrap();
        current.swap(i - 1, j);
        current[i..].reverse();
        out.push(current.clone());
    }
}

fn compose(
    net: &StructuredNetwork,
    dec: &PactusDecomposition,
    tie_break: TieBreak,
    order: &[usize],
) -> Result<InputPlacement, ComposerError> {
    let n = net.n();
    let mut processed = vec![false; dec.m()];
    // nodes forced so far: every node of every finished stage graph
    let mut has_input = vec![false; n];
    let mut externals: Vec<usize> = Vec::new();
    let mut cumulative: BTreeSet<u32> = BTreeSet::new();
    let mut component_inputs = BTreeMap::new();
    let mut per_stage = Vec::with_capacity(dec.m());

    for &c in order {
        let mut drivers = Vec::new();
        for &p in &dec.neighbor_sets[c] {
            if processed[p] {
                for (k, l) in dec.bridge_edges(p, c) {
                    drivers.push(k);
                    has_input[l] = true;
                }
            }
        }
        drivers.sort_unstable();
        let driver_labels: Vec<u32> = drivers.iter().map(|&k| net.label(k)).collect();

        let graph_type = stage_type(dec, c, &processed);
        let stage = stage_graph(dec, c, &processed);
        let local_input: Vec<bool> = stage.nodes.iter().map(|&v| has_input[v]).collect();
        let chosen = match graph_type {
            StageType::CycleType => place_cycle(&stage, dec, c, &local_input, tie_break, net)?,
            _ => place_tree(&stage, &local_input, tie_break, net),
        };
        for &k in &chosen {
            externals.push(stage.nodes[k]);
        }
        for &v in &stage.nodes {
            has_input[v] = true;
        }

        let stage_labels: BTreeSet<u32> = stage.nodes.iter().map(|&v| net.label(v)).collect();
        cumulative.extend(stage_labels.iter().copied());
        if !driver_labels.is_empty() {
            component_inputs.insert(c, driver_labels.clone());
        }
        per_stage.push(StageRecord {
            component: c,
            graph_type,
            component_inputs: driver_labels,
            externals_added: chosen.iter().map(|&k| net.label(stage.nodes[k])).collect(),
            stage_ssc_nodes: stage_labels.into_iter().collect(),
            cumulative_ssc_nodes: cumulative.iter().copied().collect(),
        });
        processed[c] = true;
    }

    Ok(InputPlacement {
        external: externals
            .iter()
            .enumerate()
            .map(|(k, &v)| (k as u32 + 1, net.label(v)))
            .collect(),
        component_inputs,
        per_stage,
    })
}

/// Candidate targets in preference order: component nodes first, then
/// boundary leaves, each ordered by label according to the tie-break.
fn pool(
    stage: &Stage,
    has_input: &[bool],
    tie_break: TieBreak,
    net: &StructuredNetwork,
) -> Vec<usize> {
    let mut inner: Vec<usize> = (0..stage.comp_len).filter(|&k| !has_input[k]).collect();
    let mut outer: Vec<usize> = (stage.comp_len..stage.nodes.len())
        .filter(|&k| !has_input[k])
        .collect();
    for list in [&mut inner, &mut outer] {
        list.sort_by_key(|&k| net.label(stage.nodes[k]));
        if tie_break == TieBreak::Largest {
            list.reverse();
        }
    }
    inner.extend(outer);
    inner
}

fn can_force(stage: &Stage) -> Vec<bool> {
    stage.boundary.iter().map(|&b| !b).collect()
}

/// Lexicographically first minimum placement on an acyclic stage graph.
fn place_tree(
    stage: &Stage,
    has_input: &[bool],
    tie_break: TieBreak,
    net: &StructuredNetwork,
) -> Vec<usize> {
    let mut inputs = has_input.to_vec();
    let forcing = can_force(stage);
    let candidates = pool(stage, has_input, tie_break, net);
    let mut poolable = vec![false; inputs.len()];
    for &k in &candidates {
        poolable[k] = true;
    }
    let mut need = min_extra_inputs(&stage.adjacency, &inputs, &poolable, &forcing)
        .expect("every stage node can take an input");
    let mut chosen = Vec::new();
    for &k in &candidates {
        if need == 0 {
            break;
        }
        inputs[k] = true;
        poolable[k] = false;
        if min_extra_inputs(&stage.adjacency, &inputs, &poolable, &forcing) == Some(need - 1) {
            chosen.push(k);
            need -= 1;
        } else {
            inputs[k] = false;
            poolable[k] = true;
        }
    }
    chosen
}

fn fully_forced(stage: &Stage, has_input: &[bool], extra: &[usize], forcing: &[bool]) -> bool {
    let mut marked = has_input.to_vec();
    for &k in extra {
        marked[k] = true;
    }
    close(&stage.adjacency, &mut marked, forcing);
    marked.iter().all(|&m| m)
}

/// Lexicographically first minimum placement on a stage graph with one cycle.
///
/// An upper bound comes from fixing a cycle edge with both ends driven: the
/// edge then never matters for forcing, and the rest is a tree. Smaller sizes
/// are settled by exhaustive search.
fn place_cycle(
    stage: &Stage,
    dec: &PactusDecomposition,
    c: usize,
    has_input: &[bool],
    tie_break: TieBreak,
    net: &StructuredNetwork,
) -> Result<Vec<usize>, ComposerError> {
    let forcing = can_force(stage);
    let candidates = pool(stage, has_input, tie_break, net);
    let local: BTreeMap<usize, usize> = stage
        .nodes
        .iter()
        .enumerate()
        .map(|(k, &v)| (v, k))
        .collect();

    let mut upper: Option<(usize, Vec<usize>)> = None;
    for &(a, b) in &dec.components[c].edges {
        let (la, lb) = (local[&a], local[&b]);
        let mut adjacency = stage.adjacency.clone();
        adjacency[la].retain(|&x| x != lb);
        adjacency[lb].retain(|&x| x != la);
        let mut inputs = has_input.to_vec();
        let mut fixed = Vec::new();
        for k in [la, lb] {
            if !inputs[k] {
                inputs[k] = true;
                fixed.push(k);
            }
        }
        let sub = Stage {
            nodes: stage.nodes.clone(),
            adjacency,
            boundary: stage.boundary.clone(),
            comp_len: stage.comp_len,
        };
        let rest = place_tree(&sub, &inputs, tie_break, net);
        fixed.extend(rest);
        if upper.as_ref().is_none_or(|(size, _)| fixed.len() < *size) {
            upper = Some((fixed.len(), fixed));
        }
    }
    let (bound, fallback) = upper.expect("a cycle has edges");

    let mut evaluations = 0u64;
    for k in 0..=bound {
        let total = binomial(candidates.len(), k);
        if k < bound && evaluations + total > CYCLE_SEARCH_BUDGET {
            return Err(ComposerError::SearchBudgetExceeded(c + 1));
        }
        if k == bound && evaluations + total > CYCLE_SEARCH_BUDGET {
            break;
        }
        evaluations += total;
        let found = (0..total).into_par_iter().find_first(|&r| {
            let pick = unrank_positions(candidates.len(), k, r);
            let extra: Vec<usize> = pick.iter().map(|&p| candidates[p]).collect();
            fully_forced(stage, has_input, &extra, &forcing)
        });
        if let Some(r) = found {
            return Ok(unrank_positions(candidates.len(), k, r)
                .into_iter()
                .map(|p| candidates[p])
                .collect());
        }
    }
    let mut fallback = fallback;
    fallback.sort_by_key(|k| candidates.iter().position(|c| c == k));
    Ok(fallback)
}

/// Positions of the `rank`-th `k`-subset of `0..len` in lexicographic order.
fn unrank_positions(len: usize, k: usize, rank: u64) -> Vec<usize> {
    // colexicographic unranking on reversed positions gives lexicographic
    // order on the originals
    let mask = unrank_combination(len, k, binomial(len, k) - 1 - rank);
    let mut out: Vec<usize> = (0..len)
        .filter(|&i| mask >> i & 1 == 1)
        .map(|i| len - 1 - i)
        .collect();
    out.sort_unstable();
    out
}

/// Apply the placement and run the exact checker. No accessibility
/// precondition: an inaccessible result simply reports not SSC.
pub fn verify_placement(
    net: &StructuredNetwork,
    placement: &InputPlacement,
    limit: usize,
) -> Result<SscReport, ComposerError> {
    Ok(evaluate_ssc(&placement.apply(net), limit)?)
}

/// Exhaustively check that no placement with fewer external inputs makes the
/// state graph SSC.
pub fn minimality_audit(
    net: &StructuredNetwork,
    placement: &InputPlacement,
    budget: usize,
) -> Result<bool, ComposerError> {
    let n = net.n();
    if n > budget {
        return Err(ComposerError::TooLarge { n, budget });
    }
    let state = net.state_only();
    for k in 0..placement.len() {
        let total = binomial(n, k);
        let smaller = (0..total).into_par_iter().any(|r| {
            let mask = unrank_combination(n, k, r);
            let targets: Vec<usize> = (0..n).filter(|&i| mask >> i & 1 == 1).collect();
            evaluate_ssc(&state.with_extra_inputs(&targets), n)
                .map(|r| r.is_ssc)
                .unwrap_or(false)
        });
        if smaller {
            return Ok(false);
        }
    }
    Ok(true)
}
