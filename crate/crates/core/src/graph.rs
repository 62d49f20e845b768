//! Structured network model: state nodes joined by undirected couplings,
//! external inputs attached to single state nodes, and an implicit negative
//! self-loop on every state node.
//!
//! State nodes carry user-facing positive labels but are addressed
//! internally by a dense index `0..n` (sorted by label). Subsets of state
//! nodes used by the exact checker are `u64` bitsets over that index.

use std::collections::{BTreeMap, BTreeSet, VecDeque};
use std::fmt;

use thiserror::Error;

/// Largest network for which [`SubsetAlpha`] bitsets can be formed.
pub const MAX_BITSET_NODES: usize = 64;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("network has no state nodes")]
    EmptyStateSet,
    #[error("node labels must be positive integers")]
    ZeroLabel,
    #[error("edge ({0}, {1}) references an unknown state node")]
    DanglingEdge(u32, u32),
    #[error("edge ({0}, {0}) is a self-pair; self-loops are implicit on every state node")]
    SelfPair(u32),
    #[error("input u{0} is attached more than once")]
    DuplicateInputAttachment(u32),
    #[error("input u{input} targets unknown state node {target}")]
    UnknownTarget { input: u32, target: u32 },
    #[error("state node {0} does not exist")]
    UnknownNode(u32),
    #[error("subset is empty")]
    EmptySubset,
    #[error("bitset subsets need at most {MAX_BITSET_NODES} state nodes, network has {0}")]
    TooManyNodesForBitset(usize),
}

/// A node of the network graph `G(T)`: either a state node or an input node.
/// The two label spaces are disjoint by construction.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub enum NodeId {
    State(u32),
    Input(u32),
}

impl fmt::Display for NodeId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            NodeId::State(l) => write!(f, "{l}"),
            NodeId::Input(l) => write!(f, "u{l}"),
        }
    }
}

/// Directed attachment `input -> target`, with `target` a dense state index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct InputAttachment {
    pub input: u32,
    pub target: usize,
}

/// Non-empty subset of state nodes as a bitset over the dense index.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct SubsetAlpha(u64);

impl SubsetAlpha {
    pub fn from_mask(mask: u64) -> Result<Self, GraphError> {
        if mask == 0 {
            return Err(GraphError::EmptySubset);
        }
        Ok(SubsetAlpha(mask))
    }

    pub fn mask(self) -> u64 {
        self.0
    }

    pub fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    pub fn is_empty(self) -> bool {
        self.0 == 0
    }

    pub fn contains(self, index: usize) -> bool {
        index < 64 && self.0 >> index & 1 == 1
    }

    pub fn indices(self) -> impl Iterator<Item = usize> {
        let mut rest = self.0;
        std::iter::from_fn(move || {
            if rest == 0 {
                return None;
            }
            let i = rest.trailing_zeros() as usize;
            rest &= rest - 1;
            Some(i)
        })
    }
}

/// Immutable, validated structured network.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct StructuredNetwork {
    labels: Vec<u32>,
    index: BTreeMap<u32, usize>,
    edges: Vec<(usize, usize)>,
    adjacency: Vec<Vec<usize>>,
    // per-node neighbour bitsets; empty when n > 64
    adjacency_masks: Vec<u64>,
    inputs: Vec<InputAttachment>,
}

/// Validate raw node, edge and attachment lists into a canonical network.
///
/// Duplicate state labels and duplicate undirected edges are collapsed.
/// Attachments are `(input label, target state label)`.
pub fn build_network(
    state_nodes: &[u32],
    state_edges: &[(u32, u32)],
    input_attachments: &[(u32, u32)],
) -> Result<StructuredNetwork, GraphError> {
    let labels: Vec<u32> = state_nodes
        .iter()
        .copied()
        .collect::<BTreeSet<_>>()
        .into_iter()
        .collect();
    if labels.is_empty() {
        return Err(GraphError::EmptyStateSet);
    }
    if labels[0] == 0 {
        return Err(GraphError::ZeroLabel);
    }
    let index: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();

    let mut edge_set = BTreeSet::new();
    for &(a, b) in state_edges {
        if a == b {
            return Err(GraphError::SelfPair(a));
        }
        let (Some(&i), Some(&j)) = (index.get(&a), index.get(&b)) else {
            return Err(GraphError::DanglingEdge(a, b));
        };
        edge_set.insert((i.min(j), i.max(j)));
    }

    let mut seen_inputs = BTreeSet::new();
    let mut inputs = Vec::with_capacity(input_attachments.len());
    for &(input, target) in input_attachments {
        if input == 0 {
            return Err(GraphError::ZeroLabel);
        }
        if !seen_inputs.insert(input) {
            return Err(GraphError::DuplicateInputAttachment(input));
        }
        let &t = index
            .get(&target)
            .ok_or(GraphError::UnknownTarget { input, target })?;
        inputs.push(InputAttachment { input, target: t });
    }
    inputs.sort();

    Ok(StructuredNetwork::assemble(
        labels,
        index,
        edge_set.into_iter().collect(),
        inputs,
    ))
}

impl StructuredNetwork {
    fn assemble(
        labels: Vec<u32>,
        index: BTreeMap<u32, usize>,
        edges: Vec<(usize, usize)>,
        inputs: Vec<InputAttachment>,
    ) -> Self {
        let n = labels.len();
        let mut adjacency = vec![Vec::new(); n];
        for &(i, j) in &edges {
            adjacency[i].push(j);
            adjacency[j].push(i);
        }
        for list in &mut adjacency {
            list.sort_unstable();
        }
        let adjacency_masks = if n <= MAX_BITSET_NODES {
            adjacency
                .iter()
                .map(|list| list.iter().fold(0u64, |m, &j| m | 1 << j))
                .collect()
        } else {
            Vec::new()
        };
        StructuredNetwork {
            labels,
            index,
            edges,
            adjacency,
            adjacency_masks,
            inputs,
        }
    }

    /// Number of state nodes.
    pub fn n(&self) -> usize {
        self.labels.len()
    }

    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, index: usize) -> u32 {
        self.labels[index]
    }

    pub fn index_of(&self, label: u32) -> Option<usize> {
        self.index.get(&label).copied()
    }

    /// Undirected state edges as sorted dense index pairs `(i, j)`, `i < j`.
    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn neighbors(&self, index: usize) -> &[usize] {
        &self.adjacency[index]
    }

    pub fn degree(&self, index: usize) -> usize {
        self.adjacency[index].len()
    }

    pub fn has_edge(&self, i: usize, j: usize) -> bool {
        self.adjacency[i].binary_search(&j).is_ok()
    }

    pub fn inputs(&self) -> &[InputAttachment] {
        &self.inputs
    }

    /// Dense indices of state nodes with at least one input, sorted, deduplicated.
    pub fn input_targets(&self) -> Vec<usize> {
        self.inputs
            .iter()
            .map(|a| a.target)
            .collect::<BTreeSet<_>>()
            .into_iter()
            .collect()
    }

    /// Bitset of state nodes carrying an input. Requires `n <= 64`.
    pub fn input_target_mask(&self) -> u64 {
        self.inputs.iter().fold(0u64, |m, a| m | 1 << a.target)
    }

    /// Neighbour bitset of state node `index`. Requires `n <= 64`.
    pub fn adjacency_mask(&self, index: usize) -> u64 {
        self.adjacency_masks[index]
    }

    pub fn supports_bitsets(&self) -> bool {
        self.n() <= MAX_BITSET_NODES
    }

    /// Bitset of all state nodes.
    pub fn full_mask(&self) -> u64 {
        match self.n() {
            64 => u64::MAX,
            n => (1u64 << n) - 1,
        }
    }

    pub fn node_id(&self, index: usize) -> NodeId {
        NodeId::State(self.labels[index])
    }

    /// Subset from state labels.
    pub fn subset(&self, labels: &[u32]) -> Result<SubsetAlpha, GraphError> {
        if !self.supports_bitsets() {
            return Err(GraphError::TooManyNodesForBitset(self.n()));
        }
        let mut mask = 0u64;
        for &l in labels {
            let i = self.index_of(l).ok_or(GraphError::UnknownNode(l))?;
            mask |= 1 << i;
        }
        SubsetAlpha::from_mask(mask)
    }

    pub fn subset_labels(&self, alpha: SubsetAlpha) -> Vec<u32> {
        alpha.indices().map(|i| self.labels[i]).collect()
    }

    /// Same state graph with the given input attachments replacing the current ones.
    pub fn with_inputs(&self, inputs: Vec<InputAttachment>) -> Self {
        let mut inputs = inputs;
        inputs.sort();
        StructuredNetwork::assemble(
            self.labels.clone(),
            self.index.clone(),
            self.edges.clone(),
            inputs,
        )
    }

    /// Same state graph with no inputs.
    pub fn state_only(&self) -> Self {
        self.with_inputs(Vec::new())
    }

    /// Copy with extra attachments to the given dense targets; new input labels
    /// continue after the current largest one.
    pub fn with_extra_inputs(&self, targets: &[usize]) -> Self {
        let first = self.inputs.iter().map(|a| a.input).max().unwrap_or(0) + 1;
        let mut inputs = self.inputs.clone();
        inputs.extend(
            (first..)
                .zip(targets)
                .map(|(input, &target)| InputAttachment { input, target }),
        );
        self.with_inputs(inputs)
    }

    /// Subnetwork induced by `nodes` (dense indices of `self`), keeping
    /// attachments that target those nodes.
    pub fn induced(&self, nodes: &[usize]) -> Self {
        let keep: BTreeSet<usize> = nodes.iter().copied().collect();
        let labels: Vec<u32> = keep.iter().map(|&i| self.labels[i]).collect();
        let index: BTreeMap<u32, usize> = labels.iter().enumerate().map(|(i, &l)| (l, i)).collect();
        let remap = |i: usize| index[&self.labels[i]];
        let edges = self
            .edges
            .iter()
            .filter(|(i, j)| keep.contains(i) && keep.contains(j))
            .map(|&(i, j)| (remap(i), remap(j)))
            .collect();
        let inputs = self
            .inputs
            .iter()
            .filter(|a| keep.contains(&a.target))
            .map(|a| InputAttachment {
                input: a.input,
                target: remap(a.target),
            })
            .collect();
        StructuredNetwork::assemble(labels, index, edges, inputs)
    }

    /// Whether the undirected state graph is connected.
    pub fn is_state_connected(&self) -> bool {
        let reached = self.reach_from(&[0]);
        reached.iter().all(|&r| r)
    }

    fn reach_from(&self, sources: &[usize]) -> Vec<bool> {
        let mut seen = vec![false; self.n()];
        let mut queue: VecDeque<usize> = VecDeque::new();
        for &s in sources {
            if !seen[s] {
                seen[s] = true;
                queue.push_back(s);
            }
        }
        while let Some(v) = queue.pop_front() {
            for &w in &self.adjacency[v] {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back(w);
                }
            }
        }
        seen
    }
}

/// `N(alpha) \ alpha`: every node outside `alpha` with an edge into it,
/// including input nodes attached to a member of `alpha`.
pub fn neighbors_of_set(net: &StructuredNetwork, alpha: SubsetAlpha) -> BTreeSet<NodeId> {
    let mut out = BTreeSet::new();
    for i in alpha.indices() {
        for &j in net.neighbors(i) {
            if !alpha.contains(j) {
                out.insert(net.node_id(j));
            }
        }
    }
    for a in net.inputs() {
        if alpha.contains(a.target) {
            out.insert(NodeId::Input(a.input));
        }
    }
    out
}

/// Every state node is reachable from some input node.
pub fn is_accessible(net: &StructuredNetwork) -> bool {
    let sources = net.input_targets();
    if sources.is_empty() {
        return false;
    }
    net.reach_from(&sources).iter().all(|&r| r)
}
