//! Exact strong structural controllability by exhaustive subset enumeration.
//!
//! A network is SSC iff every non-empty subset `alpha` of state nodes has a
//! *dedicated* node: a node outside `alpha` (state or input) with exactly
//! one edge into `alpha`. Subsets are visited by increasing cardinality and,
//! within one cardinality, by increasing bitset value, so the reported
//! witness is the smallest failing subset under that order regardless of how
//! the work is split across threads.

use rayon::prelude::*;
use thiserror::Error;

use crate::graph::{is_accessible, NodeId, StructuredNetwork, SubsetAlpha};

/// Default cap on the number of state nodes for exhaustive enumeration.
pub const DEFAULT_EXACT_LIMIT: usize = 24;

/// Hard ceiling: subsets are `u64` bitsets and counts must fit in `u64`.
pub const MAX_EXACT_LIMIT: usize = 63;

const CHUNK: u64 = 1 << 14;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum SscError {
    #[error("network has {n} state nodes, exact enumeration limit is {limit}")]
    TooLarge { n: usize, limit: usize },
    #[error("network is not accessible from its inputs")]
    NotAccessible,
    #[error("node {0} is a member of alpha")]
    NodeInAlpha(NodeId),
    #[error("node {0} is not part of the network")]
    UnknownNode(NodeId),
}

/// Role of a node outside `alpha` relative to `alpha`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum NodeRole {
    Dedicated,
    Sharing,
    NotNeighbor,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SscReport {
    pub is_ssc: bool,
    /// First subset without a dedicated node, present iff `!is_ssc`.
    pub witness: Option<SubsetAlpha>,
    pub subsets_examined: u64,
}

/// Classify `node` (which must lie outside `alpha`) by `|N_node ∩ alpha|`.
pub fn classify_node(
    net: &StructuredNetwork,
    node: NodeId,
    alpha: SubsetAlpha,
) -> Result<NodeRole, SscError> {
    let hits = match node {
        NodeId::State(label) => {
            let i = net.index_of(label).ok_or(SscError::UnknownNode(node))?;
            if alpha.contains(i) {
                return Err(SscError::NodeInAlpha(node));
            }
            net.neighbors(i)
                .iter()
                .filter(|&&j| alpha.contains(j))
                .count()
        }
        NodeId::Input(label) => {
            let a = net
                .inputs()
                .iter()
                .find(|a| a.input == label)
                .ok_or(SscError::UnknownNode(node))?;
            usize::from(alpha.contains(a.target))
        }
    };
    Ok(match hits {
        0 => NodeRole::NotNeighbor,
        1 => NodeRole::Dedicated,
        _ => NodeRole::Sharing,
    })
}

/// Whether some node of `N(alpha) \ alpha` is dedicated.
pub fn has_dedicated(net: &StructuredNetwork, alpha: SubsetAlpha) -> bool {
    if net.supports_bitsets() {
        return Dedication::new(net).has_dedicated(alpha.mask());
    }
    if net.inputs().iter().any(|a| alpha.contains(a.target)) {
        return true;
    }
    (0..net.n()).filter(|&i| !alpha.contains(i)).any(|i| {
        net.neighbors(i)
            .iter()
            .filter(|&&j| alpha.contains(j))
            .count()
            == 1
    })
}

/// Precomputed masks for the hot enumeration loop.
struct Dedication {
    adjacency: Vec<u64>,
    inputs: u64,
}

impl Dedication {
    fn new(net: &StructuredNetwork) -> Self {
        Dedication {
            adjacency: (0..net.n()).map(|i| net.adjacency_mask(i)).collect(),
            inputs: net.input_target_mask(),
        }
    }

    #[inline]
    fn has_dedicated(&self, alpha: u64) -> bool {
        // an input attached inside alpha has exactly one edge into it
        if alpha & self.inputs != 0 {
            return true;
        }
        let mut outside = !alpha & mask_below(self.adjacency.len());
        while outside != 0 {
            let i = outside.trailing_zeros() as usize;
            outside &= outside - 1;
            if (self.adjacency[i] & alpha).count_ones() == 1 {
                return true;
            }
        }
        false
    }
}

fn mask_below(n: usize) -> u64 {
    if n >= 64 {
        u64::MAX
    } else {
        (1u64 << n) - 1
    }
}

/// Exact SSC decision. Requires an accessible network with `n <= limit`.
pub fn is_ssc_exact(net: &StructuredNetwork, limit: usize) -> Result<SscReport, SscError> {
    check_size(net, limit)?;
    if !is_accessible(net) {
        return Err(SscError::NotAccessible);
    }
    Ok(enumerate(net))
}

/// Exact SSC decision without the accessibility precondition; an
/// inaccessible network simply produces a failing witness.
pub fn evaluate_ssc(net: &StructuredNetwork, limit: usize) -> Result<SscReport, SscError> {
    check_size(net, limit)?;
    Ok(enumerate(net))
}

fn check_size(net: &StructuredNetwork, limit: usize) -> Result<(), SscError> {
    let limit = limit.min(MAX_EXACT_LIMIT);
    if net.n() > limit {
        return Err(SscError::TooLarge { n: net.n(), limit });
    }
    Ok(())
}

fn enumerate(net: &StructuredNetwork) -> SscReport {
    let n = net.n();
    let ded = Dedication::new(net);
    let mut examined = 0u64;
    for k in 1..=n {
        let total = binomial(n, k);
        let chunks = total.div_ceil(CHUNK);
        let failure = (0..chunks).into_par_iter().find_map_first(|c| {
            let start = c * CHUNK;
            let len = CHUNK.min(total - start);
            let mut mask = unrank_combination(n, k, start);
            for step in 0..len {
                if !ded.has_dedicated(mask) {
                    return Some(mask);
                }
                if step + 1 < len {
                    mask = next_combination(mask);
                }
            }
            None
        });
        if let Some(mask) = failure {
            examined += rank_combination(mask) + 1;
            return SscReport {
                is_ssc: false,
                witness: Some(SubsetAlpha::from_mask(mask).expect("k >= 1")),
                subsets_examined: examined,
            };
        }
        examined += total;
    }
    SscReport {
        is_ssc: true,
        witness: None,
        subsets_examined: examined,
    }
}

/// SSC nodes: state nodes `k` such that every subset containing `k` has a
/// dedicated node. One sweep over all subsets; members of failing subsets
/// are marked non-SSC. Returns sorted dense indices.
pub fn ssc_nodes(net: &StructuredNetwork, limit: usize) -> Result<Vec<usize>, SscError> {
    check_size(net, limit)?;
    if !is_accessible(net) {
        return Err(SscError::NotAccessible);
    }
    let n = net.n();
    let ded = Dedication::new(net);
    let last = mask_below(n);
    let chunks = last.div_ceil(CHUNK);
    let failing = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK + 1;
            let hi = (lo + CHUNK - 1).min(last);
            let mut acc = 0u64;
            for mask in lo..=hi {
                // a subset of the already-marked set adds nothing new
                if mask & !acc != 0 && !ded.has_dedicated(mask) {
                    acc |= mask;
                }
            }
            acc
        })
        .reduce(|| 0, |a, b| a | b);
    Ok((0..n).filter(|&i| failing >> i & 1 == 0).collect())
}

pub(crate) fn binomial(n: usize, k: usize) -> u64 {
    if k > n {
        return 0;
    }
    let k = k.min(n - k);
    let mut acc: u128 = 1;
    for i in 0..k {
        acc = acc * (n - i) as u128 / (i + 1) as u128;
    }
    acc as u64
}

/// Gosper's hack: next larger integer with the same popcount.
fn next_combination(mask: u64) -> u64 {
    let low = mask & mask.wrapping_neg();
    let ripple = mask + low;
    (((ripple ^ mask) >> 2) / low) | ripple
}

/// Position of `mask` among masks of equal popcount in increasing order
/// (combinatorial number system).
fn rank_combination(mask: u64) -> u64 {
    let mut rank = 0;
    let mut rest = mask;
    let mut i = 1;
    while rest != 0 {
        let c = rest.trailing_zeros() as usize;
        rest &= rest - 1;
        rank += binomial(c, i);
        i += 1;
    }
    rank
}

pub(crate) fn unrank_combination(n: usize, k: usize, mut rank: u64) -> u64 {
    let mut mask = 0u64;
    let mut upper = n;
    for i in (1..=k).rev() {
        let mut c = i - 1;
        // largest c < upper with C(c, i) <= rank
        let mut hi = upper;
        while hi > c + 1 {
            let mid = (c + hi) / 2;
            if binomial(mid, i) <= rank {
                c = mid;
            } else {
                hi = mid;
            }
        }
        mask |= 1 << c;
        rank -= binomial(c, i);
        upper = c;
    }
    mask
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_network;

    fn fig1a() -> StructuredNetwork {
        build_network(
            &[1, 2, 3, 4, 5],
            &[(1, 2), (2, 3), (2, 4), (4, 5)],
            &[(1, 3), (2, 5)],
        )
        .unwrap()
    }

    fn fig1b() -> StructuredNetwork {
        build_network(
            &[1, 2, 3, 4, 5],
            &[(1, 2), (2, 3), (2, 4), (4, 5)],
            &[(1, 4), (2, 5)],
        )
        .unwrap()
    }

    fn cycle4(inputs: &[(u32, u32)]) -> StructuredNetwork {
        build_network(&[1, 2, 3, 4], &[(1, 2), (2, 3), (3, 4), (4, 1)], inputs).unwrap()
    }

    #[test]
    fn classify_worked_example() {
        let net = fig1a();
        let alpha = net.subset(&[1, 3]).unwrap();
        assert_eq!(
            classify_node(&net, NodeId::State(2), alpha),
            Ok(NodeRole::Sharing)
        );
        assert_eq!(
            classify_node(&net, NodeId::Input(1), alpha),
            Ok(NodeRole::Dedicated)
        );
        assert_eq!(
            classify_node(&net, NodeId::Input(2), alpha),
            Ok(NodeRole::NotNeighbor)
        );
        assert_eq!(
            classify_node(&net, NodeId::State(5), alpha),
            Ok(NodeRole::NotNeighbor)
        );
        assert_eq!(
            classify_node(&net, NodeId::State(1), alpha),
            Err(SscError::NodeInAlpha(NodeId::State(1)))
        );
        assert_eq!(
            classify_node(&net, NodeId::Input(9), alpha),
            Err(SscError::UnknownNode(NodeId::Input(9)))
        );
    }

    #[test]
    fn input_is_dedicated_for_its_singleton() {
        let net = fig1a();
        let alpha = net.subset(&[3]).unwrap();
        assert_eq!(
            classify_node(&net, NodeId::Input(1), alpha),
            Ok(NodeRole::Dedicated)
        );
    }

    #[test]
    fn has_dedicated_examples() {
        let net = fig1a();
        assert!(has_dedicated(&net, net.subset(&[1, 3]).unwrap()));
        let net = fig1b();
        assert!(!has_dedicated(&net, net.subset(&[1, 3]).unwrap()));
        let net = cycle4(&[(1, 1), (2, 3)]);
        assert!(!has_dedicated(&net, net.subset(&[2, 4]).unwrap()));
    }

    #[test]
    fn exact_verdicts() {
        assert!(is_ssc_exact(&fig1a(), DEFAULT_EXACT_LIMIT).unwrap().is_ssc);
        assert!(
            is_ssc_exact(&cycle4(&[(1, 2), (2, 3)]), DEFAULT_EXACT_LIMIT)
                .unwrap()
                .is_ssc
        );

        let report = is_ssc_exact(&cycle4(&[(1, 1), (2, 3)]), DEFAULT_EXACT_LIMIT).unwrap();
        assert!(!report.is_ssc);
        let net = cycle4(&[(1, 1), (2, 3)]);
        assert_eq!(net.subset_labels(report.witness.unwrap()), vec![2, 4]);
        // all 4 singletons and the 6 pairs up to {2,4} in bitset order: 4 + 5
        assert_eq!(report.subsets_examined, 9);

        let report = is_ssc_exact(&fig1b(), DEFAULT_EXACT_LIMIT).unwrap();
        assert!(!report.is_ssc);
        assert!(!has_dedicated(&fig1b(), report.witness.unwrap()));
    }

    #[test]
    fn full_count_when_ssc() {
        let report = is_ssc_exact(&fig1a(), DEFAULT_EXACT_LIMIT).unwrap();
        assert_eq!(report.subsets_examined, 31);
    }

    #[test]
    fn preconditions() {
        assert_eq!(
            is_ssc_exact(&fig1a(), 4),
            Err(SscError::TooLarge { n: 5, limit: 4 })
        );
        assert_eq!(
            is_ssc_exact(&fig1a().state_only(), DEFAULT_EXACT_LIMIT),
            Err(SscError::NotAccessible)
        );
        let report = evaluate_ssc(&fig1a().state_only(), DEFAULT_EXACT_LIMIT).unwrap();
        assert!(!report.is_ssc);
    }

    #[test]
    fn ssc_node_sets() {
        let net = fig1a();
        assert_eq!(
            ssc_nodes(&net, DEFAULT_EXACT_LIMIT).unwrap(),
            vec![0, 1, 2, 3, 4]
        );

        // G1 with its bridge graph toward G2: path 1-2-3, bridges (2,6),(3,4)
        let net = build_network(
            &[1, 2, 3, 4, 6],
            &[(1, 2), (2, 3), (2, 6), (3, 4)],
            &[(1, 1), (2, 3)],
        )
        .unwrap();
        let labels: Vec<u32> = ssc_nodes(&net, DEFAULT_EXACT_LIMIT)
            .unwrap()
            .into_iter()
            .map(|i| net.label(i))
            .collect();
        assert_eq!(labels, vec![1, 2, 3, 4, 6]);
    }

    #[test]
    fn ssc_nodes_of_non_ssc_cycle() {
        // hand enumeration of the 15 subsets: every subset touching 1 or 3
        // has an input inside it, {2} and {4} each see node 1 as dedicated,
        // so {2,4} is the only failing subset.
        let net = cycle4(&[(1, 1), (2, 3)]);
        let labels: Vec<u32> = ssc_nodes(&net, DEFAULT_EXACT_LIMIT)
            .unwrap()
            .into_iter()
            .map(|i| net.label(i))
            .collect();
        assert_eq!(labels, vec![1, 3]);
    }

    #[test]
    fn combination_ranking_round_trips() {
        for n in 1..=10 {
            for k in 1..=n {
                let mut mask = (1u64 << k) - 1;
                for r in 0..binomial(n, k) {
                    assert_eq!(unrank_combination(n, k, r), mask);
                    assert_eq!(rank_combination(mask), r);
                    if r + 1 < binomial(n, k) {
                        mask = next_combination(mask);
                    }
                }
            }
        }
    }
}
