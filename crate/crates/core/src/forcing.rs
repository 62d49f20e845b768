//! Polynomial-time SSC decision by forcing closure.
//!
//! Start with every input-attached state node marked. Repeatedly, a marked
//! node with exactly one unmarked neighbour marks that neighbour. The nodes
//! never marked form the union of all subsets that lack a dedicated node:
//! the first node of such a subset to be marked would need a marked forcer
//! with exactly one edge into the subset, i.e. a dedicated node. So the
//! marked set is exactly the SSC-node set, and the network is SSC iff every
//! state node ends up marked.
//!
//! This gives a second, independent route to the enumeration in
//! [`crate::ssc`], valid for networks of any size.

use std::collections::VecDeque;

use crate::graph::StructuredNetwork;

/// Run the closure on a plain adjacency structure.
///
/// `marked` is updated in place. Nodes with `can_force[v] == false` may be
/// marked but never force a neighbour; this models boundary nodes whose
/// remaining neighbourhood is not part of `adjacency`.
pub fn close(adjacency: &[Vec<usize>], marked: &mut [bool], can_force: &[bool]) {
    let n = adjacency.len();
    let mut unmarked_around: Vec<usize> = adjacency
        .iter()
        .map(|list| list.iter().filter(|&&w| !marked[w]).count())
        .collect();
    let mut queue: VecDeque<usize> = (0..n)
        .filter(|&v| marked[v] && can_force[v] && unmarked_around[v] == 1)
        .collect();
    while let Some(v) = queue.pop_front() {
        if unmarked_around[v] != 1 {
            continue;
        }
        let target = adjacency[v]
            .iter()
            .copied()
            .find(|&w| !marked[w])
            .expect("count says one unmarked neighbour");
        marked[target] = true;
        for &w in &adjacency[target] {
            unmarked_around[w] -= 1;
            if marked[w] && can_force[w] && unmarked_around[w] == 1 {
                queue.push_back(w);
            }
        }
        if can_force[target] && unmarked_around[target] == 1 {
            queue.push_back(target);
        }
    }
}

/// Marked state nodes after the closure seeded by the network's inputs.
pub fn forcing_closure(net: &StructuredNetwork) -> Vec<bool> {
    let adjacency: Vec<Vec<usize>> = (0..net.n()).map(|i| net.neighbors(i).to_vec()).collect();
    let mut marked = vec![false; net.n()];
    for a in net.inputs() {
        marked[a.target] = true;
    }
    close(&adjacency, &mut marked, &vec![true; net.n()]);
    marked
}

/// SSC nodes (sorted dense indices) via the closure.
pub fn ssc_nodes_by_forcing(net: &StructuredNetwork) -> Vec<usize> {
    forcing_closure(net)
        .into_iter()
        .enumerate()
        .filter_map(|(i, m)| m.then_some(i))
        .collect()
}

pub fn is_ssc_by_forcing(net: &StructuredNetwork) -> bool {
    forcing_closure(net).into_iter().all(|m| m)
}
