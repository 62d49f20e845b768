//! Path-partition dynamic programme on forests.
//!
//! A forest with input-marked nodes is fully forced iff its vertex set splits
//! into vertex-disjoint paths, each holding exactly one input node, located at
//! one of the path's ends. The programme below finds the fewest extra inputs
//! (drawn from a pool) that make such a partition exist.
//!
//! Nodes that cannot force (boundary leaves whose true neighbourhood is
//! larger) may carry an input only as a single-node path.

const INF: i64 = 1 << 40;

#[derive(Debug, Clone, Copy)]
struct Costs {
    // v's path is finished inside the subtree
    closed: i64,
    // v's path continues to the parent and holds no input
    open_none: i64,
    // v's path continues to the parent and its single input sits at the lower end
    open_far: i64,
}

fn clamp(x: i64) -> i64 {
    x.min(INF)
}

/// Fewest extra inputs from `poolable` so that the forest is fully forced, or
/// `None` if no choice from the pool suffices.
///
/// `adjacency` must describe a forest.
pub fn min_extra_inputs(
    adjacency: &[Vec<usize>],
    has_input: &[bool],
    poolable: &[bool],
    can_force: &[bool],
) -> Option<usize> {
    let n = adjacency.len();
    let mut visited = vec![false; n];
    let mut costs = vec![
        Costs {
            closed: INF,
            open_none: INF,
            open_far: INF
        };
        n
    ];
    let mut total = 0i64;

    // root each tree at a node that can force when possible, so that the
    // non-forcing boundary leaves stay leaves
    let mut roots: Vec<usize> = (0..n).filter(|&v| can_force[v]).collect();
    roots.extend((0..n).filter(|&v| !can_force[v]));

    for root in roots {
        if visited[root] {
            continue;
        }
        let mut order = Vec::new();
        let mut parent = vec![usize::MAX; n];
        let mut stack = vec![root];
        visited[root] = true;
        while let Some(v) = stack.pop() {
            order.push(v);
            for &w in &adjacency[v] {
                if !visited[w] {
                    visited[w] = true;
                    parent[w] = v;
                    stack.push(w);
                }
            }
        }
        for &v in order.iter().rev() {
            let children: Vec<usize> = adjacency[v]
                .iter()
                .copied()
                .filter(|&w| parent[w] == v && w != root)
                .collect();
            costs[v] = node_costs(v, &children, &costs, has_input, poolable, can_force);
        }
        total = clamp(total + costs[root].closed);
    }
    (total < INF).then_some(total as usize)
}

fn node_costs(
    v: usize,
    children: &[usize],
    costs: &[Costs],
    has_input: &[bool],
    poolable: &[bool],
    can_force: &[bool],
) -> Costs {
    let rest = |skip: &[usize]| -> i64 {
        children
            .iter()
            .filter(|c| !skip.contains(c))
            .map(|&c| costs[c].closed)
            .sum()
    };
    let base = clamp(rest(&[]));
    let best_single = |open: fn(&Costs) -> i64| -> i64 {
        children
            .iter()
            .map(|&c| clamp(rest(&[c]) + open(&costs[c])))
            .min()
            .unwrap_or(INF)
    };
    let single_none = best_single(|c| c.open_none);
    let single_far = best_single(|c| c.open_far);

    let mut pair = INF;
    for a in 0..children.len() {
        for b in 0..children.len() {
            if a == b {
                continue;
            }
            let (ca, cb) = (children[a], children[b]);
            pair = pair.min(clamp(
                rest(&[ca, cb]) + costs[ca].open_far + costs[cb].open_none,
            ));
        }
    }

    let mut out = Costs {
        closed: INF,
        open_none: INF,
        open_far: INF,
    };
    let mut choices = vec![];
    if has_input[v] {
        choices.push((true, 0));
    } else {
        choices.push((false, 0));
        if poolable[v] {
            choices.push((true, 1));
        }
    }
    for (vin, extra) in choices {
        if vin {
            out.closed = out.closed.min(clamp(base + extra));
            if can_force[v] {
                out.open_far = out.open_far.min(clamp(base + extra));
                out.closed = out.closed.min(clamp(single_none + extra));
            }
        } else {
            out.open_none = out.open_none.min(base).min(single_none);
            out.open_far = out.open_far.min(single_far);
            out.closed = out.closed.min(single_far).min(pair);
        }
    }
    out
}
