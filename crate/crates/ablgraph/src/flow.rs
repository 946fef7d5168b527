//! Unit-capacity min-cost flow by successive shortest paths, used to find a
//! cheapest triple of edge-disjoint paths between two vertices.
//!
//! Every undirected edge becomes two opposing unit-capacity arcs of cost 1.
//! With nonnegative costs an integral min-cost flow never saturates both arcs
//! of one edge, so the three flow units decompose into edge-disjoint
//! undirected paths.

use std::collections::VecDeque;

use crate::graph::Multigraph;

struct Arc {
    to: usize,
    residual: u32,
    cost: i64,
    /// Edge id of the underlying undirected edge, or usize::MAX for the
    /// reverse (residual) direction bookkeeping.
    edge: usize,
    /// +1 if this arc runs tail->head of `edge`, -1 otherwise, 0 for
    /// residual-only arcs.
    dir: i8,
}

pub struct DisjointPaths {
    /// Sorted ids of the edges used by the three paths.
    pub edges: Vec<usize>,
    /// Total length (equals `edges.len()`).
    pub total: usize,
}

/// Minimum total length of `k` edge-disjoint undirected paths from `u` to
/// `v`, or None when fewer than `k` exist. `u != v`.
pub fn min_cost_disjoint_paths(
    g: &Multigraph,
    u: usize,
    v: usize,
    k: u32,
) -> Option<DisjointPaths> {
    debug_assert_ne!(u, v);
    let n = g.vertex_count();
    let mut arcs: Vec<Arc> = Vec::with_capacity(4 * g.edge_count());
    let mut adj: Vec<Vec<usize>> = vec![Vec::new(); n];
    for (e, &(t, h)) in g.edges().iter().enumerate() {
        if t == h {
            continue; // a loop can never lie on a u-v path triple
        }
        for (a, b, dir) in [(t, h, 1i8), (h, t, -1i8)] {
            adj[a].push(arcs.len());
            arcs.push(Arc {
                to: b,
                residual: 1,
                cost: 1,
                edge: e,
                dir,
            });
            adj[b].push(arcs.len());
            arcs.push(Arc {
                to: a,
                residual: 0,
                cost: -1,
                edge: e,
                dir: 0,
            });
        }
    }

    // Each augmentation keeps the flow min-cost for its value, so the
    // residual graph has no negative cycle and Bellman-Ford (SPFA) finds
    // shortest paths despite the -1 residual costs.
    let mut dist = vec![i64::MAX; n];
    let mut parent_arc = vec![usize::MAX; n];
    let mut in_queue = vec![false; n];
    let mut pushed = 0;
    while pushed < k {
        dist.fill(i64::MAX);
        parent_arc.fill(usize::MAX);
        dist[u] = 0;
        let mut queue = VecDeque::from([u]);
        in_queue.fill(false);
        in_queue[u] = true;
        while let Some(x) = queue.pop_front() {
            in_queue[x] = false;
            let dx = dist[x];
            for &ai in &adj[x] {
                let arc = &arcs[ai];
                if arc.residual == 0 {
                    continue;
                }
                let nd = dx + arc.cost;
                if nd < dist[arc.to] {
                    dist[arc.to] = nd;
                    parent_arc[arc.to] = ai;
                    if !in_queue[arc.to] {
                        in_queue[arc.to] = true;
                        queue.push_back(arc.to);
                    }
                }
            }
        }
        if parent_arc[v] == usize::MAX {
            return None; // max flow below k
        }
        // Unit augmentation along the shortest path.
        let mut x = v;
        while x != u {
            let ai = parent_arc[x];
            arcs[ai].residual -= 1;
            arcs[ai ^ 1].residual += 1;
            x = arcs[ai ^ 1].to;
        }
        pushed += 1;
    }

    // Per-edge net direction: +-1 when the edge carries flow.
    let mut used = vec![0i8; g.edge_count()];
    for arc in &arcs {
        if arc.dir != 0 && arc.residual == 0 {
            used[arc.edge] += arc.dir;
        }
    }
    let edges: Vec<usize> = (0..g.edge_count()).filter(|&e| used[e] != 0).collect();
    let total = edges.len();
    Some(DisjointPaths { edges, total })
}
