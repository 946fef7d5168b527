//! Exact girth and bounded enumeration of non-backtracking walks.

use crate::graph::{DirectedEdge, Multigraph};
use crate::walk::Walk;

/// Result of a girth computation. The witness of a finite girth is a shortest
/// cycle: strongly closed, non-backtracking, every edge used at most once.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum GirthResult {
    /// The graph is a forest.
    Infinite,
    Finite { length: usize, witness: Walk },
}

impl GirthResult {
    pub fn value(&self) -> Option<usize> {
        match self {
            GirthResult::Infinite => None,
            GirthResult::Finite { length, .. } => Some(*length),
        }
    }

    pub fn witness(&self) -> Option<&Walk> {
        match self {
            GirthResult::Infinite => None,
            GirthResult::Finite { witness, .. } => Some(witness),
        }
    }
}

/// Length of the shortest closed non-backtracking walk, with a witness.
///
/// Self-loops give girth 1 and parallel edges girth 2; otherwise the graph is
/// simple and the girth is found by a BFS from every vertex, keeping the best
/// reduced closed walk discovered from any non-tree edge.
pub fn girth(g: &Multigraph) -> GirthResult {
    // Self-loop: a single-step strongly closed walk.
    for (e, &(t, h)) in g.edges().iter().enumerate() {
        if t == h {
            let witness = Walk::from_parts_unchecked(t, vec![DirectedEdge::forward(e)]);
            return GirthResult::Finite { length: 1, witness };
        }
    }
    // Parallel pair: out along one edge, back along the other.
    {
        let mut normalized: Vec<(usize, usize, usize)> = g
            .edges()
            .iter()
            .enumerate()
            .map(|(e, &(t, h))| (t.min(h), t.max(h), e))
            .collect();
        normalized.sort_unstable();
        for pair in normalized.windows(2) {
            let (a1, b1, e1) = pair[0];
            let (a2, b2, e2) = pair[1];
            if (a1, b1) == (a2, b2) {
                let start = g.edge_endpoints(e1).0;
                let d1 = DirectedEdge::forward(e1);
                let d2 = if g.edge_endpoints(e2).0 == g.dart_head(d1) {
                    DirectedEdge::forward(e2)
                } else {
                    DirectedEdge::backward(e2)
                };
                let witness = Walk::from_parts_unchecked(start, vec![d1, d2]);
                return GirthResult::Finite { length: 2, witness };
            }
        }
    }

    let mut best: Option<(usize, Walk)> = None;
    let n = g.vertex_count();
    let mut dist = vec![usize::MAX; n];
    let mut parent = vec![None::<DirectedEdge>; n];
    let mut queue = Vec::with_capacity(n);
    for root in 0..n {
        dist.fill(usize::MAX);
        parent.fill(None);
        queue.clear();
        dist[root] = 0;
        queue.push(root);
        let mut head = 0;
        while head < queue.len() {
            let v = queue[head];
            head += 1;
            if let Some((len, _)) = &best {
                // A cycle of length L is found by depth ceil(L/2); nothing
                // shorter than the incumbent can appear deeper.
                if 2 * dist[v] >= *len {
                    break;
                }
            }
            for &d in g.darts_from(v) {
                if Some(d.inverse()) == parent[v] {
                    continue;
                }
                let w = g.dart_head(d);
                if dist[w] == usize::MAX {
                    dist[w] = dist[v] + 1;
                    parent[w] = Some(d);
                    queue.push(w);
                } else {
                    // Non-tree edge: the closed walk root->v, d, w->root
                    // traverses edge d exactly once, so it reduces to a
                    // non-empty closed non-backtracking walk.
                    let candidate = dist[v] + dist[w] + 1;
                    if best.as_ref().is_none_or(|(len, _)| candidate < *len) {
                        let walk = tree_closed_walk(g, &parent, root, v, d, w);
                        let reduced = walk.reduce();
                        debug_assert!(!reduced.is_empty());
                        if best.as_ref().is_none_or(|(len, _)| reduced.len() < *len) {
                            best = Some((reduced.len(), reduced));
                        }
                    }
                }
            }
        }
    }
    match best {
        None => GirthResult::Infinite,
        Some((length, witness)) => GirthResult::Finite { length, witness },
    }
}

/// Closed walk root -> v (tree path), dart d from v to w, then w -> root.
fn tree_closed_walk(
    g: &Multigraph,
    parent: &[Option<DirectedEdge>],
    root: usize,
    v: usize,
    d: DirectedEdge,
    w: usize,
) -> Walk {
    let up = |mut x: usize| {
        let mut path = Vec::new();
        while x != root {
            let pd = parent[x].expect("reached vertices have parents");
            path.push(pd);
            x = g.dart_tail(pd);
        }
        path.reverse();
        path
    };
    let mut steps = up(v);
    steps.push(d);
    let back = up(w);
    steps.extend(back.iter().rev().map(|pd| pd.inverse()));
    Walk::from_parts_unchecked(root, steps)
}

/// BFS distances from `v`; `None` marks unreachable vertices. Plain shortest
/// path lengths, which lower-bound non-backtracking walk lengths.
pub fn nb_distance_table(g: &Multigraph, v: usize) -> Vec<Option<usize>> {
    let mut dist = vec![None; g.vertex_count()];
    dist[v] = Some(0);
    let mut queue = vec![v];
    let mut head = 0;
    while head < queue.len() {
        let x = queue[head];
        head += 1;
        let dx = dist[x].unwrap();
        for &d in g.darts_from(x) {
            let y = g.dart_head(d);
            if dist[y].is_none() {
                dist[y] = Some(dx + 1);
                queue.push(y);
            }
        }
    }
    dist
}

/// Iterator over every non-backtracking walk of length exactly `h` starting
/// at `v`, in lexicographic dart order. Depth-first with an explicit stack.
pub fn enumerate_nb_walks(g: &Multigraph, v: usize, h: usize) -> NbWalkIter<'_> {
    assert!(h >= 1, "walk length must be at least 1");
    NbWalkIter {
        g,
        start: v,
        target: h,
        steps: Vec::with_capacity(h),
        cursor: vec![0],
        done: false,
    }
}

pub struct NbWalkIter<'g> {
    g: &'g Multigraph,
    start: usize,
    target: usize,
    steps: Vec<DirectedEdge>,
    /// cursor[i] = next dart index to try at depth i.
    cursor: Vec<usize>,
    done: bool,
}

impl Iterator for NbWalkIter<'_> {
    type Item = Walk;

    fn next(&mut self) -> Option<Walk> {
        if self.done {
            return None;
        }
        loop {
            let depth = self.steps.len();
            let at = match self.steps.last() {
                Some(&d) => self.g.dart_head(d),
                None => self.start,
            };
            let darts = self.g.darts_from(at);
            let mut i = self.cursor[depth];
            let mut advanced = false;
            while i < darts.len() {
                let d = darts[i];
                i += 1;
                if self.steps.last() == Some(&d.inverse()) {
                    continue;
                }
                self.cursor[depth] = i;
                self.steps.push(d);
                self.cursor.push(0);
                advanced = true;
                break;
            }
            if !advanced {
                // Exhausted this depth; backtrack.
                if self.steps.is_empty() {
                    self.done = true;
                    return None;
                }
                self.cursor.pop();
                self.steps.pop();
                continue;
            }
            if self.steps.len() == self.target {
                let walk = Walk::from_parts_unchecked(self.start, self.steps.clone());
                self.cursor.pop();
                self.steps.pop();
                return Some(walk);
            }
        }
    }
}
