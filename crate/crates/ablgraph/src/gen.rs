//! Constructors for the test families: cycles, complete graphs, the three
//! chi = -1 shapes, seeded random regular graphs, and exhaustive enumeration
//! of small leafless multigraphs up to isomorphism.
//!
//! Randomness comes from ChaCha8 (`rand_chacha::ChaCha8Rng`) seeded with a
//! 64-bit value, so every family is reproducible across platforms.

use std::collections::HashSet;

use rand::prelude::*;
use rand_chacha::ChaCha8Rng;
use thiserror::Error;

use crate::graph::Multigraph;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GenError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("pairing model failed to produce a simple graph after {attempts} attempts")]
    PairingBudgetExhausted { attempts: usize },
    #[error("enumeration bounds exceed the budget guard (max 7 vertices, 10 edges)")]
    BudgetExceeded,
}

/// Theta graph: vertices 0 and 1 joined by three internally disjoint paths
/// of lengths `l`, `m`, `n`.
pub fn make_theta(l: usize, m: usize, n: usize) -> Result<Multigraph, GenError> {
    if l < 1 || m < 1 || n < 1 {
        return Err(GenError::InvalidParams(
            "theta path lengths must be at least 1".into(),
        ));
    }
    let mut edges = Vec::new();
    let mut next = 2;
    for len in [l, m, n] {
        let mut prev = 0;
        for i in 0..len {
            let to = if i + 1 == len {
                1
            } else {
                next += 1;
                next - 1
            };
            edges.push((prev, to));
            prev = to;
        }
    }
    Ok(Multigraph::new(next, edges).expect("constructed ids are dense"))
}

/// Figure-eight: two cycles of lengths `m` and `n` sharing vertex 0.
pub fn make_figure_eight(m: usize, n: usize) -> Result<Multigraph, GenError> {
    if m < 1 || n < 1 {
        return Err(GenError::InvalidParams(
            "figure-eight cycle lengths must be at least 1".into(),
        ));
    }
    let mut edges = Vec::new();
    let mut next = 1;
    for len in [m, n] {
        append_cycle(&mut edges, &mut next, 0, len);
    }
    Ok(Multigraph::new(next, edges).expect("constructed ids are dense"))
}

/// Barbell: cycles of lengths `m` and `n` joined by a bar of length `b >= 1`.
pub fn make_barbell(m: usize, n: usize, b: usize) -> Result<Multigraph, GenError> {
    if m < 1 || n < 1 || b < 1 {
        return Err(GenError::InvalidParams(
            "barbell cycle and bar lengths must be at least 1".into(),
        ));
    }
    let mut edges = Vec::new();
    let mut next = 1;
    append_cycle(&mut edges, &mut next, 0, m);
    // Bar from vertex 0 to a fresh anchor.
    let mut prev = 0;
    for _ in 0..b {
        edges.push((prev, next));
        prev = next;
        next += 1;
    }
    let anchor = prev;
    append_cycle(&mut edges, &mut next, anchor, n);
    Ok(Multigraph::new(next, edges).expect("constructed ids are dense"))
}

/// Cycle at `anchor` of the given length using fresh vertex ids from `next`.
fn append_cycle(edges: &mut Vec<(usize, usize)>, next: &mut usize, anchor: usize, len: usize) {
    let mut prev = anchor;
    for i in 0..len {
        let to = if i + 1 == len {
            anchor
        } else {
            let v = *next;
            *next += 1;
            v
        };
        edges.push((prev, to));
        prev = to;
    }
}

pub fn make_cycle(n: usize) -> Result<Multigraph, GenError> {
    if n < 1 {
        return Err(GenError::InvalidParams("cycle length must be at least 1".into()));
    }
    let edges = (0..n).map(|i| (i, (i + 1) % n)).collect();
    Ok(Multigraph::new(n, edges).expect("constructed ids are dense"))
}

pub fn make_complete(n: usize) -> Result<Multigraph, GenError> {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            edges.push((i, j));
        }
    }
    Ok(Multigraph::new(n, edges).expect("constructed ids are dense"))
}

/// Simple d-regular graph on n vertices via the pairing model: shuffle the
/// n*d half-edge points and pair them off, rejecting pairings with loops or
/// repeated edges. Deterministic for a fixed seed.
pub fn random_regular(n: usize, d: usize, seed: u64) -> Result<Multigraph, GenError> {
    if n * d % 2 != 0 {
        return Err(GenError::InvalidParams("n * d must be even".into()));
    }
    if d >= n {
        return Err(GenError::InvalidParams("degree must be below n".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut points: Vec<usize> = (0..n * d).map(|i| i / d).collect();
    const MAX_ATTEMPTS: usize = 10_000;
    'attempts: for _ in 0..MAX_ATTEMPTS {
        points.shuffle(&mut rng);
        let mut seen = HashSet::with_capacity(n * d / 2);
        let mut edges = Vec::with_capacity(n * d / 2);
        for pair in points.chunks_exact(2) {
            let (u, v) = (pair[0], pair[1]);
            if u == v || !seen.insert((u.min(v), u.max(v))) {
                continue 'attempts;
            }
            edges.push((u.min(v), u.max(v)));
        }
        edges.sort_unstable();
        return Ok(Multigraph::new(n, edges).expect("points are valid ids"));
    }
    Err(GenError::PairingBudgetExhausted {
        attempts: MAX_ATTEMPTS,
    })
}

/// All connected multigraphs with min degree >= 2, at most `max_v` vertices
/// and `max_e` edges, one representative per isomorphism class.
///
/// Enumerates non-increasing degree sequences, fills in slot multiplicities
/// (loops and vertex pairs) meeting each sequence exactly, and deduplicates
/// by a canonical form taken over degree-preserving relabelings.
pub fn enumerate_small(max_v: usize, max_e: usize) -> Result<Vec<Multigraph>, GenError> {
    if max_v > 7 || max_e > 10 {
        return Err(GenError::BudgetExceeded);
    }
    let mut out = Vec::new();
    let mut seen = HashSet::new();
    for v in 1..=max_v {
        for e in v..=max_e {
            for degrees in degree_sequences(v, 2 * e) {
                enumerate_with_degrees(&degrees, e, &mut seen, &mut out);
            }
        }
    }
    Ok(out)
}

/// Non-increasing sequences of length `v`, each entry >= 2, summing to `total`.
fn degree_sequences(v: usize, total: usize) -> Vec<Vec<usize>> {
    fn rec(
        remaining_slots: usize,
        remaining_total: usize,
        max_next: usize,
        acc: &mut Vec<usize>,
        out: &mut Vec<Vec<usize>>,
    ) {
        if remaining_slots == 0 {
            if remaining_total == 0 {
                out.push(acc.clone());
            }
            return;
        }
        let lo = 2;
        let hi = max_next.min(remaining_total.saturating_sub(2 * (remaining_slots - 1)));
        for d in (lo..=hi).rev() {
            acc.push(d);
            rec(remaining_slots - 1, remaining_total - d, d, acc, out);
            acc.pop();
        }
    }
    let mut out = Vec::new();
    rec(v, total, total, &mut Vec::new(), &mut out);
    out
}

/// Slots in fixed order: loops at each vertex, then unordered pairs (i, j).
fn slots(v: usize) -> Vec<(usize, usize)> {
    let mut s: Vec<(usize, usize)> = (0..v).map(|i| (i, i)).collect();
    for i in 0..v {
        for j in i + 1..v {
            s.push((i, j));
        }
    }
    s
}

fn enumerate_with_degrees(
    degrees: &[usize],
    edge_count: usize,
    seen: &mut HashSet<Vec<u8>>,
    out: &mut Vec<Multigraph>,
) {
    let v = degrees.len();
    let slot_list = slots(v);
    // done_before[idx] lists the vertices that appear in no slot >= idx;
    // their remaining degree must be zero by then.
    let mut done_before = vec![Vec::new(); slot_list.len() + 1];
    for w in 0..v {
        let last = slot_list
            .iter()
            .rposition(|&(a, b)| a == w || b == w)
            .expect("every vertex has a loop slot");
        done_before[last + 1].push(w);
    }

    struct Ctx<'a> {
        slot_list: &'a [(usize, usize)],
        done_before: &'a [Vec<usize>],
        degrees: &'a [usize],
        seen: &'a mut HashSet<Vec<u8>>,
        out: &'a mut Vec<Multigraph>,
    }

    fn rec(
        ctx: &mut Ctx<'_>,
        idx: usize,
        edges_left: usize,
        mult: &mut [usize],
        remaining: &mut [usize],
    ) {
        for &w in &ctx.done_before[idx] {
            if remaining[w] != 0 {
                return;
            }
        }
        if idx == ctx.slot_list.len() {
            if edges_left == 0 {
                finish_candidate(ctx.slot_list, mult, ctx.degrees, ctx.seen, ctx.out);
            }
            return;
        }
        let (a, b) = ctx.slot_list[idx];
        let cap = if a == b {
            remaining[a] / 2
        } else {
            remaining[a].min(remaining[b])
        }
        .min(edges_left);
        for m in 0..=cap {
            if a == b {
                remaining[a] -= 2 * m;
            } else {
                remaining[a] -= m;
                remaining[b] -= m;
            }
            mult[idx] = m;
            rec(ctx, idx + 1, edges_left - m, mult, remaining);
            mult[idx] = 0;
            if a == b {
                remaining[a] += 2 * m;
            } else {
                remaining[a] += m;
                remaining[b] += m;
            }
        }
    }

    let mut mult = vec![0usize; slot_list.len()];
    let mut remaining: Vec<usize> = degrees.to_vec();
    let mut ctx = Ctx {
        slot_list: &slot_list,
        done_before: &done_before,
        degrees,
        seen,
        out,
    };
    rec(&mut ctx, 0, edge_count, &mut mult, &mut remaining);
}

fn finish_candidate(
    slot_list: &[(usize, usize)],
    mult: &[usize],
    degrees: &[usize],
    seen: &mut HashSet<Vec<u8>>,
    out: &mut Vec<Multigraph>,
) {
    let v = degrees.len();
    let mut edges = Vec::new();
    for (&(a, b), &m) in slot_list.iter().zip(mult) {
        for _ in 0..m {
            edges.push((a, b));
        }
    }
    let g = Multigraph::new(v, edges).expect("slot ids are valid");
    if !g.is_connected() {
        return;
    }
    let canon = canonical_form(&g, degrees);
    if seen.insert(canon) {
        out.push(g);
    }
}

/// Minimum slot-multiplicity encoding over all degree-preserving vertex
/// permutations. Graphs here have at most 7 vertices and multiplicities
/// under 256, so the encoding is a byte per slot.
fn canonical_form(g: &Multigraph, degrees: &[usize]) -> Vec<u8> {
    let v = g.vertex_count();
    let slot_list = slots(v);
    let mut slot_index = vec![vec![0usize; v]; v];
    for (k, &(a, b)) in slot_list.iter().enumerate() {
        slot_index[a][b] = k;
        slot_index[b][a] = k;
    }
    let mut base = vec![0u8; slot_list.len()];
    for &(t, h) in g.edges() {
        base[slot_index[t][h]] += 1;
    }

    let mut best: Option<Vec<u8>> = None;
    let mut perm: Vec<usize> = (0..v).collect();
    permute_within_degree_classes(&mut perm, 0, degrees, &mut |perm| {
        let mut enc = vec![0u8; slot_list.len()];
        for (k, &(a, b)) in slot_list.iter().enumerate() {
            let (pa, pb) = (perm[a], perm[b]);
            enc[slot_index[pa][pb]] += base[k];
        }
        if best.as_ref().is_none_or(|b| enc < *b) {
            best = Some(enc);
        }
    });
    best.expect("identity permutation always visited")
}

/// Visit every permutation that maps each vertex to one of equal degree.
/// Degrees are non-increasing, so classes are contiguous runs.
fn permute_within_degree_classes(
    perm: &mut Vec<usize>,
    from: usize,
    degrees: &[usize],
    visit: &mut impl FnMut(&[usize]),
) {
    let v = degrees.len();
    if from == v {
        visit(perm);
        return;
    }
    let class_end = (from..v)
        .take_while(|&i| degrees[i] == degrees[from])
        .last()
        .unwrap()
        + 1;
    // Heap-style recursion over the block [from, class_end).
    fn block_perms(
        perm: &mut Vec<usize>,
        lo: usize,
        hi: usize,
        rest: &mut dyn FnMut(&mut Vec<usize>),
    ) {
        if lo + 1 >= hi {
            rest(perm);
            return;
        }
        for i in lo..hi {
            perm.swap(lo, i);
            block_perms(perm, lo + 1, hi, rest);
            perm.swap(lo, i);
        }
    }
    let mut cont = |perm: &mut Vec<usize>| {
        permute_within_degree_classes(perm, class_end, degrees, visit);
    };
    block_perms(perm, from, class_end, &mut cont);
}
