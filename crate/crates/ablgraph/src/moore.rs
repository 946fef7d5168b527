//! Constructive upper bounds on abelian girth from the volume argument.
//!
//! In a graph of minimum degree d >= 3 there are at least d(d-1)^(h-1)
//! non-backtracking walks of length h from any vertex. Once that count
//! reaches 2n+1, three of them share both endpoints; combining the three into
//! a commutator or a six-factor word gives an edge-neutral closed walk whose
//! reduction is non-empty, certifying abl <= 6h (or 4h when the meeting
//! vertex is the base).

use thiserror::Error;

use crate::girth::enumerate_nb_walks;
use crate::graph::Multigraph;
use crate::walk::{commutator, triple_word, Walk};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MooreError {
    #[error("minimum degree {found} is below 3")]
    MinDegreeTooSmall { found: usize },
    #[error("degree must be at least 3, got {0}")]
    DegreeTooSmall(usize),
    #[error("no terminal vertex collected three walks (saw {walks_seen}); pigeonhole precondition violated")]
    NotEnoughWalks { walks_seen: usize },
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("theorem contradiction: the combined walk reduced to the empty walk")]
    TheoremContradiction,
}

/// A replayable certificate that abl(G) <= bound.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct MooreCertificate {
    pub base_vertex: usize,
    pub meeting_vertex: usize,
    /// Common length of the three walks.
    pub h: usize,
    pub walks: [Walk; 3],
    /// Reduction of the combined edge-neutral walk; non-empty, closed,
    /// non-backtracking, edge neutral.
    pub ell_reduced: Walk,
    /// Length of `ell_reduced`: <= 4h when base == meeting, else <= 6h.
    pub bound: usize,
}

/// Smallest h >= 1 with d(d-1)^(h-1) >= 2n + 1.
pub fn moore_h(n: usize, d: usize) -> Result<usize, MooreError> {
    if d < 3 {
        return Err(MooreError::DegreeTooSmall(d));
    }
    let target = 2 * n as u128 + 1;
    let mut h = 1;
    let mut count = d as u128;
    while count < target {
        count = count.saturating_mul(d as u128 - 1);
        h += 1;
    }
    Ok(h)
}

/// Enumerate non-backtracking walks of length `h` from `v` in deterministic
/// order, bucketing by terminal vertex; returns the first bucket to reach
/// three walks.
pub fn find_three_walks(
    g: &Multigraph,
    v: usize,
    h: usize,
) -> Result<(usize, [Walk; 3]), MooreError> {
    let mut buckets: Vec<Vec<Walk>> = vec![Vec::new(); g.vertex_count()];
    let mut seen = 0;
    for walk in enumerate_nb_walks(g, v, h) {
        seen += 1;
        let end = walk.end(g);
        let bucket = &mut buckets[end];
        bucket.push(walk);
        if bucket.len() == 3 {
            let mut it = bucket.drain(..);
            let walks = [
                it.next().unwrap(),
                it.next().unwrap(),
                it.next().unwrap(),
            ];
            return Ok((end, walks));
        }
    }
    Err(MooreError::NotEnoughWalks { walks_seen: seen })
}

/// Pick the first pair (by (a,b), (a,c), (b,c)) that is not mutually inverse.
/// Three distinct walks contain at most one inverse pair, so this succeeds.
fn non_inverse_pair<'w>(g: &Multigraph, walks: &'w [Walk; 3]) -> (&'w Walk, &'w Walk) {
    let [a, b, c] = walks;
    for (x, y) in [(a, b), (a, c), (b, c)] {
        if y != &x.inverse(g) {
            return (x, y);
        }
    }
    unreachable!("two of three distinct walks are not mutually inverse");
}

/// Build `ell` from three walks sharing endpoints: the commutator of a
/// non-inverse pair when the walks are closed, the six-factor word otherwise.
pub(crate) fn build_ell(g: &Multigraph, v: usize, u: usize, walks: &[Walk; 3]) -> Walk {
    if u == v {
        let (a, b) = non_inverse_pair(g, walks);
        commutator(g, a, b).expect("walks are closed at v")
    } else {
        triple_word(g, &walks[0], &walks[1], &walks[2]).expect("walks share endpoints")
    }
}

/// Certify an upper bound on the abelian girth of a graph of minimum degree
/// at least 3, starting the walk enumeration at `v`.
pub fn certify_abl_upper(g: &Multigraph, v: usize) -> Result<MooreCertificate, MooreError> {
    let min_degree = g
        .min_degree()
        .ok_or_else(|| MooreError::InvalidInput("graph has no vertices".into()))?;
    if min_degree < 3 {
        return Err(MooreError::MinDegreeTooSmall { found: min_degree });
    }
    if v >= g.vertex_count() {
        return Err(MooreError::InvalidInput(format!(
            "start vertex {v} out of range"
        )));
    }
    let h = moore_h(g.vertex_count(), min_degree)?;
    let (u, walks) = find_three_walks(g, v, h)?;
    finish_certificate(g, v, u, h, walks)
}

/// Certify abl <= 4l from three distinct closed non-backtracking walks of
/// length `l` at `v`.
pub fn scholium_certify(
    g: &Multigraph,
    v: usize,
    l: usize,
    walks: [Walk; 3],
) -> Result<MooreCertificate, MooreError> {
    for (i, w) in walks.iter().enumerate() {
        if w.len() != l {
            return Err(MooreError::InvalidInput(format!(
                "walk {i} has length {}, expected {l}",
                w.len()
            )));
        }
        if w.start() != v || !w.is_closed(g) {
            return Err(MooreError::InvalidInput(format!(
                "walk {i} is not closed at {v}"
            )));
        }
        if !w.is_non_backtracking() {
            return Err(MooreError::InvalidInput(format!("walk {i} backtracks")));
        }
    }
    if walks[0] == walks[1] || walks[0] == walks[2] || walks[1] == walks[2] {
        return Err(MooreError::InvalidInput("walks are not distinct".into()));
    }
    finish_certificate(g, v, v, l, walks)
}

fn finish_certificate(
    g: &Multigraph,
    v: usize,
    u: usize,
    h: usize,
    walks: [Walk; 3],
) -> Result<MooreCertificate, MooreError> {
    let ell = build_ell(g, v, u, &walks);
    let ell_reduced = ell.reduce();
    if ell_reduced.is_empty() {
        return Err(MooreError::TheoremContradiction);
    }
    debug_assert!(ell_reduced.is_closed(g));
    debug_assert!(ell_reduced.is_edge_neutral(g));
    let bound = ell_reduced.len();
    Ok(MooreCertificate {
        base_vertex: v,
        meeting_vertex: u,
        h,
        walks,
        ell_reduced,
        bound,
    })
}

/// Replay a certificate against a graph without re-searching.
pub fn replay_certificate(g: &Multigraph, cert: &MooreCertificate) -> Result<(), MooreError> {
    let fail = |msg: &str| Err(MooreError::InvalidInput(msg.into()));
    let (v, u) = (cert.base_vertex, cert.meeting_vertex);
    for w in &cert.walks {
        let rebuilt = Walk::from_parts(g, w.start(), w.steps().to_vec())
            .map_err(|e| MooreError::InvalidInput(e.to_string()))?;
        if rebuilt.len() != cert.h {
            return fail("walk length differs from h");
        }
        if rebuilt.start() != v || rebuilt.end(g) != u {
            return fail("walk endpoints do not match base and meeting vertex");
        }
        if !rebuilt.is_non_backtracking() {
            return fail("walk backtracks");
        }
    }
    let [a, b, c] = &cert.walks;
    if a == b || a == c || b == c {
        return fail("walks are not distinct");
    }
    let ell = build_ell(g, v, u, &cert.walks);
    if ell.reduce() != cert.ell_reduced {
        return fail("reduction of the combined walk does not match");
    }
    if cert.ell_reduced.is_empty() {
        return fail("stored reduction is empty");
    }
    if !cert.ell_reduced.is_closed(g)
        || !cert.ell_reduced.is_non_backtracking()
        || !cert.ell_reduced.is_edge_neutral(g)
    {
        return fail("stored reduction is not an edge-neutral closed non-backtracking walk");
    }
    if cert.bound != cert.ell_reduced.len() {
        return fail("bound differs from the reduction length");
    }
    let cap = if u == v { 4 * cert.h } else { 6 * cert.h };
    if cert.bound > cap {
        return fail("bound exceeds the walk-length cap");
    }
    Ok(())
}
