//! Walks over a multigraph: validity, closure, non-backtracking, inversion,
//! concatenation, free reduction and per-edge net traversal counts.
//!
//! A walk is a base vertex plus a chain of darts; the base carries the empty
//! walk, so reduction is total. Walks do not hold a reference to their graph;
//! every operation that needs incidence data takes the graph explicitly.

use std::fmt;

use thiserror::Error;

use crate::graph::{DirectedEdge, Multigraph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum WalkError {
    #[error("step {position}: dart {dart} has tail {found}, expected {expected}")]
    BrokenChain {
        position: usize,
        dart: DirectedEdge,
        expected: usize,
        found: usize,
    },
    #[error("edge id {edge} out of range")]
    EdgeOutOfRange { edge: usize },
    #[error("walk endpoints do not match: {0}")]
    EndpointMismatch(String),
    #[error("invalid step syntax: {0:?}")]
    StepSyntax(String),
}

/// A walk in a multigraph.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Walk {
    base: usize,
    steps: Vec<DirectedEdge>,
}

impl fmt::Debug for Walk {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Walk@{}[{}]", self.base, self.steps_string())
    }
}

impl Walk {
    /// The length-zero walk at `v`.
    pub fn trivial(v: usize) -> Walk {
        Walk {
            base: v,
            steps: Vec::new(),
        }
    }

    /// Build a walk from its base vertex and steps, checking that consecutive
    /// darts chain head-to-tail and that the first dart leaves `base`.
    pub fn from_parts(
        g: &Multigraph,
        base: usize,
        steps: Vec<DirectedEdge>,
    ) -> Result<Walk, WalkError> {
        let mut at = base;
        for (i, &d) in steps.iter().enumerate() {
            if d.edge() >= g.edge_count() {
                return Err(WalkError::EdgeOutOfRange { edge: d.edge() });
            }
            let tail = g.dart_tail(d);
            if tail != at {
                return Err(WalkError::BrokenChain {
                    position: i,
                    dart: d,
                    expected: at,
                    found: tail,
                });
            }
            at = g.dart_head(d);
        }
        Ok(Walk { base, steps })
    }

    /// Build a non-empty walk from its steps alone.
    pub fn from_steps(g: &Multigraph, steps: Vec<DirectedEdge>) -> Result<Walk, WalkError> {
        let first = *steps
            .first()
            .ok_or_else(|| WalkError::EndpointMismatch("empty step list has no base".into()))?;
        if first.edge() >= g.edge_count() {
            return Err(WalkError::EdgeOutOfRange { edge: first.edge() });
        }
        let base = g.dart_tail(first);
        Walk::from_parts(g, base, steps)
    }

    /// Internal constructor for walks already known to chain correctly.
    pub(crate) fn from_parts_unchecked(base: usize, steps: Vec<DirectedEdge>) -> Walk {
        Walk { base, steps }
    }

    pub fn len(&self) -> usize {
        self.steps.len()
    }

    pub fn is_empty(&self) -> bool {
        self.steps.is_empty()
    }

    pub fn steps(&self) -> &[DirectedEdge] {
        &self.steps
    }

    pub fn start(&self) -> usize {
        self.base
    }

    pub fn end(&self, g: &Multigraph) -> usize {
        match self.steps.last() {
            Some(&d) => g.dart_head(d),
            None => self.base,
        }
    }

    pub fn is_closed(&self, g: &Multigraph) -> bool {
        self.start() == self.end(g)
    }

    /// True iff no step is immediately followed by its inverse.
    pub fn is_non_backtracking(&self) -> bool {
        self.steps.windows(2).all(|w| w[1] != w[0].inverse())
    }

    /// Closed, non-backtracking, and the first and last steps are not
    /// mutually inverse. False for the empty walk.
    pub fn is_strongly_closed_nb(&self, g: &Multigraph) -> bool {
        match (self.steps.first(), self.steps.last()) {
            (Some(&first), Some(&last)) => {
                self.is_closed(g) && self.is_non_backtracking() && last != first.inverse()
            }
            _ => false,
        }
    }

    pub fn inverse(&self, g: &Multigraph) -> Walk {
        Walk {
            base: self.end(g),
            steps: self.steps.iter().rev().map(|d| d.inverse()).collect(),
        }
    }

    pub fn concat(&self, g: &Multigraph, other: &Walk) -> Result<Walk, WalkError> {
        if self.end(g) != other.start() {
            return Err(WalkError::EndpointMismatch(format!(
                "cannot append walk starting at {} to walk ending at {}",
                other.start(),
                self.end(g)
            )));
        }
        let mut steps = self.steps.clone();
        steps.extend_from_slice(&other.steps);
        Ok(Walk {
            base: self.base,
            steps,
        })
    }

    /// Free reduction: repeatedly discard adjacent inverse pairs. Single
    /// left-to-right pass with a pop-on-reversal accumulator; the result is
    /// independent of elimination order (tested, not assumed).
    pub fn reduce(&self) -> Walk {
        let mut out: Vec<DirectedEdge> = Vec::with_capacity(self.steps.len());
        for &d in &self.steps {
            if out.last() == Some(&d.inverse()) {
                out.pop();
            } else {
                out.push(d);
            }
        }
        Walk {
            base: self.base,
            steps: out,
        }
    }

    pub fn net_counts(&self, g: &Multigraph) -> NetEdgeCount {
        let mut net = NetEdgeCount::new(g.edge_count());
        for &d in &self.steps {
            net.apply(d);
        }
        net
    }

    pub fn is_edge_neutral(&self, g: &Multigraph) -> bool {
        self.net_counts(g).is_neutral()
    }

    /// Steps rendered as comma-separated signed edge ids, e.g. `+3,-7`.
    pub fn steps_string(&self) -> String {
        format_steps(&self.steps)
    }
}

pub fn format_steps(steps: &[DirectedEdge]) -> String {
    let parts: Vec<String> = steps.iter().map(|d| d.to_string()).collect();
    parts.join(",")
}

/// Parse the `+3,-7` walk serialization. The empty string is an empty list.
pub fn parse_steps(s: &str) -> Result<Vec<DirectedEdge>, WalkError> {
    if s.is_empty() {
        return Ok(Vec::new());
    }
    s.split(',')
        .map(|tok| {
            let (sign, digits) = tok
                .split_at_checked(1)
                .ok_or_else(|| WalkError::StepSyntax(tok.into()))?;
            let forward = match sign {
                "+" => true,
                "-" => false,
                _ => return Err(WalkError::StepSyntax(tok.into())),
            };
            if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
                return Err(WalkError::StepSyntax(tok.into()));
            }
            let edge: usize = digits
                .parse()
                .map_err(|_| WalkError::StepSyntax(tok.into()))?;
            Ok(DirectedEdge::new(edge, forward))
        })
        .collect()
}

/// Net signed traversal count per edge: occurrences of `(e, +)` minus `(e, -)`.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct NetEdgeCount {
    net: Vec<i64>,
    imbalance: usize,
}

impl NetEdgeCount {
    pub fn new(edge_count: usize) -> Self {
        NetEdgeCount {
            net: vec![0; edge_count],
            imbalance: 0,
        }
    }

    pub fn apply(&mut self, d: DirectedEdge) {
        let slot = &mut self.net[d.edge()];
        let delta = if d.is_forward() { 1 } else { -1 };
        self.imbalance -= slot.unsigned_abs() as usize;
        *slot += delta;
        self.imbalance += slot.unsigned_abs() as usize;
    }

    /// Undo one `apply` of the same dart.
    pub fn unapply(&mut self, d: DirectedEdge) {
        self.apply(d.inverse());
    }

    pub fn net(&self, edge: usize) -> i64 {
        self.net[edge]
    }

    pub fn is_neutral(&self) -> bool {
        self.imbalance == 0
    }

    /// Sum of |net(e)| over all edges: a lower bound on the number of steps
    /// any extension needs before it can be edge neutral.
    pub fn total_imbalance(&self) -> usize {
        self.imbalance
    }

    pub fn negated(&self) -> NetEdgeCount {
        NetEdgeCount {
            net: self.net.iter().map(|&x| -x).collect(),
            imbalance: self.imbalance,
        }
    }
}

/// The commutator walk `a b a^-1 b^-1` of two walks closed at one vertex.
/// Always edge neutral.
pub fn commutator(g: &Multigraph, a: &Walk, b: &Walk) -> Result<Walk, WalkError> {
    for (name, w) in [("first", a), ("second", b)] {
        if !w.is_closed(g) {
            return Err(WalkError::EndpointMismatch(format!(
                "{name} walk is not closed"
            )));
        }
    }
    if a.start() != b.start() {
        return Err(WalkError::EndpointMismatch(format!(
            "walks are closed at different vertices {} and {}",
            a.start(),
            b.start()
        )));
    }
    a.concat(g, b)?
        .concat(g, &a.inverse(g))?
        .concat(g, &b.inverse(g))
}

/// The walk `a b^-1 c a^-1 b c^-1` for three walks sharing both endpoints.
/// Closed at the common start and always edge neutral.
pub fn triple_word(g: &Multigraph, a: &Walk, b: &Walk, c: &Walk) -> Result<Walk, WalkError> {
    let (v, u) = (a.start(), a.end(g));
    for (name, w) in [("second", b), ("third", c)] {
        if w.start() != v || w.end(g) != u {
            return Err(WalkError::EndpointMismatch(format!(
                "{name} walk does not run {v} -> {u}"
            )));
        }
    }
    a.concat(g, &b.inverse(g))?
        .concat(g, c)?
        .concat(g, &a.inverse(g))?
        .concat(g, b)?
        .concat(g, &c.inverse(g))
}
