//! Certificate files: replayable witnesses for abelian-girth bounds.
//!
//! Every certificate claims `abl(G) <= value` and carries one of three kinds
//! of evidence. A `verify` pass re-checks the evidence against the graph
//! without repeating any search.
//!
//! ```text
//! abl 10                    abl 10               abl 12
//! walk 0                    subgraph theta       moore 0 0 3
//! +0,+1,-0,-1               0 1 2 4 5            a 0 +0,+2,-1
//!                                                b 0 +0,+4,-2
//!                                                c 0 +1,+2,-3
//!                                                ell 0 +0,+2,-1,...
//! ```
//!
//! `walk` is an edge-neutral closed non-backtracking walk of the claimed
//! length. `subgraph` is a theta / figure-eight / barbell whose abelian
//! length is the claimed value. `moore <v> <u> <h>` carries three distinct
//! length-h walks from v to u and the reduction of their combination.

use std::fmt;

use thiserror::Error;

use crate::graph::{abelian_length, classify_chi_minus_one, DirectedEdge, Multigraph};
use crate::moore::{replay_certificate, MooreCertificate, MooreError};
use crate::walk::{format_steps, parse_steps, Walk, WalkError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CertParseError {
    #[error("line {line}: {message}")]
    Syntax { line: usize, message: String },
    #[error("certificate is truncated")]
    Truncated,
}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum VerifyError {
    #[error("walk witness: {0}")]
    Walk(#[from] WalkError),
    #[error("moore witness: {0}")]
    Moore(#[from] MooreError),
    #[error("{0}")]
    Invalid(String),
    #[error("witness certifies {found}, certificate claims {claimed}")]
    ValueMismatch { claimed: usize, found: usize },
}

fn invalid(msg: impl Into<String>) -> VerifyError {
    VerifyError::Invalid(msg.into())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub enum CertWitness {
    Walk {
        base: usize,
        steps: Vec<DirectedEdge>,
    },
    Subgraph {
        kind: String,
        edges: Vec<usize>,
    },
    Moore {
        base: usize,
        meeting: usize,
        h: usize,
        walks: [(usize, Vec<DirectedEdge>); 3],
        ell: (usize, Vec<DirectedEdge>),
    },
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Certificate {
    /// Claimed upper bound on the abelian girth.
    pub value: usize,
    pub witness: CertWitness,
}

impl Certificate {
    pub fn from_abl_witness(w: &crate::abl::AblWitness) -> Certificate {
        let witness = match &w.evidence {
            crate::abl::AblEvidence::Walk(walk) => CertWitness::Walk {
                base: walk.start(),
                steps: walk.steps().to_vec(),
            },
            crate::abl::AblEvidence::Subgraph(sw) => CertWitness::Subgraph {
                kind: sw.class.kind_name().to_string(),
                edges: sw.edges.clone(),
            },
        };
        Certificate {
            value: w.bound,
            witness,
        }
    }

    pub fn from_moore(cert: &MooreCertificate) -> Certificate {
        let part = |w: &Walk| (w.start(), w.steps().to_vec());
        Certificate {
            value: cert.bound,
            witness: CertWitness::Moore {
                base: cert.base_vertex,
                meeting: cert.meeting_vertex,
                h: cert.h,
                walks: [
                    part(&cert.walks[0]),
                    part(&cert.walks[1]),
                    part(&cert.walks[2]),
                ],
                ell: part(&cert.ell_reduced),
            },
        }
    }

    /// Re-check the certificate against `g`; no searching involved.
    pub fn verify(&self, g: &Multigraph) -> Result<(), VerifyError> {
        match &self.witness {
            CertWitness::Walk { base, steps } => {
                let walk = Walk::from_parts(g, *base, steps.clone())?;
                if !walk.is_closed(g) {
                    return Err(invalid("walk is not closed"));
                }
                if !walk.is_non_backtracking() {
                    return Err(invalid("walk backtracks"));
                }
                if !walk.is_edge_neutral(g) {
                    return Err(invalid("walk is not edge neutral"));
                }
                if walk.len() != self.value {
                    return Err(VerifyError::ValueMismatch {
                        claimed: self.value,
                        found: walk.len(),
                    });
                }
                Ok(())
            }
            CertWitness::Subgraph { kind, edges } => {
                let mut sorted = edges.clone();
                sorted.sort_unstable();
                sorted.dedup();
                if sorted.len() != edges.len() {
                    return Err(invalid("repeated edge id"));
                }
                if sorted.iter().any(|&e| e >= g.edge_count()) {
                    return Err(invalid("edge id out of range"));
                }
                let sub = g.edge_subgraph(&sorted);
                let class = classify_chi_minus_one(&sub.graph);
                if !class.is_chi_minus_one() {
                    return Err(invalid(
                        "edges do not form a theta, figure-eight or barbell",
                    ));
                }
                if class.kind_name() != kind {
                    return Err(invalid(format!(
                        "subgraph classifies as {}, certificate says {kind}",
                        class.kind_name()
                    )));
                }
                let found = abelian_length(&sub.graph).expect("classified chi = -1");
                if found != self.value {
                    return Err(VerifyError::ValueMismatch {
                        claimed: self.value,
                        found,
                    });
                }
                Ok(())
            }
            CertWitness::Moore {
                base,
                meeting,
                h,
                walks,
                ell,
            } => {
                let build = |(b, steps): &(usize, Vec<DirectedEdge>)| {
                    Walk::from_parts(g, *b, steps.clone())
                };
                let cert = MooreCertificate {
                    base_vertex: *base,
                    meeting_vertex: *meeting,
                    h: *h,
                    walks: [build(&walks[0])?, build(&walks[1])?, build(&walks[2])?],
                    ell_reduced: build(ell)?,
                    bound: self.value,
                };
                replay_certificate(g, &cert)?;
                Ok(())
            }
        }
    }
}

impl fmt::Display for Certificate {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "abl {}", self.value)?;
        match &self.witness {
            CertWitness::Walk { base, steps } => {
                writeln!(f, "walk {base}")?;
                writeln!(f, "{}", format_steps(steps))
            }
            CertWitness::Subgraph { kind, edges } => {
                writeln!(f, "subgraph {kind}")?;
                let ids: Vec<String> = edges.iter().map(|e| e.to_string()).collect();
                writeln!(f, "{}", ids.join(" "))
            }
            CertWitness::Moore {
                base,
                meeting,
                h,
                walks,
                ell,
            } => {
                writeln!(f, "moore {base} {meeting} {h}")?;
                for (name, (b, steps)) in ["a", "b", "c"].iter().zip(walks) {
                    writeln!(f, "{name} {b} {}", format_steps(steps))?;
                }
                writeln!(f, "ell {} {}", ell.0, format_steps(&ell.1))
            }
        }
    }
}

pub fn parse_certificate(input: &str) -> Result<Certificate, CertParseError> {
    let syntax = |line: usize, message: &str| CertParseError::Syntax {
        line,
        message: message.into(),
    };
    // Significant lines with their 1-based numbers; comments and blanks skip.
    let mut lines = input
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));
    let mut next = || lines.next().ok_or(CertParseError::Truncated);

    let (no, header) = next()?;
    let value: usize = match header.split_whitespace().collect::<Vec<_>>().as_slice() {
        ["abl", v] => v
            .parse()
            .map_err(|_| syntax(no, "invalid value in `abl` header"))?,
        _ => return Err(syntax(no, "expected `abl <value>` header")),
    };

    let (no, kind_line) = next()?;
    let tokens: Vec<&str> = kind_line.split_whitespace().collect();
    let witness = match tokens.as_slice() {
        ["walk", base] => {
            let base = base
                .parse()
                .map_err(|_| syntax(no, "invalid base vertex"))?;
            let (sno, steps_line) = next()?;
            let steps = parse_steps(steps_line)
                .map_err(|e| syntax(sno, &format!("bad walk steps: {e}")))?;
            if steps.is_empty() {
                return Err(syntax(sno, "walk witness must have steps"));
            }
            CertWitness::Walk { base, steps }
        }
        ["subgraph", kind @ ("theta" | "figure-eight" | "barbell")] => {
            let (sno, edge_line) = next()?;
            let edges: Vec<usize> = edge_line
                .split_whitespace()
                .map(|t| t.parse::<usize>())
                .collect::<Result<_, _>>()
                .map_err(|_| syntax(sno, "invalid edge id"))?;
            if edges.is_empty() {
                return Err(syntax(sno, "subgraph witness must have edges"));
            }
            CertWitness::Subgraph {
                kind: kind.to_string(),
                edges,
            }
        }
        ["subgraph", other] => {
            return Err(syntax(no, &format!("unknown subgraph kind {other:?}")))
        }
        ["moore", base, meeting, h] => {
            let parse_num = |s: &str, what: &str| {
                s.parse::<usize>()
                    .map_err(|_| syntax(no, &format!("invalid {what}")))
            };
            let base = parse_num(base, "base vertex")?;
            let meeting = parse_num(meeting, "meeting vertex")?;
            let h = parse_num(h, "walk length")?;
            let mut read_walk = |tag: &str| -> Result<(usize, Vec<DirectedEdge>), CertParseError> {
                let (wno, line) = lines.next().ok_or(CertParseError::Truncated)?;
                let parts: Vec<&str> = line.split_whitespace().collect();
                match parts.as_slice() {
                    [t, b, s] if *t == tag => {
                        let b = b
                            .parse()
                            .map_err(|_| syntax(wno, "invalid walk base vertex"))?;
                        let steps = parse_steps(s)
                            .map_err(|e| syntax(wno, &format!("bad walk steps: {e}")))?;
                        Ok((b, steps))
                    }
                    _ => Err(syntax(wno, &format!("expected `{tag} <base> <steps>`"))),
                }
            };
            let a = read_walk("a")?;
            let b = read_walk("b")?;
            let c = read_walk("c")?;
            let ell = read_walk("ell")?;
            CertWitness::Moore {
                base,
                meeting,
                h,
                walks: [a, b, c],
                ell,
            }
        }
        _ => return Err(syntax(no, "expected `walk`, `subgraph` or `moore` witness")),
    };
    if let Some((no, _)) = lines.next() {
        return Err(syntax(no, "trailing content after certificate"));
    }
    Ok(Certificate { value, witness })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::abl::abelian_girth;
    use crate::gen::{make_complete, make_figure_eight, make_theta};
    use crate::moore::certify_abl_upper;

    #[test]
    fn walk_certificate_round_trip() {
        let g = make_complete(4).unwrap();
        let r = abelian_girth(&g);
        let cert = Certificate::from_abl_witness(r.witness.as_ref().unwrap());
        assert_eq!(cert.value, 10);
        cert.verify(&g).unwrap();
        let text = cert.to_string();
        let parsed = parse_certificate(&text).unwrap();
        assert_eq!(parsed, cert);
        parsed.verify(&g).unwrap();
    }

    #[test]
    fn subgraph_certificate_round_trip() {
        let g = make_theta(2, 3, 4).unwrap();
        let r = abelian_girth(&g);
        let cert = Certificate::from_abl_witness(r.witness.as_ref().unwrap());
        let text = cert.to_string();
        let parsed = parse_certificate(&text).unwrap();
        parsed.verify(&g).unwrap();

        // Subgraph witnesses verify independently of how they were found.
        let fig8 = make_figure_eight(2, 2).unwrap();
        let cert = parse_certificate("abl 8\nsubgraph figure-eight\n0 1 2 3\n").unwrap();
        cert.verify(&fig8).unwrap();
    }

    #[test]
    fn moore_certificate_round_trip() {
        let g = make_complete(4).unwrap();
        let mc = certify_abl_upper(&g, 0).unwrap();
        let cert = Certificate::from_moore(&mc);
        cert.verify(&g).unwrap();
        let text = cert.to_string();
        let parsed = parse_certificate(&text).unwrap();
        assert_eq!(parsed, cert);
        parsed.verify(&g).unwrap();
    }

    #[test]
    fn tampered_certificates_fail() {
        let g = make_complete(4).unwrap();
        let r = abelian_girth(&g);
        let cert = Certificate::from_abl_witness(r.witness.as_ref().unwrap());
        let text = cert.to_string();

        // Perturb one edge id in the witness line.
        let tampered = text.replacen("+0", "+1", 1);
        if tampered != text {
            let parsed = parse_certificate(&tampered).unwrap();
            assert!(parsed.verify(&g).is_err());
        }

        // Claimed value off by two.
        let mut wrong = cert.clone();
        wrong.value += 2;
        assert!(wrong.verify(&g).is_err());

        // Wrong kind.
        let bad = parse_certificate("abl 10\nsubgraph barbell\n0 1 2 3 4\n").unwrap();
        assert!(bad.verify(&g).is_err());
    }

    #[test]
    fn parse_rejects_malformed_certificates() {
        assert!(parse_certificate("").is_err());
        assert!(parse_certificate("abl x\nwalk 0\n+0\n").is_err());
        assert!(parse_certificate("abl 4\nwalk 0\n").is_err());
        assert!(parse_certificate("abl 4\nwalk 0\n\n").is_err());
        assert!(parse_certificate("abl 4\nhmm 0\n+0\n").is_err());
        assert!(parse_certificate("abl 4\nsubgraph square\n0 1\n").is_err());
        assert!(parse_certificate("abl 4\nwalk 0\n+0,-0\nextra\n").is_err());
        assert!(parse_certificate("abl 12\nmoore 0 0 3\na 0 +0\nb 0 +1\n").is_err());
    }
}
