//! The Lubotzky-Phillips-Sarnak graphs X^{p,q} built from integral
//! quaternions, plus the number theory backing their abelian-girth bound.
//!
//! For unequal primes p, q = 1 (mod 4) with q > sqrt(p), the p+1 integral
//! quaternions of norm p with odd, nonnegative first coordinate map to 2x2
//! matrices over GF(q) via a square root of -1; the Cayley graph of the group
//! they generate (PSL(2,q) or the full projective group, depending on the
//! Legendre symbol (p/q)) is the (p+1)-regular LPS graph. Three closed
//! non-backtracking walks of length 2*r0 at the identity, whose existence
//! is guaranteed by a sum-of-three-squares argument, certify that the
//! abelian girth is at most 8*r0, where r0 is minimal with p^r0 > 10q^2.

use std::collections::HashMap;

use thiserror::Error;

use crate::girth::nb_distance_table;
use crate::graph::{DirectedEdge, Multigraph};
use crate::moore::{scholium_certify, MooreCertificate, MooreError};
use crate::walk::Walk;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LpsError {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),
    #[error("graph with {vertices} vertices exceeds the build budget {budget}")]
    GraphTooLarge { vertices: usize, budget: usize },
    #[error("closed-walk search exhausted its budget of {budget} nodes")]
    SearchBudgetExceeded { budget: u64 },
    #[error("certificate construction failed: {0}")]
    Certificate(#[from] MooreError),
}

/// An integral quaternion a0 + a1 i + a2 j + a3 k.
#[derive(Clone, Copy, Debug, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct Quaternion {
    pub a0: i64,
    pub a1: i64,
    pub a2: i64,
    pub a3: i64,
}

impl Quaternion {
    pub fn new(a0: i64, a1: i64, a2: i64, a3: i64) -> Self {
        Quaternion { a0, a1, a2, a3 }
    }

    pub fn norm(&self) -> i64 {
        self.a0 * self.a0 + self.a1 * self.a1 + self.a2 * self.a2 + self.a3 * self.a3
    }

    pub fn conjugate(&self) -> Self {
        Quaternion {
            a0: self.a0,
            a1: -self.a1,
            a2: -self.a2,
            a3: -self.a3,
        }
    }
}

/// A 2x2 matrix over GF(q) up to scalars, stored canonically: the first
/// nonzero entry in row-major order is scaled to 1.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash)]
pub struct PglElement {
    pub m: [u64; 4],
    pub q: u64,
}

impl PglElement {
    pub fn identity(q: u64) -> Self {
        PglElement { m: [1, 0, 0, 1], q }
    }

    /// Canonicalize arbitrary entries; None if the matrix is singular mod q.
    pub fn new(entries: [u64; 4], q: u64) -> Option<Self> {
        let m: Vec<u64> = entries.iter().map(|&x| x % q).collect();
        let det = (m[0] * m[3] % q + q - m[1] * m[2] % q) % q;
        if det == 0 {
            return None;
        }
        let lead = *m.iter().find(|&&x| x != 0).expect("nonzero determinant");
        let inv = mod_pow(lead, q - 2, q);
        Some(PglElement {
            m: [
                m[0] * inv % q,
                m[1] * inv % q,
                m[2] * inv % q,
                m[3] * inv % q,
            ],
            q,
        })
    }

    pub fn mul(&self, rhs: &PglElement) -> PglElement {
        let q = self.q;
        let a = &self.m;
        let b = &rhs.m;
        PglElement::new(
            [
                a[0] * b[0] + a[1] * b[2],
                a[0] * b[1] + a[1] * b[3],
                a[2] * b[0] + a[3] * b[2],
                a[2] * b[1] + a[3] * b[3],
            ],
            q,
        )
        .expect("product of invertible matrices is invertible")
    }

    /// Projective inverse via the adjugate.
    pub fn inverse(&self) -> PglElement {
        let q = self.q;
        let [a, b, c, d] = self.m;
        PglElement::new([d, (q - b) % q, (q - c) % q, a], q)
            .expect("adjugate of invertible matrix is invertible")
    }

    pub fn det(&self) -> u64 {
        let q = self.q;
        (self.m[0] * self.m[3] % q + q - self.m[1] * self.m[2] % q) % q
    }
}

fn mod_pow(base: u64, mut exp: u64, modulus: u64) -> u64 {
    let m = modulus as u128;
    let mut result: u128 = 1 % m;
    let mut b = base as u128 % m;
    while exp > 0 {
        if exp & 1 == 1 {
            result = result * b % m;
        }
        b = b * b % m;
        exp >>= 1;
    }
    result as u64
}

pub fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// Legendre symbol (a/p) by Euler's criterion; p must be an odd prime.
pub fn legendre(a: u64, p: u64) -> i8 {
    debug_assert!(p >= 3 && is_prime(p));
    let a = a % p;
    if a == 0 {
        return 0;
    }
    let e = mod_pow(a, (p - 1) / 2, p);
    if e == 1 {
        1
    } else {
        debug_assert_eq!(e, p - 1);
        -1
    }
}

/// Smallest positive i with i^2 = -1 (mod q); q must be a prime = 1 (mod 4).
pub fn sqrt_minus_one(q: u64) -> u64 {
    debug_assert!(q % 4 == 1 && is_prime(q));
    (1..q)
        .find(|&i| i * i % q == q - 1)
        .expect("-1 is a square mod q when q = 1 mod 4")
}

/// All quaternions of norm p with a0 odd and nonnegative and a1, a2, a3 even,
/// in sorted order. Exactly p+1 of them for prime p = 1 (mod 4); the set is
/// closed under conjugation.
pub fn quaternion_generators(p: u64) -> Result<Vec<Quaternion>, LpsError> {
    if !is_prime(p) || p % 4 != 1 {
        return Err(LpsError::InvalidParams(format!(
            "{p} is not a prime congruent to 1 mod 4"
        )));
    }
    let p = p as i64;
    let mut out = Vec::new();
    let bound = (p as f64).sqrt() as i64 + 1;
    let mut a0 = 1;
    while a0 * a0 <= p {
        let evens = |rem: i64| -> Vec<i64> {
            (-bound..=bound)
                .filter(|x| x % 2 == 0 && x * x <= rem)
                .collect()
        };
        let rem0 = p - a0 * a0;
        for a1 in evens(rem0) {
            let rem1 = rem0 - a1 * a1;
            for a2 in evens(rem1) {
                let rem2 = rem1 - a2 * a2;
                for a3 in evens(rem2) {
                    if a3 * a3 == rem2 {
                        out.push(Quaternion::new(a0, a1, a2, a3));
                    }
                }
            }
        }
        a0 += 2;
    }
    out.sort_unstable();
    Ok(out)
}

/// Parameters of a built LPS graph.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LpsParams {
    pub p: u64,
    pub q: u64,
    pub legendre_pq: i8,
    pub bipartite: bool,
    /// Predicted vertex count from the group orders: q(q^2-1) when (p/q) = -1,
    /// half that when (p/q) = +1.
    pub expected_n: usize,
    pub r0: usize,
}

#[derive(Clone, Debug)]
pub struct LpsBuild {
    pub graph: Multigraph,
    pub params: LpsParams,
    /// Canonical matrix labelling each vertex; vertex 0 is the identity.
    pub labels: Vec<PglElement>,
}

const BUILD_VERTEX_BUDGET: usize = 200_000;

fn validate_params(p: u64, q: u64) -> Result<(), LpsError> {
    for (name, v) in [("p", p), ("q", q)] {
        if !is_prime(v) || v % 4 != 1 {
            return Err(LpsError::InvalidParams(format!(
                "{name} = {v} is not a prime congruent to 1 mod 4"
            )));
        }
    }
    if p == q {
        return Err(LpsError::InvalidParams("p and q must differ".into()));
    }
    if q * q <= p {
        return Err(LpsError::InvalidParams(format!(
            "q = {q} must exceed sqrt(p) = sqrt({p})"
        )));
    }
    Ok(())
}

/// Build the LPS graph X^{p,q}: the Cayley graph of the projective matrix
/// group generated by the images of the p+1 norm-p quaternions over GF(q).
pub fn build_lps(p: u64, q: u64) -> Result<LpsBuild, LpsError> {
    validate_params(p, q)?;
    let budget = q as usize * ((q as usize * q as usize).saturating_sub(1));
    if budget > BUILD_VERTEX_BUDGET {
        return Err(LpsError::GraphTooLarge {
            vertices: budget,
            budget: BUILD_VERTEX_BUDGET,
        });
    }
    let gens = quaternion_generators(p)?;
    let i = sqrt_minus_one(q);
    let to_matrix = |alpha: &Quaternion| -> PglElement {
        let q_i = q as i128;
        let i = i as i128;
        let entry = |x: i128| -> u64 { x.rem_euclid(q_i) as u64 };
        let (a0, a1, a2, a3) = (
            alpha.a0 as i128,
            alpha.a1 as i128,
            alpha.a2 as i128,
            alpha.a3 as i128,
        );
        PglElement::new(
            [
                entry(a0 + i * a1),
                entry(a2 + i * a3),
                entry(-a2 + i * a3),
                entry(a0 - i * a1),
            ],
            q,
        )
        .expect("norm p is nonzero mod q")
    };
    let gen_mats: Vec<PglElement> = gens.iter().map(to_matrix).collect();
    // Pair each generator with its conjugate; the matrix of the conjugate is
    // the projective inverse, which is what makes the graph undirected.
    let conj_index: Vec<usize> = gens
        .iter()
        .map(|g| {
            gens.binary_search(&g.conjugate())
                .expect("generator set is closed under conjugation")
        })
        .collect();

    // Deterministic closure from the identity.
    let mut ids: HashMap<PglElement, usize> = HashMap::new();
    let mut labels = vec![PglElement::identity(q)];
    ids.insert(labels[0], 0);
    let mut head = 0;
    while head < labels.len() {
        let x = labels[head];
        head += 1;
        for gm in &gen_mats {
            let y = x.mul(gm);
            if !ids.contains_key(&y) {
                if labels.len() >= BUILD_VERTEX_BUDGET {
                    return Err(LpsError::GraphTooLarge {
                        vertices: labels.len() + 1,
                        budget: BUILD_VERTEX_BUDGET,
                    });
                }
                ids.insert(y, labels.len());
                labels.push(y);
            }
        }
    }
    let n = labels.len();

    // Each dart is (vertex, generator index); its inverse is the dart
    // (neighbour, conjugate index). Emit each undirected edge once.
    let mut edges = Vec::with_capacity(n * gens.len() / 2);
    for (x, label) in labels.iter().enumerate() {
        for (gi, gm) in gen_mats.iter().enumerate() {
            let y = ids[&label.mul(gm)];
            if (x, gi) < (y, conj_index[gi]) {
                edges.push((x, y));
            }
        }
    }
    let graph = Multigraph::new(n, edges).expect("closure ids are dense");

    let legendre_pq = legendre(p, q);
    let group_order = q as usize * (q as usize * q as usize - 1);
    let expected_n = if legendre_pq == -1 {
        group_order
    } else {
        group_order / 2
    };
    let params = LpsParams {
        p,
        q,
        legendre_pq,
        bipartite: is_bipartite(&graph),
        expected_n,
        r0: r0(p, q),
    };
    Ok(LpsBuild {
        graph,
        params,
        labels,
    })
}

fn is_bipartite(g: &Multigraph) -> bool {
    let mut color = vec![u8::MAX; g.vertex_count()];
    for start in 0..g.vertex_count() {
        if color[start] != u8::MAX {
            continue;
        }
        color[start] = 0;
        let mut queue = vec![start];
        let mut head = 0;
        while head < queue.len() {
            let x = queue[head];
            head += 1;
            for &d in g.darts_from(x) {
                let y = g.dart_head(d);
                if color[y] == u8::MAX {
                    color[y] = 1 - color[x];
                    queue.push(y);
                } else if color[y] == color[x] {
                    return false;
                }
            }
        }
    }
    true
}

/// True iff n is not of the form 4^a (8b + 7), i.e. n is a sum of three
/// integer squares.
pub fn is_good(n: u64) -> bool {
    debug_assert!(n >= 1);
    let mut n = n;
    while n % 4 == 0 {
        n /= 4;
    }
    n % 8 != 7
}

/// Smallest positive r with p^r > 10 q^2.
pub fn r0(p: u64, q: u64) -> usize {
    let target = 10 * q as u128 * q as u128;
    let mut power = p as u128;
    let mut r = 1;
    while power <= target {
        power *= p as u128;
        r += 1;
    }
    r
}

/// For m in {4, 12, 20}: the value 2 m p^r - m^2 q^2, whether it is positive,
/// and whether it is good. Every positive entry must be good.
pub fn goodness_witnesses(p: u64, q: u64, r: usize) -> Vec<(u64, i128, bool)> {
    [4u64, 12, 20]
        .iter()
        .map(|&m| {
            let pr = (p as i128).pow(r as u32);
            let value = 2 * m as i128 * pr - (m as i128) * (m as i128) * (q as i128) * (q as i128);
            let good = value > 0 && is_good(value as u64);
            (m, value, good)
        })
        .collect()
}

/// Outcome of the abelian-girth certification of an LPS graph.
#[derive(Clone, Debug)]
pub enum LpsAblOutcome {
    Certified(MooreCertificate),
    /// Fewer than three closed non-backtracking walks of length 2*r0 exist
    /// at the identity: this contradicts the sum-of-three-squares argument
    /// and would falsify the bound, so it is reported rather than raised.
    Falsified { walks_found: usize },
}

const SEARCH_NODE_BUDGET: u64 = 2_000_000_000;

/// Search X^{p,q} for three distinct closed non-backtracking walks of length
/// 2*r0 from the identity and turn them into an abl <= 8*r0 certificate.
pub fn certify_lps_abl(p: u64, q: u64) -> Result<(LpsBuild, LpsAblOutcome), LpsError> {
    let build = build_lps(p, q)?;
    let outcome = certify_lps_abl_on(&build)?;
    Ok((build, outcome))
}

/// Certification stage alone, for callers that already built the graph.
pub fn certify_lps_abl_on(build: &LpsBuild) -> Result<LpsAblOutcome, LpsError> {
    let g = &build.graph;
    let len = 2 * build.params.r0;
    let walks = find_closed_nb_walks(g, 0, len, 3, SEARCH_NODE_BUDGET)?;
    if walks.len() < 3 {
        return Ok(LpsAblOutcome::Falsified {
            walks_found: walks.len(),
        });
    }
    let [a, b, c]: [Walk; 3] = walks.try_into().expect("exactly three walks requested");
    let cert = scholium_certify(g, 0, len, [a, b, c])?;
    Ok(LpsAblOutcome::Certified(cert))
}

/// Depth-first search for up to `want` closed non-backtracking walks of
/// length exactly `len` from `v`, pruning prefixes that cannot return in the
/// remaining budget. Deterministic: explores darts in ascending order.
fn find_closed_nb_walks(
    g: &Multigraph,
    v: usize,
    len: usize,
    want: usize,
    budget: u64,
) -> Result<Vec<Walk>, LpsError> {
    let dist = nb_distance_table(g, v);
    let mut found = Vec::new();
    let mut steps: Vec<DirectedEdge> = Vec::with_capacity(len);
    let mut nodes: u64 = 0;

    fn dive(
        g: &Multigraph,
        v: usize,
        len: usize,
        want: usize,
        budget: u64,
        dist: &[Option<usize>],
        steps: &mut Vec<DirectedEdge>,
        found: &mut Vec<Walk>,
        nodes: &mut u64,
    ) -> Result<(), LpsError> {
        let at = match steps.last() {
            Some(&d) => g.dart_head(d),
            None => v,
        };
        let remaining = len - steps.len();
        if remaining == 0 {
            if at == v {
                found.push(Walk::from_parts_unchecked(v, steps.clone()));
            }
            return Ok(());
        }
        for &d in g.darts_from(at) {
            if found.len() >= want {
                return Ok(());
            }
            if steps.last() == Some(&d.inverse()) {
                continue;
            }
            let head = g.dart_head(d);
            match dist[head] {
                Some(dh) if dh + 1 <= remaining => {}
                _ => continue,
            }
            *nodes += 1;
            if *nodes > budget {
                return Err(LpsError::SearchBudgetExceeded { budget });
            }
            steps.push(d);
            dive(g, v, len, want, budget, dist, steps, found, nodes)?;
            steps.pop();
        }
        Ok(())
    }

    dive(
        g, v, len, want, budget, &dist, &mut steps, &mut found, &mut nodes,
    )?;
    Ok(found)
}
