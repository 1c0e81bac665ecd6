//! Bowditch-style tree search over Markov triples `x^2 + y^2 + z^2 = xyz`.
//!
//! Starting from a triple, Vieta moves walk the trivalent tree of
//! generating pairs. A branch is abandoned once it provably escapes
//! (both fixed coordinates have norm at least the trace floor and the
//! move grows the third), and the search reports a forbidden trace as
//! soon as it meets one.

use std::fmt;

mod dd;

pub use dd::{slice_triple, Cdd};
use moebius::C64;

pub const DEFAULT_BUDGET: usize = 200_000;
pub const DEFAULT_TRACE_FLOOR: f64 = 2.001;
pub const MAX_DEPTH: usize = 100_000;
const MARKOV_TOL: f64 = 1e-6;
const FORBIDDEN_TOL: f64 = 1e-9;

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum BqError {
    #[error("triple violates the Markov identity (relative residual {0:e})")]
    NotMarkov(f64),
    #[error("triple has a non-finite coordinate")]
    NonFinite,
    #[error("max_nodes must be at least 1")]
    Budget,
    #[error("trace floor must be at least 2, got {0}")]
    Floor(f64),
    #[error("c must be positive, got {0}")]
    BadLength(f64),
    #[error("Im(tau) = {0} outside (-pi, pi]")]
    ImaginaryRange(f64),
}

/// Residual of the Markov identity relative to the size of its terms.
pub fn markov_residual(t: [C64; 3]) -> f64 {
    let [x, y, z] = t;
    let lhs = x * x + y * y + z * z;
    let rhs = x * y * z;
    let scale = 1f64.max(lhs.norm()).max(rhs.norm());
    (lhs - rhs).norm() / scale
}

/// Markov triple carried in double-double precision.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TraceTriple(pub [Cdd; 3]);

impl TraceTriple {
    pub fn new(x: C64, y: C64, z: C64) -> Result<Self, BqError> {
        Self::from_dd([x, y, z].map(dd::lift))
    }

    pub fn from_dd(t: [Cdd; 3]) -> Result<Self, BqError> {
        let tri = TraceTriple(t);
        let f = tri.coords();
        if f.iter().any(|w| !w.re.is_finite() || !w.im.is_finite()) {
            return Err(BqError::NonFinite);
        }
        let r = markov_residual(f);
        if r > MARKOV_TOL {
            return Err(BqError::NotMarkov(r));
        }
        Ok(tri)
    }

    /// `(tr S1, tr R, tr S1 R)` of the once-punctured torus group at `(c, tau)`.
    pub fn from_slice(c: f64, tau: C64) -> Result<Self, BqError> {
        if !(c > 0.0) || !c.is_finite() {
            return Err(BqError::BadLength(c));
        }
        let pi = std::f64::consts::PI;
        if !(tau.im > -pi && tau.im <= pi) || !tau.re.is_finite() {
            return Err(BqError::ImaginaryRange(tau.im));
        }
        Self::from_dd(slice_triple(c, tau))
    }

    pub fn coords(&self) -> [C64; 3] {
        self.0.map(dd::lower)
    }

    pub fn conj(&self) -> Self {
        TraceTriple(self.0.map(|w| w.conj()))
    }

    /// Replace coordinate `i` by the product of the other two minus itself.
    pub fn flip(&self, i: usize) -> Self {
        let mut t = self.0;
        let (a, b) = others(i);
        t[i] = t[a] * t[b] - t[i];
        TraceTriple(t)
    }
}

fn others(i: usize) -> (usize, usize) {
    match i {
        0 => (1, 2),
        1 => (0, 2),
        _ => (0, 1),
    }
}

pub fn vieta_neighbors(t: &TraceTriple) -> [TraceTriple; 3] {
    [t.flip(0), t.flip(1), t.flip(2)]
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Outcome {
    QF,
    NotQF,
    Undecided,
}

impl fmt::Display for Outcome {
    fn fmt(&self, f: &mut fmt::Formatter) -> fmt::Result {
        f.write_str(match self {
            Outcome::QF => "QF",
            Outcome::NotQF => "NotQF",
            Outcome::Undecided => "Undecided",
        })
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct BQVerdict {
    pub outcome: Outcome,
    pub nodes_visited: usize,
    pub min_trace_norm_seen: f64,
    pub depth_limit_hit: bool,
}

fn forbidden(w: C64) -> bool {
    (w.im.abs() <= FORBIDDEN_TOL && w.re.abs() <= 2.0 + FORBIDDEN_TOL) || w.norm() < 2.0 - FORBIDDEN_TOL
}

/// `|y_m| >= floor` for every later region around `x`, where the ring
/// around `x` runs `a = y_n, b = y_{n+1}, y_{n+2}, ...` with
/// `y_{k+1} = x y_k - y_{k-1}`.
fn ring_escapes(x: C64, a: C64, b: C64, floor: f64) -> bool {
    if b.norm() < floor {
        return false;
    }
    let d = (x * x - 4.0).sqrt();
    let mut l = (x + d) / 2.0;
    if l.norm() < 1.0 {
        l = l.inv();
    }
    let ln = l.norm();
    if (ln - 1.0).abs() < 1e-12 {
        return false;
    }
    let w = l - l.inv();
    let big = (b - a / l) / w;
    let small = (a * l - b) / w;
    big.norm() * ln * ln - small.norm() / (ln * ln) >= floor
}

fn cmp_key(a: C64, b: C64) -> std::cmp::Ordering {
    a.norm()
        .total_cmp(&b.norm())
        .then(a.re.total_cmp(&b.re))
        .then(a.im.total_cmp(&b.im))
}

/// Depth-first search of the Markov tree from `t`.
pub fn bq_test(t: &TraceTriple, max_nodes: usize, trace_floor: f64) -> Result<BQVerdict, BqError> {
    if max_nodes == 0 {
        return Err(BqError::Budget);
    }
    if !(trace_floor >= 2.0) {
        return Err(BqError::Floor(trace_floor));
    }
    let mut verdict = BQVerdict {
        outcome: Outcome::QF,
        nodes_visited: 0,
        min_trace_norm_seen: f64::INFINITY,
        depth_limit_hit: false,
    };
    // (triple, index just replaced, depth)
    let mut stack = vec![(*t, usize::MAX, 0usize)];
    while let Some((tr, back, depth)) = stack.pop() {
        if verdict.nodes_visited == max_nodes {
            verdict.outcome = Outcome::Undecided;
            return Ok(verdict);
        }
        verdict.nodes_visited += 1;
        let f = tr.coords();
        for w in f {
            verdict.min_trace_norm_seen = verdict.min_trace_norm_seen.min(w.norm());
            if forbidden(w) {
                verdict.outcome = Outcome::NotQF;
                return Ok(verdict);
            }
        }
        if f.iter().any(|w| !w.norm().is_finite()) {
            continue;
        }
        let mut children = Vec::with_capacity(3);
        for i in (0..3).filter(|&i| i != back) {
            let (a, b) = others(i);
            let (ya, yb) = (f[a], f[b]);
            let old = f[i];
            let next = tr.flip(i);
            let new = dd::lower(next.0[i]);
            if ya.norm() >= trace_floor && yb.norm() >= trace_floor && new.norm() >= old.norm() {
                continue;
            }
            let small: Vec<(C64, C64)> = [(ya, yb), (yb, ya)]
                .into_iter()
                .filter(|(s, _)| s.norm() < trace_floor)
                .collect();
            if let [(x, other)] = small[..] {
                if ring_escapes(x, old, other, trace_floor) {
                    continue;
                }
            }
            children.push((next, i, new));
        }
        if depth + 1 > MAX_DEPTH {
            if !children.is_empty() {
                verdict.depth_limit_hit = true;
                verdict.outcome = Outcome::Undecided;
                return Ok(verdict);
            }
            continue;
        }
        children.sort_by(|p, q| cmp_key(p.2, q.2));
        // smallest new coordinate is explored first
        for (next, i, _) in children.into_iter().rev() {
            stack.push((next, i, depth + 1));
        }
    }
    Ok(verdict)
}

/// Verdict at slice coordinate `tau` for boundary half-length `c`.
pub fn classify_point(c: f64, tau: C64, budget: usize) -> Result<BQVerdict, BqError> {
    bq_test(&TraceTriple::from_slice(c, tau)?, budget, DEFAULT_TRACE_FLOOR)
}
