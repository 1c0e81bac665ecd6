use core::fmt;
use core::str::FromStr;

use moebius::{Moebius, Real};
use pants::Slot;

use crate::{gate_map, SurfaceError, SurfaceGraph};

#[derive(Clone, Debug, PartialEq)]
pub enum Step {
    /// A word in the generators of the current pants; `pants`, when set,
    /// asserts which pants the chain is in.
    Word { pants: Option<usize>, letters: Vec<(Slot, i32)> },
    Gate { curve: usize, forward: bool },
}

/// Closed path through the pants graph, starting and ending at `base`.
/// `base = None` with no steps is the trivial loop.
#[derive(Clone, Debug, PartialEq, Default)]
pub struct HolonomyChain {
    pub base: Option<usize>,
    pub steps: Vec<Step>,
}

fn err(step: usize, reason: impl Into<String>) -> SurfaceError {
    SurfaceError::Chain { step, reason: reason.into() }
}

/// Ordered product of the chain's local generators and gate matrices.
pub fn holonomy<T: Real>(g: &SurfaceGraph<T>, chain: &HolonomyChain) -> Result<Moebius<T>, SurfaceError> {
    let Some(base) = chain.base else {
        return if chain.steps.is_empty() {
            Ok(Moebius::identity())
        } else {
            Err(err(0, "chain has steps but no base pants"))
        };
    };
    if base >= g.pants {
        return Err(err(0, format!("base pants P{base} does not exist")));
    }
    let mut here = base;
    let mut acc = Moebius::identity();
    for (k, step) in chain.steps.iter().enumerate() {
        match step {
            Step::Word { pants, letters } => {
                if let Some(p) = *pants {
                    if p != here {
                        return Err(err(k, format!("word at P{p} but the chain is in P{here}")));
                    }
                }
                let grp = g.pants_group(here)?;
                for &(s, e) in letters {
                    acc = acc * grp.generator(s).pow(e);
                }
            }
            Step::Gate { curve, forward } => {
                let cv = g.curve(*curve).map_err(|e| err(k, e.to_string()))?;
                let (from, to) = if *forward { (cv.ends[0].0, cv.ends[1].0) } else { (cv.ends[1].0, cv.ends[0].0) };
                if from != here {
                    return Err(err(k, format!("gate({curve}) starts at P{from} but the chain is in P{here}")));
                }
                acc = acc * gate_map(g, *curve, *forward)?;
                here = to;
            }
        }
    }
    if here != base {
        return Err(err(chain.steps.len(), format!("chain ends at P{here}, not at its base P{base}")));
    }
    // every factor has unit determinant; rescaling by the computed
    // determinant of a long product would only add rounding
    Ok(acc.canonical_sign())
}

fn parse_letter(tok: &str) -> Result<(Slot, i32), String> {
    let (name, exp) = match tok.split_once('^') {
        Some((n, e)) => (n, e.parse::<i32>().map_err(|_| format!("bad exponent in `{tok}`"))?),
        None => (tok, 1),
    };
    let slot = match name {
        "Ainf" => Slot::Inf,
        "A0" => Slot::Zero,
        "A1" => Slot::One,
        _ => return Err(format!("unknown generator `{name}`")),
    };
    Ok((slot, exp))
}

fn parse_pants(s: &str) -> Result<usize, String> {
    s.strip_prefix('P')
        .and_then(|n| n.parse().ok())
        .ok_or_else(|| format!("bad pants label `{s}`"))
}

impl FromStr for Step {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        let s = s.trim();
        if let Some(rest) = s.strip_prefix("gate(") {
            let inner = rest.strip_suffix(')').ok_or_else(|| format!("unclosed gate in `{s}`"))?;
            let (id, dir) = inner.split_once(',').ok_or_else(|| format!("gate needs (id,dir): `{s}`"))?;
            let curve = id.trim().parse().map_err(|_| format!("bad curve id in `{s}`"))?;
            let forward = match dir.trim() {
                "+" => true,
                "-" => false,
                d => return Err(format!("gate direction must be + or -, got `{d}`")),
            };
            return Ok(Step::Gate { curve, forward });
        }
        let (pants, word) = match s.split_once(':') {
            Some((p, w)) => (Some(parse_pants(p.trim())?), w.trim()),
            None => (None, s),
        };
        let body = word
            .strip_prefix('[')
            .and_then(|w| w.strip_suffix(']'))
            .ok_or_else(|| format!("word must be bracketed: `{s}`"))?;
        let letters = body.split_whitespace().map(parse_letter).collect::<Result<_, _>>()?;
        Ok(Step::Word { pants, letters })
    }
}

impl HolonomyChain {
    /// Parses `P0:[Ainf] ; gate(1,+) ; P1:[A0^-1 A1]`. The base is the
    /// pants of the first labeled word, or the start of the first gate
    /// (resolved against `g`).
    pub fn parse<T: Real>(s: &str, g: &SurfaceGraph<T>) -> Result<Self, SurfaceError> {
        let steps: Vec<Step> = s
            .split(';')
            .filter(|t| !t.trim().is_empty())
            .map(|t| t.parse::<Step>().map_err(SurfaceError::Syntax))
            .collect::<Result<_, _>>()?;
        let base = match steps.first() {
            None => None,
            Some(Step::Word { pants: Some(p), .. }) => Some(*p),
            Some(Step::Gate { curve, forward }) => {
                let cv = g.curve(*curve)?;
                Some(if *forward { cv.ends[0].0 } else { cv.ends[1].0 })
            }
            Some(Step::Word { pants: None, .. }) => {
                if g.pants == 1 {
                    Some(0)
                } else {
                    return Err(SurfaceError::Syntax("first word needs a pants label".into()));
                }
            }
        };
        Ok(HolonomyChain { base, steps })
    }
}

impl fmt::Display for Step {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Step::Gate { curve, forward } => write!(f, "gate({curve},{})", if *forward { '+' } else { '-' }),
            Step::Word { pants, letters } => {
                if let Some(p) = pants {
                    write!(f, "P{p}:")?;
                }
                let names: Vec<String> = letters
                    .iter()
                    .map(|(s, e)| {
                        let n = match s {
                            Slot::Inf => "Ainf",
                            Slot::Zero => "A0",
                            Slot::One => "A1",
                        };
                        if *e == 1 { n.to_string() } else { format!("{n}^{e}") }
                    })
                    .collect();
                write!(f, "[{}]", names.join(" "))
            }
        }
    }
}

impl fmt::Display for HolonomyChain {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let parts: Vec<String> = self.steps.iter().map(|s| s.to_string()).collect();
        f.write_str(&parts.join(" ; "))
    }
}
