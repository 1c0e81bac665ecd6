//! Surface description files.
//!
//! ```toml
//! pants = 1
//! punctures = ["P0.1"]
//!
//! [[curve]]
//! id = 0
//! ends = ["P0.inf", "P0.0"]
//! c = 0.7
//! mu = [0.3, 0.2]
//! ```
//!
//! `punctures` is optional; when present it must list exactly the
//! unglued slots.

use moebius::Complex;
use pants::Slot;
use serde::{Deserialize, Serialize};

use crate::{Curve, Surface, SurfaceError};

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct FileRepr {
    pants: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    punctures: Option<Vec<String>>,
    #[serde(default, rename = "curve")]
    curves: Vec<CurveRepr>,
}

#[derive(Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CurveRepr {
    id: usize,
    ends: [String; 2],
    c: f64,
    mu: [f64; 2],
}

fn parse_end(s: &str) -> Result<(usize, Slot), SurfaceError> {
    let bad = || SurfaceError::File(format!("bad slot reference `{s}` (expected e.g. P0.inf)"));
    let (p, slot) = s.split_once('.').ok_or_else(bad)?;
    let p = p.strip_prefix('P').and_then(|n| n.parse().ok()).ok_or_else(bad)?;
    Ok((p, slot.parse().map_err(SurfaceError::File)?))
}

fn end_name((p, s): (usize, Slot)) -> String {
    format!("P{p}.{s}")
}

pub fn parse_surface(text: &str) -> Result<Surface, SurfaceError> {
    let repr: FileRepr = toml::from_str(text).map_err(|e| SurfaceError::File(e.to_string()))?;
    let curves = repr
        .curves
        .iter()
        .map(|cv| {
            Ok(Curve {
                id: cv.id,
                ends: [parse_end(&cv.ends[0])?, parse_end(&cv.ends[1])?],
                c: cv.c,
                mu: Complex::new(cv.mu[0], cv.mu[1]),
            })
        })
        .collect::<Result<Vec<_>, SurfaceError>>()?;
    let g = Surface::new(repr.pants, curves)?;
    if let Some(list) = repr.punctures {
        let mut given = list.iter().map(|s| parse_end(s)).collect::<Result<Vec<_>, _>>()?;
        given.sort();
        if given != g.punctures() {
            return Err(SurfaceError::Punctures);
        }
    }
    Ok(g)
}

pub fn surface_to_text(g: &Surface) -> String {
    let repr = FileRepr {
        pants: g.pants,
        punctures: Some(g.punctures().into_iter().map(end_name).collect()),
        curves: g
            .curves
            .iter()
            .map(|cv| CurveRepr {
                id: cv.id,
                ends: cv.ends.map(end_name),
                c: cv.c,
                mu: [cv.mu.re, cv.mu.im],
            })
            .collect(),
    };
    toml::to_string(&repr).expect("surface serializes")
}
