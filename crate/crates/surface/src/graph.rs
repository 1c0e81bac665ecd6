use moebius::{Complex, Real};
use pants::{BoundaryLengths, PantsGroup, Slot};

use crate::{HolonomyChain, Step, SurfaceError};

/// A glued pants curve. `ends[0] = (P, e)` and `ends[1] = (P', e')`.
#[derive(Clone, Debug, PartialEq)]
pub struct Curve<T> {
    pub id: usize,
    pub ends: [(usize, Slot); 2],
    pub c: T,
    pub mu: Complex<T>,
}

#[derive(Clone, Debug, PartialEq)]
pub struct SurfaceGraph<T> {
    pub pants: usize,
    pub curves: Vec<Curve<T>>,
}

impl<T: Real> SurfaceGraph<T> {
    pub fn new(pants: usize, curves: Vec<Curve<T>>) -> Result<Self, SurfaceError> {
        let mut used = std::collections::HashSet::new();
        let mut ids = std::collections::HashSet::new();
        for cv in &curves {
            if !ids.insert(cv.id) {
                return Err(SurfaceError::DuplicateCurve(cv.id));
            }
            if !(cv.c > T::zero()) || !cv.c.is_finite() {
                return Err(SurfaceError::BadLength(cv.c.to_f64().unwrap_or(f64::NAN)));
            }
            if !(cv.mu.im >= T::zero() && cv.mu.im < T::PI()) {
                return Err(SurfaceError::ImaginaryRange(cv.mu.im.to_f64().unwrap_or(f64::NAN)));
            }
            for (p, s) in cv.ends {
                if p >= pants {
                    return Err(SurfaceError::NoSuchPants(p));
                }
                if !used.insert((p, s)) {
                    return Err(SurfaceError::SlotReused(p, s));
                }
            }
        }
        Ok(SurfaceGraph { pants, curves })
    }

    /// One pants with slots inf and 0 glued and a puncture at slot 1.
    pub fn one_holed_torus(c: T, mu: Complex<T>) -> Result<Self, SurfaceError> {
        SurfaceGraph::new(1, vec![Curve { id: 0, ends: [(0, Slot::Inf), (0, Slot::Zero)], c, mu }])
    }

    /// Two twice-punctured pants glued along their inf slots.
    pub fn four_holed_sphere(c: T, mu: Complex<T>) -> Result<Self, SurfaceError> {
        SurfaceGraph::new(2, vec![Curve { id: 0, ends: [(0, Slot::Inf), (1, Slot::Inf)], c, mu }])
    }

    pub fn curve(&self, id: usize) -> Result<&Curve<T>, SurfaceError> {
        self.curves.iter().find(|cv| cv.id == id).ok_or(SurfaceError::NoSuchCurve(id))
    }

    pub fn curve_at(&self, p: usize, s: Slot) -> Option<&Curve<T>> {
        self.curves.iter().find(|cv| cv.ends.contains(&(p, s)))
    }

    pub fn punctures(&self) -> Vec<(usize, Slot)> {
        (0..self.pants)
            .flat_map(|p| Slot::ALL.map(|s| (p, s)))
            .filter(|&(p, s)| self.curve_at(p, s).is_none())
            .collect()
    }

    pub fn lengths(&self, p: usize) -> BoundaryLengths<T> {
        let l = |s| self.curve_at(p, s).map_or(T::zero(), |cv| cv.c);
        BoundaryLengths::new(l(Slot::Inf), l(Slot::Zero), l(Slot::One))
    }

    pub fn pants_group(&self, p: usize) -> Result<PantsGroup<T>, SurfaceError> {
        if p >= self.pants {
            return Err(SurfaceError::NoSuchPants(p));
        }
        PantsGroup::build(self.lengths(p)).map_err(|source| SurfaceError::Pants { pants: p, source })
    }

    /// Cyclically relabels the slots of every pants whose puncture pattern
    /// has no matrix model, so that geodesic boundaries come first.
    /// Returns the graph and the number of rotations applied per pants.
    pub fn canonicalized(&self) -> (Self, Vec<u8>) {
        let mut out = self.clone();
        let mut turns = vec![0u8; self.pants];
        for (p, turn) in turns.iter_mut().enumerate() {
            while PantsGroup::build(out.lengths(p)).is_err() && *turn < 3 {
                for cv in &mut out.curves {
                    for end in &mut cv.ends {
                        if end.0 == p {
                            // new inf = old 0, new 0 = old 1, new 1 = old inf
                            end.1 = match end.1 {
                                Slot::Zero => Slot::Inf,
                                Slot::One => Slot::Zero,
                                Slot::Inf => Slot::One,
                            };
                        }
                    }
                }
                *turn += 1;
            }
        }
        (out, turns)
    }

    /// `mu -> mu + 2kc` on one curve: `k` full right Dehn twists.
    pub fn apply_twist(&self, id: usize, k: i32) -> Result<Self, SurfaceError> {
        let mut out = self.clone();
        let cv = out.curves.iter_mut().find(|cv| cv.id == id).ok_or(SurfaceError::NoSuchCurve(id))?;
        cv.mu.re = cv.mu.re + T::lit(2.0 * k as f64) * cv.c;
        Ok(out)
    }

    /// Twist measured from the base marking `Re mu = -c`, in units of full
    /// Dehn twists.
    pub fn twist_count(&self, id: usize) -> Result<T, SurfaceError> {
        let cv = self.curve(id)?;
        Ok((cv.mu.re + cv.c) / (T::lit(2.0) * cv.c))
    }

    /// The pants-local loop around curve `id`, seen from its first end.
    pub fn curve_chain(&self, id: usize) -> Result<HolonomyChain, SurfaceError> {
        let (p, s) = self.curve(id)?.ends[0];
        Ok(HolonomyChain { base: Some(p), steps: vec![Step::Word { pants: Some(p), letters: vec![(s, 1)] }] })
    }
}
