use moebius::{Complex, Real};

use crate::group::{coth, BoundaryLengths, PantsGroup};
use crate::{PantsError, PantsKind, Slot};

/// Curve at constant distance from a boundary axis, drawn as a Euclidean
/// circle. `theta = 0` is the axis itself.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Hypercycle<T> {
    pub center: Complex<T>,
    pub radius: T,
    pub theta: T,
    /// Radius of the surrounded axis, centered at 0.
    pub axis_radius: T,
}

impl<T: Real> Hypercycle<T> {
    /// Hyperbolic distance to the axis.
    pub fn distance_to_axis(&self) -> T {
        self.theta.tan().asinh()
    }

    /// Where the hypercycle crosses the positive imaginary axis.
    pub fn imaginary_axis_point(&self) -> Complex<T> {
        let r = self.axis_radius;
        Complex::new(T::zero(), r * (self.theta.cos().recip() - self.theta.tan()))
    }

    pub fn contains_point(&self, z: Complex<T>, tol: T) -> bool {
        ((z - self.center).norm() - self.radius).abs() <= tol * (T::one() + self.radius)
    }
}

/// The inner hypercycle around the axis of `A_inf` at angle
/// `theta = Im(mu)/2`.
pub fn hypercycle_inf<T: Real>(lengths: BoundaryLengths<T>, bold_mu: Complex<T>) -> Result<Hypercycle<T>, PantsError> {
    if !(lengths.c1 > T::zero()) {
        return Err(PantsError::Puncture(Slot::Inf));
    }
    if !(bold_mu.im >= T::zero() && bold_mu.im < T::PI()) {
        return Err(PantsError::ImaginaryRange(bold_mu.im.to_f64().unwrap_or(f64::NAN)));
    }
    let two = T::lit(2.0);
    let r = coth(lengths.c1 / two);
    let theta = bold_mu.im / two;
    Ok(Hypercycle {
        center: Complex::new(T::zero(), -r * theta.tan()),
        radius: r / theta.cos(),
        theta,
        axis_radius: r,
    })
}

/// Open neighbourhood of a hypercycle.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Strip<T> {
    pub hypercycle: Hypercycle<T>,
    pub half_width: T,
}

/// 40% of the largest half-width keeping the three strips of a pants
/// disjoint, given the hypercycle angle at each slot.
///
/// Each hypercycle sits on the inner side of its axis, so along the seam
/// between two axes the free gap is the seam length minus both offsets.
pub fn default_half_width<T: Real>(p: &PantsGroup<T>, thetas: [T; 3]) -> Result<T, PantsError> {
    if p.kind != PantsKind::Generic {
        return Err(PantsError::Cusped);
    }
    let offset = |s: Slot| thetas[s.index()].tan().asinh();
    let pairs = [(Slot::Inf, Slot::Zero), (Slot::Zero, Slot::One), (Slot::One, Slot::Inf)];
    let mut gap = T::infinity();
    for (a, b) in pairs {
        gap = gap.min(p.seam_length(a, b)? - offset(a) - offset(b));
    }
    if !(gap > T::zero()) {
        return Err(PantsError::Overlap(gap.to_f64().unwrap_or(f64::NAN)));
    }
    Ok(T::lit(0.4) * gap / T::lit(2.0))
}

impl<T: Real> Strip<T> {
    pub fn around_inf(p: &PantsGroup<T>, bold_mu: Complex<T>, half_width: T) -> Result<Self, PantsError> {
        Ok(Strip { hypercycle: hypercycle_inf(p.lengths, bold_mu)?, half_width })
    }

    /// Membership by signed distance to the axis of `A_inf`, measured
    /// positive on the inner side `|z| < r`.
    pub fn contains(&self, z: Complex<T>) -> bool {
        let h = self.hypercycle;
        let r = Complex::new(h.axis_radius, T::zero());
        // sends the axis to the imaginary axis, the inner side to Re w > 0
        let w = (z + r) / (r - z);
        if !(z.im > T::zero()) {
            return false;
        }
        let signed = (w.re / w.im).asinh();
        (signed - h.distance_to_axis()).abs() < self.half_width
    }
}
