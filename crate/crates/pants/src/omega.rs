use moebius::{from_three_points, Complex, Moebius, Real, SpherePoint};

use crate::geometry::common_perpendicular;
use crate::group::{coth, standard_a_inf, BoundaryLengths, PantsGroup, PantsKind};
use crate::{PantsError, Slot};

/// `Omega_eps` for the pants with lengths `target`: the orientation
/// preserving map carrying the white hexagon of the pants labeled so that
/// slot `eps` comes first onto the white hexagon of `target`, taking
/// `A_eps` to `A_inf^{+-1}`.
///
/// For `eps = 0` the source is `(c3, c1, c2)`; for `eps = 1` it is
/// `(c2, c3, c1)`. `eps = inf` gives the identity.
pub fn omega<T: Real>(eps: Slot, target: BoundaryLengths<T>) -> Result<Moebius<T>, PantsError> {
    let source = match eps {
        Slot::Inf => return Ok(Moebius::identity()),
        Slot::Zero => BoundaryLengths::new(target.c3, target.c1, target.c2),
        Slot::One => BoundaryLengths::new(target.c2, target.c3, target.c1),
    };
    omega_from_source(eps, &PantsGroup::build(source)?)
}

/// `Omega_eps` computed from the source pants.
///
/// The axis of `A_eps` goes to the axis of `A_inf` with the seam foot
/// landing on the imaginary axis; the endpoint order is the one keeping
/// the neighbouring boundary inside.
pub fn omega_from_source<T: Real>(eps: Slot, src: &PantsGroup<T>) -> Result<Moebius<T>, PantsError> {
    let (next, c) = match eps {
        Slot::Inf => return Ok(Moebius::identity()),
        Slot::Zero => (Slot::One, src.lengths.c2),
        Slot::One => (Slot::Inf, src.lengths.c3),
    };
    if c <= T::zero() {
        return Err(PantsError::Puncture(eps));
    }
    let g = src.fixed_points(eps)?;
    let perp = common_perpendicular(g, src.fixed_points(next)?)?;
    let two = T::lit(2.0);
    let r = coth(c / two);
    let dst = [
        SpherePoint::real(-r),
        SpherePoint::real(r),
        SpherePoint::Finite(Complex::new(T::zero(), r)),
    ];
    let mut chosen = None;
    for (x, y) in [(g.0, g.1), (g.1, g.0)] {
        let m = from_three_points([x, y, perp.foot1], dst)?;
        let inside = match m.apply(perp.foot2) {
            SpherePoint::Finite(w) => w.norm() < r,
            SpherePoint::Infinity => false,
        };
        if inside {
            chosen = Some(m);
            break;
        }
    }
    let m = chosen.ok_or_else(|| PantsError::Verification("no endpoint order keeps the seam inside".into()))?;
    verify(eps, src, &m, c)?;
    Ok(m)
}

fn verify<T: Real>(eps: Slot, src: &PantsGroup<T>, m: &Moebius<T>, c: T) -> Result<(), PantsError> {
    let target = standard_a_inf(c);
    let conj = src.generator(eps).conjugated_by(m);
    let scale = target.max_entry().max(T::one());
    let tol = (T::tol() * T::lit(100.0)).max(T::lit(1e-7)) * scale;
    let res = conj.psl_distance(&target).min(conj.psl_distance(&target.inverse()));
    if !(res <= tol) {
        return Err(PantsError::Verification(format!(
            "conjugation residual {:e}",
            res.to_f64().unwrap_or(f64::NAN)
        )));
    }
    // a point of the source white hexagon next to the seam lambda_1
    if matches!(src.kind, PantsKind::Generic | PantsKind::OneCusp) {
        let two = T::lit(2.0);
        let r = coth(src.lengths.c1 / two);
        let s = r * (src.nu1.unwrap() / two).tanh();
        let h = (r * s).sqrt();
        let z = Complex::new(h * T::lit(0.05), h);
        match m.apply(SpherePoint::Finite(z)) {
            SpherePoint::Finite(w) if w.re > T::zero() && w.im > T::zero() => {}
            _ => return Err(PantsError::Verification("white hexagon not preserved".into())),
        }
    }
    Ok(())
}
