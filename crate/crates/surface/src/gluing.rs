use moebius::{Complex, Moebius, Real};
use pants::omega_from_source;

use crate::{SurfaceError, SurfaceGraph};

/// Gluing data of one curve: half-length `c` and `mu` with `Im mu` in `[0, pi)`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct GluingParams<T> {
    pub c: T,
    pub bold_mu: Complex<T>,
}

impl<T: Real> GluingParams<T> {
    pub fn new(c: T, bold_mu: Complex<T>) -> Result<Self, SurfaceError> {
        positive(c)?;
        if !(bold_mu.im >= T::zero() && bold_mu.im < T::PI()) {
            return Err(SurfaceError::ImaginaryRange(bold_mu.im.to_f64().unwrap_or(f64::NAN)));
        }
        Ok(GluingParams { c, bold_mu })
    }
}

fn positive<T: Real>(c: T) -> Result<(), SurfaceError> {
    if c > T::zero() && c.is_finite() {
        Ok(())
    } else {
        Err(SurfaceError::BadLength(c.to_f64().unwrap_or(f64::NAN)))
    }
}

fn coth<T: Real>(x: T) -> T {
    x.tanh().recip()
}

/// Half-turn about `i coth(c/2)`: `z -> -coth^2(c/2) / z`.
pub fn j_map<T: Real>(c: T) -> Result<Moebius<T>, SurfaceError> {
    positive(c)?;
    let k = c / T::lit(2.0);
    Ok(Moebius::from_real(T::zero(), -coth(k), k.tanh(), T::zero()))
}

/// Translation by `mu` along the axis of `A_inf`, rotating by `Im mu`.
pub fn t_map<T: Real>(c: T, bold_mu: Complex<T>) -> Result<Moebius<T>, SurfaceError> {
    positive(c)?;
    let k = c / T::lit(2.0);
    let h = bold_mu / T::lit(2.0);
    let (ch, sh) = (h.cosh(), h.sinh());
    Ok(Moebius::new(ch, -sh.scale(coth(k)), -sh.scale(k.tanh()), ch))
}

/// Transition matrix for crossing curve `id`.
///
/// `forward` moves from the pants of `ends[0] = (P, e)` into the pants of
/// `ends[1] = (P', e')` and contributes `Omega_e^-1 J^-1 T^-1 Omega_e'`;
/// the backward crossing contributes the inverse.
pub fn gate_map<T: Real>(g: &SurfaceGraph<T>, id: usize, forward: bool) -> Result<Moebius<T>, SurfaceError> {
    let cv = g.curve(id)?;
    let [(p, e), (q, f)] = cv.ends;
    let om = |pants: usize, slot| -> Result<Moebius<T>, SurfaceError> {
        let src = g.pants_group(pants)?;
        omega_from_source(slot, &src).map_err(|source| SurfaceError::Pants { pants, source })
    };
    let jt = (t_map(cv.c, cv.mu)? * j_map(cv.c)?).inverse();
    let m = om(p, e)?.inverse() * jt * om(q, f)?;
    Ok(if forward { m } else { m.inverse() })
}

/// Plumbing parameter `t = (i pi - mu) / c`.
pub fn convert_mu_to_t<T: Real>(p: GluingParams<T>) -> Complex<T> {
    (Complex::new(T::zero(), T::PI()) - p.bold_mu) / p.c
}

pub fn convert_t_to_mu<T: Real>(c: T, t: Complex<T>) -> Complex<T> {
    Complex::new(T::zero(), T::PI()) - t * c
}

/// `M` sending the axis of `A_inf` to the positive imaginary axis.
pub fn plumbing_matrix<T: Real>(c: T) -> Moebius<T> {
    let k = c / T::lit(2.0);
    let (ch, sh) = (k.cosh(), k.sinh());
    Moebius::from_real(sh, ch, -sh, ch)
}

/// Annulus coordinate `exp((i pi / c) Log(M z))` with the principal branch.
///
/// The flag is set when `M z` lies on the branch cut, the negative real
/// axis; the value is still the one for `Arg = pi`.
pub fn plumbing_coordinate<T: Real>(c: T, z: Complex<T>) -> Result<(Complex<T>, bool), SurfaceError> {
    positive(c)?;
    let w = plumbing_matrix(c).apply_c(z);
    let on_cut = w.im == T::zero() && w.re < T::zero();
    let log = Complex::new(w.norm().ln(), if on_cut { T::PI() } else { w.arg() });
    let k = Complex::new(T::zero(), T::PI() / c);
    Ok(((log * k).exp(), on_cut))
}
