use moebius::{Complex, Moebius, Real, SpherePoint};

use crate::group::{coth, PantsGroup};
use crate::{PantsError, Slot};

/// Euclidean circle centered on the real axis.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Circle<T> {
    pub center: T,
    pub radius: T,
}

impl<T: Real> Circle<T> {
    pub fn contains(&self, z: Complex<T>) -> bool {
        (z - Complex::new(self.center, T::zero())).norm() < self.radius
    }
}

/// A hyperbolic geodesic in the upper half-plane.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum Geodesic<T> {
    Vertical { foot: T },
    Semicircle { center: T, radius: T },
}

impl<T: Real> Geodesic<T> {
    pub fn through(u: SpherePoint<T>, v: SpherePoint<T>) -> Self {
        match (u.finite(), v.finite()) {
            (Some(x), None) | (None, Some(x)) => Geodesic::Vertical { foot: x.re },
            (Some(x), Some(y)) => {
                let two = T::lit(2.0);
                Geodesic::Semicircle { center: (x.re + y.re) / two, radius: (x.re - y.re).abs() / two }
            }
            (None, None) => Geodesic::Vertical { foot: T::zero() },
        }
    }

    pub fn endpoints(&self) -> (SpherePoint<T>, SpherePoint<T>) {
        match *self {
            Geodesic::Vertical { foot } => (SpherePoint::real(foot), SpherePoint::Infinity),
            Geodesic::Semicircle { center, radius } => {
                (SpherePoint::real(center - radius), SpherePoint::real(center + radius))
            }
        }
    }

    /// Whether `z` lies on the geodesic up to a relative tolerance.
    pub fn passes_through(&self, z: Complex<T>, tol: T) -> bool {
        match *self {
            Geodesic::Vertical { foot } => (z.re - foot).abs() <= tol * (T::one() + z.norm()),
            Geodesic::Semicircle { center, radius } => {
                ((z - Complex::new(center, T::zero())).norm() - radius).abs() <= tol * (T::one() + radius)
            }
        }
    }
}

/// Common perpendicular of two geodesics with real endpoints.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Perpendicular<T> {
    pub geodesic: Geodesic<T>,
    /// Foot on the first geodesic.
    pub foot1: SpherePoint<T>,
    /// Foot on the second geodesic, or its endpoint when it is an ideal point.
    pub foot2: SpherePoint<T>,
    /// Hyperbolic length between the feet; infinite for an ideal point.
    pub length: T,
}

/// Perpendicular from the geodesic `g1` to `g2`.
///
/// `g2` may be degenerate (both ends equal), standing for an ideal point.
/// The geodesics must be disjoint with no shared endpoint.
pub fn common_perpendicular<T: Real>(
    g1: (SpherePoint<T>, SpherePoint<T>),
    g2: (SpherePoint<T>, SpherePoint<T>),
) -> Result<Perpendicular<T>, PantsError> {
    let zero = Complex::new(T::zero(), T::zero());
    let one = Complex::new(T::one(), T::zero());
    // send g1 to (0, inf) by a map preserving the upper half-plane
    let m = match (g1.0.finite(), g1.1.finite()) {
        (Some(a), Some(b)) => {
            let m = Moebius::new(one, -a, one, -b);
            if (a.re - b.re) > T::zero() { m } else { Moebius::new(-one, a, one, -b) }
        }
        (Some(a), None) => Moebius::new(one, -a, zero, one),
        (None, Some(b)) => Moebius::new(zero, -one, one, -b),
        (None, None) => return Err(PantsError::Verification("degenerate geodesic".into())),
    }
    .normalized()?;
    let mi = m.inverse();
    let image = |p: SpherePoint<T>| -> Result<T, PantsError> {
        m.apply(p)
            .finite()
            .map(|z| z.re)
            .ok_or_else(|| PantsError::Verification("geodesics share an endpoint".into()))
    };
    let (p, q) = (image(g2.0)?, image(g2.1)?);
    if p * q <= T::zero() {
        return Err(PantsError::Verification("geodesics intersect".into()));
    }
    let r = (p * q).sqrt();
    let sgn = p.signum();
    let i = Complex::new(T::zero(), T::one());
    let foot1 = mi.apply(SpherePoint::Finite(i.scale(r)));
    let degenerate = (p - q).abs() <= T::epsilon() * p.abs().max(q.abs()) * T::lit(16.0);
    let (foot2, length) = if degenerate {
        (g2.0, T::infinity())
    } else {
        let two = T::lit(2.0);
        let cx = (p + q) / two;
        let x = r * r / cx;
        let y = (r * r - x * x).max(T::zero()).sqrt();
        let length = ((q + p) / (q - p)).abs().acosh();
        (mi.apply(SpherePoint::Finite(Complex::new(x, y))), length)
    };
    let ends = (
        mi.apply(SpherePoint::real(sgn * r)),
        mi.apply(SpherePoint::real(-sgn * r)),
    );
    Ok(Perpendicular { geodesic: Geodesic::through(ends.0, ends.1), foot1, foot2, length })
}

/// The fundamental set: outside the isometric circles `+-C1` of
/// `A_inf^-+1` and `+-C2` of `A_0^+-1`, cut by the seams into a white
/// half (`Re z >= 0`) and a black half.
#[derive(Clone, Debug, PartialEq)]
pub struct FundamentalSet<T> {
    /// `+C1`, `-C1`, `+C2`, `-C2`.
    pub circles: [Circle<T>; 4],
    /// Seams `lambda_inf`, `lambda_0`, `lambda_1`, indexed like [`Slot`].
    pub seams: [Geodesic<T>; 3],
}

impl<T: Real> FundamentalSet<T> {
    pub fn seam(&self, s: Slot) -> Geodesic<T> {
        self.seams[s.index()]
    }

    pub fn contains(&self, z: Complex<T>) -> bool {
        z.im > T::zero() && self.circles.iter().all(|c| !c.contains(z))
    }

    pub fn in_white(&self, z: Complex<T>) -> bool {
        self.contains(z) && z.re >= T::zero()
    }

    pub fn in_black(&self, z: Complex<T>) -> bool {
        self.contains(z) && z.re <= T::zero()
    }
}

impl<T: Real> PantsGroup<T> {
    pub fn fundamental_set(&self) -> Result<FundamentalSet<T>, PantsError> {
        if self.kind != crate::PantsKind::Generic {
            return Err(PantsError::Cusped);
        }
        let two = T::lit(2.0);
        let one = T::one();
        let (c1, c2) = (self.lengths.c1, self.lengths.c2);
        let ch = c1.cosh();
        let big = Circle { center: ch / (ch - one), radius: one / (ch - one) };
        let s = coth(c1 / two) * (self.nu1.unwrap() / two).tanh();
        let small = Circle { center: s * coth(c2), radius: s / c2.sinh() };
        let neg = |c: Circle<T>| Circle { center: -c.center, radius: c.radius };
        let axis = |sl: Slot| self.fixed_points(sl);
        let lambda_inf = common_perpendicular(axis(Slot::Zero)?, axis(Slot::One)?)?.geodesic;
        let lambda_0 = common_perpendicular(axis(Slot::One)?, axis(Slot::Inf)?)?.geodesic;
        Ok(FundamentalSet {
            circles: [big, neg(big), small, neg(small)],
            seams: [lambda_inf, lambda_0, Geodesic::Vertical { foot: T::zero() }],
        })
    }

    /// Hyperbolic distance between the axes of two geodesic boundaries.
    pub fn seam_length(&self, a: Slot, b: Slot) -> Result<T, PantsError> {
        Ok(common_perpendicular(self.fixed_points(a)?, self.fixed_points(b)?)?.length)
    }
}
