use core::fmt;

use num_complex::Complex;

use crate::Real;

/// A point of the Riemann sphere.
#[derive(Clone, Copy, Debug, PartialEq)]
pub enum SpherePoint<T> {
    Finite(Complex<T>),
    Infinity,
}

impl<T: Real> SpherePoint<T> {
    pub fn real(x: T) -> Self {
        SpherePoint::Finite(Complex::new(x, T::zero()))
    }

    pub fn is_infinite(&self) -> bool {
        matches!(self, SpherePoint::Infinity)
    }

    pub fn finite(&self) -> Option<Complex<T>> {
        match *self {
            SpherePoint::Finite(z) => Some(z),
            SpherePoint::Infinity => None,
        }
    }

    pub fn conj(&self) -> Self {
        match *self {
            SpherePoint::Finite(z) => SpherePoint::Finite(z.conj()),
            SpherePoint::Infinity => SpherePoint::Infinity,
        }
    }

    /// Chordal distance on the unit sphere, bounded by 2.
    pub fn chordal(&self, other: &Self) -> T {
        let two = T::lit(2.0);
        match (*self, *other) {
            (SpherePoint::Infinity, SpherePoint::Infinity) => T::zero(),
            (SpherePoint::Finite(z), SpherePoint::Infinity)
            | (SpherePoint::Infinity, SpherePoint::Finite(z)) => {
                two / (T::one() + z.norm_sqr()).sqrt()
            }
            (SpherePoint::Finite(z), SpherePoint::Finite(w)) => {
                two * (z - w).norm()
                    / ((T::one() + z.norm_sqr()).sqrt() * (T::one() + w.norm_sqr()).sqrt())
            }
        }
    }
}

impl<T> From<Complex<T>> for SpherePoint<T> {
    fn from(z: Complex<T>) -> Self {
        SpherePoint::Finite(z)
    }
}

impl<T: fmt::Display> fmt::Display for SpherePoint<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            SpherePoint::Finite(z) => write!(f, "{}{:+}i", z.re, z.im),
            SpherePoint::Infinity => write!(f, "inf"),
        }
    }
}
