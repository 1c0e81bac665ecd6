use core::fmt;
use core::ops::Mul;
use core::str::FromStr;

use num_complex::Complex;

use crate::{MoebiusError, Real, SpherePoint};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum IsometryClass {
    Identity,
    Parabolic,
    Elliptic,
    Loxodromic,
}

/// A 2x2 complex matrix read as a Möbius transformation `z -> (az+b)/(cz+d)`.
///
/// Constructors that end in `normalized` return the SL(2,C) representative
/// with the canonical sign: the first entry that is not negligible has its
/// argument in (-pi/2, pi/2].
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Moebius<T> {
    pub a: Complex<T>,
    pub b: Complex<T>,
    pub c: Complex<T>,
    pub d: Complex<T>,
}

fn cx<T: Real>(re: T) -> Complex<T> {
    Complex::new(re, T::zero())
}

impl<T: Real> Moebius<T> {
    pub const fn new(a: Complex<T>, b: Complex<T>, c: Complex<T>, d: Complex<T>) -> Self {
        Moebius { a, b, c, d }
    }

    pub fn from_real(a: T, b: T, c: T, d: T) -> Self {
        Moebius::new(cx(a), cx(b), cx(c), cx(d))
    }

    pub fn identity() -> Self {
        Moebius::from_real(T::one(), T::zero(), T::zero(), T::one())
    }

    /// Scales to unit determinant and fixes the sign.
    pub fn normalized(self) -> Result<Self, MoebiusError> {
        let det = self.det();
        if det.norm() <= T::epsilon() * self.max_entry().powi(2) || !det.norm().is_finite() {
            return Err(MoebiusError::Singular);
        }
        let s = det.sqrt();
        Ok(Moebius::new(self.a / s, self.b / s, self.c / s, self.d / s).canonical_sign())
    }

    /// Flips the global sign so the first significant entry points right.
    pub fn canonical_sign(self) -> Self {
        let floor = self.max_entry() * T::tol();
        for e in self.entries() {
            if e.norm() > floor {
                let right = e.re > T::zero() || (e.re == T::zero() && e.im > T::zero());
                return if right { self } else { -self };
            }
        }
        self
    }

    pub fn entries(&self) -> [Complex<T>; 4] {
        [self.a, self.b, self.c, self.d]
    }

    pub fn max_entry(&self) -> T {
        self.entries()
            .iter()
            .fold(T::zero(), |m, e| m.max(e.norm()))
    }

    pub fn det(&self) -> Complex<T> {
        self.a * self.d - self.b * self.c
    }

    pub fn trace(&self) -> Complex<T> {
        self.a + self.d
    }

    /// Inverse up to scale; exact inverse for unit determinant.
    pub fn inverse(&self) -> Self {
        Moebius::new(self.d, -self.b, -self.c, self.a)
    }

    /// True matrix inverse, dividing by the determinant.
    pub fn inverse_exact(&self) -> Self {
        let det = self.det();
        Moebius::new(self.d / det, -self.b / det, -self.c / det, self.a / det)
    }

    pub fn pow(&self, k: i32) -> Self {
        let base = if k < 0 { self.inverse() } else { *self };
        let mut out = Moebius::identity();
        for _ in 0..k.unsigned_abs() {
            out = out * base;
        }
        out
    }

    pub fn conj(&self) -> Self {
        Moebius::new(self.a.conj(), self.b.conj(), self.c.conj(), self.d.conj())
    }

    pub fn scale(&self, k: Complex<T>) -> Self {
        Moebius::new(self.a * k, self.b * k, self.c * k, self.d * k)
    }

    /// `g self g^-1`.
    pub fn conjugated_by(&self, g: &Self) -> Self {
        *g * *self * g.inverse()
    }

    pub fn apply(&self, z: SpherePoint<T>) -> SpherePoint<T> {
        match z {
            SpherePoint::Infinity => {
                if self.c == Complex::new(T::zero(), T::zero()) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite(self.a / self.c)
                }
            }
            SpherePoint::Finite(z) => {
                let den = self.c * z + self.d;
                if den == Complex::new(T::zero(), T::zero()) {
                    SpherePoint::Infinity
                } else {
                    SpherePoint::Finite((self.a * z + self.b) / den)
                }
            }
        }
    }

    /// Action on a finite point; the caller knows the image is finite.
    pub fn apply_c(&self, z: Complex<T>) -> Complex<T> {
        (self.a * z + self.b) / (self.c * z + self.d)
    }

    /// Largest entrywise modulus of the difference, ignoring the global sign.
    pub fn psl_distance(&self, other: &Self) -> T {
        let plus = self.max_diff(other, T::one());
        let minus = self.max_diff(other, -T::one());
        plus.min(minus)
    }

    fn max_diff(&self, other: &Self, sign: T) -> T {
        let (p, q) = (self.entries(), other.entries());
        (0..4).fold(T::zero(), |m, k| m.max((p[k] - q[k].scale(sign)).norm()))
    }

    pub fn psl_eq(&self, other: &Self, tol: T) -> bool {
        self.psl_distance(other) <= tol
    }

    pub fn is_identity(&self, tol: T) -> bool {
        self.psl_distance(&Moebius::identity()) <= tol
    }

    pub fn classify(&self) -> IsometryClass {
        let tol = T::tol();
        let t2 = self.trace() * self.trace();
        let four = T::lit(4.0);
        if (t2 - cx(four)).norm() <= tol {
            if self.is_identity(tol) {
                IsometryClass::Identity
            } else {
                IsometryClass::Parabolic
            }
        } else if t2.im.abs() <= tol && t2.re >= -tol && t2.re < four {
            IsometryClass::Elliptic
        } else {
            IsometryClass::Loxodromic
        }
    }

    /// Fixed points, ordered (repelling, attracting) for loxodromics.
    ///
    /// A parabolic returns its fixed point twice. Elliptics are ordered by
    /// the same derivative test, which does not separate them meaningfully.
    pub fn fixed_points(&self) -> Result<(SpherePoint<T>, SpherePoint<T>), MoebiusError> {
        let m = self.normalized()?;
        let tol = T::tol();
        if m.is_identity(tol) {
            return Err(MoebiusError::Identity);
        }
        let scale = m.max_entry();
        let two = T::lit(2.0);
        if m.c.norm() <= T::epsilon() * scale {
            let dma = m.d - m.a;
            if dma.norm() <= tol * scale {
                return Ok((SpherePoint::Infinity, SpherePoint::Infinity));
            }
            let p = SpherePoint::Finite(m.b / dma);
            // derivative at the finite point is a/d
            return Ok(if (m.a / m.d).norm() < T::one() {
                (SpherePoint::Infinity, p)
            } else {
                (p, SpherePoint::Infinity)
            });
        }
        let tr = m.trace();
        let disc = (tr * tr - cx(T::lit(4.0))).sqrt();
        let base = m.a - m.d;
        if m.classify() == IsometryClass::Parabolic {
            let p = SpherePoint::Finite(base / (m.c * two));
            return Ok((p, p));
        }
        let p = (base + disc) / (m.c * two);
        let q = (base - disc) / (m.c * two);
        let attracting = |z: Complex<T>| (m.c * z + m.d).norm() > T::one();
        Ok(if attracting(p) && !attracting(q) {
            (SpherePoint::Finite(q), SpherePoint::Finite(p))
        } else {
            (SpherePoint::Finite(p), SpherePoint::Finite(q))
        })
    }

    /// Complex translation length: tr = 2 cosh(lambda/2), Re lambda > 0,
    /// Im(lambda/2) in (-pi/2, pi/2].
    pub fn translation_length(&self) -> Result<Complex<T>, MoebiusError> {
        if self.classify() != IsometryClass::Loxodromic {
            return Err(MoebiusError::NotLoxodromic);
        }
        let m = self.normalized()?;
        let two = T::lit(2.0);
        let mut h = (m.trace() / two).acosh();
        if h.re < T::zero() {
            h = -h;
        }
        let pi = T::PI();
        let half = pi / two;
        while h.im > half {
            h.im = h.im - pi;
        }
        while h.im <= -half {
            h.im = h.im + pi;
        }
        Ok(h * two)
    }

    /// The other representative of the translation length under the
    /// sign ambiguity of PSL, shifted by 2 pi i.
    pub fn translation_length_alt(&self) -> Result<Complex<T>, MoebiusError> {
        let l = self.translation_length()?;
        let tau = T::lit(2.0) * T::PI();
        Ok(if l.im > T::zero() {
            Complex::new(l.re, l.im - tau)
        } else {
            Complex::new(l.re, l.im + tau)
        })
    }

    /// Row-major `(re, im)` pairs with 17 significant digits.
    pub fn to_text(&self) -> String {
        self.entries()
            .iter()
            .map(|e| {
                format!(
                    "({:.16e}, {:.16e})",
                    e.re.to_f64().unwrap_or(f64::NAN),
                    e.im.to_f64().unwrap_or(f64::NAN)
                )
            })
            .collect::<Vec<_>>()
            .join(" ")
    }
}

impl<T: Real> Mul for Moebius<T> {
    type Output = Moebius<T>;

    fn mul(self, r: Self) -> Self {
        Moebius::new(
            self.a * r.a + self.b * r.c,
            self.a * r.b + self.b * r.d,
            self.c * r.a + self.d * r.c,
            self.c * r.b + self.d * r.d,
        )
    }
}

impl<T: Real> core::ops::Neg for Moebius<T> {
    type Output = Moebius<T>;

    fn neg(self) -> Self {
        Moebius::new(-self.a, -self.b, -self.c, -self.d)
    }
}

impl<T: Real> fmt::Display for Moebius<T> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.to_text())
    }
}

impl<T: Real> FromStr for Moebius<T> {
    type Err = MoebiusError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let nums: Vec<T> = s
            .split(|ch: char| ch == '(' || ch == ')' || ch == ',' || ch.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<f64>()
                    .ok()
                    .and_then(T::from_f64)
                    .ok_or_else(|| MoebiusError::Parse(format!("bad number `{t}`")))
            })
            .collect::<Result<_, _>>()?;
        if nums.len() != 8 {
            return Err(MoebiusError::Parse(format!(
                "expected 8 numbers, found {}",
                nums.len()
            )));
        }
        let e = |k: usize| Complex::new(nums[2 * k], nums[2 * k + 1]);
        Ok(Moebius::new(e(0), e(1), e(2), e(3)))
    }
}

/// The Möbius map sending `z1, z2, z3` to `0, inf, 1`.
pub fn to_standard<T: Real>(
    z1: SpherePoint<T>,
    z2: SpherePoint<T>,
    z3: SpherePoint<T>,
) -> Result<Moebius<T>, MoebiusError> {
    use SpherePoint::*;
    let one = cx(T::one());
    let zero = cx(T::zero());
    let m = match (z1, z2, z3) {
        (Infinity, Finite(b), Finite(c)) => Moebius::new(zero, c - b, one, -b),
        (Finite(a), Infinity, Finite(c)) => Moebius::new(one, -a, zero, c - a),
        (Finite(a), Finite(b), Infinity) => Moebius::new(one, -a, one, -b),
        (Finite(a), Finite(b), Finite(c)) => {
            Moebius::new(c - b, -a * (c - b), c - a, -b * (c - a))
        }
        _ => return Err(MoebiusError::Degenerate),
    };
    m.normalized().map_err(|_| MoebiusError::Degenerate)
}

/// The unique Möbius map taking `src[k]` to `dst[k]`.
pub fn from_three_points<T: Real>(
    src: [SpherePoint<T>; 3],
    dst: [SpherePoint<T>; 3],
) -> Result<Moebius<T>, MoebiusError> {
    let a = to_standard(src[0], src[1], src[2])?;
    let b = to_standard(dst[0], dst[1], dst[2])?;
    (b.inverse() * a).normalized()
}
