use core::fmt;

use moebius::{Complex, Moebius, Real, SpherePoint};

use crate::PantsError;

/// Boundary slot of a pair of pants.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Slot {
    Inf,
    Zero,
    One,
}

impl Slot {
    pub const ALL: [Slot; 3] = [Slot::Inf, Slot::Zero, Slot::One];

    pub fn index(self) -> usize {
        match self {
            Slot::Inf => 0,
            Slot::Zero => 1,
            Slot::One => 2,
        }
    }
}

impl fmt::Display for Slot {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Slot::Inf => "inf",
            Slot::Zero => "0",
            Slot::One => "1",
        })
    }
}

impl core::str::FromStr for Slot {
    type Err = String;

    fn from_str(s: &str) -> Result<Self, String> {
        match s {
            "inf" | "Inf" | "oo" => Ok(Slot::Inf),
            "0" => Ok(Slot::Zero),
            "1" => Ok(Slot::One),
            _ => Err(format!("unknown slot `{s}` (expected inf, 0 or 1)")),
        }
    }
}

/// Half-lengths of the boundaries at slots inf, 0, 1.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct BoundaryLengths<T> {
    pub c1: T,
    pub c2: T,
    pub c3: T,
}

impl<T: Real> BoundaryLengths<T> {
    pub fn new(c1: T, c2: T, c3: T) -> Self {
        BoundaryLengths { c1, c2, c3 }
    }

    pub fn get(&self, s: Slot) -> T {
        match s {
            Slot::Inf => self.c1,
            Slot::Zero => self.c2,
            Slot::One => self.c3,
        }
    }

    /// `(c1, c2, c3) -> (c2, c3, c1)`: the lengths seen after moving slot 0 to inf.
    pub fn rotated(&self) -> Self {
        BoundaryLengths::new(self.c2, self.c3, self.c1)
    }

    fn as_f64(&self) -> [f64; 3] {
        [self.c1, self.c2, self.c3].map(|x| x.to_f64().unwrap_or(f64::NAN))
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum PantsKind {
    /// All boundaries geodesic.
    Generic,
    /// `(c1, c2, 0)`.
    OneCusp,
    /// `(c1, 0, 0)`.
    TwoCusps,
    /// `(0, 0, 0)`.
    ThreeCusps,
}

#[derive(Clone, Debug, PartialEq)]
pub struct PantsGroup<T> {
    pub lengths: BoundaryLengths<T>,
    pub kind: PantsKind,
    pub a_inf: Moebius<T>,
    pub a0: Moebius<T>,
    pub a1: Moebius<T>,
    pub nu1: Option<T>,
    pub nu2: Option<T>,
}

pub(crate) fn coth<T: Real>(x: T) -> T {
    x.tanh().recip()
}

/// `arccoth x = log((x+1)/(x-1)) / 2`, written to stay accurate as x -> inf.
pub(crate) fn arccoth<T: Real>(x: T) -> T {
    let two = T::lit(2.0);
    (two / (x - T::one())).ln_1p() / two
}

/// `nu` with `coth nu = (cosh a cosh b + cosh c) / (sinh a sinh b)`.
pub(crate) fn nu<T: Real>(a: T, b: T, c: T) -> T {
    let rhs = (a.cosh() * b.cosh() + c.cosh()) / (a.sinh() * b.sinh());
    // rounding can push the ratio to 1 for huge lengths
    let floor = T::one() + T::epsilon();
    arccoth(rhs.max(floor))
}

/// `A_inf` for half-length `c`; it only depends on the first length.
pub fn standard_a_inf<T: Real>(c: T) -> Moebius<T> {
    if c == T::zero() {
        return Moebius::from_real(T::one(), T::lit(2.0), T::zero(), T::one());
    }
    let ch = c.cosh();
    Moebius::from_real(ch, ch + T::one(), ch - T::one(), ch)
}

impl<T: Real> PantsGroup<T> {
    pub fn build(lengths: BoundaryLengths<T>) -> Result<Self, PantsError> {
        let BoundaryLengths { c1, c2, c3 } = lengths;
        for x in [c1, c2, c3] {
            if !(x >= T::zero()) || !x.is_finite() {
                return Err(PantsError::BadLength(x.to_f64().unwrap_or(f64::NAN)));
            }
        }
        let zero = T::zero();
        let one = T::one();
        let two = T::lit(2.0);
        let kind = match (c1 > zero, c2 > zero, c3 > zero) {
            (true, true, true) => PantsKind::Generic,
            (true, true, false) => PantsKind::OneCusp,
            (true, false, false) => PantsKind::TwoCusps,
            (false, false, false) => PantsKind::ThreeCusps,
            _ => return Err(PantsError::Relabel(lengths.as_f64())),
        };
        let a_inf = standard_a_inf(c1);
        let half = c1 / two;
        let mut nu1 = None;
        let mut nu2 = None;
        let a0 = match kind {
            PantsKind::Generic | PantsKind::OneCusp => {
                let n1 = nu(c1, c2, c3);
                nu1 = Some(n1);
                let (ch, sh) = (c2.cosh(), c2.sinh());
                Moebius::from_real(
                    ch,
                    -coth(half) * (n1 / two).tanh() * sh,
                    -half.tanh() * coth(n1 / two) * sh,
                    ch,
                )
            }
            PantsKind::TwoCusps | PantsKind::ThreeCusps => {
                Moebius::from_real(one, zero, -two, one)
            }
        };
        let a1 = if kind == PantsKind::Generic {
            let n2 = nu(c1, c3, c2);
            nu2 = Some(n2);
            let (sh1, ch1) = (c1.sinh(), c1.cosh());
            let (sh3, ch3) = (c3.sinh(), c3.cosh());
            let (shn, chn) = (n2.sinh(), n2.cosh());
            Moebius::from_real(
                ch3 - sh1 * sh3 / shn,
                coth(half) * sh3 * (ch1 - chn) / shn,
                -half.tanh() * sh3 * (ch1 + chn) / shn,
                ch3 + sh1 * sh3 / shn,
            )
        } else {
            (a_inf * a0).inverse()
        };
        Ok(PantsGroup { lengths, kind, a_inf, a0, a1, nu1, nu2 })
    }

    pub fn generator(&self, s: Slot) -> Moebius<T> {
        match s {
            Slot::Inf => self.a_inf,
            Slot::Zero => self.a0,
            Slot::One => self.a1,
        }
    }

    pub fn is_cusp(&self, s: Slot) -> bool {
        self.lengths.get(s) == T::zero()
    }

    /// Fixed points of a generator as (repelling, attracting); a cusp
    /// returns its parabolic point twice. Closed forms are used when the
    /// boundary is geodesic.
    pub fn fixed_points(&self, s: Slot) -> Result<(SpherePoint<T>, SpherePoint<T>), PantsError> {
        let two = T::lit(2.0);
        let c1 = self.lengths.c1;
        if self.is_cusp(s) || self.kind == PantsKind::ThreeCusps {
            return Ok(self.generator(s).fixed_points()?);
        }
        let r = coth(c1 / two);
        let pair = match s {
            Slot::Inf => (-r, r),
            Slot::Zero => {
                let s0 = r * (self.nu1.unwrap() / two).tanh();
                (s0, -s0)
            }
            Slot::One => {
                let n2 = self.nu2.unwrap();
                let p = r * ((c1 - n2) / two).tanh();
                let q = r * ((c1 + n2) / two).tanh();
                order_by_derivative(&self.a1, p, q)
            }
        };
        Ok((SpherePoint::real(pair.0), SpherePoint::real(pair.1)))
    }

    /// Serializes lengths, generators, nu values and circle data.
    pub fn to_text(&self) -> String {
        let f = |x: T| format!("{:.16e}", x.to_f64().unwrap_or(f64::NAN));
        let opt = |x: Option<T>| x.map(f).unwrap_or_else(|| "none".into());
        let mut out = format!(
            "lengths {} {} {}\nkind {:?}\n",
            f(self.lengths.c1),
            f(self.lengths.c2),
            f(self.lengths.c3),
            self.kind
        );
        out += &format!("A_inf {}\nA_0 {}\nA_1 {}\n", self.a_inf, self.a0, self.a1);
        out += &format!("nu1 {}\nnu2 {}\n", opt(self.nu1), opt(self.nu2));
        if let Ok(fs) = self.fundamental_set() {
            for circ in fs.circles {
                out += &format!("circle {} {}\n", f(circ.center), f(circ.radius));
            }
        }
        out
    }
}

fn order_by_derivative<T: Real>(m: &Moebius<T>, p: T, q: T) -> (T, T) {
    let pc = Complex::new(p, T::zero());
    if (m.c * pc + m.d).norm() > T::one() {
        (q, p)
    } else {
        (p, q)
    }
}
